#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace kge {

using Complex = std::complex<double>;

inline Complex conj(Complex z) { return std::conj(z); }

// Split-layout complex vector (separate real/imag arrays) so inner loops
// can run over contiguous doubles.
struct ComplexVec {
  std::vector<double> re;
  std::vector<double> im;

  ComplexVec() = default;
  explicit ComplexVec(std::size_t n) : re(n, 0.0), im(n, 0.0) {}
  ComplexVec(std::initializer_list<Complex> zs) {
    re.reserve(zs.size());
    im.reserve(zs.size());
    for (Complex z : zs) {
      re.push_back(z.real());
      im.push_back(z.imag());
    }
  }

  std::size_t size() const { return re.size(); }
  Complex at(std::size_t i) const { return {re[i], im[i]}; }
  void set(std::size_t i, Complex z) {
    re[i] = z.real();
    im[i] = z.imag();
  }

  ComplexVec conjugated() const {
    ComplexVec out = *this;
    for (double& v : out.im) v = -v;
    return out;
  }

  bool operator==(const ComplexVec& o) const { return re == o.re && im == o.im; }
};

enum class Family : std::uint8_t { ComplEx = 0, FiveStar = 1 };

enum class Layout : std::uint8_t {
  Full = 0,
  ConjHalf = 1,   // ComplEx family: second half of dims = conj of first half
  ConjDiag = 2,   // 5-star: c = conj(b), d = conj(a)
  ConjNeg = 3,    // 5-star: c = -conj(b), d = conj(a)
  ConjVert = 4,   // 5-star: c = conj(a), d = conj(b)
  ConjHoriz = 5,  // 5-star: b = conj(a), d = conj(c); stored (a, c)
};

const char* family_name(Family f);
const char* layout_name(Layout l);
Family family_from_string(const std::string& s);
Layout layout_from_string(const std::string& s);

bool layout_valid(Family family, Layout layout);

// Per-relation stored parameters.
//   ComplEx Full:      1 vec of length rank
//   ComplEx ConjHalf:  1 vec of length rank/2 (rank must be even)
//   5-star Full:       4 vecs (a, b, c, d) of length rank
//   5-star conjugate:  2 vecs of length rank (a,b; ConjHoriz stores a,c)
struct RelationParams {
  Layout layout = Layout::Full;
  std::vector<ComplexVec> stored;
};

// Full Mobius coefficient set, one (a,b,c,d) per dimension.
struct MobiusCoeffs {
  ComplexVec a, b, c, d;
  std::size_t size() const { return a.size(); }
};

// Checks the stored shape against (family, layout, rank); throws on mismatch.
void validate_relation_params(Family family, const RelationParams& p, std::size_t rank);

// ComplEx-family materialization: Full copies, ConjHalf emits [a1 || conj(a1)].
ComplexVec materialize_complex(const RelationParams& p, std::size_t rank);

// 5-star materialization into the full (a,b,c,d) coefficient set.
MobiusCoeffs materialize_fivestar(const RelationParams& p);

// Stored real-parameter count across n_r relations.
std::size_t relation_param_count(Family family, Layout layout, std::size_t n_r,
                                 std::size_t rank);

inline std::size_t entity_param_count(std::size_t n_e, std::size_t rank) {
  return n_e * 2 * rank;
}

}  // namespace kge
