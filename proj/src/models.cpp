#include "kge/models.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <stdexcept>

#include "kge/kernels.hpp"

namespace kge {
namespace {

void fill_gaussian(ComplexVec& v, std::mt19937_64& rng,
                   std::normal_distribution<double>& dist) {
  for (double& x : v.re) x = dist(rng);
  for (double& x : v.im) x = dist(rng);
}

Complex cdiv(Complex num, Complex den) { return num / den; }

}  // namespace

ModelParams init_model(Family family, Layout layout, std::size_t n_e,
                       std::size_t n_r, std::size_t rank, std::uint64_t seed) {
  if (rank == 0) throw std::invalid_argument("rank must be positive");
  if (!layout_valid(family, layout))
    throw std::invalid_argument("invalid family/layout pair");
  if (layout == Layout::ConjHalf && rank % 2 != 0)
    throw std::invalid_argument("conj_half requires even rank");

  ModelParams m;
  m.family = family;
  m.layout = layout;
  m.rank = rank;
  m.seed = seed;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1e-2);

  m.entities.reserve(n_e);
  for (std::size_t i = 0; i < n_e; ++i) {
    ComplexVec v(rank);
    fill_gaussian(v, rng, dist);
    m.entities.push_back(std::move(v));
  }

  std::size_t n_vecs, vec_len;
  if (family == Family::ComplEx) {
    n_vecs = 1;
    vec_len = (layout == Layout::Full) ? rank : rank / 2;
  } else {
    n_vecs = (layout == Layout::Full) ? 4 : 2;
    vec_len = rank;
  }
  m.relations.reserve(n_r);
  for (std::size_t i = 0; i < n_r; ++i) {
    RelationParams p;
    p.layout = layout;
    for (std::size_t k = 0; k < n_vecs; ++k) {
      ComplexVec v(vec_len);
      fill_gaussian(v, rng, dist);
      p.stored.push_back(std::move(v));
    }
    m.relations.push_back(std::move(p));
  }
  return m;
}

double score_complex(const ComplexVec& h, const ComplexVec& r_full,
                     const ComplexVec& t) {
  if (h.size() != r_full.size() || h.size() != t.size())
    throw std::invalid_argument("rank mismatch in score_complex");
  return kernels::active().triple_dot_re(r_full.re.data(), r_full.im.data(),
                                         h.re.data(), h.im.data(), t.re.data(),
                                         t.im.data(), h.size());
}

ComplexVec transform_mobius(const MobiusCoeffs& coeffs, const ComplexVec& x) {
  if (coeffs.size() != x.size())
    throw std::invalid_argument("rank mismatch in transform_mobius");
  ComplexVec y(x.size());
  kernels::active().mobius_apply(coeffs.a.re.data(), coeffs.a.im.data(),
                                 coeffs.b.re.data(), coeffs.b.im.data(),
                                 coeffs.c.re.data(), coeffs.c.im.data(),
                                 coeffs.d.re.data(), coeffs.d.im.data(),
                                 x.re.data(), x.im.data(), y.re.data(),
                                 y.im.data(), x.size());
  return y;
}

MobiusDecomposition decompose_mobius(const MobiusCoeffs& coeffs) {
  std::size_t n = coeffs.size();
  MobiusDecomposition out{ComplexVec(n), ComplexVec(n), ComplexVec(n)};
  for (std::size_t i = 0; i < n; ++i) {
    Complex a = coeffs.a.at(i), b = coeffs.b.at(i), c = coeffs.c.at(i),
            d = coeffs.d.at(i);
    if (std::abs(c) < kDecomposeGuard)
      throw std::runtime_error("decomposition undefined: |c| below guard at dim " +
                               std::to_string(i));
    out.shift_pre.set(i, cdiv(d, c));
    out.scale.set(i, cdiv(b * c - a * d, c * c));
    out.shift_post.set(i, cdiv(a, c));
  }
  return out;
}

ComplexVec apply_decomposition(const MobiusDecomposition& d, const ComplexVec& x) {
  std::size_t n = x.size();
  ComplexVec y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex z = x.at(i) + d.shift_pre.at(i);
    z = Complex(1.0, 0.0) / z;
    z = d.scale.at(i) * z;
    z = z + d.shift_post.at(i);
    y.set(i, z);
  }
  return y;
}

double score_fivestar(const ComplexVec& h, const MobiusCoeffs& coeffs,
                      const ComplexVec& t) {
  if (h.size() != coeffs.size() || h.size() != t.size())
    throw std::invalid_argument("rank mismatch in score_fivestar");
  ComplexVec y = transform_mobius(coeffs, h);
  return kernels::active().hermitian_dot_re(y.re.data(), y.im.data(), t.re.data(),
                                            t.im.data(), h.size());
}

namespace {

// Query-side vector: w = r (.) h for ComplEx, y = mobius(coeffs, h) for 5-star.
ComplexVec query_vector(const ModelParams& m, std::int32_t h, std::int32_t r) {
  const ComplexVec& hv = m.entities.at(h);
  const RelationParams& rp = m.relations.at(r);
  if (m.family == Family::ComplEx) {
    ComplexVec rf = materialize_complex(rp, m.rank);
    ComplexVec w(m.rank);
    kernels::active().cmul(rf.re.data(), rf.im.data(), hv.re.data(), hv.im.data(),
                           w.re.data(), w.im.data(), m.rank);
    return w;
  }
  MobiusCoeffs coeffs = materialize_fivestar(rp);
  return transform_mobius(coeffs, hv);
}

}  // namespace

double score_one(const ModelParams& m, std::int32_t h, std::int32_t r,
                 std::int32_t t) {
  ComplexVec w = query_vector(m, h, r);
  const ComplexVec& tv = m.entities.at(t);
  return kernels::active().hermitian_dot_re(w.re.data(), w.im.data(), tv.re.data(),
                                            tv.im.data(), m.rank);
}

std::vector<double> score_row(const ModelParams& m, std::int32_t h,
                              std::int32_t r) {
  ComplexVec w = query_vector(m, h, r);
  std::vector<double> row(m.n_entities());
  const auto& kern = kernels::active();
  for (std::size_t e = 0; e < m.n_entities(); ++e) {
    const ComplexVec& ev = m.entities[e];
    row[e] = kern.hermitian_dot_re(w.re.data(), w.im.data(), ev.re.data(),
                                   ev.im.data(), m.rank);
  }
  return row;
}

std::vector<std::vector<double>> score_batch(
    const ModelParams& m,
    const std::vector<std::pair<std::int32_t, std::int32_t>>& queries) {
  std::vector<std::vector<double>> out;
  out.reserve(queries.size());
  for (const auto& [h, r] : queries) out.push_back(score_row(m, h, r));
  return out;
}

const char* reg_mode_name(RegMode m) {
  switch (m) {
    case RegMode::FullSum: return "full_sum";
    case RegMode::SharedTimesTwo: return "shared_times_two";
    case RegMode::HalfOnly: return "half_only";
  }
  return "?";
}

RegMode reg_mode_from_string(const std::string& s) {
  if (s == "full_sum") return RegMode::FullSum;
  if (s == "shared_times_two") return RegMode::SharedTimesTwo;
  if (s == "half_only") return RegMode::HalfOnly;
  throw std::invalid_argument("unknown reg mode: " + s);
}

namespace {

double vec_sq(const ComplexVec& v) {
  const auto& kern = kernels::active();
  return kern.sum_squares(v.re.data(), v.size()) +
         kern.sum_squares(v.im.data(), v.size());
}

double relation_sq(const ModelParams& m, const RelationParams& rp, RegMode mode) {
  if (mode == RegMode::FullSum) {
    double s = 0.0;
    if (m.family == Family::ComplEx) {
      s = vec_sq(materialize_complex(rp, m.rank));
    } else {
      MobiusCoeffs c = materialize_fivestar(rp);
      s = vec_sq(c.a) + vec_sq(c.b) + vec_sq(c.c) + vec_sq(c.d);
    }
    return s;
  }
  // Stored half. For Full layouts "half" means the leading half of the
  // materialized coefficients (first rank/2 dims for ComplEx, vecs a,b for
  // 5-star); for conjugate layouts the stored vecs are exactly that half.
  double s = 0.0;
  if (rp.layout == Layout::Full) {
    if (m.family == Family::ComplEx) {
      std::size_t half = m.rank / 2;
      const auto& kern = kernels::active();
      s = kern.sum_squares(rp.stored[0].re.data(), half) +
          kern.sum_squares(rp.stored[0].im.data(), half);
    } else {
      s = vec_sq(rp.stored[0]) + vec_sq(rp.stored[1]);
    }
  } else {
    for (const auto& v : rp.stored) s += vec_sq(v);
  }
  return (mode == RegMode::SharedTimesTwo) ? 2.0 * s : s;
}

}  // namespace

double regularization(const ModelParams& m, const std::vector<Triple>& batch,
                      RegMode mode, double coefficient) {
  if (coefficient < 0.0) throw std::invalid_argument("negative reg coefficient");
  double total = 0.0;
  for (const Triple& t : batch) {
    total += vec_sq(m.entities.at(t.head));
    total += relation_sq(m, m.relations.at(t.rel), mode);
    total += vec_sq(m.entities.at(t.tail));
  }
  return coefficient * total;
}

namespace {

constexpr char kMagic[8] = {'K', 'G', 'E', 'C', 'K', 'P', 'T', '1'};

void write_u64(std::ofstream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
std::uint64_t read_u64(std::ifstream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}
void write_vec(std::ofstream& out, const std::vector<double>& v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}
void read_vec(std::ifstream& in, std::vector<double>& v) {
  in.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(v.size() * sizeof(double)));
}

}  // namespace

void save_checkpoint(const ModelParams& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
  out.write(kMagic, sizeof kMagic);
  write_u64(out, 1);  // version
  write_u64(out, static_cast<std::uint64_t>(m.family));
  write_u64(out, static_cast<std::uint64_t>(m.layout));
  write_u64(out, m.rank);
  write_u64(out, m.n_entities());
  write_u64(out, m.n_relations());
  write_u64(out, m.seed);
  for (const auto& v : m.entities) {
    write_vec(out, v.re);
    write_vec(out, v.im);
  }
  for (const auto& rp : m.relations) {
    write_u64(out, rp.stored.size());
    for (const auto& v : rp.stored) {
      write_u64(out, v.size());
      write_vec(out, v.re);
      write_vec(out, v.im);
    }
  }
  if (!out) throw std::runtime_error("checkpoint write failed: " + path);
}

ModelParams load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read checkpoint: " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw std::runtime_error("bad checkpoint magic: " + path);
  if (read_u64(in) != 1) throw std::runtime_error("unsupported checkpoint version");
  ModelParams m;
  m.family = static_cast<Family>(read_u64(in));
  m.layout = static_cast<Layout>(read_u64(in));
  m.rank = read_u64(in);
  std::size_t n_e = read_u64(in);
  std::size_t n_r = read_u64(in);
  m.seed = read_u64(in);
  m.entities.assign(n_e, ComplexVec(m.rank));
  for (auto& v : m.entities) {
    read_vec(in, v.re);
    read_vec(in, v.im);
  }
  m.relations.resize(n_r);
  for (auto& rp : m.relations) {
    rp.layout = m.layout;
    rp.stored.resize(read_u64(in));
    for (auto& v : rp.stored) {
      std::size_t len = read_u64(in);
      v = ComplexVec(len);
      read_vec(in, v.re);
      read_vec(in, v.im);
    }
  }
  if (!in) throw std::runtime_error("truncated checkpoint: " + path);
  return m;
}

}  // namespace kge
