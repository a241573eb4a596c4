#include "kge/complex_core.hpp"

#include <stdexcept>

namespace kge {

const char* family_name(Family f) {
  switch (f) {
    case Family::ComplEx: return "complex";
    case Family::FiveStar: return "fivestar";
  }
  return "?";
}

const char* layout_name(Layout l) {
  switch (l) {
    case Layout::Full: return "full";
    case Layout::ConjHalf: return "conj_half";
    case Layout::ConjDiag: return "conj_diag";
    case Layout::ConjNeg: return "conj_neg";
    case Layout::ConjVert: return "conj_vert";
    case Layout::ConjHoriz: return "conj_horiz";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  if (s == "complex") return Family::ComplEx;
  if (s == "fivestar") return Family::FiveStar;
  throw std::invalid_argument("unknown model family: " + s);
}

Layout layout_from_string(const std::string& s) {
  if (s == "full") return Layout::Full;
  if (s == "conj_half") return Layout::ConjHalf;
  if (s == "conj_diag") return Layout::ConjDiag;
  if (s == "conj_neg") return Layout::ConjNeg;
  if (s == "conj_vert") return Layout::ConjVert;
  if (s == "conj_horiz") return Layout::ConjHoriz;
  throw std::invalid_argument("unknown layout: " + s);
}

bool layout_valid(Family family, Layout layout) {
  if (layout == Layout::Full) return true;
  if (family == Family::ComplEx) return layout == Layout::ConjHalf;
  return layout == Layout::ConjDiag || layout == Layout::ConjNeg ||
         layout == Layout::ConjVert || layout == Layout::ConjHoriz;
}

void validate_relation_params(Family family, const RelationParams& p,
                              std::size_t rank) {
  if (!layout_valid(family, p.layout))
    throw std::invalid_argument(std::string("layout ") + layout_name(p.layout) +
                                " is invalid for family " + family_name(family));
  if (family == Family::ComplEx) {
    if (p.stored.size() != 1)
      throw std::invalid_argument("complex-family relation needs 1 stored vector");
    if (p.layout == Layout::Full) {
      if (p.stored[0].size() != rank)
        throw std::invalid_argument("full complex relation vector must have length rank");
    } else {
      if (rank % 2 != 0)
        throw std::invalid_argument("conj_half requires even rank");
      if (p.stored[0].size() != rank / 2)
        throw std::invalid_argument("conj_half relation vector must have length rank/2");
    }
  } else {
    std::size_t want = (p.layout == Layout::Full) ? 4 : 2;
    if (p.stored.size() != want)
      throw std::invalid_argument("fivestar relation stored vector count mismatch");
    for (const auto& v : p.stored)
      if (v.size() != rank)
        throw std::invalid_argument("fivestar relation vectors must have length rank");
  }
}

ComplexVec materialize_complex(const RelationParams& p, std::size_t rank) {
  validate_relation_params(Family::ComplEx, p, rank);
  if (p.layout == Layout::Full) return p.stored[0];
  // [a1 || conj(a1)]
  const ComplexVec& a1 = p.stored[0];
  std::size_t half = rank / 2;
  ComplexVec out(rank);
  for (std::size_t i = 0; i < half; ++i) {
    out.re[i] = a1.re[i];
    out.im[i] = a1.im[i];
    out.re[half + i] = a1.re[i];
    out.im[half + i] = -a1.im[i];
  }
  return out;
}

MobiusCoeffs materialize_fivestar(const RelationParams& p) {
  if (p.stored.empty()) throw std::invalid_argument("empty relation params");
  std::size_t rank = p.stored[0].size();
  validate_relation_params(Family::FiveStar, p, rank);
  MobiusCoeffs out;
  switch (p.layout) {
    case Layout::Full:
      out.a = p.stored[0];
      out.b = p.stored[1];
      out.c = p.stored[2];
      out.d = p.stored[3];
      break;
    case Layout::ConjDiag:
      out.a = p.stored[0];
      out.b = p.stored[1];
      out.c = p.stored[1].conjugated();
      out.d = p.stored[0].conjugated();
      break;
    case Layout::ConjNeg: {
      out.a = p.stored[0];
      out.b = p.stored[1];
      out.c = p.stored[1].conjugated();
      for (double& v : out.c.re) v = -v;
      for (double& v : out.c.im) v = -v;
      out.d = p.stored[0].conjugated();
      break;
    }
    case Layout::ConjVert:
      out.a = p.stored[0];
      out.b = p.stored[1];
      out.c = p.stored[0].conjugated();
      out.d = p.stored[1].conjugated();
      break;
    case Layout::ConjHoriz:
      // stored (a, c); b = conj(a), d = conj(c)
      out.a = p.stored[0];
      out.b = p.stored[0].conjugated();
      out.c = p.stored[1];
      out.d = p.stored[1].conjugated();
      break;
    default:
      throw std::invalid_argument("conj_half is not a fivestar layout");
  }
  return out;
}

std::size_t relation_param_count(Family family, Layout layout, std::size_t n_r,
                                 std::size_t rank) {
  if (rank == 0) throw std::invalid_argument("rank must be positive");
  if (!layout_valid(family, layout))
    throw std::invalid_argument("invalid family/layout pair");
  if (family == Family::ComplEx)
    return (layout == Layout::Full) ? 2 * rank * n_r : rank * n_r;
  return (layout == Layout::Full) ? 8 * rank * n_r : 4 * rank * n_r;
}

}  // namespace kge
