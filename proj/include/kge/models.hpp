#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kge/complex_core.hpp"
#include "kge/kg_data.hpp"

namespace kge {

// Threshold below which the four-step decomposition is refused.
inline constexpr double kDecomposeGuard = 1e-6;

struct ModelParams {
  Family family = Family::ComplEx;
  Layout layout = Layout::Full;
  std::size_t rank = 0;
  std::vector<ComplexVec> entities;       // n_e vectors of length rank
  std::vector<RelationParams> relations;  // n_r
  std::uint64_t seed = 0;

  std::size_t n_entities() const { return entities.size(); }
  std::size_t n_relations() const { return relations.size(); }
};

// Gaussian init, mean 0, std 1e-2, deterministic by seed.
ModelParams init_model(Family family, Layout layout, std::size_t n_e,
                       std::size_t n_r, std::size_t rank, std::uint64_t seed);

// Re( sum_i r_i h_i conj(t_i) )
double score_complex(const ComplexVec& h, const ComplexVec& r_full,
                     const ComplexVec& t);

// Per-dimension (a x + b) / (c x + d) with the guarded division
// (num * conj(den)) / max(|den|^2, kernels::kMobiusEps).
ComplexVec transform_mobius(const MobiusCoeffs& coeffs, const ComplexVec& x);

// x -> x + shift_pre, then 1/x, then scale * x, then x + shift_post:
//   shift_pre = d/c, scale = (bc - ad)/c^2, shift_post = a/c.
struct MobiusDecomposition {
  ComplexVec shift_pre, scale, shift_post;
};
MobiusDecomposition decompose_mobius(const MobiusCoeffs& coeffs);
ComplexVec apply_decomposition(const MobiusDecomposition& d, const ComplexVec& x);

// Re( sum_i mobius(coeffs, h)_i conj(t_i) )
double score_fivestar(const ComplexVec& h, const MobiusCoeffs& coeffs,
                      const ComplexVec& t);

// Score of (h, r, t) by id, materializing the relation per call.
double score_one(const ModelParams& m, std::int32_t h, std::int32_t r,
                 std::int32_t t);

// Scores of query (h, r) against every entity.
std::vector<double> score_row(const ModelParams& m, std::int32_t h, std::int32_t r);

// Row q = score_row(queries[q]); bit-identical to the per-query path.
std::vector<std::vector<double>> score_batch(
    const ModelParams& m, const std::vector<std::pair<std::int32_t, std::int32_t>>& queries);

enum class RegMode : std::uint8_t { FullSum = 0, SharedTimesTwo = 1, HalfOnly = 2 };
const char* reg_mode_name(RegMode m);
RegMode reg_mode_from_string(const std::string& s);

// Weighted-L2 penalty over the batch: per triple, squared real components of
// the head embedding, the relation parameters, and the gold tail embedding.
// FullSum uses materialized relation coefficients; SharedTimesTwo doubles the
// stored half; HalfOnly sums the stored half without doubling.
double regularization(const ModelParams& m, const std::vector<Triple>& batch,
                      RegMode mode, double coefficient);

// Versioned binary checkpoint; round-trip is bit-exact.
void save_checkpoint(const ModelParams& m, const std::string& path);
ModelParams load_checkpoint(const std::string& path);

}  // namespace kge
