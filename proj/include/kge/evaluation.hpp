#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "kge/kg_data.hpp"
#include "kge/models.hpp"

namespace kge {

struct Metrics {
  double mrr = 0.0;
  std::map<int, double> hits;  // N -> fraction, N in {1, 3, 10}
  std::size_t n_queries = 0;
};

// Average-tie filtered rank: candidates are all entities minus
// (filter \ {gold}); rank = 1 + #{score > gold} + floor(#{score == gold}/2).
// `filter` must be sorted ascending (FilterIndex entries are).
std::size_t rank_query(const std::vector<double>& scores, std::int32_t gold,
                       const std::vector<std::int32_t>& filter);

double mrr(const std::vector<std::size_t>& ranks);
double hits_at_n(const std::vector<std::size_t>& ranks, std::size_t n);

enum class Split { Train, Valid, Test };

// Ranks every query of the split in both directions: the tail query (h, r, ?)
// directly and the head query through the reciprocal relation r + n_base.
// Requires a reciprocal-augmented dataset and a filter index over all splits.
Metrics evaluate(const ModelParams& model, const Dataset& data, Split split,
                 const FilterIndex& filter);

// Per-query ranks, pooled over both directions (tail query first).
std::vector<std::size_t> evaluate_ranks(const ModelParams& model,
                                        const Dataset& data, Split split,
                                        const FilterIndex& filter);

Metrics metrics_from_ranks(const std::vector<std::size_t>& ranks);

}  // namespace kge
