#include "kge/evaluation.hpp"

#include <algorithm>
#include <stdexcept>

namespace kge {

std::size_t rank_query(const std::vector<double>& scores, std::int32_t gold,
                       const std::vector<std::int32_t>& filter) {
  if (gold < 0 || static_cast<std::size_t>(gold) >= scores.size())
    throw std::out_of_range("gold entity out of range");
  double gold_score = scores[gold];
  std::size_t above = 0, tied = 0;
  auto filtered = [&](std::int32_t e) {
    return std::binary_search(filter.begin(), filter.end(), e);
  };
  for (std::size_t e = 0; e < scores.size(); ++e) {
    auto id = static_cast<std::int32_t>(e);
    if (id == gold) continue;
    if (filtered(id)) continue;
    if (scores[e] > gold_score)
      ++above;
    else if (scores[e] == gold_score)
      ++tied;
  }
  return 1 + above + tied / 2;
}

double mrr(const std::vector<std::size_t>& ranks) {
  if (ranks.empty()) throw std::invalid_argument("mrr of empty rank list");
  double acc = 0.0;
  for (std::size_t r : ranks) acc += 1.0 / static_cast<double>(r);
  return acc / static_cast<double>(ranks.size());
}

double hits_at_n(const std::vector<std::size_t>& ranks, std::size_t n) {
  if (ranks.empty()) throw std::invalid_argument("hits of empty rank list");
  if (n < 1) throw std::invalid_argument("hits N must be >= 1");
  std::size_t c = 0;
  for (std::size_t r : ranks)
    if (r <= n) ++c;
  return static_cast<double>(c) / static_cast<double>(ranks.size());
}

std::vector<std::size_t> evaluate_ranks(const ModelParams& model,
                                        const Dataset& data, Split split,
                                        const FilterIndex& filter) {
  if (model.n_entities() != data.n_entities() ||
      model.n_relations() != data.n_relations())
    throw std::runtime_error("model/dataset vocabulary mismatch");
  if (!data.reciprocal_applied)
    throw std::runtime_error("evaluation requires a reciprocal-augmented dataset");

  const std::vector<Triple>* triples = nullptr;
  switch (split) {
    case Split::Train: triples = &data.train; break;
    case Split::Valid: triples = &data.valid; break;
    case Split::Test: triples = &data.test; break;
  }
  auto n_base = static_cast<std::int32_t>(data.n_base_relations());
  static const std::vector<std::int32_t> kEmpty;

  std::vector<std::size_t> ranks;
  ranks.reserve(triples->size() * 2);
  auto rank_one = [&](std::int32_t h, std::int32_t r, std::int32_t gold) {
    std::vector<double> row = score_row(model, h, r);
    const std::vector<std::int32_t>* f = filter.find(h, r);
    ranks.push_back(rank_query(row, gold, f ? *f : kEmpty));
  };
  for (const Triple& t : *triples) {
    rank_one(t.head, t.rel, t.tail);  // tail query
    // Head query through the reciprocal relation. Augmented train triples with
    // rel >= n_base already are the head query of their base sibling; skip.
    if (t.rel < n_base) rank_one(t.tail, t.rel + n_base, t.head);
  }
  return ranks;
}

Metrics metrics_from_ranks(const std::vector<std::size_t>& ranks) {
  Metrics m;
  m.mrr = mrr(ranks);
  for (int n : {1, 3, 10}) m.hits[n] = hits_at_n(ranks, static_cast<std::size_t>(n));
  m.n_queries = ranks.size();
  return m;
}

Metrics evaluate(const ModelParams& model, const Dataset& data, Split split,
                 const FilterIndex& filter) {
  return metrics_from_ranks(evaluate_ranks(model, data, split, filter));
}

}  // namespace kge
