#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace kge {

struct Triple {
  std::int32_t head;
  std::int32_t rel;
  std::int32_t tail;

  bool operator==(const Triple& o) const {
    return head == o.head && rel == o.rel && tail == o.tail;
  }
  bool operator<(const Triple& o) const {
    if (head != o.head) return head < o.head;
    if (rel != o.rel) return rel < o.rel;
    return tail < o.tail;
  }
};

struct Dataset {
  std::vector<Triple> train, valid, test;
  std::vector<std::string> entity_names;    // id -> name
  std::vector<std::string> relation_names;  // id -> name
  std::unordered_map<std::string, std::int32_t> entity_ids;
  std::unordered_map<std::string, std::int32_t> relation_ids;
  bool reciprocal_applied = false;

  std::size_t n_entities() const { return entity_names.size(); }
  std::size_t n_relations() const { return relation_names.size(); }
  // Relation count before reciprocal augmentation.
  std::size_t n_base_relations() const {
    return reciprocal_applied ? relation_names.size() / 2 : relation_names.size();
  }
};

// (head, rel) -> sorted tail ids true in train u valid u test.
struct FilterIndex {
  std::unordered_map<std::uint64_t, std::vector<std::int32_t>> map;

  static std::uint64_t key(std::int32_t h, std::int32_t r) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(h)) << 32) |
           static_cast<std::uint32_t>(r);
  }
  const std::vector<std::int32_t>* find(std::int32_t h, std::int32_t r) const {
    auto it = map.find(key(h, r));
    return it == map.end() ? nullptr : &it->second;
  }
};

// Reads train.txt/valid.txt/test.txt (TSV head<TAB>rel<TAB>tail). Ids are
// assigned first-seen over train, then valid, then test. Throws on missing
// files, malformed lines, duplicate triples within a split, or empty splits.
Dataset load_dataset(const std::string& directory);

// Writes the three split files back in the same TSV format.
void save_dataset(const Dataset& d, const std::string& directory);

// Doubles the relation vocabulary; for every train triple (h,r,t) adds
// (t, r+n_r, h). Throws if already applied.
Dataset augment_reciprocal(const Dataset& d);

FilterIndex build_filter_index(const Dataset& d);

enum class RelationFamily { Symmetric, Antisymmetric, InversePair };

// Deterministic-by-seed synthetic KG whose test split holds triples implied
// by family closure but absent from train.
Dataset generate_synthetic_kg(std::size_t n_entities,
                              const std::set<RelationFamily>& families,
                              double density, std::uint64_t seed);

}  // namespace kge
