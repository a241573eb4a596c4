#include "kge/kg_data.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace kge {
namespace {

std::int32_t intern(const std::string& name, std::vector<std::string>& names,
                    std::unordered_map<std::string, std::int32_t>& ids) {
  auto it = ids.find(name);
  if (it != ids.end()) return it->second;
  auto id = static_cast<std::int32_t>(names.size());
  names.push_back(name);
  ids.emplace(name, id);
  return id;
}

struct TripleHash {
  std::size_t operator()(const Triple& t) const {
    std::uint64_t k = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t.head)) << 40) ^
                      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t.rel)) << 20) ^
                      static_cast<std::uint32_t>(t.tail);
    return std::hash<std::uint64_t>()(k);
  }
};

void load_split(const std::string& path, const char* split_name, Dataset& d,
                std::vector<Triple>& out) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing split file: " + path);
  std::unordered_set<Triple, TripleHash> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab1 = line.find('\t');
    auto tab2 = (tab1 == std::string::npos) ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos ||
        line.find('\t', tab2 + 1) != std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 3 tab-separated fields");
    }
    Triple t;
    t.head = intern(line.substr(0, tab1), d.entity_names, d.entity_ids);
    t.rel = intern(line.substr(tab1 + 1, tab2 - tab1 - 1), d.relation_names,
                   d.relation_ids);
    t.tail = intern(line.substr(tab2 + 1), d.entity_names, d.entity_ids);
    if (!seen.insert(t).second)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": duplicate triple in split");
    out.push_back(t);
  }
  if (out.empty())
    throw std::runtime_error(std::string("empty split: ") + split_name);
}

}  // namespace

Dataset load_dataset(const std::string& directory) {
  Dataset d;
  load_split(directory + "/train.txt", "train", d, d.train);
  load_split(directory + "/valid.txt", "valid", d, d.valid);
  load_split(directory + "/test.txt", "test", d, d.test);
  return d;
}

void save_dataset(const Dataset& d, const std::string& directory) {
  std::filesystem::create_directories(directory);
  auto write = [&](const std::vector<Triple>& split, const std::string& name) {
    std::ofstream out(directory + "/" + name);
    if (!out) throw std::runtime_error("cannot write " + directory + "/" + name);
    for (const Triple& t : split) {
      out << d.entity_names[t.head] << '\t' << d.relation_names[t.rel] << '\t'
          << d.entity_names[t.tail] << '\n';
    }
  };
  write(d.train, "train.txt");
  write(d.valid, "valid.txt");
  write(d.test, "test.txt");
}

Dataset augment_reciprocal(const Dataset& d) {
  if (d.reciprocal_applied)
    throw std::runtime_error("reciprocal augmentation already applied");
  Dataset out = d;
  auto n_r = static_cast<std::int32_t>(d.relation_names.size());
  for (std::int32_t r = 0; r < n_r; ++r) {
    std::string name = d.relation_names[r] + "_reciprocal";
    out.relation_names.push_back(name);
    out.relation_ids.emplace(name, n_r + r);
  }
  out.train.reserve(d.train.size() * 2);
  for (const Triple& t : d.train)
    out.train.push_back({t.tail, static_cast<std::int32_t>(t.rel + n_r), t.head});
  out.reciprocal_applied = true;
  return out;
}

FilterIndex build_filter_index(const Dataset& d) {
  FilterIndex idx;
  auto n_base = static_cast<std::int32_t>(d.n_base_relations());
  auto add = [&](const std::vector<Triple>& split) {
    for (const Triple& t : split) {
      idx.map[FilterIndex::key(t.head, t.rel)].push_back(t.tail);
      // Reciprocal-augmented datasets answer head queries through r + n_base;
      // index that direction too so those queries filter correctly.
      if (d.reciprocal_applied && t.rel < n_base)
        idx.map[FilterIndex::key(t.tail, t.rel + n_base)].push_back(t.head);
    }
  };
  add(d.train);
  add(d.valid);
  add(d.test);
  for (auto& [k, tails] : idx.map) {
    std::sort(tails.begin(), tails.end());
    tails.erase(std::unique(tails.begin(), tails.end()), tails.end());
  }
  return idx;
}

Dataset generate_synthetic_kg(std::size_t n_entities,
                              const std::set<RelationFamily>& families,
                              double density, std::uint64_t seed) {
  if (n_entities < 4) throw std::invalid_argument("need at least 4 entities");
  if (density <= 0.0 || density > 1.0)
    throw std::invalid_argument("density must be in (0, 1]");
  if (families.empty()) throw std::invalid_argument("no relation families requested");

  Dataset d;
  for (std::size_t i = 0; i < n_entities; ++i)
    intern("e" + std::to_string(i), d.entity_names, d.entity_ids);

  std::int32_t r_sym = -1, r_anti = -1, r_inv = -1, r_inv_rev = -1;
  if (families.count(RelationFamily::Symmetric))
    r_sym = intern("sym", d.relation_names, d.relation_ids);
  if (families.count(RelationFamily::Antisymmetric))
    r_anti = intern("anti", d.relation_names, d.relation_ids);
  if (families.count(RelationFamily::InversePair)) {
    r_inv = intern("inv", d.relation_names, d.relation_ids);
    r_inv_rev = intern("inv_rev", d.relation_names, d.relation_ids);
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto n = static_cast<std::int32_t>(n_entities);

  // Implied closure triples go 80/10/10 to train/valid/test.
  auto place_implied = [&](Triple t) {
    double u = unif(rng);
    if (u < 0.8)
      d.train.push_back(t);
    else if (u < 0.9)
      d.valid.push_back(t);
    else
      d.test.push_back(t);
  };

  for (std::int32_t u = 0; u < n; ++u) {
    for (std::int32_t v = u + 1; v < n; ++v) {
      if (r_sym >= 0 && unif(rng) < density) {
        d.train.push_back({u, r_sym, v});
        place_implied({v, r_sym, u});
      }
      if (r_anti >= 0 && unif(rng) < density) {
        // one orientation only; the reverse stays absent everywhere
        if (unif(rng) < 0.5)
          d.train.push_back({u, r_anti, v});
        else
          d.train.push_back({v, r_anti, u});
      }
      if (r_inv >= 0 && unif(rng) < density) {
        d.train.push_back({u, r_inv, v});
        place_implied({v, r_inv_rev, u});
      }
    }
  }

  if (d.test.empty() || d.valid.empty())
    throw std::runtime_error("density too low: empty valid/test split");
  return d;
}

}  // namespace kge
