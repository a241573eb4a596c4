#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kge/kg_data.hpp"
#include "kge/models.hpp"

namespace kge {

enum class Optimizer : std::uint8_t { Adagrad = 0, Adam = 1, SGD = 2 };
const char* optimizer_name(Optimizer o);
Optimizer optimizer_from_string(const std::string& s);

struct ModelConfig {
  Family family = Family::ComplEx;
  Layout layout = Layout::Full;
  std::size_t rank = 100;
  Optimizer optimizer = Optimizer::Adagrad;
  double learning_rate = 1e-1;
  std::size_t batch_size = 500;
  double reg_coefficient = 0.0;
  RegMode reg_mode = RegMode::FullSum;
  std::size_t epochs = 100;
  std::uint64_t seed = 0;

  void validate() const;  // throws on non-positive numeric fields etc.
};

// Flat key=value config file; '#' comments; unknown keys are errors.
ModelConfig parse_config_file(const std::string& path);
void write_config_file(const ModelConfig& c, const std::string& path);

struct EpochStats {
  std::size_t epoch = 0;
  double mean_loss = 0.0;
  double seconds = 0.0;
};

// -log softmax(row)[gold]; throws on non-finite scores.
double cross_entropy_loss(const std::vector<double>& row, std::int32_t gold);

class Trainer {
 public:
  // Dataset must already carry reciprocal augmentation if wanted; the trainer
  // iterates the train split as-is.
  Trainer(ModelParams& model, const Dataset& data, const ModelConfig& config);

  EpochStats run_epoch();

  // Mean loss + regularization over the given batch, no update.
  double batch_objective(const std::vector<Triple>& batch) const;

 private:
  struct Grads;
  void accumulate_gradients(const std::vector<Triple>& batch, Grads& g,
                            double* loss_out) const;
  void apply_update(const Grads& g);

  ModelParams& model_;
  const Dataset& data_;
  ModelConfig config_;
  std::size_t epoch_ = 0;
  std::uint64_t shuffle_state_;
  std::vector<ComplexVec> opt_m_entities_, opt_v_entities_;
  std::vector<std::vector<ComplexVec>> opt_m_relations_, opt_v_relations_;
  std::size_t adam_step_ = 0;

  friend double gradient_check(ModelParams&, const Dataset&,
                               const std::vector<Triple>&, const ModelConfig&);
};

// Max relative error between analytic gradients and central finite
// differences (step 1e-5) over every stored parameter. Desk scale only.
double gradient_check(ModelParams& model, const Dataset& data,
                      const std::vector<Triple>& batch, const ModelConfig& config);

struct GridPoint {
  ModelConfig config;
  double mean_valid_mrr = 0.0;
  double mean_epoch_seconds = 0.0;
};

struct GridResult {
  GridPoint best;
  std::vector<GridPoint> table;
};

struct GridSpec {
  std::vector<std::size_t> ranks{100, 500};
  std::vector<double> learning_rates{1e-2, 5e-2, 1e-1};
  std::vector<std::size_t> batch_sizes{100, 500, 1000, 2000};
  std::vector<double> reg_coefficients{2.5e-3, 5e-3, 1e-2, 5e-2, 1e-1, 5e-1};
  std::vector<Optimizer> optimizers{Optimizer::Adagrad, Optimizer::Adam,
                                    Optimizer::SGD};

  std::size_t cardinality() const {
    return ranks.size() * learning_rates.size() * batch_sizes.size() *
           reg_coefficients.size() * optimizers.size();
  }
  // Expansion in lexicographic order (rank, lr, batch, reg, optimizer).
  std::vector<ModelConfig> expand(const ModelConfig& base) const;
};

// Trains every grid point `repeats` times (seeds base.seed + repeat index),
// evaluates validation MRR, returns the argmax. Ties break by lower mean
// epoch time, then by grid order.
GridResult grid_search(const Dataset& data, const GridSpec& grid,
                       const ModelConfig& base, std::size_t repeats);

}  // namespace kge
