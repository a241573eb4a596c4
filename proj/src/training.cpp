#include "kge/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "kge/evaluation.hpp"
#include "kge/kernels.hpp"

namespace kge {

const char* optimizer_name(Optimizer o) {
  switch (o) {
    case Optimizer::Adagrad: return "adagrad";
    case Optimizer::Adam: return "adam";
    case Optimizer::SGD: return "sgd";
  }
  return "?";
}

Optimizer optimizer_from_string(const std::string& s) {
  if (s == "adagrad") return Optimizer::Adagrad;
  if (s == "adam") return Optimizer::Adam;
  if (s == "sgd") return Optimizer::SGD;
  throw std::invalid_argument("unknown optimizer: " + s);
}

void ModelConfig::validate() const {
  if (rank == 0) throw std::invalid_argument("rank must be positive");
  if (learning_rate < 0.0) throw std::invalid_argument("negative learning rate");
  if (batch_size == 0) throw std::invalid_argument("batch_size must be positive");
  if (reg_coefficient < 0.0) throw std::invalid_argument("negative reg coefficient");
  if (epochs == 0) throw std::invalid_argument("epochs must be positive");
  if (!layout_valid(family, layout))
    throw std::invalid_argument("invalid family/layout pair");
  if (layout == Layout::ConjHalf && rank % 2 != 0)
    throw std::invalid_argument("conj_half requires even rank");
}

ModelConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  ModelConfig c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    auto strip = [](std::string s) {
      auto b2 = s.find_first_not_of(" \t");
      auto e2 = s.find_last_not_of(" \t");
      return (b2 == std::string::npos) ? std::string() : s.substr(b2, e2 - b2 + 1);
    };
    std::string key = strip(line.substr(0, eq));
    std::string val = strip(line.substr(eq + 1));
    if (key == "family") c.family = family_from_string(val);
    else if (key == "layout") c.layout = layout_from_string(val);
    else if (key == "rank") c.rank = std::stoul(val);
    else if (key == "optimizer") c.optimizer = optimizer_from_string(val);
    else if (key == "learning_rate") c.learning_rate = std::stod(val);
    else if (key == "batch_size") c.batch_size = std::stoul(val);
    else if (key == "reg_coefficient") c.reg_coefficient = std::stod(val);
    else if (key == "reg_mode") c.reg_mode = reg_mode_from_string(val);
    else if (key == "epochs") c.epochs = std::stoul(val);
    else if (key == "seed") c.seed = std::stoull(val);
    else
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown config key '" + key + "'");
  }
  c.validate();
  return c;
}

void write_config_file(const ModelConfig& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config: " + path);
  out << "family = " << family_name(c.family) << '\n'
      << "layout = " << layout_name(c.layout) << '\n'
      << "rank = " << c.rank << '\n'
      << "optimizer = " << optimizer_name(c.optimizer) << '\n'
      << "learning_rate = " << c.learning_rate << '\n'
      << "batch_size = " << c.batch_size << '\n'
      << "reg_coefficient = " << c.reg_coefficient << '\n'
      << "reg_mode = " << reg_mode_name(c.reg_mode) << '\n'
      << "epochs = " << c.epochs << '\n'
      << "seed = " << c.seed << '\n';
}

double cross_entropy_loss(const std::vector<double>& row, std::int32_t gold) {
  if (gold < 0 || static_cast<std::size_t>(gold) >= row.size())
    throw std::out_of_range("gold index out of range");
  double mx = row[0];
  for (double v : row) {
    if (!std::isfinite(v)) throw std::domain_error("non-finite score in loss");
    mx = std::max(mx, v);
  }
  double z = 0.0;
  for (double v : row) z += std::exp(v - mx);
  return std::log(z) - (row[gold] - mx);
}

struct Trainer::Grads {
  std::vector<ComplexVec> entities;                 // dense
  std::vector<std::vector<ComplexVec>> relations;   // stored-shaped
  std::vector<char> rel_touched;

  void reset(const ModelParams& m) {
    if (entities.size() != m.n_entities()) {
      entities.assign(m.n_entities(), ComplexVec(m.rank));
      relations.clear();
      relations.reserve(m.n_relations());
      for (const auto& rp : m.relations) {
        std::vector<ComplexVec> g;
        for (const auto& v : rp.stored) g.emplace_back(v.size());
        relations.push_back(std::move(g));
      }
      rel_touched.assign(m.n_relations(), 0);
      return;
    }
    for (auto& v : entities) {
      std::fill(v.re.begin(), v.re.end(), 0.0);
      std::fill(v.im.begin(), v.im.end(), 0.0);
    }
    for (std::size_t r = 0; r < relations.size(); ++r) {
      if (!rel_touched[r]) continue;
      for (auto& v : relations[r]) {
        std::fill(v.re.begin(), v.re.end(), 0.0);
        std::fill(v.im.begin(), v.im.end(), 0.0);
      }
      rel_touched[r] = 0;
    }
  }
};

Trainer::Trainer(ModelParams& model, const Dataset& data,
                 const ModelConfig& config)
    : model_(model), data_(data), config_(config) {
  config_.validate();
  if (model_.family != config_.family || model_.layout != config_.layout ||
      model_.rank != config_.rank)
    throw std::invalid_argument("model does not match config");
  if (data_.train.empty()) throw std::invalid_argument("empty train split");
  shuffle_state_ = config_.seed * 0x9E3779B97F4A7C15ull + 0x2545F4914F6CDD1Dull;

  if (config_.optimizer != Optimizer::SGD) {
    opt_m_entities_.assign(model_.n_entities(), ComplexVec(model_.rank));
    opt_m_relations_.reserve(model_.n_relations());
    for (const auto& rp : model_.relations) {
      std::vector<ComplexVec> s;
      for (const auto& v : rp.stored) s.emplace_back(v.size());
      opt_m_relations_.push_back(std::move(s));
    }
    if (config_.optimizer == Optimizer::Adam) {
      opt_v_entities_ = opt_m_entities_;
      opt_v_relations_ = opt_m_relations_;
    }
  }
}

namespace {

// Gradient of relation_sq() (see models.cpp) w.r.t. the stored parameters.
void add_relation_reg_grad(const ModelParams& m, const RelationParams& rp,
                           RegMode mode, double coeff,
                           std::vector<ComplexVec>& grad) {
  auto axpy_all = [&](double scale) {
    for (std::size_t k = 0; k < rp.stored.size(); ++k) {
      const auto& v = rp.stored[k];
      auto& g = grad[k];
      for (std::size_t i = 0; i < v.size(); ++i) {
        g.re[i] += scale * v.re[i];
        g.im[i] += scale * v.im[i];
      }
    }
  };
  auto axpy_leading = [&](double scale) {
    // leading half of the full coefficient list
    if (m.family == Family::ComplEx) {
      std::size_t half = m.rank / 2;
      const auto& v = rp.stored[0];
      auto& g = grad[0];
      for (std::size_t i = 0; i < half; ++i) {
        g.re[i] += scale * v.re[i];
        g.im[i] += scale * v.im[i];
      }
    } else {
      for (std::size_t k = 0; k < 2; ++k) {
        const auto& v = rp.stored[k];
        auto& g = grad[k];
        for (std::size_t i = 0; i < v.size(); ++i) {
          g.re[i] += scale * v.re[i];
          g.im[i] += scale * v.im[i];
        }
      }
    }
  };

  bool full = (rp.layout == Layout::Full);
  switch (mode) {
    case RegMode::FullSum:
      // conjugate layouts: each stored value appears twice in the full set
      if (full) axpy_all(2.0 * coeff);
      else axpy_all(4.0 * coeff);
      break;
    case RegMode::SharedTimesTwo:
      if (full) axpy_leading(4.0 * coeff);
      else axpy_all(4.0 * coeff);
      break;
    case RegMode::HalfOnly:
      if (full) axpy_leading(2.0 * coeff);
      else axpy_all(2.0 * coeff);
      break;
  }
}

}  // namespace

void Trainer::accumulate_gradients(const std::vector<Triple>& batch, Grads& g,
                                   double* loss_out) const {
  g.reset(model_);
  const auto n_e = model_.n_entities();
  const auto rank = model_.rank;
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  double loss_sum = 0.0;

  std::vector<double> prob(n_e);
  ComplexVec g_q(rank);  // gradient w.r.t. the query-side vector

  for (const Triple& triple : batch) {
    std::vector<double> row = score_row(model_, triple.head, triple.rel);
    loss_sum += cross_entropy_loss(row, triple.tail);

    // softmax probabilities
    double mx = *std::max_element(row.begin(), row.end());
    double z = 0.0;
    for (std::size_t e = 0; e < n_e; ++e) {
      prob[e] = std::exp(row[e] - mx);
      z += prob[e];
    }
    for (std::size_t e = 0; e < n_e; ++e) prob[e] /= z;

    const ComplexVec& hv = model_.entities[triple.head];
    const RelationParams& rp = model_.relations[triple.rel];
    g.rel_touched[triple.rel] = 1;

    // query-side vector: w = r (.) h (ComplEx) or y = mobius(coeffs, h)
    ComplexVec rf;         // materialized ComplEx weights
    MobiusCoeffs coeffs;   // materialized 5-star coefficients
    ComplexVec q(rank);
    if (model_.family == Family::ComplEx) {
      rf = materialize_complex(rp, rank);
      kernels::active().cmul(rf.re.data(), rf.im.data(), hv.re.data(),
                             hv.im.data(), q.re.data(), q.im.data(), rank);
    } else {
      coeffs = materialize_fivestar(rp);
      q = transform_mobius(coeffs, hv);
    }

    // dL/ds_e = (p_e - [e == gold]) / B; entity grads and g_q accumulation
    std::fill(g_q.re.begin(), g_q.re.end(), 0.0);
    std::fill(g_q.im.begin(), g_q.im.end(), 0.0);
    for (std::size_t e = 0; e < n_e; ++e) {
      double ge = prob[e] * inv_b;
      if (static_cast<std::int32_t>(e) == triple.tail) ge -= inv_b;
      if (ge == 0.0) continue;
      const ComplexVec& ev = model_.entities[e];
      auto& gent = g.entities[e];
      for (std::size_t i = 0; i < rank; ++i) {
        gent.re[i] += ge * q.re[i];
        gent.im[i] += ge * q.im[i];
        g_q.re[i] += ge * ev.re[i];
        g_q.im[i] += ge * ev.im[i];
      }
    }

    auto& g_h = g.entities[triple.head];
    auto& g_rel = g.relations[triple.rel];

    if (model_.family == Family::ComplEx) {
      // q = rf (.) h
      ComplexVec g_rf(rank);
      for (std::size_t i = 0; i < rank; ++i) {
        double g1 = g_q.re[i], g2 = g_q.im[i];
        g_rf.re[i] = g1 * hv.re[i] + g2 * hv.im[i];
        g_rf.im[i] = -g1 * hv.im[i] + g2 * hv.re[i];
        g_h.re[i] += g1 * rf.re[i] + g2 * rf.im[i];
        g_h.im[i] += -g1 * rf.im[i] + g2 * rf.re[i];
      }
      if (rp.layout == Layout::Full) {
        for (std::size_t i = 0; i < rank; ++i) {
          g_rel[0].re[i] += g_rf.re[i];
          g_rel[0].im[i] += g_rf.im[i];
        }
      } else {
        std::size_t half = rank / 2;
        for (std::size_t i = 0; i < half; ++i) {
          g_rel[0].re[i] += g_rf.re[i] + g_rf.re[half + i];
          g_rel[0].im[i] += g_rf.im[i] - g_rf.im[half + i];
        }
      }
    } else {
      // q = (a h + b) * conj(c h + d) / max(|c h + d|^2, eps), per dimension
      ComplexVec g_a(rank), g_b(rank), g_c(rank), g_d(rank);
      for (std::size_t i = 0; i < rank; ++i) {
        double x1 = hv.re[i], x2 = hv.im[i];
        double a1 = coeffs.a.re[i], a2 = coeffs.a.im[i];
        double c1 = coeffs.c.re[i], c2 = coeffs.c.im[i];
        double nr = a1 * x1 - a2 * x2 + coeffs.b.re[i];
        double ni = a1 * x2 + a2 * x1 + coeffs.b.im[i];
        double mr = c1 * x1 - c2 * x2 + coeffs.d.re[i];
        double mi = c1 * x2 + c2 * x1 + coeffs.d.im[i];
        double raw = mr * mr + mi * mi;
        bool clamped = raw < kernels::kMobiusEps;
        double s = clamped ? kernels::kMobiusEps : raw;
        double y1 = (nr * mr + ni * mi) / s;
        double y2 = (ni * mr - nr * mi) / s;
        double gy1 = g_q.re[i], gy2 = g_q.im[i];

        double gn1 = (gy1 * mr - gy2 * mi) / s;
        double gn2 = (gy1 * mi + gy2 * mr) / s;
        double gm1 = (gy1 * nr + gy2 * ni) / s;
        double gm2 = (gy1 * ni - gy2 * nr) / s;
        if (!clamped) {
          gm1 -= (gy1 * y1 + gy2 * y2) * 2.0 * mr / s;
          gm2 -= (gy1 * y1 + gy2 * y2) * 2.0 * mi / s;
        }

        g_a.re[i] = gn1 * x1 + gn2 * x2;
        g_a.im[i] = -gn1 * x2 + gn2 * x1;
        g_b.re[i] = gn1;
        g_b.im[i] = gn2;
        g_c.re[i] = gm1 * x1 + gm2 * x2;
        g_c.im[i] = -gm1 * x2 + gm2 * x1;
        g_d.re[i] = gm1;
        g_d.im[i] = gm2;

        g_h.re[i] += gn1 * a1 + gn2 * a2 + gm1 * c1 + gm2 * c2;
        g_h.im[i] += -gn1 * a2 + gn2 * a1 - gm1 * c2 + gm2 * c1;
      }

      // map full-coefficient grads back to the stored pair
      auto add = [&](std::size_t k, const ComplexVec& src, double re_sign,
                     double im_sign) {
        for (std::size_t i = 0; i < rank; ++i) {
          g_rel[k].re[i] += re_sign * src.re[i];
          g_rel[k].im[i] += im_sign * src.im[i];
        }
      };
      switch (rp.layout) {
        case Layout::Full:
          add(0, g_a, 1, 1);
          add(1, g_b, 1, 1);
          add(2, g_c, 1, 1);
          add(3, g_d, 1, 1);
          break;
        case Layout::ConjDiag:  // c = conj(b), d = conj(a)
          add(0, g_a, 1, 1);
          add(0, g_d, 1, -1);
          add(1, g_b, 1, 1);
          add(1, g_c, 1, -1);
          break;
        case Layout::ConjNeg:  // c = -conj(b), d = conj(a)
          add(0, g_a, 1, 1);
          add(0, g_d, 1, -1);
          add(1, g_b, 1, 1);
          add(1, g_c, -1, 1);
          break;
        case Layout::ConjVert:  // c = conj(a), d = conj(b)
          add(0, g_a, 1, 1);
          add(0, g_c, 1, -1);
          add(1, g_b, 1, 1);
          add(1, g_d, 1, -1);
          break;
        case Layout::ConjHoriz:  // stored (a, c); b = conj(a), d = conj(c)
          add(0, g_a, 1, 1);
          add(0, g_b, 1, -1);
          add(1, g_c, 1, 1);
          add(1, g_d, 1, -1);
          break;
        default:
          throw std::logic_error("bad fivestar layout");
      }
    }

    // regularization gradients (per-triple term of the batch penalty)
    double coeff = config_.reg_coefficient;
    if (coeff > 0.0) {
      auto& g_t = g.entities[triple.tail];
      const ComplexVec& tv = model_.entities[triple.tail];
      for (std::size_t i = 0; i < rank; ++i) {
        g_h.re[i] += 2.0 * coeff * hv.re[i];
        g_h.im[i] += 2.0 * coeff * hv.im[i];
        g_t.re[i] += 2.0 * coeff * tv.re[i];
        g_t.im[i] += 2.0 * coeff * tv.im[i];
      }
      add_relation_reg_grad(model_, rp, config_.reg_mode, coeff, g_rel);
    }
  }

  if (loss_out != nullptr) *loss_out = loss_sum * inv_b;
}

void Trainer::apply_update(const Grads& g) {
  const double lr = config_.learning_rate;

  auto update_vec = [&](ComplexVec& p, const ComplexVec& grad, ComplexVec* m1,
                        ComplexVec* m2) {
    std::size_t n = p.size();
    switch (config_.optimizer) {
      case Optimizer::SGD:
        for (std::size_t i = 0; i < n; ++i) {
          p.re[i] -= lr * grad.re[i];
          p.im[i] -= lr * grad.im[i];
        }
        break;
      case Optimizer::Adagrad:
        for (std::size_t i = 0; i < n; ++i) {
          m1->re[i] += grad.re[i] * grad.re[i];
          m1->im[i] += grad.im[i] * grad.im[i];
          p.re[i] -= lr * grad.re[i] / (std::sqrt(m1->re[i]) + 1e-10);
          p.im[i] -= lr * grad.im[i] / (std::sqrt(m1->im[i]) + 1e-10);
        }
        break;
      case Optimizer::Adam: {
        const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
        double c1 = 1.0 - std::pow(b1, static_cast<double>(adam_step_));
        double c2 = 1.0 - std::pow(b2, static_cast<double>(adam_step_));
        for (std::size_t i = 0; i < n; ++i) {
          m1->re[i] = b1 * m1->re[i] + (1.0 - b1) * grad.re[i];
          m1->im[i] = b1 * m1->im[i] + (1.0 - b1) * grad.im[i];
          m2->re[i] = b2 * m2->re[i] + (1.0 - b2) * grad.re[i] * grad.re[i];
          m2->im[i] = b2 * m2->im[i] + (1.0 - b2) * grad.im[i] * grad.im[i];
          p.re[i] -= lr * (m1->re[i] / c1) / (std::sqrt(m2->re[i] / c2) + eps);
          p.im[i] -= lr * (m1->im[i] / c1) / (std::sqrt(m2->im[i] / c2) + eps);
        }
        break;
      }
    }
  };

  if (config_.optimizer == Optimizer::Adam) ++adam_step_;
  for (std::size_t e = 0; e < model_.n_entities(); ++e) {
    update_vec(model_.entities[e], g.entities[e],
               opt_m_entities_.empty() ? nullptr : &opt_m_entities_[e],
               opt_v_entities_.empty() ? nullptr : &opt_v_entities_[e]);
  }
  for (std::size_t r = 0; r < model_.n_relations(); ++r) {
    if (!g.rel_touched[r]) continue;
    for (std::size_t k = 0; k < model_.relations[r].stored.size(); ++k) {
      update_vec(model_.relations[r].stored[k], g.relations[r][k],
                 opt_m_relations_.empty() ? nullptr : &opt_m_relations_[r][k],
                 opt_v_relations_.empty() ? nullptr : &opt_v_relations_[r][k]);
    }
  }
}

EpochStats Trainer::run_epoch() {
  auto start = std::chrono::steady_clock::now();

  std::vector<std::size_t> order(data_.train.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(shuffle_state_ + epoch_);
  std::shuffle(order.begin(), order.end(), rng);

  Grads local;
  double loss_weighted = 0.0;
  std::size_t n_done = 0;
  std::vector<Triple> batch;
  batch.reserve(config_.batch_size);

  for (std::size_t pos = 0; pos < order.size(); pos += config_.batch_size) {
    batch.clear();
    std::size_t end = std::min(pos + config_.batch_size, order.size());
    for (std::size_t i = pos; i < end; ++i) batch.push_back(data_.train[order[i]]);

    double batch_loss = 0.0;
    accumulate_gradients(batch, local, &batch_loss);
    if (!std::isfinite(batch_loss))
      throw std::domain_error("training diverged: non-finite loss at epoch " +
                              std::to_string(epoch_));
    apply_update(local);
    loss_weighted += batch_loss * static_cast<double>(batch.size());
    n_done += batch.size();
  }

  auto stop = std::chrono::steady_clock::now();
  EpochStats stats;
  stats.epoch = epoch_++;
  stats.mean_loss = loss_weighted / static_cast<double>(n_done);
  stats.seconds = std::chrono::duration<double>(stop - start).count();
  return stats;
}

double Trainer::batch_objective(const std::vector<Triple>& batch) const {
  double loss_sum = 0.0;
  for (const Triple& t : batch)
    loss_sum += cross_entropy_loss(score_row(model_, t.head, t.rel), t.tail);
  return loss_sum / static_cast<double>(batch.size()) +
         regularization(model_, batch, config_.reg_mode, config_.reg_coefficient);
}

double gradient_check(ModelParams& model, const Dataset& data,
                      const std::vector<Triple>& batch,
                      const ModelConfig& config) {
  Trainer trainer(model, data, config);
  Trainer::Grads grads;
  trainer.accumulate_gradients(batch, grads, nullptr);

  const double step = 1e-5;
  double max_rel = 0.0;
  auto probe = [&](double& param, double analytic) {
    double saved = param;
    param = saved + step;
    double fp = trainer.batch_objective(batch);
    param = saved - step;
    double fm = trainer.batch_objective(batch);
    param = saved;
    double numeric = (fp - fm) / (2.0 * step);
    double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
    max_rel = std::max(max_rel, std::abs(analytic - numeric) / denom);
  };

  for (std::size_t e = 0; e < model.n_entities(); ++e) {
    for (std::size_t i = 0; i < model.rank; ++i) {
      probe(model.entities[e].re[i], grads.entities[e].re[i]);
      probe(model.entities[e].im[i], grads.entities[e].im[i]);
    }
  }
  for (std::size_t r = 0; r < model.n_relations(); ++r) {
    for (std::size_t k = 0; k < model.relations[r].stored.size(); ++k) {
      auto& v = model.relations[r].stored[k];
      for (std::size_t i = 0; i < v.size(); ++i) {
        probe(v.re[i], grads.relations[r][k].re[i]);
        probe(v.im[i], grads.relations[r][k].im[i]);
      }
    }
  }
  return max_rel;
}

std::vector<ModelConfig> GridSpec::expand(const ModelConfig& base) const {
  std::vector<ModelConfig> out;
  out.reserve(cardinality());
  for (std::size_t rank : ranks)
    for (double lr : learning_rates)
      for (std::size_t bs : batch_sizes)
        for (double reg : reg_coefficients)
          for (Optimizer opt : optimizers) {
            ModelConfig c = base;
            c.rank = rank;
            c.learning_rate = lr;
            c.batch_size = bs;
            c.reg_coefficient = reg;
            c.optimizer = opt;
            if (c.layout == Layout::ConjHalf && rank % 2 != 0) continue;
            out.push_back(c);
          }
  return out;
}

GridResult grid_search(const Dataset& data, const GridSpec& grid,
                       const ModelConfig& base, std::size_t repeats) {
  std::vector<ModelConfig> points = grid.expand(base);
  if (points.empty()) throw std::invalid_argument("empty hyperparameter grid");
  if (repeats == 0) throw std::invalid_argument("repeats must be positive");

  FilterIndex filter = build_filter_index(data);
  GridResult result;
  bool have_best = false;

  for (const ModelConfig& c : points) {
    GridPoint point;
    point.config = c;
    double mrr_sum = 0.0, sec_sum = 0.0;
    std::size_t sec_n = 0;
    for (std::size_t rep = 0; rep < repeats; ++rep) {
      ModelConfig rc = c;
      rc.seed = c.seed + rep;
      ModelParams model = init_model(rc.family, rc.layout, data.n_entities(),
                                     data.n_relations(), rc.rank, rc.seed);
      Trainer trainer(model, data, rc);
      for (std::size_t ep = 0; ep < rc.epochs; ++ep) {
        EpochStats st = trainer.run_epoch();
        sec_sum += st.seconds;
        ++sec_n;
      }
      mrr_sum += evaluate(model, data, Split::Valid, filter).mrr;
    }
    point.mean_valid_mrr = mrr_sum / static_cast<double>(repeats);
    point.mean_epoch_seconds = sec_sum / static_cast<double>(sec_n);
    result.table.push_back(point);

    if (!have_best || point.mean_valid_mrr > result.best.mean_valid_mrr ||
        (point.mean_valid_mrr == result.best.mean_valid_mrr &&
         point.mean_epoch_seconds < result.best.mean_epoch_seconds)) {
      result.best = point;
      have_best = true;
    }
  }
  return result;
}

}  // namespace kge
