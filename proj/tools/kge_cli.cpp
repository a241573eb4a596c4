// kge: train / evaluate / ablate / grid / stats / account / synth
//
// Exit codes: 0 success, 1 numerical failure, 2 usage or input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "kge/evaluation.hpp"
#include "kge/kernels.hpp"
#include "kge/kg_data.hpp"
#include "kge/models.hpp"
#include "kge/stats.hpp"
#include "kge/training.hpp"

namespace {

using nlohmann::json;

std::string output_dir(const std::string& flag_value) {
  std::string dir = ".";
  if (!flag_value.empty())
    dir = flag_value;
  else if (const char* env = std::getenv("KGE_OUTPUT_DIR"))
    dir = env;
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

json config_to_json(const kge::ModelConfig& c) {
  return json{{"family", kge::family_name(c.family)},
              {"layout", kge::layout_name(c.layout)},
              {"rank", c.rank},
              {"optimizer", kge::optimizer_name(c.optimizer)},
              {"learning_rate", c.learning_rate},
              {"batch_size", c.batch_size},
              {"reg_coefficient", c.reg_coefficient},
              {"reg_mode", kge::reg_mode_name(c.reg_mode)},
              {"epochs", c.epochs},
              {"seed", c.seed}};
}

struct RunOutcome {
  kge::RunMetrics metrics;
  kge::ModelParams model;
  double best_valid_mrr = 0.0;
};

// One full training run; returns test metrics plus the checkpoint of the
// best-validation-MRR epoch.
RunOutcome run_one(const kge::Dataset& aug, const kge::FilterIndex& filter,
                   const kge::ModelConfig& config, std::ostream* epoch_log) {
  kge::ModelParams model =
      kge::init_model(config.family, config.layout, aug.n_entities(),
                      aug.n_relations(), config.rank, config.seed);
  kge::Trainer trainer(model, aug, config);

  RunOutcome out;
  out.best_valid_mrr = -1.0;
  double sec_sum = 0.0;
  for (std::size_t ep = 0; ep < config.epochs; ++ep) {
    kge::EpochStats st = trainer.run_epoch();
    sec_sum += st.seconds;
    if (epoch_log != nullptr)
      *epoch_log << st.epoch << ',' << st.mean_loss << ',' << st.seconds << '\n';
    double vmrr = kge::evaluate(model, aug, kge::Split::Valid, filter).mrr;
    if (vmrr > out.best_valid_mrr) {
      out.best_valid_mrr = vmrr;
      out.model = model;
    }
  }
  kge::Metrics test = kge::evaluate(out.model, aug, kge::Split::Test, filter);
  out.metrics.mrr = test.mrr;
  out.metrics.hits1 = test.hits.at(1);
  out.metrics.hits3 = test.hits.at(3);
  out.metrics.hits10 = test.hits.at(10);
  out.metrics.seconds_per_epoch = sec_sum / static_cast<double>(config.epochs);
  return out;
}

json metrics_to_json(const kge::RunMetrics& m) {
  return json{{"mrr", m.mrr},
              {"hits1", m.hits1},
              {"hits3", m.hits3},
              {"hits10", m.hits10},
              {"seconds_per_epoch", m.seconds_per_epoch}};
}

kge::RunSet runset_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json doc = json::parse(in);
  kge::RunSet rs;
  rs.label = doc.at("label").get<std::string>();
  for (const auto& r : doc.at("runs")) {
    kge::RunMetrics m;
    m.mrr = r.at("mrr").get<double>();
    m.hits1 = r.at("hits1").get<double>();
    m.hits3 = r.at("hits3").get<double>();
    m.hits10 = r.at("hits10").get<double>();
    m.seconds_per_epoch = r.at("seconds_per_epoch").get<double>();
    rs.samples.push_back(m);
  }
  return rs;
}

json runset_record(const std::string& label, const kge::ModelConfig& config,
                   const std::vector<std::uint64_t>& seeds,
                   const std::vector<kge::RunMetrics>& runs) {
  json rec;
  rec["format_version"] = 1;
  rec["label"] = label;
  rec["config"] = config_to_json(config);
  rec["seeds"] = seeds;
  rec["runs"] = json::array();
  for (const auto& m : runs) rec["runs"].push_back(metrics_to_json(m));
  return rec;
}

int cmd_train(const std::string& config_path, const std::string& data_path,
              const std::string& out_flag, std::int64_t seed_override,
              std::size_t repeat) {
  kge::ModelConfig config = kge::parse_config_file(config_path);
  if (seed_override >= 0) config.seed = static_cast<std::uint64_t>(seed_override);
  std::string out = output_dir(out_flag);

  kge::Dataset data = kge::load_dataset(data_path);
  kge::Dataset aug = kge::augment_reciprocal(data);
  kge::FilterIndex filter = kge::build_filter_index(aug);

  std::vector<kge::RunMetrics> runs;
  std::vector<std::uint64_t> seeds;
  for (std::size_t rep = 0; rep < repeat; ++rep) {
    kge::ModelConfig rc = config;
    rc.seed = config.seed + rep;
    seeds.push_back(rc.seed);
    std::string suffix = (repeat == 1) ? "" : "_r" + std::to_string(rep);
    std::ofstream log(out + "/epochs" + suffix + ".csv");
    log << "epoch,mean_loss,seconds\n";
    RunOutcome o = run_one(aug, filter, rc, &log);
    kge::save_checkpoint(o.model, out + "/checkpoint" + suffix + ".bin");
    runs.push_back(o.metrics);
    std::cerr << "run " << rep << ": test mrr " << o.metrics.mrr << " (best valid "
              << o.best_valid_mrr << ")\n";
  }

  std::string label = std::string(kge::family_name(config.family)) + "/" +
                      kge::layout_name(config.layout);
  json rec = runset_record(label, config, seeds, runs);
  write_file(out + "/metrics.json", rec.dump(2));
  std::cout << rec.dump(2) << '\n';
  return 0;
}

int cmd_evaluate(const std::string& ckpt_path, const std::string& data_path,
                 const std::string& split_name) {
  kge::ModelParams model = kge::load_checkpoint(ckpt_path);
  kge::Dataset data = kge::load_dataset(data_path);
  kge::Dataset aug = kge::augment_reciprocal(data);
  kge::FilterIndex filter = kge::build_filter_index(aug);

  kge::Split split = kge::Split::Test;
  if (split_name == "valid") split = kge::Split::Valid;
  else if (split_name == "train") split = kge::Split::Train;
  else if (split_name != "test")
    throw std::runtime_error("unknown split: " + split_name);

  kge::Metrics m = kge::evaluate(model, aug, split, filter);
  json doc{{"split", split_name},
           {"mrr", m.mrr},
           {"hits1", m.hits.at(1)},
           {"hits3", m.hits.at(3)},
           {"hits10", m.hits.at(10)},
           {"n_queries", m.n_queries}};
  std::cout << doc.dump(2) << '\n';
  return 0;
}

int cmd_ablate(const std::string& config_path, const std::string& data_path,
               const std::string& out_flag, std::size_t repeat) {
  kge::ModelConfig base = kge::parse_config_file(config_path);
  std::string out = output_dir(out_flag);

  kge::Dataset data = kge::load_dataset(data_path);
  kge::Dataset aug = kge::augment_reciprocal(data);
  kge::FilterIndex filter = kge::build_filter_index(aug);

  struct Row {
    std::string label;
    kge::Layout layout;
    kge::RegMode reg_mode;
  };
  std::vector<Row> rows;
  if (base.family == kge::Family::ComplEx) {
    rows = {{"full", kge::Layout::Full, kge::RegMode::FullSum},
            {"conj_half", kge::Layout::ConjHalf, kge::RegMode::SharedTimesTwo},
            {"half_reg", kge::Layout::Full, kge::RegMode::HalfOnly}};
  } else {
    rows = {{"full", kge::Layout::Full, kge::RegMode::FullSum},
            {"conj_diag", kge::Layout::ConjDiag, kge::RegMode::SharedTimesTwo},
            {"conj_neg", kge::Layout::ConjNeg, kge::RegMode::SharedTimesTwo},
            {"conj_vert", kge::Layout::ConjVert, kge::RegMode::SharedTimesTwo},
            {"conj_horiz", kge::Layout::ConjHoriz, kge::RegMode::SharedTimesTwo},
            {"half_reg", kge::Layout::Full, kge::RegMode::HalfOnly}};
  }

  std::vector<kge::RunSet> runsets;
  for (const Row& row : rows) {
    kge::RunSet rs;
    rs.label = row.label;
    for (std::size_t rep = 0; rep < repeat; ++rep) {
      kge::ModelConfig c = base;
      c.layout = row.layout;
      c.reg_mode = row.reg_mode;
      c.seed = base.seed + rep;
      rs.samples.push_back(run_one(aug, filter, c, nullptr).metrics);
    }
    std::cerr << row.label << " done\n";
    runsets.push_back(std::move(rs));
  }

  std::vector<kge::PairTest> tests;
  if (repeat >= 2) {
    for (std::size_t i = 0; i < runsets.size(); ++i) {
      for (std::size_t j = i + 1; j < runsets.size(); ++j) {
        for (const char* metric : {"mrr", "time"}) {
          auto pick = [&](const kge::RunSet& rs) {
            std::vector<double> v;
            for (const auto& m : rs.samples)
              v.push_back(std::string(metric) == "mrr" ? m.mrr
                                                       : m.seconds_per_epoch);
            return v;
          };
          std::vector<double> va = pick(runsets[i]), vb = pick(runsets[j]);
          kge::PairTest t;
          t.label_a = runsets[i].label;
          t.label_b = runsets[j].label;
          t.metric = metric;
          try {
            t.result = kge::welch_ttest(va, vb);
          } catch (const std::invalid_argument&) {
            continue;  // degenerate samples: skip the pair
          }
          tests.push_back(t);
        }
      }
    }
  }

  std::string text = kge::render_report_text(runsets, tests);
  write_file(out + "/ablation.txt", text);
  write_file(out + "/ablation.json", kge::render_report_json(runsets, tests));
  std::cout << text;
  return 0;
}

int cmd_grid(const std::string& config_path, const std::string& data_path,
             const std::string& out_flag, std::size_t repeat,
             std::vector<std::size_t> ranks, std::vector<double> lrs,
             std::vector<std::size_t> batches, std::vector<double> regs,
             std::vector<std::string> opts) {
  kge::ModelConfig base = kge::parse_config_file(config_path);
  std::string out = output_dir(out_flag);

  kge::Dataset data = kge::load_dataset(data_path);
  kge::Dataset aug = kge::augment_reciprocal(data);

  kge::GridSpec spec;  // defaults to the full search grid
  if (!ranks.empty()) spec.ranks = ranks;
  if (!lrs.empty()) spec.learning_rates = lrs;
  if (!batches.empty()) spec.batch_sizes = batches;
  if (!regs.empty()) spec.reg_coefficients = regs;
  if (!opts.empty()) {
    spec.optimizers.clear();
    for (const auto& s : opts) spec.optimizers.push_back(kge::optimizer_from_string(s));
  }
  std::cerr << "grid points: " << spec.cardinality() << " x " << repeat
            << " repeats\n";

  kge::GridResult res = kge::grid_search(aug, spec, base, repeat);

  json doc;
  doc["format_version"] = 1;
  doc["best"] = {{"config", config_to_json(res.best.config)},
                 {"mean_valid_mrr", res.best.mean_valid_mrr},
                 {"mean_epoch_seconds", res.best.mean_epoch_seconds}};
  doc["table"] = json::array();
  for (const auto& p : res.table)
    doc["table"].push_back({{"config", config_to_json(p.config)},
                            {"mean_valid_mrr", p.mean_valid_mrr},
                            {"mean_epoch_seconds", p.mean_epoch_seconds}});
  write_file(out + "/grid.json", doc.dump(2));
  kge::write_config_file(res.best.config, out + "/best_config.txt");
  std::cout << doc["best"].dump(2) << '\n';
  return 0;
}

int cmd_stats(const std::vector<std::string>& inputs, const std::string& out_flag,
              double alpha) {
  std::vector<kge::RunSet> runsets;
  for (const auto& path : inputs) runsets.push_back(runset_from_file(path));

  std::vector<kge::PairTest> tests;
  for (std::size_t i = 0; i < runsets.size(); ++i) {
    for (std::size_t j = i + 1; j < runsets.size(); ++j) {
      for (const char* metric : {"mrr", "time"}) {
        auto pick = [&](const kge::RunSet& rs) {
          std::vector<double> v;
          for (const auto& m : rs.samples)
            v.push_back(std::string(metric) == "mrr" ? m.mrr : m.seconds_per_epoch);
          return v;
        };
        if (runsets[i].samples.size() < 2 || runsets[j].samples.size() < 2) continue;
        kge::PairTest t;
        t.label_a = runsets[i].label;
        t.label_b = runsets[j].label;
        t.metric = metric;
        try {
          t.result = kge::welch_ttest(pick(runsets[i]), pick(runsets[j]), alpha);
        } catch (const std::invalid_argument&) {
          continue;
        }
        tests.push_back(t);
      }
    }
  }

  std::string text = kge::render_report_text(runsets, tests);
  std::string out = output_dir(out_flag);
  write_file(out + "/report.txt", text);
  write_file(out + "/report.json", kge::render_report_json(runsets, tests));
  std::cout << text;
  return 0;
}

int cmd_account(const std::string& data_path, std::size_t n_e, std::size_t n_r,
                std::size_t rank) {
  if (!data_path.empty()) {
    kge::Dataset d = kge::load_dataset(data_path);
    n_e = d.n_entities();
    n_r = d.n_relations();
  }
  if (n_e == 0 || rank == 0)
    throw std::runtime_error("need --data or --entities/--relations plus --rank");

  struct Row {
    kge::Family family;
    kge::Layout layout;
  };
  const Row rows[] = {
      {kge::Family::ComplEx, kge::Layout::Full},
      {kge::Family::ComplEx, kge::Layout::ConjHalf},
      {kge::Family::FiveStar, kge::Layout::Full},
      {kge::Family::FiveStar, kge::Layout::ConjDiag},
  };

  std::size_t ent = kge::entity_param_count(n_e, rank);
  std::cout << "n_e=" << n_e << " n_r=" << n_r << " rank=" << rank
            << " (dim " << 2 * rank << ")\n";
  std::cout << "family\tlayout\tparams\tMB@8B\tMB@4B\n";
  std::ostringstream os;
  for (const Row& r : rows) {
    if (r.layout == kge::Layout::ConjHalf && rank % 2 != 0) continue;
    std::size_t total = ent + kge::relation_param_count(r.family, r.layout, n_r, rank);
    double mb8 = static_cast<double>(total) * 8.0 / (1024.0 * 1024.0);
    double mb4 = static_cast<double>(total) * 4.0 / (1024.0 * 1024.0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s\t%s\t%zu\t%.1f\t%.1f\n",
                  kge::family_name(r.family), kge::layout_name(r.layout), total,
                  mb8, mb4);
    std::cout << buf;
  }
  return 0;
}

int cmd_synth(const std::string& out_path, std::size_t n_entities,
              const std::vector<std::string>& family_names, double density,
              std::uint64_t seed) {
  std::set<kge::RelationFamily> families;
  for (const auto& f : family_names) {
    if (f == "sym") families.insert(kge::RelationFamily::Symmetric);
    else if (f == "anti") families.insert(kge::RelationFamily::Antisymmetric);
    else if (f == "inv") families.insert(kge::RelationFamily::InversePair);
    else throw std::runtime_error("unknown family: " + f + " (want sym|anti|inv)");
  }
  kge::Dataset d = kge::generate_synthetic_kg(n_entities, families, density, seed);
  kge::save_dataset(d, out_path);
  std::cerr << "wrote " << d.train.size() << " train / " << d.valid.size()
            << " valid / " << d.test.size() << " test triples, "
            << d.n_entities() << " entities, " << d.n_relations()
            << " relations\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"complex-valued KG embedding trainer (ComplEx / 5-star families)"};
  app.require_subcommand(1);

  std::string config_path, data_path, out_path, ckpt_path, split_name = "test";
  std::int64_t seed_override = -1;
  std::size_t repeat = 1;
  std::uint64_t seed = 7;
  std::size_t n_entities = 200, n_r = 0, rank = 0;
  double density = 0.05, alpha = 0.05;
  std::vector<std::string> inputs, family_names = {"sym", "anti", "inv"};
  std::vector<std::size_t> g_ranks, g_batches;
  std::vector<double> g_lrs, g_regs;
  std::vector<std::string> g_opts;

  auto* train = app.add_subcommand("train", "train a model from a config file");
  train->add_option("--config", config_path)->required();
  train->add_option("--data", data_path)->required();
  train->add_option("--out", out_path, "output dir (or KGE_OUTPUT_DIR)");
  train->add_option("--seed", seed_override, "override config seed");
  train->add_option("--repeat", repeat, "independent runs, seeds seed+0..n-1");

  auto* evaluate = app.add_subcommand("evaluate", "evaluate a checkpoint");
  evaluate->add_option("--checkpoint", ckpt_path)->required();
  evaluate->add_option("--data", data_path)->required();
  evaluate->add_option("--split", split_name, "train|valid|test");

  auto* ablate = app.add_subcommand("ablate", "layout/regularization ablation");
  ablate->add_option("--config", config_path)->required();
  ablate->add_option("--data", data_path)->required();
  ablate->add_option("--out", out_path);
  ablate->add_option("--repeat", repeat);

  auto* grid = app.add_subcommand("grid", "hyperparameter grid search");
  grid->add_option("--config", config_path)->required();
  grid->add_option("--data", data_path)->required();
  grid->add_option("--out", out_path);
  grid->add_option("--repeat", repeat);
  grid->add_option("--ranks", g_ranks);
  grid->add_option("--lrs", g_lrs);
  grid->add_option("--batches", g_batches);
  grid->add_option("--regs", g_regs);
  grid->add_option("--optimizers", g_opts);

  auto* stats = app.add_subcommand("stats", "aggregate metric records + t-tests");
  stats->add_option("--inputs", inputs)->required();
  stats->add_option("--out", out_path);
  stats->add_option("--alpha", alpha);

  auto* account = app.add_subcommand("account", "parameter/memory table");
  account->add_option("--data", data_path);
  account->add_option("--entities", n_entities);
  account->add_option("--relations", n_r);
  account->add_option("--rank", rank);

  auto* synth = app.add_subcommand("synth", "generate a synthetic KG");
  synth->add_option("--out", out_path)->required();
  synth->add_option("--entities", n_entities);
  synth->add_option("--families", family_names, "subset of sym anti inv");
  synth->add_option("--density", density);
  synth->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (train->parsed())
      return cmd_train(config_path, data_path, out_path, seed_override, repeat);
    if (evaluate->parsed()) return cmd_evaluate(ckpt_path, data_path, split_name);
    if (ablate->parsed()) return cmd_ablate(config_path, data_path, out_path, repeat);
    if (grid->parsed())
      return cmd_grid(config_path, data_path, out_path, repeat, g_ranks, g_lrs,
                      g_batches, g_regs, g_opts);
    if (stats->parsed()) return cmd_stats(inputs, out_path, alpha);
    if (account->parsed()) return cmd_account(data_path, n_entities, n_r, rank);
    if (synth->parsed())
      return cmd_synth(out_path, n_entities, family_names, density, seed);
  } catch (const std::domain_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
