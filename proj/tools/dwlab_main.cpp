#include <cstdio>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dwlab/config.hpp"
#include "dwlab/harness.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  int jobs = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

bool load_config(const CommonArgs& args, dwlab::ExperimentKind kind,
                 dwlab::ExperimentConfig* cfg) {
  if (args.config_path.empty()) {
    *cfg = dwlab::default_config(kind);
  } else {
    const dwlab::ConfigParse parsed = dwlab::parse_config(args.config_path);
    if (!parsed.ok()) {
      std::fprintf(stderr, "config rejected:\n");
      for (const std::string& e : parsed.errors) {
        std::fprintf(stderr, "  - %s\n", e.c_str());
      }
      return false;
    }
    *cfg = parsed.config;
    cfg->kind = kind;
  }
  if (args.seed_set) cfg->seed = args.seed;
  return true;
}

int run_kind(dwlab::ExperimentKind kind, const CommonArgs& args) {
  dwlab::ExperimentConfig cfg;
  if (!load_config(args, kind, &cfg)) return kExitConfigError;
  const int jobs = resolve_jobs(args.jobs);
  std::vector<dwlab::LemmaCheck> checks;
  try {
    using dwlab::ExperimentKind;
    switch (kind) {
      case ExperimentKind::HeatDecay:
        checks = dwlab::run_heat_decay_experiment(cfg, args.out_dir);
        break;
      case ExperimentKind::LinearEstimates:
        checks = dwlab::run_linear_estimates_experiment(cfg, args.out_dir);
        break;
      case ExperimentKind::Inequalities:
        checks = dwlab::run_inequalities_experiment(cfg, args.out_dir);
        break;
      case ExperimentKind::LifespanSweep:
        checks = dwlab::run_lifespan_sweep_experiment(cfg, args.out_dir, jobs);
        break;
      case ExperimentKind::GlobalDecay:
        checks = dwlab::run_global_decay_experiment(cfg, args.out_dir);
        break;
      case ExperimentKind::SupersolutionCompare:
        checks = dwlab::run_supersolution_experiment(cfg, args.out_dir);
        break;
      case ExperimentKind::VerifyAll: {
        for (ExperimentKind k :
             {ExperimentKind::Inequalities, ExperimentKind::LinearEstimates,
              ExperimentKind::HeatDecay, ExperimentKind::SupersolutionCompare,
              ExperimentKind::LifespanSweep, ExperimentKind::GlobalDecay}) {
          dwlab::ExperimentConfig sub = dwlab::default_config(k);
          sub.seed = cfg.seed;
          std::vector<dwlab::LemmaCheck> part;
          switch (k) {
            case ExperimentKind::HeatDecay:
              part = dwlab::run_heat_decay_experiment(sub, args.out_dir);
              break;
            case ExperimentKind::LinearEstimates:
              part = dwlab::run_linear_estimates_experiment(sub, args.out_dir);
              break;
            case ExperimentKind::Inequalities:
              part = dwlab::run_inequalities_experiment(sub, args.out_dir);
              break;
            case ExperimentKind::LifespanSweep:
              part = dwlab::run_lifespan_sweep_experiment(sub, args.out_dir, jobs);
              break;
            case ExperimentKind::GlobalDecay:
              part = dwlab::run_global_decay_experiment(sub, args.out_dir);
              break;
            case ExperimentKind::SupersolutionCompare:
              part = dwlab::run_supersolution_experiment(sub, args.out_dir);
              break;
            default:
              break;
          }
          checks.insert(checks.end(), part.begin(), part.end());
        }
        break;
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "experiment failed: %s\n", e.what());
    return kExitCheckFailed;
  }
  const bool ok = dwlab::emit_summary(checks, args.out_dir);
  for (const dwlab::LemmaCheck& c : checks) {
    std::printf("[%s] %s\n", c.pass ? "pass" : "FAIL", c.id.c_str());
  }
  std::printf("summary written to %s/summary.{md,json}\n", args.out_dir.c_str());
  return ok ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "numerical laboratory for the damped wave equation outside the planar unit disk"};
  app.require_subcommand(1);

  CommonArgs args;
  const std::vector<std::pair<std::string, dwlab::ExperimentKind>> kinds{
      {"heat-decay", dwlab::ExperimentKind::HeatDecay},
      {"linear-estimates", dwlab::ExperimentKind::LinearEstimates},
      {"inequalities", dwlab::ExperimentKind::Inequalities},
      {"lifespan-sweep", dwlab::ExperimentKind::LifespanSweep},
      {"global-decay", dwlab::ExperimentKind::GlobalDecay},
      {"supersolution-compare", dwlab::ExperimentKind::SupersolutionCompare},
      {"verify-all", dwlab::ExperimentKind::VerifyAll},
  };
  for (const auto& [name, kind] : kinds) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", args.config_path, "experiment config file");
    sub->add_option("--out", args.out_dir, "output directory");
    sub->add_option("--jobs", args.jobs, "worker count (default: hardware)");
    sub->add_option("--seed", args.seed, "seed override")
        ->each([&args](const std::string&) { args.seed_set = true; });
    const dwlab::ExperimentKind k = kind;
    sub->callback([&args, k]() { std::exit(run_kind(k, args)); });
  }

  CLI11_PARSE(app, argc, argv);
  return kExitPass;
}
