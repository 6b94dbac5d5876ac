#include "dwlab/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace dwlab {

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::HeatDecay: return "heat-decay";
    case ExperimentKind::LinearEstimates: return "linear-estimates";
    case ExperimentKind::Inequalities: return "inequalities";
    case ExperimentKind::LifespanSweep: return "lifespan-sweep";
    case ExperimentKind::GlobalDecay: return "global-decay";
    case ExperimentKind::SupersolutionCompare: return "supersolution-compare";
    case ExperimentKind::VerifyAll: return "verify-all";
  }
  return "unknown";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_double(const std::string& s, double* out) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') return false;
  *out = v;
  return true;
}

bool parse_int(const std::string& s, int* out) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') return false;
  *out = static_cast<int>(v);
  return true;
}

bool parse_u64(const std::string& s, std::uint64_t* out) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') return false;
  *out = v;
  return true;
}

bool parse_list(const std::string& s, std::vector<double>* out) {
  std::istringstream is(s);
  std::vector<double> vals;
  std::string tok;
  while (is >> tok) {
    double v = 0.0;
    if (!parse_double(tok, &v)) return false;
    vals.push_back(v);
  }
  *out = std::move(vals);
  return true;
}

bool parse_kind(const std::string& s, ExperimentKind* out) {
  static const std::map<std::string, ExperimentKind> table{
      {"heat-decay", ExperimentKind::HeatDecay},
      {"linear-estimates", ExperimentKind::LinearEstimates},
      {"inequalities", ExperimentKind::Inequalities},
      {"lifespan-sweep", ExperimentKind::LifespanSweep},
      {"global-decay", ExperimentKind::GlobalDecay},
      {"supersolution-compare", ExperimentKind::SupersolutionCompare},
      {"verify-all", ExperimentKind::VerifyAll},
  };
  const auto it = table.find(s);
  if (it == table.end()) return false;
  *out = it->second;
  return true;
}

}  // namespace

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> errors;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) errors.push_back(msg);
  };
  require(cfg.dr > 0.0, "grid.dr: must be positive");
  require(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0,
          "solver.cfl_safety: must lie in (0, 1]");
  require(cfg.dt >= 0.0, "solver.dt: must be nonnegative (0 selects the default)");
  if (cfg.dt > 0.0 && cfg.dr > 0.0 && cfg.cfl_safety > 0.0) {
    require(cfg.dt <= cfg.cfl_safety * cfg.dr * (1.0 + 1e-12),
            "solver.dt: violates the CFL rule dt <= cfl_safety * dr");
  }
  require(cfg.rannacher_steps >= 0, "solver.rannacher_steps: must be nonnegative");
  require(cfg.tol_tail > 0.0 && cfg.tol_tail < 1.0, "solver.tol_tail: must lie in (0, 1)");
  require(cfg.data_lo >= 1.0, "data.lo: support starts at the obstacle boundary r = 1");
  require(cfg.data_hi > cfg.data_lo, "data.hi: must exceed data.lo");
  require(cfg.data_power > 0.0, "data.power: must be positive");
  require(cfg.data_scale > 0.0, "data.scale: must be positive");
  require(cfg.p > 1.0, "sweep.p: must exceed 1");
  require(cfg.horizon > 0.0, "sweep.horizon: must be positive");
  for (double e : cfg.epsilons) {
    if (!(e > 0.0)) {
      errors.push_back("sweep.epsilons: every entry must be positive");
      break;
    }
  }
  require(cfg.blow_threshold > 0.0, "blowup.threshold: must be positive");
  require(cfg.stability_rtol > 0.0 && cfg.stability_rtol < 1.0,
          "blowup.stability_rtol: must lie in (0, 1)");
  require(cfg.max_refines >= 0, "blowup.max_refines: must be nonnegative");
  require(!cfg.times.empty(), "report.times: must be nonempty");
  require(!cfg.q_values.empty(), "report.q_values: must be nonempty");
  if (cfg.kind == ExperimentKind::LifespanSweep) {
    require(!cfg.epsilons.empty(),
            "sweep.epsilons: must be nonempty for a lifespan sweep");
  }
  for (double t : cfg.times) {
    if (!(t >= 0.0)) {
      errors.push_back("report.times: entries must be nonnegative");
      break;
    }
  }
  for (double q : cfg.q_values) {
    if (!(q >= 1.0)) {
      errors.push_back("report.q_values: entries must be >= 1");
      break;
    }
  }
  return errors;
}

ConfigParse parse_config(const std::string& path) {
  ConfigParse result;
  std::ifstream in(path);
  if (!in) {
    result.errors.push_back("config: cannot open file " + path);
    return result;
  }
  ExperimentConfig& cfg = result.config;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      result.errors.push_back("config line " + std::to_string(lineno) +
                              ": expected key = value");
      continue;
    }
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto bad = [&](const std::string& why) {
      result.errors.push_back(key + ": " + why + " (got `" + value + "`)");
    };

    if (key == "experiment.kind") {
      if (!parse_kind(value, &cfg.kind)) bad("unknown experiment kind");
    } else if (key == "experiment.seed") {
      if (!parse_u64(value, &cfg.seed)) bad("expected an unsigned integer");
    } else if (key == "grid.dr") {
      if (!parse_double(value, &cfg.dr)) bad("expected a number");
    } else if (key == "solver.dt") {
      if (!parse_double(value, &cfg.dt)) bad("expected a number");
    } else if (key == "solver.cfl_safety") {
      if (!parse_double(value, &cfg.cfl_safety)) bad("expected a number");
    } else if (key == "solver.rannacher_steps") {
      if (!parse_int(value, &cfg.rannacher_steps)) bad("expected an integer");
    } else if (key == "solver.tol_tail") {
      if (!parse_double(value, &cfg.tol_tail)) bad("expected a number");
    } else if (key == "data.lo") {
      if (!parse_double(value, &cfg.data_lo)) bad("expected a number");
    } else if (key == "data.hi") {
      if (!parse_double(value, &cfg.data_hi)) bad("expected a number");
    } else if (key == "data.power") {
      if (!parse_double(value, &cfg.data_power)) bad("expected a number");
    } else if (key == "data.scale") {
      if (!parse_double(value, &cfg.data_scale)) bad("expected a number");
    } else if (key == "sweep.p") {
      if (!parse_double(value, &cfg.p)) bad("expected a number");
    } else if (key == "sweep.epsilons") {
      if (!parse_list(value, &cfg.epsilons)) bad("expected a space-separated number list");
    } else if (key == "sweep.horizon") {
      if (!parse_double(value, &cfg.horizon)) bad("expected a number");
    } else if (key == "blowup.threshold") {
      if (!parse_double(value, &cfg.blow_threshold)) bad("expected a number");
    } else if (key == "blowup.stability_rtol") {
      if (!parse_double(value, &cfg.stability_rtol)) bad("expected a number");
    } else if (key == "blowup.max_refines") {
      if (!parse_int(value, &cfg.max_refines)) bad("expected an integer");
    } else if (key == "report.times") {
      if (!parse_list(value, &cfg.times)) bad("expected a space-separated number list");
    } else if (key == "report.q_values") {
      if (!parse_list(value, &cfg.q_values)) bad("expected a space-separated number list");
    } else {
      result.errors.push_back(key + ": unknown key");
    }
  }
  for (std::string& e : validate_config(cfg)) {
    result.errors.push_back(std::move(e));
  }
  return result;
}

}  // namespace dwlab
