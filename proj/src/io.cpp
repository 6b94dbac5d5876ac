#include "dwlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dwlab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_field_csv(const std::string& path, const RadialField& f) {
  std::ofstream out = open_out(path);
  out << "r,value\n";
  for (int i = 0; i < f.grid.n; ++i) {
    out << format_double(f.grid.radius(i)) << ',' << format_double(f[i]) << '\n';
  }
}

RadialField read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("r,value", 0) != 0) {
    throw std::runtime_error("field csv: missing `r,value` header in " + path);
  }
  std::vector<double> rs, vs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("field csv: malformed row in " + path);
    }
    rs.push_back(std::stod(line.substr(0, comma)));
    vs.push_back(std::stod(line.substr(comma + 1)));
  }
  if (rs.size() < 3) throw std::runtime_error("field csv: too few rows in " + path);
  const RadialGrid grid = build_grid(rs.back(), static_cast<int>(rs.size()));
  return RadialField(grid, std::move(vs));
}

void write_trajectory_csv(const std::string& path, const WaveTrajectory& traj,
                          const RadialGrid& grid) {
  std::ofstream out = open_out(path);
  out << "t,r,u,v\n";
  for (const WaveSample& s : traj.samples) {
    for (int i = 0; i < grid.n; ++i) {
      out << format_double(s.t) << ',' << format_double(grid.radius(i)) << ','
          << format_double(s.u[i]) << ',' << format_double(s.v[i]) << '\n';
    }
  }
}

void write_series_csv(const std::string& path, const std::vector<FunctionalSample>& series) {
  std::ofstream out = open_out(path);
  out << "t,l1dmu,grad_l2,dtu_l2,sup,xt\n";
  for (const FunctionalSample& s : series) {
    out << format_double(s.t) << ',' << format_double(s.mass_dmu) << ','
        << format_double(s.grad_l2) << ',' << format_double(s.dtu_l2) << ','
        << format_double(s.sup) << ',' << format_double(s.xt) << '\n';
  }
}

void write_sweep_csv(const std::string& path, const std::vector<LifespanRecord>& records) {
  std::ofstream out = open_out(path);
  out << "p,epsilon,T_measured,converged,Q_value,grid_n,dt\n";
  for (const LifespanRecord& r : records) {
    out << format_double(r.p) << ',' << format_double(r.epsilon) << ','
        << format_double(r.T_measured) << ',' << (r.converged ? 1 : 0) << ','
        << format_double(r.Q_value) << ',' << r.grid_n << ',' << format_double(r.dt)
        << '\n';
  }
}

nlohmann::json to_json(const GridMeta& grid) {
  return nlohmann::json{{"r_max", grid.r_max}, {"n", grid.n}, {"dt", grid.dt}};
}

nlohmann::json to_json(const HeatDecayReport& rep) {
  return nlohmann::json{{"q", rep.q},
                        {"times", rep.times},
                        {"ratios", rep.ratios},
                        {"max_ratio", rep.max_ratio},
                        {"pointwise_ratios", rep.pointwise_ratios},
                        {"max_pointwise_ratio", rep.max_pointwise_ratio},
                        {"grid", to_json(rep.grid)}};
}

nlohmann::json to_json(const MatsumuraGapReport& rep) {
  return nlohmann::json{{"times", rep.times},
                        {"grad_ratios", rep.grad_ratios},
                        {"dt_ratios", rep.dt_ratios},
                        {"grad_constant", rep.grad_constant},
                        {"dt_constant", rep.dt_constant},
                        {"grid", to_json(rep.grid)}};
}

nlohmann::json to_json(const LogMatsumuraReport& rep) {
  return nlohmann::json{{"q", rep.q},
                        {"times", rep.times},
                        {"grad_ratios", rep.grad_ratios},
                        {"dt_ratios", rep.dt_ratios},
                        {"grad_constant", rep.grad_constant},
                        {"dt_constant", rep.dt_constant}};
}

nlohmann::json to_json(const InequalityReport& rep) {
  return nlohmann::json{{"name", rep.name},
                        {"ratios", rep.ratios},
                        {"max_ratio", rep.max_ratio},
                        {"fitted_constant", rep.fitted_constant},
                        {"refinement_drift", rep.refinement_drift},
                        {"grid", {{"r_max", rep.grid_r_max}, {"n", rep.grid_n}}}};
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace dwlab
