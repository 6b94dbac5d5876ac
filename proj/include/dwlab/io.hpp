#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dwlab/heat.hpp"
#include "dwlab/inequalities.hpp"
#include "dwlab/radial.hpp"
#include "dwlab/semilinear.hpp"
#include "dwlab/wave.hpp"

namespace dwlab {

/// Decimal text with 17 significant digits (round-trips doubles exactly).
std::string format_double(double v);

/// CSV with header `r,value`, one row per node.
void write_field_csv(const std::string& path, const RadialField& f);
RadialField read_field_csv(const std::string& path);

/// Long-format trajectory dump `t,r,u,v`.
void write_trajectory_csv(const std::string& path, const WaveTrajectory& traj,
                          const RadialGrid& grid);

/// Functional series `t,l1dmu,grad_l2,dtu_l2,sup,xt`.
void write_series_csv(const std::string& path, const std::vector<FunctionalSample>& series);

/// Sweep table `p,epsilon,T_measured,converged,Q_value,grid_n,dt`.
void write_sweep_csv(const std::string& path, const std::vector<LifespanRecord>& records);

nlohmann::json to_json(const GridMeta& grid);
nlohmann::json to_json(const HeatDecayReport& rep);
nlohmann::json to_json(const MatsumuraGapReport& rep);
nlohmann::json to_json(const LogMatsumuraReport& rep);
nlohmann::json to_json(const InequalityReport& rep);

void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace dwlab
