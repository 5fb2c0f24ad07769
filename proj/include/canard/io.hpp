#pragma once

// JSON and CSV serialization of parameters, reports and trajectories.

#include "canard/canard.hpp"
#include "canard/gsp.hpp"
#include "canard/integrator.hpp"
#include "canard/model.hpp"
#include "canard/signature.hpp"

#include "json.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace canard::io {

using json = nlohmann::json;

// Parameter objects carry exactly their field names; unknown or missing keys
// raise UsageError.
json to_json(const PhysicalParams& p);
PhysicalParams physical_from_json(const json& j);
json to_json(const DimensionlessParams& p);
DimensionlessParams dimensionless_from_json(const json& j);

json to_json(const Scales& s);
json to_json(const Nondimensionalization& n);
json to_json(const ConditionReport& r);
json to_json(const FoldedSingularity& s);
json to_json(const OrdinarySingularity& s);
json to_json(const SingularOrbit& o);
json to_json(const CanardApprox& c);
json to_json(const MmoSignature& s);
json to_json(const IntegratorConfig& c);
json to_json(const StepStats& s);

/// Sidecar describing how a trajectory CSV was produced.
json trajectory_sidecar(const Trajectory<3>& traj, const IntegratorConfig& cfg,
                        const DimensionlessParams& q);

/// Header "t,x,y,z", one row per stored point.
void write_trajectory_csv(std::ostream& os, const Trajectory<3>& traj);
void write_trajectory_csv(std::ostream& os,
                          const std::vector<std::pair<double, Vec<3>>>& samples);

struct TimeSeries {
    std::vector<double> t;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> z;
};

/// Reads a "t,x,y,z" CSV; throws UsageError on a bad header or row.
TimeSeries read_trajectory_csv(std::istream& is);

/// Header "segment,kind,x,z".
void write_orbit_csv(std::ostream& os, const SingularOrbit& orbit);

/// Header "x,z".
void write_canard_csv(std::ostream& os, const CanardApprox& canard);

json read_json_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace canard::io
