#pragma once

#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>

#include "vgsd/circuit.hpp"
#include "vgsd/harvesting.hpp"
#include "vgsd/sweep.hpp"

namespace vgsd {

using json = nlohmann::json;

// Invalid configuration; key() names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what) : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

json load_json_file(const std::string& path);

// Configs are JSON objects in laboratory units: times in ns, frequencies as Omega/2pi in GHz,
// currents in uA, inverse capacitances in 1/pF.
struct PointConfig {
  ScenarioParams scenario;
  SwitchingSpec switching;
  double t_d = 0.0;
  double t_delta = 0.0;
  double omega_cut_ghz = 50.0;
  double rel_tol = 1e-8;

  DetectorPair pair() const;
};

PointConfig point_config_from_json(const json& j);
SweepPlan sweep_plan_from_json(const json& j);
json sweep_plan_to_json(const SweepPlan& plan);

struct CircuitConfig {
  CircuitSpec spec = CircuitSpec::device_defaults();
  Axis f_beta{0.3, 0.5, 11};
  SymmetryScan scan;
  bool convergence_check = true;
};

CircuitConfig circuit_config_from_json(const json& j);

// Command-line level settings.
struct RunConfig {
  std::string subcommand;
  std::string config_path;
  std::string out_dir = ".";
  int workers = 1;
  std::optional<double> rel_tol;
};

// Header lines written ahead of sweep CSV data. They do not depend on the worker count.
void write_csv_header(std::ostream& os, const SweepPlan& plan);
// Recovers the plan from the header of a CSV written by write_csv_header.
SweepPlan read_csv_plan(std::istream& is);

}  // namespace vgsd
