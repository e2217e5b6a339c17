#include "vgsd/spinboson.hpp"

#include <cmath>
#include <stdexcept>

#include "vgsd/units.hpp"

namespace vgsd {

double alpha_from_gamma(double gamma, double Z0) {
  if (!(Z0 > 0.0)) throw std::invalid_argument("Z0 must be positive");
  return kConstants.R_K * gamma * gamma / (8.0 * kPi * kPi * Z0);
}

double lambda_from_gamma(double gamma, double Z0) {
  if (!(Z0 > 0.0)) throw std::invalid_argument("Z0 must be positive");
  return -std::sqrt(kConstants.R_K / (8.0 * kPi * Z0)) * gamma;
}

CouplingTriple coupling_from_gamma(double gamma, double Z0) {
  return {gamma, lambda_from_gamma(gamma, Z0), alpha_from_gamma(gamma, Z0)};
}

double spectral_density(double omega, double alpha, double omega_cut) {
  if (omega < 0.0) throw std::invalid_argument("spectral_density: omega must be >= 0");
  return kPi * alpha * omega * std::exp(-omega / omega_cut);
}

const std::array<Scenario, 6>& scenarios() {
  static const std::array<Scenario, 6> table{{
      {1, "scenario1", true, 1.0, 0.0, 0.0, 0.0},
      {2, "scenario2", false, -0.1, 0.02, 0.003, -0.5},
      {3, "scenario3", false, -0.3, 0.07, 0.03, -1.6},
      {4, "scenario4", false, -0.65, 0.14, 0.1, -3.4},
      {5, "scenario5", false, -1.0, 0.22, 0.3, -5.2},
      {6, "scenario6", false, 0.1, -0.02, 0.003, 0.5},
  }};
  return table;
}

std::optional<Scenario> find_scenario(const std::string& name) {
  for (const auto& s : scenarios())
    if (s.name == name) return s;
  return std::nullopt;
}

}  // namespace vgsd
