#pragma once

#include <array>
#include <optional>
#include <string>

namespace vgsd {

struct CouplingTriple {
  double gamma = 0.0;
  double lambda = 0.0;
  double alpha = 0.0;
};

// alpha = R_K gamma^2 / (8 pi^2 Z0)
double alpha_from_gamma(double gamma, double Z0);
// lambda = -sqrt(R_K / (8 pi Z0)) gamma
double lambda_from_gamma(double gamma, double Z0);
CouplingTriple coupling_from_gamma(double gamma, double Z0);

// Ohmic bath with exponential cutoff: pi alpha omega e^{-omega / omega_cut}.
double spectral_density(double omega, double alpha, double omega_cut);

// Coupling scenarios with the table values as printed. Scenario 1 is the weak-coupling limit; it is
// evaluated at lambda = 1 and all outputs are reported per lambda^2.
struct Scenario {
  int id;
  std::string name;
  bool weak_limit;
  double lambda;
  double gamma;
  double alpha;
  double omega_var_ghz;  // Omega_v / 2 pi
};

const std::array<Scenario, 6>& scenarios();
std::optional<Scenario> find_scenario(const std::string& name);

// Omega_f / 2 pi used with every scenario.
inline constexpr double kScenarioOmegaFreeGHz = 7.3;

}  // namespace vgsd
