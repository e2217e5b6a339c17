#pragma once

#include <Eigen/Dense>
#include <array>
#include <utility>
#include <vector>

#include "vgsd/eigensolver.hpp"

namespace vgsd {

// Tunable coupler + flux qubit. Modes are ordered (gamma_1, gamma_2, gamma_5, gamma_6); junction currents
// are indexed 1..6 as I_c[0..5].
struct CircuitSpec {
  Eigen::Matrix4d C_inv;     // 1/pF
  std::array<double, 6> I_c;  // uA
  double f_beta = 0.5;
  double f_eps = 0.5;
  int n_trunc = 5;  // charges n in [-n_trunc, n_trunc] per mode

  static CircuitSpec device_defaults();
  // Configs need positive currents; assembly also accepts zeros (junctions removed).
  void validate(bool require_positive_currents = true) const;
  int dimension() const;
};

inline constexpr int kCouplingMode = 2;  // gamma_5

// 2 e^2 C^-1 / h in GHz.
Eigen::Matrix4d charging_matrix_ghz(const CircuitSpec& spec);
// phi_0 I_c / h in GHz.
std::array<double, 6> josephson_energies_ghz(const CircuitSpec& spec);

// Hamiltonian in h*GHz on the truncated charge basis; mode 0 is the most significant digit.
SparseC build_hamiltonian(const CircuitSpec& spec);

// Single-mode angle operator, <n|gamma|n'> = i (-1)^(n-n') / (n - n'), zero diagonal.
Eigen::MatrixXcd single_mode_angle_operator(int n_trunc);
// The same operator acting on one mode of the four-mode charge space.
SparseC angle_operator_matrix(int mode, int n_trunc);

// Complex conjugation in the phase representation: c(n) -> conj(c(-n)).
Eigen::VectorXcd phase_conjugate(const Eigen::VectorXcd& v);
// Rotates v so its phase-representation wavefunction is real (up to a global sign).
void gauge_fix(Eigen::VectorXcd& v);

struct QubitCharacterization {
  double f_beta = 0.0;
  double f_eps = 0.0;
  double gap = 0.0;      // rad/ns
  double gap_ghz = 0.0;  // Omega / 2 pi
  double gamma_x = 0.0;
  double gamma_y = 0.0;
  double gamma_z = 0.0;  // diagnostic only, not used downstream
  bool gamma_z_neglected = true;
  std::vector<double> energies_ghz;
  double max_residual = 0.0;
};

struct QubitStates {
  QubitCharacterization info;
  Eigen::VectorXcd ground;
  Eigen::VectorXcd excited;
};

// Lowest two levels and the gauge-fixed gamma_5 matrix elements at spec.f_beta, spec.f_eps.
QubitStates characterize_states(const CircuitSpec& spec, const EigenOptions& opt = {});
QubitCharacterization characterize(const CircuitSpec& spec, const EigenOptions& opt = {});

// Qubit frequency Omega/2pi in GHz.
double qubit_gap_ghz(const CircuitSpec& spec, const EigenOptions& opt = {});

struct SymmetryScan {
  double lo = 0.3;
  double hi = 0.7;
  double step = 0.02;
  double xtol = 1e-6;
  double eig_tol = 1e-8;
};

// argmin over f_eps of the gap at fixed f_beta: coarse scan, then golden-section refinement.
double symmetry_point(const CircuitSpec& spec, double f_beta, const SymmetryScan& scan = {});

struct GapLineFit {
  double intercept_ghz = 0.0;  // Omega_f / 2pi
  double slope_ghz = 0.0;      // d(Omega/2pi)/d gamma_x
  double max_residual_ghz = 0.0;
  // Omega_v / 2pi for coupling amplitude gamma, since gamma_x(t) = gamma chi(t).
  double omega_var_ghz(double gamma) const { return slope_ghz * gamma; }
};

// Least squares line through (gamma_x, Omega/2pi [GHz]).
GapLineFit fit_gap_line(const std::vector<std::pair<double, double>>& points);

// Characterizes each f_beta at its symmetry point. Signs follow gamma_x > 0 at the largest f_beta and
// continuity of the eigenvectors towards smaller f_beta. Output is ordered as the input.
std::vector<QubitCharacterization> characterize_sweep(const CircuitSpec& base, const std::vector<double>& f_betas,
                                                      const SymmetryScan& scan = {}, const EigenOptions& opt = {},
                                                      int workers = 1);

}  // namespace vgsd
