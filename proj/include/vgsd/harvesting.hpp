#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "vgsd/kernels.hpp"
#include "vgsd/quadrature.hpp"
#include "vgsd/switching.hpp"

namespace vgsd {

// Two equal detectors: A switched on at t = 0, B at t = t_delta, signaling time t_d.
// switching.t_center is ignored; both detectors use the centered shape shifted to their own time.
struct DetectorPair {
  double lambda = 1.0;
  GapSpec gap;
  SwitchingSpec switching;
  double t_delta = 0.0;  // ns
  double t_d = 0.0;      // ns

  void validate() const;
};

enum class Entry { AA, BB, AB };

struct MSplit {
  cplx M;
  cplx M_plus;
  cplx M_minus;
};

struct HarvestResult {
  double L_AA = 0.0;
  double L_BB = 0.0;
  cplx L_AB;
  cplx M;
  cplx M_plus;
  cplx M_minus;
  double negativity = 0.0;
  std::optional<double> estimator;  // empty when |M+| + |M-| = 0
};

// Basis order |0A 0B>, |1A 0B>, |0A 1B>, |1A 1B>.
using TwoQubitState = Eigen::Matrix4cd;

class HarvestEngine {
 public:
  explicit HarvestEngine(double omega_cut, QuadratureConfig cfg = default_config());

  static QuadratureConfig default_config();

  const FieldKernels& kernels() const { return kernels_; }
  const QuadratureConfig& config() const { return cfg_; }

  // Time-domain evaluation through t+- = t +- t' (the production path).
  cplx L_modes_first(const DetectorPair& p, Entry which) const;
  MSplit M(const DetectorPair& p) const;
  HarvestResult evaluate(const DetectorPair& p) const;

  // Direct iterated double integrals over (t, t'). Reference for the t+- path.
  cplx L_direct(const DetectorPair& p, Entry which) const;
  cplx M_direct(const DetectorPair& p) const;

  // Frequency-domain evaluation from |chi_c~(omega)|^2. Reference for L.
  cplx L_modes_last(const DetectorPair& p, Entry which) const;
  // Explicit omega integral of the double time integral with e^{-i omega |t - t' - t_delta|}. Slow reference.
  cplx M_modes_last(const DetectorPair& p) const;

  // Autocorrelations I_L(t-) and I_M(t-) of the centered chi_c.
  cplx I_L(const DetectorPair& p, double t_minus) const;
  double I_M(const DetectorPair& p, double t_minus) const;

 private:
  std::vector<double> tminus_splits(const DetectorPair& p) const;
  std::vector<double> tplus_splits(const DetectorPair& p, double t_minus) const;
  QuadratureConfig inner_config(const SwitchingSpec& s) const;

  FieldKernels kernels_;
  QuadratureConfig cfg_;
};

// Negativity as printed: eta = sqrt(|M|^2 - (L_AA - L_BB)^2 / 2) - (L_AA + L_BB) / 2, N = max(eta, 0).
// A negative radicand yields 0.
double negativity(double L_AA, double L_BB, cplx M);

TwoQubitState build_state(double L_AA, double L_BB, cplx L_AB, cplx M);

// Eigenvalues of the partial transpose over B, ascending.
Eigen::Vector4d partial_transpose_eigenvalues(const TwoQubitState& rho);
// Sum of the magnitudes of the negative eigenvalues of the partial transpose.
double partial_transpose_negativity(const TwoQubitState& rho);

// |M+| / (|M+| + |M-|), empty when both vanish.
std::optional<double> estimator(cplx M_plus, cplx M_minus);

}  // namespace vgsd
