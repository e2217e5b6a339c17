#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vgsd {

using SparseC = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;

struct EigenOptions {
  int basis_size = 48;  // Krylov basis length before a restart
  int keep_extra = 8;   // Ritz vectors kept beyond the k wanted
  int max_restarts = 3000;
  double tol = 1e-10;         // residual bound relative to operator_scale(H)
  int dense_threshold = 1500;  // dimensions up to this use a dense solver
  std::uint64_t seed = 0x5eed;
  Eigen::VectorXcd start;  // optional starting vector
};

struct EigenResult {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // unit columns
  Eigen::VectorXd residuals;  // ||H v - E v||
  double scale = 0.0;
  int matvecs = 0;
};

class EigensolverError : public std::runtime_error {
 public:
  EigensolverError(const std::string& what, Eigen::VectorXd residuals)
      : std::runtime_error(what), residuals_(std::move(residuals)) {}
  const Eigen::VectorXd& residuals() const { return residuals_; }

 private:
  Eigen::VectorXd residuals_;
};

// Maximum absolute row sum, an upper bound on the spectral norm.
double operator_scale(const SparseC& H);

// Lowest k eigenpairs of a Hermitian matrix. Thick-restart Lanczos with full reorthogonalization above
// dense_threshold, dense diagonalization below it.
EigenResult lowest_eigenpairs(const SparseC& H, int k, const EigenOptions& opt = {});

}  // namespace vgsd
