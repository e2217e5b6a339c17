#include "vgsd/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace vgsd {

using cplx = std::complex<double>;

double operator_scale(const SparseC& H) {
  double best = 0.0;
  for (int r = 0; r < H.outerSize(); ++r) {
    double s = 0.0;
    for (SparseC::InnerIterator it(H, r); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

namespace {

Eigen::VectorXd residual_norms(const SparseC& H, const Eigen::VectorXd& vals, const Eigen::MatrixXcd& vecs) {
  Eigen::VectorXd r(vals.size());
  for (int i = 0; i < vals.size(); ++i) r(i) = (H * vecs.col(i) - vals(i) * vecs.col(i)).norm();
  return r;
}

EigenResult dense_solve(const SparseC& H, int k) {
  const Eigen::MatrixXcd D = Eigen::MatrixXcd(H);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(D);
  if (es.info() != Eigen::Success) throw EigensolverError("dense eigensolver failed", Eigen::VectorXd());
  EigenResult out;
  out.values = es.eigenvalues().head(k);
  out.vectors = es.eigenvectors().leftCols(k);
  out.residuals = residual_norms(H, out.values, out.vectors);
  out.scale = operator_scale(H);
  return out;
}

Eigen::VectorXcd random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(nd(rng), nd(rng));
  return v / v.norm();
}

}  // namespace

EigenResult lowest_eigenpairs(const SparseC& H, int k, const EigenOptions& opt) {
  const int n = static_cast<int>(H.rows());
  if (H.rows() != H.cols()) throw std::invalid_argument("lowest_eigenpairs: matrix must be square");
  if (k < 1 || k > n) throw std::invalid_argument("lowest_eigenpairs: k out of range");
  if (n <= opt.dense_threshold) return dense_solve(H, k);

  const double scale = operator_scale(H);
  const int m = std::min(opt.basis_size, n - 1);
  const int keep = std::min(k + opt.keep_extra, m - 2);
  if (keep < k) throw std::invalid_argument("lowest_eigenpairs: basis_size too small for k");

  std::mt19937_64 rng(opt.seed);
  Eigen::MatrixXcd V(n, m + 1);
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(m, m);
  if (opt.start.size() == n && opt.start.norm() > 0.0) {
    V.col(0) = opt.start / opt.start.norm();
  } else {
    V.col(0) = random_unit(n, rng);
  }

  int j0 = 0;
  int matvecs = 0;
  double beta = 0.0;
  Eigen::VectorXcd w(n), h;
  Eigen::VectorXd last_res = Eigen::VectorXd::Constant(k, INFINITY);

  for (int restart = 0; restart <= opt.max_restarts; ++restart) {
    for (int j = j0; j < m; ++j) {
      w.noalias() = H * V.col(j);
      ++matvecs;
      // Two passes of classical Gram-Schmidt against the whole basis.
      h = V.leftCols(j + 1).adjoint() * w;
      w.noalias() -= V.leftCols(j + 1) * h;
      Eigen::VectorXcd h2 = V.leftCols(j + 1).adjoint() * w;
      w.noalias() -= V.leftCols(j + 1) * h2;
      h += h2;
      T.block(0, j, j + 1, 1) = h;
      beta = w.norm();
      if (beta < 1e-14 * scale) {
        // Invariant subspace: continue with a fresh orthogonal direction.
        Eigen::VectorXcd r = random_unit(n, rng);
        for (int pass = 0; pass < 2; ++pass) r -= V.leftCols(j + 1) * (V.leftCols(j + 1).adjoint() * r);
        V.col(j + 1) = r / r.norm();
        beta = 0.0;
      } else {
        V.col(j + 1) = w / beta;
      }
    }

    // Hermitian projected matrix from its computed upper triangle.
    Eigen::MatrixXcd Th = T.triangularView<Eigen::Upper>();
    Th.triangularView<Eigen::StrictlyLower>() = T.adjoint().triangularView<Eigen::StrictlyLower>();
    for (int i = 0; i < m; ++i) Th(i, i) = Th(i, i).real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Th);
    const Eigen::VectorXd theta = es.eigenvalues();
    const Eigen::MatrixXcd& Y = es.eigenvectors();

    bool done = true;
    for (int i = 0; i < k; ++i) {
      last_res(i) = beta * std::abs(Y(m - 1, i));
      if (last_res(i) > opt.tol * scale) done = false;
    }
    if (done) {
      EigenResult out;
      out.values = theta.head(k);
      out.vectors = V.leftCols(m) * Y.leftCols(k);
      for (int i = 0; i < k; ++i) out.vectors.col(i).normalize();
      out.residuals = residual_norms(H, out.values, out.vectors);
      out.scale = scale;
      out.matvecs = matvecs;
      return out;
    }

    // Thick restart: keep the lowest Ritz vectors and the current residual direction.
    const Eigen::MatrixXcd kept = V.leftCols(m) * Y.leftCols(keep);
    const Eigen::VectorXcd next = V.col(m);
    V.leftCols(keep) = kept;
    V.col(keep) = next;
    T.setZero();
    for (int i = 0; i < keep; ++i) T(i, i) = theta(i);
    j0 = keep;
  }
  throw EigensolverError("Lanczos did not converge within " + std::to_string(opt.max_restarts) + " restarts",
                         last_res);
}

}  // namespace vgsd
