#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "test_util.hpp"
#include "vgsd/eigensolver.hpp"

using namespace vgsd;

namespace {

SparseC random_sparse_hermitian(int n, int per_row, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> col(0, n - 1);
  std::vector<Eigen::Triplet<cplx>> t;
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, cplx(10 * u(g), 0));
    for (int k = 0; k < per_row; ++k) {
      const int j = col(g);
      if (j == i) continue;
      const cplx v(u(g), u(g));
      t.emplace_back(i, j, v);
      t.emplace_back(j, i, std::conj(v));
    }
  }
  SparseC h(n, n);
  h.setFromTriplets(t.begin(), t.end());
  return h;
}

}  // namespace

TEST_SUITE("eigensolver") {
  TEST_CASE("diagonal matrix") {
    const int n = 3000;
    std::vector<Eigen::Triplet<cplx>> t;
    for (int i = 0; i < n; ++i) t.emplace_back(i, i, cplx(std::fmod(i * 37.0, 101.0) + 0.001 * i, 0));
    SparseC h(n, n);
    h.setFromTriplets(t.begin(), t.end());
    const auto r = lowest_eigenpairs(h, 2);
    CHECK(r.values(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.values(1) == doctest::Approx(0.101).epsilon(1e-10));  // i = 101
  }

  TEST_CASE("2x2 Hermitian") {
    SparseC h(2, 2);
    std::vector<Eigen::Triplet<cplx>> t = {{0, 0, 1.0}, {1, 1, -1.0}, {0, 1, cplx(0, 2)}, {1, 0, cplx(0, -2)}};
    h.setFromTriplets(t.begin(), t.end());
    const auto r = lowest_eigenpairs(h, 2);
    CHECK(r.values(0) == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-14));
    CHECK(r.values(1) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  }

  TEST_CASE("Lanczos agrees with dense diagonalization") {
    const SparseC h = random_sparse_hermitian(2000, 6, 7);
    EigenOptions opt;
    opt.tol = 1e-12;
    const auto r = lowest_eigenpairs(h, 4, opt);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(h)};
    for (int i = 0; i < 4; ++i) {
      CHECK(r.values(i) == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-10));
      CHECK(r.residuals(i) <= 1e-8 * r.scale);
    }
    for (int i = 1; i < 4; ++i) CHECK(r.values(i) >= r.values(i - 1));
  }

  TEST_CASE("failure carries residuals") {
    const SparseC h = random_sparse_hermitian(2500, 6, 11);
    EigenOptions opt;
    opt.max_restarts = 1;
    opt.basis_size = 12;
    opt.tol = 1e-14;
    try {
      lowest_eigenpairs(h, 3, opt);
      FAIL("expected EigensolverError");
    } catch (const EigensolverError& e) {
      CHECK(e.residuals().size() == 3);
    }
  }
}
