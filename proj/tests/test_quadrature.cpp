#include <doctest.h>

#include <functional>

#include "test_util.hpp"
#include "vgsd/quadrature.hpp"
#include "vgsd/units.hpp"

using namespace vgsd;
using test::rel_diff;

TEST_SUITE("quadrature") {
  TEST_CASE("basic integrals") {
    QuadratureConfig c;
    CHECK(integrate_1d([](double) { return 1.0; }, 0.0, 1.0, c).value == doctest::Approx(1.0).epsilon(1e-15));
    const double oc = units::ghz_to_internal(50.0);
    const double g2 = integrate_semi_infinite([&](double w) { return w * std::exp(-w / oc); }, 0.0, oc, c).value;
    CHECK(g2 == doctest::Approx(oc * oc).epsilon(1e-8));
    // tests/oracles/kernels_phase.py
    const double T = 0.1, W = units::ghz_to_internal(7.3);
    c.rel_tol = 1e-10;
    const cplx v = integrate_1d([&](double t) { return std::polar(std::exp(-t * t / (T * T)), W * t); }, -T, T, c).value;
    CHECK(std::abs(v - (-0.011678601804310766144)) <= 1e-8 * 0.011678601804310766144);
  }

  TEST_CASE("declared kinks") {
    const double c0 = 0.3183;
    QuadratureConfig c;
    c.rel_tol = 1e-12;
    c.abs_tol = 1e-12;
    c.split_points = {c0};
    const auto r = integrate_1d([&](double t) { return std::abs(t - c0); }, c0 - 1, c0 + 1, c);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.panels <= 8);
    // No panel straddles a split point: f is evaluated on both sides but never across.
    std::vector<double> seen;
    c.split_points = {0.25, 0.5};
    auto r2 = integrate_1d([&](double t) { seen.push_back(t); return t < 0.25 ? 1.0 : (t < 0.5 ? 2.0 : 3.0); }, 0.0, 1.0, c);
    CHECK(r2.value == doctest::Approx(0.25 + 0.5 + 1.5).epsilon(1e-14));
    CHECK(r2.panels == 3);
  }

  TEST_CASE("two-dimensional iterated") {
    QuadratureConfig c;
    c.rel_tol = 1e-11;
    Domain2D unit{0, 1, 0, 1, {}, {}, {}};
    CHECK(integrate_2d_iterated([](double, double) { return 1.0; }, unit, c).value == doctest::Approx(1.0).epsilon(1e-14));
    unit.diagonal_offsets = {0.0};
    CHECK(integrate_2d_iterated([](double x, double y) { return std::abs(x - y); }, unit, c).value ==
          doctest::Approx(1.0 / 3).epsilon(1e-11));
    Domain2D box{-0.4, 0.9, 0.1, 1.7, {}, {}, {}};
    auto f = [](double x) { return std::polar(std::exp(-x * x), 13.0 * x); };
    auto g = [](double y) { return cplx(std::cos(3 * y), y * y); };
    const cplx fx = integrate_1d(f, box.x_lo, box.x_hi, c).value;
    const cplx gy = integrate_1d(g, box.y_lo, box.y_hi, c).value;
    const cplx both = integrate_2d_iterated([&](double x, double y) { return f(x) * g(y); }, box, c).value;
    CHECK(rel_diff(both, fx * gy) < 1e-10);
  }

  TEST_CASE("error estimates are conservative on a battery") {
    struct Case {
      std::function<double(double)> f;
      double a, b, exact;
    };
    const std::vector<Case> battery = {
        {[](double x) { return std::exp(x); }, 0, 3, std::exp(3.0) - 1},
        {[](double x) { return std::sin(40 * x); }, 0, 1, (1 - std::cos(40.0)) / 40},
        {[](double x) { return 1 / (1 + x * x); }, -5, 5, 2 * std::atan(5.0)},
        {[](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3},
        {[](double x) { return std::abs(x - 0.3); }, 0, 1, 0.045 + 0.245},
        {[](double x) { return std::log(x); }, 0, 1, -1.0},
        {[](double x) { return 1 / (1e-4 + x * x); }, -1, 1, 2 * std::atan(100.0) * 100},
        {[](double x) { return std::cos(200 * x) * std::exp(-x); }, 0, 2,
         (std::exp(-2.0) * (200 * std::sin(400.0) - std::cos(400.0)) + 1) / (1 + 40000.0)},
        {[](double x) { return std::pow(x, 9); }, -1, 2, (1024.0 - 1) / 10},
        {[](double x) { return x < 0.37 ? 1.0 : 0.0; }, 0, 1, 0.37},
    };
    int ok = 0, total = 0;
    for (double tol : {1e-3, 1e-6, 1e-9})
      for (const auto& cs : battery) {
        QuadratureConfig c;
        c.rel_tol = tol;
        c.abs_tol = 1e-300;
        c.max_subdivisions = 100000;
        const auto r = integrate_1d(cs.f, cs.a, cs.b, c);
        ++total;
        if (std::abs(r.value - cs.exact) <= r.error) ++ok;
        CHECK(std::abs(r.value - cs.exact) <= std::max(10 * tol * std::abs(cs.exact), 1e-14));
      }
    CHECK(ok >= 0.95 * total);
  }

  TEST_CASE("non-convergence reports the best estimate") {
    QuadratureConfig c;
    c.rel_tol = 1e-14;
    c.abs_tol = 1e-300;
    c.max_subdivisions = 4;
    try {
      integrate_1d([](double x) { return std::sin(1e3 * x * x); }, 0.0, 3.0, c);
      FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
      CHECK(std::isfinite(e.best_estimate().real()));
      CHECK(e.achieved_error() > 0);
    }
    QuadratureConfig bad;
    bad.rel_tol = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }
}
