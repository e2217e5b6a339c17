#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace vgsd {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 10000;
  // Interior points where the integrand has kinks or narrow peaks. Panels never straddle them.
  std::vector<double> split_points;
  // Upper bound on initial panel width (0 disables). Used to resolve known oscillations.
  double max_panel_width = 0.0;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw std::invalid_argument("QuadratureConfig: tolerances must be positive");
    if (max_subdivisions < 1) throw std::invalid_argument("QuadratureConfig: max_subdivisions must be >= 1");
  }
};

template <class T>
struct Integral {
  T value{};
  double error = 0.0;
  int panels = 0;
  int evaluations = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, std::complex<double> best, double achieved)
      : std::runtime_error(what), best_(best), achieved_(achieved) {}
  std::complex<double> best_estimate() const { return best_; }
  double achieved_error() const { return achieved_; }

 private:
  std::complex<double> best_;
  double achieved_;
};

namespace detail {

// 15-point Kronrod nodes on [0, 1) with the embedded 7-point Gauss weights.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                  0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }
inline std::complex<double> as_complex(double x) { return {x, 0.0}; }
inline std::complex<double> as_complex(const std::complex<double>& z) { return z; }

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  double abs_value;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * kWgk[7];
  T gauss = fc * kWg[3];
  double absk = magnitude(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    const T s = f1 + f2;
    kron += s * kWgk[j];
    absk += (magnitude(f1) + magnitude(f2)) * kWgk[j];
    if (j % 2 == 1) gauss += s * kWg[j / 2];
  }
  return {a, b, kron * h, magnitude((kron - gauss) * h), absk * std::abs(h)};
}

inline std::vector<double> initial_breaks(double a, double b, const QuadratureConfig& cfg) {
  std::vector<double> pts{a};
  std::vector<double> inner;
  for (double s : cfg.split_points)
    if (s > a && s < b) inner.push_back(s);
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  for (double s : inner) pts.push_back(s);
  pts.push_back(b);
  if (cfg.max_panel_width <= 0.0) return pts;
  std::vector<double> out{a};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double w = pts[i] - pts[i - 1];
    const int n = std::max(1, static_cast<int>(std::ceil(w / cfg.max_panel_width)));
    for (int k = 1; k < n; ++k) out.push_back(pts[i - 1] + w * k / n);
    out.push_back(pts[i]);
  }
  return out;
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod 15 on [a, b]. Declared split points bound the initial panels, so a
// kink placed there never falls inside a panel. The error target is max(abs_tol, rel_tol |I|), floored
// at the round-off level of sum |f|.
template <class F>
auto integrate_1d(F&& f, double a, double b, const QuadratureConfig& cfg)
    -> Integral<std::decay_t<std::invoke_result_t<F&, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  using detail::Panel;
  cfg.validate();
  Integral<T> out;
  if (!(a <= b)) throw std::invalid_argument("integrate_1d: requires a <= b");
  if (a == b) return out;

  const auto breaks = detail::initial_breaks(a, b, cfg);
  std::priority_queue<Panel<T>> heap;
  std::vector<Panel<T>> frozen;
  T total{};
  double err = 0.0, absval = 0.0;
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    auto p = detail::gk15<T>(f, breaks[i - 1], breaks[i]);
    total += p.value;
    err += p.error;
    absval += p.abs_value;
    heap.push(p);
  }
  out.evaluations = 15 * static_cast<int>(breaks.size() - 1);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  int splits = 0;
  for (;;) {
    const double target = std::max({cfg.abs_tol, cfg.rel_tol * detail::magnitude(total), 50.0 * eps * absval});
    if (err <= target) break;
    if (heap.empty() || splits >= cfg.max_subdivisions) {
      T best{};
      for (auto& p : frozen) best += p.value;
      while (!heap.empty()) {
        best += heap.top().value;
        heap.pop();
      }
      throw QuadratureError("integrate_1d: tolerance not reached on [" + std::to_string(a) + ", " +
                                std::to_string(b) + "], achieved " + std::to_string(err),
                            detail::as_complex(best), err);
    }
    Panel<T> worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 64.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen.push_back(worst);  // cannot be resolved further in double precision
      continue;
    }
    auto left = detail::gk15<T>(f, worst.a, mid);
    auto right = detail::gk15<T>(f, mid, worst.b);
    out.evaluations += 30;
    ++splits;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    absval += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from panels to shed the drift of the running totals.
  T sum{};
  double esum = 0.0;
  out.panels = static_cast<int>(heap.size() + frozen.size());
  for (auto& p : frozen) {
    sum += p.value;
    esum += p.error;
  }
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.error = esum;
  return out;
}

// Integral over [a, inf) through x = a + scale * u / (1 - u), u in [0, 1).
template <class F>
auto integrate_semi_infinite(F&& f, double a, double scale, const QuadratureConfig& cfg)
    -> Integral<std::decay_t<std::invoke_result_t<F&, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  if (!(scale > 0.0)) throw std::invalid_argument("integrate_semi_infinite: scale must be positive");
  QuadratureConfig mapped = cfg;
  mapped.split_points.clear();
  mapped.max_panel_width = 0.0;
  for (double s : cfg.split_points)
    if (s > a) mapped.split_points.push_back((s - a) / (s - a + scale));
  auto g = [&](double u) -> T {
    const double one_minus = 1.0 - u;
    const double x = a + scale * u / one_minus;
    const T fx = f(x);
    if (detail::magnitude(fx) == 0.0) return T{};
    return fx * (scale / (one_minus * one_minus));
  };
  return integrate_1d(g, 0.0, 1.0, mapped);
}

// Rectangle [x_lo, x_hi] x [y_lo, y_hi] for iterated integration. The inner y integral is split at fixed
// y_splits and at every crossing y = x - c of the diagonal lines c in diagonal_offsets.
struct Domain2D {
  double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
  std::vector<double> x_splits;
  std::vector<double> y_splits;
  std::vector<double> diagonal_offsets;
};

template <class F>
auto integrate_2d_iterated(F&& f, const Domain2D& dom, const QuadratureConfig& cfg)
    -> Integral<std::decay_t<std::invoke_result_t<F&, double, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double, double>>;
  QuadratureConfig outer = cfg;
  outer.split_points = dom.x_splits;
  // Where a diagonal line enters or leaves the rectangle the inner integral has a kink in x.
  for (double c : dom.diagonal_offsets) {
    outer.split_points.push_back(dom.y_lo + c);
    outer.split_points.push_back(dom.y_hi + c);
    for (double ys : dom.y_splits) outer.split_points.push_back(ys + c);
  }
  const double width = dom.x_hi - dom.x_lo;
  QuadratureConfig inner = cfg;
  inner.rel_tol = cfg.rel_tol * 0.1;
  inner.abs_tol = cfg.abs_tol * 0.1 / std::max(width, 1e-300);
  inner.max_panel_width = cfg.max_panel_width;
  int evaluations = 0;
  auto row = [&](double x) -> T {
    QuadratureConfig c = inner;
    c.split_points = dom.y_splits;
    for (double off : dom.diagonal_offsets) c.split_points.push_back(x - off);
    auto r = integrate_1d([&](double y) { return f(x, y); }, dom.y_lo, dom.y_hi, c);
    evaluations += r.evaluations;
    return r.value;
  };
  auto res = integrate_1d(row, dom.x_lo, dom.x_hi, outer);
  res.evaluations = evaluations;
  return res;
}

}  // namespace vgsd
