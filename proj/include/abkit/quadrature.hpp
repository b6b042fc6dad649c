#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature with interval bisection,
// plus a doubling periodic trapezoid rule for smooth periodic integrands.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "abkit/errors.hpp"

namespace abkit::quad {

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_intervals = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights attached to kNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 15> fv{};

  auto eval = [&](double t) {
    const double v = f(t);
    if (!std::isfinite(v)) {
      throw EvaluationError("non-finite integrand at t=" + std::to_string(t), t);
    }
    return v;
  };

  const double fc = eval(center);
  double kronrod = kKronrod[7] * fc;
  double gauss = kGauss[3] * fc;
  double abs_sum = std::abs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double f1 = eval(center - dx);
    const double f2 = eval(center + dx);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    kronrod += kKronrod[j] * (f1 + f2);
    abs_sum += kKronrod[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kGauss[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrod[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    asc += kKronrod[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));
  }

  const double w = std::abs(half);
  const double value = kronrod * half;
  double err = std::abs((kronrod - gauss) * half);
  asc *= w;
  abs_sum *= w;
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * abs_sum, err);
  }
  return {a, b, value, err, abs_sum};
}

}  // namespace detail

/// Integrates f over [a, b]. Interior breakpoints (sorted or not, values
/// outside (a, b) ignored) seed the initial panels so kinks sit on edges.
/// Stops when the summed error estimate is <= max(abs_tol, rel_tol*|I|),
/// or has reached the roundoff floor 100 eps * integral of |f|; throws
/// ConvergenceError carrying the best estimate otherwise.
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {},
                 std::span<const double> breakpoints = {}) {
  if (a == b) return {};
  const double sign = b < a ? -1.0 : 1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);

  std::vector<double> edges{lo};
  for (double p : breakpoints) {
    if (p > lo && p < hi) edges.push_back(p);
  }
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<detail::Panel> heap;
  double total = 0.0;
  double total_err = 0.0;
  double total_l1 = 0.0;
  long evals = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    auto p = detail::gk15(f, edges[i], edges[i + 1]);
    evals += 15;
    total += p.value;
    total_err += p.error;
    total_l1 += p.l1;
    heap.push(p);
  }

  // Errors below 100 eps * integral of |f| are roundoff and cannot be reduced.
  auto target = [&] {
    return std::max({opt.abs_tol, opt.rel_tol * std::abs(total),
                     100.0 * std::numeric_limits<double>::epsilon() * total_l1});
  };
  int intervals = static_cast<int>(heap.size());
  while (total_err > target()) {
    if (heap.empty()) break;
    const auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    const double width = worst.b - worst.a;
    const double scale = std::max(std::abs(worst.a), std::abs(worst.b));
    if (intervals >= opt.max_intervals ||
        width <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300)) {
      // Recompute the sum over panels in a fixed order for the reported estimate.
      std::vector<detail::Panel> all;
      while (!heap.empty()) { all.push_back(heap.top()); heap.pop(); }
      std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
      double best = 0.0, err = 0.0;
      for (const auto& p : all) { best += p.value; err += p.error; }
      throw ConvergenceError("quadrature did not reach tolerance (error " + std::to_string(err) +
                                 ", target " + std::to_string(target()) + ")",
                             sign * best, err);
    }
    heap.pop();
    auto left = detail::gk15(f, worst.a, mid);
    auto right = detail::gk15(f, mid, worst.b);
    evals += 30;
    ++intervals;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
  }

  // Final sum in left-to-right order so the result does not depend on heap layout.
  std::vector<detail::Panel> all;
  while (!heap.empty()) { all.push_back(heap.top()); heap.pop(); }
  std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
  double sum = 0.0, err = 0.0;
  for (const auto& p : all) { sum += p.value; err += p.error; }
  return {sign * sum, err, evals};
}

/// Trapezoid rule over one period, doubling the node count until two
/// successive estimates agree within tol.
template <class F>
Result integrate_periodic(F&& f, double period, double tol, int max_nodes = 1 << 16) {
  int n = 16;
  double h = period / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += f(i * h);
  double prev = sum * h;
  long evals = n;
  while (n < max_nodes) {
    double extra = 0.0;
    for (int i = 0; i < n; ++i) extra += f((i + 0.5) * h);
    evals += n;
    sum += extra;
    n *= 2;
    h = period / n;
    const double cur = sum * h;
    if (!std::isfinite(cur)) throw EvaluationError("non-finite periodic integrand", 0.0);
    if (std::abs(cur - prev) <= tol) return {cur, std::abs(cur - prev), evals};
    prev = cur;
  }
  throw ConvergenceError("periodic trapezoid did not converge", prev, std::abs(prev));
}

}  // namespace abkit::quad
