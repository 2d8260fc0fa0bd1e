#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "pemc/errors.hpp"

namespace pemc::quadrature {

struct Estimate {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
};

struct AdaptiveOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-15;
  int max_subdivisions = 200;
};

namespace detail {

// 15-point Kronrod abscissae and weights with the embedded 7-point Gauss weights
// (QUADPACK qk15 values).
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
};

template <class F>
Panel kronrod15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kronrod_weights[7] * fc;
  double gauss = gauss_weights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kronrod_weights[j] * pair;
    if (j % 2 == 1) gauss += gauss_weights[j / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
///
/// The panel with the largest error estimate is bisected until the summed error
/// meets max(abs_tol, rel_tol * |I|). Panel values are summed in left-to-right
/// order so the result does not depend on refinement history. Throws
/// AccuracyError (carrying the best estimate) when max_subdivisions is exhausted.
template <class F>
Estimate integrate(const F& f, double a, double b, const AdaptiveOptions& opts = {}) {
  if (!(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
  if (opts.max_subdivisions < 1) throw DomainError("max_subdivisions must be at least 1");
  if (a == b) return {0.0, 0.0, 0};

  const auto by_error = [](const detail::Panel& l, const detail::Panel& r) { return l.error < r.error; };
  std::vector<detail::Panel> heap{detail::kronrod15(f, a, b)};
  double total = heap.front().value;
  double error = heap.front().error;
  int subdivisions = 1;

  const auto converged = [&] { return error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
  while (!converged() && subdivisions < opts.max_subdivisions) {
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const detail::Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const detail::Panel left = detail::kronrod15(f, worst.a, mid);
    const detail::Panel right = detail::kronrod15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    for (const auto& p : {left, right}) {
      heap.push_back(p);
      std::push_heap(heap.begin(), heap.end(), by_error);
    }
    ++subdivisions;
  }

  std::sort(heap.begin(), heap.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
  total = 0.0;
  error = 0.0;
  for (const auto& p : heap) {
    total += p.value;
    error += p.error;
  }
  if (!converged()) {
    throw AccuracyError("adaptive quadrature did not converge within max_subdivisions", total, error);
  }
  return {total, error, subdivisions};
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw DomainError("Gauss-Legendre order must be positive");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double pi = 3.141592653589793238462643383279502884;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace pemc::quadrature
