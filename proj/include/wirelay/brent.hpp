#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace wirelay {

struct BrentResult {
  double x = 0.0;        // best abscissa seen
  double f = 0.0;        // objective value at x
  int evaluations = 0;
  bool stopped_early = false;  // an evaluation fell below stop_below
};

// Derivative-free bounded scalar minimization (golden section with
// successive parabolic interpolation). The bracket [lo, hi] is required,
// no interior seed is needed. Tracks the best of *all* evaluations, and
// bails out as soon as any value drops below stop_below.
template <typename F>
BrentResult brent_minimize(F&& f, double lo, double hi, int max_iterations,
                           double x_tol,
                           double stop_below = -std::numeric_limits<double>::infinity()) {
  constexpr double golden = 0.3819660112501051;  // 2 - phi

  BrentResult best;
  best.f = std::numeric_limits<double>::infinity();

  auto eval = [&](double x) {
    const double fx = f(x);
    ++best.evaluations;
    if (fx < best.f) {
      best.f = fx;
      best.x = x;
    }
    return fx;
  };

  double a = lo, b = hi;
  double x = a + golden * (b - a);
  double w = x, v = x;
  double fx = eval(x);
  if (best.f < stop_below) {
    best.stopped_early = true;
    return best;
  }
  double fw = fx, fv = fx;
  double delta = 0.0, delta_prev = 0.0;

  for (int iter = 0; iter < max_iterations; ++iter) {
    const double mid = 0.5 * (a + b);
    const double tol1 = x_tol * std::abs(x) + x_tol * 0.25;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - mid) <= tol2 - 0.5 * (b - a)) break;

    bool use_golden = true;
    if (std::abs(delta_prev) > tol1) {
      // parabolic fit through (x, w, v)
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double delta_pp = delta_prev;
      delta_prev = delta;
      if (std::abs(p) < std::abs(0.5 * q * delta_pp) && p > q * (a - x) &&
          p < q * (b - x)) {
        delta = p / q;
        const double u = x + delta;
        if (u - a < tol2 || b - u < tol2)
          delta = (mid - x) >= 0.0 ? tol1 : -tol1;
        use_golden = false;
      }
    }
    if (use_golden) {
      delta_prev = (x >= mid) ? a - x : b - x;
      delta = golden * delta_prev;
    }

    const double u =
        (std::abs(delta) >= tol1) ? x + delta : x + (delta >= 0.0 ? tol1 : -tol1);
    const double fu = eval(u);
    if (best.f < stop_below) {
      best.stopped_early = true;
      return best;
    }

    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return best;
}

}  // namespace wirelay
