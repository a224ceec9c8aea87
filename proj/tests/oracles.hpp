// Independent reference computations for the tests: dense grids, finite
// differences, composite Simpson and random generators. Nothing here calls
// the bisection or mixing code under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "distfree/convex_fn.hpp"
#include "distfree/piecewise_linear.hpp"

namespace oracle {

using Fn = std::function<double(double)>;

struct GridMin {
  double theta;
  double value;
};

inline GridMin grid_argmin(const Fn& f, double lo, double hi, int points) {
  GridMin best{lo, std::numeric_limits<double>::infinity()};
  for (int i = 0; i <= points; ++i) {
    const double t = lo + (hi - lo) * i / points;
    const double v = f(t);
    if (v < best.value) best = {t, v};
  }
  return best;
}

inline double forward_difference(const Fn& f, double theta, double h) { return (f(theta + h) - f(theta)) / h; }

inline double simpson(const Fn& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double total = f(a) + f(b);
  for (int i = 1; i < panels; ++i) total += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return total * h / 3.0;
}

/// inf over the grid of max{f0 - f0*, f1 - f1*}, the infima taken on the
/// same grid.
inline double grid_dopt(const Fn& f0, const Fn& f1, double lo, double hi, int points) {
  std::vector<double> v0(points + 1), v1(points + 1);
  for (int i = 0; i <= points; ++i) {
    const double t = lo + (hi - lo) * i / points;
    v0[i] = f0(t);
    v1[i] = f1(t);
  }
  const double m0 = *std::min_element(v0.begin(), v0.end());
  const double m1 = *std::min_element(v1.begin(), v1.end());
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= points; ++i) best = std::min(best, std::max(v0[i] - m0, v1[i] - m1));
  return best;
}

/// Closed sublevel set on a grid: first and last grid point with f <= level.
inline std::pair<double, double> grid_sublevel(const Fn& f, double level, double lo, double hi, int points) {
  double first = std::numeric_limits<double>::infinity();
  double last = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= points; ++i) {
    const double t = lo + (hi - lo) * i / points;
    if (f(t) <= level) {
      first = std::min(first, t);
      last = std::max(last, t);
    }
  }
  return {first, last};
}

/// Evaluate a ConvexFn as a plain double map (+inf stays +inf).
inline Fn as_fn(const distfree::ConvexFn& f) {
  return [f](double t) { return f(t).value(); };
}

/// Random convex piecewise-linear function on R (finite end slopes) with
/// breakpoints in [-5, 5].
inline distfree::PiecewiseLinearConvex random_pwl(std::mt19937_64& gen, int max_breaks = 6, double max_slope = 3.0) {
  std::uniform_int_distribution<int> count(1, max_breaks);
  std::uniform_real_distribution<double> pos(-5.0, 5.0);
  std::uniform_real_distribution<double> slope(-max_slope, max_slope);
  std::uniform_real_distribution<double> offset(-2.0, 2.0);
  const int k = count(gen);
  std::vector<double> thetas(k);
  for (auto& t : thetas) t = pos(gen);
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());
  std::vector<double> slopes(thetas.size() + 1);
  for (auto& s : slopes) s = slope(gen);
  std::sort(slopes.begin(), slopes.end());
  std::vector<distfree::Breakpoint> points;
  double value = offset(gen);
  points.push_back({thetas[0], value});
  for (std::size_t i = 1; i < thetas.size(); ++i) {
    value += slopes[i] * (thetas[i] - thetas[i - 1]);
    points.push_back({thetas[i], value});
  }
  return distfree::PiecewiseLinearConvex(points, slopes.front(), slopes.back());
}

/// Random pwl whose minimum is attained: left slope < 0 < right slope.
inline distfree::PiecewiseLinearConvex random_coercive_pwl(std::mt19937_64& gen, int max_breaks = 6,
                                                          double max_slope = 3.0) {
  for (;;) {
    auto f = random_pwl(gen, max_breaks, max_slope);
    if (f.left_slope() < 0.0 && f.right_slope() > 0.0) return f;
  }
}

}  // namespace oracle
