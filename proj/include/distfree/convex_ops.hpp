#pragma once

#include <span>

#include "distfree/convex_fn.hpp"

namespace distfree {

/// Bracketing parameters for the derivative-sign and level-set bisections.
struct SearchOptions {
  double tol = 1e-9;
  /// Unbounded domains are searched inside [-window, window]; a sign that
  /// never flips there is reported as an infinite endpoint.
  double window = 1e9;
  int max_iter = 200;
};

struct Minimum {
  ExtReal argmin;
  ExtReal value;
};

/// [L, R] with L = inf{t : D+f(t) >= 0} and R = sup{t : D-f(t) <= 0} over
/// `over`, each located to within opts.tol. Endpoints may be infinite.
Interval argmin_interval(const ConvexFn& f, const Interval& over, const SearchOptions& opts = {});

/// Minimizer and minimal value over `over`.
///
/// A bounded argmin interval yields its midpoint. When the argmin runs off
/// to +-inf the infinite endpoint is returned together with the limiting
/// value, which is -inf when the slope at the window edge still moves f.
Minimum minimize(const ConvexFn& f, const Interval& over, double tol = 1e-9);
Minimum minimize(const ConvexFn& f, const Interval& over, const SearchOptions& opts);

/// {t in dom f : f(t) <= level}; empty when level is below inf f.
Interval sublevel_interval(const ConvexFn& f, ExtReal level, const SearchOptions& opts = {});

/// Limit of f along t -> +inf (direction > 0) or t -> -inf (direction < 0),
/// evaluated at the search-window edge.
ExtReal limit_value(const ConvexFn& f, int direction, const SearchOptions& opts = {});

/// sum_i weights[i] * fns[i]. Weights must be non-negative and sum to one
/// within 1e-12; zero-weight components do not restrict the domain.
/// Piecewise-linear inputs give an exact piecewise-linear result.
ConvexFn mix(std::span<const double> weights, std::span<const ConvexFn> fns);

}  // namespace distfree
