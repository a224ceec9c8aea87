#pragma once

#include <span>
#include <utility>
#include <vector>

#include "distfree/ext_real.hpp"
#include "distfree/interval.hpp"

namespace distfree {

struct Breakpoint {
  double theta;
  double value;
};

/// Convex piecewise-linear function given by its breakpoints and the slopes
/// of the two unbounded pieces.
///
/// A left slope of -inf means the function is +inf to the left of the first
/// breakpoint (the domain starts there); a right slope of +inf likewise
/// closes the domain at the last breakpoint. All queries are exact up to the
/// rounding of the stored values.
class PiecewiseLinearConvex {
 public:
  /// Throws ConstructionError unless breakpoints are non-empty, strictly
  /// increasing in theta, and the slope sequence is non-decreasing.
  PiecewiseLinearConvex(std::vector<Breakpoint> breakpoints, ExtReal left_slope, ExtReal right_slope);

  /// alpha*[t - anchor]_+ + (1 - alpha)*[anchor - t]_+ + offset.
  static PiecewiseLinearConvex pinball(double alpha, double anchor, double offset = 0.0);
  /// |t - anchor|.
  static PiecewiseLinearConvex absolute(double anchor = 0.0);

  const std::vector<Breakpoint>& breakpoints() const { return points_; }
  ExtReal left_slope() const { return left_; }
  ExtReal right_slope() const { return right_; }
  Interval domain() const;

  ExtReal eval(double theta) const;
  /// One-sided derivatives for theta in the domain; the endpoint conventions
  /// of ConvexFn are applied by the caller.
  ExtReal dplus(double theta) const;
  ExtReal dminus(double theta) const;

  /// Slopes of the finite segments, in order.
  std::vector<double> segment_slopes() const;

  struct ExactMin {
    ExtReal argmin_lo;
    ExtReal argmin_hi;
    ExtReal value;
  };
  /// Exact infimum over `over` (intersected with the domain) and the
  /// endpoints of the set where it is attained; an unattained infimum
  /// reports the corresponding infinite endpoint.
  ExactMin minimize_over(const Interval& over) const;

  /// Exact convex combination; components with zero weight are ignored.
  static PiecewiseLinearConvex mix(std::span<const double> weights,
                                   std::span<const PiecewiseLinearConvex> fns);

 private:
  std::vector<Breakpoint> points_;
  ExtReal left_;
  ExtReal right_;
};

}  // namespace distfree
