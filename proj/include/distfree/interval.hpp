#pragma once

#include <string>

#include "distfree/ext_real.hpp"

namespace distfree {

/// Closed interval [lo, hi] of the extended reals, or the empty set.
///
/// Membership of a real point is closed at finite endpoints. An infinite
/// endpoint is never attained by a real point.
class Interval {
 public:
  /// The whole real line.
  Interval() : lo_(ExtReal::neg_inf()), hi_(ExtReal::pos_inf()) {}
  /// Throws DomainError when lo > hi.
  Interval(ExtReal lo, ExtReal hi);

  static Interval empty_set();
  static Interval real_line() { return Interval(); }
  static Interval point(double x) { return Interval(x, x); }

  bool empty() const { return empty_; }
  ExtReal lo() const;
  ExtReal hi() const;

  bool contains(double x) const;
  bool contains_in_interior(double x) const;
  bool is_compact() const { return !empty_ && lo_.is_finite() && hi_.is_finite(); }
  bool has_interior() const { return !empty_ && lo_ < hi_; }
  ExtReal length() const;
  /// Midpoint for compact intervals.
  double midpoint() const;
  /// Nearest point of a non-empty interval.
  double clamp(double x) const;

  Interval intersect(const Interval& other) const;
  bool subset_of(const Interval& other) const;
  /// Every point of *this lies in the interior of `outer`.
  bool strictly_inside(const Interval& outer) const;

  friend bool operator==(const Interval& a, const Interval& b);

  std::string to_string() const;

 private:
  ExtReal lo_;
  ExtReal hi_;
  bool empty_ = false;
};

}  // namespace distfree
