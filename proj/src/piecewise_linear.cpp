#include "distfree/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace distfree {

namespace {

double slope_between(const Breakpoint& a, const Breakpoint& b) {
  return (b.value - a.value) / (b.theta - a.theta);
}

bool near_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

PiecewiseLinearConvex::PiecewiseLinearConvex(std::vector<Breakpoint> breakpoints, ExtReal left_slope,
                                             ExtReal right_slope)
    : points_(std::move(breakpoints)), left_(left_slope), right_(right_slope) {
  if (points_.empty()) throw ConstructionError("piecewise-linear function needs at least one breakpoint");
  if (left_.is_pos_inf() || right_.is_neg_inf()) {
    throw ConstructionError("unbounded piece slopes must point outward (left < +inf, right > -inf)");
  }
  for (const auto& p : points_) {
    if (!std::isfinite(p.theta) || !std::isfinite(p.value)) {
      throw ConstructionError("breakpoints must be finite");
    }
  }
  ExtReal previous = left_;
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    if (!(points_[i].theta < points_[i + 1].theta)) {
      throw ConstructionError("breakpoints must be strictly increasing in theta");
    }
    const double s = slope_between(points_[i], points_[i + 1]);
    if (ExtReal(s) < previous - 1e-12 * std::max(1.0, std::abs(s))) {
      throw ConstructionError("slopes must be non-decreasing");
    }
    previous = s;
  }
  if (right_ < previous && !(previous.is_finite() && right_.is_finite() &&
                             near_equal(previous.value(), right_.value()))) {
    throw ConstructionError("right slope below the last segment slope");
  }
}

PiecewiseLinearConvex PiecewiseLinearConvex::pinball(double alpha, double anchor, double offset) {
  return PiecewiseLinearConvex({{anchor, offset}}, -(1.0 - alpha), alpha);
}

PiecewiseLinearConvex PiecewiseLinearConvex::absolute(double anchor) {
  return PiecewiseLinearConvex({{anchor, 0.0}}, -1.0, 1.0);
}

Interval PiecewiseLinearConvex::domain() const {
  const ExtReal lo = left_.is_neg_inf() ? ExtReal(points_.front().theta) : ExtReal::neg_inf();
  const ExtReal hi = right_.is_pos_inf() ? ExtReal(points_.back().theta) : ExtReal::pos_inf();
  return Interval(lo, hi);
}

ExtReal PiecewiseLinearConvex::eval(double theta) const {
  const auto& first = points_.front();
  const auto& last = points_.back();
  if (theta < first.theta) {
    if (left_.is_neg_inf()) return ExtReal::pos_inf();
    return first.value + left_.value() * (theta - first.theta);
  }
  if (theta > last.theta) {
    if (right_.is_pos_inf()) return ExtReal::pos_inf();
    return last.value + right_.value() * (theta - last.theta);
  }
  auto it = std::lower_bound(points_.begin(), points_.end(), theta,
                             [](const Breakpoint& p, double t) { return p.theta < t; });
  if (it->theta == theta) return it->value;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (theta - lo.theta) / (hi.theta - lo.theta);
  return lo.value + w * (hi.value - lo.value);
}

ExtReal PiecewiseLinearConvex::dplus(double theta) const {
  if (theta < points_.front().theta) return left_;
  if (theta >= points_.back().theta) return right_;
  auto it = std::upper_bound(points_.begin(), points_.end(), theta,
                             [](double t, const Breakpoint& p) { return t < p.theta; });
  return slope_between(*(it - 1), *it);
}

ExtReal PiecewiseLinearConvex::dminus(double theta) const {
  if (theta <= points_.front().theta) return left_;
  if (theta > points_.back().theta) return right_;
  auto it = std::lower_bound(points_.begin(), points_.end(), theta,
                             [](const Breakpoint& p, double t) { return p.theta < t; });
  return slope_between(*(it - 1), *it);
}

std::vector<double> PiecewiseLinearConvex::segment_slopes() const {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) out.push_back(slope_between(points_[i], points_[i + 1]));
  return out;
}

PiecewiseLinearConvex::ExactMin PiecewiseLinearConvex::minimize_over(const Interval& over) const {
  const Interval dom = domain().intersect(over);
  if (dom.empty()) throw DomainError("minimize over an interval disjoint from the domain");
  const ExtReal a = dom.lo();
  const ExtReal b = dom.hi();

  if (a.is_neg_inf() && left_ > 0.0) {
    return {ExtReal::neg_inf(), ExtReal::neg_inf(), ExtReal::neg_inf()};
  }
  if (b.is_pos_inf() && right_ < 0.0) {
    return {ExtReal::pos_inf(), ExtReal::pos_inf(), ExtReal::neg_inf()};
  }

  std::vector<double> candidates;
  if (a.is_finite()) candidates.push_back(a.value());
  for (const auto& p : points_) {
    if (dom.contains(p.theta)) candidates.push_back(p.theta);
  }
  if (b.is_finite()) candidates.push_back(b.value());
  // An unbounded flat end is represented by the breakpoint where it starts;
  // when that breakpoint lies outside `over`, the clamped endpoint stands in.
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  double best = std::numeric_limits<double>::infinity();
  for (double t : candidates) best = std::min(best, eval(t).value());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double t : candidates) {
    if (near_equal(eval(t).value(), best)) {
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  }
  ExtReal arg_lo = lo;
  ExtReal arg_hi = hi;
  if (a.is_neg_inf() && left_ == 0.0 && lo <= points_.front().theta) arg_lo = ExtReal::neg_inf();
  if (b.is_pos_inf() && right_ == 0.0 && hi >= points_.back().theta) arg_hi = ExtReal::pos_inf();
  return {arg_lo, arg_hi, best};
}

PiecewiseLinearConvex PiecewiseLinearConvex::mix(std::span<const double> weights,
                                                 std::span<const PiecewiseLinearConvex> fns) {
  if (weights.size() != fns.size() || fns.empty()) {
    throw ConstructionError("mixture needs matching, non-empty weight and function lists");
  }
  Interval dom;
  for (std::size_t i = 0; i < fns.size(); ++i) {
    if (weights[i] > 0.0) dom = dom.intersect(fns[i].domain());
  }
  if (!dom.has_interior()) throw ConstructionError("mixture components share no common open domain");

  std::vector<double> thetas;
  for (std::size_t i = 0; i < fns.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    for (const auto& p : fns[i].points_) {
      if (dom.contains(p.theta)) thetas.push_back(p.theta);
    }
  }
  if (dom.lo().is_finite()) thetas.push_back(dom.lo().value());
  if (dom.hi().is_finite()) thetas.push_back(dom.hi().value());
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());

  std::vector<Breakpoint> points;
  points.reserve(thetas.size());
  for (double t : thetas) {
    double v = 0.0;
    for (std::size_t i = 0; i < fns.size(); ++i) {
      if (weights[i] > 0.0) v += weights[i] * fns[i].eval(t).value();
    }
    points.push_back({t, v});
  }
  ExtReal left = 0.0;
  ExtReal right = 0.0;
  if (dom.lo().is_finite()) {
    left = ExtReal::neg_inf();
  } else {
    for (std::size_t i = 0; i < fns.size(); ++i) {
      if (weights[i] > 0.0) left += weights[i] * fns[i].left_.value();
    }
  }
  if (dom.hi().is_finite()) {
    right = ExtReal::pos_inf();
  } else {
    for (std::size_t i = 0; i < fns.size(); ++i) {
      if (weights[i] > 0.0) right += weights[i] * fns[i].right_.value();
    }
  }
  return PiecewiseLinearConvex(std::move(points), left, right);
}

}  // namespace distfree
