#include "distfree/interval.hpp"

#include <algorithm>

namespace distfree {

Interval::Interval(ExtReal lo, ExtReal hi) : lo_(lo), hi_(hi) {
  if (hi < lo) {
    throw DomainError("interval with lo > hi: [" + lo.to_string() + ", " + hi.to_string() + "]");
  }
}

Interval Interval::empty_set() {
  Interval out;
  out.empty_ = true;
  out.lo_ = 0.0;
  out.hi_ = 0.0;
  return out;
}

ExtReal Interval::lo() const {
  if (empty_) throw DomainError("lower endpoint of the empty interval");
  return lo_;
}

ExtReal Interval::hi() const {
  if (empty_) throw DomainError("upper endpoint of the empty interval");
  return hi_;
}

bool Interval::contains(double x) const {
  if (empty_) return false;
  if (x != x) return false;
  const ExtReal e(x);
  if (!e.is_finite()) return false;
  return lo_ <= e && e <= hi_;
}

bool Interval::contains_in_interior(double x) const {
  if (empty_) return false;
  const ExtReal e(x);
  return e.is_finite() && lo_ < e && e < hi_;
}

ExtReal Interval::length() const {
  if (empty_) return 0.0;
  return hi_ - lo_;
}

double Interval::midpoint() const {
  if (!is_compact()) throw DomainError("midpoint of a non-compact interval " + to_string());
  return 0.5 * (lo_.value() + hi_.value());
}

double Interval::clamp(double x) const {
  if (empty_) throw DomainError("clamp into the empty interval");
  return std::clamp(x, lo_.value(), hi_.value());
}

Interval Interval::intersect(const Interval& other) const {
  if (empty_ || other.empty_) return empty_set();
  const ExtReal lo = max(lo_, other.lo_);
  const ExtReal hi = min(hi_, other.hi_);
  if (hi < lo) return empty_set();
  return Interval(lo, hi);
}

bool Interval::subset_of(const Interval& other) const {
  if (empty_) return true;
  if (other.empty_) return false;
  return other.lo_ <= lo_ && hi_ <= other.hi_;
}

bool Interval::strictly_inside(const Interval& outer) const {
  if (empty_) return true;
  if (outer.empty_) return false;
  const bool lo_ok = outer.lo_ < lo_ || (lo_.is_neg_inf() && outer.lo_.is_neg_inf());
  const bool hi_ok = hi_ < outer.hi_ || (hi_.is_pos_inf() && outer.hi_.is_pos_inf());
  return lo_ok && hi_ok;
}

bool operator==(const Interval& a, const Interval& b) {
  if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
  return a.lo_ == b.lo_ && a.hi_ == b.hi_;
}

std::string Interval::to_string() const {
  if (empty_) return "{}";
  return "[" + lo_.to_string() + ", " + hi_.to_string() + "]";
}

}  // namespace distfree
