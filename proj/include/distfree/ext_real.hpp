#pragma once

#include <compare>
#include <limits>
#include <string>

#include "distfree/errors.hpp"

namespace distfree {

/// A real number or one of +inf / -inf.
///
/// NaN is never representable: constructing from NaN and every
/// indeterminate combination ((+inf) + (-inf), 0 * inf) throws
/// IndeterminateForm instead of propagating silently.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
    if (v != v) throw IndeterminateForm("NaN is not an extended real");
  }

  static constexpr ExtReal pos_inf() { return ExtReal(std::numeric_limits<double>::infinity()); }
  static constexpr ExtReal neg_inf() { return ExtReal(-std::numeric_limits<double>::infinity()); }

  constexpr double value() const { return v_; }
  constexpr bool is_finite() const { return v_ - v_ == 0.0; }
  constexpr bool is_pos_inf() const { return v_ == std::numeric_limits<double>::infinity(); }
  constexpr bool is_neg_inf() const { return v_ == -std::numeric_limits<double>::infinity(); }

  friend constexpr ExtReal operator-(ExtReal a) { return ExtReal(-a.v_); }

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf())) {
      throw IndeterminateForm("(+inf) + (-inf)");
    }
    return ExtReal(a.v_ + b.v_);
  }
  friend ExtReal operator-(ExtReal a, ExtReal b) { return a + (-b); }

  friend ExtReal operator*(ExtReal a, ExtReal b) {
    if ((a.v_ == 0.0 && !b.is_finite()) || (b.v_ == 0.0 && !a.is_finite())) {
      throw IndeterminateForm("0 * inf");
    }
    return ExtReal(a.v_ * b.v_);
  }

  ExtReal& operator+=(ExtReal other) { return *this = *this + other; }

  friend constexpr bool operator==(ExtReal, ExtReal) = default;
  friend constexpr std::partial_ordering operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }

  /// "inf" / "-inf" for infinities, shortest round-trip decimal otherwise.
  std::string to_string() const;
  /// Accepts "inf", "+inf", "-inf", "infinity" variants and decimal literals.
  static ExtReal parse(const std::string& text);

 private:
  double v_ = 0.0;
};

inline ExtReal max(ExtReal a, ExtReal b) { return a < b ? b : a; }
inline ExtReal min(ExtReal a, ExtReal b) { return b < a ? b : a; }

}  // namespace distfree
