#pragma once

#include <functional>
#include <memory>

#include "distfree/ext_real.hpp"
#include "distfree/interval.hpp"
#include "distfree/piecewise_linear.hpp"

namespace distfree {

/// Closed convex function of one real variable with its one-sided
/// derivatives.
///
/// The domain is a closed interval; the function is +inf outside it. At a
/// finite right endpoint D+ is +inf and at a finite left endpoint D- is
/// -inf, matching a jump to +inf beyond the domain. Evaluating D+/D- at a
/// point outside the domain throws DomainError.
///
/// Values are immutable and cheap to copy.
class ConvexFn {
 public:
  using Map = std::function<ExtReal(double)>;

  ConvexFn(Interval domain, Map eval, Map dplus, Map dminus);
  ConvexFn(PiecewiseLinearConvex pwl);  // NOLINT(google-explicit-constructor)

  const Interval& domain() const { return model_->domain; }

  ExtReal operator()(double theta) const;
  ExtReal dplus(double theta) const;
  ExtReal dminus(double theta) const;

  /// Non-null when the function is known to be piecewise linear.
  const PiecewiseLinearConvex* piecewise() const { return model_->pwl.get(); }

 private:
  struct Model {
    Interval domain;
    Map eval;
    Map dplus;
    Map dminus;
    std::shared_ptr<const PiecewiseLinearConvex> pwl;
  };
  std::shared_ptr<const Model> model_;
};

inline ExtReal dplus(const ConvexFn& f, double theta) { return f.dplus(theta); }
inline ExtReal dminus(const ConvexFn& f, double theta) { return f.dminus(theta); }

}  // namespace distfree
