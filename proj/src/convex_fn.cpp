#include "distfree/convex_fn.hpp"

namespace distfree {

ConvexFn::ConvexFn(Interval domain, Map eval, Map dplus, Map dminus) {
  if (domain.empty()) throw ConstructionError("convex function with empty domain");
  if (!eval || !dplus || !dminus) throw ConstructionError("convex function needs eval, D+ and D- maps");
  model_ = std::make_shared<const Model>(
      Model{std::move(domain), std::move(eval), std::move(dplus), std::move(dminus), nullptr});
}

ConvexFn::ConvexFn(PiecewiseLinearConvex pwl) {
  auto shared = std::make_shared<const PiecewiseLinearConvex>(std::move(pwl));
  model_ = std::make_shared<const Model>(Model{
      shared->domain(),
      [shared](double t) { return shared->eval(t); },
      [shared](double t) { return shared->dplus(t); },
      [shared](double t) { return shared->dminus(t); },
      shared,
  });
}

ExtReal ConvexFn::operator()(double theta) const {
  if (!model_->domain.contains(theta)) return ExtReal::pos_inf();
  return model_->eval(theta);
}

ExtReal ConvexFn::dplus(double theta) const {
  const Interval& dom = model_->domain;
  if (!dom.contains(theta)) {
    throw DomainError("D+ at " + ExtReal(theta).to_string() + " outside domain " + dom.to_string());
  }
  if (dom.hi().is_finite() && theta == dom.hi().value()) return ExtReal::pos_inf();
  return model_->dplus(theta);
}

ExtReal ConvexFn::dminus(double theta) const {
  const Interval& dom = model_->domain;
  if (!dom.contains(theta)) {
    throw DomainError("D- at " + ExtReal(theta).to_string() + " outside domain " + dom.to_string());
  }
  if (dom.lo().is_finite() && theta == dom.lo().value()) return ExtReal::neg_inf();
  return model_->dminus(theta);
}

}  // namespace distfree
