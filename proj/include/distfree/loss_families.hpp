#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "distfree/convex_fn.hpp"

namespace distfree {

/// The set Z of possible observations: a finite list of real atoms or a
/// real interval.
class SampleSpace {
 public:
  /// Throws ConstructionError for an empty or duplicated list.
  static SampleSpace atoms(std::vector<double> points);
  /// Throws ConstructionError for an empty interval.
  static SampleSpace interval(Interval range);
  static SampleSpace real_line() { return interval(Interval::real_line()); }

  bool is_finite() const { return std::holds_alternative<std::vector<double>>(data_); }
  /// Sorted atoms; throws DomainError for interval spaces.
  const std::vector<double>& points() const;
  /// Smallest interval containing Z.
  Interval hull() const;
  bool contains(double z) const;

 private:
  explicit SampleSpace(std::variant<std::vector<double>, Interval> data) : data_(std::move(data)) {}
  std::variant<std::vector<double>, Interval> data_;
};

struct PerZMin {
  ExtReal argmin;
  ExtReal value;
};

/// sup over z of gap(z, I), with a sample point attaining it. When the sup
/// is infinite the witness is a point whose gap exceeds the requested
/// epsilon.
struct GapSup {
  ExtReal value;
  std::optional<double> witness;
};

/// Monotone rate function r on [1, inf) with r(1) = 1, used to build the
/// arbitrarily-slow-rate losses.
class RateFunction {
 public:
  /// r(x) = x^p, p > 0, with the closed-form antiderivative.
  static RateFunction power(double p);
  /// Only r^{-1} is given: r is recovered by bisection and the integral by
  /// adaptive quadrature. Throws ParameterError when r_inverse(1) != 1 or a
  /// sampled value is not increasing.
  static RateFunction from_inverse(std::function<double(double)> r_inverse, std::string name = "custom");

  double r(double x) const;
  double r_inverse(double y) const;
  /// int_theta^1 r^{-1}(1/t) dt. At theta = 0 power rates use the closed
  /// form (+inf when it diverges); rates given by their inverse report +inf.
  ExtReal tail_integral(double theta) const;

  const std::string& name() const { return name_; }
  std::optional<double> power_exponent() const { return power_; }

 private:
  RateFunction() = default;
  std::string name_;
  std::optional<double> power_;
  std::function<double(double)> r_;
  std::function<double(double)> r_inverse_;
};

/// Behaviour shared by every loss family; concrete families live in the
/// implementation file.
class FamilyModel {
 public:
  virtual ~FamilyModel() = default;

  virtual ConvexFn loss_at(double z) const = 0;
  /// sup_z D+ l_z(theta) at a point strictly inside Theta.
  virtual ExtReal sup_dplus(double theta) const = 0;
  /// inf_z D- l_z(theta) at a point strictly inside Theta.
  virtual ExtReal inf_dminus(double theta) const = 0;
  virtual PerZMin per_z_min(double z) const = 0;
  /// inf over I of l_z minus inf over Theta of l_z.
  virtual ExtReal gap(double z, const Interval& over) const = 0;
  /// Analytic sup over Z of gap(., I); nullopt when no oracle exists.
  virtual std::optional<GapSup> sup_gap(const Interval& over, double epsilon) const;
  /// A sample point whose D+ at theta is <= bound, if Z has one.
  virtual std::optional<double> z_with_dplus_at_most(double theta, double bound) const;
  /// A sample point whose D+ at theta is >= bound, if Z has one.
  virtual std::optional<double> z_with_dplus_at_least(double theta, double bound) const;
  /// Closed-form [theta_min, theta_max] when known.
  virtual std::optional<Interval> extreme_minimizers() const { return std::nullopt; }

  std::string name;
  std::map<std::string, double> params;
  SampleSpace space = SampleSpace::real_line();
  Interval theta_domain;
  std::optional<RateFunction> rate;
  std::map<double, PiecewiseLinearConvex> table;
};

/// A sample space, a parameter space Theta, and z -> l_z with the analytic
/// oracles the condition checkers and lower-bound constructions query.
/// Immutable; copies share the model.
class LossFamily {
 public:
  explicit LossFamily(std::shared_ptr<const FamilyModel> model);

  const std::string& name() const { return model_->name; }
  const std::map<std::string, double>& params() const { return model_->params; }
  /// Throws DomainError when the parameter is absent.
  double param(const std::string& key) const;
  const SampleSpace& space() const { return model_->space; }
  const Interval& theta_domain() const { return model_->theta_domain; }
  const std::optional<RateFunction>& rate() const { return model_->rate; }
  const std::map<double, PiecewiseLinearConvex>& table() const { return model_->table; }

  /// Throws InputError when z is not in Z.
  ConvexFn loss_at(double z) const;

  /// Envelopes over z; at a finite right endpoint of Theta sup_dplus is
  /// +inf and at a finite left endpoint inf_dminus is -inf, matching the
  /// endpoint conventions of ConvexFn. Outside Theta: DomainError.
  ExtReal sup_dplus(double theta) const;
  ExtReal inf_dminus(double theta) const;

  PerZMin per_z_min(double z) const;
  ExtReal gap(double z, const Interval& over) const;
  std::optional<GapSup> sup_gap(const Interval& over, double epsilon) const;
  std::optional<double> z_with_dplus_at_most(double theta, double bound) const;
  std::optional<double> z_with_dplus_at_least(double theta, double bound) const;
  std::optional<Interval> extreme_minimizers() const { return model_->extreme_minimizers(); }

 private:
  std::shared_ptr<const FamilyModel> model_;
};

/// alpha-quantile (pinball) losses normalised to vanish at theta = 0;
/// Theta = R. Throws ParameterError unless 0 < alpha < 1.
LossFamily quantile_family(double alpha, SampleSpace space = SampleSpace::real_line());

/// Z = {0, 1}, Theta = [0, 1], l_1 = log(1/t), l_0 = log(1/(1-t)).
LossFamily bernoulli_log_family();

/// l_z(t) = (t - z)^2 / 2 on Theta (default [0, 1]).
LossFamily squared_family(SampleSpace space = SampleSpace::real_line(), Interval theta = Interval(0.0, 1.0));

/// Z = {-1, 1}, Theta = R, l_z(t) = exp(z t).
LossFamily exponential_family();

/// Z = {0, 1}, Theta = [0, 1], l_z(t) = t + z int_t^1 r^{-1}(1/s) ds with
/// l_1(0) = +inf.
LossFamily norate_family(RateFunction rate);

/// Finite family given by a table of piecewise-linear losses sharing one
/// domain. Throws ConstructionError for an empty table or mismatched
/// domains.
LossFamily piecewise_family(std::map<double, PiecewiseLinearConvex> table);

}  // namespace distfree
