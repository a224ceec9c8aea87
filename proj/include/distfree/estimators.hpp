#pragma once

#include <optional>
#include <span>
#include <string>

#include "distfree/achievability.hpp"
#include "distfree/loss_families.hpp"

namespace distfree {

/// Theta_delta = theta0 + (1 - delta)(Theta - theta0).
struct StarRestriction {
  double theta0;
  double delta;
};

/// Throws DomainError unless Theta is compact and theta0 is interior;
/// ParameterError unless 0 <= delta <= 1.
Interval star_restrict(const Interval& theta, double theta0, double delta);

/// min(1, n^{-1/4}).
double delta_schedule(long long n);

/// Empirical risk minimizer over `over`; the midpoint of an argmin interval,
/// or an infinite endpoint when the empirical infimum is not attained.
/// Throws InputError for an empty sample.
ExtReal erm(const LossFamily& family, std::span<const double> sample, const Interval& over);

ExtReal restricted_erm(const LossFamily& family, std::span<const double> sample, const Interval& theta,
                       const StarRestriction& restriction);

/// One pass of projected subgradient steps on Theta_delta starting at
/// theta0, subgradient D+ l_z, step diam(Theta_delta) / (L sqrt(n)) with L
/// the Lipschitz constant of the family on Theta_delta; returns the average
/// of the n post-step iterates. Throws ConfigurationError when L is
/// infinite or Theta_delta touches the boundary of Theta while delta > 0.
double restricted_sgd(const LossFamily& family, std::span<const double> sample, const Interval& theta,
                      const StarRestriction& restriction);

/// Midpoint of the argmin interval of the pinball loss with alpha = 1 -
/// level, i.e. the empirical level-quantile. Throws InputError for an empty
/// sample and ParameterError unless 0 < level < 1.
double empirical_quantile(std::span<const double> sample, double level);

/// Descriptor used by the harness: {name, params}.
struct EstimatorSpec {
  enum class Kind { erm, restricted_erm, restricted_sgd, empirical_quantile };
  Kind kind = Kind::erm;
  std::optional<double> theta0;
  /// Fixed restriction; nullopt means delta_schedule(n).
  std::optional<double> delta;
  /// Quantile level; defaults to 1 - alpha of a quantile family.
  std::optional<double> level;

  std::string name() const;
  /// Throws ValidationError for an unknown name.
  static Kind parse_kind(const std::string& name);
};

/// Runs the estimator on a sample over the family's Theta.
ExtReal fit(const EstimatorSpec& spec, const LossFamily& family, std::span<const double> sample);

/// The interval the estimator's output is confined to.
Interval feasible_set(const EstimatorSpec& spec, const LossFamily& family, long long n);

}  // namespace distfree
