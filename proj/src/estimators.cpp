#include "distfree/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "distfree/distributions.hpp"
#include "distfree/separation.hpp"

namespace distfree {

Interval star_restrict(const Interval& theta, double theta0, double delta) {
  if (!theta.is_compact()) throw DomainError("star restriction needs a compact Theta");
  if (!theta.contains_in_interior(theta0)) throw DomainError("star restriction anchor must be interior to Theta");
  if (!(delta >= 0.0 && delta <= 1.0)) throw ParameterError("star restriction needs delta in [0, 1]");
  const double s = 1.0 - delta;
  const double lo = theta0 + s * (theta.lo().value() - theta0);
  const double hi = theta0 + s * (theta.hi().value() - theta0);
  return Interval(std::min(lo, theta0), std::max(hi, theta0));
}

double delta_schedule(long long n) {
  if (n < 1) throw ParameterError("delta_schedule needs n >= 1");
  return std::min(1.0, std::pow(static_cast<double>(n), -0.25));
}

ExtReal erm(const LossFamily& family, std::span<const double> sample, const Interval& over) {
  const DiscreteDist empirical = DiscreteDist::empirical(sample);
  return minimize(population_loss(family, empirical), over).argmin;
}

ExtReal restricted_erm(const LossFamily& family, std::span<const double> sample, const Interval& theta,
                       const StarRestriction& restriction) {
  return erm(family, sample, star_restrict(theta, restriction.theta0, restriction.delta));
}

double restricted_sgd(const LossFamily& family, std::span<const double> sample, const Interval& theta,
                      const StarRestriction& restriction) {
  if (sample.empty()) throw InputError("restricted_sgd on an empty sample");
  const Interval feasible = star_restrict(theta, restriction.theta0, restriction.delta);
  const double diameter = feasible.length().value();
  if (diameter == 0.0) return restriction.theta0;
  if (!feasible.strictly_inside(family.theta_domain())) {
    throw ConfigurationError("restricted_sgd needs delta > 0 so that Theta_delta is interior");
  }
  const ExtReal lipschitz = compact_lipschitz(family, feasible);
  if (!lipschitz.is_finite()) {
    throw ConfigurationError("restricted_sgd: infinite Lipschitz constant on " + feasible.to_string());
  }
  if (lipschitz.value() == 0.0) return restriction.theta0;
  const double eta = diameter / (lipschitz.value() * std::sqrt(static_cast<double>(sample.size())));

  double theta_t = restriction.theta0;
  double sum = 0.0;
  for (double z : sample) {
    const ExtReal g = family.loss_at(z).dplus(theta_t);
    if (!g.is_finite()) throw ConfigurationError("restricted_sgd met an infinite subgradient");
    theta_t = feasible.clamp(theta_t - eta * g.value());
    sum += theta_t;
  }
  return feasible.clamp(sum / static_cast<double>(sample.size()));
}

double empirical_quantile(std::span<const double> sample, double level) {
  if (sample.empty()) throw InputError("empirical quantile of an empty sample");
  if (!(level > 0.0 && level < 1.0)) throw ParameterError("quantile level must lie in (0, 1)");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  const double target = n * level;
  const double k = std::round(target);
  // F_n(theta) = level on a whole gap between order statistics.
  if (std::abs(target - k) <= 1e-12 * n && k > 0.0 && k < n) {
    const auto i = static_cast<std::size_t>(k);
    return 0.5 * (x[i - 1] + x[i]);
  }
  const auto i = static_cast<std::size_t>(std::ceil(target));
  return x[std::min(std::max<std::size_t>(i, 1), x.size()) - 1];
}

std::string EstimatorSpec::name() const {
  switch (kind) {
    case Kind::erm:
      return "erm";
    case Kind::restricted_erm:
      return "restricted_erm";
    case Kind::restricted_sgd:
      return "restricted_sgd";
    case Kind::empirical_quantile:
      return "empirical_quantile";
  }
  return "erm";
}

EstimatorSpec::Kind EstimatorSpec::parse_kind(const std::string& name) {
  if (name == "erm") return Kind::erm;
  if (name == "restricted_erm") return Kind::restricted_erm;
  if (name == "restricted_sgd") return Kind::restricted_sgd;
  if (name == "empirical_quantile") return Kind::empirical_quantile;
  throw ValidationError("unknown estimator '" + name + "'");
}

namespace {

StarRestriction restriction_for(const EstimatorSpec& spec, const LossFamily& family, long long n) {
  const Interval& theta = family.theta_domain();
  double theta0 = 0.0;
  if (spec.theta0) {
    theta0 = *spec.theta0;
  } else if (theta.is_compact()) {
    theta0 = theta.midpoint();
  } else {
    throw ConfigurationError(spec.name() + " needs theta0 when Theta is unbounded");
  }
  return {theta0, spec.delta ? *spec.delta : delta_schedule(n)};
}

double quantile_level(const EstimatorSpec& spec, const LossFamily& family) {
  if (spec.level) return *spec.level;
  if (family.name() == "quantile") return 1.0 - family.param("alpha");
  throw ConfigurationError("empirical_quantile needs a level for family '" + family.name() + "'");
}

}  // namespace

ExtReal fit(const EstimatorSpec& spec, const LossFamily& family, std::span<const double> sample) {
  const auto n = static_cast<long long>(sample.size());
  switch (spec.kind) {
    case EstimatorSpec::Kind::erm:
      return erm(family, sample, family.theta_domain());
    case EstimatorSpec::Kind::restricted_erm:
      return restricted_erm(family, sample, family.theta_domain(), restriction_for(spec, family, n));
    case EstimatorSpec::Kind::restricted_sgd:
      return restricted_sgd(family, sample, family.theta_domain(), restriction_for(spec, family, n));
    case EstimatorSpec::Kind::empirical_quantile:
      return empirical_quantile(sample, quantile_level(spec, family));
  }
  throw ConfigurationError("unknown estimator kind");
}

Interval feasible_set(const EstimatorSpec& spec, const LossFamily& family, long long n) {
  switch (spec.kind) {
    case EstimatorSpec::Kind::restricted_erm:
    case EstimatorSpec::Kind::restricted_sgd: {
      const StarRestriction r = restriction_for(spec, family, n);
      return star_restrict(family.theta_domain(), r.theta0, r.delta);
    }
    default:
      return family.theta_domain();
  }
}

}  // namespace distfree
