#include "distfree/stationarity.hpp"

#include <algorithm>
#include <cmath>

#include "distfree/estimators.hpp"
#include "distfree/parallel.hpp"
#include "distfree/quadrature.hpp"

namespace distfree {

double stationarity_error(const ConvexFn& f, double theta, double g_min) {
  const ExtReal worst = max(-f.dplus(theta), f.dminus(theta));
  const ExtReal positive = max(worst, 0.0);
  if (!positive.is_finite()) return std::numeric_limits<double>::infinity();
  return positive.value() - g_min;
}

double g_min_oracle(const ConvexFn& f, const SearchOptions& opts) {
  const Interval arg = argmin_interval(f, f.domain(), opts);
  const bool unattained_right = arg.lo().is_pos_inf();
  const bool unattained_left = arg.hi().is_neg_inf();
  if (!unattained_right && !unattained_left) return 0.0;
  if (const auto* pwl = f.piecewise()) {
    return std::abs((unattained_right ? pwl->right_slope() : pwl->left_slope()).value());
  }
  const ExtReal slope = unattained_right ? f.dminus(opts.window) : f.dplus(-opts.window);
  return std::abs(slope.value());
}

std::pair<double, double> quantile_coverage(const DiscreteDist& p, double theta) {
  return {p.cdf_lt(theta), p.cdf_le(theta)};
}

std::pair<double, double> quantile_coverage(const CdfOracle& p, double theta) {
  return {p.cdf_lt(theta), p.cdf_le(theta)};
}

ConvexFn pinball_population_loss(const CdfOracle& p, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("pinball level alpha must lie in (0, 1)");
  auto dplus = [p, alpha](double t) { return ExtReal(p.cdf_le(t) - (1.0 - alpha)); };
  auto dminus = [p, alpha](double t) { return ExtReal(p.cdf_lt(t) - (1.0 - alpha)); };
  auto eval = [p, alpha](double t) {
    if (t == 0.0) return ExtReal(0.0);
    auto slope = [&](double s) { return p.cdf_le(s) - (1.0 - alpha); };
    return ExtReal(t > 0.0 ? adaptive_simpson(slope, 0.0, t) : -adaptive_simpson(slope, t, 0.0));
  };
  return ConvexFn(Interval::real_line(), eval, dplus, dminus);
}

ConcentrationResult concentration_experiment(const LossFamily& family, const CdfOracle& p, long long n, double t,
                                             std::uint64_t reps, std::uint64_t seed, unsigned threads) {
  if (family.name() != "quantile") {
    throw ConfigurationError("concentration experiment needs a uniformly Lipschitz quantile family, got '" +
                             family.name() + "'");
  }
  if (reps == 0) throw InputError("concentration experiment needs at least one replication");
  if (n < 1) throw InputError("concentration experiment needs n >= 1");
  if (!(t > 0.0)) throw ParameterError("concentration experiment needs t > 0");

  const double alpha = family.param("alpha");
  const double lipschitz = std::max(alpha, 1.0 - alpha);
  const ConvexFn population = pinball_population_loss(p, alpha);
  const double g_min = g_min_oracle(population);

  std::vector<ConcentrationRow> rows(reps);
  parallel_for(reps, threads, [&](std::uint64_t rep) {
    RandomStream rng = seeded_stream(seed, rep);
    const std::vector<double> sample = p.sample(static_cast<std::size_t>(n), rng);
    const double theta_hat = empirical_quantile(sample, 1.0 - alpha);
    const double error = stationarity_error(population, theta_hat, g_min);
    rows[rep] = {rep, theta_hat, error, error > t};
  });

  std::uint64_t exceeded = 0;
  for (const auto& row : rows) exceeded += row.exceeded ? 1 : 0;
  const double nn = static_cast<double>(n);
  ConcentrationSummary summary{static_cast<double>(exceeded) / static_cast<double>(reps),
                               2.0 * std::exp(-nn * t * t / (2.0 * lipschitz * lipschitz)),
                               n,
                               t,
                               alpha,
                               reps};
  return {std::move(rows), summary};
}

}  // namespace distfree
