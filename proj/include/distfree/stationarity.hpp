#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "distfree/convex_ops.hpp"
#include "distfree/distributions.hpp"
#include "distfree/loss_families.hpp"

namespace distfree {

/// [max{-D+ f(theta), D- f(theta)}]_+ - g_min.
double stationarity_error(const ConvexFn& f, double theta, double g_min);

/// inf over the domain of the smallest subgradient magnitude: 0 when f
/// attains its minimum, otherwise the limiting |slope| at the end f
/// descends towards (exact for piecewise-linear f).
double g_min_oracle(const ConvexFn& f, const SearchOptions& opts = {});

/// (P(Z < theta), P(Z <= theta)).
std::pair<double, double> quantile_coverage(const DiscreteDist& p, double theta);
std::pair<double, double> quantile_coverage(const CdfOracle& p, double theta);

/// Population pinball loss at level alpha, normalised to vanish at 0, with
/// D+ = F(theta) - (1 - alpha) and D- = F(theta-) - (1 - alpha) read from
/// the CDF; values come from quadrature of D+.
ConvexFn pinball_population_loss(const CdfOracle& p, double alpha);

struct StationarityResult {
  double theta_hat;
  double error;
  double g_min;
  std::optional<std::pair<double, double>> coverage;
};

struct ConcentrationRow {
  std::uint64_t rep;
  double theta_hat;
  double stat_error;
  bool exceeded;
};

struct ConcentrationSummary {
  double freq;
  double bound;
  long long n;
  double t;
  double alpha;
  std::uint64_t reps;
};

struct ConcentrationResult {
  std::vector<ConcentrationRow> rows;
  ConcentrationSummary summary;
};

/// Fits the empirical quantile on `reps` samples of size n and counts how
/// often the population stationarity error exceeds t; the bound is
/// 2 exp(-n t^2 / (2 L^2)) with L = max(alpha, 1 - alpha). Only quantile
/// families qualify (ConfigurationError otherwise); reps = 0 is an
/// InputError. threads = 0 picks the hardware concurrency.
ConcentrationResult concentration_experiment(const LossFamily& family, const CdfOracle& p, long long n, double t,
                                             std::uint64_t reps, std::uint64_t seed, unsigned threads = 0);

}  // namespace distfree
