#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "distfree/estimators.hpp"
#include "distfree/separation.hpp"
#include "distfree/serialization.hpp"
#include "distfree/stationarity.hpp"

namespace distfree {

/// Monte Carlo estimate of E[L_P(theta_hat)] - inf L_P. The mean is +inf
/// exactly when some replication landed where L_P is +inf; stderr is taken
/// over the finite replications.
struct RiskEstimate {
  ExtReal mean_excess;
  double stderr_ = 0.0;
  long long n = 0;
  std::string estimator;
  std::uint64_t inf_count = 0;
  std::uint64_t reps = 0;
  /// Per-replication excess, in replication order.
  std::vector<ExtReal> values;
};

/// Excess of L_P at theta_hat over inf L_P. An infinite theta_hat is scored
/// by the limit of L_P along that direction.
ExtReal excess_at(const ConvexFn& population, ExtReal optimum, ExtReal theta_hat);

/// Replication r draws its sample from seeded_stream(seed, r); the result
/// does not depend on `threads` (0 = hardware concurrency).
RiskEstimate excess_risk(const LossFamily& family, const DiscreteDist& p, const EstimatorSpec& estimator, long long n,
                         std::uint64_t reps, std::uint64_t seed, unsigned threads = 0);

struct EstimatorFloorCheck {
  std::string estimator;
  RiskEstimate risk_p0;
  RiskEstimate risk_p1;
  /// The larger of the two means and its stderr.
  ExtReal worst_mean;
  double worst_stderr;
  /// worst_mean >= floor - 3 * worst_stderr.
  bool floor_holds;
};

struct HardInstanceReport {
  /// dopt_lb / 2 * (1 - tv_product_bound(tv(P0, P1), n)).
  double floor;
  std::vector<EstimatorFloorCheck> checks;
};

/// Re-verifies the instance (ValidationError if it does not certify) and
/// compares every estimator's worst-case risk against the floor.
HardInstanceReport hard_instance_report(const HardInstance& instance, const std::vector<EstimatorSpec>& estimators,
                                        std::uint64_t reps, std::uint64_t seed, unsigned threads = 0);

enum class ExperimentKind { risk_curve, hard_instance, stationarity, condition_report };

struct NamedDist {
  std::string id;
  DiscreteDist dist;
};

/// A hard pair rebuilt for every n of the grid with delta = scale / n.
struct PairSchedule {
  std::string constructor;
  Json params;
  double delta_scale = 0.5;
};

struct ExperimentConfig {
  std::string experiment_id = "experiment";
  ExperimentKind kind = ExperimentKind::risk_curve;
  std::optional<LossFamily> family;
  std::vector<NamedDist> distributions;
  std::optional<PairSchedule> pair_schedule;
  std::optional<HardInstance> instance;
  std::vector<EstimatorSpec> estimators;
  std::vector<long long> n_grid;
  std::uint64_t replications = 100;
  std::uint64_t seed = 0;
  std::string output;
  unsigned threads = 0;
  bool per_rep_rows = false;

  // stationarity
  std::optional<CdfOracle> sampler;
  double t = 0.05;

  // condition_report
  std::vector<Interval> compacts;
  std::optional<double> epsilon;
  std::optional<Interval> probe;
};

/// Parses and validates a JSON config; throws ValidationError for
/// replications < 1, an empty or non-increasing n_grid, or descriptors that
/// do not resolve.
ExperimentConfig parse_config(const Json& j);
std::string to_string(ExperimentKind k);

/// One output row; columns fixed as experiment_id, kind, family,
/// distribution_id, estimator, n, rep, value, stderr, inf_count, seed.
struct ResultRow {
  std::string experiment_id;
  std::string kind;
  std::string family;
  std::string distribution_id;
  std::string estimator;
  long long n;
  std::optional<std::uint64_t> rep;  // nullopt: summary row
  ExtReal value;
  std::optional<double> stderr_;
  std::uint64_t inf_count;
  std::uint64_t seed;
};

/// Sweeps excess_risk over n_grid x estimators x distributions (or the
/// scheduled hard pair, both members). Throws ValidationError for an empty
/// n_grid.
std::vector<ResultRow> risk_curve(const ExperimentConfig& config);

/// Rows for a hard_instance experiment: one summary row per estimator and
/// member plus a "floor" row.
std::vector<ResultRow> hard_instance_rows(const ExperimentConfig& config);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
Json rows_to_json(const std::vector<ResultRow>& rows);

void write_stationarity_csv(std::ostream& out, const ConcentrationResult& result);
Json summary_to_json(const ConcentrationSummary& s);

}  // namespace distfree
