#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "distfree/convex_ops.hpp"
#include "distfree/loss_families.hpp"

namespace distfree {

struct SignedLipschitz {
  ExtReal minus;  // inf_z D- l_z(theta)
  ExtReal plus;   // sup_z D+ l_z(theta)
};

/// Throws DomainError unless theta lies in the interior of Theta.
SignedLipschitz signed_lipschitz(const LossFamily& family, double theta);

/// Lipschitz constant of every l_z on the compact `inner`, from the two
/// endpoint envelopes (both are monotone in theta). Throws DomainError
/// unless inner is compact and strictly inside Theta.
ExtReal compact_lipschitz(const LossFamily& family, const Interval& inner);

/// [theta_min, theta_max]: theta_min = inf{sup_dplus > 0}, theta_max =
/// sup{inf_dminus < 0}. May come out reversed (theta_max < theta_min) when
/// every loss is constant on the gap; `reversed()` reports that case.
struct AchievableSet {
  ExtReal theta_min;
  ExtReal theta_max;
  bool reversed() const { return theta_max < theta_min; }
  /// The closed interval between the two values.
  Interval hull() const;
};

AchievableSet achievable_interval(const LossFamily& family, const SearchOptions& opts = {});

/// Clamp into the achievable interval; in the reversed case any point of
/// [theta_max, theta_min] minimizes every loss and the clamp lands there.
double project_achievable(const LossFamily& family, double theta, const SearchOptions& opts = {});
double project_achievable(const AchievableSet& set, double theta);

enum class Condition { c1, c2 };
enum class Verdict { holds, fails, inconclusive };

std::string to_string(Condition c);
std::string to_string(Verdict v);

/// Evidence for a verdict: a parameter point, a sample point, or a compact.
struct Witness {
  enum class Kind { theta, z, interval };
  Kind kind;
  double point = 0.0;
  Interval interval;
};

struct ConditionReport {
  Condition condition;
  Verdict verdict;
  std::optional<Witness> witness;
  /// C1: compact -> Lipschitz constant. C2: probe -> sup of the gap.
  std::vector<std::pair<Interval, ExtReal>> constants;
};

/// Holds iff compact_lipschitz is finite on every requested compact.
ConditionReport check_condition_c1(const LossFamily& family, const std::vector<Interval>& inner_compacts);

/// Holds iff sup_z gap(z, probe) <= epsilon (up to 1e-12); inconclusive when
/// the family has no oracle for the supremum.
ConditionReport check_condition_c2(const LossFamily& family, double epsilon, const Interval& probe);

}  // namespace distfree
