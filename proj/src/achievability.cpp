#include "distfree/achievability.hpp"

#include <algorithm>
#include <cmath>

namespace distfree {

namespace {

constexpr double kVerdictSlack = 1e-12;

struct Bracket {
  double lo;
  double hi;
};

Bracket window(const Interval& dom, const SearchOptions& opts) {
  const double lo = dom.lo().is_finite() ? dom.lo().value() : std::min(-opts.window, dom.hi().value());
  const double hi = dom.hi().is_finite() ? dom.hi().value() : std::max(opts.window, dom.lo().value());
  return {lo, hi};
}

// theta_min: the predicate sup_dplus > 0 is monotone (false then true).
ExtReal locate_theta_min(const LossFamily& family, const SearchOptions& opts) {
  const Interval& dom = family.theta_domain();
  const auto [lo, hi] = window(dom, opts);
  auto positive = [&](double t) { return family.sup_dplus(t) > 0.0; };
  if (positive(lo)) return dom.lo().is_finite() ? ExtReal(lo) : ExtReal::neg_inf();
  if (!positive(hi)) return dom.hi().is_finite() ? ExtReal(hi) : ExtReal::pos_inf();
  double a = lo;
  double b = hi;
  for (int i = 0; i < opts.max_iter && b - a > opts.tol; ++i) {
    const double mid = a + 0.5 * (b - a);
    if (mid <= a || mid >= b) break;
    (positive(mid) ? b : a) = mid;
  }
  return 0.5 * (a + b);
}

// theta_max: the predicate inf_dminus < 0 is monotone (true then false).
ExtReal locate_theta_max(const LossFamily& family, const SearchOptions& opts) {
  const Interval& dom = family.theta_domain();
  const auto [lo, hi] = window(dom, opts);
  auto negative = [&](double t) { return family.inf_dminus(t) < 0.0; };
  if (negative(hi)) return dom.hi().is_finite() ? ExtReal(hi) : ExtReal::pos_inf();
  if (!negative(lo)) return dom.lo().is_finite() ? ExtReal(lo) : ExtReal::neg_inf();
  double a = lo;
  double b = hi;
  for (int i = 0; i < opts.max_iter && b - a > opts.tol; ++i) {
    const double mid = a + 0.5 * (b - a);
    if (mid <= a || mid >= b) break;
    (negative(mid) ? a : b) = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace

SignedLipschitz signed_lipschitz(const LossFamily& family, double theta) {
  if (!family.theta_domain().contains_in_interior(theta)) {
    throw DomainError("signed Lipschitz constants need theta in the interior of Theta");
  }
  return {family.inf_dminus(theta), family.sup_dplus(theta)};
}

ExtReal compact_lipschitz(const LossFamily& family, const Interval& inner) {
  if (!inner.is_compact() || !inner.strictly_inside(family.theta_domain())) {
    throw DomainError("compact " + inner.to_string() + " is not strictly inside Theta = " +
                      family.theta_domain().to_string());
  }
  const ExtReal right = family.sup_dplus(inner.hi().value());
  const ExtReal left = -family.inf_dminus(inner.lo().value());
  return max(right, left);
}

Interval AchievableSet::hull() const {
  return reversed() ? Interval(theta_max, theta_min) : Interval(theta_min, theta_max);
}

AchievableSet achievable_interval(const LossFamily& family, const SearchOptions& opts) {
  if (auto hint = family.extreme_minimizers()) return {hint->lo(), hint->hi()};
  return {locate_theta_min(family, opts), locate_theta_max(family, opts)};
}

double project_achievable(const AchievableSet& set, double theta) { return set.hull().clamp(theta); }

double project_achievable(const LossFamily& family, double theta, const SearchOptions& opts) {
  return project_achievable(achievable_interval(family, opts), theta);
}

std::string to_string(Condition c) { return c == Condition::c1 ? "C1" : "C2"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

ConditionReport check_condition_c1(const LossFamily& family, const std::vector<Interval>& inner_compacts) {
  ConditionReport report{Condition::c1, Verdict::holds, std::nullopt, {}};
  for (const auto& compact : inner_compacts) {
    const ExtReal constant = compact_lipschitz(family, compact);
    report.constants.emplace_back(compact, constant);
    if (!constant.is_finite() && report.verdict == Verdict::holds) {
      report.verdict = Verdict::fails;
      report.witness = Witness{Witness::Kind::interval, 0.0, compact};
    }
  }
  return report;
}

ConditionReport check_condition_c2(const LossFamily& family, double epsilon, const Interval& probe) {
  if (!(epsilon > 0.0)) throw ParameterError("condition C2 needs epsilon > 0");
  ConditionReport report{Condition::c2, Verdict::inconclusive, std::nullopt, {}};
  const auto sup = family.sup_gap(probe, epsilon);
  if (!sup) return report;
  report.constants.emplace_back(probe, sup->value);
  if (sup->value <= epsilon + kVerdictSlack) {
    report.verdict = Verdict::holds;
  } else {
    report.verdict = Verdict::fails;
    if (sup->witness) report.witness = Witness{Witness::Kind::z, *sup->witness, Interval::empty_set()};
  }
  return report;
}

}  // namespace distfree
