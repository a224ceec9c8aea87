#include "distfree/separation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

namespace distfree {

namespace {

struct Aligned {
  std::vector<double> p0;
  std::vector<double> p1;
};

Aligned align(const DiscreteDist& a, const DiscreteDist& b) {
  std::set<double> support;
  for (const auto& x : a.atoms()) support.insert(x.z);
  for (const auto& x : b.atoms()) support.insert(x.z);
  Aligned out;
  for (double z : support) {
    out.p0.push_back(a.mass(z));
    out.p1.push_back(b.mass(z));
  }
  return out;
}

void require_bounded_below(const Minimum& m, const char* which) {
  if (m.value.is_neg_inf()) throw DomainError(std::string("dopt: ") + which + " is unbounded below");
}

}  // namespace

double tv(const DiscreteDist& p0, const DiscreteDist& p1) {
  const Aligned a = align(p0, p1);
  double total = 0.0;
  for (std::size_t i = 0; i < a.p0.size(); ++i) total += std::abs(a.p0[i] - a.p1[i]);
  return std::min(1.0, 0.5 * total);
}

double hellinger2(const DiscreteDist& p0, const DiscreteDist& p1) {
  const Aligned a = align(p0, p1);
  double total = 0.0;
  for (std::size_t i = 0; i < a.p0.size(); ++i) {
    const double d = std::sqrt(a.p0[i]) - std::sqrt(a.p1[i]);
    total += d * d;
  }
  return std::clamp(0.5 * total, 0.0, 1.0);
}

double tv_product_bound(double gamma, int n) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("tv_product_bound needs gamma in [0, 1]");
  if (n < 1) throw ParameterError("tv_product_bound needs n >= 1");
  return std::sqrt(1.0 - std::pow(1.0 - gamma, 2.0 * n));
}

double tv_product_exact(const DiscreteDist& p0, const DiscreteDist& p1, int n) {
  if (n < 1) throw ParameterError("tv_product_exact needs n >= 1");
  const Aligned a = align(p0, p1);
  const std::size_t k = a.p0.size();
  if (k > 4 || n > 4) throw CapacityError("tv_product_exact is limited to 4 atoms and n <= 4");
  std::size_t outcomes = 1;
  for (int i = 0; i < n; ++i) outcomes *= k;
  double total = 0.0;
  for (std::size_t code = 0; code < outcomes; ++code) {
    double q0 = 1.0;
    double q1 = 1.0;
    std::size_t c = code;
    for (int i = 0; i < n; ++i) {
      q0 *= a.p0[c % k];
      q1 *= a.p1[c % k];
      c /= k;
    }
    total += std::abs(q0 - q1);
  }
  return std::min(1.0, 0.5 * total);
}

ExtReal dopt(const ConvexFn& f0, const ConvexFn& f1, double tol) {
  if (!(tol > 0.0)) throw ParameterError("dopt needs tol > 0");
  const Minimum m0 = minimize(f0, f0.domain());
  const Minimum m1 = minimize(f1, f1.domain());
  require_bounded_below(m0, "f0");
  require_bounded_below(m1, "f1");

  auto disjoint = [&](double delta) {
    const Interval s0 = sublevel_interval(f0, m0.value + delta);
    const Interval s1 = sublevel_interval(f1, m1.value + delta);
    return s0.intersect(s1).empty();
  };

  if (!disjoint(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (disjoint(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) return ExtReal::pos_inf();
  }
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    (disjoint(mid) ? lo : hi) = mid;
  }
  return lo;
}

double minimax_testing_lb(double dopt_lb, double tv_n) {
  if (!(dopt_lb >= 0.0)) throw ParameterError("minimax_testing_lb needs dopt_lb >= 0");
  if (!(tv_n >= 0.0 && tv_n <= 1.0)) throw ParameterError("minimax_testing_lb needs tv_n in [0, 1]");
  return dopt_lb / 2.0 * (1.0 - tv_n);
}

ConvexFn population_loss(const LossFamily& family, const DiscreteDist& p) {
  std::vector<double> weights;
  std::vector<ConvexFn> losses;
  for (const auto& a : p.atoms()) {
    if (a.p <= 0.0) continue;
    weights.push_back(a.p);
    losses.push_back(family.loss_at(a.z));
  }
  // Zero-mass atoms were dropped; renormalise the rounding.
  double total = 0.0;
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;
  return mix(weights, losses);
}

void verify(const HardInstance& inst) {
  const ExtReal d = dopt(population_loss(inst.family, inst.p0), population_loss(inst.family, inst.p1));
  if (d < inst.dopt_lb - 1e-6) {
    throw ValidationError("instance '" + inst.constructor + "': dopt " + d.to_string() + " is below the claimed " +
                          ExtReal(inst.dopt_lb).to_string());
  }
  const double t = tv(inst.p0, inst.p1);
  if (t > inst.tv_upper + 1e-12) {
    throw ValidationError("instance '" + inst.constructor + "': TV " + ExtReal(t).to_string() +
                          " exceeds the claimed " + ExtReal(inst.tv_upper).to_string());
  }
  const double floor = minimax_testing_lb(inst.dopt_lb, tv_product_bound(inst.tv_upper, inst.n));
  if (std::abs(floor - inst.minimax_floor) > 1e-12 * std::max(1.0, floor)) {
    throw ValidationError("instance '" + inst.constructor + "': stored minimax floor does not match its formula");
  }
}

namespace {

HardInstance finish(HardInstance inst) {
  inst.minimax_floor = minimax_testing_lb(inst.dopt_lb, tv_product_bound(inst.tv_upper, inst.n));
  verify(inst);
  return inst;
}

}  // namespace

HardInstance quantile_pair(double alpha, double z0, double z1, double delta, int n) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("quantile_pair needs alpha in (0, 1)");
  if (!(z0 < z1)) throw ParameterError("quantile_pair needs z0 < z1");
  if (!(delta > 0.0) || delta > std::min(alpha, 1.0 - alpha)) {
    throw ParameterError("quantile_pair needs 0 < delta <= min(alpha, 1 - alpha)");
  }
  if (n <= 0) n = std::max(1, static_cast<int>(std::floor(1.0 / (2.0 * delta) + 1e-9)));
  DiscreteDist p0({{z0, 1.0 - alpha + delta}, {z1, alpha - delta}});
  DiscreteDist p1({{z0, 1.0 - alpha - delta}, {z1, alpha + delta}});
  HardInstance inst{"quantile_pair",
                    {{"alpha", alpha}, {"z0", z0}, {"z1", z1}, {"delta", delta}},
                    quantile_family(alpha),
                    std::move(p0),
                    std::move(p1),
                    n,
                    delta / 2.0 * std::abs(z1 - z0),
                    std::min(1.0, 2.0 * delta),
                    0.0};
  return finish(std::move(inst));
}

HardInstance norate_pair(const RateFunction& rate, double delta, int n) {
  if (!(delta > 0.0 && delta < 0.5)) throw ParameterError("norate_pair needs delta in (0, 1/2)");
  if (n <= 0) n = std::max(1, static_cast<int>(std::lround(1.0 / delta)));
  std::map<std::string, double> params{{"delta", delta}};
  if (auto p = rate.power_exponent()) params["rate_power"] = *p;
  HardInstance inst{"norate_pair",
                    std::move(params),
                    norate_family(rate),
                    DiscreteDist::point_mass(0.0),
                    DiscreteDist({{0.0, 1.0 - delta}, {1.0, delta}}),
                    n,
                    1.0 / (2.0 * rate.r(2.0 / delta)),
                    delta,
                    0.0};
  return finish(std::move(inst));
}

HardInstance blowup_pair(const LossFamily& family, double theta0, double delta_gap, int n, double z_plus) {
  if (n < 2) throw ParameterError("blowup_pair needs n >= 2");
  if (!(delta_gap > 0.0)) throw ParameterError("blowup_pair needs delta_gap > 0");
  const double theta1 = theta0 + delta_gap;
  const Interval& dom = family.theta_domain();
  if (!dom.contains_in_interior(theta0) || !dom.contains_in_interior(theta1)) {
    throw ConstructionError("blowup_pair needs theta0 and theta0 + delta_gap inside Theta");
  }
  if (!family.inf_dminus(theta1).is_neg_inf()) {
    throw ConstructionError("blowup_pair: slopes at theta0 + delta_gap are bounded below, the instance does not apply");
  }
  const ConvexFn l_plus = family.loss_at(z_plus);
  const ExtReal a = l_plus.dplus(theta0);
  if (!(a > 0.0) || !a.is_finite()) throw ConstructionError("blowup_pair needs 0 < D+ l_{z+}(theta0) < inf");

  const double nn = static_cast<double>(n);
  const double w = 1.0 / (nn * nn);
  const ExtReal base_slope = l_plus.dminus(theta1);
  double big_l = nn * nn * nn;
  std::optional<double> z_l;
  for (int attempt = 0; attempt < 200; ++attempt, big_l *= 2.0) {
    const auto candidate = family.z_with_dplus_at_most(theta1, -big_l);
    if (!candidate) continue;
    const ExtReal slope = ExtReal(1.0 - w) * base_slope + ExtReal(w) * family.loss_at(*candidate).dminus(theta1);
    if (slope <= -nn / 2.0) {
      z_l = candidate;
      break;
    }
  }
  if (!z_l) throw ConstructionError("blowup_pair: no sample point with a steep enough slope was found");
  if (*z_l == z_plus) throw ConstructionError("blowup_pair: the steep sample point coincides with z+");

  HardInstance inst{"blowup_pair",
                    {{"theta0", theta0}, {"delta_gap", delta_gap}, {"z_plus", z_plus}, {"z_l", *z_l}, {"a", a.value()}},
                    family,
                    DiscreteDist::point_mass(z_plus),
                    DiscreteDist({{z_plus, 1.0 - w}, {*z_l, w}}),
                    n,
                    a.value() * nn * delta_gap / (2.0 * a.value() + nn),
                    w,
                    0.0};
  return finish(std::move(inst));
}

}  // namespace distfree
