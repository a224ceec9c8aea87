#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "distfree/achievability.hpp"
#include "distfree/distributions.hpp"
#include "distfree/estimators.hpp"
#include "distfree/harness.hpp"
#include "distfree/rng.hpp"
#include "distfree/separation.hpp"

using namespace distfree;

namespace {

// Brute-force median-type oracle: the argmin interval of the sum of
// pinball losses by counting order statistics.
double order_stat_midpoint(std::vector<double> x, double level) {
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();
  double lo = x.back();
  double hi = x.front();
  for (std::size_t i = 0; i < n; ++i) {
    // theta = x[i] is a minimizer iff #{< x[i]} <= n level <= #{<= x[i]}.
    const auto below = static_cast<double>(std::lower_bound(x.begin(), x.end(), x[i]) - x.begin());
    const auto upto = static_cast<double>(std::upper_bound(x.begin(), x.end(), x[i]) - x.begin());
    if (below <= n * level + 1e-12 && n * level - 1e-12 <= upto) {
      lo = std::min(lo, x[i]);
      hi = std::max(hi, x[i]);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("erm examples") {
  const LossFamily q = quantile_family(0.5);
  const std::vector<double> three{1.0, 2.0, 3.0};
  const std::vector<double> four{1.0, 2.0, 3.0, 4.0};
  CHECK(erm(q, three, Interval::real_line()).value() == doctest::Approx(2.0));
  CHECK(erm(q, four, Interval::real_line()).value() == doctest::Approx(2.5));

  const LossFamily b = bernoulli_log_family();
  const std::vector<double> ones(7, 1.0);
  CHECK(erm(b, ones, b.theta_domain()) == 1.0);
  const std::vector<double> none;
  CHECK_THROWS_AS(erm(q, none, Interval::real_line()), InputError);
}

TEST_CASE("star restriction") {
  const Interval unit(0.0, 1.0);
  const Interval r = star_restrict(unit, 0.5, 0.2);
  CHECK(r.lo().value() == doctest::Approx(0.1));
  CHECK(r.hi().value() == doctest::Approx(0.9));
  CHECK(star_restrict(unit, 0.5, 0.0) == unit);
  CHECK(star_restrict(unit, 0.3, 1.0) == Interval(0.3, 0.3));
  // Off-centre anchors keep the set interior.
  const Interval s = star_restrict(Interval(2.0, 6.0), 3.0, 0.5);
  CHECK(s.lo().value() == doctest::Approx(2.5));
  CHECK(s.hi().value() == doctest::Approx(4.5));
  CHECK_THROWS_AS(star_restrict(unit, 0.0, 0.2), DomainError);
  CHECK_THROWS_AS(star_restrict(Interval::real_line(), 0.0, 0.2), DomainError);
  CHECK_THROWS_AS(star_restrict(unit, 0.5, 1.5), ParameterError);
}

TEST_CASE("delta schedule") {
  CHECK(delta_schedule(16) == doctest::Approx(0.5));
  CHECK(delta_schedule(1) == 1.0);
  CHECK(delta_schedule(10000) == doctest::Approx(0.1));
  CHECK_THROWS_AS(delta_schedule(0), ParameterError);
}

TEST_CASE("restricted erm") {
  const LossFamily b = bernoulli_log_family();
  const std::vector<double> ones(5, 1.0);
  CHECK(restricted_erm(b, ones, b.theta_domain(), {0.5, 0.2}).value() == doctest::Approx(0.9));

  // Pinball losses boxed to Theta = [-5, 5] so the restriction applies.
  const auto boxed = [](double z) {
    return PiecewiseLinearConvex({{-5.0, 0.5 * (z + 5.0)}, {z, 0.0}, {5.0, 0.5 * (5.0 - z)}}, ExtReal::neg_inf(),
                                 ExtReal::pos_inf());
  };
  const LossFamily q_box = piecewise_family({{0.0, boxed(0.0)}, {1.0, boxed(1.0)}, {2.0, boxed(2.0)}});
  const std::vector<double> sample{0.0, 1.0, 2.0, 2.0};
  CHECK(restricted_erm(q_box, sample, q_box.theta_domain(), {0.0, 0.0}) == erm(q_box, sample, q_box.theta_domain()));
  const std::vector<double> single{1.0};
  CHECK(restricted_erm(q_box, single, q_box.theta_domain(), {0.0, 0.5}).value() == doctest::Approx(1.0));
}

TEST_CASE("restricted sgd feasibility and shape") {
  const LossFamily b = bernoulli_log_family();
  const std::vector<double> ones(50, 1.0);
  const double t = restricted_sgd(b, ones, b.theta_domain(), {0.5, 0.2});
  CHECK(t >= 0.1 - 1e-12);
  CHECK(t <= 0.9 + 1e-12);
  CHECK(t > 0.5);

  // One sample: the single projected step.
  const std::vector<double> one{1.0};
  const Interval feasible(0.1, 0.9);
  const double L = compact_lipschitz(b, feasible).value();
  const double eta = feasible.length().value() / L;
  const double expected = feasible.clamp(0.5 - eta * b.loss_at(1.0).dplus(0.5).value());
  CHECK(restricted_sgd(b, one, b.theta_domain(), {0.5, 0.2}) == doctest::Approx(expected));

  CHECK(restricted_sgd(b, one, b.theta_domain(), {0.5, 1.0}) == 0.5);
  CHECK_THROWS_AS(restricted_sgd(b, one, b.theta_domain(), {0.5, 0.0}), ConfigurationError);
}

TEST_CASE("empirical quantile") {
  const std::vector<double> three{3.0, 1.0, 2.0};
  const std::vector<double> four{4.0, 1.0, 3.0, 2.0};
  const std::vector<double> five{5.0};
  CHECK(empirical_quantile(three, 0.5) == 2.0);
  CHECK(empirical_quantile(four, 0.5) == 2.5);
  for (double level : {0.01, 0.3, 0.99}) CHECK(empirical_quantile(five, level) == 5.0);
  const std::vector<double> none;
  CHECK_THROWS_AS(empirical_quantile(none, 0.5), InputError);
  CHECK_THROWS_AS(empirical_quantile(three, 1.0), ParameterError);
}

TEST_CASE("empirical quantile agrees with pinball erm and an order-statistic oracle") {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> size(1, 12);
  std::uniform_int_distribution<int> value(-4, 4);
  const std::vector<double> levels{0.1, 0.25, 0.5, 0.6, 0.75, 0.9};
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> x(static_cast<std::size_t>(size(gen)));
    for (double& v : x) v = value(gen);
    const double level = levels[static_cast<std::size_t>(i) % levels.size()];
    const double got = empirical_quantile(x, level);
    INFO("i=", i, " level=", level);
    CHECK(got == doctest::Approx(order_stat_midpoint(x, level)));
    CHECK(got == doctest::Approx(erm(quantile_family(1.0 - level), x, Interval::real_line()).value()));
  }
}

TEST_CASE("erm optimality certificate") {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> size(1, 30);
  const LossFamily families[] = {quantile_family(0.3), squared_family(SampleSpace::real_line(), Interval(-2.0, 2.0)),
                                 bernoulli_log_family()};
  for (int i = 0; i < 1000; ++i) {
    const LossFamily& f = families[i % 3];
    std::vector<double> x(static_cast<std::size_t>(size(gen)));
    for (double& v : x) {
      v = f.space().is_finite() ? static_cast<double>(gen() % 2) : std::normal_distribution<double>(0.0, 1.5)(gen);
    }
    const ExtReal t = erm(f, x, f.theta_domain());
    if (!t.is_finite() || !f.theta_domain().contains_in_interior(t.value())) continue;
    const ConvexFn emp = population_loss(f, DiscreteDist::empirical(x));
    INFO(f.name(), " i=", i);
    CHECK(emp.dminus(t.value()) <= 1e-7);
    CHECK(emp.dplus(t.value()) >= -1e-7);
  }
}

TEST_CASE("every estimator stays in its feasible set") {
  std::mt19937_64 gen(23);
  const LossFamily b = bernoulli_log_family();
  const LossFamily s = squared_family(SampleSpace::interval(Interval(-1.0, 3.0)), Interval(-1.0, 3.0));
  const std::vector<EstimatorSpec::Kind> kinds{EstimatorSpec::Kind::erm, EstimatorSpec::Kind::restricted_erm,
                                               EstimatorSpec::Kind::restricted_sgd};
  std::uniform_int_distribution<int> size(1, 40);
  for (int i = 0; i < 1000; ++i) {
    const LossFamily& f = i % 2 ? b : s;
    EstimatorSpec spec;
    spec.kind = kinds[static_cast<std::size_t>(i) % kinds.size()];
    if (i % 5 == 0) spec.delta = 0.3;
    std::vector<double> x(static_cast<std::size_t>(size(gen)));
    for (double& v : x) {
      v = f.space().is_finite() ? static_cast<double>(gen() % 2) : std::uniform_real_distribution<double>(-1.0, 3.0)(gen);
    }
    const ExtReal t = fit(spec, f, x);
    const Interval feasible = feasible_set(spec, f, static_cast<long long>(x.size()));
    INFO(f.name(), " ", spec.name(), " i=", i);
    REQUIRE(t.is_finite());
    CHECK(feasible.contains(t.value()));
  }
}

TEST_CASE("estimator descriptors") {
  CHECK(EstimatorSpec::parse_kind("restricted_sgd") == EstimatorSpec::Kind::restricted_sgd);
  CHECK(EstimatorSpec::parse_kind("empirical_quantile") == EstimatorSpec::Kind::empirical_quantile);
  CHECK_THROWS_AS(EstimatorSpec::parse_kind("adam"), ValidationError);
  EstimatorSpec q;
  q.kind = EstimatorSpec::Kind::empirical_quantile;
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
  // The level defaults to 1 - alpha of the quantile family.
  CHECK(fit(q, quantile_family(0.8), x) == 1.5);
  CHECK(fit(q, quantile_family(0.2), x) == 4.5);
  CHECK(fit(q, quantile_family(0.7), x) == 2.0);
  q.level = 0.9;
  CHECK(fit(q, quantile_family(0.7), x) == 5.0);
}

TEST_CASE("empirical quantile is consistent") {
  const CdfOracle u = CdfOracle::uniform(0.0, 1.0);
  const long long n = 10000;
  for (double q : {0.1, 0.5, 0.8}) {
    double mae = 0.0;
    for (std::uint64_t rep = 0; rep < 500; ++rep) {
      RandomStream rng = seeded_stream(314, rep);
      const std::vector<double> x = u.sample(static_cast<std::size_t>(n), rng);
      mae += std::abs(empirical_quantile(x, q) - q);
    }
    mae /= 500.0;
    CHECK(mae <= 2.0 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("restricted sgd meets the decomposition bound on log loss") {
  const LossFamily b = bernoulli_log_family();
  EstimatorSpec sgd;
  sgd.kind = EstimatorSpec::Kind::restricted_sgd;
  const SignedLipschitz anchor = signed_lipschitz(b, 0.5);
  const double lambda0 = std::max(anchor.plus.value(), -anchor.minus.value());
  for (double p : {0.1, 0.3, 0.5}) {
    const DiscreteDist dist({{0.0, 1.0 - p}, {1.0, p}});
    for (long long n : {100LL, 1000LL, 10000LL}) {
      const double delta = delta_schedule(n);
      const double L = compact_lipschitz(b, star_restrict(b.theta_domain(), 0.5, delta)).value();
      const double bound = delta * lambda0 + L / std::sqrt(static_cast<double>(n));
      const RiskEstimate r = excess_risk(b, dist, sgd, n, 200, 17);
      INFO("p=", p, " n=", n, " mean=", r.mean_excess.value(), " bound=", bound);
      CHECK(r.inf_count == 0);
      CHECK(r.mean_excess.value() <= bound);
    }
  }
}
