#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "distfree/convex_ops.hpp"
#include "distfree/quadrature.hpp"
#include "oracles.hpp"

using namespace distfree;

namespace {

ConvexFn half_square(double c) {
  auto d = [c](double t) { return ExtReal(t - c); };
  return ConvexFn(
      Interval::real_line(), [c](double t) { return ExtReal(0.5 * (t - c) * (t - c)); }, d, d);
}

ConvexFn exp_fn(double a) {
  auto d = [a](double t) { return ExtReal(a * std::exp(a * t)); };
  return ConvexFn(
      Interval::real_line(), [a](double t) { return ExtReal(std::exp(a * t)); }, d, d);
}

// t + c log(1/t) on [0, 1], +inf at 0.
ConvexFn log_barrier(double c) {
  auto d = [c](double t) { return t == 0.0 ? ExtReal::neg_inf() : ExtReal(1.0 - c / t); };
  return ConvexFn(
      Interval(0.0, 1.0), [c](double t) { return t == 0.0 ? ExtReal::pos_inf() : ExtReal(t - c * std::log(t)); }, d,
      d);
}

ConvexFn pinball(double alpha, double z) { return PiecewiseLinearConvex::pinball(alpha, z); }

}  // namespace

TEST_CASE("ExtReal arithmetic rejects indeterminate forms") {
  CHECK(ExtReal::pos_inf() > 1e308);
  CHECK(ExtReal::neg_inf() < -1e308);
  CHECK((ExtReal(2.0) + ExtReal::pos_inf()).is_pos_inf());
  CHECK((ExtReal(-3.0) * ExtReal::pos_inf()).is_neg_inf());
  CHECK_THROWS_AS(ExtReal::pos_inf() + ExtReal::neg_inf(), IndeterminateForm);
  CHECK_THROWS_AS(ExtReal::pos_inf() - ExtReal::pos_inf(), IndeterminateForm);
  CHECK_THROWS_AS(ExtReal(0.0) * ExtReal::neg_inf(), IndeterminateForm);
  CHECK_THROWS_AS(ExtReal(std::nan("")), IndeterminateForm);
  CHECK(max(ExtReal(1.0), ExtReal::neg_inf()) == ExtReal(1.0));
  CHECK(min(ExtReal(1.0), ExtReal::neg_inf()).is_neg_inf());
}

TEST_CASE("ExtReal text round trip") {
  CHECK(ExtReal::pos_inf().to_string() == "inf");
  CHECK(ExtReal::neg_inf().to_string() == "-inf");
  CHECK(ExtReal::parse(" -Inf ").is_neg_inf());
  CHECK(ExtReal::parse("infinity").is_pos_inf());
  CHECK(ExtReal::parse(ExtReal(0.1).to_string()) == ExtReal(0.1));
  CHECK_THROWS_AS(ExtReal::parse("abc"), InputError);
}

TEST_CASE("Interval membership and set operations") {
  const Interval unit(0.0, 1.0);
  CHECK(unit.contains(0.0));
  CHECK(unit.contains(1.0));
  CHECK_FALSE(unit.contains_in_interior(1.0));
  CHECK_THROWS_AS(Interval(1.0, 0.0), DomainError);
  CHECK(unit.intersect(Interval(2.0, 3.0)).empty());
  CHECK(unit.intersect(Interval(0.5, ExtReal::pos_inf())) == Interval(0.5, 1.0));
  CHECK(Interval(0.2, 0.8).strictly_inside(unit));
  CHECK_FALSE(unit.strictly_inside(unit));
  CHECK(Interval::real_line().clamp(5.0) == 5.0);
  CHECK(unit.clamp(-3.0) == 0.0);
  CHECK(Interval::empty_set().to_string() == "{}");
  CHECK_THROWS_AS(Interval::empty_set().lo(), DomainError);
}

TEST_CASE("dplus examples") {
  const ConvexFn abs = PiecewiseLinearConvex::absolute();
  CHECK(abs.dplus(0.0) == 1.0);
  CHECK(pinball(0.3, 2.0).dplus(1.0).value() == doctest::Approx(-0.7));
  const ConvexFn f = log_barrier(1.0);
  CHECK(f.dplus(0.25).value() == doctest::Approx(-3.0));
  CHECK(oracle::forward_difference(oracle::as_fn(f), 0.25, 1e-7) == doctest::Approx(-3.0).epsilon(1e-5));
}

TEST_CASE("dminus examples") {
  const ConvexFn abs = PiecewiseLinearConvex::absolute();
  CHECK(abs.dminus(0.0) == -1.0);
  CHECK(pinball(0.3, 2.0).dminus(3.0).value() == doctest::Approx(0.3));
  CHECK(half_square(1.0).dminus(1.0) == 0.0);
}

TEST_CASE("endpoint conventions and domain errors") {
  const ConvexFn f = log_barrier(0.5);
  CHECK(f.dplus(1.0).is_pos_inf());
  CHECK(f.dminus(0.0).is_neg_inf());
  CHECK(f(1.5).is_pos_inf());
  CHECK_THROWS_AS(f.dplus(1.5), DomainError);
  CHECK_THROWS_AS(f.dminus(-0.1), DomainError);
}

TEST_CASE("minimize examples") {
  const Minimum a = minimize(pinball(0.3, 2.0), Interval(0.0, 10.0));
  CHECK(a.argmin.value() == doctest::Approx(2.0));
  CHECK(a.value.value() == doctest::Approx(0.0));

  const Minimum b = minimize(log_barrier(0.25), Interval(0.0, 1.0));
  CHECK(b.argmin.value() == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(b.value.value() == doctest::Approx(0.25 + std::log(4.0) / 4.0));
  const auto grid = oracle::grid_argmin(oracle::as_fn(log_barrier(0.25)), 1e-6, 1.0, 200000);
  CHECK(std::abs(grid.theta - b.argmin.value()) < 1e-5);

  const Minimum c = minimize(exp_fn(1.0), Interval::real_line());
  CHECK(c.argmin.is_neg_inf());
  CHECK(c.value == 0.0);

  CHECK_THROWS_AS(minimize(log_barrier(0.25), Interval(2.0, 3.0)), DomainError);
  CHECK_THROWS_AS(minimize(exp_fn(1.0), Interval::real_line(), 0.0), ParameterError);
}

TEST_CASE("minimize reports unbounded descent and flat ends") {
  const ConvexFn line(PiecewiseLinearConvex({{0.0, 0.0}}, 1.0, 1.0));
  const Minimum m = minimize(line, Interval::real_line());
  CHECK(m.argmin.is_neg_inf());
  CHECK(m.value.is_neg_inf());

  // Flat to the left of 0, rising after: minimum attained on (-inf, 0].
  const ConvexFn hinge(PiecewiseLinearConvex({{0.0, 1.0}}, 0.0, 2.0));
  const Minimum h = minimize(hinge, Interval::real_line());
  CHECK(h.argmin == 0.0);
  CHECK(h.value == 1.0);
}

TEST_CASE("sublevel_interval examples") {
  const ConvexFn abs = PiecewiseLinearConvex::absolute();
  const Interval s = sublevel_interval(abs, 1.0);
  CHECK(s.lo().value() == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(s.hi().value() == doctest::Approx(1.0).epsilon(1e-9));

  const std::vector<double> w{0.7, 0.3};
  const std::vector<ConvexFn> fs{pinball(0.5, 0.0), pinball(0.5, 1.0)};
  const ConvexFn l0 = mix(w, fs);
  const Minimum m = minimize(l0, Interval::real_line());
  CHECK(m.argmin == 0.0);
  const Interval t = sublevel_interval(l0, m.value + 0.05);
  CHECK(t.lo().value() == doctest::Approx(-0.1).epsilon(1e-8));
  CHECK(t.hi().value() == doctest::Approx(0.25).epsilon(1e-8));
  const auto grid = oracle::grid_sublevel(oracle::as_fn(l0), m.value.value() + 0.05, -1.0, 1.0, 200000);
  CHECK(std::abs(grid.first + 0.1) < 2e-5);
  CHECK(std::abs(grid.second - 0.25) < 2e-5);

  const Interval z = sublevel_interval(half_square(0.0), 0.0);
  CHECK(std::abs(z.lo().value()) < 1e-8);
  CHECK(std::abs(z.hi().value()) < 1e-8);

  CHECK(sublevel_interval(abs, -1.0).empty());
}

TEST_CASE("mix examples") {
  const ConvexFn f = half_square(0.3);
  const std::vector<double> one{1.0};
  const std::vector<ConvexFn> single{f};
  const ConvexFn g = mix(one, single);
  for (double t : {-2.0, 0.0, 0.3, 4.0}) CHECK(g(t) == f(t));

  const std::vector<double> w{0.7, 0.3};
  const std::vector<ConvexFn> fs{pinball(0.5, 0.0), pinball(0.5, 1.0)};
  CHECK(mix(w, fs)(0.5).value() == doctest::Approx(0.25));

  const std::vector<double> half{0.5, 0.5};
  const std::vector<ConvexFn> hs{PiecewiseLinearConvex::absolute(), half_square(0.0)};
  CHECK(mix(half, hs).dplus(0.0).value() == doctest::Approx(0.5));

  const std::vector<double> bad{0.5, 0.6};
  CHECK_THROWS_AS(mix(bad, hs), ConstructionError);
  const std::vector<ConvexFn> disjoint{
      ConvexFn(PiecewiseLinearConvex({{0.0, 0.0}, {1.0, 0.0}}, ExtReal::neg_inf(), ExtReal::pos_inf())),
      ConvexFn(PiecewiseLinearConvex({{2.0, 0.0}, {3.0, 0.0}}, ExtReal::neg_inf(), ExtReal::pos_inf()))};
  CHECK_THROWS_AS(mix(half, disjoint), ConstructionError);
}

TEST_CASE("piecewise-linear construction is validated") {
  CHECK_THROWS_AS(PiecewiseLinearConvex({}, 0.0, 0.0), ConstructionError);
  CHECK_THROWS_AS(PiecewiseLinearConvex({{0.0, 0.0}, {0.0, 1.0}}, 0.0, 0.0), ConstructionError);
  // Slopes 1 then -1: not convex.
  CHECK_THROWS_AS(PiecewiseLinearConvex({{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.0}}, 0.0, 0.0), ConstructionError);
  CHECK_THROWS_AS(PiecewiseLinearConvex({{0.0, 0.0}}, 1.0, 0.0), ConstructionError);
}

TEST_CASE("derivative ordering on random piecewise-linear functions") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> pos(-6.0, 6.0);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const ConvexFn f = oracle::random_pwl(gen);
    double a = pos(gen);
    double b = pos(gen);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    const bool ordered = f.dminus(a) <= f.dplus(a) && f.dplus(a) <= f.dminus(b) && f.dminus(b) <= f.dplus(b);
    violations += ordered ? 0 : 1;
  }
  CHECK(violations == 0);
}

TEST_CASE("finite differences converge at rate O(h) on smooth functions") {
  const std::vector<ConvexFn> fns{half_square(0.4), exp_fn(1.3), exp_fn(-0.7), log_barrier(0.2)};
  for (const auto& f : fns) {
    for (double t : {0.1, 0.35, 0.8}) {
      const double d = f.dplus(t).value();
      const double e1 = std::abs(oracle::forward_difference(oracle::as_fn(f), t, 1e-3) - d);
      const double e2 = std::abs(oracle::forward_difference(oracle::as_fn(f), t, 1e-4) - d);
      CHECK(e1 < 1e-3 * 200.0);
      CHECK(e2 < e1 * 0.2 + 1e-9);
    }
  }
}

TEST_CASE("integral of D+ reconstructs the function") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> pos(0.05, 0.95);
  const std::vector<ConvexFn> smooth{half_square(0.4), exp_fn(1.3), exp_fn(-0.7), log_barrier(0.2)};
  for (const auto& f : smooth) {
    for (int i = 0; i < 50; ++i) {
      double a = pos(gen);
      double b = pos(gen);
      if (a > b) std::swap(a, b);
      auto d = [&f](double t) { return f.dplus(t).value(); };
      CHECK(std::abs((f(b) - f(a)).value() - oracle::simpson(d, a, b, 2000)) < 1e-7);
      CHECK(std::abs((f(b) - f(a)).value() - adaptive_simpson(d, a, b, 1e-10)) < 1e-7);
    }
  }
  // Piecewise-linear: integrate D+ exactly segment by segment.
  std::uniform_real_distribution<double> wide(-6.0, 6.0);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto pwl = oracle::random_pwl(gen);
    const ConvexFn f = pwl;
    double a = wide(gen);
    double b = wide(gen);
    if (a > b) std::swap(a, b);
    std::vector<double> cuts{a};
    for (const auto& p : pwl.breakpoints()) {
      if (p.theta > a && p.theta < b) cuts.push_back(p.theta);
    }
    cuts.push_back(b);
    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) integral += f.dplus(cuts[k]).value() * (cuts[k + 1] - cuts[k]);
    if (std::abs((f(b) - f(a)).value() - integral) > 1e-9) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("minimize and sublevel_interval are consistent") {
  std::mt19937_64 gen(17);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const ConvexFn f = oracle::random_coercive_pwl(gen);
    const Minimum m = minimize(f, Interval::real_line());
    Interval previous = Interval::empty_set();
    for (double eps : {1e-6, 1e-3, 0.1, 1.0, 10.0}) {
      const Interval s = sublevel_interval(f, m.value + eps);
      if (s.empty() || !s.contains(m.argmin.value())) ++violations;
      if (!previous.empty() && !(s.lo() <= previous.lo() && previous.hi() <= s.hi())) ++violations;
      previous = s;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("minimize agrees with a dense grid") {
  std::mt19937_64 gen(23);
  const double lo = -6.0;
  const double hi = 6.0;
  const int points = 120000;
  const double spacing = (hi - lo) / points;
  int violations = 0;
  for (int i = 0; i < 200; ++i) {
    const ConvexFn f = oracle::random_coercive_pwl(gen);
    const Minimum m = minimize(f, Interval::real_line());
    const Interval arg = argmin_interval(f, Interval::real_line());
    const auto grid = oracle::grid_argmin(oracle::as_fn(f), lo, hi, points);
    if (!(grid.theta >= arg.lo().value() - spacing - 1e-9 && grid.theta <= arg.hi().value() + spacing + 1e-9)) {
      ++violations;
    }
    if (std::abs(grid.value - m.value.value()) > 3.0 * spacing + 1e-9) ++violations;
  }
  CHECK(violations == 0);

  // Smooth functions through the bisection path.
  for (double c : {-2.5, 0.0, 0.7, 3.1}) {
    const Minimum m = minimize(half_square(c), Interval::real_line());
    CHECK(std::abs(m.argmin.value() - c) < 1e-8);
  }
}

TEST_CASE("mix matches the weighted sum of derivatives on random instances") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> pos(-6.0, 6.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  for (int i = 0; i < 500; ++i) {
    const ConvexFn f = oracle::random_pwl(gen);
    const ConvexFn g = oracle::random_pwl(gen);
    const double w = u(gen);
    const std::vector<double> ws{w, 1.0 - w};
    const std::vector<ConvexFn> fs{f, g};
    const ConvexFn h = mix(ws, fs);
    const double t = pos(gen);
    const double dp = w * f.dplus(t).value() + (1.0 - w) * g.dplus(t).value();
    const double dm = w * f.dminus(t).value() + (1.0 - w) * g.dminus(t).value();
    const double v = w * f(t).value() + (1.0 - w) * g(t).value();
    if (std::abs(h.dplus(t).value() - dp) > 1e-9 || std::abs(h.dminus(t).value() - dm) > 1e-9 ||
        std::abs(h(t).value() - v) > 1e-9 * std::max(1.0, std::abs(v))) {
      ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("convexity inequality holds on sampled chords") {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> pos(0.01, 0.99);
  const std::vector<ConvexFn> fns{half_square(0.4), exp_fn(1.3), log_barrier(0.2), oracle::random_pwl(gen)};
  int violations = 0;
  for (const auto& f : fns) {
    for (int i = 0; i < 300; ++i) {
      const double a = pos(gen);
      const double b = pos(gen);
      const double t = pos(gen);
      const double lhs = f(t * a + (1 - t) * b).value();
      const double rhs = t * f(a).value() + (1 - t) * f(b).value();
      if (lhs > rhs + 1e-7) ++violations;
    }
  }
  CHECK(violations == 0);
}
