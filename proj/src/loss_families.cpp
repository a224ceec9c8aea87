#include "distfree/loss_families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "distfree/quadrature.hpp"

namespace distfree {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

// ---------------------------------------------------------------------------
// SampleSpace

SampleSpace SampleSpace::atoms(std::vector<double> points) {
  if (points.empty()) throw ConstructionError("finite sample space needs at least one atom");
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
    throw ConstructionError("sample space atoms must be distinct");
  }
  for (double z : points) {
    if (!std::isfinite(z)) throw ConstructionError("sample space atoms must be finite");
  }
  return SampleSpace(std::move(points));
}

SampleSpace SampleSpace::interval(Interval range) {
  if (range.empty()) throw ConstructionError("sample space interval is empty");
  return SampleSpace(std::move(range));
}

const std::vector<double>& SampleSpace::points() const {
  if (!is_finite()) throw DomainError("sample space is an interval, not a list of atoms");
  return std::get<std::vector<double>>(data_);
}

Interval SampleSpace::hull() const {
  if (is_finite()) {
    const auto& p = points();
    return Interval(p.front(), p.back());
  }
  return std::get<Interval>(data_);
}

bool SampleSpace::contains(double z) const {
  if (is_finite()) return std::binary_search(points().begin(), points().end(), z);
  return std::get<Interval>(data_).contains(z);
}

// ---------------------------------------------------------------------------
// RateFunction

RateFunction RateFunction::power(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw ParameterError("rate exponent must be positive");
  RateFunction out;
  out.name_ = "power";
  out.power_ = p;
  out.r_ = [p](double x) { return std::pow(x, p); };
  out.r_inverse_ = [p](double y) { return std::pow(y, 1.0 / p); };
  return out;
}

RateFunction RateFunction::from_inverse(std::function<double(double)> r_inverse, std::string name) {
  if (!r_inverse) throw ParameterError("rate inverse is empty");
  if (std::abs(r_inverse(1.0) - 1.0) > 1e-12) throw ParameterError("rate inverse must satisfy r^{-1}(1) = 1");
  double previous = r_inverse(1.0);
  for (int i = 1; i <= 240; ++i) {
    const double y = std::pow(10.0, i / 40.0);
    const double v = r_inverse(y);
    if (!(v > previous) || !std::isfinite(v)) {
      throw ParameterError("rate inverse is not increasing near y = " + ExtReal(y).to_string());
    }
    previous = v;
  }
  RateFunction out;
  out.name_ = std::move(name);
  out.r_inverse_ = r_inverse;
  out.r_ = [r_inverse](double x) {
    if (x <= 1.0) return 1.0;
    double lo = 1.0;
    double hi = 2.0;
    while (r_inverse(hi) < x && hi < 1e300) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (r_inverse(mid) < x ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  return out;
}

double RateFunction::r(double x) const { return r_(x); }
double RateFunction::r_inverse(double y) const { return r_inverse_(y); }

ExtReal RateFunction::tail_integral(double theta) const {
  if (theta < 0.0 || theta > 1.0) throw DomainError("tail integral needs theta in [0, 1]");
  if (power_) {
    const double q = 1.0 / *power_;
    if (theta == 0.0) return q >= 1.0 ? ExtReal::pos_inf() : ExtReal(1.0 / (1.0 - q));
    if (q == 1.0) return -std::log(theta);
    return (1.0 - std::pow(theta, 1.0 - q)) / (1.0 - q);
  }
  if (theta == 0.0) return ExtReal::pos_inf();
  // t = e^u flattens the 1/t blow-up near zero.
  const auto& inv = r_inverse_;
  return adaptive_simpson([&inv](double u) { return inv(std::exp(-u)) * std::exp(u); }, std::log(theta), 0.0,
                          1e-10);
}

// ---------------------------------------------------------------------------
// FamilyModel defaults

std::optional<GapSup> FamilyModel::sup_gap(const Interval& over, double /*epsilon*/) const {
  if (!space.is_finite()) return std::nullopt;
  GapSup best{-kInf, std::nullopt};
  for (double z : space.points()) {
    const ExtReal g = gap(z, over);
    if (!best.witness || g > best.value) best = {g, z};
  }
  return best;
}

std::optional<double> FamilyModel::z_with_dplus_at_most(double theta, double bound) const {
  if (!space.is_finite()) return std::nullopt;
  for (double z : space.points()) {
    if (loss_at(z).dplus(theta) <= bound) return z;
  }
  return std::nullopt;
}

std::optional<double> FamilyModel::z_with_dplus_at_least(double theta, double bound) const {
  if (!space.is_finite()) return std::nullopt;
  for (double z : space.points()) {
    if (loss_at(z).dplus(theta) >= bound) return z;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// LossFamily

LossFamily::LossFamily(std::shared_ptr<const FamilyModel> model) : model_(std::move(model)) {
  if (!model_) throw ConstructionError("loss family without a model");
  if (model_->theta_domain.empty()) throw ConstructionError("loss family with empty parameter space");
}

double LossFamily::param(const std::string& key) const {
  auto it = model_->params.find(key);
  if (it == model_->params.end()) throw DomainError("family '" + name() + "' has no parameter '" + key + "'");
  return it->second;
}

ConvexFn LossFamily::loss_at(double z) const {
  if (!model_->space.contains(z)) {
    throw InputError("sample point " + ExtReal(z).to_string() + " is not in the sample space of '" + name() + "'");
  }
  return model_->loss_at(z);
}

ExtReal LossFamily::sup_dplus(double theta) const {
  const Interval& dom = theta_domain();
  if (!dom.contains(theta)) throw DomainError("envelope query outside the parameter space");
  if (dom.hi().is_finite() && theta == dom.hi().value()) return ExtReal::pos_inf();
  return model_->sup_dplus(theta);
}

ExtReal LossFamily::inf_dminus(double theta) const {
  const Interval& dom = theta_domain();
  if (!dom.contains(theta)) throw DomainError("envelope query outside the parameter space");
  if (dom.lo().is_finite() && theta == dom.lo().value()) return ExtReal::neg_inf();
  return model_->inf_dminus(theta);
}

PerZMin LossFamily::per_z_min(double z) const {
  if (!model_->space.contains(z)) throw InputError("sample point outside the sample space");
  return model_->per_z_min(z);
}

ExtReal LossFamily::gap(double z, const Interval& over) const {
  if (!model_->space.contains(z)) throw InputError("sample point outside the sample space");
  return model_->gap(z, over);
}

std::optional<GapSup> LossFamily::sup_gap(const Interval& over, double epsilon) const {
  return model_->sup_gap(over, epsilon);
}

std::optional<double> LossFamily::z_with_dplus_at_most(double theta, double bound) const {
  return model_->z_with_dplus_at_most(theta, bound);
}

std::optional<double> LossFamily::z_with_dplus_at_least(double theta, double bound) const {
  return model_->z_with_dplus_at_least(theta, bound);
}

// ---------------------------------------------------------------------------
// Quantile

namespace {

class QuantileModel final : public FamilyModel {
 public:
  explicit QuantileModel(double alpha) : alpha_(alpha) {}

  double normaliser(double z) const { return alpha_ * positive_part(-z) + (1.0 - alpha_) * positive_part(z); }

  ConvexFn loss_at(double z) const override {
    return ConvexFn(PiecewiseLinearConvex::pinball(alpha_, z, -normaliser(z)));
  }

  ExtReal sup_dplus(double theta) const override {
    return space.hull().lo() <= theta ? ExtReal(alpha_) : ExtReal(-(1.0 - alpha_));
  }
  ExtReal inf_dminus(double theta) const override {
    return space.hull().hi() >= theta ? ExtReal(-(1.0 - alpha_)) : ExtReal(alpha_);
  }

  PerZMin per_z_min(double z) const override { return {z, -normaliser(z)}; }

  ExtReal gap(double z, const Interval& over) const override {
    if (over.empty()) return ExtReal::pos_inf();
    if (over.hi() < z) return (1.0 - alpha_) * (z - over.hi().value());
    if (z < over.lo()) return alpha_ * (over.lo().value() - z);
    return 0.0;
  }

  std::optional<GapSup> sup_gap(const Interval& over, double epsilon) const override {
    if (space.is_finite()) return FamilyModel::sup_gap(over, epsilon);
    if (over.empty()) return GapSup{ExtReal::pos_inf(), space.hull().lo().is_finite() ? space.hull().lo().value() : 0.0};
    const Interval z_range = space.hull();
    if (z_range.hi() > over.hi()) {
      if (z_range.hi().is_pos_inf()) {
        return GapSup{ExtReal::pos_inf(), over.hi().value() + (epsilon + 1.0) / (1.0 - alpha_)};
      }
    }
    if (z_range.lo() < over.lo()) {
      if (z_range.lo().is_neg_inf()) {
        return GapSup{ExtReal::pos_inf(), over.lo().value() - (epsilon + 1.0) / alpha_};
      }
    }
    GapSup best{0.0, std::nullopt};
    for (ExtReal end : {z_range.lo(), z_range.hi()}) {
      if (!end.is_finite()) continue;
      const ExtReal g = gap(end.value(), over);
      if (!best.witness || g > best.value) best = {g, end.value()};
    }
    return best;
  }

  std::optional<double> z_with_dplus_at_most(double theta, double bound) const override {
    if (space.is_finite()) return FamilyModel::z_with_dplus_at_most(theta, bound);
    const Interval hull = space.hull();
    if (-(1.0 - alpha_) <= bound && hull.hi() > theta) {
      return hull.hi().is_finite() ? hull.hi().value() : theta + 1.0;
    }
    if (alpha_ <= bound && hull.lo() <= theta) return hull.clamp(theta);
    return std::nullopt;
  }

  std::optional<double> z_with_dplus_at_least(double theta, double bound) const override {
    if (space.is_finite()) return FamilyModel::z_with_dplus_at_least(theta, bound);
    const Interval hull = space.hull();
    if (alpha_ >= bound && hull.lo() <= theta) return hull.lo().is_finite() ? hull.lo().value() : theta - 1.0;
    if (-(1.0 - alpha_) >= bound && hull.hi() > theta) return hull.hi().is_finite() ? hull.hi().value() : theta + 1.0;
    return std::nullopt;
  }

 private:
  double alpha_;
};

// ---------------------------------------------------------------------------
// Bernoulli log loss

class BernoulliLogModel final : public FamilyModel {
 public:
  ConvexFn loss_at(double z) const override {
    if (z == 1.0) {
      return ConvexFn(
          theta_domain, [](double t) { return ExtReal(t == 0.0 ? kInf : -std::log(t)); },
          [](double t) { return ExtReal(t == 0.0 ? -kInf : -1.0 / t); },
          [](double t) { return ExtReal(t == 0.0 ? -kInf : -1.0 / t); });
    }
    return ConvexFn(
        theta_domain, [](double t) { return ExtReal(t == 1.0 ? kInf : -std::log1p(-t)); },
        [](double t) { return ExtReal(t == 1.0 ? kInf : 1.0 / (1.0 - t)); },
        [](double t) { return ExtReal(t == 1.0 ? kInf : 1.0 / (1.0 - t)); });
  }

  ExtReal sup_dplus(double theta) const override { return 1.0 / (1.0 - theta); }
  ExtReal inf_dminus(double theta) const override { return theta == 0.0 ? ExtReal::neg_inf() : ExtReal(-1.0 / theta); }

  PerZMin per_z_min(double z) const override { return z == 1.0 ? PerZMin{1.0, 0.0} : PerZMin{0.0, 0.0}; }

  ExtReal gap(double z, const Interval& over) const override {
    const Interval in = over.intersect(theta_domain);
    if (in.empty()) return ExtReal::pos_inf();
    if (z == 1.0) return in.hi().value() == 0.0 ? ExtReal::pos_inf() : ExtReal(-std::log(in.hi().value()));
    return in.lo().value() == 1.0 ? ExtReal::pos_inf() : ExtReal(-std::log1p(-in.lo().value()));
  }
};

// ---------------------------------------------------------------------------
// Squared loss

class SquaredModel final : public FamilyModel {
 public:
  ConvexFn loss_at(double z) const override {
    return ConvexFn(
        theta_domain, [z](double t) { return ExtReal(0.5 * (t - z) * (t - z)); },
        [z](double t) { return ExtReal(t - z); }, [z](double t) { return ExtReal(t - z); });
  }

  ExtReal sup_dplus(double theta) const override { return ExtReal(theta) - space.hull().lo(); }
  ExtReal inf_dminus(double theta) const override { return ExtReal(theta) - space.hull().hi(); }

  PerZMin per_z_min(double z) const override {
    const double t = theta_domain.clamp(z);
    return {t, 0.5 * (t - z) * (t - z)};
  }

  ExtReal gap(double z, const Interval& over) const override {
    const Interval in = over.intersect(theta_domain);
    if (in.empty()) return ExtReal::pos_inf();
    const double t = in.clamp(z);
    return 0.5 * (t - z) * (t - z) - per_z_min(z).value.value();
  }

  std::optional<GapSup> sup_gap(const Interval& over, double epsilon) const override {
    if (space.is_finite()) return FamilyModel::sup_gap(over, epsilon);
    const Interval in = over.intersect(theta_domain);
    const Interval z_range = space.hull();
    if (in.empty()) return GapSup{ExtReal::pos_inf(), z_range.clamp(0.0)};
    // Beyond the probe the gap grows without bound when Z is unbounded on
    // that side and the probe stops short of Theta.
    if (z_range.hi().is_pos_inf() && in.hi() < theta_domain.hi()) {
      const double ih = in.hi().value();
      double z = 0.0;
      if (theta_domain.hi().is_finite()) {
        const double th = theta_domain.hi().value();
        z = std::max(th, (2.0 * epsilon / (th - ih) + ih + th) / 2.0) + 1.0;
      } else {
        z = ih + std::sqrt(2.0 * epsilon) + 1.0;
      }
      return GapSup{ExtReal::pos_inf(), z};
    }
    if (z_range.lo().is_neg_inf() && in.lo() > theta_domain.lo()) {
      const double il = in.lo().value();
      double z = 0.0;
      if (theta_domain.lo().is_finite()) {
        const double tl = theta_domain.lo().value();
        z = std::min(tl, (il + tl - 2.0 * epsilon / (il - tl)) / 2.0) - 1.0;
      } else {
        z = il - std::sqrt(2.0 * epsilon) - 1.0;
      }
      return GapSup{ExtReal::pos_inf(), z};
    }
    // The gap is piecewise convex/linear in z between these points.
    std::vector<double> candidates;
    for (ExtReal e : {z_range.lo(), z_range.hi(), in.lo(), in.hi(), theta_domain.lo(), theta_domain.hi()}) {
      if (e.is_finite() && z_range.contains(e.value())) candidates.push_back(e.value());
    }
    GapSup best{0.0, std::nullopt};
    for (double z : candidates) {
      const ExtReal g = gap(z, over);
      if (!best.witness || g > best.value) best = {g, z};
    }
    return best;
  }

  std::optional<double> z_with_dplus_at_most(double theta, double bound) const override {
    if (space.is_finite()) return FamilyModel::z_with_dplus_at_most(theta, bound);
    // theta - z <= bound  <=>  z >= theta - bound
    const Interval hull = space.hull();
    const double z = theta - bound;
    if (hull.hi() < z) return std::nullopt;
    return hull.lo() > z ? hull.lo().value() : z;
  }

  std::optional<double> z_with_dplus_at_least(double theta, double bound) const override {
    if (space.is_finite()) return FamilyModel::z_with_dplus_at_least(theta, bound);
    const Interval hull = space.hull();
    const double z = theta - bound;
    if (hull.lo() > z) return std::nullopt;
    return hull.hi() < z ? hull.hi().value() : z;
  }
};

// ---------------------------------------------------------------------------
// Exponential loss

class ExponentialModel final : public FamilyModel {
 public:
  ConvexFn loss_at(double z) const override {
    return ConvexFn(
        theta_domain, [z](double t) { return ExtReal(std::exp(z * t)); },
        [z](double t) { return ExtReal(z * std::exp(z * t)); },
        [z](double t) { return ExtReal(z * std::exp(z * t)); });
  }

  ExtReal sup_dplus(double theta) const override { return std::exp(theta); }
  ExtReal inf_dminus(double theta) const override { return -std::exp(-theta); }

  PerZMin per_z_min(double z) const override {
    return z > 0.0 ? PerZMin{ExtReal::neg_inf(), 0.0} : PerZMin{ExtReal::pos_inf(), 0.0};
  }

  ExtReal gap(double z, const Interval& over) const override {
    if (over.empty()) return ExtReal::pos_inf();
    if (z > 0.0) return over.lo().is_neg_inf() ? ExtReal(0.0) : ExtReal(std::exp(over.lo().value()));
    return over.hi().is_pos_inf() ? ExtReal(0.0) : ExtReal(std::exp(-over.hi().value()));
  }

  std::optional<Interval> extreme_minimizers() const override { return Interval::real_line(); }
};

// ---------------------------------------------------------------------------
// Arbitrarily slow rate construction

class NoRateModel final : public FamilyModel {
 public:
  ConvexFn loss_at(double z) const override {
    if (z == 0.0) {
      return ConvexFn(
          theta_domain, [](double t) { return ExtReal(t); }, [](double) { return ExtReal(1.0); },
          [](double) { return ExtReal(1.0); });
    }
    const RateFunction r = *rate;
    auto slope = [r](double t) { return t == 0.0 ? ExtReal::neg_inf() : ExtReal(1.0 - r.r_inverse(1.0 / t)); };
    return ConvexFn(
        theta_domain, [r](double t) { return ExtReal(t) + r.tail_integral(t); },
        slope, slope);
  }

  ExtReal sup_dplus(double) const override { return 1.0; }
  ExtReal inf_dminus(double theta) const override {
    return theta == 0.0 ? ExtReal::neg_inf() : ExtReal(std::min(1.0, 1.0 - rate->r_inverse(1.0 / theta)));
  }

  PerZMin per_z_min(double z) const override { return z == 0.0 ? PerZMin{0.0, 0.0} : PerZMin{1.0, 1.0}; }

  ExtReal gap(double z, const Interval& over) const override {
    const Interval in = over.intersect(theta_domain);
    if (in.empty()) return ExtReal::pos_inf();
    if (z == 0.0) return in.lo();
    return loss_at(1.0)(in.hi().value()) - 1.0;
  }
};

// ---------------------------------------------------------------------------
// Tabulated piecewise-linear family

class PiecewiseModel final : public FamilyModel {
 public:
  ConvexFn loss_at(double z) const override { return ConvexFn(table.at(z)); }

  ExtReal sup_dplus(double theta) const override {
    ExtReal best = ExtReal::neg_inf();
    for (const auto& [z, f] : table) best = max(best, f.dplus(theta));
    return best;
  }
  ExtReal inf_dminus(double theta) const override {
    ExtReal best = ExtReal::pos_inf();
    for (const auto& [z, f] : table) best = min(best, f.dminus(theta));
    return best;
  }

  PerZMin per_z_min(double z) const override {
    const auto m = table.at(z).minimize_over(theta_domain);
    if (m.argmin_lo.is_finite() && m.argmin_hi.is_finite()) {
      return {0.5 * (m.argmin_lo.value() + m.argmin_hi.value()), m.value};
    }
    return {m.argmin_lo.is_neg_inf() ? m.argmin_lo : m.argmin_hi, m.value};
  }

  ExtReal gap(double z, const Interval& over) const override {
    const Interval in = over.intersect(theta_domain);
    if (in.empty()) return ExtReal::pos_inf();
    const ExtReal restricted = table.at(z).minimize_over(in).value;
    const ExtReal overall = per_z_min(z).value;
    if (overall.is_neg_inf()) return restricted.is_neg_inf() ? ExtReal(0.0) : ExtReal::pos_inf();
    return restricted - overall;
  }
};

}  // namespace

LossFamily quantile_family(double alpha, SampleSpace space) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("quantile level alpha must lie in (0, 1)");
  auto m = std::make_shared<QuantileModel>(alpha);
  m->name = "quantile";
  m->params = {{"alpha", alpha}};
  m->space = std::move(space);
  m->theta_domain = Interval::real_line();
  return LossFamily(std::move(m));
}

LossFamily bernoulli_log_family() {
  auto m = std::make_shared<BernoulliLogModel>();
  m->name = "bernoulli_log";
  m->space = SampleSpace::atoms({0.0, 1.0});
  m->theta_domain = Interval(0.0, 1.0);
  return LossFamily(std::move(m));
}

LossFamily squared_family(SampleSpace space, Interval theta) {
  if (theta.empty()) throw ConstructionError("squared loss needs a non-empty parameter space");
  auto m = std::make_shared<SquaredModel>();
  m->name = "squared";
  m->space = std::move(space);
  m->theta_domain = std::move(theta);
  return LossFamily(std::move(m));
}

LossFamily exponential_family() {
  auto m = std::make_shared<ExponentialModel>();
  m->name = "exponential";
  m->space = SampleSpace::atoms({-1.0, 1.0});
  m->theta_domain = Interval::real_line();
  return LossFamily(std::move(m));
}

LossFamily norate_family(RateFunction rate) {
  auto m = std::make_shared<NoRateModel>();
  m->name = "norate";
  if (auto p = rate.power_exponent()) m->params = {{"rate_power", *p}};
  m->space = SampleSpace::atoms({0.0, 1.0});
  m->theta_domain = Interval(0.0, 1.0);
  m->rate = std::move(rate);
  return LossFamily(std::move(m));
}

LossFamily piecewise_family(std::map<double, PiecewiseLinearConvex> table) {
  if (table.empty()) throw ConstructionError("piecewise family needs a non-empty table");
  const Interval dom = table.begin()->second.domain();
  std::vector<double> atoms;
  for (const auto& [z, f] : table) {
    if (!(f.domain() == dom)) throw ConstructionError("piecewise family entries must share one domain");
    atoms.push_back(z);
  }
  auto m = std::make_shared<PiecewiseModel>();
  m->name = "piecewise";
  m->space = SampleSpace::atoms(std::move(atoms));
  m->theta_domain = dom;
  m->table = std::move(table);
  return LossFamily(std::move(m));
}

}  // namespace distfree
