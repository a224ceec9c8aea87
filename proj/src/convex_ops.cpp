#include "distfree/convex_ops.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace distfree {

namespace {

struct SearchRange {
  double lo;
  double hi;
  bool lo_closed;  // the finite endpoint belongs to the searched set
  bool hi_closed;
};

SearchRange search_range(const Interval& dom, const SearchOptions& opts) {
  SearchRange r{};
  r.lo_closed = dom.lo().is_finite();
  r.hi_closed = dom.hi().is_finite();
  if (r.lo_closed && r.hi_closed) {
    r.lo = dom.lo().value();
    r.hi = dom.hi().value();
  } else if (r.lo_closed) {
    r.lo = dom.lo().value();
    r.hi = std::max(opts.window, r.lo);
  } else if (r.hi_closed) {
    r.hi = dom.hi().value();
    r.lo = std::min(-opts.window, r.hi);
  } else {
    r.lo = -opts.window;
    r.hi = opts.window;
  }
  return r;
}

// pred(lo) is false, pred(hi) is true; returns a point where pred holds
// within opts.tol of the switch.
template <class Pred>
double first_true(Pred&& pred, double lo, double hi, const SearchOptions& opts) {
  for (int i = 0; i < opts.max_iter && hi - lo > opts.tol; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// pred(lo) is true, pred(hi) is false; returns a point where pred holds.
template <class Pred>
double last_true(Pred&& pred, double lo, double hi, const SearchOptions& opts) {
  for (int i = 0; i < opts.max_iter && hi - lo > opts.tol; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

void check_weights(std::span<const double> weights, std::size_t count) {
  if (weights.size() != count || count == 0) {
    throw ConstructionError("mixture needs matching, non-empty weight and function lists");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConstructionError("mixture weights must be finite and non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ConstructionError("mixture weights sum to " + ExtReal(total).to_string() + ", not 1");
  }
}

}  // namespace

Interval argmin_interval(const ConvexFn& f, const Interval& over, const SearchOptions& opts) {
  const Interval dom = f.domain().intersect(over);
  if (dom.empty()) throw DomainError("minimize over an interval disjoint from the domain");
  if (const auto* pwl = f.piecewise()) {
    const auto exact = pwl->minimize_over(dom);
    return Interval(exact.argmin_lo, exact.argmin_hi);
  }
  const SearchRange r = search_range(dom, opts);

  auto rises = [&](double t) { return f.dplus(t) >= 0.0; };
  auto falls = [&](double t) { return f.dminus(t) <= 0.0; };

  ExtReal left;
  if (rises(r.lo)) {
    left = r.lo_closed ? ExtReal(r.lo) : ExtReal::neg_inf();
  } else if (!rises(r.hi)) {
    left = r.hi_closed ? ExtReal(r.hi) : ExtReal::pos_inf();
  } else {
    left = first_true(rises, r.lo, r.hi, opts);
  }

  ExtReal right;
  if (falls(r.hi)) {
    right = r.hi_closed ? ExtReal(r.hi) : ExtReal::pos_inf();
  } else if (!falls(r.lo)) {
    right = r.lo_closed ? ExtReal(r.lo) : ExtReal::neg_inf();
  } else {
    right = last_true(falls, r.lo, r.hi, opts);
  }

  if (left <= right) return Interval(left, right);
  // The two brackets crossed around a single minimizer.
  if (left.is_finite() && right.is_finite()) return Interval::point(0.5 * (left.value() + right.value()));
  return Interval::point(left.is_finite() ? left.value() : right.value());
}

ExtReal limit_value(const ConvexFn& f, int direction, const SearchOptions& opts) {
  const double edge = direction > 0 ? opts.window : -opts.window;
  if (!f.domain().contains(edge)) throw DomainError("limit along a bounded side of the domain");
  const ExtReal value = f(edge);
  const ExtReal slope = direction > 0 ? f.dminus(edge) : f.dplus(edge);
  const bool still_descending = direction > 0 ? slope < 0.0 : slope > 0.0;
  if (still_descending && (!slope.is_finite() || std::abs(slope.value()) * opts.window > 1e-6)) {
    return ExtReal::neg_inf();
  }
  return value;
}

Minimum minimize(const ConvexFn& f, const Interval& over, double tol) {
  SearchOptions opts;
  opts.tol = tol;
  return minimize(f, over, opts);
}

Minimum minimize(const ConvexFn& f, const Interval& over, const SearchOptions& opts) {
  if (!(opts.tol > 0.0)) throw ParameterError("minimize needs tol > 0");
  const Interval arg = argmin_interval(f, over, opts);
  const ExtReal lo = arg.lo();
  const ExtReal hi = arg.hi();
  if (lo.is_finite() && hi.is_finite()) {
    const double t = 0.5 * (lo.value() + hi.value());
    return {t, f(t)};
  }
  if (lo.is_neg_inf() && hi.is_pos_inf()) {
    const double t = 0.0;
    return {t, f(t)};
  }
  // An exactly flat unbounded end is only trusted for piecewise-linear f;
  // elsewhere a vanishing derivative far out is usually underflow.
  if (f.piecewise() && (lo.is_finite() || hi.is_finite())) {
    const double t = lo.is_finite() ? lo.value() : hi.value();
    return {t, f(t)};
  }
  const int direction = lo.is_neg_inf() ? -1 : 1;
  return {direction < 0 ? ExtReal::neg_inf() : ExtReal::pos_inf(), limit_value(f, direction, opts)};
}

Interval sublevel_interval(const ConvexFn& f, ExtReal level, const SearchOptions& opts) {
  const Interval& dom = f.domain();
  if (level.is_neg_inf()) return Interval::empty_set();
  if (level.is_pos_inf()) return dom;
  const Minimum m = minimize(f, dom, opts);
  if (m.value > level) return Interval::empty_set();

  const SearchRange r = search_range(dom, opts);
  auto below = [&](double t) { return f(t) <= level; };

  double centre = 0.0;
  if (m.argmin.is_finite()) {
    centre = m.argmin.value();
  } else {
    centre = m.argmin.is_neg_inf() ? r.lo : r.hi;
    if (!below(centre)) return Interval::empty_set();
  }

  ExtReal left;
  if (m.argmin.is_neg_inf() || below(r.lo)) {
    left = r.lo_closed ? ExtReal(r.lo) : ExtReal::neg_inf();
  } else {
    left = first_true(below, r.lo, centre, opts);
  }
  ExtReal right;
  if (m.argmin.is_pos_inf() || below(r.hi)) {
    right = r.hi_closed ? ExtReal(r.hi) : ExtReal::pos_inf();
  } else {
    right = last_true(below, centre, r.hi, opts);
  }
  return Interval(left, right);
}

ConvexFn mix(std::span<const double> weights, std::span<const ConvexFn> fns) {
  check_weights(weights, fns.size());

  const bool all_piecewise =
      std::all_of(fns.begin(), fns.end(), [](const ConvexFn& f) { return f.piecewise() != nullptr; });
  if (all_piecewise) {
    std::vector<PiecewiseLinearConvex> pieces;
    pieces.reserve(fns.size());
    for (const auto& f : fns) pieces.push_back(*f.piecewise());
    return ConvexFn(PiecewiseLinearConvex::mix(weights, pieces));
  }

  std::vector<double> w;
  std::vector<ConvexFn> parts;
  Interval dom;
  for (std::size_t i = 0; i < fns.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    w.push_back(weights[i]);
    parts.push_back(fns[i]);
    dom = dom.intersect(fns[i].domain());
  }
  if (!dom.has_interior()) throw ConstructionError("mixture components share no common open domain");

  auto combine = [w, parts](auto&& component) {
    return [w, parts, component](double t) {
      ExtReal total = 0.0;
      for (std::size_t i = 0; i < parts.size(); ++i) total += ExtReal(w[i]) * component(parts[i], t);
      return total;
    };
  };
  return ConvexFn(dom, combine([](const ConvexFn& g, double t) { return g(t); }),
                  combine([](const ConvexFn& g, double t) { return g.dplus(t); }),
                  combine([](const ConvexFn& g, double t) { return g.dminus(t); }));
}

}  // namespace distfree
