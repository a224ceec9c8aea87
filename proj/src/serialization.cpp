#include "distfree/serialization.hpp"

#include <cmath>

namespace distfree {

namespace {

double number(const Json& j, const char* what) {
  const ExtReal x = ext_from_json(j);
  if (!x.is_finite()) throw InputError(std::string(what) + " must be finite");
  return x.value();
}

double param_or(const Json& params, const char* key, double fallback) {
  return params.contains(key) ? number(params.at(key), key) : fallback;
}

double required(const Json& params, const char* key) {
  if (!params.contains(key)) throw InputError(std::string("missing parameter '") + key + "'");
  return number(params.at(key), key);
}

// Missing keys and type mismatches surface as InputError rather than the
// JSON library's own exceptions.
template <class F>
auto guarded(const char* what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

Json ext_to_json(ExtReal x) {
  if (x.is_pos_inf()) return "inf";
  if (x.is_neg_inf()) return "-inf";
  return x.value();
}

ExtReal ext_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return ExtReal::parse(j.get<std::string>());
  throw InputError("expected a number or an \"inf\" string, got " + j.dump());
}

Json interval_to_json(const Interval& i) {
  if (i.empty()) return "empty";
  return Json::array({ext_to_json(i.lo()), ext_to_json(i.hi())});
}

Interval interval_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "empty") return Interval::empty_set();
  if (!j.is_array() || j.size() != 2) throw InputError("an interval is [lo, hi] or \"empty\", got " + j.dump());
  return Interval(ext_from_json(j[0]), ext_from_json(j[1]));
}

Json pwl_to_json(const PiecewiseLinearConvex& f) {
  Json points = Json::array();
  for (const auto& b : f.breakpoints()) points.push_back(Json::array({b.theta, b.value}));
  return Json{{"breakpoints", points},
              {"left_slope", ext_to_json(f.left_slope())},
              {"right_slope", ext_to_json(f.right_slope())}};
}

PiecewiseLinearConvex pwl_from_json(const Json& j) {
  return guarded("piecewise-linear loss", [&] {
    std::vector<Breakpoint> points;
    for (const auto& p : j.at("breakpoints")) {
      if (!p.is_array() || p.size() != 2) throw InputError("a breakpoint is [theta, value]");
      points.push_back({number(p[0], "breakpoint theta"), number(p[1], "breakpoint value")});
    }
    return PiecewiseLinearConvex(std::move(points), ext_from_json(j.at("left_slope")), ext_from_json(j.at("right_slope")));
  });
}

Json space_to_json(const SampleSpace& s) {
  if (s.is_finite()) return Json{{"atoms", s.points()}};
  return Json{{"interval", interval_to_json(s.hull())}};
}

SampleSpace space_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "real_line") return SampleSpace::real_line();
  if (j.contains("atoms")) {
    std::vector<double> atoms;
    for (const auto& a : j.at("atoms")) atoms.push_back(number(a, "atom"));
    return SampleSpace::atoms(std::move(atoms));
  }
  if (j.contains("interval")) return SampleSpace::interval(interval_from_json(j.at("interval")));
  throw InputError("a sample space is {atoms: [...]} or {interval: [lo, hi]}");
}

Json family_to_json(const LossFamily& f) {
  Json params = Json::object();
  for (const auto& [k, v] : f.params()) params[k] = v;
  Json out{{"name", f.name()},
           {"params", params},
           {"space", space_to_json(f.space())},
           {"theta_domain", interval_to_json(f.theta_domain())}};
  if (f.name() == "norate" && !f.rate()->power_exponent()) {
    throw InputError("norate families with a custom rate cannot be serialized");
  }
  if (!f.table().empty()) {
    Json table = Json::array();
    for (const auto& [z, loss] : f.table()) table.push_back(Json{{"z", z}, {"loss", pwl_to_json(loss)}});
    out["table"] = table;
  }
  return out;
}

LossFamily family_from_json(const Json& j) {
  return guarded("family descriptor", [&] {
    const std::string name = j.at("name").get<std::string>();
    const Json params = j.value("params", Json::object());
    if (name == "quantile") {
      SampleSpace space = j.contains("space") ? space_from_json(j.at("space")) : SampleSpace::real_line();
      return quantile_family(required(params, "alpha"), std::move(space));
    }
    if (name == "bernoulli_log") return bernoulli_log_family();
    if (name == "squared") {
      SampleSpace space = j.contains("space") ? space_from_json(j.at("space")) : SampleSpace::real_line();
      Interval theta = j.contains("theta_domain") ? interval_from_json(j.at("theta_domain")) : Interval(0.0, 1.0);
      return squared_family(std::move(space), std::move(theta));
    }
    if (name == "exponential") return exponential_family();
    if (name == "norate") return norate_family(RateFunction::power(param_or(params, "rate_power", 1.0)));
    if (name == "piecewise") {
      std::map<double, PiecewiseLinearConvex> table;
      for (const auto& row : j.at("table")) {
        const double z = number(row.at("z"), "table z");
        if (!table.emplace(z, pwl_from_json(row.at("loss"))).second) {
          throw InputError("piecewise table lists z = " + ExtReal(z).to_string() + " twice");
        }
      }
      return piecewise_family(std::move(table));
    }
    throw InputError("unknown loss family '" + name + "'");
  });
}

Json dist_to_json(const DiscreteDist& d) {
  Json atoms = Json::array();
  for (const auto& a : d.atoms()) atoms.push_back(Json::array({a.z, a.p}));
  return Json{{"atoms", atoms}};
}

DiscreteDist dist_from_json(const Json& j) {
  return guarded("distribution", [&] {
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) {
      if (!a.is_array() || a.size() != 2) throw InputError("an atom is [z, p]");
      atoms.push_back({number(a[0], "atom z"), number(a[1], "atom probability")});
    }
    return DiscreteDist(std::move(atoms));
  });
}

Json instance_to_json(const HardInstance& h) {
  Json params = Json::object();
  for (const auto& [k, v] : h.params) params[k] = v;
  return Json{{"constructor", h.constructor},
              {"params", params},
              {"family", family_to_json(h.family)},
              {"p0", dist_to_json(h.p0)},
              {"p1", dist_to_json(h.p1)},
              {"n", h.n},
              {"dopt_lb", h.dopt_lb},
              {"tv_upper", h.tv_upper},
              {"minimax_floor", h.minimax_floor}};
}

HardInstance instance_from_json(const Json& j) {
  return guarded("instance", [&] {
    Json params_json = j.value("params", Json::object());
    std::map<std::string, double> params;
    for (const auto& [k, v] : params_json.items()) params[k] = number(v, "instance parameter");
    HardInstance h{j.value("constructor", std::string("custom")),
                   std::move(params),
                   family_from_json(j.at("family")),
                   dist_from_json(j.at("p0")),
                   dist_from_json(j.at("p1")),
                   j.at("n").get<int>(),
                   number(j.at("dopt_lb"), "dopt_lb"),
                   number(j.at("tv_upper"), "tv_upper"),
                   number(j.at("minimax_floor"), "minimax_floor")};
    if (h.n < 1) throw ValidationError("instance sample size must be positive");
    verify(h);
    return h;
  });
}

HardInstance build_instance(const std::string& constructor, const Json& params) {
  return guarded("instance parameters", [&] {
    const int n = static_cast<int>(param_or(params, "n", 0.0));
    if (constructor == "quantile_pair") {
      return quantile_pair(param_or(params, "alpha", 0.5), param_or(params, "z0", 0.0), param_or(params, "z1", 1.0),
                           required(params, "delta"), n);
    }
    if (constructor == "norate_pair") {
      return norate_pair(RateFunction::power(param_or(params, "rate_power", 1.0)), required(params, "delta"), n);
    }
    if (constructor == "blowup_pair") {
      if (!params.contains("family")) throw InputError("blowup_pair needs a family descriptor");
      return blowup_pair(family_from_json(params.at("family")), required(params, "theta0"),
                         required(params, "delta_gap"), n > 0 ? n : 10, required(params, "z_plus"));
    }
    throw InputError("unknown instance constructor '" + constructor + "'");
  });
}

Json report_to_json(const ConditionReport& r) {
  Json witness = nullptr;
  if (r.witness) {
    switch (r.witness->kind) {
      case Witness::Kind::theta:
        witness = Json{{"theta", r.witness->point}};
        break;
      case Witness::Kind::z:
        witness = Json{{"z", r.witness->point}};
        break;
      case Witness::Kind::interval:
        witness = Json{{"interval", interval_to_json(r.witness->interval)}};
        break;
    }
  }
  Json constants = Json::array();
  for (const auto& [set, value] : r.constants) {
    constants.push_back(Json{{"set", interval_to_json(set)}, {"value", ext_to_json(value)}});
  }
  return Json{{"condition", to_string(r.condition)},
              {"verdict", to_string(r.verdict)},
              {"witness", witness},
              {"constants", constants}};
}

}  // namespace distfree
