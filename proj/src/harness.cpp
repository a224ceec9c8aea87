#include "distfree/harness.hpp"

#include <cmath>
#include <ostream>

#include "distfree/parallel.hpp"

namespace distfree {

ExtReal excess_at(const ConvexFn& population, ExtReal optimum, ExtReal theta_hat) {
  ExtReal value;
  if (theta_hat.is_finite()) {
    value = population(theta_hat.value());
  } else {
    const Interval& dom = population.domain();
    const bool open_side = theta_hat.is_pos_inf() ? dom.hi().is_pos_inf() : dom.lo().is_neg_inf();
    value = open_side ? limit_value(population, theta_hat.is_pos_inf() ? 1 : -1) : ExtReal::pos_inf();
  }
  if (value.is_pos_inf()) return ExtReal::pos_inf();
  // The optimum is located to bisection accuracy; clip the rounding.
  return max(value - optimum, 0.0);
}

RiskEstimate excess_risk(const LossFamily& family, const DiscreteDist& p, const EstimatorSpec& estimator, long long n,
                         std::uint64_t reps, std::uint64_t seed, unsigned threads) {
  if (n < 1) throw InputError("excess_risk needs n >= 1");
  if (reps < 1) throw InputError("excess_risk needs at least one replication");
  const ConvexFn population = population_loss(family, p);
  const ExtReal optimum = minimize(population, family.theta_domain()).value;
  if (!optimum.is_finite()) throw ConfigurationError("population loss has no finite infimum");

  // Fail fast on configurations the estimator rejects.
  if (estimator.kind == EstimatorSpec::Kind::restricted_sgd) {
    const Interval feasible = feasible_set(estimator, family, n);
    if (feasible.has_interior() && !compact_lipschitz(family, feasible).is_finite()) {
      throw ConfigurationError("restricted_sgd: infinite Lipschitz constant on " + feasible.to_string());
    }
  }

  std::vector<ExtReal> values(reps);
  parallel_for(reps, threads, [&](std::uint64_t rep) {
    RandomStream rng = seeded_stream(seed, rep);
    const std::vector<double> sample = p.sample(static_cast<std::size_t>(n), rng);
    values[rep] = excess_at(population, optimum, fit(estimator, family, sample));
  });

  RiskEstimate out;
  out.n = n;
  out.estimator = estimator.name();
  out.reps = reps;
  double sum = 0.0;
  std::uint64_t finite = 0;
  for (const ExtReal& v : values) {
    if (v.is_finite()) {
      sum += v.value();
      ++finite;
    } else {
      ++out.inf_count;
    }
  }
  const double mean = finite > 0 ? sum / static_cast<double>(finite) : 0.0;
  double ss = 0.0;
  for (const ExtReal& v : values) {
    if (v.is_finite()) ss += (v.value() - mean) * (v.value() - mean);
  }
  out.stderr_ = finite > 1 ? std::sqrt(ss / static_cast<double>(finite - 1) / static_cast<double>(finite)) : 0.0;
  out.mean_excess = out.inf_count > 0 ? ExtReal::pos_inf() : ExtReal(mean);
  out.values = std::move(values);
  return out;
}

HardInstanceReport hard_instance_report(const HardInstance& instance, const std::vector<EstimatorSpec>& estimators,
                                        std::uint64_t reps, std::uint64_t seed, unsigned threads) {
  verify(instance);
  HardInstanceReport report;
  report.floor = minimax_testing_lb(instance.dopt_lb, tv_product_bound(tv(instance.p0, instance.p1), instance.n));
  for (const auto& spec : estimators) {
    EstimatorFloorCheck check{spec.name(),
                              excess_risk(instance.family, instance.p0, spec, instance.n, reps, seed, threads),
                              excess_risk(instance.family, instance.p1, spec, instance.n, reps, seed, threads),
                              0.0,
                              0.0,
                              false};
    const bool first = check.risk_p0.mean_excess >= check.risk_p1.mean_excess;
    const RiskEstimate& worst = first ? check.risk_p0 : check.risk_p1;
    check.worst_mean = worst.mean_excess;
    check.worst_stderr = worst.stderr_;
    check.floor_holds = worst.mean_excess >= report.floor - 3.0 * worst.stderr_;
    report.checks.push_back(std::move(check));
  }
  return report;
}

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::risk_curve:
      return "risk_curve";
    case ExperimentKind::hard_instance:
      return "hard_instance";
    case ExperimentKind::stationarity:
      return "stationarity";
    case ExperimentKind::condition_report:
      return "condition_report";
  }
  return "risk_curve";
}

namespace {

ExperimentKind parse_kind(const std::string& s) {
  if (s == "risk_curve") return ExperimentKind::risk_curve;
  if (s == "hard_instance") return ExperimentKind::hard_instance;
  if (s == "stationarity") return ExperimentKind::stationarity;
  if (s == "condition_report") return ExperimentKind::condition_report;
  throw ValidationError("unknown experiment kind '" + s + "'");
}

EstimatorSpec parse_estimator(const Json& j) {
  EstimatorSpec spec;
  spec.kind = EstimatorSpec::parse_kind(j.at("name").get<std::string>());
  const Json params = j.value("params", Json::object());
  if (params.contains("theta0")) spec.theta0 = ext_from_json(params.at("theta0")).value();
  if (params.contains("delta")) {
    const Json& d = params.at("delta");
    if (!(d.is_string() && d.get<std::string>() == "schedule")) spec.delta = ext_from_json(d).value();
  }
  if (params.contains("level")) spec.level = ext_from_json(params.at("level")).value();
  return spec;
}

CdfOracle parse_sampler(const Json& j) {
  const std::string name = j.at("name").get<std::string>();
  if (name == "uniform") return CdfOracle::uniform(j.value("lo", 0.0), j.value("hi", 1.0));
  if (name == "discrete") return CdfOracle::from_discrete(dist_from_json(j));
  throw ValidationError("unknown sampler '" + name + "'");
}

ResultRow summary_row(const ExperimentConfig& c, const std::string& dist_id, const RiskEstimate& r,
                      const std::string& family) {
  return {c.experiment_id, to_string(c.kind), family, dist_id, r.estimator, r.n, std::nullopt, r.mean_excess,
          r.stderr_,       r.inf_count,       c.seed};
}

void append_risk(std::vector<ResultRow>& rows, const ExperimentConfig& c, const std::string& dist_id,
                 const RiskEstimate& r, const std::string& family) {
  if (c.per_rep_rows) {
    for (std::uint64_t i = 0; i < r.values.size(); ++i) {
      rows.push_back({c.experiment_id, to_string(c.kind), family, dist_id, r.estimator, r.n, i, r.values[i],
                      std::nullopt, r.values[i].is_finite() ? 0u : 1u, c.seed});
    }
  }
  rows.push_back(summary_row(c, dist_id, r, family));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

ExperimentConfig parse_config(const Json& j) {
  try {
    ExperimentConfig c;
    c.experiment_id = j.value("experiment_id", c.experiment_id);
    c.kind = parse_kind(j.value("kind", std::string("risk_curve")));
    if (j.contains("family")) c.family = family_from_json(j.at("family"));
    if (j.contains("distributions")) {
      int index = 0;
      for (const auto& d : j.at("distributions")) {
        c.distributions.push_back({d.value("id", "P" + std::to_string(index)), dist_from_json(d)});
        ++index;
      }
    }
    if (j.contains("hard_pair")) {
      const Json& h = j.at("hard_pair");
      c.pair_schedule = PairSchedule{h.at("constructor").get<std::string>(), h.value("params", Json::object()),
                                     h.value("delta_scale", 0.5)};
    }
    if (j.contains("instance")) {
      const Json& inst = j.at("instance");
      c.instance = inst.contains("p0") ? instance_from_json(inst)
                                       : build_instance(inst.at("constructor").get<std::string>(),
                                                        inst.value("params", Json::object()));
      if (!c.family) c.family = c.instance->family;
    }
    if (j.contains("estimators")) {
      for (const auto& e : j.at("estimators")) c.estimators.push_back(parse_estimator(e));
    }
    if (j.contains("n_grid")) c.n_grid = j.at("n_grid").get<std::vector<long long>>();
    if (j.contains("n")) c.n_grid = {j.at("n").get<long long>()};
    const long long reps = j.value("replications", static_cast<long long>(c.replications));
    if (reps < 1) throw ValidationError("replications must be >= 1");
    c.replications = static_cast<std::uint64_t>(reps);
    c.seed = j.value("seed", c.seed);
    c.output = j.value("output", c.output);
    c.threads = j.value("threads", c.threads);
    c.per_rep_rows = j.value("per_rep_rows", c.per_rep_rows);
    if (j.contains("sampler")) c.sampler = parse_sampler(j.at("sampler"));
    if (j.contains("t")) c.t = ext_from_json(j.at("t")).value();
    if (j.contains("compacts")) {
      for (const auto& k : j.at("compacts")) c.compacts.push_back(interval_from_json(k));
    }
    if (j.contains("epsilon")) c.epsilon = ext_from_json(j.at("epsilon")).value();
    if (j.contains("probe")) c.probe = interval_from_json(j.at("probe"));

    for (std::size_t i = 1; i < c.n_grid.size(); ++i) {
      if (c.n_grid[i] <= c.n_grid[i - 1]) throw ValidationError("n_grid must be strictly increasing");
    }
    for (long long n : c.n_grid) {
      if (n < 1) throw ValidationError("sample sizes must be positive");
    }
    switch (c.kind) {
      case ExperimentKind::risk_curve:
        if (c.n_grid.empty()) throw ValidationError("risk_curve needs a non-empty n_grid");
        if (!c.family && !c.pair_schedule) throw ValidationError("risk_curve needs a family");
        if (c.distributions.empty() && !c.pair_schedule) {
          throw ValidationError("risk_curve needs distributions or a hard_pair schedule");
        }
        if (c.estimators.empty()) throw ValidationError("risk_curve needs at least one estimator");
        break;
      case ExperimentKind::hard_instance:
        if (!c.instance) throw ValidationError("hard_instance needs an instance");
        if (c.estimators.empty()) throw ValidationError("hard_instance needs at least one estimator");
        break;
      case ExperimentKind::stationarity:
        if (!c.family || !c.sampler) throw ValidationError("stationarity needs a family and a sampler");
        if (c.n_grid.size() != 1) throw ValidationError("stationarity needs a single n");
        break;
      case ExperimentKind::condition_report:
        if (!c.family) throw ValidationError("condition_report needs a family");
        break;
    }
    return c;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed config: ") + e.what());
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    // A descriptor that does not resolve.
    throw ValidationError(std::string("invalid config: ") + e.what());
  }
}

std::vector<ResultRow> risk_curve(const ExperimentConfig& c) {
  if (c.n_grid.empty()) throw ValidationError("risk_curve needs a non-empty n_grid");
  std::vector<ResultRow> rows;
  for (long long n : c.n_grid) {
    if (c.pair_schedule) {
      Json params = c.pair_schedule->params;
      params["delta"] = c.pair_schedule->delta_scale / static_cast<double>(n);
      params["n"] = n;
      const HardInstance inst = build_instance(c.pair_schedule->constructor, params);
      for (const auto& spec : c.estimators) {
        const std::string family = inst.family.name();
        append_risk(rows, c, inst.constructor + ":P0",
                    excess_risk(inst.family, inst.p0, spec, n, c.replications, c.seed, c.threads), family);
        append_risk(rows, c, inst.constructor + ":P1",
                    excess_risk(inst.family, inst.p1, spec, n, c.replications, c.seed, c.threads), family);
      }
      continue;
    }
    for (const auto& spec : c.estimators) {
      for (const auto& d : c.distributions) {
        append_risk(rows, c, d.id, excess_risk(*c.family, d.dist, spec, n, c.replications, c.seed, c.threads),
                    c.family->name());
      }
    }
  }
  return rows;
}

std::vector<ResultRow> hard_instance_rows(const ExperimentConfig& c) {
  if (!c.instance) throw ValidationError("hard_instance needs an instance");
  const HardInstance& inst = *c.instance;
  const HardInstanceReport report = hard_instance_report(inst, c.estimators, c.replications, c.seed, c.threads);
  std::vector<ResultRow> rows;
  const std::string family = inst.family.name();
  rows.push_back({c.experiment_id, to_string(c.kind), family, inst.constructor, "floor", inst.n, std::nullopt,
                  report.floor, std::nullopt, 0, c.seed});
  for (const auto& check : report.checks) {
    append_risk(rows, c, inst.constructor + ":P0", check.risk_p0, family);
    append_risk(rows, c, inst.constructor + ":P1", check.risk_p1, family);
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "experiment_id,kind,family,distribution_id,estimator,n,rep,value,stderr,inf_count,seed\n";
  for (const auto& r : rows) {
    out << csv_field(r.experiment_id) << ',' << r.kind << ',' << r.family << ',' << csv_field(r.distribution_id)
        << ',' << r.estimator << ',' << r.n << ',' << (r.rep ? std::to_string(*r.rep) : "summary") << ','
        << r.value.to_string() << ',' << (r.stderr_ ? ExtReal(*r.stderr_).to_string() : "") << ',' << r.inf_count
        << ',' << r.seed << '\n';
  }
}

Json rows_to_json(const std::vector<ResultRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back(Json{{"experiment_id", r.experiment_id},
                       {"kind", r.kind},
                       {"family", r.family},
                       {"distribution_id", r.distribution_id},
                       {"estimator", r.estimator},
                       {"n", r.n},
                       {"rep", r.rep ? Json(*r.rep) : Json("summary")},
                       {"value", ext_to_json(r.value)},
                       {"stderr", r.stderr_ ? Json(*r.stderr_) : Json(nullptr)},
                       {"inf_count", r.inf_count},
                       {"seed", r.seed}});
  }
  return out;
}

void write_stationarity_csv(std::ostream& out, const ConcentrationResult& result) {
  out << "rep,theta_hat,stat_error,exceeded\n";
  for (const auto& r : result.rows) {
    out << r.rep << ',' << ExtReal(r.theta_hat).to_string() << ',' << ExtReal(r.stat_error).to_string() << ','
        << (r.exceeded ? "true" : "false") << '\n';
  }
}

Json summary_to_json(const ConcentrationSummary& s) {
  return Json{{"freq", s.freq}, {"bound", s.bound}, {"n", s.n}, {"t", s.t}, {"alpha", s.alpha}, {"reps", s.reps}};
}

}  // namespace distfree
