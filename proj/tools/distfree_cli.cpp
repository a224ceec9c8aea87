#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "distfree/harness.hpp"

using namespace distfree;

namespace {

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> reps;
  std::string out;
  // Empty: the command picks (tables default to csv, records to json).
  std::string format;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// Inline JSON when it looks like an object, otherwise a file path.
Json json_argument(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("invalid inline JSON: ") + e.what());
    }
  }
  return read_json_file(text);
}

Json load_config(const Globals& g) {
  if (g.config.empty()) throw InputError("--config is required for this command");
  Json j = read_json_file(g.config);
  if (g.seed) j["seed"] = *g.seed;
  if (g.reps) j["replications"] = *g.reps;
  return j;
}

// Writes to --out, or stdout when no path was given.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw InputError("cannot write '" + g.out + "'");
  f << text;
  if (!f) throw InputError("failed writing '" + g.out + "'");
}

std::string rows_text(const Globals& g, const std::vector<ResultRow>& rows) {
  if (g.format == "json") return rows_to_json(rows).dump(2) + "\n";
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

void run_dopt(const Globals& g, const std::string& instance_path, const std::string& f0_arg, const std::string& f1_arg,
              double tol) {
  Json out;
  if (!instance_path.empty()) {
    const HardInstance h = instance_from_json(read_json_file(instance_path));
    const ExtReal d = dopt(population_loss(h.family, h.p0), population_loss(h.family, h.p1), tol);
    out = Json{{"dopt", ext_to_json(d)}, {"dopt_lb", h.dopt_lb}, {"constructor", h.constructor}};
  } else {
    if (f0_arg.empty() || f1_arg.empty()) throw InputError("dopt needs --instance or both --f0 and --f1");
    const ConvexFn f0(pwl_from_json(json_argument(f0_arg)));
    const ConvexFn f1(pwl_from_json(json_argument(f1_arg)));
    out = Json{{"dopt", ext_to_json(dopt(f0, f1, tol))}};
  }
  if (g.format == "csv") {
    emit(g, "dopt\n" + ext_from_json(out["dopt"]).to_string() + "\n");
  } else {
    emit(g, out.dump(2) + "\n");
  }
}

void run_instance(const Globals& g, std::string constructor, const std::string& params_arg) {
  Json params = params_arg.empty() ? Json::object() : json_argument(params_arg);
  if (!g.config.empty()) {
    const Json c = read_json_file(g.config);
    if (constructor.empty()) constructor = c.value("constructor", std::string());
    if (params_arg.empty()) params = c.value("params", Json::object());
  }
  if (constructor.empty()) throw InputError("instance needs --constructor or a config with a constructor");
  const HardInstance h = build_instance(constructor, params);
  verify(h);
  emit(g, instance_to_json(h).dump(2) + "\n");
}

void run_risk(const Globals& g) {
  const ExperimentConfig c = parse_config(load_config(g));
  switch (c.kind) {
    case ExperimentKind::risk_curve:
      emit(g, rows_text(g, risk_curve(c)));
      return;
    case ExperimentKind::hard_instance:
      emit(g, rows_text(g, hard_instance_rows(c)));
      return;
    default:
      throw ValidationError("risk expects a risk_curve or hard_instance config, got " + to_string(c.kind));
  }
}

void run_stationarity(const Globals& g) {
  const ExperimentConfig c = parse_config(load_config(g));
  if (c.kind != ExperimentKind::stationarity) {
    throw ValidationError("stationarity expects a stationarity config, got " + to_string(c.kind));
  }
  const ConcentrationResult r =
      concentration_experiment(*c.family, *c.sampler, c.n_grid.front(), c.t, c.replications, c.seed, c.threads);
  const Json summary = summary_to_json(r.summary);
  if (g.format == "json") {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
      rows.push_back(Json{{"rep", row.rep},
                          {"theta_hat", row.theta_hat},
                          {"stat_error", row.stat_error},
                          {"exceeded", row.exceeded}});
    }
    emit(g, Json{{"summary", summary}, {"rows", rows}}.dump(2) + "\n");
    return;
  }
  std::ostringstream out;
  write_stationarity_csv(out, r);
  emit(g, out.str());
  // Rows own stdout when no --out is given.
  (g.out.empty() ? std::cerr : std::cout) << summary.dump() << "\n";
}

void run_conditions(const Globals& g, const std::string& family_arg) {
  Json j = g.config.empty() ? Json::object() : read_json_file(g.config);
  if (!family_arg.empty()) j["family"] = json_argument(family_arg);
  j["kind"] = "condition_report";
  const ExperimentConfig c = parse_config(j);
  Json reports = Json::array();
  reports.push_back(report_to_json(check_condition_c1(*c.family, c.compacts)));
  if (c.epsilon && c.probe) {
    reports.push_back(report_to_json(check_condition_c2(*c.family, *c.epsilon, *c.probe)));
  }
  emit(g, reports.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distribution-free stochastic optimization experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "Experiment config (JSON)");
  app.add_option("--seed", g.seed, "Override the config seed");
  app.add_option("--reps", g.reps, "Override the number of replications")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output path (default stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  auto* dopt_cmd = app.add_subcommand("dopt", "Optimization distance of two losses or of an instance");
  std::string instance_path;
  std::string f0;
  std::string f1;
  double tol = 1e-9;
  dopt_cmd->add_option("--instance", instance_path, "Certified instance file");
  dopt_cmd->add_option("--f0", f0, "Piecewise-linear loss (JSON or file)");
  dopt_cmd->add_option("--f1", f1, "Piecewise-linear loss (JSON or file)");
  dopt_cmd->add_option("--tol", tol, "Bisection tolerance")->check(CLI::PositiveNumber);

  auto* instance_cmd = app.add_subcommand("instance", "Build and certify a hard instance");
  std::string constructor;
  std::string params;
  instance_cmd->add_option("--constructor", constructor, "quantile_pair | norate_pair | blowup_pair");
  instance_cmd->add_option("--params", params, "Constructor parameters (JSON or file)");

  auto* risk_cmd = app.add_subcommand("risk", "Monte Carlo excess risk from a config");
  auto* stat_cmd = app.add_subcommand("stationarity", "Stationarity concentration experiment");
  auto* cond_cmd = app.add_subcommand("conditions", "Check conditions C1 and C2 for a family");
  std::string family;
  cond_cmd->add_option("--family", family, "Family descriptor (JSON or file)");

  CLI11_PARSE(app, argc, argv);

  try {
    if ((*risk_cmd || *stat_cmd) && g.format.empty()) g.format = "csv";
    if (*dopt_cmd) {
      if (g.format.empty()) g.format = "json";
      run_dopt(g, instance_path, f0, f1, tol);
    } else if (*instance_cmd) {
      run_instance(g, constructor, params);
    } else if (*risk_cmd) {
      run_risk(g);
    } else if (*stat_cmd) {
      run_stationarity(g);
    } else if (*cond_cmd) {
      run_conditions(g, family);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
