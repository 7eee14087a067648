#include "thermflow/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "thermflow/analysis.hpp"

namespace thermflow {

namespace {

using nlohmann::ordered_json;

struct Invocation {
  std::string command;
  std::string scene;
  std::string until;
  std::string step;
  std::string pred;
  std::string formula;
  std::string csvOut;
  std::string collect;
  std::size_t max = 1;
  bool json = false;
  bool interleave = false;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

SceneDef load(const std::string& spec) {
  constexpr std::string_view prefix = "builtin:";
  if (std::string_view(spec).substr(0, prefix.size()) == prefix) return builtin(spec.substr(prefix.size()));
  return load_scene(spec);
}

Rational option_rational(const std::string& text, const char* flag) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& ex) {
    throw UsageError(std::string(flag) + ": " + ex.what());
  }
}

std::vector<std::pair<std::string, std::string>> bindings(const Configuration& c, int precision) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [id, obj] : c) {
    if (const auto* e = std::get_if<ThermalEntity>(&obj)) {
      out.emplace_back(id + ".temp", display(e->temp, precision));
      if (e->kind == EntityKind::water) {
        out.emplace_back(id + ".phase", std::string(to_string(e->phase)));
        out.emplace_back(id + ".heatTrans", display(e->heatTrans, precision));
      }
    } else if (const auto* i = std::get_if<ThermalInteraction>(&obj)) {
      out.emplace_back(id + ".qdot", display(i->qdot, precision));
    } else {
      const auto& g = std::get<HeatGenerator>(obj);
      out.emplace_back(id + ".qdot", display(g.qdot, precision));
      if (g.smart) out.emplace_back(id + ".status", std::string(to_string(g.smart->status)));
    }
  }
  return out;
}

std::string state_line(const SystemState& s, int precision) {
  std::string line = "time=" + display(s.clock, precision);
  for (const auto& [key, value] : bindings(s.config, precision)) line += " " + key + "=" + value;
  return line;
}

ordered_json state_json(const SystemState& s, int precision) {
  ordered_json j;
  j["clock"] = display(s.clock, precision);
  j["clockExact"] = s.clock.str();
  ordered_json b = ordered_json::object();
  for (const auto& [key, value] : bindings(s.config, precision)) b[key] = value;
  j["bindings"] = std::move(b);
  return j;
}

std::size_t step_cap_from_env() {
  const char* raw = std::getenv("THERMFLOW_STEP_CAP");
  if (!raw) return AnalysisOptions{}.stepCap;
  std::string text(raw);
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos || text.size() > 18)
    throw UsageError("THERMFLOW_STEP_CAP must be a positive integer");
  auto cap = std::stoull(text);
  if (cap == 0) throw UsageError("THERMFLOW_STEP_CAP must be a positive integer");
  return cap;
}

void write_csv_file(const std::string& path, const Trace& trace, int precision) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  write_csv(f, trace, precision);
}

int execute(const Invocation& inv, std::ostream& out) {
  SceneDef scene = load(inv.scene);
  const int precision = scene.params.precision;

  AnalysisOptions opts;
  opts.interleave = inv.interleave;
  opts.stepCap = step_cap_from_env();
  if (!inv.step.empty()) {
    opts.timeStep = option_rational(inv.step, "--step");
    if (opts.timeStep->sign() <= 0) throw UsageError("--step must be positive");
  }
  const Rational h = opts.timeStep.value_or(scene.params.timeStep);

  std::optional<Rational> until;
  if (!inv.until.empty()) {
    until = option_rational(inv.until, "--until");
    if (until->sign() < 0 || (*until / h).denominator() != 1)
      throw UsageError("--until must be a non-negative multiple of the time step " + h.str());
  }
  if (!inv.collect.empty() && inv.collect != "csv") throw UsageError("--collect only supports 'csv'");

  ordered_json j;
  j["command"] = inv.command;

  if (inv.command == "sim") {
    if (!until) throw UsageError("sim requires --until");
    if (inv.interleave) throw UsageError("--interleave applies to search and find-earliest");
    Trace trace = simulate(scene, *until, opts);
    if (!inv.csvOut.empty()) write_csv_file(inv.csvOut, trace, precision);
    const SystemState& last = trace.samples.back();
    if (inv.collect == "csv") {
      write_csv(out, trace, precision);
    } else if (inv.json) {
      j["verdict"] = "ok";
      j.update(state_json(last, precision));
      out << j.dump(2) << "\n";
    } else {
      out << "time=" << display(last.clock, precision) << "\n";
      for (const auto& [key, value] : bindings(last.config, precision)) out << key << "=" << value << "\n";
    }
    return kExitOk;
  }

  if (inv.command == "search" || inv.command == "find-earliest") {
    if (inv.pred.empty()) throw UsageError(inv.command + " requires --pred");
    Predicate pred = parse_predicate(inv.pred, scene.objects);
    SearchResult r = inv.command == "search" ? timed_search(scene, pred, until, inv.max, opts)
                                             : (until ? timed_search(scene, pred, until, 1, opts)
                                                      : find_earliest(scene, pred, opts));
    const char* verdict = r.verdict == SearchVerdict::found        ? "solution"
                          : r.verdict == SearchVerdict::noSolution ? "no solution"
                                                                   : "inconclusive";
    if (inv.json) {
      j["verdict"] = verdict;
      j["solutions"] = ordered_json::array();
      for (const auto& s : r.solutions) j["solutions"].push_back(state_json(s, precision));
      out << j.dump(2) << "\n";
    } else if (r.solutions.empty()) {
      out << verdict << "\n";
    } else {
      for (const auto& s : r.solutions) out << state_line(s, precision) << "\n";
    }
    switch (r.verdict) {
      case SearchVerdict::found: return kExitOk;
      case SearchVerdict::noSolution: return kExitNegative;
      case SearchVerdict::inconclusive: return kExitDiagnostic;
    }
  }

  // mc
  if (inv.formula.empty()) throw UsageError("mc requires --formula");
  if (!until) throw UsageError("mc requires --until");
  if (until->sign() <= 0) throw UsageError("mc requires a positive --until");
  if (inv.interleave) throw UsageError("--interleave applies to search and find-earliest");
  FormulaPtr formula = parse_formula(inv.formula, scene.prop_names());
  CheckResult r = model_check(scene, *formula, *until, opts);
  if (!r.holds && !inv.csvOut.empty()) write_csv_file(inv.csvOut, r.counterexample, precision);
  if (inv.json) {
    j["verdict"] = r.holds ? "holds" : "violated";
    if (!r.holds) {
      j["counterexample"] = ordered_json::array();
      for (const auto& s : r.counterexample.samples) j["counterexample"].push_back(state_json(s, precision));
    }
    out << j.dump(2) << "\n";
  } else {
    out << (r.holds ? "holds" : "violated") << "\n";
    if (!r.holds) {
      out << "counterexample:\n";
      for (const auto& s : r.counterexample.samples) out << state_line(s, precision) << "\n";
    }
  }
  return r.holds ? kExitOk : kExitNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact-rational simulation and bounded model checking of thermal systems", "thermflow"};
  app.require_subcommand(1);
  Invocation inv;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--scene", inv.scene, "Scene file or builtin:cs1|cs2|cs3")->required();
    sub->add_option("--step", inv.step, "Time step overriding the scene's");
    sub->add_flag("--json", inv.json, "Emit a machine-readable JSON verdict");
  };
  auto* sim = app.add_subcommand("sim", "Simulate up to a time bound");
  common(sim);
  sim->add_option("--until", inv.until, "Time bound");
  sim->add_option("--csv", inv.csvOut, "Write the full trace as CSV to this file");
  sim->add_option("--collect", inv.collect, "Print the trace to stdout instead (only 'csv')");

  auto* search = app.add_subcommand("search", "Search for states satisfying a predicate");
  common(search);
  search->add_option("--pred", inv.pred, "State predicate");
  search->add_option("--until", inv.until, "Time bound (default: unbounded)");
  search->add_option("--max", inv.max, "Maximum number of solutions")->check(CLI::PositiveNumber);
  search->add_flag("--interleave", inv.interleave, "Explore every order of discrete rule firings");

  auto* earliest = app.add_subcommand("find-earliest", "Earliest state satisfying a predicate");
  common(earliest);
  earliest->add_option("--pred", inv.pred, "State predicate");
  earliest->add_option("--until", inv.until, "Time bound (default: unbounded)");
  earliest->add_flag("--interleave", inv.interleave, "Explore every order of discrete rule firings");

  auto* mc = app.add_subcommand("mc", "Time-bounded LTL model checking");
  common(mc);
  mc->add_option("--formula", inv.formula, "LTL formula over the scene's props");
  mc->add_option("--until", inv.until, "Time bound");
  mc->add_option("--csv", inv.csvOut, "Write the counterexample as CSV to this file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "thermflow: " << e.what() << "\n";
    return kExitUsage;
  }
  inv.command = app.get_subcommands().front()->get_name();

  try {
    return execute(inv, out);
  } catch (const LivelockError& e) {
    err << "thermflow: " << e.what() << "\n";
    return kExitDiagnostic;
  } catch (const UrgencyViolation& e) {
    err << "thermflow: " << e.what() << "\n";
    return kExitDiagnostic;
  } catch (const UsageError& e) {
    err << "thermflow: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "thermflow: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "thermflow: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace thermflow
