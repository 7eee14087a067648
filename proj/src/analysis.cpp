#include "thermflow/analysis.hpp"

#include <deque>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>

namespace thermflow {

namespace {

enum class RunEnd { stopped, bound, cap };

using Visitor = std::function<bool(const SystemState&)>;

Rational time_step(const SceneDef& scene, const AnalysisOptions& opts) {
  Rational h = opts.timeStep.value_or(scene.params.timeStep);
  if (h.sign() <= 0) throw Error("time step must be positive");
  return h;
}

void check_bound(const Rational& bound, const Rational& h) {
  if (bound.sign() < 0) throw Error("time bound must be non-negative");
  Rational steps = bound / h;
  if (steps.denominator() != 1)
    throw Error("time bound " + bound.str() + " is not a multiple of the time step " + h.str());
}

// Walks the deterministic run; `visit` returns false to stop.
RunEnd walk(const SceneDef& scene, const Rational& h, const std::optional<Rational>& bound,
            std::size_t cap, std::size_t& ticks, const Visitor& visit) {
  const PhysConstants& k = scene.params.constants;
  SystemState state = scene.initial_state();
  ticks = 0;
  if (!visit(state)) return RunEnd::stopped;
  for (;;) {
    Configuration normal = normalize_discrete(state.config, k);
    if (normal != state.config) {
      state.config = std::move(normal);
      if (!visit(state)) return RunEnd::stopped;
    }
    if (bound && state.clock >= *bound) return RunEnd::bound;
    if (!bound && ticks >= cap) return RunEnd::cap;
    state = tick(state, h, k);
    ++ticks;
    if (!visit(state)) return RunEnd::stopped;
  }
}

std::string fingerprint(const Configuration& c) {
  std::ostringstream os;
  for (const auto& [id, obj] : c) {
    os << id << '{';
    if (const auto* e = std::get_if<ThermalEntity>(&obj))
      os << e->temp << ',' << e->heatTrans << ',' << to_string(e->phase) << ',' << to_string(e->mode);
    else if (const auto* i = std::get_if<ThermalInteraction>(&obj))
      os << i->qdot;
    else {
      const auto& g = std::get<HeatGenerator>(obj);
      os << g.qdot << ',' << (g.smart ? to_string(g.smart->status) : "-");
    }
    os << '}';
  }
  return os.str();
}

constexpr std::size_t kMaxLayerStates = 100'000;

// Breadth-first exploration of every rule interleaving, one clock layer at
// a time so that visits stay in clock order.
RunEnd explore_interleaved(const SceneDef& scene, const Rational& h, const std::optional<Rational>& bound,
                           std::size_t cap, std::size_t& ticks, const Visitor& visit) {
  const PhysConstants& k = scene.params.constants;
  std::vector<SystemState> layer{scene.initial_state()};
  ticks = 0;
  for (;;) {
    std::set<std::string> seen;
    std::deque<SystemState> queue;
    std::vector<SystemState> quiescent;
    for (auto& s : layer)
      if (seen.insert(fingerprint(s.config)).second) queue.push_back(std::move(s));
    while (!queue.empty()) {
      SystemState s = std::move(queue.front());
      queue.pop_front();
      if (!visit(s)) return RunEnd::stopped;
      auto rules = enabled_rules(s.config, k);
      if (rules.empty()) {
        quiescent.push_back(std::move(s));
        continue;
      }
      for (const auto& r : rules) {
        SystemState succ{apply_rule(s.config, r, k), s.clock};
        if (seen.insert(fingerprint(succ.config)).second) queue.push_back(std::move(succ));
      }
      if (seen.size() > kMaxLayerStates)
        throw LivelockError("interleaved discrete exploration does not settle");
    }
    if (quiescent.empty()) return RunEnd::bound;
    if (bound && quiescent.front().clock >= *bound) return RunEnd::bound;
    if (!bound && ticks >= cap) return RunEnd::cap;
    layer.clear();
    for (const auto& s : quiescent) layer.push_back(tick(s, h, k));
    ++ticks;
  }
}

}  // namespace

Trace simulate(const SceneDef& scene, const Rational& timeBound, const AnalysisOptions& opts) {
  Rational h = time_step(scene, opts);
  check_bound(timeBound, h);
  Trace trace;
  std::size_t ticks = 0;
  walk(scene, h, timeBound, opts.stepCap, ticks, [&](const SystemState& s) {
    trace.samples.push_back(s);
    return true;
  });
  return trace;
}

SearchResult timed_search(const SceneDef& scene, const Predicate& pred,
                          const std::optional<Rational>& timeBound, std::size_t maxSolutions,
                          const AnalysisOptions& opts) {
  if (maxSolutions == 0) throw Error("maxSolutions must be at least 1");
  Rational h = time_step(scene, opts);
  if (timeBound) check_bound(*timeBound, h);

  SearchResult result;
  auto visit = [&](const SystemState& s) {
    if (pred.evaluate(s.config)) result.solutions.push_back(s);
    return result.solutions.size() < maxSolutions;
  };
  RunEnd end = opts.interleave ? explore_interleaved(scene, h, timeBound, opts.stepCap, result.ticks, visit)
                               : walk(scene, h, timeBound, opts.stepCap, result.ticks, visit);
  if (!result.solutions.empty())
    result.verdict = SearchVerdict::found;
  else
    result.verdict = end == RunEnd::cap ? SearchVerdict::inconclusive : SearchVerdict::noSolution;
  return result;
}

SearchResult find_earliest(const SceneDef& scene, const Predicate& pred, const AnalysisOptions& opts) {
  return timed_search(scene, pred, std::nullopt, 1, opts);
}

CheckResult model_check(const SceneDef& scene, const Formula& formula, const Rational& timeBound,
                        const AnalysisOptions& opts) {
  if (opts.interleave) throw Error("model checking explores the deterministic run only");
  Rational h = time_step(scene, opts);
  check_bound(timeBound, h);
  if (timeBound.sign() <= 0) throw Error("model checking needs a positive time bound");

  Trace path = simulate(scene, timeBound, opts);
  const std::size_t n = path.samples.size();
  Labelling labels;
  for (const auto& [name, pred] : scene.props) {
    auto& row = labels[name];
    row.reserve(n);
    for (const auto& s : path.samples) row.push_back(pred.evaluate(s.config));
  }
  CheckResult result;
  result.holds = holds_on_lasso(formula, labels, n);
  if (!result.holds) result.counterexample = std::move(path);
  return result;
}

void write_csv(std::ostream& os, const Trace& trace, int precision) {
  if (trace.samples.empty()) return;
  const Configuration& layout = trace.samples.front().config;
  os << "time";
  for (const auto* e : layout.all<ThermalEntity>()) {
    os << ',' << e->id << ".temp";
    if (e->kind == EntityKind::water) os << ',' << e->id << ".heatTrans";
  }
  for (const auto* i : layout.all<ThermalInteraction>()) os << ',' << i->id << ".qdot";
  for (const auto* g : layout.all<HeatGenerator>()) os << ',' << g->id << ".qdot";
  os << '\n';

  for (const auto& s : trace.samples) {
    os << display(s.clock, precision);
    for (const auto* e : s.config.all<ThermalEntity>()) {
      os << ',' << display(e->temp, precision);
      if (e->kind == EntityKind::water) os << ',' << display(e->heatTrans, precision);
    }
    for (const auto* i : s.config.all<ThermalInteraction>()) os << ',' << display(i->qdot, precision);
    for (const auto* g : s.config.all<HeatGenerator>()) os << ',' << display(g->qdot, precision);
    os << '\n';
  }
}

}  // namespace thermflow
