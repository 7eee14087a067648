// Analyses over the stepped run of a scene: bounded simulation, timed
// search, earliest-time search and time-bounded LTL model checking.
//
// The run visits the initial state, then after every discrete normalization
// that changed something the resulting normal form (same clock), and after
// every tick the new state. Discrete normalization is deterministic, so the
// run is a single path. With `interleave` set, searches instead explore
// every order of rule firings breadth-first.
#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "thermflow/engine.hpp"
#include "thermflow/ltl.hpp"
#include "thermflow/predicate.hpp"
#include "thermflow/scene.hpp"

namespace thermflow {

struct AnalysisOptions {
  std::optional<Rational> timeStep;  // overrides the scene's
  std::size_t stepCap = 1'000'000;   // ticks allowed in an unbounded search
  bool interleave = false;
};

struct Trace {
  std::vector<SystemState> samples;
};

/// Every state of the run up to and including clock `timeBound`.
/// Throws Error unless timeBound is a non-negative multiple of the step.
Trace simulate(const SceneDef& scene, const Rational& timeBound, const AnalysisOptions& opts = {});

enum class SearchVerdict { found, noSolution, inconclusive };

struct SearchResult {
  SearchVerdict verdict = SearchVerdict::noSolution;
  std::vector<SystemState> solutions;  // clock order
  std::size_t ticks = 0;               // time steps taken
};

/// States satisfying `pred`, at most `maxSolutions`. Without a bound the
/// run continues until enough solutions are found or `stepCap` ticks have
/// been taken; hitting the cap with no solution is inconclusive.
SearchResult timed_search(const SceneDef& scene, const Predicate& pred,
                          const std::optional<Rational>& timeBound, std::size_t maxSolutions,
                          const AnalysisOptions& opts = {});

/// First state satisfying `pred`.
SearchResult find_earliest(const SceneDef& scene, const Predicate& pred, const AnalysisOptions& opts = {});

struct CheckResult {
  bool holds = false;
  Trace counterexample;  // the checked path when violated
};

/// Decides `formula` on the run up to `timeBound`, closed by a self-loop on
/// its final state. Interleaving is not supported here.
CheckResult model_check(const SceneDef& scene, const Formula& formula, const Rational& timeBound,
                        const AnalysisOptions& opts = {});

/// One row per sample: time, then <id>.temp (and <id>.heatTrans for water)
/// per entity, then <id>.qdot per interaction and per heater; ids in
/// lexicographic order within each group.
void write_csv(std::ostream& os, const Trace& trace, int precision);

}  // namespace thermflow
