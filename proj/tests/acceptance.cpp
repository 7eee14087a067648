// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status
// if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "confluence.hpp"
#include "oracles.hpp"
#include "thermflow/analysis.hpp"

namespace thermflow {
namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Equal, or off by one unit in the last displayed digit.
bool within_last_digit(const std::string& got, const std::string& want) {
  if (got == want) return true;
  auto dot = want.find('.');
  int digits = static_cast<int>(want.size() - dot - 1);
  Rational ulp = Rational(1) / pow(Rational(10), static_cast<unsigned>(digits));
  return abs(Rational::parse(got) - Rational::parse(want)) <= ulp;
}

// 1. cs1 display values at t = 1000.
Outcome cs1_simulation() {
  auto start = Clock::now();
  SceneDef cs1 = builtin("cs1");
  Trace t = simulate(cs1, Rational(1000));
  double elapsed = seconds_since(start);
  const Configuration& last = t.samples.back().config;
  const int p = cs1.params.precision;
  const std::vector<std::pair<std::string, std::string>> expected{
      {display(get_entity(last, "coffee")->temp, p), "21.6767974687"},
      {display(get_entity(last, "room")->temp, p), "21.1390469168"},
      {display(get_interaction(last, "crConduct")->qdot, p), "0.0044820616"},
      {display(get_interaction(last, "crConvect")->qdot, p), "0.0000543280"},
  };
  bool ok = t.samples.back().clock == Rational(1000) && elapsed < 5.0;
  std::ostringstream d;
  for (const auto& [got, want] : expected) {
    ok = ok && within_last_digit(got, want);
    d << got << (got == want ? "==" : "!=") << want << " ";
  }
  d << "in " << elapsed << "s (limit 5s)";
  return {ok, d.str()};
}

// 2. cs1 equalization within 1/1000 C, unbounded search.
constexpr long kGoldenEqualizationClock = 2388;

Outcome cs1_equalization() {
  SceneDef cs1 = builtin("cs1");
  Predicate close = parse_predicate("abs(temp(coffee) - temp(room)) <= 1/1000", cs1.objects);
  auto start = Clock::now();
  SearchResult first = timed_search(cs1, close, std::nullopt, 1);
  double elapsed = seconds_since(start);
  SearchResult again = timed_search(cs1, close, std::nullopt, 1);
  if (first.verdict != SearchVerdict::found) return {false, "no solution found"};
  const Rational& clock = first.solutions.front().clock;
  bool stable = again.verdict == SearchVerdict::found && again.solutions.front() == first.solutions.front();
  bool ok = clock >= Rational(2300) && clock <= Rational(2400) && clock == Rational(kGoldenEqualizationClock) &&
            stable && elapsed < 10.0;
  std::ostringstream d;
  d << "clock=" << clock << " (golden " << kGoldenEqualizationClock << ", window [2300,2400]), stable="
    << (stable ? "yes" : "no") << ", " << elapsed << "s (limit 10s)";
  return {ok, d.str()};
}

// 3. cs3 stability under the thermostat.
Outcome cs3_stability() {
  SceneDef cs3 = builtin("cs3");
  auto start = Clock::now();
  FormulaPtr f = parse_formula("[] (temp-ok -> [] temp-ok)", cs3.prop_names());
  CheckResult r = model_check(cs3, *f, Rational(1500));
  double elapsed = seconds_since(start);
  std::ostringstream d;
  d << (r.holds ? "holds" : "violated") << " in " << elapsed << "s (limit 10s)";
  return {r.holds && elapsed < 10.0, d.str()};
}

// 4. cs2 melting onset against a separate GMP recurrence.
Outcome cs2_melting_onset() {
  SceneDef cs2 = builtin("cs2");
  SearchResult r = find_earliest(cs2, parse_predicate("phaseIs(coffee, melting)", cs2.objects));
  if (r.verdict != SearchVerdict::found) return {false, "engine found no melting state"};

  oracle::CoffeeRoomRecurrence o{.coffee = -10, .room = 20, .heater = mpq_class(3, 2)};
  while (o.coffee < 0) o.advance();

  const SystemState& s = r.solutions.front();
  bool clock_ok = s.clock.raw() == o.clock;
  bool temps_ok = get_entity(s.config, "coffee")->temp.raw() == o.coffee &&
                  get_entity(s.config, "room")->temp.raw() == o.room;
  std::ostringstream d;
  d << "engine t=" << s.clock << ", oracle t=" << o.clock.get_str()
    << ", coffee=" << display(get_entity(s.config, "coffee")->temp, 10) << " (published run: 22 s)";
  return {clock_ok && temps_ok, d.str()};
}

// 5. Exact energy bookkeeping.
Outcome conservation() {
  SceneDef cs1 = builtin("cs1");
  Trace t = simulate(cs1, Rational(2500));
  const auto* c0 = get_entity(cs1.objects, "coffee");
  const auto* r0 = get_entity(cs1.objects, "room");
  const Rational cc = c0->mass * c0->heatCap, cr = r0->mass * r0->heatCap;
  std::size_t bad = 0;
  for (const auto& s : t.samples) {
    Rational balance = cc * (get_entity(s.config, "coffee")->temp - c0->temp) +
                       cr * (get_entity(s.config, "room")->temp - r0->temp);
    if (!balance.is_zero()) ++bad;
  }

  SceneDef cs2 = builtin("cs2");
  Trace t2 = simulate(cs2, Rational(60));
  std::size_t checked = 0, bad2 = 0;
  for (const auto& s : t2.samples) {
    bool all_default = true;
    Rational energy;
    for (const auto* e : s.config.all<ThermalEntity>()) {
      all_default = all_default && e->mode == CompMode::normal;
      const auto* e0 = get_entity(cs2.objects, e->id);
      energy += e0->mass * e0->heatCap * (e->temp - e0->temp);
    }
    if (!all_default) break;
    ++checked;
    if (energy != s.clock * Rational(3, 2)) ++bad2;
  }
  std::ostringstream d;
  d << "cs1: " << t.samples.size() << " samples, " << bad << " imbalanced; cs2: " << checked
    << " default-mode samples, " << bad2 << " off clock*3/2";
  return {bad == 0 && bad2 == 0 && t.samples.size() == 2501 && checked > 1, d.str()};
}

// 6. Confluence of discrete rules.
Outcome confluence() {
  const PhysConstants k;
  std::mt19937_64 rng(1234);
  int configs = 0, with_rules = 0, failures = 0;
  for (; configs < 1000; ++configs) {
    Configuration c = testing::random_boundary_config(rng, k);
    if (!enabled_rules(c, k).empty()) ++with_rules;
    std::vector<Configuration> forms;
    testing::collect_normal_forms(c, k, forms);
    if (forms.size() != 1 || !time_can_advance(forms.front(), k) || normalize_discrete(c, k) != forms.front())
      ++failures;
  }
  std::ostringstream d;
  d << configs << " configurations (" << with_rules << " with enabled rules), " << failures << " failures";
  return {failures == 0 && with_rules > 0, d.str()};
}

// 7. Numerics.
Outcome numerics() {
  int failures = 0;
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<long> v(-10'000, 10'000);

  for (int i = 0; i < 200; ++i) {
    Rational y(v(rng), 13), h(std::abs(v(rng)) + 1, 17), f(v(rng), 19), g(v(rng), 23);
    if (euler_step(y, h, Rational(0)) != y) ++failures;
    if (euler_step(y, h, f + g) - y != (euler_step(y, h, f) - y) + (euler_step(y, h, g) - y)) ++failures;
    if (euler_step(y, h, f) != y + h * f) ++failures;
  }

  const PhysConstants k;
  for (int i = 0; i < 200; ++i) {
    Rational t1(v(rng), 7), t2(v(rng), 11);
    ThermalInteraction cond{.id = "c", .params = Conduction{Rational(15, 10000), Rational(1, 200)},
                            .entity1 = "a", .entity2 = "b", .area = Rational(121, 4375)};
    ThermalInteraction conv{.id = "v", .params = Convection{Rational(20, 1000)}, .entity1 = "a", .entity2 = "b",
                            .area = Rational(22, 4375)};
    ThermalInteraction rad{.id = "r", .params = Radiation{Rational(9, 10)}, .entity1 = "a", .entity2 = "b",
                           .area = Rational(1)};
    for (const auto* i : {&cond, &conv}) {
      if (flow_rate(*i, t1, t2, k).sign() != (t1 - t2).sign()) ++failures;
      if (!flow_rate(*i, t1, t1, k).is_zero()) ++failures;
    }
    if (flow_rate(rad, t1, t2, k).sign() != (pow(t1, 4) - pow(t2, 4)).sign()) ++failures;
    if (!flow_rate(rad, t2, t2, k).is_zero()) ++failures;
  }

  std::uniform_int_distribution<std::int64_t> num(-1'000'000'000'000LL, 1'000'000'000'000LL);
  std::uniform_int_distribution<std::int64_t> den(1, 1'000'000'000LL);
  int display_mismatch = 0;
  for (int i = 0; i < 1000; ++i) {
    std::int64_t n = num(rng), d = den(rng);
    Rational x = Rational::parse(std::to_string(n) + "/" + std::to_string(d));
    if (display(x, 10) != oracle::long_division(n, d, 10)) ++display_mismatch;
  }
  std::ostringstream d;
  d << failures << " euler/flow failures, " << display_mismatch << "/1000 display mismatches";
  return {failures == 0 && display_mismatch == 0, d.str()};
}

}  // namespace
}  // namespace thermflow

int main() {
  using namespace thermflow;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 cs1 simulation to t=1000 matches published displays", cs1_simulation},
      {"AC2 cs1 equalization search", cs1_equalization},
      {"AC3 cs3 stability model check", cs3_stability},
      {"AC4 cs2 melting onset equals independent recurrence", cs2_melting_onset},
      {"AC5 exact energy conservation", conservation},
      {"AC6 confluence of discrete rules", confluence},
      {"AC7 numerics", numerics},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
