#include <sstream>

#include <gtest/gtest.h>

#include "thermflow/analysis.hpp"

namespace thermflow {
namespace {

Predicate pred(const SceneDef& s, const char* text) { return parse_predicate(text, s.objects); }

TEST(Simulate, ZeroBoundIsInitialState) {
  auto cs1 = builtin("cs1");
  auto t = simulate(cs1, Rational(0));
  ASSERT_EQ(t.samples.size(), 1u);
  EXPECT_EQ(t.samples[0], cs1.initial_state());
}

TEST(Simulate, OneStep) {
  auto t = simulate(builtin("cs1"), Rational(1));
  ASSERT_EQ(t.samples.size(), 2u);
  EXPECT_EQ(get_entity(t.samples.back().config, "coffee")->temp, Rational::parse("580283/8316"));
}

TEST(Simulate, BoundMustBeMultipleOfStep) {
  auto cs1 = builtin("cs1");
  EXPECT_THROW(simulate(cs1, Rational(1, 2)), Error);
  EXPECT_THROW(simulate(cs1, Rational(-1)), Error);
  AnalysisOptions half;
  half.timeStep = Rational(1, 2);
  EXPECT_EQ(simulate(cs1, Rational(3, 2), half).samples.size(), 4u);
}

TEST(Simulate, PrefixProperty) {
  auto cs2 = builtin("cs2");
  auto shorter = simulate(cs2, Rational(20));
  auto longer = simulate(cs2, Rational(40));
  ASSERT_LE(shorter.samples.size(), longer.samples.size());
  for (std::size_t i = 0; i < shorter.samples.size(); ++i) EXPECT_EQ(shorter.samples[i], longer.samples[i]);
}

TEST(Simulate, DiscreteNormalFormsAreSamples) {
  // cs3 starts with two enabled rules: the normal form shares clock 0.
  auto t = simulate(builtin("cs3"), Rational(2));
  ASSERT_EQ(t.samples.size(), 4u);
  EXPECT_EQ(t.samples[0].clock, Rational(0));
  EXPECT_EQ(t.samples[1].clock, Rational(0));
  EXPECT_EQ(get_heater(t.samples[1].config, "coffeeHeater")->smart->status, HeaterStatus::on);
  EXPECT_EQ(get_entity(t.samples[1].config, "coffee")->phase, Phase::freezing);
  for (std::size_t i = 1; i < t.samples.size(); ++i) EXPECT_LE(t.samples[i - 1].clock, t.samples[i].clock);
}

TEST(TimedSearch, HoldsInitially) {
  auto cs1 = builtin("cs1");
  auto r = timed_search(cs1, pred(cs1, "temp(coffee) = 70"), Rational(0), 1);
  ASSERT_EQ(r.verdict, SearchVerdict::found);
  EXPECT_EQ(r.solutions.front().clock, Rational(0));
}

TEST(TimedSearch, NoSolutionWithinBound) {
  auto cs1 = builtin("cs1");
  auto r = timed_search(cs1, pred(cs1, "temp(coffee) > 70"), Rational(100), 1);
  EXPECT_EQ(r.verdict, SearchVerdict::noSolution);
  EXPECT_TRUE(r.solutions.empty());
  EXPECT_EQ(r.ticks, 100u);
}

TEST(TimedSearch, CoffeeCoolsMonotonically) {
  // Independent check of the no-solution case: every sample is below the last.
  auto t = simulate(builtin("cs1"), Rational(100));
  for (std::size_t i = 1; i < t.samples.size(); ++i)
    EXPECT_LT(get_entity(t.samples[i].config, "coffee")->temp, get_entity(t.samples[i - 1].config, "coffee")->temp);
}

TEST(TimedSearch, InconclusiveAtStepCap) {
  auto cs1 = builtin("cs1");
  AnalysisOptions opts;
  opts.stepCap = 50;
  auto r = timed_search(cs1, pred(cs1, "temp(coffee) > 70"), std::nullopt, 1, opts);
  EXPECT_EQ(r.verdict, SearchVerdict::inconclusive);
  EXPECT_EQ(r.ticks, 50u);
}

TEST(TimedSearch, SeveralSolutionsInClockOrder) {
  auto cs1 = builtin("cs1");
  auto r = timed_search(cs1, pred(cs1, "temp(coffee) < 69"), Rational(50), 3);
  ASSERT_EQ(r.solutions.size(), 3u);
  EXPECT_LT(r.solutions[0].clock, r.solutions[1].clock);
  EXPECT_LT(r.solutions[1].clock, r.solutions[2].clock);
  EXPECT_THROW(timed_search(cs1, pred(cs1, "true"), std::nullopt, 0), Error);
}

TEST(FindEarliest, Trivial) {
  auto cs1 = builtin("cs1");
  auto r = find_earliest(cs1, pred(cs1, "true"));
  ASSERT_EQ(r.verdict, SearchVerdict::found);
  EXPECT_EQ(r.solutions.front().clock, Rational(0));
}

TEST(FindEarliest, HeaterTurnsOnBeforeAnyTick) {
  auto cs3 = builtin("cs3");
  auto r = find_earliest(cs3, pred(cs3, "statusIs(coffeeHeater, on)"));
  ASSERT_EQ(r.verdict, SearchVerdict::found);
  EXPECT_EQ(r.solutions.front().clock, Rational(0));
  EXPECT_EQ(r.ticks, 0u);
}

TEST(FindEarliest, IsMinimal) {
  auto cs2 = builtin("cs2");
  auto melting = pred(cs2, "phaseIs(coffee, melting)");
  auto r = find_earliest(cs2, melting);
  ASSERT_EQ(r.verdict, SearchVerdict::found);
  auto t = simulate(cs2, r.solutions.front().clock);
  for (std::size_t i = 0; i + 1 < t.samples.size(); ++i) EXPECT_FALSE(melting.evaluate(t.samples[i].config));
  EXPECT_TRUE(melting.evaluate(t.samples.back().config));
}

TEST(FindEarliest, InterleavedAgreesWithDeterministic) {
  for (const char* name : {"cs2", "cs3"}) {
    auto s = builtin(name);
    for (const char* text : {"statusIs(coffeeHeater, on)", "phaseIs(coffee, melting)", "phaseIs(coffee, freezing)",
                             "temp(room) > 20"}) {
      Predicate p;
      try {
        p = pred(s, text);
      } catch (const ParseError&) {
        continue;
      }
      AnalysisOptions inter;
      inter.interleave = true;
      inter.stepCap = 40;
      AnalysisOptions det;
      det.stepCap = 40;
      auto a = find_earliest(s, p, det);
      auto b = find_earliest(s, p, inter);
      EXPECT_EQ(a.verdict, b.verdict) << name << " " << text;
      if (a.verdict == SearchVerdict::found) EXPECT_EQ(a.solutions.front().clock, b.solutions.front().clock);
    }
  }
}

TEST(FindEarliest, InterleavingExposesIntermediateStates) {
  // cs3 at clock 0: the heater is on while the coffee is still liquid only
  // when turnOn fires before liquid-to-freezing.
  auto cs3 = builtin("cs3");
  auto p = pred(cs3, "statusIs(coffeeHeater, on) and phaseIs(coffee, liquid)");
  AnalysisOptions inter;
  inter.interleave = true;
  inter.stepCap = 5;
  auto r = find_earliest(cs3, p, inter);
  ASSERT_EQ(r.verdict, SearchVerdict::found);
  EXPECT_EQ(r.solutions.front().clock, Rational(0));
  AnalysisOptions det;
  det.stepCap = 5;
  EXPECT_EQ(find_earliest(cs3, p, det).verdict, SearchVerdict::inconclusive);
}

TEST(ModelCheck, Trivial) {
  auto cs1 = builtin("cs1");
  auto top = parse_formula("[] True", cs1.prop_names());
  EXPECT_TRUE(model_check(cs1, *top, Rational(10)).holds);
  auto never = parse_formula("<> False", cs1.prop_names());
  auto r = model_check(cs1, *never, Rational(10));
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.counterexample.samples.size(), 11u);
  EXPECT_EQ(r.counterexample.samples.back().clock, Rational(10));
}

TEST(ModelCheck, AlwaysMatchesEverySample) {
  auto cs2 = builtin("cs2");
  cs2.props.emplace("cold", pred(cs2, "temp(coffee) < 0"));
  auto f = parse_formula("[] cold", cs2.prop_names());
  auto t = simulate(cs2, Rational(5));
  bool all = true;
  for (const auto& s : t.samples) all = all && cs2.props.at("cold").evaluate(s.config);
  EXPECT_EQ(model_check(cs2, *f, Rational(5)).holds, all);
  EXPECT_TRUE(all);
  EXPECT_FALSE(model_check(cs2, *f, Rational(30)).holds);
}

TEST(ModelCheck, NegationDuality) {
  auto cs2 = builtin("cs2");
  cs2.props.emplace("melting", pred(cs2, "phaseIs(coffee, melting)"));
  for (const char* f : {"melting", "[] ~melting", "<> melting", "~melting U melting"}) {
    auto pos = parse_formula(f, cs2.prop_names());
    auto neg = parse_formula(std::string("~(") + f + ")", cs2.prop_names());
    EXPECT_NE(model_check(cs2, *pos, Rational(30)).holds, model_check(cs2, *neg, Rational(30)).holds) << f;
  }
}

TEST(ModelCheck, RejectsBadBounds) {
  auto cs1 = builtin("cs1");
  auto f = parse_formula("[] True", cs1.prop_names());
  EXPECT_THROW(model_check(cs1, *f, Rational(0)), Error);
  EXPECT_THROW(model_check(cs1, *f, Rational(3, 2)), Error);
  AnalysisOptions inter;
  inter.interleave = true;
  EXPECT_THROW(model_check(cs1, *f, Rational(3), inter), Error);
}

TEST(Csv, HeaderAndRows) {
  auto t = simulate(builtin("cs2"), Rational(1));
  std::ostringstream os;
  write_csv(os, t, 4);
  std::istringstream in(os.str());
  std::string header, row0, row1, extra;
  std::getline(in, header);
  std::getline(in, row0);
  std::getline(in, row1);
  EXPECT_FALSE(std::getline(in, extra));
  EXPECT_EQ(header, "time,coffee.temp,coffee.heatTrans,room.temp,crConduct.qdot,crConvect.qdot,boiler.qdot");
  EXPECT_EQ(row0, "0.0000,-10.0000,0.0000,20.0000,0.0000,0.0000,1.5000");
  EXPECT_EQ(row1.substr(0, 7), "1.0000,");
}

}  // namespace
}  // namespace thermflow
