#include "thermflow/engine.hpp"

#include <optional>
#include <stdexcept>

namespace thermflow {

namespace {

struct PhaseRule {
  RuleName rule;
  Phase from;
  Phase to;
};

// Main -> transitional transitions fire on temperature, transitional -> main
// on accumulated latent heat per unit mass. Cooling-direction entries use
// strict bounds so that leaving a transition at exactly the threshold does
// not immediately re-enter the reverse one.
constexpr PhaseRule kPhaseRules[] = {
    {RuleName::solidToMelting, Phase::solid, Phase::melting},
    {RuleName::meltingToLiquid, Phase::melting, Phase::liquid},
    {RuleName::liquidToEvaporating, Phase::liquid, Phase::evaporating},
    {RuleName::evaporatingToGas, Phase::evaporating, Phase::gas},
    {RuleName::gasToCondensing, Phase::gas, Phase::condensing},
    {RuleName::condensingToLiquid, Phase::condensing, Phase::liquid},
    {RuleName::liquidToFreezing, Phase::liquid, Phase::freezing},
    {RuleName::freezingToSolid, Phase::freezing, Phase::solid},
};

const PhaseRule* phase_rule(RuleName r) {
  for (const auto& pr : kPhaseRules)
    if (pr.rule == r) return &pr;
  return nullptr;
}

bool phase_guard(const ThermalEntity& e, RuleName r, const PhysConstants& k) {
  const auto latent = [&] { return e.heatTrans / e.mass; };
  switch (r) {
    case RuleName::solidToMelting: return e.temp >= k.meltPoint;
    case RuleName::meltingToLiquid: return latent() >= k.latentFusion;
    case RuleName::liquidToEvaporating: return e.temp >= k.boilPoint;
    case RuleName::evaporatingToGas: return latent() >= k.latentVapor;
    case RuleName::gasToCondensing: return e.temp < k.boilPoint;
    case RuleName::condensingToLiquid: return latent() <= -k.latentVapor;
    case RuleName::liquidToFreezing: return e.temp < k.meltPoint;
    case RuleName::freezingToSolid: return latent() <= -k.latentFusion;
    default: return false;
  }
}

bool heater_guard(const Configuration& c, const HeatGenerator& g, RuleName r) {
  if (!g.smart) return false;
  const auto* e = get_entity(c, g.entity);
  if (!e) return false;
  if (r == RuleName::turnOff) return g.smart->status == HeaterStatus::on && e->temp >= g.smart->highTemp;
  if (r == RuleName::turnOn) return g.smart->status == HeaterStatus::off && e->temp <= g.smart->lowTemp;
  return false;
}

}  // namespace

std::string_view to_string(RuleName r) {
  switch (r) {
    case RuleName::solidToMelting: return "solid-to-melting";
    case RuleName::meltingToLiquid: return "melting-to-liquid";
    case RuleName::liquidToEvaporating: return "liquid-to-evaporating";
    case RuleName::evaporatingToGas: return "evaporating-to-gas";
    case RuleName::gasToCondensing: return "gas-to-condensing";
    case RuleName::condensingToLiquid: return "condensing-to-liquid";
    case RuleName::liquidToFreezing: return "liquid-to-freezing";
    case RuleName::freezingToSolid: return "freezing-to-solid";
    case RuleName::turnOn: return "turnOn";
    case RuleName::turnOff: return "turnOff";
  }
  return "?";
}

bool is_phase_rule(RuleName r) { return phase_rule(r) != nullptr; }

bool is_enabled(const Configuration& c, const RuleInstance& r, const PhysConstants& k) {
  const Object* o = c.find(r.subject);
  if (!o) return false;
  if (const auto* pr = phase_rule(r.rule)) {
    const auto* e = std::get_if<ThermalEntity>(o);
    return e && e->kind == EntityKind::water && e->phase == pr->from && phase_guard(*e, r.rule, k);
  }
  const auto* g = std::get_if<HeatGenerator>(o);
  return g && heater_guard(c, *g, r.rule);
}

std::vector<RuleInstance> enabled_rules(const Configuration& c, const PhysConstants& k) {
  std::vector<RuleInstance> out;
  for (const auto* e : c.all<ThermalEntity>()) {
    if (e->kind != EntityKind::water) continue;
    for (const auto& pr : kPhaseRules)
      if (e->phase == pr.from && phase_guard(*e, pr.rule, k)) out.push_back({pr.rule, e->id});
  }
  for (const auto* g : c.all<HeatGenerator>())
    for (RuleName r : {RuleName::turnOn, RuleName::turnOff})
      if (heater_guard(c, *g, r)) out.push_back({r, g->id});
  return out;
}

Configuration apply_rule(const Configuration& c, const RuleInstance& r, const PhysConstants& k) {
  if (!is_enabled(c, r, k))
    throw ContractViolation("rule " + std::string(to_string(r.rule)) + " is not enabled for '" +
                            r.subject + "'");
  Configuration out = c;
  if (const auto* pr = phase_rule(r.rule)) {
    ThermalEntity e = std::get<ThermalEntity>(*c.find(r.subject));
    e.phase = pr->to;
    if (is_transitional(pr->to)) {
      e.mode = CompMode::phaseChange;
      e.heatTrans = Rational(0);
    } else {
      e.mode = CompMode::normal;
    }
    out.replace(std::move(e));
  } else {
    HeatGenerator g = std::get<HeatGenerator>(*c.find(r.subject));
    if (r.rule == RuleName::turnOff) {
      g.smart->status = HeaterStatus::off;
      g.qdot = Rational(0);
    } else {
      g.smart->status = HeaterStatus::on;
      g.qdot = g.smart->capacity;
    }
    out.replace(std::move(g));
  }
  return out;
}

bool time_can_advance(const Configuration& c, const PhysConstants& k) {
  return enabled_rules(c, k).empty();
}

Configuration normalize_discrete(const Configuration& c, const PhysConstants& k) {
  const std::size_t cap = 4 * c.size();
  Configuration current = c;
  for (std::size_t fired = 0;; ++fired) {
    auto rules = enabled_rules(current, k);
    if (rules.empty()) return current;
    if (fired >= cap)
      throw LivelockError("discrete rules still enabled after " + std::to_string(cap) +
                          " firings (next: " + std::string(to_string(rules.front().rule)) +
                          " on '" + rules.front().subject + "')");
    current = apply_rule(current, rules.front(), k);
  }
}

SystemState tick(const SystemState& s, const Rational& h, const PhysConstants& k) {
  if (h.sign() <= 0) throw std::invalid_argument("time step must be positive");
  if (auto rules = enabled_rules(s.config, k); !rules.empty())
    throw UrgencyViolation("cannot advance time: " + std::string(to_string(rules.front().rule)) +
                           " is enabled for '" + rules.front().subject + "'");
  return {compute_temps(compute_qdots(s.config, k), h), s.clock + h};
}

SystemState step(const SystemState& s, const Rational& h, const PhysConstants& k) {
  return tick({normalize_discrete(s.config, k), s.clock}, h, k);
}

}  // namespace thermflow
