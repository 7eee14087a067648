// Hybrid semantics: urgent discrete rules (water phase changes, smart heater
// switching) and the guarded tick that advances time only when no rule is
// enabled.
#pragma once

#include <string_view>
#include <vector>

#include "thermflow/model.hpp"
#include "thermflow/physics.hpp"

namespace thermflow {

enum class RuleName {
  solidToMelting,
  meltingToLiquid,
  liquidToEvaporating,
  evaporatingToGas,
  gasToCondensing,
  condensingToLiquid,
  liquidToFreezing,
  freezingToSolid,
  turnOn,
  turnOff,
};

std::string_view to_string(RuleName r);
bool is_phase_rule(RuleName r);

struct RuleInstance {
  RuleName rule;
  ObjectId subject;

  bool operator==(const RuleInstance&) const = default;
};

/// Every enabled rule instance. Phase rules come first, then heater rules,
/// each group ordered by subject id.
std::vector<RuleInstance> enabled_rules(const Configuration& c, const PhysConstants& k);

bool is_enabled(const Configuration& c, const RuleInstance& r, const PhysConstants& k);

/// Fires one rule. Throws ContractViolation if its guard does not hold.
Configuration apply_rule(const Configuration& c, const RuleInstance& r, const PhysConstants& k);

/// True iff no urgent rule is enabled.
bool time_can_advance(const Configuration& c, const PhysConstants& k);

/// Fires the first enabled rule until none is left. Throws LivelockError when
/// the fixpoint is not reached within 4 rule firings per object.
Configuration normalize_discrete(const Configuration& c, const PhysConstants& k);

/// Advances by h. Throws UrgencyViolation if a rule is still enabled.
SystemState tick(const SystemState& s, const Rational& h, const PhysConstants& k);

/// normalize_discrete followed by tick.
SystemState step(const SystemState& s, const Rational& h, const PhysConstants& k);

}  // namespace thermflow
