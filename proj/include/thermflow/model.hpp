// Domain objects of a thermal system and the configuration holding them.
//
// Entities carry the effort variable (temperature), interactions carry the
// flow variable (heat flow rate in kW). Heat generators inject a flow into a
// single entity; a generator with SmartParams switches itself on and off.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "thermflow/errors.hpp"
#include "thermflow/rational.hpp"

namespace thermflow {

using ObjectId = std::string;

enum class Phase { solid, liquid, gas, melting, evaporating, condensing, freezing };
enum class CompMode { normal, phaseChange };
enum class EntityKind { basic, water };
enum class HeaterStatus { off, on };

bool is_transitional(Phase p);
std::string_view to_string(Phase p);
std::string_view to_string(CompMode m);
std::string_view to_string(EntityKind k);
std::string_view to_string(HeaterStatus s);
std::optional<Phase> parse_phase(std::string_view s);
std::optional<EntityKind> parse_entity_kind(std::string_view s);
std::optional<HeaterStatus> parse_status(std::string_view s);

struct ThermalEntity {
  ObjectId id;
  EntityKind kind = EntityKind::basic;
  Rational heatCap;  // kJ/(kg*C)
  Rational mass;     // kg
  Rational temp;     // C
  CompMode mode = CompMode::normal;
  Phase phase = Phase::liquid;  // water only
  Rational heatTrans;           // kJ, water only

  bool operator==(const ThermalEntity&) const = default;
};

struct Conduction {
  Rational thermCond;  // kW/(m*C)
  Rational thickness;  // m
  bool operator==(const Conduction&) const = default;
};

struct Convection {
  Rational convCoeff;  // kW/(m^2*C)
  bool operator==(const Convection&) const = default;
};

struct Radiation {
  Rational emissiv;
  bool operator==(const Radiation&) const = default;
};

using InteractionParams = std::variant<Conduction, Convection, Radiation>;

std::string_view interaction_kind_name(const InteractionParams& p);

struct ThermalInteraction {
  ObjectId id;
  InteractionParams params;
  ObjectId entity1;
  ObjectId entity2;
  Rational area;  // m^2
  Rational qdot;  // kW, positive when heat flows from entity1 to entity2

  bool operator==(const ThermalInteraction&) const = default;
};

struct SmartParams {
  HeaterStatus status = HeaterStatus::off;
  Rational lowTemp;
  Rational highTemp;
  Rational capacity;  // kW delivered while on
  bool operator==(const SmartParams&) const = default;
};

struct HeatGenerator {
  ObjectId id;
  ObjectId entity;
  Rational qdot;
  std::optional<SmartParams> smart;

  bool operator==(const HeatGenerator&) const = default;
};

using Object = std::variant<ThermalEntity, ThermalInteraction, HeatGenerator>;

const ObjectId& object_id(const Object& o);

/// Identifier-keyed multiset of objects. Iteration is in lexicographic id
/// order, so equality does not depend on insertion order.
class Configuration {
 public:
  using Map = std::map<ObjectId, Object, std::less<>>;

  Configuration() = default;
  Configuration(std::initializer_list<Object> objects);

  /// Throws Error if the id is already present.
  void insert(Object o);
  /// Replaces the object with the same id; throws Error if absent.
  void replace(Object o);

  bool contains(std::string_view id) const { return objects_.find(id) != objects_.end(); }
  const Object* find(std::string_view id) const;
  std::size_t size() const { return objects_.size(); }
  bool empty() const { return objects_.empty(); }

  Map::const_iterator begin() const { return objects_.begin(); }
  Map::const_iterator end() const { return objects_.end(); }

  template <typename T>
  std::vector<const T*> all() const {
    std::vector<const T*> out;
    for (const auto& [id, obj] : objects_)
      if (const auto* p = std::get_if<T>(&obj)) out.push_back(p);
    return out;
  }

  bool operator==(const Configuration&) const = default;

 private:
  Map objects_;
};

struct SystemState {
  Configuration config;
  Rational clock;  // s

  bool operator==(const SystemState&) const = default;
};

// Lookup by id and role. nullptr when absent; RoleMismatch when the id names
// an object of another role.
const ThermalEntity* get_entity(const Configuration& c, std::string_view id);
const ThermalInteraction* get_interaction(const Configuration& c, std::string_view id);
const HeatGenerator* get_heater(const Configuration& c, std::string_view id);

struct Violation {
  ObjectId id;
  std::string field;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

ValidationReport validate(const Configuration& c);

/// validate() and throw Error carrying the report when anything is wrong.
void require_valid(const Configuration& c);

}  // namespace thermflow
