#include "thermflow/model.hpp"

#include <array>
#include <sstream>
#include <utility>

namespace thermflow {

namespace {

constexpr std::array<std::pair<Phase, std::string_view>, 7> kPhaseNames{{
    {Phase::solid, "solid"},
    {Phase::liquid, "liquid"},
    {Phase::gas, "gas"},
    {Phase::melting, "melting"},
    {Phase::evaporating, "evaporating"},
    {Phase::condensing, "condensing"},
    {Phase::freezing, "freezing"},
}};

std::string_view role_name(const Object& o) {
  switch (o.index()) {
    case 0: return "entity";
    case 1: return "interaction";
    default: return "heater";
  }
}

template <typename T>
const T* get_as(const Configuration& c, std::string_view id, std::string_view wanted) {
  const Object* o = c.find(id);
  if (!o) return nullptr;
  if (const auto* p = std::get_if<T>(o)) return p;
  throw RoleMismatch("'" + std::string(id) + "' is a " + std::string(role_name(*o)) +
                     ", not a " + std::string(wanted));
}

}  // namespace

bool is_transitional(Phase p) {
  return p == Phase::melting || p == Phase::evaporating || p == Phase::condensing ||
         p == Phase::freezing;
}

std::string_view to_string(Phase p) {
  for (const auto& [phase, name] : kPhaseNames)
    if (phase == p) return name;
  return "?";
}

std::string_view to_string(CompMode m) { return m == CompMode::normal ? "default" : "phaseChange"; }
std::string_view to_string(EntityKind k) { return k == EntityKind::basic ? "basic" : "water"; }
std::string_view to_string(HeaterStatus s) { return s == HeaterStatus::on ? "on" : "off"; }

std::optional<Phase> parse_phase(std::string_view s) {
  for (const auto& [phase, name] : kPhaseNames)
    if (name == s) return phase;
  return std::nullopt;
}

std::optional<EntityKind> parse_entity_kind(std::string_view s) {
  if (s == "basic") return EntityKind::basic;
  if (s == "water") return EntityKind::water;
  return std::nullopt;
}

std::optional<HeaterStatus> parse_status(std::string_view s) {
  if (s == "on") return HeaterStatus::on;
  if (s == "off") return HeaterStatus::off;
  return std::nullopt;
}

std::string_view interaction_kind_name(const InteractionParams& p) {
  switch (p.index()) {
    case 0: return "conduction";
    case 1: return "convection";
    default: return "radiation";
  }
}

const ObjectId& object_id(const Object& o) {
  return std::visit([](const auto& x) -> const ObjectId& { return x.id; }, o);
}

Configuration::Configuration(std::initializer_list<Object> objects) {
  for (const auto& o : objects) insert(o);
}

void Configuration::insert(Object o) {
  ObjectId id = object_id(o);
  if (id.empty()) throw Error("object id must be non-empty");
  auto [it, inserted] = objects_.try_emplace(id, std::move(o));
  if (!inserted) throw Error("duplicate object id '" + id + "'");
}

void Configuration::replace(Object o) {
  auto it = objects_.find(object_id(o));
  if (it == objects_.end()) throw Error("no object '" + object_id(o) + "' to replace");
  it->second = std::move(o);
}

const Object* Configuration::find(std::string_view id) const {
  auto it = objects_.find(id);
  return it == objects_.end() ? nullptr : &it->second;
}

const ThermalEntity* get_entity(const Configuration& c, std::string_view id) {
  return get_as<ThermalEntity>(c, id, "entity");
}

const ThermalInteraction* get_interaction(const Configuration& c, std::string_view id) {
  return get_as<ThermalInteraction>(c, id, "interaction");
}

const HeatGenerator* get_heater(const Configuration& c, std::string_view id) {
  return get_as<HeatGenerator>(c, id, "heater");
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.id << "." << v.field << ": " << v.message << "\n";
  return os.str();
}

ValidationReport validate(const Configuration& c) {
  ValidationReport report;
  auto fail = [&](const ObjectId& id, std::string field, std::string message) {
    report.violations.push_back({id, std::move(field), std::move(message)});
  };
  auto positive = [&](const ObjectId& id, const char* field, const Rational& v) {
    if (v.sign() <= 0) fail(id, field, std::string(field) + " must be positive");
  };
  auto references_entity = [&](const ObjectId& id, const char* field, const ObjectId& target) {
    const Object* o = c.find(target);
    if (!o)
      fail(id, field, "unknown entity '" + target + "'");
    else if (!std::holds_alternative<ThermalEntity>(*o))
      fail(id, field, "'" + target + "' is not an entity");
  };

  for (const auto& [key, obj] : c) {
    if (object_id(obj) != key) fail(key, "id", "stored under a different key");

    if (const auto* e = std::get_if<ThermalEntity>(&obj)) {
      positive(e->id, "heatCap", e->heatCap);
      positive(e->id, "mass", e->mass);
      if (e->kind == EntityKind::basic) {
        if (e->mode != CompMode::normal) fail(e->id, "mode", "basic entities stay in default mode");
      } else {
        bool wants_phase_change = is_transitional(e->phase);
        if (wants_phase_change != (e->mode == CompMode::phaseChange))
          fail(e->id, "mode", "mode does not match phase " + std::string(to_string(e->phase)));
      }
    } else if (const auto* i = std::get_if<ThermalInteraction>(&obj)) {
      references_entity(i->id, "entity1", i->entity1);
      references_entity(i->id, "entity2", i->entity2);
      if (i->entity1 == i->entity2) fail(i->id, "entity2", "interaction connects an entity to itself");
      positive(i->id, "area", i->area);
      std::visit(
          [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, Conduction>) {
              positive(i->id, "thermCond", p.thermCond);
              positive(i->id, "thickness", p.thickness);
            } else if constexpr (std::is_same_v<P, Convection>) {
              positive(i->id, "convCoeff", p.convCoeff);
            } else {
              if (p.emissiv.sign() <= 0 || p.emissiv > Rational(1))
                fail(i->id, "emissiv", "emissiv must lie in (0, 1]");
            }
          },
          i->params);
    } else {
      const auto& h = std::get<HeatGenerator>(obj);
      references_entity(h.id, "entity", h.entity);
      if (h.qdot.sign() < 0) fail(h.id, "qdot", "qdot must be non-negative");
      if (h.smart) {
        const auto& s = *h.smart;
        if (s.lowTemp >= s.highTemp) fail(h.id, "lowTemp", "lowTemp must be below highTemp");
        positive(h.id, "capacity", s.capacity);
        if (s.status == HeaterStatus::off && !h.qdot.is_zero())
          fail(h.id, "qdot", "qdot must be 0 while off");
        if (s.status == HeaterStatus::on && h.qdot != s.capacity)
          fail(h.id, "qdot", "qdot must equal capacity while on");
      }
    }
  }
  return report;
}

void require_valid(const Configuration& c) {
  auto report = validate(c);
  if (!report.ok()) throw Error("invalid configuration:\n" + report.str());
}

}  // namespace thermflow
