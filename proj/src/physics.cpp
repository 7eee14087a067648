#include "thermflow/physics.hpp"

#include <map>
#include <stdexcept>
#include <type_traits>

#include "fraction.hpp"

namespace thermflow {

Rational flow_rate(const ThermalInteraction& i, const Rational& t1, const Rational& t2,
                   const PhysConstants& k) {
  return std::visit(
      [&](const auto& p) -> Rational {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Conduction>)
          return p.thermCond * i.area * (t1 - t2) / p.thickness;
        else if constexpr (std::is_same_v<P, Convection>)
          return p.convCoeff * i.area * (t1 - t2);
        else
          return p.emissiv * k.stefBolz * i.area * (pow(t1, 4) - pow(t2, 4));
      },
      i.params);
}

namespace {

using EntityPair = std::pair<std::string_view, std::string_view>;

// Linear laws only need t1 - t2; interactions sharing a pair share it.
Rational linear_flow(const ThermalInteraction& i, const Rational& diff) {
  if (const auto* p = std::get_if<Conduction>(&i.params)) return p->thermCond * i.area / p->thickness * diff;
  return std::get<Convection>(i.params).convCoeff * i.area * diff;
}

}  // namespace

Configuration compute_qdots(const Configuration& c, const PhysConstants& k) {
  Configuration out = c;
  std::map<EntityPair, Rational> differences;
  for (const auto* i : c.all<ThermalInteraction>()) {
    const auto* e1 = get_entity(c, i->entity1);
    const auto* e2 = get_entity(c, i->entity2);
    if (!e1 || !e2) throw Error("interaction '" + i->id + "' references a missing entity");
    ThermalInteraction updated = *i;
    if (std::holds_alternative<Radiation>(i->params)) {
      updated.qdot = flow_rate(*i, e1->temp, e2->temp, k);
    } else {
      auto [it, fresh] = differences.try_emplace(EntityPair{i->entity1, i->entity2});
      if (fresh) it->second = e1->temp - e2->temp;
      updated.qdot = linear_flow(*i, it->second);
    }
    out.replace(std::move(updated));
  }
  return out;
}

Rational sum_qdots(const Configuration& c, std::string_view entity) {
  Rational total;
  for (const auto& [id, obj] : c) {
    if (const auto* i = std::get_if<ThermalInteraction>(&obj)) {
      if (i->entity1 == entity)
        total -= i->qdot;
      else if (i->entity2 == entity)
        total += i->qdot;
    } else if (const auto* g = std::get_if<HeatGenerator>(&obj)) {
      if (g->entity == entity) total += g->qdot;
    }
  }
  return total;
}

Configuration compute_temps(const Configuration& c, const Rational& h) {
  if (h.sign() <= 0) throw std::invalid_argument("time step must be positive");

  // Each entity's new value is accumulated as value + sum(rate * flow), with
  // rate = h / (mass * heatCap) for temperatures and h for latent heat.
  struct Update {
    const ThermalEntity* entity;
    Rational rate;
    detail::Fraction value;
  };
  std::map<std::string_view, Update> updates;
  for (const auto* e : c.all<ThermalEntity>()) {
    if (e->mode == CompMode::normal)
      updates.emplace(e->id, Update{e, h / (e->mass * e->heatCap), detail::Fraction(e->temp)});
    else
      updates.emplace(e->id, Update{e, h, detail::Fraction(e->heatTrans)});
  }
  auto credit = [&](std::string_view entity, const Rational& flow, bool incoming) {
    auto it = updates.find(entity);
    if (it == updates.end()) return;
    detail::Fraction delta(it->second.rate * flow);
    if (incoming)
      it->second.value += delta;
    else
      it->second.value -= delta;
  };
  for (const auto& [id, obj] : c) {
    if (const auto* i = std::get_if<ThermalInteraction>(&obj)) {
      credit(i->entity1, i->qdot, false);
      credit(i->entity2, i->qdot, true);
    } else if (const auto* g = std::get_if<HeatGenerator>(&obj)) {
      credit(g->entity, g->qdot, true);
    }
  }

  Configuration out = c;
  for (const auto& [id, u] : updates) {
    ThermalEntity next = *u.entity;
    (next.mode == CompMode::normal ? next.temp : next.heatTrans) = u.value.to_rational();
    out.replace(std::move(next));
  }
  return out;
}

}  // namespace thermflow
