// Scene description files and the built-in coffee/room scenes.
//
// A scene is a sequence of sections, each opened by a bracketed header and
// followed by `key = value` pairs (on the header line or the lines below):
//
//   # comment
//   [params]       timeStep = 1  precision = 10
//   [entity coffee]
//   kind = water   phase = solid
//   heatCap = 42/10  mass = 396/875  temp = -10
//   [interaction crConduct]
//   type = conduction  entity1 = coffee  entity2 = room
//   thermCond = 15/10000  thickness = 1/200  area = 121/4375
//   [heater boiler]  entity = coffee  qdot = 3/2
//   [prop hot]
//   expr = temp(coffee) > 60
//
// `expr` takes the remainder of its line. Numbers use the rational literal
// syntax ("3", "-3", "3/2", "1.5").
#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "thermflow/model.hpp"
#include "thermflow/physics.hpp"
#include "thermflow/predicate.hpp"

namespace thermflow {

struct SceneParams {
  Rational timeStep{1};
  int precision = 10;
  PhysConstants constants;

  bool operator==(const SceneParams&) const = default;
};

struct SceneDef {
  SceneParams params;
  Configuration objects;
  std::map<std::string, Predicate, std::less<>> props;

  SystemState initial_state() const { return {objects, Rational(0)}; }
  std::set<std::string, std::less<>> prop_names() const;

  bool operator==(const SceneDef&) const = default;
};

/// Throws ParseError (with line and column) on any syntax, resolution or
/// validation failure.
SceneDef parse_scene(std::string_view text);

/// Reads and parses a scene file. Throws Error when the file is unreadable.
SceneDef load_scene(const std::filesystem::path& path);

std::string serialize_scene(const SceneDef& scene);

/// Material and geometry constants of the coffee cup and the room.
/// Areas are already evaluated with pi = 22/7. Only masses, heat
/// capacities, areas, k, h and the cup thickness enter the dynamics.
struct CoffeeRoomConstants {
  Rational airDensity{12, 10};  // kg/m^3
  Rational roomVolume{64};      // m^3
  Rational roomMass{384, 5};    // kg
  Rational roomHC{105, 100};    // kJ/(kg*C)
  Rational convCoeff{20, 1000};  // kW/(m^2*C)

  Rational cupRadius{4, 100};
  Rational cupHeight{9, 100};
  Rational cupCircum{44, 175};
  Rational cupBaseArea{22, 4375};
  Rational cupSideArea{99, 4375};
  Rational cupThickness{1, 200};
  Rational waterDensity{1000};
  Rational coffeeVolume{99, 218750};
  Rational coffeeMass{396, 875};
  Rational coffeeHC{42, 10};
  Rational thermCond{15, 10000};  // porcelain, kW/(m*C)

  Rational condArea() const { return cupBaseArea + cupSideArea; }
  Rational convArea() const { return cupBaseArea; }
};

/// "cs1": hot coffee cooling in a room. "cs2": frozen coffee with a constant
/// 3/2 kW boiler. "cs3": the boiler replaced by a thermostat heater keeping
/// the coffee between 70 and 80 C. Throws Error for any other name.
SceneDef builtin(std::string_view name);

}  // namespace thermflow
