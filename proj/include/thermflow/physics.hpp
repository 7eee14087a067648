// Continuous dynamics: flow-rate laws, per-entity flow balance and the
// explicit Euler update. A tick evaluates every flow from the current
// temperatures, then every temperature from those flows.
#pragma once

#include <string_view>

#include "thermflow/model.hpp"
#include "thermflow/rational.hpp"

namespace thermflow {

struct PhysConstants {
  // 5.67e-8 W/(m^2*K^4) rescaled to kW.
  Rational stefBolz = Rational::parse("567/10000000000000");
  Rational latentFusion{334};  // kJ/kg
  Rational latentVapor{2257};  // kJ/kg
  Rational meltPoint{0};       // C
  Rational boilPoint{100};     // C

  bool operator==(const PhysConstants&) const = default;
};

/// Heat flow rate (kW) from entity1 at t1 to entity2 at t2.
///   conduction: k*A*(t1 - t2)/L
///   convection: h*A*(t1 - t2)
///   radiation:  eps*sigma*A*(t1^4 - t2^4), evaluated on the stored temperatures
Rational flow_rate(const ThermalInteraction& i, const Rational& t1, const Rational& t2,
                   const PhysConstants& k);

/// Every interaction's qdot refreshed from the current entity temperatures.
Configuration compute_qdots(const Configuration& c, const PhysConstants& k);

/// Net inflow into an entity: -qdot where it is entity1, +qdot where it is
/// entity2, plus the qdot of every heat generator attached to it.
Rational sum_qdots(const Configuration& c, std::string_view entity);

inline Rational euler_step(const Rational& yn, const Rational& h, const Rational& fyn) {
  return yn + h * fyn;
}

/// One Euler step for every entity from the (already refreshed) qdots.
/// Default-mode entities move temperature by sum/(m*c); phase-changing ones
/// keep their temperature and accumulate the net inflow into heatTrans.
Configuration compute_temps(const Configuration& c, const Rational& h);

}  // namespace thermflow
