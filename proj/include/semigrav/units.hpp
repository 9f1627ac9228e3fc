#pragma once

#include "semigrav/moments.hpp"

namespace semigrav::units {

// CODATA 2018
inline constexpr double kHbar = 1.054571817e-34;               // J s
inline constexpr double kGravitationalConstant = 6.67430e-11;  // m^3 kg^-1 s^-2

inline constexpr double kNeutronMass = 1.675e-27;  // kg
inline constexpr double kEarthMass = 5.972e24;     // kg
inline constexpr double kEarthRadius = 6.371e6;    // m

// Characteristic scales of the Newtonian problem:
//   t_c = sqrt(r_c^3 / GM),  p_c = m r_c / t_c,  E_c = p_c r_c / t_c = G M m / r_c.
struct ScaleSet {
  double r_c = 1.0;
  double gm = 1.0;
  double mass = 1.0;
  double t_c = 1.0;
  double p_c = 1.0;
  double e_c = 1.0;

  static ScaleSet make(double r_c, double gm, double mass);
  void validate() const;
};

// u = (hbar^2 / 4) / (G M m^2 r_c)
double u_parameter(double mass, double central_mass, double r_c, double hbar = kHbar,
                   double gravitational_constant = kGravitationalConstant);

// Lengths by r_c, momenta by p_c, U by (r_c p_c)^2.
moments::CanonicalState nondimensionalize(const moments::CanonicalState& si, const ScaleSet& scales);
moments::CanonicalState dimensionalize(const moments::CanonicalState& nd, const ScaleSet& scales);

}  // namespace semigrav::units
