#include "semigrav/units.hpp"

#include <cmath>

#include "semigrav/errors.hpp"

namespace semigrav::units {

ScaleSet ScaleSet::make(double r_c, double gm, double mass) {
  if (!(r_c > 0.0) || !(gm > 0.0) || !(mass > 0.0))
    throw ConfigError("ScaleSet: r_c, GM and mass must be positive");
  ScaleSet s;
  s.r_c = r_c;
  s.gm = gm;
  s.mass = mass;
  s.t_c = std::sqrt(r_c * r_c * r_c / gm);
  s.p_c = mass * r_c / s.t_c;
  s.e_c = s.p_c * r_c / s.t_c;
  return s;
}

void ScaleSet::validate() const {
  if (!(r_c > 0.0) || !(gm > 0.0) || !(mass > 0.0) || !(t_c > 0.0) || !(p_c > 0.0) || !(e_c > 0.0))
    throw ConfigError("ScaleSet: all scales must be positive");
  if (std::abs(t_c * t_c * gm / (r_c * r_c * r_c) - 1.0) > 1e-12)
    throw ConfigError("ScaleSet: t_c inconsistent with r_c and GM");
}

double u_parameter(double mass, double central_mass, double r_c, double hbar, double gravitational_constant) {
  if (!(mass > 0.0) || !(central_mass > 0.0) || !(r_c > 0.0) || !(hbar > 0.0) || !(gravitational_constant > 0.0))
    throw ConfigError("u_parameter: all inputs must be positive");
  return (0.25 * hbar * hbar) / (gravitational_constant * central_mass * mass * mass * r_c);
}

moments::CanonicalState nondimensionalize(const moments::CanonicalState& si, const ScaleSet& sc) {
  sc.validate();
  const double action = sc.r_c * sc.p_c;
  return {si.x / sc.r_c, si.p / sc.p_c, si.s / sc.r_c, si.ps / sc.p_c, si.u_casimir / (action * action)};
}

moments::CanonicalState dimensionalize(const moments::CanonicalState& nd, const ScaleSet& sc) {
  sc.validate();
  const double action = sc.r_c * sc.p_c;
  return {nd.x * sc.r_c, nd.p * sc.p_c, nd.s * sc.r_c, nd.ps * sc.p_c, nd.u_casimir * action * action};
}

}  // namespace semigrav::units
