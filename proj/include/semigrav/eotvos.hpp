#pragma once

#include <vector>

#include "semigrav/moments.hpp"
#include "semigrav/potential.hpp"

namespace semigrav::experiments {

// Terrestrial defaults: g in m/s^2, d2g = d^2 g / dx^2 in 1/(m s^2).
inline constexpr double kTerrestrialG = 10.0;
inline constexpr double kTerrestrialD2g = 1e-12;

struct EotvosInput {
  double g = kTerrestrialG;
  double d2g = kTerrestrialD2g;
  double dxx = 0.0;

  void validate() const;
};

// eta = d2g Delta(x^2) / (2 g)
double eotvos_estimate(const EotvosInput& input);

// Largest width s = sqrt(Delta(x^2)) compatible with eta <= eta_max.
double width_bound_from_eta(double g, double d2g, double eta_max);

// |<x>'' + g(<x>)| = |Phi'''(<x>)| Delta(x^2) / 2
double anomalous_acceleration(const dynamics::PotentialModel& pot, const moments::SecondOrderState& state);

struct EotvosRow {
  double g = 0.0;
  double d2g = 0.0;
  double dxx = 0.0;
  double eta = 0.0;
};

// One row per width s, with Delta(x^2) = s^2.
std::vector<EotvosRow> eotvos_table(double g, double d2g, const std::vector<double>& widths);

}  // namespace semigrav::experiments
