#include "semigrav/eotvos.hpp"

#include <cmath>

#include "semigrav/errors.hpp"

namespace semigrav::experiments {

void EotvosInput::validate() const {
  if (!(g > 0.0) || !std::isfinite(g)) throw ConfigError("eotvos: g must be positive");
  if (!std::isfinite(d2g)) throw ConfigError("eotvos: d2g must be finite");
  if (!(dxx >= 0.0) || !std::isfinite(dxx)) throw ConfigError("eotvos: Delta(x^2) must be non-negative");
}

double eotvos_estimate(const EotvosInput& in) {
  in.validate();
  return 0.5 * in.d2g * in.dxx / in.g;
}

double width_bound_from_eta(double g, double d2g, double eta_max) {
  if (!(g > 0.0)) throw ConfigError("width_bound_from_eta: g must be positive");
  if (!(d2g > 0.0)) throw ConfigError("width_bound_from_eta: d2g must be positive");
  if (!(eta_max >= 0.0)) throw ConfigError("width_bound_from_eta: eta_max must be non-negative");
  return std::sqrt(2.0 * g * eta_max / d2g);
}

double anomalous_acceleration(const dynamics::PotentialModel& pot, const moments::SecondOrderState& state) {
  pot.check_domain(state.x_mean);
  return 0.5 * std::abs(pot.d3phi(state.x_mean)) * state.dxx;
}

std::vector<EotvosRow> eotvos_table(double g, double d2g, const std::vector<double>& widths) {
  std::vector<EotvosRow> rows;
  rows.reserve(widths.size());
  for (double s : widths) {
    if (!(s >= 0.0)) throw ConfigError("eotvos_table: widths must be non-negative");
    const EotvosInput in{g, d2g, s * s};
    rows.push_back({g, d2g, in.dxx, eotvos_estimate(in)});
  }
  return rows;
}

}  // namespace semigrav::experiments
