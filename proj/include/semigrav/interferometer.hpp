#pragma once

// Mach-Zehnder geometry with instantaneous momentum kicks.
//
//   arm A: +hbar k at t = 0, -hbar k at t = T
//   arm B:               +hbar k at t = T
//
// Each arm's phase at t = 2T is integrated along its centre of mass and then
// along the fixed-time segment from the arm's centroid to the detection point.

#include <optional>
#include <string>

#include "semigrav/dynamics.hpp"

namespace semigrav::experiments {

struct MachZehnderConfig {
  double T = 1.0;
  double hbar_k = 1.0;
  double mass = 1.0;
  dynamics::PotentialModel potential = dynamics::PotentialModel::free();
  moments::CanonicalState initial{};
  moments::HbarContext ctx{};
  // Defaults to the midpoint of the two centroids at 2T.
  std::optional<double> detection_x;
  dynamics::IntegratorConfig integrator{};
  double scale_length = 1.0;

  void validate() const;
};

struct ArmReport {
  // Plane-wave phase along the centre of mass, t in [0, 2T].
  double com_phase = 0.0;
  // Fixed-time segment: P (x_r - X) / hbar plus the second-order term below.
  double vertical_phase = 0.0;
  // (x_r - X)^2 Delta(xp) / (2 hbar Delta(x^2))
  double second_order_phase = 0.0;
  double total = 0.0;
  moments::CanonicalState final_state{};
};

struct MachZehnderResult {
  ArmReport arm_a;
  ArmReport arm_b;
  double detection_x = 0.0;
  // theta_A - theta_B at the detection point.
  double dtheta = 0.0;
  // X_A - X_B at t = 2T.
  double separation = 0.0;
  // d(theta_A - theta_B)/dx at the detection point.
  double fringe_gradient = 0.0;
  // Arms separated by more than six packet widths: the single-packet phase
  // description is no longer trustworthy at the detection point.
  bool flagged = false;
  std::string flag_reason;
};

MachZehnderResult mach_zehnder_phase(const MachZehnderConfig& cfg);

}  // namespace semigrav::experiments
