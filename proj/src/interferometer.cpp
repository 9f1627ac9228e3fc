#include "semigrav/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "semigrav/errors.hpp"
#include "semigrav/phase.hpp"

namespace semigrav::experiments {

namespace {

struct ArmPath {
  double kick0 = 0.0;
  double kick_t = 0.0;
};

// Propagates one arm and returns its centre-of-mass phase and state at 2T.
std::pair<double, moments::CanonicalState> propagate_arm(const MachZehnderConfig& cfg, const ArmPath& arm) {
  const dynamics::Flow flow{cfg.potential, cfg.mass, cfg.scale_length};
  auto state = cfg.initial;
  state.p += arm.kick0;
  double phase = 0.0;
  for (int leg = 0; leg < 2; ++leg) {
    const double t0 = leg * cfg.T;
    const auto traj = dynamics::integrate(flow, state, t0, t0 + cfg.T, cfg.integrator);
    if (traj.aborted()) throw SingularityError("mach_zehnder_phase: arm integration aborted: " + traj.message);
    phase += propagation_phase_plane_wave(traj, cfg.potential, cfg.mass, cfg.ctx);
    state = traj.samples.back();
    if (leg == 0) state.p += arm.kick_t;
  }
  return {phase, state};
}

ArmReport close_arm(double com_phase, const moments::CanonicalState& c, double xr, const moments::HbarContext& ctx) {
  ArmReport r;
  r.com_phase = com_phase;
  r.final_state = c;
  const double d = xr - c.x;
  if (c.s > 0.0) r.second_order_phase = d * d * c.ps / (2.0 * c.s * ctx.hbar);
  r.vertical_phase = c.p * d / ctx.hbar + r.second_order_phase;
  r.total = r.com_phase + r.vertical_phase;
  return r;
}

}  // namespace

void MachZehnderConfig::validate() const {
  if (!(T > 0.0)) throw ConfigError("mach_zehnder: T must be positive");
  if (hbar_k == 0.0 || !std::isfinite(hbar_k)) throw ConfigError("mach_zehnder: kick must be non-zero");
  if (!(mass > 0.0)) throw ConfigError("mach_zehnder: mass must be positive");
  ctx.validate();
  integrator.validate();
}

MachZehnderResult mach_zehnder_phase(const MachZehnderConfig& cfg) {
  cfg.validate();
  const auto [phase_a, end_a] = propagate_arm(cfg, ArmPath{cfg.hbar_k, -cfg.hbar_k});
  const auto [phase_b, end_b] = propagate_arm(cfg, ArmPath{0.0, cfg.hbar_k});

  MachZehnderResult out;
  out.detection_x = cfg.detection_x.value_or(0.5 * (end_a.x + end_b.x));
  out.arm_a = close_arm(phase_a, end_a, out.detection_x, cfg.ctx);
  out.arm_b = close_arm(phase_b, end_b, out.detection_x, cfg.ctx);
  out.dtheta = out.arm_a.total - out.arm_b.total;
  out.separation = end_a.x - end_b.x;
  out.fringe_gradient = packet_phase_dx(end_a, out.detection_x, cfg.ctx) -
                        packet_phase_dx(end_b, out.detection_x, cfg.ctx);

  const double width = std::max(end_a.s, end_b.s);
  if (std::abs(out.separation) > std::max(6.0 * width, 1e-12 * cfg.scale_length)) {
    std::ostringstream os;
    os << "arm separation " << out.separation << " exceeds six packet widths (" << width << ")";
    out.flagged = true;
    out.flag_reason = os.str();
  }
  return out;
}

}  // namespace semigrav::experiments
