#include "semigrav/potential.hpp"

#include <cmath>
#include <sstream>

#include "semigrav/errors.hpp"

namespace semigrav::dynamics {

PotentialModel PotentialModel::free(Units units) {
  PotentialModel p;
  p.kind_ = PotentialKind::free;
  p.units_ = units;
  return p;
}

PotentialModel PotentialModel::linear(double g, Units units) {
  PotentialModel p;
  p.kind_ = PotentialKind::linear;
  p.units_ = units;
  p.g_ = g;
  return p;
}

PotentialModel PotentialModel::quadratic(double k, double g, Units units) {
  PotentialModel p;
  p.kind_ = PotentialKind::quadratic;
  p.units_ = units;
  p.k_ = k;
  p.g_ = g;
  return p;
}

PotentialModel PotentialModel::newtonian(double gm, Units units) {
  if (!(gm > 0.0)) throw ConfigError("newtonian potential needs GM > 0");
  PotentialModel p;
  p.kind_ = PotentialKind::newtonian;
  p.units_ = units;
  p.gm_ = gm;
  return p;
}

PotentialModel PotentialModel::power_law(double gm, double alpha_n, int n, double r0, Units units) {
  if (!(gm > 0.0)) throw ConfigError("power-law potential needs GM > 0");
  if (n < 1) throw ConfigError("power-law potential needs N >= 1");
  if (!(r0 > 0.0)) throw ConfigError("power-law potential needs r0 > 0");
  PotentialModel p;
  p.kind_ = PotentialKind::power_law;
  p.units_ = units;
  p.gm_ = gm;
  p.alpha_n_ = alpha_n;
  p.n_ = n;
  p.r0_ = r0;
  return p;
}

std::string PotentialModel::name() const {
  std::ostringstream os;
  switch (kind_) {
    case PotentialKind::free: os << "free"; break;
    case PotentialKind::linear: os << "linear(g=" << g_ << ")"; break;
    case PotentialKind::quadratic: os << "quadratic(k=" << k_ << ",g=" << g_ << ")"; break;
    case PotentialKind::newtonian: os << "newtonian(GM=" << gm_ << ")"; break;
    case PotentialKind::power_law:
      os << "power_law(GM=" << gm_ << ",alpha=" << alpha_n_ << ",N=" << n_ << ",r0=" << r0_ << ")";
      break;
  }
  return os.str();
}

bool PotentialModel::in_domain(double x) const {
  if (!std::isfinite(x)) return false;
  if (kind_ == PotentialKind::newtonian || kind_ == PotentialKind::power_law) return x > 0.0;
  return true;
}

void PotentialModel::check_domain(double x) const {
  if (!in_domain(x)) {
    std::ostringstream os;
    os << name() << ": position " << x << " outside the potential domain";
    throw DomainError(os.str());
  }
}

bool PotentialModel::is_at_most_quadratic() const {
  return kind_ == PotentialKind::free || kind_ == PotentialKind::linear || kind_ == PotentialKind::quadratic;
}

// Power-law correction term c r^-N with c = GM a r0^(N-1); derivatives follow
// from d^j/dr^j r^-N = (-1)^j N (N+1) ... (N+j-1) r^-(N+j).

double PotentialModel::phi(double x) const {
  check_domain(x);
  switch (kind_) {
    case PotentialKind::free: return 0.0;
    case PotentialKind::linear: return g_ * x;
    case PotentialKind::quadratic: return g_ * x + 0.5 * k_ * x * x;
    case PotentialKind::newtonian: return -gm_ / x;
    case PotentialKind::power_law: {
      const double c = gm_ * alpha_n_ * std::pow(r0_, n_ - 1);
      return -gm_ / x - c * std::pow(x, -n_);
    }
  }
  return 0.0;
}

double PotentialModel::dphi(double x) const {
  check_domain(x);
  switch (kind_) {
    case PotentialKind::free: return 0.0;
    case PotentialKind::linear: return g_;
    case PotentialKind::quadratic: return g_ + k_ * x;
    case PotentialKind::newtonian: return gm_ / (x * x);
    case PotentialKind::power_law: {
      const double c = gm_ * alpha_n_ * std::pow(r0_, n_ - 1);
      return gm_ / (x * x) + c * n_ * std::pow(x, -n_ - 1);
    }
  }
  return 0.0;
}

double PotentialModel::d2phi(double x) const {
  check_domain(x);
  switch (kind_) {
    case PotentialKind::free:
    case PotentialKind::linear: return 0.0;
    case PotentialKind::quadratic: return k_;
    case PotentialKind::newtonian: return -2.0 * gm_ / (x * x * x);
    case PotentialKind::power_law: {
      const double c = gm_ * alpha_n_ * std::pow(r0_, n_ - 1);
      return -2.0 * gm_ / (x * x * x) - c * n_ * (n_ + 1) * std::pow(x, -n_ - 2);
    }
  }
  return 0.0;
}

double PotentialModel::d3phi(double x) const {
  check_domain(x);
  switch (kind_) {
    case PotentialKind::free:
    case PotentialKind::linear:
    case PotentialKind::quadratic: return 0.0;
    case PotentialKind::newtonian: return 6.0 * gm_ / (x * x * x * x);
    case PotentialKind::power_law: {
      const double c = gm_ * alpha_n_ * std::pow(r0_, n_ - 1);
      return 6.0 * gm_ / (x * x * x * x) + c * n_ * (n_ + 1) * (n_ + 2) * std::pow(x, -n_ - 3);
    }
  }
  return 0.0;
}

}  // namespace semigrav::dynamics
