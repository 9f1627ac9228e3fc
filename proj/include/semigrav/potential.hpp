#pragma once

#include <string>

namespace semigrav::dynamics {

enum class Units { si, nondimensional };

enum class PotentialKind { free, linear, quadratic, newtonian, power_law };

// Potential per unit mass Phi(x) with analytic derivatives up to third order.
//
//   free       Phi = 0
//   linear     Phi = g x
//   quadratic  Phi = g x + k x^2 / 2        (g = 0 by default)
//   newtonian  Phi = -GM / r                (r > 0)
//   power_law  Phi = -GM / r [1 + a (r0 / r)^(N-1)]
class PotentialModel {
 public:
  static PotentialModel free(Units units = Units::si);
  static PotentialModel linear(double g, Units units = Units::si);
  static PotentialModel quadratic(double k, double g = 0.0, Units units = Units::si);
  static PotentialModel newtonian(double gm, Units units = Units::si);
  static PotentialModel power_law(double gm, double alpha_n, int n, double r0, Units units = Units::si);

  PotentialKind kind() const { return kind_; }
  Units units() const { return units_; }
  std::string name() const;

  bool in_domain(double x) const;
  // Throws DomainError outside the domain.
  void check_domain(double x) const;

  double phi(double x) const;
  double dphi(double x) const;
  double d2phi(double x) const;
  double d3phi(double x) const;

  // g = Phi', the field strength as it enters the equations of motion.
  double field(double x) const { return dphi(x); }

  // Phi is at most quadratic, so Phi''' vanishes identically.
  bool is_at_most_quadratic() const;

  double linear_coefficient() const { return g_; }
  double curvature_coefficient() const { return k_; }
  double gm() const { return gm_; }

 private:
  PotentialModel() = default;

  PotentialKind kind_ = PotentialKind::free;
  Units units_ = Units::si;
  double g_ = 0.0;
  double k_ = 0.0;
  double gm_ = 0.0;
  double alpha_n_ = 0.0;
  int n_ = 3;
  double r0_ = 1.0;
};

}  // namespace semigrav::dynamics
