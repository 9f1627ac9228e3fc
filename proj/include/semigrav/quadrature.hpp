#pragma once

#include <cstddef>
#include <vector>

namespace semigrav::quadrature {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point rule for the integral of f(y) exp(-y^2) over the real line.
// Nodes from the Jacobi matrix eigenvalues, polished by Newton steps on the
// orthonormal Hermite polynomial; weights from the Christoffel function.
Rule gauss_hermite(std::size_t n);

// Minimum node count used for moment integrals of an order-N expansion.
inline std::size_t moment_node_count(std::size_t order) { return 4 * (order + 2); }

}  // namespace semigrav::quadrature
