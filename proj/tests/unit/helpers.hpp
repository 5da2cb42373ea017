#pragma once

#include <random>

#include <rvdp/fock.hpp>
#include <rvdp/presets.hpp>

namespace rvdp::testing {

// Random Hermitian, positive, unit-trace matrix from a seeded Gaussian factor.
inline CMatrix random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  CMatrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

inline CMatrix random_matrix(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

inline SystemParams table_params(const char* name) { return find_parameter_set(name)->params; }

}  // namespace rvdp::testing
