#pragma once

#include <iosfwd>

#include "rvdp/fock.hpp"

namespace rvdp {

inline constexpr int kMaxSuperoperatorDim = 32;

/// Column-major vectorized generators (vec index l * N + k) in the frame
/// rotating at omega_D with the RWA drive. l_drive is the generator per unit
/// drive strength.
struct Generators {
  int dim = 0;
  CMatrix l0;
  CMatrix l_drive;
};

/// Throws UnsupportedConfigurationError for beta != delta and
/// InvalidDimensionError above kMaxSuperoperatorDim.
Generators materialize_generators(const SystemParams& params, int dim);

struct FirstOrder {
  CMatrix rho0;       // undriven steady state
  CMatrix rho1;       // d rho / d Omega at Omega = 0 (traceless)
  Complex chi{0.0};   // Tr[a rho1]
  double residual = 0.0;   // max |L_drive rho0 + L0 rho1|
  double condition = 0.0;  // reciprocal-condition based estimate
};

/// Solves L0 rho0 = 0 (unit trace) and L0 rho1 = -L_drive rho0 (traceless) with
/// a rank-one deflation: (L0 + u tr^T) x = rhs. Throws ConditioningError when
/// the condition estimate exceeds 1e12.
FirstOrder first_order_state(const SystemParams& params, int dim);

Complex susceptibility(const SystemParams& params, int dim);

/// Second smallest singular value of L0; a value above ~1e-8 means the
/// steady state is unique.
double second_smallest_singular_value(const CMatrix& l0);

/// CSV rows k, Re rho1_{k+1,k}, Im rho1_{k+1,k}, preceded by chi.
void write_first_order_csv(const FirstOrder& result, std::ostream& os);

}  // namespace rvdp
