#include "rvdp/perturbation.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "rvdp/errors.hpp"

namespace rvdp {

namespace {

// vec(A X B) = (B^T kron A) vec(X).
CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  CMatrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  }
  return out;
}

CMatrix dissipator_super(const CMatrix& c) {
  const Eigen::Index n = c.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix cdc = c.adjoint() * c;
  return kron(c.conjugate(), c) - 0.5 * kron(id, cdc) - 0.5 * kron(cdc.transpose(), id);
}

CMatrix commutator_super(const CMatrix& h) {
  const Eigen::Index n = h.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  return -kI * (kron(id, h) - kron(h.transpose(), id));
}

}  // namespace

Generators materialize_generators(const SystemParams& p, int dim) {
  p.validate();
  if (dim < 2) throw InvalidDimensionError("dimension must be at least 2");
  if (dim > kMaxSuperoperatorDim) {
    std::ostringstream os;
    os << "superoperator materialization is limited to dim <= " << kMaxSuperoperatorDim;
    throw InvalidDimensionError(os.str());
  }
  if (p.beta != p.delta) {
    throw UnsupportedConfigurationError(
        "time-independent drive-frame generators require beta == delta");
  }
  const LadderOperators ops = build_ladder_operators(dim);
  const CMatrix& a = ops.annihilation;
  const CMatrix& ad = ops.creation;
  const CMatrix number = ad * a;

  Generators g;
  g.dim = dim;
  g.l0 = commutator_super(-p.detuning() * number);
  if (p.gamma1_plus != 0.0) g.l0 += p.gamma1_plus * dissipator_super(ad);
  if (p.gamma1_minus != 0.0) g.l0 += p.gamma1_minus * dissipator_super(a);
  if (p.alpha != 0.0) g.l0 += p.alpha * dissipator_super(a * a);
  if (p.beta != 0.0) g.l0 += p.beta * dissipator_super(ops.position * a);
  if (p.delta != 0.0) g.l0 += p.delta * dissipator_super(ops.momentum * a);

  const Complex pre = 1.0 / (2.0 * kI * std::sqrt(2.0));
  g.l_drive = commutator_super(pre * (a - ad));
  return g;
}

FirstOrder first_order_state(const SystemParams& p, int dim) {
  const Generators g = materialize_generators(p, dim);
  const Eigen::Index n2 = static_cast<Eigen::Index>(dim) * dim;
  Eigen::VectorXcd tr = Eigen::VectorXcd::Zero(n2);
  for (int k = 0; k < dim; ++k) tr(static_cast<Eigen::Index>(k) * dim + k) = 1.0;
  const Eigen::VectorXcd u = tr / static_cast<double>(dim);

  const CMatrix deflated = g.l0 + u * tr.transpose();
  const Eigen::PartialPivLU<CMatrix> lu(deflated);
  const double rcond = lu.rcond();
  FirstOrder out;
  out.condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (out.condition > 1e12) {
    std::ostringstream os;
    os << "undriven generator is ill conditioned (estimate " << out.condition << ")";
    throw ConditioningError(os.str());
  }
  const Eigen::VectorXcd v0 = lu.solve(u);
  Eigen::VectorXcd rhs = -(g.l_drive * v0);
  const Eigen::VectorXcd v1 = lu.solve(rhs);

  out.rho0 = Eigen::Map<const CMatrix>(v0.data(), dim, dim);
  out.rho0 = 0.5 * (out.rho0 + out.rho0.adjoint()).eval();
  out.rho1 = Eigen::Map<const CMatrix>(v1.data(), dim, dim);
  out.residual = (g.l_drive * v0 + g.l0 * v1).cwiseAbs().maxCoeff();
  for (int k = 0; k + 1 < dim; ++k) out.chi += std::sqrt(k + 1.0) * out.rho1(k + 1, k);
  return out;
}

Complex susceptibility(const SystemParams& params, int dim) {
  return first_order_state(params, dim).chi;
}

double second_smallest_singular_value(const CMatrix& l0) {
  const Eigen::BDCSVD<CMatrix> svd(l0);
  const auto& s = svd.singularValues();
  if (s.size() < 2) return 0.0;
  return s(s.size() - 2);
}

void write_first_order_csv(const FirstOrder& r, std::ostream& os) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "# chi=%.15e%+.15ei\n", r.chi.real(), r.chi.imag());
  os << buf;
  os << "k,re_rho1_k1_k,im_rho1_k1_k\n";
  for (Eigen::Index k = 0; k + 1 < r.rho1.rows(); ++k) {
    std::snprintf(buf, sizeof buf, "%ld,%.15e,%.15e\n", static_cast<long>(k),
                  r.rho1(k + 1, k).real(), r.rho1(k + 1, k).imag());
    os << buf;
  }
}

}  // namespace rvdp
