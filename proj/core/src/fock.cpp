#include "rvdp/fock.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "rvdp/errors.hpp"

namespace rvdp {

LadderOperators build_ladder_operators(int dim) {
  if (dim < 2) {
    throw InvalidDimensionError("truncation dimension must be >= 2, got " +
                                std::to_string(dim));
  }
  LadderOperators ops;
  ops.annihilation = CMatrix::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) ops.annihilation(k - 1, k) = std::sqrt(static_cast<double>(k));
  ops.creation = ops.annihilation.adjoint();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ops.position = (ops.annihilation + ops.creation) * inv_sqrt2;
  ops.momentum = (ops.annihilation - ops.creation) * (inv_sqrt2 / kI);
  return ops;
}

double hermiticity_residual(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(CMatrix entries, double trace_tolerance)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw ShapeError("density matrix must be square and non-empty");
  }
  const double herm = rvdp::hermiticity_residual(entries_);
  if (!(herm <= kHermiticityTolerance)) {
    std::ostringstream os;
    os << "density matrix is not Hermitian (residual " << herm << ")";
    throw InvalidParameterError(os.str());
  }
  const double tr_err = std::abs(entries_.trace() - Complex(1.0, 0.0));
  if (!(tr_err <= trace_tolerance)) {
    std::ostringstream os;
    os << "density matrix trace deviates from 1 by " << tr_err;
    throw InvalidParameterError(os.str());
  }
}

double DensityMatrix::trace() const { return entries_.trace().real(); }

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum |rho_kl|^2 for Hermitian rho.
  return entries_.cwiseAbs2().sum();
}

double DensityMatrix::hermiticity_residual() const {
  return rvdp::hermiticity_residual(entries_);
}

double DensityMatrix::leakage() const {
  const int n = dim();
  return entries_(n - 1, n - 1).real();
}

DensityMatrix fock_state(int n, int dim) {
  if (dim < 1) throw InvalidDimensionError("dimension must be positive");
  if (n < 0 || n >= dim) {
    throw InvalidDimensionError("Fock level " + std::to_string(n) +
                                " outside truncation " + std::to_string(dim));
  }
  CMatrix m = CMatrix::Zero(dim, dim);
  m(n, n) = 1.0;
  return DensityMatrix(std::move(m));
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

namespace {

// log of the Poisson weight |<k|alpha>|^2 = exp(-|a|^2) |a|^{2k} / k!.
double log_poisson(double mean, int k) {
  if (mean == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return -mean + k * std::log(mean) - log_factorial(k);
}

}  // namespace

int required_coherent_dim(Complex alpha0, double leakage_threshold) {
  const double mean = std::norm(alpha0);
  // Top-level population after renormalization is p_{N-1} / sum_{k<N} p_k;
  // require it below the threshold.
  double retained = 0.0;
  for (int dim = 1; dim < 100000; ++dim) {
    const double p_top = std::exp(log_poisson(mean, dim - 1));
    retained += p_top;
    if (dim >= 2 && retained > 0.0 && p_top / retained < leakage_threshold &&
        static_cast<double>(dim - 1) > mean) {
      return dim;
    }
  }
  throw TruncationError("coherent amplitude too large for any supported truncation", 0);
}

CoherentStatePreparation prepare_coherent_state(Complex alpha0, int dim,
                                                double leakage_threshold) {
  if (dim < 2) {
    throw InvalidDimensionError("truncation dimension must be >= 2, got " +
                                std::to_string(dim));
  }
  const double mean = std::norm(alpha0);
  const double abs_alpha = std::abs(alpha0);
  const double phase = std::arg(alpha0);

  // Amplitudes c_k = exp(-|a|^2/2) a^k / sqrt(k!) via log-factorials.
  Eigen::VectorXcd c(dim);
  double retained = 0.0;
  for (int k = 0; k < dim; ++k) {
    double mag;
    if (abs_alpha == 0.0) {
      mag = (k == 0) ? 1.0 : 0.0;
    } else {
      mag = std::exp(-0.5 * mean + k * std::log(abs_alpha) - 0.5 * log_factorial(k));
    }
    c(k) = std::polar(mag, k * phase);
    retained += mag * mag;
  }
  const double top = std::norm(c(dim - 1)) / retained;
  if (top >= leakage_threshold) {
    const int needed = required_coherent_dim(alpha0, leakage_threshold);
    std::ostringstream os;
    os << "coherent state |alpha|=" << abs_alpha << " leaks " << top
       << " into the top Fock level at dim=" << dim << "; use dim >= " << needed;
    throw TruncationError(os.str(), needed);
  }
  CMatrix rho = c * c.adjoint();
  rho /= retained;
  return {DensityMatrix(std::move(rho)), 1.0 - retained};
}

DensityMatrix coherent_state(Complex alpha0, int dim, double leakage_threshold) {
  return prepare_coherent_state(alpha0, dim, leakage_threshold).state;
}

std::optional<SystemParams::Scaled> SystemParams::scaled() const {
  const double eps = epsilon();
  if (eps == 0.0) return std::nullopt;
  return Scaled{alpha / eps, beta / eps, delta / eps, drive_strength / eps,
                detuning() / eps};
}

void SystemParams::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidParameterError(std::string(name) + " must be a finite rate >= 0");
    }
  };
  check(gamma1_plus, "gamma1_plus");
  check(gamma1_minus, "gamma1_minus");
  check(alpha, "alpha");
  check(beta, "beta");
  check(delta, "delta");
  if (!std::isfinite(drive_strength)) {
    throw InvalidParameterError("drive_strength must be finite");
  }
  if (!(drive_frequency > 0.0) || !std::isfinite(drive_frequency)) {
    throw InvalidParameterError("drive_frequency must be > 0");
  }
}

}  // namespace rvdp
