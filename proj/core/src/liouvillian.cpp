#include "rvdp/liouvillian.hpp"

#include <algorithm>
#include <cmath>

#include "rvdp/errors.hpp"

namespace rvdp {

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw ShapeError(std::string(what) + " must be square");
}

// Complex prefactors f, g of the drive V(t) = f a + g a^dag, laboratory frame.
void drive_coefficients(const SystemParams& p, DriveModel drive, double t, Complex& f,
                        Complex& g) {
  const double om = p.drive_strength;
  if (drive == DriveModel::Full) {
    const double s = om * std::sin(p.drive_frequency * t) / std::sqrt(2.0);
    f = s;
    g = s;
  } else {
    const Complex pre = om / (2.0 * kI * std::sqrt(2.0));
    f = pre * std::exp(kI * (p.drive_frequency * t));
    g = -pre * std::exp(-kI * (p.drive_frequency * t));
  }
}

// Dense operators shared by the generic and rotating-frame assemblies.
struct DenseModel {
  LadderOperators ops;
  CMatrix number;
  explicit DenseModel(int dim) : ops(build_ladder_operators(dim)) {
    number = ops.creation * ops.annihilation;
  }
};

CMatrix commutator_term(const CMatrix& h, const CMatrix& rho) {
  return -kI * (h * rho - rho * h);
}

}  // namespace

CMatrix apply_dissipator(const CMatrix& jump, const CMatrix& rho) {
  require_square(jump, "jump operator");
  require_square(rho, "rho");
  if (jump.rows() != rho.rows()) {
    throw ShapeError("jump operator and rho dimensions differ");
  }
  const CMatrix jd = jump.adjoint();
  const CMatrix jdj = jd * jump;
  return jump * rho * jd - 0.5 * (jdj * rho + rho * jdj);
}

CMatrix rhs_generic(const SystemParams& p, DriveModel drive, Frame frame, double t,
                    const CMatrix& rho) {
  if (!frame.is_laboratory()) return rhs_rotating(p, drive, frame.omega_r(), t, rho);
  require_square(rho, "rho");
  const int n = static_cast<int>(rho.rows());
  const DenseModel m(n);
  const auto& a = m.ops.annihilation;
  const auto& ad = m.ops.creation;

  Complex f, g;
  drive_coefficients(p, drive, t, f, g);
  const CMatrix h = m.number + f * a + g * ad;

  CMatrix out = commutator_term(h, rho);
  if (p.gamma1_plus != 0.0) out += p.gamma1_plus * apply_dissipator(ad, rho);
  if (p.gamma1_minus != 0.0) out += p.gamma1_minus * apply_dissipator(a, rho);
  if (p.alpha != 0.0) out += p.alpha * apply_dissipator(a * a, rho);
  if (p.beta != 0.0) out += p.beta * apply_dissipator(m.ops.position * a, rho);
  if (p.delta != 0.0) out += p.delta * apply_dissipator(m.ops.momentum * a, rho);
  return out;
}

CMatrix rhs_rotating(const SystemParams& p, DriveModel drive, double omega_r, double t,
                     const CMatrix& rho) {
  require_square(rho, "rho");
  const int n = static_cast<int>(rho.rows());
  const DenseModel m(n);
  const auto& a = m.ops.annihilation;
  const auto& ad = m.ops.creation;

  // Rotated drive: co-rotating terms always, counter-rotating ones for Full.
  const Complex pre = p.drive_strength / (2.0 * kI * std::sqrt(2.0));
  const double wm = p.drive_frequency - omega_r;
  const double wp = p.drive_frequency + omega_r;
  CMatrix v = pre * (std::exp(kI * (wm * t)) * a - std::exp(-kI * (wm * t)) * ad);
  if (drive == DriveModel::Full) {
    v += pre * (std::exp(kI * (wp * t)) * ad - std::exp(-kI * (wp * t)) * a);
  }
  const CMatrix h = (1.0 - omega_r) * m.number + v;

  const CMatrix y = (std::exp(-kI * (omega_r * t)) - 1.0) / std::sqrt(2.0) * a;
  const CMatrix yd = y.adjoint();

  CMatrix out = commutator_term(h, rho);
  if (p.gamma1_plus != 0.0) out += p.gamma1_plus * apply_dissipator(ad, rho);
  if (p.gamma1_minus != 0.0) out += p.gamma1_minus * apply_dissipator(a, rho);
  if (p.alpha != 0.0) out += p.alpha * apply_dissipator(a * a, rho);
  if (p.beta != 0.0) {
    out += p.beta * apply_dissipator((m.ops.position + y + yd) * a, rho);
  }
  if (p.delta != 0.0) {
    out += p.delta * apply_dissipator((m.ops.momentum - kI * (y - yd)) * a, rho);
  }
  return out;
}

CMatrix rhs_fock_explicit(const SystemParams& p, DriveModel drive, Frame frame, double t,
                          const CMatrix& rho) {
  if (!frame.is_laboratory()) {
    throw UnsupportedConfigurationError(
        "the explicit Fock-basis stencil is defined in the laboratory frame only");
  }
  require_square(rho, "rho");
  const Liouvillian gen(p, drive, frame, static_cast<int>(rho.rows()));
  return gen(t, rho);
}

CMatrix to_rotating_frame(const CMatrix& rho_lab, double omega_r, double t) {
  const int n = static_cast<int>(rho_lab.rows());
  Eigen::VectorXcd ph(n);
  for (int k = 0; k < n; ++k) ph(k) = std::exp(kI * (omega_r * k * t));
  return ph.asDiagonal() * rho_lab * ph.conjugate().asDiagonal();
}

CMatrix to_laboratory_frame(const CMatrix& rho_rot, double omega_r, double t) {
  return to_rotating_frame(rho_rot, -omega_r, t);
}

// ---------------------------------------------------------------------------
// Stencil

namespace {

inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

Liouvillian::Liouvillian(const SystemParams& params, DriveModel drive, Frame frame,
                         int dim)
    : params_(params), drive_(drive), frame_(frame), dim_(dim) {
  if (dim < 2) {
    throw InvalidDimensionError("truncation dimension must be >= 2, got " +
                                std::to_string(dim));
  }
  params_.validate();
  const int n = dim_;
  const auto& P = params_;
  sqrt_n_.resize(n + 3);
  for (int k = 0; k < n + 3; ++k) sqrt_n_[k] = std::sqrt(static_cast<double>(k));
  const double* sq = sqrt_n_.data();
  std::vector<double> gain_loss(n);
  for (int k = 0; k < n; ++k) gain_loss[k] = (k + 1 < n) ? k + 1.0 : 0.0;

  const std::size_t cells = static_cast<std::size_t>(n) * n;
  diag_.resize(cells);
  gain_.resize(cells);
  loss_.resize(cells);
  two_photon_.resize(cells);
  asym_.assign(4 * cells, 0.0);
  const double two_photon = P.alpha + 0.5 * (P.beta + P.delta);
  const double rotation = 1.0 - frame_.omega_r();
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      const double kk = k, ll = l;
      const std::size_t i = static_cast<std::size_t>(l) * n + k;
      double c = -0.5 * P.gamma1_plus * (gain_loss[k] + gain_loss[l]);
      c += -0.5 * P.gamma1_minus * (kk + ll);
      c += -0.5 * P.alpha * (kk * (kk - 1.0) + ll * (ll - 1.0));
      c += 0.25 * (P.beta + P.delta) * (2.0 * kk * ll - 2.0 * kk * kk - 2.0 * ll * ll + kk + ll);
      diag_[i] = Complex(c, -rotation * (kk - ll));
      gain_[i] = P.gamma1_plus * sq[k] * sq[l];
      loss_[i] = P.gamma1_minus * sq[k + 1] * sq[l + 1];
      two_photon_[i] = two_photon * sq[k + 1] * sq[k + 2] * sq[l + 1] * sq[l + 2];
      // Sources (k+2, l), (k, l-2), (k, l+2), (k-2, l).
      asym_[4 * i + 0] = (2.0 * ll - kk) * sq[k + 1] * sq[k + 2];
      asym_[4 * i + 1] = l >= 2 ? (2.0 - ll) * sq[l] * sq[l - 1] : 0.0;
      asym_[4 * i + 2] = (2.0 * kk - ll) * sq[l + 1] * sq[l + 2];
      asym_[4 * i + 3] = k >= 2 ? (2.0 - kk) * sq[k] * sq[k - 1] : 0.0;
    }
  }
}

bool Liouvillian::time_independent() const noexcept {
  if (params_.drive_strength == 0.0) {
    return frame_.is_laboratory() || params_.beta == params_.delta;
  }
  if (params_.beta != params_.delta) return false;
  return drive_ == DriveModel::Rwa && frame_.omega_r() == params_.drive_frequency;
}

CMatrix Liouvillian::operator()(double t, const CMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw ShapeError("rho dimension does not match the generator");
  }
  CMatrix out(dim_, dim_);
  apply(t, rho.data(), out.data());
  return out;
}

// In a frame rotating at w the stencil keeps its form: a coupling that changes
// k - l by dm picks up exp(-i w t dm), and the free term becomes
// -i (1 - w)(k - l).
void Liouvillian::apply(double t, const Complex* rho, Complex* out, bool hermitian) const {
  const int n = dim_;
  const int stride = n + 4;
  const auto& P = params_;
  thread_local std::vector<Complex> pad;
  pad.assign(static_cast<std::size_t>(stride) * stride, Complex{0.0});
  for (int l = 0; l < n; ++l) {
    std::copy_n(rho + static_cast<std::size_t>(l) * n, n,
                pad.data() + static_cast<std::size_t>(l + 2) * stride + 2);
  }

  const double w = frame_.omega_r();
  const Complex shift1 = std::polar(1.0, -w * t);  // dm = +1
  Complex f{0.0}, g{0.0};
  const bool driven = P.drive_strength != 0.0;
  if (driven) {
    drive_coefficients(P, drive_, t, f, g);
    // -i [f a + g a^dag, rho]
    f = mul(-kI, mul(f, shift1));
    g = mul(-kI, mul(g, std::conj(shift1)));
  }
  const double asym = 0.25 * (P.beta - P.delta);
  const bool has_asym = asym != 0.0;
  const Complex up = asym * mul(shift1, shift1);  // dm = +2
  const Complex down = std::conj(up);             // dm = -2 (asym is real)
  const double* sq = sqrt_n_.data();

  for (int l = 0; l < n; ++l) {
    const Complex* col = pad.data() + static_cast<std::size_t>(l + 2) * stride + 2;
    for (int k = hermitian ? l : 0; k < n; ++k) {
      const std::size_t i = static_cast<std::size_t>(l) * n + k;
      const Complex* c = col + k;
      Complex acc = mul(diag_[i], c[0]);
      acc += gain_[i] * c[-stride - 1];
      acc += loss_[i] * c[stride + 1];
      acc += two_photon_[i] * c[2 * stride + 2];
      if (has_asym) {
        const double* s = &asym_[4 * i];
        const Complex plus = s[0] * c[2] + s[1] * c[-2 * stride];
        const Complex minus = s[2] * c[2 * stride] + s[3] * c[-2];
        acc += mul(up, plus) + mul(down, minus);
      }
      if (driven) {
        const Complex fa = sq[k + 1] * c[1] - sq[l] * c[-stride];
        const Complex ga = sq[k] * c[-1] - sq[l + 1] * c[stride];
        acc += mul(f, fa) + mul(g, ga);
      }
      out[i] = acc;
    }
  }
  if (hermitian) {
    for (int l = 0; l < n; ++l) {
      Complex* d = out + static_cast<std::size_t>(l) * n + l;
      *d = d->real();
      for (int k = l + 1; k < n; ++k) {
        out[static_cast<std::size_t>(k) * n + l] = std::conj(out[static_cast<std::size_t>(l) * n + k]);
      }
    }
  }
}

}  // namespace rvdp
