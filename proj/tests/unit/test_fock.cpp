#include <gtest/gtest.h>

#include <cmath>

#include <rvdp/errors.hpp>
#include <rvdp/fock.hpp>

using namespace rvdp;

TEST(Ladder, MatrixElements) {
  const auto ops = build_ladder_operators(6);
  for (int k = 0; k < 6; ++k) {
    for (int l = 0; l < 6; ++l) {
      const double expected = (k + 1 == l) ? std::sqrt(static_cast<double>(l)) : 0.0;
      EXPECT_DOUBLE_EQ(ops.annihilation(k, l).real(), expected);
      EXPECT_DOUBLE_EQ(ops.annihilation(k, l).imag(), 0.0);
    }
  }
  EXPECT_LT((ops.creation - ops.annihilation.adjoint()).norm(), 1e-15);
  const CMatrix n = ops.creation * ops.annihilation;
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(n(k, k).real(), k, 1e-14);
}

TEST(Ladder, PositionMomentumCommutatorInsideTruncation) {
  const int dim = 8;
  const auto ops = build_ladder_operators(dim);
  const CMatrix c = ops.position * ops.momentum - ops.momentum * ops.position;
  // [x, p] = i except in the top level, where truncation gives -i (N - 1).
  for (int k = 0; k + 1 < dim; ++k) EXPECT_NEAR(std::abs(c(k, k) - kI), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(c(dim - 1, dim - 1) + kI * static_cast<double>(dim - 1)), 0.0, 1e-12);
}

TEST(Ladder, RejectsSmallDimension) {
  EXPECT_THROW(build_ladder_operators(0), InvalidDimensionError);
}

TEST(DensityMatrix, Validation) {
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  EXPECT_NO_THROW(DensityMatrix{m});
  m(0, 1) = Complex(0.1, 0.0);
  EXPECT_THROW(DensityMatrix{m}, InvalidParameterError);  // not Hermitian
  m(1, 0) = Complex(0.1, 0.0);
  EXPECT_NO_THROW(DensityMatrix{m});
  m(2, 2) = 0.1;
  EXPECT_THROW(DensityMatrix{m}, InvalidParameterError);  // trace 1.1
  EXPECT_THROW(DensityMatrix{CMatrix::Zero(2, 3)}, ShapeError);
}

TEST(DensityMatrix, FockStateProperties) {
  const DensityMatrix r = fock_state(3, 6);
  EXPECT_DOUBLE_EQ(r(3, 3).real(), 1.0);
  EXPECT_DOUBLE_EQ(r.purity(), 1.0);
  EXPECT_DOUBLE_EQ(r.leakage(), 0.0);
  EXPECT_DOUBLE_EQ(fock_state(5, 6).leakage(), 1.0);
  EXPECT_THROW(fock_state(6, 6), InvalidDimensionError);
}

// Populations of a truncated coherent state against Poisson partial sums.
TEST(Coherent, PoissonPopulations) {
  const Complex alpha(0.75, 0.75);
  const double mean = std::norm(alpha);
  const int dim = 20;
  const auto prep = prepare_coherent_state(alpha, dim);
  double partial = 0.0, term = std::exp(-mean);
  for (int n = 0; n < dim; ++n) {
    if (n > 0) term *= mean / n;
    partial += term;
  }
  EXPECT_NEAR(prep.discarded_weight, 1.0 - partial, 1e-15);
  term = std::exp(-mean);
  for (int n = 0; n < dim; ++n) {
    if (n > 0) term *= mean / n;
    EXPECT_NEAR(prep.state(n, n).real(), term / partial, 1e-14);
  }
  // Coherences carry the phase of alpha^k conj(alpha)^l.
  const Complex c10 = prep.state(1, 0);
  EXPECT_NEAR(std::arg(c10), std::arg(alpha), 1e-14);
  EXPECT_NEAR(prep.state.purity(), 1.0, 1e-12);
}

TEST(Coherent, LeakageAndRequiredDimension) {
  const Complex alpha(2.0, 0.0);
  const int need = required_coherent_dim(alpha);
  EXPECT_NO_THROW(coherent_state(alpha, need));
  try {
    coherent_state(alpha, need - 1);
    FAIL() << "expected TruncationError";
  } catch (const TruncationError& e) {
    EXPECT_GE(e.suggested_dim(), need);
  }
  EXPECT_LT(coherent_state(alpha, need).leakage(), 1e-6);
}

TEST(LogFactorial, MatchesLgamma) {
  for (int n : {0, 1, 2, 10, 50, 170}) EXPECT_NEAR(log_factorial(n), std::lgamma(n + 1.0), 1e-9);
}

TEST(SystemParams, ScaledAndValidation) {
  SystemParams p;
  p.gamma1_plus = 0.2;
  p.gamma1_minus = 0.1;
  p.beta = 0.05;
  p.drive_strength = 0.03;
  p.drive_frequency = 1.02;
  EXPECT_NEAR(p.epsilon(), 0.1, 1e-15);
  EXPECT_NEAR(p.detuning(), 0.02, 1e-15);
  const auto s = p.scaled();
  ASSERT_TRUE(s.has_value());
  EXPECT_NEAR(s->beta, 0.5, 1e-14);
  EXPECT_NEAR(s->drive_strength, 0.3, 1e-14);
  EXPECT_NEAR(s->detuning, 0.2, 1e-13);

  SystemParams zero;
  EXPECT_FALSE(zero.scaled().has_value());

  SystemParams bad = p;
  bad.alpha = -1.0;
  EXPECT_THROW(bad.validate(), InvalidParameterError);
  bad = p;
  bad.drive_frequency = 0.0;
  EXPECT_THROW(bad.validate(), InvalidParameterError);
  EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(p.with_detuning(0.02).drive_frequency, 1.02);
}
