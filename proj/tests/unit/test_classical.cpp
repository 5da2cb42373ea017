#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include <rvdp/classical.hpp>
#include <rvdp/errors.hpp>
#include <rvdp/presets.hpp>

using namespace rvdp;

namespace {

ClassicalParams from_raw(double eps, double alpha, double beta, double delta) {
  SystemParams p = base_rates(eps);
  p.alpha = alpha;
  p.beta = beta;
  p.delta = delta;
  return ClassicalParams::from_system(p);
}

}  // namespace

// The six distinct table amplitudes from raw (alpha, beta, delta, eps).
TEST(Classical, TableAmplitudes) {
  struct Row {
    double eps, alpha, beta, delta, amplitude;
  };
  const Row rows[] = {
      {0.2, 0.0, 1.0 / 75, 2.0 / 75, std::sqrt(10.0)},
      {0.2, 1.0 / 50, 0.0, 0.0, std::sqrt(10.0)},
      {0.2, 0.0, 1.0 / 10, 1.0 / 5, std::sqrt(4.0 / 3.0)},
      {0.2, 0.0, 8.0 / 15, 16.0 / 15, 0.5},
      {0.1, 0.0, 1.0 / 75, 2.0 / 75, std::sqrt(5.0)},
      {0.1, 0.0, 1.0 / 10, 1.0 / 5, std::sqrt(2.0 / 3.0)},
      {0.1, 0.0, 8.0 / 15, 16.0 / 15, std::sqrt(1.0 / 8.0)},
  };
  for (const auto& r : rows) {
    EXPECT_NEAR(limit_cycle_amplitude(from_raw(r.eps, r.alpha, r.beta, r.delta)), r.amplitude, 1e-12);
  }
}

TEST(Classical, ScaledCoefficients) {
  const ClassicalParams cp = from_raw(0.1, 0.02, 0.01, 0.03);
  EXPECT_NEAR(cp.gamma2_vdp, 0.2 + 0.2 - 0.3, 1e-14);
  EXPECT_NEAR(cp.gamma2_ray, 0.2 + 0.3, 1e-14);
  SystemParams zero_eps;
  EXPECT_THROW(ClassicalParams::from_system(zero_eps), InvalidParameterError);
  ClassicalParams degenerate;
  degenerate.epsilon = 0.1;
  EXPECT_THROW(limit_cycle_amplitude(degenerate), DegenerateLimitCycleError);
}

TEST(Classical, RhsMatchesEquation) {
  ClassicalParams cp;
  cp.epsilon = 0.1;
  cp.gamma2_vdp = 0.3;
  cp.gamma2_ray = 0.2;
  cp.omega_bar = 2.0;
  cp.delta_bar = 0.5;
  const ClassicalState s{0.7, -0.4};
  const double t = 1.3;
  const ClassicalState d = classical_rhs(s, t, cp);
  const double want = -s.x - 0.1 * 2.0 * std::sin(1.05 * t) +
                      0.1 * (1.0 - 0.3 * 0.49 - 0.2 * 0.16) * s.v;
  EXPECT_DOUBLE_EQ(d.x, s.v);
  EXPECT_NEAR(d.v, want, 1e-15);
}

TEST(Classical, HarmonicLimitOfIntegrator) {
  ClassicalParams cp;  // eps = 0: plain harmonic oscillator
  std::vector<double> times;
  for (int i = 0; i <= 20; ++i) times.push_back(0.5 * i);
  const auto s = integrate_classical(cp, {1.0, 0.0}, times);
  for (const auto& x : s) {
    EXPECT_NEAR(x.x, std::cos(x.t), 1e-8);
    EXPECT_NEAR(x.v, -std::sin(x.t), 1e-8);
  }
}

TEST(Classical, ExtractedAmplitudeNearWeakDampingPrediction) {
  for (double eps : {0.1, 0.01}) {
    ClassicalParams cp;
    cp.epsilon = eps;
    cp.gamma2_vdp = 1.0;
    cp.gamma2_ray = 1.0;
    const LimitCycle lc = extract_limit_cycle(cp);
    const double pred = limit_cycle_amplitude(cp);
    EXPECT_NEAR(lc.amplitude / pred, 1.0, eps == 0.1 ? 0.05 : 0.01);
    EXPECT_EQ(lc.period_amplitudes.size(), 5u);
  }
}

TEST(Classical, CsvHeader) {
  std::vector<ClassicalSample> s = {{0.0, 1.0, 0.0}};
  std::ostringstream os;
  write_classical_csv(s, os);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "t,x,v");
}
