#include "rvdp/classical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "rvdp/errors.hpp"

namespace rvdp {

namespace odeint = boost::numeric::odeint;

ClassicalParams ClassicalParams::from_system(const SystemParams& p) {
  const auto s = p.scaled();
  if (!s) throw InvalidParameterError("the classical mapping needs eps != 0");
  ClassicalParams cp;
  cp.epsilon = p.epsilon();
  cp.gamma2_vdp = s->alpha + 2.0 * s->beta - s->delta;
  cp.gamma2_ray = s->alpha + s->delta;
  cp.omega_bar = s->drive_strength;
  cp.delta_bar = s->detuning;
  if (cp.gamma2_vdp < -1e-12 || cp.gamma2_ray < -1e-12) {
    throw InvalidParameterError("rates map to a negative classical damping coefficient");
  }
  cp.gamma2_vdp = std::max(cp.gamma2_vdp, 0.0);
  cp.gamma2_ray = std::max(cp.gamma2_ray, 0.0);
  return cp;
}

ClassicalState classical_rhs(const ClassicalState& s, double t, const ClassicalParams& cp) {
  const double e = cp.epsilon;
  const double drive = e * cp.omega_bar * std::sin((1.0 + cp.detuning()) * t);
  const double bracket = 1.0 - cp.gamma2_vdp * s.x * s.x - cp.gamma2_ray * s.v * s.v;
  return {s.v, -s.x - drive + e * bracket * s.v};
}

double limit_cycle_amplitude(const ClassicalParams& cp) {
  const double g = cp.gamma2_vdp + 3.0 * cp.gamma2_ray;
  if (!(g > 0.0)) {
    throw DegenerateLimitCycleError("no limit cycle: g_vdp + 3 g_ray must be positive");
  }
  return 2.0 / std::sqrt(g);
}

std::vector<ClassicalSample> integrate_classical(const ClassicalParams& cp,
                                                 ClassicalState start,
                                                 std::span<const double> times) {
  using State = std::array<double, 2>;
  std::vector<ClassicalSample> out;
  if (times.empty()) return out;
  out.reserve(times.size());
  auto system = [&cp](const State& y, State& dy, double t) {
    const auto d = classical_rhs({y[0], y[1]}, t, cp);
    dy[0] = d.x;
    dy[1] = d.v;
  };
  auto observer = [&out](const State& y, double t) { out.push_back({t, y[0], y[1]}); };
  State y{start.x, start.v};
  auto stepper = odeint::make_dense_output(1e-10, 1e-10, odeint::runge_kutta_dopri5<State>());
  odeint::integrate_times(stepper, system, y, times.begin(), times.end(), 1e-3, observer);
  return out;
}

LimitCycle extract_limit_cycle(const ClassicalParams& cp, const LimitCycleOptions& opt) {
  if (cp.omega_bar != 0.0) {
    throw InvalidParameterError("limit-cycle extraction requires an undriven oscillator");
  }
  if (!(cp.epsilon > 0.0)) throw InvalidParameterError("limit-cycle extraction requires eps > 0");
  if (opt.n_periods < 2 || opt.samples_per_period < 16) {
    throw InvalidParameterError("limit-cycle extraction needs >= 2 periods and >= 16 samples");
  }
  (void)limit_cycle_amplitude(cp);
  const double t_settle = opt.t_settle > 0.0 ? opt.t_settle : 200.0 / cp.epsilon;
  const double period = 2.0 * std::numbers::pi;
  const int total = opt.n_periods * opt.samples_per_period;
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(total) + 2);
  times.push_back(0.0);
  for (int i = 0; i <= total; ++i) {
    times.push_back(t_settle + period * i / opt.samples_per_period);
  }
  auto samples = integrate_classical(cp, opt.start, times);
  samples.erase(samples.begin());

  LimitCycle lc;
  for (int k = 0; k < opt.n_periods; ++k) {
    double m = 0.0;
    for (int i = k * opt.samples_per_period; i <= (k + 1) * opt.samples_per_period; ++i) {
      m = std::max(m, std::abs(samples[static_cast<std::size_t>(i)].x));
    }
    lc.period_amplitudes.push_back(m);
  }
  for (std::size_t k = 1; k < lc.period_amplitudes.size(); ++k) {
    const double a = lc.period_amplitudes[k - 1];
    const double b = lc.period_amplitudes[k];
    if (std::abs(b - a) > 0.01 * std::max(a, b)) {
      std::ostringstream os;
      os << "limit cycle not settled: period maxima " << a << " and " << b
         << " differ by more than 1%";
      throw ConvergenceError(os.str());
    }
  }
  lc.amplitude = *std::max_element(lc.period_amplitudes.begin(), lc.period_amplitudes.end());
  lc.trajectory = std::move(samples);
  return lc;
}

void write_classical_csv(std::span<const ClassicalSample> samples, std::ostream& os) {
  char buf[96];
  os << "t,x,v\n";
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.10g,%.12e,%.12e\n", s.t, s.x, s.v);
    os << buf;
  }
}

}  // namespace rvdp
