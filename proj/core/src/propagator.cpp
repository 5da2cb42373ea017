#include "rvdp/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "rvdp/errors.hpp"

namespace rvdp {

namespace odeint = boost::numeric::odeint;

CMatrix propagate(const Liouvillian& generator, const CMatrix& initial,
                  std::span<const double> times, const MatrixObserver& observer,
                  const StepControl& control) {
  const int n = generator.dim();
  if (initial.rows() != n || initial.cols() != n) {
    throw ShapeError("initial matrix does not match the generator dimension");
  }
  if (times.empty()) throw SamplingError("no output times requested");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] >= times[i - 1])) throw SamplingError("output times must be sorted");
  }

  // Interleaved (re, im) storage keeps the stepper's error norm on plain doubles.
  using State = std::vector<double>;
  const std::size_t count = static_cast<std::size_t>(initial.size());
  State x(2 * count);
  if (control.hermitian) {
    const CMatrix h = 0.5 * (initial + initial.adjoint());
    std::copy_n(reinterpret_cast<const double*>(h.data()), 2 * count, x.data());
  } else {
    std::copy_n(reinterpret_cast<const double*>(initial.data()), 2 * count, x.data());
  }

  const bool hermitian = control.hermitian;
  auto system = [&generator, hermitian](const State& y, State& dydt, double t) {
    generator.apply(t, reinterpret_cast<const Complex*>(y.data()),
                    reinterpret_cast<Complex*>(dydt.data()), hermitian);
  };

  CMatrix view(n, n);
  auto obs = [&](const State& y, double t) {
    std::copy_n(y.data(), y.size(), reinterpret_cast<double*>(view.data()));
    if (observer) observer(t, view);
  };

  if (times.size() == 1 || times.front() == times.back()) {
    obs(x, times.front());
    return initial;
  }

  auto stepper = odeint::make_dense_output(control.absolute, control.relative,
                                           odeint::runge_kutta_dopri5<State>());
  const double span = times.back() - times.front();
  const double dt0 = std::min(control.initial_step, span);
  odeint::integrate_times(stepper, system, x, times.begin(), times.end(), dt0, obs);

  CMatrix out(n, n);
  std::copy_n(x.data(), x.size(), reinterpret_cast<double*>(out.data()));
  return out;
}

std::vector<double> uniform_times(double t0, double t1, double dt) {
  if (!(dt > 0.0)) throw SamplingError("sampling interval must be positive");
  if (!(t1 >= t0)) throw SamplingError("end time precedes start time");
  std::vector<double> ts;
  const auto count = static_cast<long>(std::floor((t1 - t0) / dt + 1e-9));
  ts.reserve(static_cast<std::size_t>(count) + 2);
  for (long i = 0; i <= count; ++i) ts.push_back(t0 + static_cast<double>(i) * dt);
  if (t1 - ts.back() > 1e-9 * std::max(1.0, std::abs(t1))) ts.push_back(t1);
  else ts.back() = t1;
  return ts;
}

}  // namespace rvdp
