#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <rvdp/errors.hpp>
#include <rvdp/sweep.hpp>

#include "helpers.hpp"

using namespace rvdp;

namespace {

SweepSpec small_spec(const char* set) {
  SweepSpec spec;
  spec.base = rvdp::testing::table_params(set);
  spec.settings.dim = 12;
  spec.settings.t_final = 60.0;
  spec.delta_axis = {-0.1, 0.0, 0.1};
  spec.omega_axis = {0.0, 0.2};
  return spec;
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

TEST(Sweep, WorkerCountDoesNotChangeResults) {
  const SweepSpec spec = small_spec("quantum-RvdP-eps0.2");
  const SweepResult one = run_sweep(spec, 1);
  const SweepResult three = run_sweep(spec, 3);
  ASSERT_EQ(one.points.size(), 6u);
  for (std::size_t i = 0; i < one.points.size(); ++i) {
    EXPECT_EQ(one.points[i].status, three.points[i].status);
    EXPECT_TRUE(same(one.points[i].sq_bar, three.points[i].sq_bar));
    EXPECT_TRUE(same(one.points[i].n_bar, three.points[i].n_bar));
  }
  std::ostringstream a, b;
  write_sweep_csv(one, a);
  write_sweep_csv(three, b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Sweep, GridIndexingAndUndrivenRow) {
  const SweepResult r = run_sweep(small_spec("quantum-RvdP-eps0.2"), 2);
  for (std::size_t id = 0; id < 3; ++id) {
    const PointRecord& p = r.at(id, 0);
    EXPECT_EQ(p.i_delta, id);
    EXPECT_EQ(p.i_omega, 0u);
    EXPECT_TRUE(p.ok()) << p.status;
    EXPECT_LT(p.sq_bar, 1e-6);
    EXPECT_EQ(r.at(id, 1).omega, 0.2);
  }
  // Rotation-invariant rates: mirror symmetric in the detuning.
  EXPECT_NEAR(r.at(0, 1).sq_bar, r.at(2, 1).sq_bar, 1e-6);
  EXPECT_GT(r.at(1, 1).sq_bar, r.at(2, 1).sq_bar);
}

TEST(Sweep, CheckpointResume) {
  const auto dir = std::filesystem::temp_directory_path() / "rvdp_sweep_ckpt";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  SweepSpec spec = small_spec("quantum-RvdP-eps0.2");
  spec.checkpoint_path = (dir / "ck.json").string();
  spec.checkpoint_interval = 1;
  const SweepResult first = run_sweep(spec, 1);
  ASSERT_TRUE(std::filesystem::exists(spec.checkpoint_path));

  // Tamper with a stored value: a resumed run must take it from the file.
  std::ifstream in(spec.checkpoint_path);
  std::stringstream ss;
  ss << in.rdbuf();
  auto pts = points_from_json(ss.str());
  ASSERT_EQ(pts.size(), 6u);
  pts[4].n_bar = 123.0;
  std::ofstream(spec.checkpoint_path) << points_to_json(pts);
  std::size_t calls = 0;
  const SweepResult second = run_sweep(spec, 1, [&](std::size_t, std::size_t) { ++calls; });
  EXPECT_EQ(second.points[4].n_bar, 123.0);
  EXPECT_EQ(second.points[3].sq_bar, first.points[3].sq_bar);

  EXPECT_EQ(calls, 0u);

  // Records whose coordinates do not match the new grid are recomputed.
  spec.delta_axis = {-0.2, 0.0, 0.2};
  const SweepResult third = run_sweep(spec, 1);
  EXPECT_EQ(third.points[4].n_bar, 123.0);
  EXPECT_NE(third.points[5].n_bar, first.points[5].n_bar);
  std::filesystem::remove_all(dir);
}

TEST(Sweep, PointJsonRoundTripKeepsNaN) {
  PointRecord p;
  p.i_delta = 2;
  p.delta = 0.1;
  p.sq_bar = 0.25;
  p.status = "not-stationary: x";
  const auto back = points_from_json(points_to_json({p}));
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].sq_bar, 0.25);
  EXPECT_TRUE(std::isnan(back[0].n_bar));
  EXPECT_EQ(back[0].status, p.status);
  EXPECT_EQ(back[0].i_delta, 2u);
}

TEST(Sweep, SpecValidation) {
  SweepSpec spec = small_spec("quantum-RvdP-eps0.2");
  spec.delta_axis = {0.1, -0.1};
  EXPECT_THROW(spec.validate(), InvalidParameterError);
  spec.delta_axis.clear();
  EXPECT_THROW(spec.validate(), InvalidParameterError);
  EXPECT_EQ(default_delta_axis().size(), 21u);
  EXPECT_NEAR(default_omega_axis().back(), 0.6, 1e-15);
}

TEST(Sweep, TongueMetricsOnSyntheticGrid) {
  SweepResult r;
  r.delta_axis = {-0.1, 0.0, 0.1};
  r.omega_axis = {0.0, 0.1};
  for (std::size_t io = 0; io < 2; ++io) {
    for (std::size_t id = 0; id < 3; ++id) {
      PointRecord p;
      p.i_delta = id;
      p.i_omega = io;
      p.sq_bar = io * (0.5 - 0.1 * std::abs(static_cast<double>(id) - 1.0)) + (id == 2 ? 0.01 : 0.0);
      p.n_bar = 1.0 + p.sq_bar;
      r.points.push_back(p);
    }
  }
  const TongueMetrics m = tongue_metrics(r);
  EXPECT_NEAR(m.mirror_residual, 0.01, 1e-15);
  EXPECT_NEAR(m.max_sq_bar, 0.5, 1e-15);
  EXPECT_NEAR(m.sq_n_correlation, 1.0, 1e-12);
  ASSERT_EQ(m.monotone_in_omega.size(), 3u);
  EXPECT_TRUE(m.monotone_in_omega[1]);
  r.points[3].status = "failed";
  EXPECT_THROW(tongue_metrics(r), IncompleteResultError);
}
