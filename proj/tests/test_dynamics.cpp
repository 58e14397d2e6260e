#include <gtest/gtest.h>

#include <cmath>

#include "biham/dynamics.hpp"
#include "biham/error.hpp"
#include "biham/sampling.hpp"
#include "test_util.hpp"

namespace biham {
namespace {

const ModelParams kTop = ModelParams::symmetric(10, 1, 2);

RealState seeded_state(std::uint64_t seed) {
  Sampler s(seed);
  RealState m{};
  for (double& v : m) v = s.real();
  return m;
}

TEST(Dynamics, RhsMatchesHamiltonianFieldAndH1Scaling) {
  Sampler s(51);
  const MObservables ob = observables_m(kTop);
  for (int i = 0; i < 10; ++i) {
    const Point m = test::random_real_m(s);
    const Vec rhs = euler_rhs(kTop, m);
    const Vec ham = ham_field(p1_m(), ob.he, m);
    EXPECT_LE(max_abs(Vec(rhs - ham)), 1e-13 * (1.0 + max_abs(ham)));
    EXPECT_LE(max_abs(Vec(euler_rhs(kTop, m, FlowKind::H1) + 2.0 * rhs)), 1e-13 * (1.0 + max_abs(rhs)));
  }
  const RealState zero{};
  for (double v : euler_rhs(kTop, zero)) EXPECT_EQ(v, 0.0);
}

TEST(Dynamics, InvariantsMatchObservables) {
  const RealState m{0.3, -0.2, 0.5, 0.1, -0.7, 0.4};
  const Invariants inv = invariants(kTop, m);
  const auto ob = observables_m(kTop, make_point(Chart::M, {m[0], m[1], m[2], m[3], m[4], m[5]}));
  EXPECT_NEAR(inv[0], ob.h0.real(), 1e-15);
  EXPECT_NEAR(inv[1], ob.c.real(), 1e-15);
  EXPECT_NEAR(inv[2], ob.he.real(), 1e-13);
  EXPECT_NEAR(inv[3], ob.ke.real(), 1e-12);
  const Point split = chart_map(make_point(Chart::M, {m[0], m[1], m[2], m[3], m[4], m[5]}), Chart::Split);
  EXPECT_NEAR(inv[4], (split.x(5) - split.x(2)).real(), 1e-15);
}

TEST(Dynamics, ZeroStateIsStationary) {
  const Trajectory tr = integrate(kTop, RealState{}, {1e-2, 1.0, 10});
  for (const RealState& s : tr.states)
    for (double v : s) EXPECT_EQ(v, 0.0);
  for (double d : tr.drift) EXPECT_EQ(d, 0.0);
  EXPECT_FALSE(tr.aborted);
}

TEST(Dynamics, RecordingSchedule) {
  const Trajectory tr = integrate(kTop, seeded_state(1), {0.1, 1.05, 3});
  // 11 steps (last one shortened): records at 0, 3, 6, 9 and the final step.
  ASSERT_EQ(tr.times.size(), 5u);
  EXPECT_DOUBLE_EQ(tr.times.front(), 0.0);
  EXPECT_NEAR(tr.times.back(), 1.05, 1e-14);
  EXPECT_EQ(tr.states.size(), tr.invariant_series.size());
}

TEST(Dynamics, InvalidOptionsRejected) {
  const RealState m = seeded_state(2);
  EXPECT_THROW(integrate(kTop, m, {0.0, 1.0, 1}), Error);
  EXPECT_THROW(integrate(kTop, m, {1e-3, -1.0, 1}), Error);
  EXPECT_THROW(integrate(kTop, m, {1e-3, 1.0, 0}), Error);
  RealState bad = m;
  bad[0] = std::nan("");
  EXPECT_THROW(integrate(kTop, bad, {}), Error);
}

TEST(Dynamics, DriftBoundAndFourthOrder) {
  const RealState m0 = seeded_state(42);
  const Trajectory a = integrate(kTop, m0, {1e-3, 10.0, 100});
  for (double d : a.drift) EXPECT_LE(d, 1e-8);
  const Trajectory b = integrate(kTop, m0, {5e-4, 10.0, 100});
  const double ratio = a.drift[2] / b.drift[2];
  EXPECT_GE(ratio, 11.0);
  EXPECT_LE(ratio, 22.0);
}

TEST(Dynamics, EndpointErrorConvergesAtOrderFour) {
  const RealState m0 = seeded_state(7);
  const RealState ref = integrate_steps(kTop, m0, 1e-4, 20000);
  auto err = [&](double dt, long n) {
    const RealState x = integrate_steps(kTop, m0, dt, n);
    double e = 0.0;
    for (int k = 0; k < 6; ++k) e = std::max(e, std::abs(x[k] - ref[k]));
    return e;
  };
  const double ratio = err(4e-2, 50) / err(2e-2, 100);
  EXPECT_GT(ratio, 13.0);
  EXPECT_LT(ratio, 19.0);
}

TEST(Dynamics, TimeReversal) {
  const RealState m0 = seeded_state(3);
  const RealState fwd = integrate_steps(kTop, m0, 1e-3, 1000);
  const RealState back = integrate_steps(kTop, fwd, -1e-3, 1000);
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(back[k], m0[k], 1e-12);
}

TEST(Dynamics, H1FlowIsRescaledHEFlow) {
  const RealState m0 = seeded_state(4);
  const RealState a = integrate_steps(kTop, m0, 1e-3, 500, FlowKind::H1);
  const RealState b = integrate_steps(kTop, m0, -2e-3, 500, FlowKind::HE);
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(a[k], b[k], 1e-13);
}

TEST(Dynamics, NonFiniteStateAborts) {
  // A huge state overflows within a few steps.
  const RealState m0{1e150, 1e150, 1e150, 1e150, 1e150, 1e150};
  const Trajectory tr = integrate(ModelParams::from_mu(1, 2, 3, 4), m0, {1.0, 100.0, 1});
  EXPECT_TRUE(tr.aborted);
}

}  // namespace
}  // namespace biham
