#include <gtest/gtest.h>

#include "biham/error.hpp"
#include "biham/xxz_model.hpp"
#include "test_util.hpp"

namespace biham {
namespace {

using test::kMu123;
using test::point;
using test::random_point;

ScalarField uv(int k) { return coordinate(Chart::UV, 6, k); }
constexpr int kU1 = 0, kV1 = 1, kZ1 = 2, kU2 = 3, kV2 = 4, kZ2 = 5;

void expect_observables(const Point& pt, cplx h0, cplx c2, cplx h1, cplx h2) {
  const UVObservableValues h = uv_observables(kMu123, pt);
  EXPECT_NEAR(std::abs(h.h0 - h0), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(h.c2 - c2), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(h.h1 - h1), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(h.h2 - h2), 0.0, 1e-13);
}

TEST(XxzObservables, HandPoints) {
  expect_observables(point(Chart::UV, {1, 1, 0, 1, 1, 0}), 2, 0, -16, 30);
  expect_observables(point(Chart::UV, {0, 0, 1, 0, 0, 1}), 2, 0, -12, 18);
  expect_observables(point(Chart::UV, {0, 0, 1, 0, 0, 0}), 1, -1, -2, -13);
}

TEST(XxzObservables, AgreeWithTransportedTopObservables) {
  Sampler s(21);
  const MObservables mo = observables_m(kMu123.model());
  for (int i = 0; i < 20; ++i) {
    const Point pt = random_point(s, Chart::UV);
    const Point m = chart_map(pt, Chart::M, true);
    const UVObservableValues h = uv_observables(kMu123, pt);
    EXPECT_NEAR(std::abs(h.h1 + 2.0 * mo.he(m)), 0.0, 1e-12 * (1.0 + std::abs(h.h1)));
    EXPECT_NEAR(std::abs(h.h2 - mo.ke(m)), 0.0, 1e-12 * (1.0 + std::abs(h.h2)));
    EXPECT_NEAR(std::abs(h.c2 - 2.0 * mo.c(m)), 0.0, 1e-12 * (1.0 + std::abs(h.c2)));
  }
}

TEST(XxzTensors, P1BlockSigns) {
  EXPECT_EQ(max_abs(p1_uv()(point(Chart::UV, {0, 0, 0, 0, 0, 0}))), 0.0);
  Sampler s(22);
  const Point pt = random_point(s, Chart::UV);
  EXPECT_NEAR(std::abs(bracket(p1_uv(), uv(kU1), uv(kZ1), pt) + pt.x(kU1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(bracket(p1_uv(), uv(kU2), uv(kZ2), pt) - pt.x(kU2)), 0.0, 1e-15);
}

TEST(XxzTensors, TransportedFromTopWithConstantFactor) {
  Sampler s(23);
  const cplx f = uv_tensor_factor();
  EXPECT_NEAR(std::abs(f - cplx(0.0, 1.0 / std::sqrt(2.0))), 0.0, 1e-16);
  for (int i = 0; i < 10; ++i) {
    const Point pt = random_point(s, Chart::UV);
    const Point m = chart_map(pt, Chart::M, true);
    const Mat p2 = f * transport_bivector(p2_m(kMu123.model(), m), Chart::M, Chart::UV);
    EXPECT_LE(max_abs(Mat(p2_uv(kMu123)(pt) - p2)), 1e-12 * (1.0 + max_abs(p2)));
  }
}

TEST(XxzTensors, JacobiAndCompatibility) {
  Sampler s(24);
  const BivectorField p1 = p1_uv(), p2 = p2_uv(kMu123), q = q_uv(kMu123);
  for (int i = 0; i < 20; ++i) {
    const Point pt = random_point(s, Chart::UV);
    EXPECT_LE(schouten_residual(p2, p2, pt).normalized(), 1e-11);
    EXPECT_LE(schouten_residual(q, q, pt).normalized(), 1e-11);
    EXPECT_LE(schouten_residual(p1, q, pt).normalized(), 1e-11);
  }
}

TEST(XxzEulerField, ZComponentsVanishOnProportionalU) {
  // u1 v2 = u2 v1 with z = 0.
  const Vec x = x1_field(kMu123)(point(Chart::UV, {1, 2, 0, 0.5, 1, 0}));
  EXPECT_EQ(std::abs(x(kZ1)), 0.0);
  EXPECT_EQ(std::abs(x(kZ2)), 0.0);
}

TEST(XxzEulerField, ConservesZeta1AndMatchesHamiltonianField) {
  Sampler s(25);
  const ScalarField zeta1 = linear_combination({{1.0, uv(kZ2)}, {-1.0, uv(kZ1)}});
  const UVObservables ob = uv_observables(kMu123);
  for (int i = 0; i < 20; ++i) {
    const Point pt = random_point(s, Chart::UV);
    EXPECT_NEAR(std::abs(lie_scalar(x1_field(kMu123), zeta1, pt)), 0.0, 1e-13);
    const Vec ham = ham_field(p1_uv(), ob.h1, pt);
    EXPECT_LE(max_abs(Vec(x1_field(kMu123)(pt) - ham)), 1e-13 * (1.0 + max_abs(ham)));
  }
}

TEST(XxzTransversal, DegeneratePointRejected) {
  try {
    z_field()(point(Chart::UV, {0, 1, 0, 1, 1, 0}));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Degenerate);
    EXPECT_NE(std::string(e.what()).find("degenerate point"), std::string::npos);
  }
  EXPECT_THROW(require_nondegenerate_u(1.0, 1e-9), Error);
}

TEST(XxzDeformedTensor, CasimirsAreH0AndC2NotH1) {
  Sampler s(26);
  const UVObservables ob = uv_observables(kMu123);
  const BivectorField q = q_uv(kMu123);
  double h1_min = 1e300;
  for (int i = 0; i < 50; ++i) {
    const Point pt = random_point(s, Chart::UV);
    const double qs = 1.0 + max_abs(q(pt));
    EXPECT_LE(max_abs(ham_field(q, ob.h0, pt)), 1e-12 * qs);
    EXPECT_LE(max_abs(ham_field(q, ob.c2, pt)), 1e-12 * qs);
    h1_min = std::min(h1_min, max_abs(ham_field(q, ob.h1, pt)));
  }
  EXPECT_GT(h1_min, 1e-3);
}

TEST(XxzDeformedTensor, RankFour) {
  Sampler s(27);
  EXPECT_EQ(numeric_rank(q_uv(kMu123)(random_point(s, Chart::UV)), 1e-10), 4);
}

TEST(XxzStackel, SecondLieDerivativeVanishes) {
  Sampler s(28);
  for (int i = 0; i < 50; ++i) {
    const cplx lambda = 2.0 * s.complex(), rho = 2.0 * s.complex();
    EXPECT_LE(stackel_condition(kMu123, lambda, rho, random_point(s, Chart::UV)).normalized(), 1e-9);
  }
}

TEST(XxzStackel, FirstDerivativeIsNotZeroAndLambdaZeroIsTrivial) {
  Sampler s(29);
  const Point pt = random_point(s, Chart::UV);
  const cplx lambda(0.8, 0.3), rho(-0.4, 0.9);
  EXPECT_GT(std::abs(lie_scalar(z_field(), char_poly_uv(kMu123, lambda, rho), pt)), 1e-3);
  EXPECT_LE(stackel_condition(kMu123, 0.0, rho, pt).value, 1e-14);
}

TEST(XxzCharPoly, MatchesTopCharPoly) {
  Sampler s(30);
  for (int i = 0; i < 10; ++i) {
    const Point pt = random_point(s, Chart::UV);
    const cplx lambda = s.complex(), rho = s.complex();
    const cplx a = char_poly_uv(kMu123, lambda, rho)(pt);
    const cplx b = char_poly_closed_form(kMu123.model(), lambda, rho, chart_map(pt, Chart::M, true));
    EXPECT_NEAR(std::abs(a - b), 0.0, 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST(XxzParams, Validation) {
  try {
    SymmetricParams{1, -1, 3}.validate();
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("degenerate constant eigenvalue"), std::string::npos);
  }
  EXPECT_THROW((SymmetricParams{1, 2, 0}.validate()), Error);
  EXPECT_NO_THROW(kMu123.validate());
}

}  // namespace
}  // namespace biham
