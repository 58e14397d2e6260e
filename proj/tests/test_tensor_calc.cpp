#include <gtest/gtest.h>

#include "biham/error.hpp"
#include "biham/so4_top.hpp"
#include "biham/tensor_calc.hpp"
#include "biham/xxz_model.hpp"
#include "test_util.hpp"

namespace biham {
namespace {

using test::point;
using test::random_point;

ScalarField m(int k) { return coordinate(Chart::M, 6, k); }

TEST(TensorCalc, BracketIsAntisymmetric) {
  Sampler s(1);
  const Point pt = random_point(s, Chart::M);
  EXPECT_EQ(bracket(p1_m(), m(2), m(2), pt), cplx(0.0));
  EXPECT_NEAR(std::abs(bracket(p1_m(), m(0), m(4), pt) + bracket(p1_m(), m(4), m(0), pt)), 0.0,
              1e-15);
}

TEST(TensorCalc, BracketOfM12AndM13IsMinusM23) {
  const Point pt = point(Chart::M, {0.3, -0.2, 0.7, 0.5, 0.1, -0.4});
  EXPECT_NEAR(std::abs(bracket(p1_m(), m(0), m(1), pt) - cplx(-0.5)), 0.0, 1e-15);
}

TEST(TensorCalc, CasimirBracketVanishes) {
  Sampler s(2);
  const MObservables ob = observables_m(ModelParams::from_mu(1, 2, 3, 4));
  for (int i = 0; i < 20; ++i) {
    const Point pt = random_point(s, Chart::M);
    for (const ScalarField* g : {&ob.he, &ob.ke})
      EXPECT_LE(bracket_residual(p1_m(), ob.h0, *g, pt).normalized(), 1e-14);
  }
}

TEST(TensorCalc, ChartMismatchThrows) {
  const Point uv = point(Chart::UV, {1, 1, 0, 1, 1, 0});
  try {
    bracket(p1_m(), m(0), m(1), uv);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ChartMismatch);
    EXPECT_NE(std::string(e.what()).find("chart mismatch"), std::string::npos);
  }
}

TEST(TensorCalc, HamFieldOfCasimirAndConstant) {
  Sampler s(3);
  const MObservables ob = observables_m(ModelParams::from_mu(1, 2, 3, 4));
  const Point pt = random_point(s, Chart::M);
  EXPECT_LE(max_abs(ham_field(p1_m(), ob.h0, pt)), 1e-13);
  EXPECT_EQ(max_abs(ham_field(p1_m(), constant_scalar(Chart::M, 6, 2.5), pt)), 0.0);
}

TEST(TensorCalc, SchoutenVanishesForLiePoissonPencil) {
  Sampler s(4);
  const ModelParams mp = ModelParams::from_mu(1, 2, 3, 4);
  for (int i = 0; i < 50; ++i) {
    const Point pt = random_point(s, Chart::M);
    EXPECT_LE(schouten_residual(p1_m(), p1_m(), pt).normalized(), 1e-12);
    EXPECT_LE(schouten_residual(p1_m(), p2_m(mp), pt).normalized(), 1e-12);
  }
}

TEST(TensorCalc, SchoutenDetectsSingleSignFlip) {
  // P1 with the sign of the m23 entry in the (m12, m13) slot flipped.
  const BivectorField flipped = linear_bivector(Chart::M, 6, [](const Vec& x) {
    Mat p = p1_m().value(x);
    p(0, 1) = -p(0, 1);
    p(1, 0) = -p(1, 0);
    return p;
  });
  Sampler s(5);
  const Point pt = random_point(s, Chart::M);
  EXPECT_GT(schouten_residual(flipped, flipped, pt).normalized(), 1e-3);
}

TEST(TensorCalc, LieScalarOfTransversalField) {
  Sampler s(6);
  const UVObservables ob = uv_observables(test::kMu123);
  const VectorField z = z_field();
  const VectorField x1 = x1_field(test::kMu123);
  for (int i = 0; i < 10; ++i) {
    const Point pt = random_point(s, Chart::UV);
    EXPECT_NEAR(std::abs(lie_scalar(z, ob.h0, pt) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(lie_scalar(z, ob.c2, pt)), 0.0, 1e-12);
    EXPECT_LE(std::abs(lie_scalar(x1, ob.h2, pt)), 1e-11 * (1.0 + std::abs(ob.h2(pt))));
  }
}

TEST(TensorCalc, LieBivectorOfTransversalField) {
  Sampler s(7);
  const VectorField z = z_field();
  const BivectorField p2 = p2_uv(test::kMu123);
  for (int i = 0; i < 20; ++i) {
    const Point pt = random_point(s, Chart::UV);
    EXPECT_LE(max_abs(lie_bivector(z, p1_uv(), pt)), 1e-12 * (1.0 + max_abs(p1_uv()(pt))));
    const Mat lz = lie_bivector(z, p2, pt);
    EXPECT_LE(numeric_rank(lz, 1e-10), 2);
    EXPECT_LE(column_space_defect(lz, z(pt), 1e-10), 1e-10);
  }
}

TEST(TensorCalc, LieBivectorOfConstantsVanishes) {
  Vec zv(6);
  zv << 1, 2, 3, 4, 5, 6;
  const Mat c = wedge(Vec(Vec::Unit(6, 0)), Vec(Vec::Unit(6, 3)));
  const Point pt = point(Chart::M, {1, 0, -1, 2, 0, 1});
  EXPECT_EQ(max_abs(lie_bivector(constant_vector(Chart::M, zv), constant_bivector(Chart::M, c), pt)),
            0.0);
}

TEST(TensorCalc, WedgeBasics) {
  const Vec e1 = Vec::Unit(6, 0), e2 = Vec::Unit(6, 1);
  const Mat w = wedge(e1, e2);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const double expected = (i == 0 && j == 1) ? 1.0 : (i == 1 && j == 0) ? -1.0 : 0.0;
      EXPECT_EQ(w(i, j), cplx(expected));
    }
  Sampler s(8);
  const Point pt = random_point(s, Chart::UV);
  const VectorField x1 = x1_field(test::kMu123);
  EXPECT_EQ(max_abs(wedge(x1, x1, pt)), 0.0);
  const Mat xz = wedge(x1, z_field(), pt);
  EXPECT_EQ(antisymmetry_defect(xz), 0.0);
  EXPECT_EQ(numeric_rank(xz, 1e-10), 2);
}

TEST(TensorCalc, ExactDerivativesAgreeWithFiniteDifferences) {
  Sampler s(9);
  const MObservables ob = observables_m(ModelParams::from_mu(10, 1, 2, 2));
  for (int i = 0; i < 10; ++i) {
    const Point pt = random_point(s, Chart::M);
    EXPECT_LE(fd_gradient_error(ob.ke, pt), 1e-7);
    EXPECT_LE(fd_hessian_error(ob.c, pt), 1e-6);
    EXPECT_LE(fd_jacobian_error(p2_m(ModelParams::from_mu(10, 1, 2, 2)), pt), 1e-7);
  }
  const Point uv = random_point(s, Chart::UV);
  EXPECT_LE(fd_jacobian_error(x1_field(test::kMu123), uv), 1e-7);
  EXPECT_LE(fd_jacobian_error(q_uv(test::kMu123), uv), 1e-7);
}

TEST(TensorCalc, FieldAlgebra) {
  const Point pt = point(Chart::M, {2, 3, 0, 0, 0, 0});
  const ScalarField f = product(m(0), m(1));
  EXPECT_EQ(f(pt), cplx(6.0));
  const ScalarField g = linear_combination({{2.0, m(0)}, {-1.0, f}});
  EXPECT_EQ(g(pt), cplx(-2.0));
  EXPECT_EQ(g.grad(pt.x)(0), cplx(2.0 - 3.0));
}

TEST(TensorCalc, RankHelpers) {
  Mat a = Mat::Zero(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 1e-14;
  EXPECT_EQ(numeric_rank(a, 1e-10), 1);
  Vec v = Vec::Unit(3, 0);
  EXPECT_LE(column_space_defect(a, v, 1e-10), 1e-15);
  EXPECT_GT(column_space_defect(a, Vec(Vec::Unit(3, 2)), 1e-10), 0.4);
}

}  // namespace
}  // namespace biham
