#include <gtest/gtest.h>

#include "biham/error.hpp"
#include "biham/sampling.hpp"
#include "test_util.hpp"

namespace biham {
namespace {

TEST(Sampling, Deterministic) {
  for (SampleKind kind : {SampleKind::MReal, SampleKind::UVComplex, SampleKind::Leaf}) {
    const SampleSet a = sample_points(kind, 30, 99, &test::kMu123);
    const SampleSet b = sample_points(kind, 30, 99, &test::kMu123);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_EQ(a.points[i].x, b.points[i].x);
    ASSERT_EQ(a.leaves.size(), b.leaves.size());
    for (std::size_t i = 0; i < a.leaves.size(); ++i)
      EXPECT_EQ(a.leaves[i].coords, b.leaves[i].coords);
  }
}

TEST(Sampling, RealPointsBounded) {
  const SampleSet s = sample_points(SampleKind::MReal, 100, 5);
  ASSERT_EQ(s.points.size(), 100u);
  for (const Point& p : s.points) {
    EXPECT_EQ(p.chart, Chart::M);
    EXPECT_EQ(p.dim(), 6);
    EXPECT_LE(max_abs(p.x), 1.0);
    EXPECT_EQ(p.x.imag().cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Sampling, LeafGuardContract) {
  const SampleSet s = sample_points(SampleKind::Leaf, 200, 6, &test::kMu123);
  ASSERT_EQ(s.leaves.size(), 200u);
  for (const LeafChart& l : s.leaves) {
    EXPECT_GT(std::abs(l.u1()), kSampleMinU);
    EXPECT_GT(std::abs(l.u2()), kSampleMinU);
    const AuxFunctions a = aux(test::kMu123, l);
    EXPECT_GT(std::abs(a.G), kEpsDegenerate);
    EXPECT_GT(std::abs(a.F), kEpsDegenerate);
    EXPECT_GT(std::abs(a.theta1), kEpsDegenerate);
    EXPECT_TRUE(leaf_admissible(test::kMu123, l));
  }
}

TEST(Sampling, StarvedGuard) {
  try {
    sample_points(SampleKind::UVComplex, 5, 1, nullptr, [](const Point&) { return false; });
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("sampler starved"), std::string::npos);
  }
}

TEST(Sampling, DerivedSeedsDifferByName) {
  EXPECT_EQ(derive_seed(42, "m.pencil"), derive_seed(42, "m.pencil"));
  EXPECT_NE(derive_seed(42, "m.pencil"), derive_seed(42, "m.char_poly"));
  EXPECT_NE(derive_seed(42, "m.pencil"), derive_seed(43, "m.pencil"));
}

}  // namespace
}  // namespace biham
