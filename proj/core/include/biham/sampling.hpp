#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string_view>
#include <vector>

#include "biham/leaf_sov.hpp"

namespace biham {

enum class SampleKind { MReal, UVComplex, Leaf };

/// Consecutive guard failures after which sampling gives up.
inline constexpr int kMaxConsecutiveRejects = 1000;
/// Lower bound on |u1|, |u2| for sampled uv points and leaves.
inline constexpr double kSampleMinU = 0.1;

/// Deterministic uniform sampler: real and imaginary parts in [-1, 1].
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double real() { return dist_(rng_); }
  cplx complex() {
    const double re = real();
    return {re, real()};
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> dist_{-1.0, 1.0};
};

struct SampleSet {
  std::vector<Point> points;      ///< M (real) or UV (complex) points
  std::vector<LeafChart> leaves;  ///< filled for SampleKind::Leaf
  long resamples = 0;             ///< total number of rejected draws
};

/// Extra acceptance predicate on a candidate point (UV or M) or leaf.
using PointGuard = std::function<bool(const Point&)>;
using LeafGuard = std::function<bool(const LeafChart&)>;

/// Guards every uv point / leaf must satisfy for the separation machinery of
/// `params`: |u_i| > 0.1, |G|, |F|, |theta1| > kEpsDegenerate, distinct eigenvalues.
bool leaf_admissible(const SymmetricParams& params, const LeafChart& leaf);

/// n points of the requested kind. For UVComplex and Leaf kinds `params`
/// supplies the separation guards (pass nullptr for the |u_i| guard only).
/// Throws Degenerate("sampler starved") after kMaxConsecutiveRejects failures.
SampleSet sample_points(SampleKind kind, int n, std::uint64_t seed,
                        const SymmetricParams* params = nullptr, const PointGuard& extra = {},
                        const LeafGuard& extra_leaf = {});

/// Per-check seed: FNV-1a hash of the name mixed with the suite seed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name);

}  // namespace biham
