#include "biham/sampling.hpp"

#include <cmath>

#include "biham/error.hpp"

namespace biham {

bool leaf_admissible(const SymmetricParams& params, const LeafChart& leaf) {
  if (std::abs(leaf.u1()) <= kSampleMinU || std::abs(leaf.u2()) <= kSampleMinU) return false;
  const AuxFunctions a = aux(params, leaf);
  if (std::abs(a.G) <= kEpsDegenerate || std::abs(a.F) <= kEpsDegenerate ||
      std::abs(a.theta1) <= kEpsDegenerate)
    return false;
  return std::abs(a.p1sum - 2.0 * params.lambda1()) > kEpsCollision;
}

SampleSet sample_points(SampleKind kind, int n, std::uint64_t seed,
                        const SymmetricParams* params, const PointGuard& extra,
                        const LeafGuard& extra_leaf) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "sample count must be >= 1");
  Sampler s(seed);
  SampleSet out;
  int consecutive = 0;
  auto reject = [&] {
    ++out.resamples;
    if (++consecutive > kMaxConsecutiveRejects) fail(ErrorKind::Degenerate, "sampler starved");
  };

  while (static_cast<int>(kind == SampleKind::Leaf ? out.leaves.size() : out.points.size()) < n) {
    if (kind == SampleKind::MReal) {
      Point p;
      p.chart = Chart::M;
      p.kind = ScalarKind::Real;
      p.x = Vec(6);
      for (int k = 0; k < 6; ++k) p.x(k) = s.real();
      if (extra && !extra(p)) {
        reject();
        continue;
      }
      out.points.push_back(p);
    } else {
      std::array<cplx, 6> c{};
      for (auto& v : c) v = s.complex();
      LeafChart leaf;
      if (kind == SampleKind::UVComplex) {
        leaf = project(make_point(Chart::UV, c));
      } else {
        leaf.coords = {c[0], c[1], c[2], c[3]};
        leaf.h0 = c[4];
        leaf.c2 = c[5];
      }
      bool ok = std::abs(leaf.u1()) > kSampleMinU && std::abs(leaf.u2()) > kSampleMinU;
      if (ok && params != nullptr) ok = leaf_admissible(*params, leaf);
      if (ok && kind == SampleKind::UVComplex && extra) ok = extra(make_point(Chart::UV, c));
      if (ok && kind == SampleKind::Leaf && extra_leaf) ok = extra_leaf(leaf);
      if (!ok) {
        reject();
        continue;
      }
      if (kind == SampleKind::UVComplex)
        out.points.push_back(make_point(Chart::UV, c));
      else
        out.leaves.push_back(leaf);
    }
    consecutive = 0;
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  // splitmix64 finalizer
  std::uint64_t z = h ^ (seed + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace biham
