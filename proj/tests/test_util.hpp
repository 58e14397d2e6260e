#pragma once

#include "biham/sampling.hpp"

namespace biham::test {

inline Point random_point(Sampler& s, Chart chart) {
  std::array<cplx, 6> c{};
  for (auto& v : c) v = s.complex();
  return make_point(chart, c);
}

inline Point random_real_m(Sampler& s) {
  std::array<cplx, 6> c{};
  for (auto& v : c) v = s.real();
  return make_point(Chart::M, c, ScalarKind::Real);
}

inline Point point(Chart chart, std::array<cplx, 6> c) { return make_point(chart, c); }

inline LeafChart leaf(cplx u1, cplx z1, cplx u2, cplx z2, cplx h0, cplx c2) {
  LeafChart l;
  l.coords = {u1, z1, u2, z2};
  l.h0 = h0;
  l.c2 = c2;
  return l;
}

inline const SymmetricParams kMu123{1.0, 2.0, 3.0};

}  // namespace biham::test
