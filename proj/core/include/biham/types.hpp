#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace biham {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Coordinate charts used throughout the library.
///
///  - M:     (m12, m13, m14, m23, m24, m34) on so(4)
///  - Split: (x1, y1, z1, x2, y2, z2) on so(3) + so(3)
///  - UV:    (u1, v1, z1, u2, v2, z2), u_k = x_k + i y_k, v_k = x_k - i y_k
///  - Leaf:  (u1, z1, u2, z2) on a symplectic leaf with fixed Casimir levels
enum class Chart { M, Split, UV, Leaf };

enum class ScalarKind { Real, Complex };

std::string_view to_string(Chart chart);

/// A point in a chart. Six coordinates for M/Split/UV, four for Leaf.
struct Point {
  Chart chart = Chart::M;
  Vec x;
  ScalarKind kind = ScalarKind::Complex;

  int dim() const { return static_cast<int>(x.size()); }
};

using PhasePoint = Point;

Point make_point(Chart chart, const std::array<cplx, 6>& coords,
                 ScalarKind kind = ScalarKind::Complex);

/// Dimension of a chart's coordinate vector.
constexpr int chart_dim(Chart chart) { return chart == Chart::Leaf ? 4 : 6; }

/// Residual of an identity r = sum of terms, with s = max |term|.
/// The normalized value |r| / (1 + s) is what every tolerance compares against.
struct Residual {
  double value = 0.0;
  double scale = 0.0;

  double normalized() const { return value / (1.0 + scale); }

  /// Keep the worse (by normalized value) of two residuals.
  Residual& absorb(const Residual& other) {
    if (other.normalized() > normalized()) *this = other;
    return *this;
  }
};

/// Sum-of-summands accumulator: tracks the largest summand while adding.
class Accumulator {
 public:
  void add(cplx term) {
    sum_ += term;
    scale_ = std::max(scale_, std::abs(term));
  }
  void sub(cplx term) { add(-term); }
  cplx sum() const { return sum_; }
  double scale() const { return scale_; }
  Residual residual() const { return {std::abs(sum_), scale_}; }

 private:
  cplx sum_{0.0, 0.0};
  double scale_ = 0.0;
};

}  // namespace biham
