#pragma once

#include <array>
#include <vector>

#include "biham/so4_top.hpp"

namespace biham {

using RealState = std::array<double, 6>;

/// Which Hamiltonian drives the flow. H1 = -2 HE, so its flow is HE's scaled by -2.
enum class FlowKind { HE, H1 };

/// P1(m) grad(H) for a real m-chart state.
RealState euler_rhs(const ModelParams& params, const RealState& m, FlowKind which = FlowKind::HE);
/// Same, taking a Point (must be chart M with real coordinates).
Vec euler_rhs(const ModelParams& params, const Point& pt, FlowKind which = FlowKind::HE);

/// Monitored quantities, in the order H0, C, HE, KE, zeta1 (= z2 - z1 in the split chart).
inline constexpr int kNumInvariants = 5;
using Invariants = std::array<double, kNumInvariants>;
Invariants invariants(const ModelParams& params, const RealState& m);

struct IntegrateOptions {
  double dt = 1e-3;
  double t_end = 10.0;
  int record_every = 100;
  FlowKind flow = FlowKind::HE;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<RealState> states;
  std::vector<Invariants> invariant_series;
  /// max over all steps of |I(t) - I(0)| / |I(0)|; absolute deviation when I(0) = 0.
  Invariants drift{};
  bool aborted = false;  ///< a non-finite state was produced; the result is partial
};

/// Classical fixed-step RK4. The last step is shortened to land on t_end.
/// Throws InvalidArgument on dt <= 0, t_end <= 0, record_every < 1 or non-finite m0.
Trajectory integrate(const ModelParams& params, const RealState& m0,
                     const IntegrateOptions& options = {});

/// `steps` RK4 steps of signed size dt (negative dt integrates backwards).
RealState integrate_steps(const ModelParams& params, const RealState& m0, double dt,
                          long steps, FlowKind flow = FlowKind::HE);

}  // namespace biham
