#pragma once

#include "abnet/model.hpp"
#include "abnet/trajectory.hpp"

#include <span>
#include <vector>

namespace abnet {

struct OdeConfig {
  int k_max = 400;
  double rel_tol = 1e-10;
  double abs_tol = 1e-18;
  std::vector<double> t_snapshots;
  long max_steps = 50'000'000;
};

struct OdeStats {
  long accepted_steps = 0;
  long rejected_steps = 0;
  long rhs_evaluations = 0;
  double smallest_step = 0.0;
  double largest_step = 0.0;
};

/// Right-hand side of the truncated rate equations for N_m..N_{k_max}:
///
///   dN_k/dt = lambda delta_{k,m} + lambda m [ (k-1) N_{k-1} / D(t) (1 - delta_{k,m}) - k N_k / D(t) ].
///
/// The outflow from N_{k_max} is kept, so mass leaves the truncated system.
std::vector<double> rate_rhs(std::span<const double> state, double t, const ModelParams& params, int k_max);

/// Integrates the truncated system from the initial counts with an adaptive
/// Dormand-Prince 5(4) scheme and 4th-order dense output at the snapshots.
/// Throws IntegrationError on step-size underflow, non-finite state or when
/// max_steps is exhausted.
DegreeTrajectory integrate(const ModelParams& params, const OdeConfig& cfg, OdeStats* stats = nullptr);

}  // namespace abnet
