#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace abnet {

enum class TrajectorySource { closed_form, ode, simulation, hypergeometric, krapivsky_redner };

std::string to_string(TrajectorySource source);

/// Degree-class counts N_k at a list of snapshot times, for k in [k_min, k_max].
struct DegreeTrajectory {
  TrajectorySource source = TrajectorySource::closed_form;
  int k_min = 1;
  int k_max = 1;
  std::vector<double> times;
  std::vector<std::vector<double>> counts;  // counts[snapshot][k - k_min]
  /// Nodes that left the truncated range through k_max (ODE only).
  std::vector<double> leaked;
  std::vector<std::string> warnings;

  std::size_t degrees() const { return static_cast<std::size_t>(k_max - k_min + 1); }
  /// N_k at a snapshot; zero outside [k_min, k_max].
  double at(std::size_t snapshot, int k) const;
};

}  // namespace abnet
