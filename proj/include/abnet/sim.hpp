#pragma once

#include "abnet/model.hpp"
#include "abnet/trajectory.hpp"

#include <cstdint>
#include <vector>

namespace abnet {

enum class SamplingMode {
  distinct,          // m different targets, drawn without replacement
  with_replacement,  // m sequential draws on the updated state; repeats allowed
};

std::string to_string(SamplingMode mode);
SamplingMode sampling_mode_from_string(const std::string& s);

struct SimOptions {
  SamplingMode sampling = SamplingMode::distinct;
  /// Check degree bookkeeping after every event instead of every 1000.
  bool check_every_event = false;
};

/// Degree-class state of one growing network.
struct SimState {
  std::vector<std::int64_t> degree_counts;  // indexed by degree
  std::int64_t total_degree = 0;            // sum_k k * n_k
  std::int64_t node_count = 0;
  std::int64_t arrivals = 0;
  double clock = 0.0;

  int max_degree() const;
};

struct SimStats {
  std::vector<std::int64_t> arrivals;  // arrivals up to each snapshot
  std::vector<int> max_degree;         // largest occupied degree at each snapshot
  std::int64_t events = 0;
  std::int64_t short_attachments = 0;  // lenient mode: arrivals that found < m nodes
};

/// One realization of the growth process up to t_end.
///
/// Arrivals are a Poisson process of rate lambda. Each arrival picks its
/// targets degree-proportionally by degree class, every picked node moves
/// k -> k+1, and the new node enters at degree m. Snapshot counts are the
/// state as of the last event before each snapshot time.
///
/// When fewer than m nodes exist, strict mode throws SimulationError and
/// lenient mode attaches to every node (recorded in the warnings).
DegreeTrajectory simulate(const ModelParams& params, double t_end, std::uint64_t seed,
                          const std::vector<double>& snapshots, const SimOptions& options = {},
                          SimStats* stats = nullptr);

struct EnsembleResult {
  std::vector<double> times;
  int k_min = 1;
  int k_max = 1;
  std::vector<std::vector<double>> mean;    // [snapshot][k - k_min]
  std::vector<std::vector<double>> stddev;  // sample standard deviation
  std::vector<double> total_mean;           // sum_k N_k per snapshot
  std::vector<double> total_stddev;
  std::vector<std::int64_t> final_arrivals;  // per replica, at the last snapshot
  std::size_t replicas = 0;
  std::uint64_t base_seed = 0;
  SimOptions options;
  std::int64_t flagged_replicas = 0;

  double mean_at(std::size_t snapshot, int k) const;
  double stddev_at(std::size_t snapshot, int k) const;
  double stderr_at(std::size_t snapshot, int k) const;
};

/// Seed of replica `index`, derived from the base seed by a splitmix64 hash.
std::uint64_t replica_seed(std::uint64_t base_seed, std::uint64_t index);

/// Runs independent replicas (in parallel when threads != 1; 0 means
/// hardware concurrency). Results do not depend on the thread count.
EnsembleResult ensemble(const ModelParams& params, double t_end, const std::vector<double>& snapshots,
                        std::size_t replicas, std::uint64_t base_seed, const SimOptions& options = {},
                        unsigned threads = 0);

}  // namespace abnet
