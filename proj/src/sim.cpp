#include "abnet/sim.hpp"

#include "abnet/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <utility>

namespace abnet {

std::string to_string(SamplingMode mode) {
  return mode == SamplingMode::distinct ? "distinct" : "with_replacement";
}

SamplingMode sampling_mode_from_string(const std::string& s) {
  if (s == "distinct") return SamplingMode::distinct;
  if (s == "with_replacement") return SamplingMode::with_replacement;
  throw InputError("unknown sampling mode '" + s + "' (expected distinct|with_replacement)");
}

int SimState::max_degree() const {
  for (std::size_t k = degree_counts.size(); k-- > 0;) {
    if (degree_counts[k] > 0) return static_cast<int>(k);
  }
  return 0;
}

namespace {

constexpr std::int64_t kCheckInterval = 1000;

class Growth {
 public:
  Growth(const ModelParams& params, std::uint64_t seed, const SimOptions& options)
      : params_(params), options_(options), rng_(seed), arrival_(params.lambda()) {
    for (const auto& [k, count] : params.initial_counts()) {
      if (count != std::floor(count)) {
        throw InputError("simulate: initial count for degree " + std::to_string(k) + " is not an integer");
      }
      grow(k + 1);
      const auto c = static_cast<std::int64_t>(count);
      state_.degree_counts[static_cast<std::size_t>(k)] = c;
      state_.node_count += c;
      state_.total_degree += c * k;
    }
    grow(params.m() + 2);
  }

  const SimState& state() const { return state_; }
  std::int64_t short_attachments() const { return short_attachments_; }

  double next_interval() { return arrival_(rng_); }

  void arrive() {
    const int m = params_.m();
    const std::int64_t before_degree = state_.total_degree;
    const std::int64_t before_nodes = state_.node_count;

    std::int64_t targets = m;
    if (state_.node_count < m) {
      if (params_.mode() == ValidationMode::strict) {
        throw SimulationError("simulate: arrival found " + std::to_string(state_.node_count) +
                              " nodes but needs m = " + std::to_string(m));
      }
      targets = state_.node_count;
      ++short_attachments_;
    }

    if (options_.sampling == SamplingMode::distinct) {
      attach_distinct(targets);
    } else {
      for (std::int64_t r = 0; r < targets; ++r) {
        const int k = pick_class(state_.total_degree, nullptr);
        move_up(k, 1);
        state_.total_degree += 1;
      }
    }

    grow(m + 1);
    state_.degree_counts[static_cast<std::size_t>(m)] += 1;
    state_.node_count += 1;
    state_.total_degree += m;
    state_.arrivals += 1;

    if (state_.total_degree != before_degree + m + targets || state_.node_count != before_nodes + 1) {
      throw SimulationError("simulate: bookkeeping drift after arrival");
    }
    if (options_.check_every_event || state_.arrivals % kCheckInterval == 0) audit();
  }

 private:
  void grow(int size) {
    if (state_.degree_counts.size() < static_cast<std::size_t>(size)) {
      state_.degree_counts.resize(static_cast<std::size_t>(size), 0);
    }
  }

  // Class k with probability k * (n_k - taken_k) / weight.
  int pick_class(std::int64_t weight, const std::vector<std::int64_t>* taken) {
    std::uniform_int_distribution<std::int64_t> pick(0, weight - 1);
    std::int64_t u = pick(rng_);
    const auto& counts = state_.degree_counts;
    for (std::size_t k = 1; k < counts.size(); ++k) {
      std::int64_t avail = counts[k];
      if (taken) avail -= (*taken)[k];
      const std::int64_t w = static_cast<std::int64_t>(k) * avail;
      if (u < w) return static_cast<int>(k);
      u -= w;
    }
    throw SimulationError("simulate: degree weights exhausted");
  }

  void attach_distinct(std::int64_t targets) {
    taken_.assign(state_.degree_counts.size(), 0);
    std::int64_t weight = state_.total_degree;
    for (std::int64_t r = 0; r < targets; ++r) {
      const int k = pick_class(weight, &taken_);
      taken_[static_cast<std::size_t>(k)] += 1;
      weight -= k;
    }
    for (std::size_t k = taken_.size(); k-- > 1;) {
      if (taken_[k] > 0) move_up(static_cast<int>(k), taken_[k]);
    }
    state_.total_degree += targets;
  }

  void move_up(int k, std::int64_t count) {
    grow(k + 2);
    state_.degree_counts[static_cast<std::size_t>(k)] -= count;
    state_.degree_counts[static_cast<std::size_t>(k) + 1] += count;
  }

  void audit() const {
    std::int64_t nodes = 0;
    std::int64_t degree = 0;
    for (std::size_t k = 0; k < state_.degree_counts.size(); ++k) {
      const auto c = state_.degree_counts[k];
      if (c < 0) throw SimulationError("simulate: negative degree count");
      nodes += c;
      degree += c * static_cast<std::int64_t>(k);
    }
    if (nodes != state_.node_count || degree != state_.total_degree) {
      throw SimulationError("simulate: degree bookkeeping mismatch");
    }
  }

  const ModelParams& params_;
  SimOptions options_;
  SimState state_;
  std::mt19937_64 rng_;
  std::exponential_distribution<double> arrival_;
  std::vector<std::int64_t> taken_;
  std::int64_t short_attachments_ = 0;
};

void check_snapshots(double t_end, const std::vector<double>& snapshots) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InputError("simulate: t_end must be finite and >= 0");
  if (!std::is_sorted(snapshots.begin(), snapshots.end())) throw InputError("simulate: snapshots must be sorted");
  for (double s : snapshots) {
    if (!(s >= 0.0) || s > t_end) throw InputError("simulate: snapshots must lie in [0, t_end]");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

DegreeTrajectory simulate(const ModelParams& params, double t_end, std::uint64_t seed,
                          const std::vector<double>& snapshots, const SimOptions& options, SimStats* stats) {
  check_snapshots(t_end, snapshots);
  Growth growth(params, seed, options);

  DegreeTrajectory traj;
  traj.source = TrajectorySource::simulation;
  traj.k_min = params.m();
  traj.k_max = params.m();
  SimStats local;

  std::vector<std::vector<double>> raw;
  auto record = [&](double ts) {
    const SimState& s = growth.state();
    traj.times.push_back(ts);
    const int top = std::max(s.max_degree(), params.m());
    std::vector<double> row;
    for (int k = params.m(); k <= top; ++k) row.push_back(static_cast<double>(s.degree_counts[static_cast<std::size_t>(k)]));
    raw.push_back(std::move(row));
    traj.k_max = std::max(traj.k_max, top);
    local.arrivals.push_back(s.arrivals);
    local.max_degree.push_back(s.max_degree());
  };

  std::size_t next = 0;
  double clock = 0.0;
  for (;;) {
    const double event = clock + growth.next_interval();
    while (next < snapshots.size() && snapshots[next] < event) record(snapshots[next++]);
    if (event > t_end) break;
    clock = event;
    growth.arrive();
    ++local.events;
  }
  while (next < snapshots.size()) record(snapshots[next++]);

  for (auto& row : raw) row.resize(traj.degrees(), 0.0);
  traj.counts = std::move(raw);

  local.short_attachments = growth.short_attachments();
  if (local.short_attachments > 0) {
    traj.warnings.push_back("lenient attachment: " + std::to_string(local.short_attachments) +
                            " arrivals found fewer than m nodes and attached to all of them");
  }
  if (stats) *stats = std::move(local);
  return traj;
}

std::uint64_t replica_seed(std::uint64_t base_seed, std::uint64_t index) {
  return splitmix64(splitmix64(base_seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double EnsembleResult::mean_at(std::size_t snapshot, int k) const {
  if (k < k_min || k > k_max) return 0.0;
  return mean.at(snapshot).at(static_cast<std::size_t>(k - k_min));
}

double EnsembleResult::stddev_at(std::size_t snapshot, int k) const {
  if (k < k_min || k > k_max) return 0.0;
  return stddev.at(snapshot).at(static_cast<std::size_t>(k - k_min));
}

double EnsembleResult::stderr_at(std::size_t snapshot, int k) const {
  return stddev_at(snapshot, k) / std::sqrt(static_cast<double>(replicas));
}

EnsembleResult ensemble(const ModelParams& params, double t_end, const std::vector<double>& snapshots,
                        std::size_t replicas, std::uint64_t base_seed, const SimOptions& options,
                        unsigned threads) {
  if (replicas < 1) throw InputError("ensemble: replicas must be >= 1");
  check_snapshots(t_end, snapshots);

  struct Replica {
    DegreeTrajectory traj;
    SimStats stats;
  };
  std::vector<Replica> runs(replicas);

  std::atomic<std::size_t> cursor{0};
  std::mutex failure_mutex;
  std::size_t failed_index = replicas;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= replicas) return;
      try {
        runs[i].traj = simulate(params, t_end, replica_seed(base_seed, i), snapshots, options, &runs[i].stats);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, replicas));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      throw SimulationError(std::string(e.what()) + " (replica " + std::to_string(failed_index) + ")",
                            static_cast<long>(failed_index));
    }
  }

  EnsembleResult out;
  out.times = snapshots;
  out.k_min = params.m();
  out.k_max = params.m();
  out.replicas = replicas;
  out.base_seed = base_seed;
  out.options = options;
  for (const auto& r : runs) {
    out.k_max = std::max(out.k_max, r.traj.k_max);
    if (r.stats.short_attachments > 0) ++out.flagged_replicas;
    out.final_arrivals.push_back(r.stats.arrivals.empty() ? 0 : r.stats.arrivals.back());
  }

  // Aggregation runs in replica order so results are independent of scheduling.
  const std::size_t width = static_cast<std::size_t>(out.k_max - out.k_min + 1);
  const std::size_t snaps = snapshots.size();
  const double count = static_cast<double>(replicas);
  out.mean.assign(snaps, std::vector<double>(width, 0.0));
  out.stddev.assign(snaps, std::vector<double>(width, 0.0));
  out.total_mean.assign(snaps, 0.0);
  out.total_stddev.assign(snaps, 0.0);

  auto total_of = [](const std::vector<double>& row) {
    double s = 0.0;
    for (double v : row) s += v;
    return s;
  };

  for (std::size_t s = 0; s < snaps; ++s) {
    for (const auto& r : runs) {
      const auto& row = r.traj.counts[s];
      for (std::size_t j = 0; j < row.size(); ++j) out.mean[s][j] += row[j];
      out.total_mean[s] += total_of(row);
    }
    for (auto& v : out.mean[s]) v /= count;
    out.total_mean[s] /= count;
    if (replicas > 1) {
      for (const auto& r : runs) {
        const auto& row = r.traj.counts[s];
        for (std::size_t j = 0; j < width; ++j) {
          const double v = j < row.size() ? row[j] : 0.0;
          const double d = v - out.mean[s][j];
          out.stddev[s][j] += d * d;
        }
        const double dt = total_of(row) - out.total_mean[s];
        out.total_stddev[s] += dt * dt;
      }
      for (auto& v : out.stddev[s]) v = std::sqrt(v / (count - 1.0));
      out.total_stddev[s] = std::sqrt(out.total_stddev[s] / (count - 1.0));
    }
  }
  return out;
}

}  // namespace abnet
