#include "abnet/analysis.hpp"
#include "abnet/closed_form.hpp"
#include "abnet/error.hpp"
#include "abnet/sim.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace abnet;

namespace {

bool same(const DegreeTrajectory& a, const DegreeTrajectory& b) {
  return a.k_min == b.k_min && a.k_max == b.k_max && a.times == b.times && a.counts == b.counts;
}

}  // namespace

TEST_CASE("t_end = 0 gives the initial counts") {
  const auto traj = simulate(ModelParams::krapivsky_redner(), 0.0, 1, {0.0});
  CHECK(traj.source == TrajectorySource::simulation);
  CHECK(traj.at(0, 1) == 2.0);
  CHECK(traj.at(0, 2) == 0.0);
}

TEST_CASE("same seed, same trajectory") {
  const std::vector<double> snaps{1.0, 5.0, 20.0};
  const auto a = simulate(ModelParams::krapivsky_redner(), 20.0, 42, snaps);
  const auto b = simulate(ModelParams::krapivsky_redner(), 20.0, 42, snaps);
  const auto c = simulate(ModelParams::krapivsky_redner(), 20.0, 43, snaps);
  CHECK(same(a, b));
  CHECK_FALSE(same(a, c));
}

TEST_CASE("bookkeeping invariants on every snapshot") {
  for (auto mode : {SamplingMode::distinct, SamplingMode::with_replacement}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto p = seed % 2 ? ModelParams::krapivsky_redner()
                              : ModelParams::create(1.5, 3, 12, 4, {{3, 4.0}}, ValidationMode::strict);
      std::vector<double> snaps;
      for (int i = 0; i <= 40; ++i) snaps.push_back(i * 0.5);
      SimStats stats;
      SimOptions options{mode, true};
      const auto traj = simulate(p, 20.0, seed, snaps, options, &stats);
      for (size_t s = 0; s < snaps.size(); ++s) {
        double nodes = 0.0, degree = 0.0;
        for (int k = traj.k_min; k <= traj.k_max; ++k) {
          CHECK(traj.at(s, k) >= 0.0);
          nodes += traj.at(s, k);
          degree += k * traj.at(s, k);
        }
        const auto arrivals = static_cast<double>(stats.arrivals[s]);
        CHECK(nodes == p.n0() + arrivals);
        CHECK(degree == p.d0() + 2.0 * p.m() * arrivals);
        // A node gains one edge per arrival with distinct targets, up to m otherwise.
        const double per_arrival = mode == SamplingMode::distinct ? 1.0 : p.m();
        CHECK(stats.max_degree[s] <= p.m() + per_arrival * arrivals + p.max_initial_degree());
      }
    }
  }
}

TEST_CASE("distinct sampling never exceeds the arrival bound per node") {
  // A node gains at most one edge per arrival, so degree <= initial + arrivals.
  SimStats stats;
  const auto p = ModelParams::create(1.0, 2, 6, 3, {{2, 3.0}}, ValidationMode::strict);
  simulate(p, 50.0, 9, {50.0}, {}, &stats);
  CHECK(stats.max_degree[0] <= 2 + stats.arrivals[0]);
}

TEST_CASE("too few nodes") {
  const auto strict_p = ModelParams::create(1.0, 3, 3, 1, {{3, 1.0}}, ValidationMode::strict);
  CHECK_THROWS_AS(simulate(strict_p, 5.0, 1, {5.0}), SimulationError);

  SimStats stats;
  const auto traj = simulate(ModelParams::standard(3), 5.0, 1, {5.0}, {}, &stats);
  if (stats.arrivals[0] > 0) {
    CHECK(stats.short_attachments > 0);
    CHECK_FALSE(traj.warnings.empty());
  }
}

TEST_CASE("input errors") {
  const auto p = ModelParams::krapivsky_redner();
  CHECK_THROWS_AS(simulate(p, -1.0, 1, {}), InputError);
  CHECK_THROWS_AS(simulate(p, 5.0, 1, {3.0, 1.0}), InputError);
  CHECK_THROWS_AS(simulate(p, 5.0, 1, {6.0}), InputError);
  CHECK_THROWS_AS(simulate(ModelParams::create(1, 1, 1.5, 1.5, {{1, 1.5}}), 5.0, 1, {5.0}), InputError);
  CHECK_THROWS_AS(ensemble(p, 5.0, {5.0}, 0, 1), InputError);
  CHECK(sampling_mode_from_string("with_replacement") == SamplingMode::with_replacement);
  CHECK_THROWS_AS(sampling_mode_from_string("x"), InputError);
}

TEST_CASE("replica seeds are distinct") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(replica_seed(42, i));
  CHECK(seen.size() == 10000);
  CHECK(replica_seed(42, 3) == replica_seed(42, 3));
  CHECK(replica_seed(42, 3) != replica_seed(43, 3));
}

TEST_CASE("single replica ensemble equals its trajectory") {
  const auto p = ModelParams::krapivsky_redner();
  const std::vector<double> snaps{2.0, 10.0};
  const auto ens = ensemble(p, 10.0, snaps, 1, 77, {}, 1);
  const auto traj = simulate(p, 10.0, replica_seed(77, 0), snaps);
  for (size_t s = 0; s < snaps.size(); ++s) {
    for (int k = traj.k_min; k <= traj.k_max; ++k) {
      CHECK(ens.mean_at(s, k) == traj.at(s, k));
      CHECK(ens.stddev_at(s, k) == 0.0);
    }
  }
}

TEST_CASE("ensemble independent of thread count") {
  const auto p = ModelParams::krapivsky_redner();
  const std::vector<double> snaps{5.0, 20.0};
  const auto serial = ensemble(p, 20.0, snaps, 300, 5, {}, 1);
  const auto parallel = ensemble(p, 20.0, snaps, 300, 5, {}, 4);
  CHECK(serial.mean == parallel.mean);
  CHECK(serial.stddev == parallel.stddev);
  CHECK(serial.final_arrivals == parallel.final_arrivals);
  CHECK(serial.total_mean == parallel.total_mean);
}

TEST_CASE("ensemble mean tracks the rate equation") {
  const auto p = ModelParams::krapivsky_redner();
  const auto ens = ensemble(p, 20.0, {20.0}, 4000, 2024, {}, 0);
  const auto sol = build_constants(p, 10);
  CHECK(std::abs(ens.total_mean[0] - 22.0) <= 3.0 * ens.total_stddev[0] / std::sqrt(4000.0));
  for (int k = 1; k <= 3; ++k) CHECK(relative_difference(ens.mean_at(0, k), nk_series(sol, k, 20.0)) <= 0.05);

  const auto fit = poisson_goodness_of_fit(ens.final_arrivals, 20.0);
  CHECK(fit.p_value >= 0.01);
}

TEST_CASE("with-replacement sampling also conserves edges") {
  const auto p = ModelParams::krapivsky_redner();
  SimOptions opts;
  opts.sampling = SamplingMode::with_replacement;
  const auto ens = ensemble(p, 10.0, {10.0}, 500, 3, opts, 2);
  CHECK(ens.options.sampling == SamplingMode::with_replacement);
  CHECK(ens.flagged_replicas == 0);
}
