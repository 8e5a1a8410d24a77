// Acceptance suite: one verdict line per criterion.
//
//   abnet_acceptance                 run all criteria
//   abnet_acceptance --criterion N   run only criterion N (repeatable)

#include "abnet/analysis.hpp"
#include "abnet/closed_form.hpp"
#include "abnet/error.hpp"
#include "abnet/io.hpp"
#include "abnet/ode.hpp"
#include "abnet/sim.hpp"
#include "abnet/special.hpp"

#if ABNET_HAVE_CLI
#include "cli.hpp"
#endif

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace abnet;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Verdict()> run;
};

std::string fmt(double x, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// Lenient parameter sets with dyadic counts, so the doubles are exact rationals.
std::vector<ModelParams> random_lenient_sets(int count) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> m_dist(1, 4), offset(0, 8), eighths(0, 64), support(1, 5);
  std::uniform_real_distribution<double> lam(0.2, 4.0);
  std::vector<ModelParams> sets;
  while (static_cast<int>(sets.size()) < count) {
    const int m = m_dist(rng);
    std::map<int, double> counts;
    const int n = support(rng);
    for (int s = 0; s < n; ++s) counts[m + offset(rng)] += eighths(rng) / 8.0;
    const double d0 = 0.5 + eighths(rng) / 4.0;
    const double n0 = 0.5 + eighths(rng) / 8.0;
    sets.push_back(ModelParams::create(lam(rng), m, d0, n0, counts, ValidationMode::lenient));
  }
  return sets;
}

std::vector<ModelParams> both_presets() {
  return {ModelParams::krapivsky_redner(), ModelParams::standard(1), ModelParams::standard(2),
          ModelParams::standard(3)};
}

Verdict criterion_1() {
  auto sets = both_presets();
  for (auto& p : random_lenient_sets(20)) sets.push_back(p);
  std::size_t checked = 0, mismatched = 0;
  for (const auto& p : sets) {
    const auto sol = build_constants(p, 60);
    for (int k = p.m(); k <= 60; ++k) {
      ++checked;
      if (nk_series_at_origin(sol, k) != ExactRational::from_double(p.initial_count(k))) ++mismatched;
    }
  }
  return {mismatched == 0, std::to_string(checked) + " exact comparisons over " + std::to_string(sets.size()) +
                               " parameter sets, " + std::to_string(mismatched) + " mismatches"};
}

Verdict criterion_2() {
  const auto sol = build_constants(ModelParams::krapivsky_redner(), 30);
  double worst = 0.0;
  for (double t : {0.0, 0.5, 1.0, 3.0, 10.0, 100.0, 1e4}) {
    for (int k = 1; k <= 30; ++k) {
      const double a = nk_series(sol, k, t);
      const double b = nk_krapivsky_redner(k, t);
      worst = std::max(worst, relative_difference(a, b));
    }
  }
  return {worst <= 1e-10, "max relative difference " + fmt(worst) + " (tol 1e-10)"};
}

Verdict criterion_3() {
  double worst = 0.0;
  for (const auto& p : both_presets()) {
    const auto sol = build_constants(p, p.m() + 2);
    for (int j = 0; j <= 2; ++j) {
      for (double t : {0.0, 0.1, 1.0, 10.0, 100.0}) {
        worst = std::max(worst, relative_difference(base_case(sol, j, t), nk_series(sol, p.m() + j, t)));
      }
    }
  }
  return {worst <= 1e-12, "max relative difference " + fmt(worst) + " (tol 1e-12)"};
}

Verdict criterion_4() {
  std::vector<ModelParams> cases{ModelParams::krapivsky_redner()};
  for (int m = 1; m <= 3; ++m)
    for (double lambda : {1.0, 2.0}) cases.push_back(ModelParams::standard(m, lambda));
  const std::vector<double> times{0.5, 5.0, 50.0};
  double worst = 0.0;
  std::size_t compared = 0;
  for (const auto& p : cases) {
    OdeConfig cfg;
    cfg.k_max = 400;
    cfg.rel_tol = 1e-10;
    cfg.abs_tol = 1e-18;
    cfg.t_snapshots = times;
    const auto ode = integrate(p, cfg);
    const auto sol = build_constants(p, 40);
    for (std::size_t s = 0; s < times.size(); ++s) {
      for (int k = p.m(); k <= 40; ++k) {
        const double ref = nk_series(sol, k, times[s]);
        if (ref < 1e-8) continue;
        ++compared;
        worst = std::max(worst, relative_difference(ref, ode.at(s, k)));
      }
    }
  }
  return {worst <= 1e-6, std::to_string(cases.size()) + " parameter sets, " + std::to_string(compared) +
                             " entries, max relative difference " + fmt(worst) + " (tol 1e-6)"};
}

Verdict criterion_5() {
  double worst = 0.0;
  for (const auto& p : both_presets()) {
    const auto sol = build_constants(p, 20);
    for (double t : {0.5, 5.0, 50.0}) {
      for (int k = p.m(); k <= 20; ++k) worst = std::max(worst, rate_equation_residual(sol, k, t).relative);
    }
  }
  return {worst <= 1e-9, "max relative residual " + fmt(worst) + " (tol 1e-9)"};
}

Verdict criterion_6() {
  const auto p = ModelParams::krapivsky_redner();
  const std::size_t replicas = 10000;
  const auto ens = ensemble(p, 20.0, {20.0}, replicas, 20240615, {}, 0);
  const double se = ens.total_stddev[0] / std::sqrt(static_cast<double>(replicas));
  const double total_gap = std::abs(ens.total_mean[0] - 22.0);
  const bool a = total_gap <= 3.0 * se;

  const auto sol = build_constants(p, 200);
  bool b = true;
  std::ostringstream gaps;
  for (int k = 1; k <= 200; ++k) {
    const double ref = nk_series(sol, k, 20.0);
    if (ref < 1.0) continue;
    const double gap = relative_difference(ens.mean_at(0, k), ref);
    if (gap > 0.05) b = false;
    gaps << " k=" << k << ":" << fmt(100.0 * gap, 2) << "%";
  }
  return {a && b, "(a) total " + fmt(ens.total_mean[0], 6) + " vs 22, " + fmt(total_gap / se, 3) +
                      " SE; (b) mean-field gaps" + gaps.str()};
}

Verdict criterion_7() {
  const auto sol = build_constants(ModelParams::krapivsky_redner(), 20);
  const auto pk = degree_distribution(sol, 1e6, 20);
  double worst = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const double limit = 4.0 / (static_cast<double>(k) * (k + 1) * (k + 2));
    worst = std::max(worst, std::abs(pk[static_cast<std::size_t>(k - 1)] / limit - 1.0));
  }
  return {worst <= 1e-2, "max |p_k / limit - 1| = " + fmt(worst) + " (tol 1e-2)"};
}

Verdict criterion_8() {
  const auto sol = build_constants(ModelParams::krapivsky_redner(), 2000);
  const int m = 1;
  std::vector<ConservationRecord> recs;
  bool bound_ok = true;
  std::ostringstream os;
  for (int k_max : {500, 1000, 2000}) {
    const auto r = conservation_check(sol, 10.0, k_max);
    const double relative_edge = r.edge_defect / r.edges_total;
    if (!(relative_edge <= 2.0 * (m + 1.0) / k_max)) bound_ok = false;
    os << " k_max=" << k_max << ": edge " << fmt(r.edge_defect) << " node " << fmt(r.node_defect) << ";";
    recs.push_back(r);
  }
  // Doubling k_max should halve the edge defect and quarter the node defect.
  bool scaling_ok = true;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const double edge_shrink = recs[i - 1].edge_defect / recs[i].edge_defect;
    const double node_shrink = recs[i - 1].node_defect / recs[i].node_defect;
    if (!(edge_shrink >= 1.0 && edge_shrink <= 4.0)) scaling_ok = false;
    if (!(node_shrink >= 2.0 && node_shrink <= 8.0)) scaling_ok = false;
    os << " shrink " << recs[i - 1].k_max << "->" << recs[i].k_max << ": edge " << fmt(edge_shrink) << " node "
       << fmt(node_shrink) << ";";
  }
  return {bound_ok && scaling_ok, std::string("bound ") + (bound_ok ? "met" : "violated") + ", scaling " +
                                      (scaling_ok ? "met" : "not observed") + ";" + os.str()};
}

Verdict criterion_9() {
  const auto sol = build_constants(ModelParams::krapivsky_redner(), 10);
  const auto grid = log_grid(1e2, 1e4, 25);
  bool ok = true;
  std::ostringstream os;
  for (int k : {1, 2, 5}) {
    const auto fit = decay_fit(sol, k, grid);
    const bool in_band = fit.slope >= fit.expected_slope - 0.05 && fit.slope <= fit.expected_slope + 0.05;
    ok = ok && in_band;
    os << " k=" << k << ": slope " << fmt(fit.slope, 4) << (in_band ? "" : " (outside band)") << ";";
  }
  return {ok, "band [-0.55, -0.45];" + os.str()};
}

// Term-by-term series with every Pochhammer product accumulated on its own.
ExactRational brute_hyp2f1(long a, long j, long c, const ExactRational& x) {
  ExactRational::integer_type pa(1), pb(1), pc(1), fact(1);
  ExactRational xn(1), sum(0);
  for (long n = 0; n <= j; ++n) {
    sum += ExactRational(pa * pb, pc * fact) * xn;
    pa *= a + n;
    pb *= -j + n;
    pc *= c + n;
    fact *= n + 1;
    xn *= x;
  }
  return sum;
}

Verdict criterion_10() {
  std::size_t checked = 0, bad_series = 0, bad_cv = 0;
  // Other rational x are covered by the unit tests.
  const std::vector<ExactRational> xs{ExactRational(1)};
  for (long a = 1; a <= 30; ++a) {
    for (long c = 1; c <= 30; ++c) {
      for (long j = 0; j <= 25; ++j) {
        for (const auto& x : xs) {
          ++checked;
          const auto value = hyp2f1_terminating(a, -j, c, x);
          if (value != brute_hyp2f1(a, j, c, x)) ++bad_series;
          if (x == ExactRational(1) && value != pochhammer(c - a, j) / pochhammer(c, j)) ++bad_cv;
        }
      }
    }
  }
  return {bad_series == 0 && bad_cv == 0, std::to_string(checked) + " exact evaluations, " +
                                              std::to_string(bad_series) + " series mismatches, " +
                                              std::to_string(bad_cv) + " Chu-Vandermonde mismatches"};
}

Verdict criterion_11() {
  Verdict v;
  std::ostringstream os;
#if ABNET_HAVE_CLI
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "abnet_acceptance";
  fs::create_directories(dir);
  const fs::path config = dir / "hypergeometric.json";
  std::ofstream(config) << R"({
  "params": {"preset": "standard", "m": 1},
  "compare": {"a": "closed_form", "b": "hypergeometric", "k_max": 10, "t": [0, 1, 10]}
})";
  std::ostringstream out, err;
  const int code = cli::run({"compare", "--config", config.string(), "--format", "json"}, out, err);
  const Json doc = Json::parse(out.str());
  double rel_11 = -1.0;
  for (const auto& e : doc["result"]["report"]["entries"]) {
    if (e["k"] == 1 && e["t"] == 0.0) rel_11 = e["rel_diff"].get<double>();
  }
  const bool reported = doc["result"]["report"]["status"] == "reported";
  v.pass = code == 0 && reported && std::abs(rel_11 - 0.25) <= 1e-12;
  os << "compare exit " << code << ", status " << doc["result"]["report"]["status"].get<std::string>()
     << ", rel diff at (k=1, t=0) " << fmt(rel_11, 6) << ";";
#else
  const auto p = ModelParams::standard(1);
  const auto report = compare(closed_form_trajectory(build_constants(p, 10), {0.0}, 10),
                              hypergeometric_trajectory(p, {0.0}, 10), 1e-6);
  const double rel_11 = report.find(1, 0.0)->rel_diff;
  v.pass = std::abs(rel_11 - 0.25) <= 1e-12;
  os << "library compare (CLI not built), rel diff at (k=1, t=0) " << fmt(rel_11, 6) << ";";
#endif
  const auto probe = identity_probe(1, 1.0, 3.0, 50);
  const bool trace = probe.partial_sums.size() == 51 && probe.terms.size() == 51;
  v.pass = v.pass && probe.lhs == 0.0 && trace;
  os << " identity m=1 t=3: lhs " << fmt(probe.lhs) << ", partial sums";
  for (int j : {0, 1, 2, 5, 10, 20, 50}) os << " S" << j << "=" << fmt(probe.partial_sums[static_cast<std::size_t>(j)], 6);
  os << (probe.converged ? ", converged to lhs" : ", not converging to lhs");
  v.detail = os.str();
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "initial condition recovery (exact)", 5.0, criterion_1},
      {2, "two-node seed special case", 1.0, criterion_2},
      {3, "base cases", 1.0, criterion_3},
      {4, "ODE cross-check", 60.0, criterion_4},
      {5, "rate-equation residual", 5.0, criterion_5},
      {6, "stochastic ensemble", 120.0, criterion_6},
      {7, "asymptotic distribution", 1.0, criterion_7},
      {8, "conservation scaling", 10.0, criterion_8},
      {9, "decay exponent", 1.0, criterion_9},
      {10, "terminating 2F1", 1.0, criterion_10},
      {11, "discrepancy reporting", 1.0, criterion_11},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: abnet_acceptance [--criterion N]...\n";
      return 2;
    }
  }

  int failures = 0;
  for (const auto& c : all) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed <= c.budget_s;
    const bool pass = v.pass && in_time;
    if (!pass) ++failures;
    std::cout << "criterion " << c.id << " " << (pass ? "PASS" : "FAIL") << "  " << c.name << ": " << v.detail
              << " [" << fmt(elapsed, 3) << " s of " << fmt(c.budget_s, 3) << " s" << (in_time ? "" : ", over budget")
              << "]\n";
  }
  return failures == 0 ? 0 : 1;
}
