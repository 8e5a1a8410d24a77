#include "abnet/analysis.hpp"

#include "abnet/error.hpp"
#include "abnet/special.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace abnet {

double relative_difference(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), kRelativeFloor});
}

DegreeTrajectory closed_form_trajectory(const ClosedFormSolution& sol, const std::vector<double>& times, int k_max) {
  DegreeTrajectory traj;
  traj.source = TrajectorySource::closed_form;
  traj.k_min = sol.m();
  traj.k_max = k_max;
  traj.times = times;
  for (double t : times) {
    std::vector<double> row;
    for (int k = sol.m(); k <= k_max; ++k) row.push_back(nk_series(sol, k, t));
    traj.counts.push_back(std::move(row));
  }
  return traj;
}

DegreeTrajectory hypergeometric_trajectory(const ModelParams& params, const std::vector<double>& times, int k_max) {
  DegreeTrajectory traj;
  traj.source = TrajectorySource::hypergeometric;
  traj.k_min = params.m();
  traj.k_max = k_max;
  traj.times = times;
  for (double t : times) {
    std::vector<double> row;
    for (int k = params.m(); k <= k_max; ++k) row.push_back(nk_hypergeometric(params, k, t));
    traj.counts.push_back(std::move(row));
  }
  return traj;
}

DegreeTrajectory krapivsky_redner_trajectory(const std::vector<double>& times, int k_max) {
  DegreeTrajectory traj;
  traj.source = TrajectorySource::krapivsky_redner;
  traj.k_min = 1;
  traj.k_max = k_max;
  traj.times = times;
  for (double t : times) {
    std::vector<double> row;
    for (int k = 1; k <= k_max; ++k) row.push_back(nk_krapivsky_redner(k, t));
    traj.counts.push_back(std::move(row));
  }
  return traj;
}

DegreeTrajectory mean_trajectory(const EnsembleResult& result) {
  DegreeTrajectory traj;
  traj.source = TrajectorySource::simulation;
  traj.k_min = result.k_min;
  traj.k_max = result.k_max;
  traj.times = result.times;
  traj.counts = result.mean;
  return traj;
}

const ComparisonEntry* ComparisonReport::find(int k, double t) const {
  for (const auto& e : entries) {
    if (e.k == k && e.t == t) return &e;
  }
  return nullptr;
}

namespace {

void summarize(ComparisonReport& report) {
  double rel_sum = 0.0;
  for (const auto& e : report.entries) {
    report.max_abs = std::max(report.max_abs, e.abs_diff);
    if (e.z) report.max_abs_z = std::max(report.max_abs_z, std::abs(*e.z));
    if (!e.significant) continue;
    ++report.significant;
    report.max_rel = std::max(report.max_rel, e.rel_diff);
    rel_sum += e.rel_diff;
  }
  report.mean_rel = report.significant > 0 ? rel_sum / static_cast<double>(report.significant) : 0.0;
  report.pass = report.max_rel <= report.tol;
}

}  // namespace

ComparisonReport compare(const DegreeTrajectory& a, const DegreeTrajectory& b, double tol) {
  ComparisonReport report;
  report.source_a = to_string(a.source);
  report.source_b = to_string(b.source);
  report.tol = tol;

  const int k_lo = std::max(a.k_min, b.k_min);
  const int k_hi = std::min(a.k_max, b.k_max);
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    const auto it = std::find(b.times.begin(), b.times.end(), a.times[i]);
    if (it == b.times.end()) continue;
    const auto j = static_cast<std::size_t>(it - b.times.begin());
    for (int k = k_lo; k <= k_hi; ++k) {
      ComparisonEntry e;
      e.k = k;
      e.t = a.times[i];
      e.a = a.at(i, k);
      e.b = b.at(j, k);
      e.abs_diff = std::abs(e.a - e.b);
      e.rel_diff = relative_difference(e.a, e.b);
      e.significant = std::max(std::abs(e.a), std::abs(e.b)) >= kSignificanceFloor;
      report.entries.push_back(e);
    }
  }
  if (report.entries.empty()) throw InputError("compare: trajectories share no (k, t) entries");
  summarize(report);
  return report;
}

ComparisonReport compare_ensemble(const EnsembleResult& ensemble, const DegreeTrajectory& reference, double tol,
                                  double min_reference) {
  ComparisonReport report;
  report.source_a = "simulation";
  report.source_b = to_string(reference.source);
  report.tol = tol;

  const int k_lo = std::max(ensemble.k_min, reference.k_min);
  const int k_hi = std::min(ensemble.k_max, reference.k_max);
  for (std::size_t i = 0; i < ensemble.times.size(); ++i) {
    const auto it = std::find(reference.times.begin(), reference.times.end(), ensemble.times[i]);
    if (it == reference.times.end()) continue;
    const auto j = static_cast<std::size_t>(it - reference.times.begin());
    for (int k = k_lo; k <= k_hi; ++k) {
      ComparisonEntry e;
      e.k = k;
      e.t = ensemble.times[i];
      e.a = ensemble.mean_at(i, k);
      e.b = reference.at(j, k);
      e.abs_diff = std::abs(e.a - e.b);
      e.rel_diff = relative_difference(e.a, e.b);
      const double se = ensemble.stderr_at(i, k);
      if (se > 0.0) {
        e.z = (e.a - e.b) / se;
      } else {
        e.z = e.a == e.b ? 0.0 : std::copysign(INFINITY, e.a - e.b);
      }
      e.significant = std::abs(e.b) >= min_reference;
      report.entries.push_back(e);
    }
  }
  if (report.entries.empty()) throw InputError("compare: ensemble and reference share no (k, t) entries");
  summarize(report);
  report.notes.push_back("relative differences of ensemble means measure the mean-field gap; z-scores use "
                         "stddev/sqrt(replicas)");
  return report;
}

ConservationRecord conservation_check(const ClosedFormSolution& sol, double t, int k_max) {
  const ModelParams& p = sol.params();
  ConservationRecord r;
  r.t = t;
  r.k_max = k_max;
  r.nodes_total = n_of_t(p, t);
  r.edges_total = d_of_t(p, t);
  double nodes = 0.0;
  double edges = 0.0;
  for (int k = p.m(); k <= k_max; ++k) {
    const double nk = nk_series(sol, k, t);
    nodes += nk;
    edges += k * nk;
  }
  r.node_defect = r.nodes_total - nodes;
  r.edge_defect = r.edges_total - edges;
  const double kk = static_cast<double>(k_max);
  r.edge_tail_bound = (p.m() + 1.0) * r.edges_total / kk;
  r.node_tail_bound = (p.m() + 1.0) * r.edges_total / (2.0 * kk * kk);
  return r;
}

std::vector<double> log_grid(double t_min, double t_max, std::size_t n) {
  if (!(t_min > 0.0) || !(t_max > t_min) || n < 2) throw InputError("log_grid: need 0 < t_min < t_max and n >= 2");
  std::vector<double> grid;
  const double a = std::log(t_min);
  const double b = std::log(t_max);
  for (std::size_t i = 0; i < n; ++i) {
    grid.push_back(i + 1 == n ? t_max : std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1)));
  }
  grid.front() = t_min;
  return grid;
}

DecayFit decay_fit(const ClosedFormSolution& sol, int k, const std::vector<double>& t_grid) {
  const ModelParams& p = sol.params();
  if (t_grid.size() < 8) throw InputError("decay_fit: need at least 8 grid points");
  const auto [lo, hi] = std::minmax_element(t_grid.begin(), t_grid.end());
  if (!(*lo > 0.0) || *hi / *lo < 100.0) throw InputError("decay_fit: grid must span at least two decades of t > 0");
  if (g(p, *lo) < 10.0) throw InputError("decay_fit: G(t) must be >= 10 across the grid");
  if (sol.scaled_constant(p.m()).is_zero()) {
    throw InputError("decay_fit: leading constant vanishes; dominant decay order is next nonzero i");
  }

  const double lead = sol.leading_coeff(k).to_double();
  std::vector<double> xs;
  std::vector<double> ys;
  for (double t : t_grid) {
    const double residual = std::abs(nk_series(sol, k, t) - lead * d_of_t(p, t));
    if (residual <= 0.0) throw InputError("decay_fit: residual vanished at t = " + std::to_string(t));
    xs.push_back(std::log(t));
    ys.push_back(std::log(residual));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }

  DecayFit fit;
  fit.k = k;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.expected_slope = -0.5 * p.m();
  fit.t_min = *lo;
  fit.t_max = *hi;
  fit.points = t_grid.size();
  return fit;
}

IdentityProbe identity_probe(int m, double lambda, double t, int j_max, double tolerance) {
  if (m < 1) throw InputError("identity_probe: m must be >= 1");
  if (!(lambda > 0.0)) throw InputError("identity_probe: lambda must be positive");
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("identity_probe: t must be finite and positive");
  if (j_max < 1) throw InputError("identity_probe: j_max must be >= 1");

  IdentityProbe probe;
  probe.m = m;
  probe.lambda = lambda;
  probe.t = t;
  probe.j_max = j_max;
  probe.tolerance = tolerance;

  const ExactRational coeff = (factorial(m - 1) - ExactRational(m)) / (ExactRational(m + 2) * factorial(m));
  probe.lhs = std::pow(1.0 + lambda * t, 0.5 * m) * coeff.to_double();

  const double x = 1.0 / std::sqrt(lambda * t + 1.0);
  double sum = 0.0;
  for (int j = 0; j <= j_max; ++j) {
    const double f = hyp2f1_terminating(m + 2, -j, m + 3, x);
    // Gamma(j+m)/Gamma(j+1), tracked in log space once it leaves double range.
    const double ratio = pochhammer(j + 1, m - 1).to_double();
    double term;
    if (std::isfinite(ratio)) {
      term = ratio * f;
    } else {
      const double log_mag = std::lgamma(j + m) - std::lgamma(j + 1.0) + std::log(std::abs(f));
      term = std::copysign(std::exp(log_mag), f);
    }
    sum += term;
    probe.terms.push_back(term);
    probe.partial_sums.push_back(sum);
  }

  const double scale = std::max(1.0, std::abs(probe.lhs));
  std::optional<int> settled;
  for (int J = j_max; J >= 0; --J) {
    if (std::abs(probe.partial_sums[static_cast<std::size_t>(J)] - probe.lhs) > tolerance * scale) break;
    settled = J;
  }
  probe.converged = settled.has_value() && *settled < j_max;
  if (probe.converged) probe.converged_at = settled;

  probe.limit_estimate = probe.partial_sums.back();
  probe.gap = probe.limit_estimate - probe.lhs;
  const double last_step = std::abs(probe.terms.back());
  probe.cauchy_settled = last_step <= tolerance * std::max(1.0, std::abs(probe.limit_estimate));
  return probe;
}

PoissonFit poisson_goodness_of_fit(const std::vector<std::int64_t>& counts, double mean) {
  if (counts.empty()) throw InputError("poisson_goodness_of_fit: no observations");
  if (!(mean > 0.0)) throw InputError("poisson_goodness_of_fit: mean must be positive");
  const boost::math::poisson_distribution<double> dist(mean);
  const double n = static_cast<double>(counts.size());

  std::map<std::int64_t, double> observed;
  std::int64_t top = 0;
  for (auto c : counts) {
    if (c < 0) throw InputError("poisson_goodness_of_fit: negative count");
    observed[c] += 1.0;
    top = std::max(top, c);
  }

  // Bins [lo, hi]; the last one is open-ended.
  struct Bin {
    double expected = 0.0;
    double observed = 0.0;
  };
  std::vector<Bin> bins;
  Bin current;
  for (std::int64_t v = 0; v <= top; ++v) {
    current.expected += n * boost::math::pdf(dist, static_cast<double>(v));
    const auto it = observed.find(v);
    if (it != observed.end()) current.observed += it->second;
    if (current.expected >= 5.0) {
      bins.push_back(current);
      current = {};
    }
  }
  // Everything above `top` has no observations; fold the upper tail in.
  current.expected += n * boost::math::cdf(boost::math::complement(dist, static_cast<double>(top)));
  if (bins.empty() || current.expected >= 5.0) {
    bins.push_back(current);
  } else {
    bins.back().expected += current.expected;
    bins.back().observed += current.observed;
  }

  PoissonFit fit;
  fit.bins = bins.size();
  for (const auto& b : bins) fit.statistic += (b.observed - b.expected) * (b.observed - b.expected) / b.expected;
  fit.degrees_of_freedom = static_cast<int>(bins.size()) - 1;
  if (fit.degrees_of_freedom < 1) {
    fit.p_value = 1.0;
    return fit;
  }
  const boost::math::chi_squared_distribution<double> chi(fit.degrees_of_freedom);
  fit.p_value = boost::math::cdf(boost::math::complement(chi, fit.statistic));
  return fit;
}

TruncationStudy truncation_study(const ModelParams& params, OdeConfig cfg, const std::vector<int>& k_max_values,
                                 int k_report) {
  if (k_max_values.size() < 2) throw InputError("truncation_study: need at least two k_max values");
  TruncationStudy study;
  study.k_max_values = k_max_values;
  study.k_report = k_report;
  std::vector<DegreeTrajectory> runs;
  for (int k_max : k_max_values) {
    if (k_max < k_report) throw InputError("truncation_study: every k_max must be >= k_report");
    cfg.k_max = k_max;
    runs.push_back(integrate(params, cfg));
  }
  for (std::size_t r = 1; r < runs.size(); ++r) {
    double change = 0.0;
    for (std::size_t s = 0; s < runs[r].times.size(); ++s) {
      for (int k = params.m(); k <= k_report; ++k) {
        change = std::max(change, std::abs(runs[r].at(s, k) - runs[r - 1].at(s, k)));
      }
    }
    study.max_change.push_back(change);
  }
  return study;
}

}  // namespace abnet
