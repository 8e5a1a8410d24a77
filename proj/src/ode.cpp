#include "abnet/ode.hpp"

#include "abnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace abnet {

std::string to_string(TrajectorySource source) {
  switch (source) {
    case TrajectorySource::closed_form: return "closed_form";
    case TrajectorySource::ode: return "ode";
    case TrajectorySource::simulation: return "simulation";
    case TrajectorySource::hypergeometric: return "hypergeometric";
    case TrajectorySource::krapivsky_redner: return "krapivsky_redner";
  }
  return "unknown";
}

double DegreeTrajectory::at(std::size_t snapshot, int k) const {
  if (k < k_min || k > k_max) return 0.0;
  return counts.at(snapshot).at(static_cast<std::size_t>(k - k_min));
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense output coefficients.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSmallStep = 1e-9;
constexpr long kStiffnessRun = 1000;

// State is N_m..N_{k_max} followed by the accumulated leak through k_max.
class RateSystem {
 public:
  RateSystem(const ModelParams& params, int k_max) : params_(params), k_max_(k_max) {}

  std::size_t size() const { return static_cast<std::size_t>(k_max_ - params_.m() + 2); }

  void operator()(double t, const std::vector<double>& y, std::vector<double>& dy) const {
    const int m = params_.m();
    const double rate = params_.lambda() * m / (2.0 * params_.lambda() * m * t + params_.d0());
    const std::size_t n = size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
      const double k = static_cast<double>(m) + static_cast<double>(i);
      double v = -rate * k * y[i];
      if (i == 0) {
        v += params_.lambda();
      } else {
        v += rate * (k - 1.0) * y[i - 1];
      }
      dy[i] = v;
    }
    dy[n] = rate * static_cast<double>(k_max_) * y[n - 1];
  }

 private:
  const ModelParams& params_;
  int k_max_;
};

void validate(const ModelParams& params, const OdeConfig& cfg) {
  if (cfg.k_max < params.m()) throw InputError("ode: k_max must be >= m");
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) throw InputError("ode: tolerances must be positive");
  if (!std::is_sorted(cfg.t_snapshots.begin(), cfg.t_snapshots.end())) {
    throw InputError("ode: snapshots must be sorted");
  }
  for (double t : cfg.t_snapshots) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("ode: snapshots must be finite and non-negative");
  }
  if (params.max_initial_degree() > cfg.k_max) {
    throw InputError("ode: k_max is below the largest initial degree");
  }
}

}  // namespace

std::vector<double> rate_rhs(std::span<const double> state, double t, const ModelParams& params, int k_max) {
  if (k_max < params.m()) throw InputError("rate_rhs: k_max must be >= m");
  const auto expected = static_cast<std::size_t>(k_max - params.m() + 1);
  if (state.size() != expected) {
    throw InputError("rate_rhs: state has " + std::to_string(state.size()) + " entries, expected " +
                     std::to_string(expected));
  }
  if (!(t >= 0.0)) throw InputError("rate_rhs: negative time");
  RateSystem sys(params, k_max);
  std::vector<double> y(state.begin(), state.end());
  y.push_back(0.0);
  std::vector<double> dy(y.size());
  sys(t, y, dy);
  dy.pop_back();
  return dy;
}

DegreeTrajectory integrate(const ModelParams& params, const OdeConfig& cfg, OdeStats* stats) {
  validate(params, cfg);
  const RateSystem f(params, cfg.k_max);
  const std::size_t n = f.size();
  const int m = params.m();

  DegreeTrajectory traj;
  traj.source = TrajectorySource::ode;
  traj.k_min = m;
  traj.k_max = cfg.k_max;

  std::vector<double> y(n, 0.0);
  for (const auto& [k, count] : params.initial_counts()) y[static_cast<std::size_t>(k - m)] = count;

  OdeStats local;
  double t = 0.0;
  std::size_t next = 0;
  auto record = [&](double ts, const std::vector<double>& state) {
    traj.times.push_back(ts);
    traj.counts.emplace_back(state.begin(), state.end() - 1);
    traj.leaked.push_back(state.back());
  };
  while (next < cfg.t_snapshots.size() && cfg.t_snapshots[next] <= 0.0) record(cfg.t_snapshots[next++], y);
  if (next == cfg.t_snapshots.size()) {
    if (stats) *stats = local;
    return traj;
  }
  const double t_end = cfg.t_snapshots.back();

  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y1(n), err(n);
  std::vector<double> r1(n), r2(n), r3(n), r4(n), r5(n);
  auto weighted_rms = [&](const std::vector<double>& v, const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sk = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
      sum += (v[i] / sk) * (v[i] / sk);
    }
    return std::sqrt(sum / static_cast<double>(n));
  };

  f(t, y, k1);
  ++local.rhs_evaluations;

  // Initial step size (Hairer, Norsett & Wanner, II.4).
  double h;
  {
    const double dn0 = weighted_rms(y, y, y);
    const double dn1 = weighted_rms(k1, y, y);
    double h0 = (dn0 < 1e-5 || dn1 < 1e-5) ? 1e-6 : 0.01 * dn0 / dn1;
    h0 = std::min(h0, t_end);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h0 * k1[i];
    f(t + h0, tmp, k2);
    ++local.rhs_evaluations;
    for (std::size_t i = 0; i < n; ++i) err[i] = k2[i] - k1[i];
    const double dn2 = weighted_rms(err, y, y) / h0;
    const double h1 = std::max(dn1, dn2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                                    : std::pow(0.01 / std::max(dn1, dn2), 0.2);
    h = std::min({100.0 * h0, h1, t_end});
  }

  local.smallest_step = std::numeric_limits<double>::infinity();
  long small_run = 0;
  bool stiffness_flagged = false;
  bool last_rejected = false;
  const double eps = std::numeric_limits<double>::epsilon();

  while (t < t_end) {
    if (local.accepted_steps + local.rejected_steps >= cfg.max_steps) {
      throw IntegrationError("ode: step budget exhausted", t);
    }
    if (h < 16.0 * eps * std::max(1.0, std::abs(t))) {
      std::ostringstream os;
      os << "ode: step size underflow at t = " << t;
      throw IntegrationError(os.str(), t);
    }
    if (t + h > t_end) h = t_end - t;

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    f(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    }
    f(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < n; ++i) {
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    }
    f(t + h, tmp, k6);
    for (std::size_t i = 0; i < n; ++i) {
      y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    }
    f(t + h, y1, k7);
    local.rhs_evaluations += 6;

    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      finite = finite && std::isfinite(y1[i]);
    }
    if (!finite) throw IntegrationError("ode: non-finite state", t);
    const double err_norm = weighted_rms(err, y, y1);

    if (err_norm <= 1.0) {
      // Dense output coefficients for [t, t+h].
      for (std::size_t i = 0; i < n; ++i) {
        const double ydiff = y1[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        r1[i] = y[i];
        r2[i] = ydiff;
        r3[i] = bspl;
        r4[i] = ydiff - h * k7[i] - bspl;
        r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      const double t_new = (t + h >= t_end) ? t_end : t + h;
      while (next < cfg.t_snapshots.size() && cfg.t_snapshots[next] <= t_new) {
        const double ts = cfg.t_snapshots[next];
        if (ts == t_new) {
          record(ts, y1);
        } else {
          const double theta = (ts - t) / h;
          const double theta1 = 1.0 - theta;
          for (std::size_t i = 0; i < n; ++i) {
            tmp[i] = r1[i] + theta * (r2[i] + theta1 * (r3[i] + theta * (r4[i] + theta1 * r5[i])));
          }
          record(ts, tmp);
        }
        ++next;
      }

      ++local.accepted_steps;
      local.smallest_step = std::min(local.smallest_step, h);
      local.largest_step = std::max(local.largest_step, h);
      small_run = h < kSmallStep ? small_run + 1 : 0;
      if (small_run >= kStiffnessRun && !stiffness_flagged) {
        std::ostringstream os;
        os << "possible stiffness: step size below " << kSmallStep << " for " << kStiffnessRun
           << " consecutive steps near t = " << t;
        traj.warnings.push_back(os.str());
        stiffness_flagged = true;
      }

      t = t_new;
      y.swap(y1);
      k1.swap(k7);  // first-same-as-last

      double fac = err_norm == 0.0 ? 10.0 : 0.9 * std::pow(err_norm, -0.2);
      fac = std::clamp(fac, 0.2, 10.0);
      if (last_rejected) fac = std::min(fac, 1.0);
      h *= fac;
      last_rejected = false;
    } else {
      ++local.rejected_steps;
      h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
      last_rejected = true;
    }
  }

  if (stats) *stats = local;
  return traj;
}

}  // namespace abnet
