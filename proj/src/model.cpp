#include "abnet/model.hpp"

#include "abnet/error.hpp"

#include <cmath>
#include <sstream>

namespace abnet {

namespace {

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << "time must be finite and non-negative (got " << t << ")";
    throw InputError(os.str());
  }
}

}  // namespace

std::string to_string(ValidationMode mode) { return mode == ValidationMode::strict ? "strict" : "lenient"; }

std::string to_string(Preset preset) {
  switch (preset) {
    case Preset::standard: return "standard";
    case Preset::krapivsky_redner: return "krapivsky_redner";
    case Preset::custom: return "custom";
  }
  return "custom";
}

ValidationMode validation_mode_from_string(const std::string& s) {
  if (s == "strict") return ValidationMode::strict;
  if (s == "lenient") return ValidationMode::lenient;
  throw InputError("unknown validation mode '" + s + "' (expected strict|lenient)");
}

Preset preset_from_string(const std::string& s) {
  if (s == "standard") return Preset::standard;
  if (s == "krapivsky_redner") return Preset::krapivsky_redner;
  if (s == "custom") return Preset::custom;
  throw InputError("unknown preset '" + s + "' (expected standard|krapivsky_redner|custom)");
}

ModelParams ModelParams::create(double lambda, int m, double d0, double n0,
                                std::map<int, double> initial_counts, ValidationMode mode,
                                Preset preset) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("lambda must be a finite positive number");
  if (m < 1) throw InputError("m must be >= 1");
  if (!(d0 > 0.0) || !std::isfinite(d0)) throw InputError("d0 must be a finite positive number");
  if (!(n0 > 0.0) || !std::isfinite(n0)) throw InputError("n0 must be a finite positive number");

  ModelParams p;
  p.lambda_ = lambda;
  p.m_ = m;
  p.d0_ = d0;
  p.n0_ = n0;
  p.mode_ = mode;
  p.preset_ = preset;

  for (const auto& [degree, count] : initial_counts) {
    if (degree < m) {
      throw InputError("initial_counts: degree " + std::to_string(degree) + " is below m = " +
                       std::to_string(m));
    }
    if (!(count >= 0.0) || !std::isfinite(count)) {
      throw InputError("initial_counts: count for degree " + std::to_string(degree) +
                       " must be finite and non-negative");
    }
    if (count > 0.0) p.initial_counts_.emplace(degree, count);
  }

  auto& c = p.consistency_;
  for (const auto& [degree, count] : p.initial_counts_) {
    c.node_sum += count;
    c.edge_sum += degree * count;
  }
  c.nodes_match = c.node_sum == n0;
  c.edges_match = c.edge_sum == d0;
  if (!c.nodes_match) {
    std::ostringstream os;
    os << "sum of initial counts " << c.node_sum << " differs from n0 = " << n0;
    c.warnings.push_back(os.str());
  }
  if (!c.edges_match) {
    std::ostringstream os;
    os << "sum of degree * initial count " << c.edge_sum << " differs from d0 = " << d0;
    c.warnings.push_back(os.str());
  }
  if (mode == ValidationMode::strict && !c.consistent()) {
    std::string msg = "inconsistent parameters in strict mode:";
    for (const auto& w : c.warnings) msg += " " + w + ";";
    throw InputError(msg);
  }
  return p;
}

ModelParams ModelParams::standard(int m, double lambda) {
  return create(lambda, m, 2.0 * m, m + 1.0, {{m, 1.0}}, ValidationMode::lenient, Preset::standard);
}

ModelParams ModelParams::krapivsky_redner() {
  return create(1.0, 1, 2.0, 2.0, {{1, 2.0}}, ValidationMode::strict, Preset::krapivsky_redner);
}

double ModelParams::initial_count(int k) const {
  const auto it = initial_counts_.find(k);
  return it == initial_counts_.end() ? 0.0 : it->second;
}

int ModelParams::max_initial_degree() const {
  return initial_counts_.empty() ? m_ : initial_counts_.rbegin()->first;
}

double d_of_t(const ModelParams& params, double t) {
  check_time(t);
  return 2.0 * params.lambda() * params.m() * t + params.d0();
}

double n_of_t(const ModelParams& params, double t) {
  check_time(t);
  return params.lambda() * t + params.n0();
}

double h(const ModelParams& params, double k, double t) {
  if (k == 0.0) return 1.0;
  const double d = d_of_t(params, t);
  if (k == 2.0) return d;
  return std::pow(d, 0.5 * k);
}

double g(const ModelParams& params, double t) {
  check_time(t);
  return std::sqrt(2.0 * params.lambda() * params.m() * t / params.d0() + 1.0);
}

double g_minus_one(const ModelParams& params, double t) {
  check_time(t);
  const double u = 2.0 * params.lambda() * params.m() * t / params.d0();
  return u / (std::sqrt(u + 1.0) + 1.0);
}

}  // namespace abnet
