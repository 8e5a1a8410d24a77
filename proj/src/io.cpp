#include "abnet/io.hpp"

#include "abnet/error.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace abnet {

const char* version() { return ABNET_VERSION; }

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

Json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

[[noreturn]] void field_error(const std::string& where, const std::string& key, const std::string& what) {
  throw InputError(where + "/" + key + ": " + what);
}

double read_positive(const Json& doc, const std::string& where, const std::string& key) {
  if (!doc.contains(key)) field_error(where, key, "missing required field");
  const Json& v = doc.at(key);
  if (!v.is_number()) field_error(where, key, "expected a number");
  const double x = v.get<double>();
  if (!(x > 0.0) || !std::isfinite(x)) field_error(where, key, "must be a finite positive number");
  return x;
}

int read_m(const Json& doc, const std::string& where) {
  if (!doc.contains("m")) field_error(where, "m", "missing required field");
  const Json& v = doc.at("m");
  if (!v.is_number_integer()) field_error(where, "m", "expected an integer");
  const auto m = v.get<long long>();
  if (m < 1 || m > 100000) field_error(where, "m", "must be an integer in [1, 100000]");
  return static_cast<int>(m);
}

}  // namespace

Json to_json(const ModelParams& params) {
  Json j;
  j["lambda"] = params.lambda();
  j["m"] = params.m();
  j["d0"] = params.d0();
  j["n0"] = params.n0();
  Json counts = Json::object();
  for (const auto& [k, c] : params.initial_counts()) counts[std::to_string(k)] = c;
  j["initial_counts"] = counts;
  j["mode"] = to_string(params.mode());
  j["preset"] = to_string(params.preset());
  return j;
}

ModelParams params_from_json(const Json& doc, const std::string& where) {
  if (!doc.is_object()) throw InputError(where + ": expected an object");

  Preset preset = Preset::custom;
  if (doc.contains("preset")) {
    if (!doc.at("preset").is_string()) field_error(where, "preset", "expected a string");
    try {
      preset = preset_from_string(doc.at("preset").get<std::string>());
    } catch (const InputError& e) {
      field_error(where, "preset", e.what());
    }
  }
  const bool explicit_fields = doc.contains("d0") || doc.contains("n0") || doc.contains("initial_counts");
  if (!explicit_fields && preset == Preset::krapivsky_redner) return ModelParams::krapivsky_redner();
  if (!explicit_fields && preset == Preset::standard) {
    const double lambda = doc.contains("lambda") ? read_positive(doc, where, "lambda") : 1.0;
    return ModelParams::standard(read_m(doc, where), lambda);
  }

  ValidationMode mode = ValidationMode::strict;
  if (doc.contains("mode")) {
    if (!doc.at("mode").is_string()) field_error(where, "mode", "expected a string");
    try {
      mode = validation_mode_from_string(doc.at("mode").get<std::string>());
    } catch (const InputError& e) {
      field_error(where, "mode", e.what());
    }
  }

  const double lambda = read_positive(doc, where, "lambda");
  const int m = read_m(doc, where);
  const double d0 = read_positive(doc, where, "d0");
  const double n0 = read_positive(doc, where, "n0");

  std::map<int, double> counts;
  if (!doc.contains("initial_counts")) field_error(where, "initial_counts", "missing required field");
  const Json& ic = doc.at("initial_counts");
  if (!ic.is_object()) field_error(where, "initial_counts", "expected an object of degree -> count");
  for (const auto& [key, value] : ic.items()) {
    const std::string path = "initial_counts/" + key;
    std::size_t pos = 0;
    long degree = 0;
    try {
      degree = std::stol(key, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != key.size() || key.empty()) field_error(where, path, "degree keys must be integers");
    if (!value.is_number()) field_error(where, path, "expected a number");
    counts[static_cast<int>(degree)] = value.get<double>();
  }

  try {
    return ModelParams::create(lambda, m, d0, n0, std::move(counts), mode, preset);
  } catch (const InputError& e) {
    throw InputError((where.empty() ? std::string("params") : where) + ": " + e.what());
  }
}

Json to_json(const ExactRational& value) {
  Json j;
  j["decimal"] = value.to_decimal_string(30);
  j["numerator"] = value.numerator_string();
  j["denominator"] = value.denominator_string();
  return j;
}

Json to_json(const DegreeTrajectory& traj) {
  Json j;
  j["source"] = to_string(traj.source);
  j["k_min"] = traj.k_min;
  j["k_max"] = traj.k_max;
  j["times"] = traj.times;
  Json counts = Json::array();
  for (const auto& row : traj.counts) {
    Json r = Json::array();
    for (double v : row) r.push_back(number_or_string(v));
    counts.push_back(r);
  }
  j["counts"] = counts;
  if (!traj.leaked.empty()) j["leaked"] = traj.leaked;
  j["warnings"] = traj.warnings;
  return j;
}

Json to_json(const EnsembleResult& result) {
  Json j;
  j["replicas"] = result.replicas;
  j["base_seed"] = result.base_seed;
  j["sampling"] = to_string(result.options.sampling);
  j["k_min"] = result.k_min;
  j["k_max"] = result.k_max;
  j["times"] = result.times;
  j["mean"] = result.mean;
  j["stddev"] = result.stddev;
  j["total_mean"] = result.total_mean;
  j["total_stddev"] = result.total_stddev;
  j["flagged_replicas"] = result.flagged_replicas;
  return j;
}

Json to_json(const ComparisonReport& report) {
  Json j;
  j["source_a"] = report.source_a;
  j["source_b"] = report.source_b;
  j["tol"] = report.tol;
  j["pass"] = report.pass;
  j["report_only"] = report.report_only;
  j["status"] = report.report_only ? "reported" : (report.pass ? "pass" : "fail");
  j["max_abs"] = report.max_abs;
  j["max_rel"] = report.max_rel;
  j["mean_rel"] = report.mean_rel;
  j["significant_entries"] = report.significant;
  bool any_z = false;
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json r;
    r["k"] = e.k;
    r["t"] = e.t;
    r["a"] = number_or_string(e.a);
    r["b"] = number_or_string(e.b);
    r["abs_diff"] = number_or_string(e.abs_diff);
    r["rel_diff"] = number_or_string(e.rel_diff);
    if (e.z) {
      r["z"] = number_or_string(*e.z);
      any_z = true;
    }
    r["significant"] = e.significant;
    entries.push_back(r);
  }
  if (any_z) j["max_abs_z"] = number_or_string(report.max_abs_z);
  j["notes"] = report.notes;
  j["entries"] = entries;
  return j;
}

Json to_json(const ConservationRecord& r) {
  Json j;
  j["t"] = r.t;
  j["k_max"] = r.k_max;
  j["nodes_total"] = r.nodes_total;
  j["edges_total"] = r.edges_total;
  j["node_defect"] = r.node_defect;
  j["edge_defect"] = r.edge_defect;
  j["node_tail_bound"] = r.node_tail_bound;
  j["edge_tail_bound"] = r.edge_tail_bound;
  return j;
}

Json to_json(const DecayFit& fit) {
  Json j;
  j["k"] = fit.k;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["r_squared"] = fit.r_squared;
  j["expected_slope"] = fit.expected_slope;
  j["t_min"] = fit.t_min;
  j["t_max"] = fit.t_max;
  j["points"] = fit.points;
  return j;
}

Json to_json(const IdentityProbe& p) {
  Json j;
  j["m"] = p.m;
  j["lambda"] = p.lambda;
  j["t"] = p.t;
  j["j_max"] = p.j_max;
  j["lhs"] = p.lhs;
  j["tolerance"] = p.tolerance;
  j["converged"] = p.converged;
  j["converged_at"] = p.converged_at ? Json(*p.converged_at) : Json(nullptr);
  j["cauchy_settled"] = p.cauchy_settled;
  j["limit_estimate"] = p.limit_estimate;
  j["gap"] = p.gap;
  j["terms"] = p.terms;
  j["partial_sums"] = p.partial_sums;
  return j;
}

void write_trajectory_csv(std::ostream& os, const DegreeTrajectory& traj, const ModelParams& params) {
  const bool leak = !traj.leaked.empty();
  os << "source,k,t,N_k,p_k" << (leak ? ",leaked" : "") << "\n";
  const std::string src = to_string(traj.source);
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    const double t = traj.times[s];
    const double total = n_of_t(params, t);
    for (int k = traj.k_min; k <= traj.k_max; ++k) {
      const double v = traj.at(s, k);
      os << src << ',' << k << ',' << format_double(t) << ',' << format_double(v) << ',' << format_double(v / total);
      if (leak) os << ',' << format_double(traj.leaked[s]);
      os << '\n';
    }
  }
}

void write_ensemble_csv(std::ostream& os, const EnsembleResult& result) {
  os << "t,k,mean,stddev,stderr\n";
  for (std::size_t s = 0; s < result.times.size(); ++s) {
    for (int k = result.k_min; k <= result.k_max; ++k) {
      os << format_double(result.times[s]) << ',' << k << ',' << format_double(result.mean_at(s, k)) << ','
         << format_double(result.stddev_at(s, k)) << ',' << format_double(result.stderr_at(s, k)) << '\n';
    }
  }
}

void write_comparison_csv(std::ostream& os, const ComparisonReport& report) {
  const bool z = !report.entries.empty() && report.entries.front().z.has_value();
  os << "k,t," << report.source_a << ',' << report.source_b << ",abs_diff,rel_diff" << (z ? ",z" : "") << '\n';
  for (const auto& e : report.entries) {
    os << e.k << ',' << format_double(e.t) << ',' << format_double(e.a) << ',' << format_double(e.b) << ','
       << format_double(e.abs_diff) << ',' << format_double(e.rel_diff);
    if (z) os << ',' << format_double(e.z.value_or(0.0));
    os << '\n';
  }
}

void write_identity_csv(std::ostream& os, const IdentityProbe& probe) {
  os << "j,term,partial_sum,lhs\n";
  for (std::size_t j = 0; j < probe.terms.size(); ++j) {
    os << j << ',' << format_double(probe.terms[j]) << ',' << format_double(probe.partial_sums[j]) << ','
       << format_double(probe.lhs) << '\n';
  }
}

std::string render_text(const ComparisonReport& report, std::size_t max_rows) {
  std::ostringstream os;
  os << report.source_a << " vs " << report.source_b << ": "
     << (report.report_only ? "REPORTED" : (report.pass ? "PASS" : "FAIL")) << "  max_rel=" << std::setprecision(6)
     << report.max_rel << "  mean_rel=" << report.mean_rel << "  tol=" << report.tol
     << "  entries=" << report.entries.size() << " (significant " << report.significant << ")\n";
  os << std::setw(6) << "k" << std::setw(14) << "t" << std::setw(24) << report.source_a << std::setw(24)
     << report.source_b << std::setw(14) << "rel_diff" << '\n';
  std::size_t shown = 0;
  for (const auto& e : report.entries) {
    if (shown++ >= max_rows) {
      os << "  ... " << report.entries.size() - max_rows << " more rows\n";
      break;
    }
    os << std::setw(6) << e.k << std::setw(14) << std::setprecision(6) << e.t << std::setw(24)
       << std::setprecision(15) << e.a << std::setw(24) << e.b << std::setw(14) << std::setprecision(4) << e.rel_diff
       << '\n';
  }
  for (const auto& n : report.notes) os << "note: " << n << '\n';
  return os.str();
}

}  // namespace abnet
