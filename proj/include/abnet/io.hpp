#pragma once

#include "abnet/analysis.hpp"
#include "abnet/closed_form.hpp"
#include "abnet/model.hpp"
#include "abnet/rational.hpp"
#include "abnet/sim.hpp"
#include "abnet/trajectory.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace abnet {

using Json = nlohmann::ordered_json;

/// Version string embedded in every output file.
const char* version();

/// Round-trip exact text for a double ("%.17g").
std::string format_double(double value);

Json to_json(const ModelParams& params);

/// Reads the ModelParams document (lambda, m, d0, n0, initial_counts, mode,
/// preset). A document holding only a preset tag (plus m, and optionally
/// lambda, for "standard") expands to that preset. Errors carry the JSON
/// pointer of the offending field, relative to `where`.
ModelParams params_from_json(const Json& doc, const std::string& where = "");

Json to_json(const ExactRational& value);
Json to_json(const DegreeTrajectory& traj);
Json to_json(const EnsembleResult& result);
Json to_json(const ComparisonReport& report);
Json to_json(const ConservationRecord& record);
Json to_json(const DecayFit& fit);
Json to_json(const IdentityProbe& probe);

/// Columns: source,k,t,N_k,p_k (p_k = N_k / N(t)); leaked mass is appended
/// as a leaked column for ODE trajectories.
void write_trajectory_csv(std::ostream& os, const DegreeTrajectory& traj, const ModelParams& params);
/// Columns: t,k,mean,stddev,stderr.
void write_ensemble_csv(std::ostream& os, const EnsembleResult& result);
/// Columns: k,t,a,b,abs_diff,rel_diff[,z].
void write_comparison_csv(std::ostream& os, const ComparisonReport& report);
/// Columns: j,term,partial_sum,lhs.
void write_identity_csv(std::ostream& os, const IdentityProbe& probe);

/// Human-readable aligned-column summary.
std::string render_text(const ComparisonReport& report, std::size_t max_rows = 40);

}  // namespace abnet
