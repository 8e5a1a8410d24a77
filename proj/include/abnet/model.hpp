#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace abnet {

enum class ValidationMode { strict, lenient };

enum class Preset { standard, krapivsky_redner, custom };

std::string to_string(ValidationMode mode);
std::string to_string(Preset preset);
ValidationMode validation_mode_from_string(const std::string& s);
Preset preset_from_string(const std::string& s);

/// How well the initial degree counts agree with N0 and D0.
struct ConsistencyReport {
  double node_sum = 0.0;  // sum_l N_l(0)
  double edge_sum = 0.0;  // sum_l l * N_l(0)
  bool nodes_match = true;
  bool edges_match = true;
  std::vector<std::string> warnings;

  bool consistent() const { return nodes_match && edges_match; }
};

/// Parameterization of one growth model: arrival rate, edges per arrival,
/// initial double-edge count D0, initial node count N0 and the initial
/// degree counts N_l(0). Immutable after construction.
///
/// D0 and N0 are stored independently of the degree counts. In strict mode
/// the three must agree exactly; lenient mode keeps inconsistent sets and
/// records the mismatch in consistency().warnings.
class ModelParams {
 public:
  static ModelParams create(double lambda, int m, double d0, double n0,
                            std::map<int, double> initial_counts,
                            ValidationMode mode = ValidationMode::strict,
                            Preset preset = Preset::custom);

  /// N0 = m+1, D0 = 2m, N_k(0) = delta_{k,m}. Only loadable in lenient mode.
  static ModelParams standard(int m, double lambda = 1.0);
  /// m = 1, lambda = 1, N0 = D0 = 2, N_1(0) = 2.
  static ModelParams krapivsky_redner();

  double lambda() const noexcept { return lambda_; }
  int m() const noexcept { return m_; }
  double d0() const noexcept { return d0_; }
  double n0() const noexcept { return n0_; }
  const std::map<int, double>& initial_counts() const noexcept { return initial_counts_; }
  ValidationMode mode() const noexcept { return mode_; }
  Preset preset() const noexcept { return preset_; }
  const ConsistencyReport& consistency() const noexcept { return consistency_; }

  /// N_k(0); zero for degrees absent from the map.
  double initial_count(int k) const;
  /// Largest degree with a nonzero initial count (m when all are zero).
  int max_initial_degree() const;

 private:
  ModelParams() = default;

  double lambda_ = 1.0;
  int m_ = 1;
  double d0_ = 2.0;
  double n0_ = 2.0;
  std::map<int, double> initial_counts_;
  ValidationMode mode_ = ValidationMode::strict;
  Preset preset_ = Preset::custom;
  ConsistencyReport consistency_;
};

/// D(t) = 2 lambda m t + D0, twice the edge count.
double d_of_t(const ModelParams& params, double t);
/// N(t) = lambda t + N0.
double n_of_t(const ModelParams& params, double t);
/// H_k(t) = D(t)^{k/2}, the integrating factor for degree class k.
double h(const ModelParams& params, double k, double t);
/// G(t) = H_1(t)/H_1(0) = sqrt(2 lambda m t / D0 + 1).
double g(const ModelParams& params, double t);
/// G(t) - 1 without cancellation for small t.
double g_minus_one(const ModelParams& params, double t);

}  // namespace abnet
