#pragma once

#include "abnet/model.hpp"
#include "abnet/rational.hpp"
#include "abnet/special.hpp"

#include <vector>

namespace abnet {

/// Precomputed t-independent pieces of the explicit solution
///
///   N_k(t) = (m+1) Gamma(k) / Gamma(k+3) * H_2(t) + sum_{i=m}^{k} C(k-1, i-1) C_i / H_i(t).
///
/// The constants of integration are kept in scaled form K_i = C_i / H_i(0)
/// (exact rationals), so that C_i / H_i(t) = K_i * G(t)^{-i} never overflows.
class ClosedFormSolution {
 public:
  ClosedFormSolution(ModelParams params, int k_max);

  /// Grows the precomputed range, reusing constants already computed.
  void extend(int k_max);

  const ModelParams& params() const noexcept { return params_; }
  int m() const noexcept { return params_.m(); }
  int k_max() const noexcept { return k_max_; }

  /// K_i for m <= i <= k_max.
  const ExactRational& scaled_constant(int i) const;
  /// (m+1) / (k (k+1) (k+2)) for m <= k <= k_max.
  const ExactRational& leading_coeff(int k) const;
  /// C_i = K_i * D0^{i/2}. Overflows to inf for very large i.
  double integration_constant(int i) const;
  /// D0 as an exact rational.
  const ExactRational& exact_d0() const noexcept { return d0_; }

  const std::vector<ExactRational>& scaled_constants() const noexcept { return scaled_; }
  const std::vector<ExactRational>& leading_coeffs() const noexcept { return leading_; }

 private:
  void check_index(int k, const char* what) const;

  ModelParams params_;
  int k_max_;
  ExactRational d0_;
  std::vector<ExactRational> initial_;  // N_l(0) for l = m..k_max
  std::vector<ExactRational> scaled_;   // K_i
  std::vector<ExactRational> leading_;
};

/// Computes K_m..K_{k_max}. Throws InputError when k_max < m.
ClosedFormSolution build_constants(const ModelParams& params, int k_max);

/// N_k(t) from the series solution.
///
/// The expanded series alternates and loses every significant digit in
/// double precision once k reaches the twenties, so it is evaluated through
/// the equivalent positive form obtained by summing the binomial inversion
/// inside K_i and the Gamma part as an incomplete beta integral:
///
///   N_k(t) = D(t) (m+1)/(k(k+1)(k+2)) sum_{j=0}^{m+1} C(k+2, j) x^j y^{k+2-j}
///            + sum_l N_l(0) C(k-1, l-1) x^l y^{k-l},      x = 1/G(t), y = 1 - x.
///
/// Every term is non-negative. Throws InputError unless m <= k <= k_max.
double nk_series(const ClosedFormSolution& sol, int k, double t);

/// The expanded series at t = 0, in exact arithmetic: must equal N_k(0).
ExactRational nk_series_at_origin(const ClosedFormSolution& sol, int k);

/// The expanded series term by term, in 100-digit arithmetic.
HighPrecision nk_series_expanded(const ClosedFormSolution& sol, int k, double t);
/// Term-by-term time derivative of the expanded series, in 100-digit arithmetic.
HighPrecision nk_series_expanded_derivative(const ClosedFormSolution& sol, int k, double t);

/// How well the expanded series satisfies the rate equation for N_k.
struct RateResidual {
  double derivative = 0.0;  // d/dt of the series
  double rhs = 0.0;         // rate-equation right-hand side
  double residual = 0.0;    // derivative - rhs
  double scale = 0.0;       // largest magnitude among the contributing terms
  double relative = 0.0;    // |residual| / max(scale, 1e-300)
};
RateResidual rate_equation_residual(const ClosedFormSolution& sol, int k, double t);

/// Pieces of the hypergeometric closed form, evaluated as written.
struct HyperFormInputs {
  double g = 1.0;             // G(t)
  double a_k = 0.0;           // A_k(t)
  double leading_term = 0.0;  // (m+1) Gamma(k) H_2(t) / Gamma(k+3)
  double a_term = 0.0;        // A_k(t) / G(t)^m
  double tail_term = 0.0;     // (G-1)^{k-m} Gamma(k) / (G^k Gamma(k-m+1))
  double value = 0.0;         // leading_term - a_term + tail_term
};

/// The hypergeometric form for the standard initial condition
/// (N_k(0) = delta_{k,m}, D0 = 2m). Implemented verbatim; it does not
/// reproduce the initial condition, which compare() reports.
HyperFormInputs nk_hypergeometric_terms(const ModelParams& params, int k, double t);
double nk_hypergeometric(const ModelParams& params, int k, double t);

/// Special case m = lambda = 1, N_l(0) = 2 delta_{l,1}, D0 = 2:
///   4(t+1)/(k(k+1)(k+2)) + (t+1)^{-1/2} sum_{j<k} Gamma(k)/Gamma(k-j) (-1)^j (2j+4) / (j! (j+3)) (t+1)^{-j/2}
/// evaluated as written in 100-digit arithmetic.
double nk_krapivsky_redner(int k, double t);

/// Hand-derived formulas for N_{m+j}, j = 0, 1, 2, evaluated as written in
/// 100-digit arithmetic. Requires sol.k_max() >= m + j.
double base_case(const ClosedFormSolution& sol, int j, double t);

/// p_k(t) = N_k(t) / N(t) for k = m..k_max.
std::vector<double> degree_distribution(const ClosedFormSolution& sol, double t, int k_max);

/// t -> infinity limit of p_k: 2m(m+1) / (k(k+1)(k+2)).
ExactRational asymptotic_pk(int m, int k);

}  // namespace abnet
