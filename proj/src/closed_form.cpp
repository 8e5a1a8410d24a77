#include "abnet/closed_form.hpp"

#include "abnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace abnet {

namespace {

HighPrecision hp_pow(const HighPrecision& base, long n) {
  HighPrecision result = 1;
  HighPrecision b = base;
  while (n > 0) {
    if (n & 1) result *= b;
    b *= b;
    n >>= 1;
  }
  return result;
}

struct HighPrecisionClock {
  HighPrecision d;  // D(t)
  HighPrecision g;  // G(t)
};

HighPrecisionClock hp_clock(const ModelParams& p, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("time must be finite and non-negative");
  const HighPrecision rate = HighPrecision(2) * HighPrecision(p.lambda()) * HighPrecision(p.m());
  const HighPrecision d0(p.d0());
  HighPrecisionClock c;
  c.d = rate * HighPrecision(t) + d0;
  c.g = boost::multiprecision::sqrt(c.d / d0);
  return c;
}

// C(n, j) x^j y^(n-j), with x + y = 1 and both in [0, 1].
double bernstein(long n, long j, double x, double y) {
  if (j < 0 || j > n) return 0.0;
  if (y == 0.0) return j == n ? std::pow(x, static_cast<double>(n)) : 0.0;
  if (x == 0.0) return j == 0 ? std::pow(y, static_cast<double>(n)) : 0.0;
  if (n <= 60) {
    return binomial(n, j).to_double() * std::pow(x, static_cast<double>(j)) *
           std::pow(y, static_cast<double>(n - j));
  }
  const double log_term = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) +
                          j * std::log(x) + (n - j) * std::log(y);
  return std::exp(log_term);
}

void require_k_range(const ClosedFormSolution& sol, int k) {
  if (k < sol.m() || k > sol.k_max()) {
    throw InputError("degree k = " + std::to_string(k) + " outside [" + std::to_string(sol.m()) + ", " +
                     std::to_string(sol.k_max()) + "]");
  }
}

}  // namespace

ClosedFormSolution::ClosedFormSolution(ModelParams params, int k_max)
    : params_(std::move(params)), k_max_(params_.m() - 1), d0_(ExactRational::from_double(params_.d0())) {
  if (k_max < params_.m()) {
    throw InputError("k_max = " + std::to_string(k_max) + " must be >= m = " + std::to_string(params_.m()));
  }
  extend(k_max);
}

void ClosedFormSolution::extend(int k_max) {
  const int m = params_.m();
  const ExactRational m_factorial = factorial(m);
  for (int i = k_max_ + 1; i <= k_max; ++i) {
    initial_.push_back(ExactRational::from_double(params_.initial_count(i)));

    // (-1)^{i-m+1} Gamma(i) D0 / (Gamma(i-m+1) Gamma(m+1) (i+2))
    ExactRational k_i = pochhammer(i - m + 1, m - 1) * d0_ / (m_factorial * ExactRational(i + 2));
    if ((i - m + 1) % 2 != 0) k_i = -k_i;

    // + sum_l C(i-1, l-1) (-1)^{i-l} N_l(0)
    for (int l = m; l <= i; ++l) {
      const ExactRational& n_l = initial_[static_cast<size_t>(l - m)];
      if (n_l.is_zero()) continue;
      ExactRational term = binomial(i - 1, l - 1) * n_l;
      if ((i - l) % 2 != 0) term = -term;
      k_i += term;
    }
    scaled_.push_back(std::move(k_i));
    leading_.emplace_back(m + 1, static_cast<std::int64_t>(i) * (i + 1) * (i + 2));
  }
  k_max_ = std::max(k_max_, k_max);
}

void ClosedFormSolution::check_index(int k, const char* what) const {
  if (k < m() || k > k_max_) {
    throw InputError(std::string(what) + ": index " + std::to_string(k) + " outside [" + std::to_string(m()) +
                     ", " + std::to_string(k_max_) + "]");
  }
}

const ExactRational& ClosedFormSolution::scaled_constant(int i) const {
  check_index(i, "scaled_constant");
  return scaled_[static_cast<size_t>(i - m())];
}

const ExactRational& ClosedFormSolution::leading_coeff(int k) const {
  check_index(k, "leading_coeff");
  return leading_[static_cast<size_t>(k - m())];
}

double ClosedFormSolution::integration_constant(int i) const {
  return scaled_constant(i).to_double() * std::pow(params_.d0(), 0.5 * i);
}

ClosedFormSolution build_constants(const ModelParams& params, int k_max) { return ClosedFormSolution(params, k_max); }

double nk_series(const ClosedFormSolution& sol, int k, double t) {
  require_k_range(sol, k);
  const ModelParams& p = sol.params();
  const int m = p.m();
  const double d = d_of_t(p, t);
  const double gt = g(p, t);
  const double x = 1.0 / gt;
  const double y = g_minus_one(p, t) / gt;

  double beta = 0.0;
  for (int j = 0; j <= m + 1; ++j) beta += bernstein(k + 2, j, x, y);
  const double lead = (m + 1.0) / (static_cast<double>(k) * (k + 1.0) * (k + 2.0));
  double value = d * lead * beta;

  for (const auto& [l, count] : p.initial_counts()) {
    if (l > k) break;
    value += count * x * bernstein(k - 1, l - 1, x, y);
  }
  return value;
}

ExactRational nk_series_at_origin(const ClosedFormSolution& sol, int k) {
  require_k_range(sol, k);
  ExactRational value = sol.leading_coeff(k) * sol.exact_d0();
  for (int i = sol.m(); i <= k; ++i) value += binomial(k - 1, i - 1) * sol.scaled_constant(i);
  return value;
}

HighPrecision nk_series_expanded(const ClosedFormSolution& sol, int k, double t) {
  require_k_range(sol, k);
  const auto clock = hp_clock(sol.params(), t);
  const HighPrecision x = 1 / clock.g;
  HighPrecision value = to_high_precision(sol.leading_coeff(k)) * clock.d;
  HighPrecision x_pow = hp_pow(x, sol.m());
  for (int i = sol.m(); i <= k; ++i) {
    value += to_high_precision(binomial(k - 1, i - 1) * sol.scaled_constant(i)) * x_pow;
    x_pow *= x;
  }
  return value;
}

HighPrecision nk_series_expanded_derivative(const ClosedFormSolution& sol, int k, double t) {
  require_k_range(sol, k);
  const ModelParams& p = sol.params();
  const auto clock = hp_clock(p, t);
  const HighPrecision rate = HighPrecision(p.lambda()) * HighPrecision(p.m());
  const HighPrecision x = 1 / clock.g;
  // d/dt G^{-i} = -i (lambda m / D) G^{-i}
  HighPrecision decay = 0;
  HighPrecision x_pow = hp_pow(x, sol.m());
  for (int i = sol.m(); i <= k; ++i) {
    decay += to_high_precision(binomial(k - 1, i - 1) * sol.scaled_constant(i)) * HighPrecision(i) * x_pow;
    x_pow *= x;
  }
  return to_high_precision(sol.leading_coeff(k)) * 2 * rate - rate * decay / clock.d;
}

RateResidual rate_equation_residual(const ClosedFormSolution& sol, int k, double t) {
  require_k_range(sol, k);
  const ModelParams& p = sol.params();
  const auto clock = hp_clock(p, t);
  const HighPrecision lambda(p.lambda());
  const HighPrecision rate = lambda * HighPrecision(p.m());

  const HighPrecision n_k = nk_series_expanded(sol, k, t);
  const HighPrecision source = k == p.m() ? lambda : HighPrecision(0);
  const HighPrecision inflow =
      k > p.m() ? rate * HighPrecision(k - 1) * nk_series_expanded(sol, k - 1, t) / clock.d : HighPrecision(0);
  const HighPrecision outflow = rate * HighPrecision(k) * n_k / clock.d;
  const HighPrecision rhs = source + inflow - outflow;
  const HighPrecision derivative = nk_series_expanded_derivative(sol, k, t);

  RateResidual r;
  r.derivative = derivative.convert_to<double>();
  r.rhs = rhs.convert_to<double>();
  const HighPrecision diff = derivative - rhs;
  r.residual = diff.convert_to<double>();
  r.scale = std::max({std::abs(r.derivative), source.convert_to<double>(), std::abs(inflow.convert_to<double>()),
                      std::abs(outflow.convert_to<double>())});
  r.relative = std::abs(r.residual) / std::max(r.scale, 1e-300);
  return r;
}

HyperFormInputs nk_hypergeometric_terms(const ModelParams& params, int k, double t) {
  const int m = params.m();
  if (k < m) throw InputError("nk_hypergeometric: k = " + std::to_string(k) + " is below m = " + std::to_string(m));
  const bool standard_shape = params.d0() == 2.0 * m && params.initial_counts().size() == 1 &&
                              params.initial_count(m) == 1.0;
  if (!standard_shape) {
    throw InputError("nk_hypergeometric requires the standard initial condition (N_k(0) = delta_{k,m}, D0 = 2m)");
  }
  const auto clock = hp_clock(params, t);
  const HighPrecision& gt = clock.g;

  // Gamma(k) / (Gamma(m+1) Gamma(k-m+1))
  const ExactRational gamma_ratio = factorial(k - 1) / (factorial(m) * factorial(k - m));
  const HighPrecision hyp = hyp2f1_terminating(m + 2, m - k, m + 3, HighPrecision(1 / gt));
  const HighPrecision a_k = to_high_precision(gamma_ratio / ExactRational(m + 2)) * hyp;

  const HighPrecision lead = to_high_precision(ExactRational(m + 1, static_cast<std::int64_t>(k) * (k + 1) * (k + 2))) * clock.d;
  const HighPrecision a_term = a_k / hp_pow(gt, m);
  const HighPrecision tail =
      hp_pow(gt - 1, k - m) * to_high_precision(factorial(k - 1) / factorial(k - m)) / hp_pow(gt, k);

  HyperFormInputs in;
  in.g = gt.convert_to<double>();
  in.a_k = a_k.convert_to<double>();
  in.leading_term = lead.convert_to<double>();
  in.a_term = a_term.convert_to<double>();
  in.tail_term = tail.convert_to<double>();
  in.value = HighPrecision(lead - a_term + tail).convert_to<double>();
  return in;
}

double nk_hypergeometric(const ModelParams& params, int k, double t) {
  return nk_hypergeometric_terms(params, k, t).value;
}

double nk_krapivsky_redner(int k, double t) {
  if (k < 1) throw InputError("nk_krapivsky_redner: k must be >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("time must be finite and non-negative");
  const HighPrecision s = HighPrecision(t) + 1;
  const HighPrecision r = 1 / boost::multiprecision::sqrt(s);
  HighPrecision sum = 0;
  HighPrecision r_pow = 1;
  for (int j = 0; j < k; ++j) {
    // Gamma(k)/Gamma(k-j) (-1)^j (2j+4) / (j! (j+3))
    ExactRational c = factorial(k - 1) / factorial(k - 1 - j) * ExactRational(2 * j + 4) /
                      (factorial(j) * ExactRational(j + 3));
    if (j % 2 != 0) c = -c;
    sum += to_high_precision(c) * r_pow;
    r_pow *= r;
  }
  const HighPrecision lead = HighPrecision(4) * s / HighPrecision(static_cast<double>(k) * (k + 1) * (k + 2));
  return HighPrecision(lead + r * sum).convert_to<double>();
}

double base_case(const ClosedFormSolution& sol, int j, double t) {
  if (j < 0 || j > 2) throw InputError("base_case: j must be 0, 1 or 2 (got " + std::to_string(j) + ")");
  const int m = sol.m();
  if (sol.k_max() < m + j) throw InputError("base_case: solution must be built with k_max >= m + j");

  const auto clock = hp_clock(sol.params(), t);
  const HighPrecision root_d0 = boost::multiprecision::sqrt(HighPrecision(sol.params().d0()));
  const HighPrecision root_d = boost::multiprecision::sqrt(clock.d);
  const HighPrecision h2 = clock.d;
  auto c = [&](int i) -> HighPrecision { return to_high_precision(sol.scaled_constant(i)) * hp_pow(root_d0, i); };
  auto h = [&](int i) -> HighPrecision { return hp_pow(root_d, i); };
  const HighPrecision mm(m);

  HighPrecision value;
  switch (j) {
    case 0:
      value = h2 / (mm * (mm + 2)) + c(m) / h(m);
      break;
    case 1:
      value = h2 / ((mm + 2) * (mm + 3)) + mm * c(m) / h(m) + c(m + 1) / h(m + 1);
      break;
    default:
      value = (mm + 1) / ((mm + 4) * (mm + 3) * (mm + 2)) * h2 + (mm + 1) * mm * c(m) / (2 * h(m)) +
              (mm + 1) * c(m + 1) / h(m + 1) + c(m + 2) / h(m + 2);
      break;
  }
  return value.convert_to<double>();
}

std::vector<double> degree_distribution(const ClosedFormSolution& sol, double t, int k_max) {
  require_k_range(sol, k_max);
  const double total = n_of_t(sol.params(), t);
  std::vector<double> p;
  p.reserve(static_cast<size_t>(k_max - sol.m() + 1));
  for (int k = sol.m(); k <= k_max; ++k) p.push_back(nk_series(sol, k, t) / total);
  return p;
}

ExactRational asymptotic_pk(int m, int k) {
  if (m < 1) throw InputError("asymptotic_pk: m must be >= 1");
  if (k < m) throw InputError("asymptotic_pk: k = " + std::to_string(k) + " is below m = " + std::to_string(m));
  return ExactRational(2 * static_cast<std::int64_t>(m) * (m + 1),
                       static_cast<std::int64_t>(k) * (k + 1) * (k + 2));
}

}  // namespace abnet
