#include "abnet/special.hpp"

#include "abnet/error.hpp"

#include <string>
#include <vector>

namespace abnet {

namespace {

void check_hyp2f1_args(long a, long b, long c) {
  if (b > 0) {
    throw InputError("hyp2f1_terminating: b must be <= 0 (got " + std::to_string(b) +
                     "); the non-terminating series is not supported");
  }
  if (a < 1) throw InputError("hyp2f1_terminating: a must be >= 1");
  if (c < 1) throw InputError("hyp2f1_terminating: c must be >= 1");
}

// Exact coefficients (a)_n (b)_n / ((c)_n n!) for n = 0..|b|.
std::vector<ExactRational> hyp2f1_coefficients(long a, long b, long c) {
  const long terms = -b;
  std::vector<ExactRational> coeff;
  coeff.reserve(static_cast<size_t>(terms) + 1);
  ExactRational current(1);
  coeff.push_back(current);
  for (long n = 0; n < terms; ++n) {
    current *= ExactRational((a + n) * (b + n), (c + n) * (n + 1));
    coeff.push_back(current);
  }
  return coeff;
}

}  // namespace

ExactRational factorial(long n) {
  if (n < 0) throw InputError("factorial: negative argument " + std::to_string(n));
  ExactRational::integer_type acc(1);
  for (long i = 2; i <= n; ++i) acc *= i;
  return ExactRational(acc, 1);
}

ExactRational binomial(long n, long k) {
  if (n < 0) throw InputError("binomial: negative n " + std::to_string(n));
  if (k < 0 || k > n) return ExactRational(0);
  k = std::min(k, n - k);
  ExactRational::integer_type acc(1);
  for (long i = 1; i <= k; ++i) {
    acc *= (n - k + i);
    acc /= i;  // exact: acc is C(n-k+i, i) after this step
  }
  return ExactRational(acc, 1);
}

ExactRational pochhammer(long a, long n) {
  if (n < 0) throw InputError("pochhammer: negative length " + std::to_string(n));
  ExactRational::integer_type acc(1);
  for (long i = 0; i < n; ++i) {
    acc *= (a + i);
    if (acc == 0) break;
  }
  return ExactRational(acc, 1);
}

ExactRational hyp2f1_terminating(long a, long b, long c, const ExactRational& x) {
  check_hyp2f1_args(a, b, c);
  const auto coeff = hyp2f1_coefficients(a, b, c);
  // Horner from the highest power down.
  ExactRational acc(0);
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double hyp2f1_terminating(long a, long b, long c, double x) {
  check_hyp2f1_args(a, b, c);
  // 100-digit Horner first; fall back to exact rationals when the
  // alternating terms cancel more digits than that can absorb.
  const auto coeff = hyp2f1_coefficients(a, b, c);
  const HighPrecision hx(x);
  HighPrecision acc = 0;
  HighPrecision magnitude = 0;
  const HighPrecision abs_x = boost::multiprecision::abs(hx);
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) {
    const HighPrecision ci = to_high_precision(*it);
    acc = acc * hx + ci;
    magnitude = magnitude * abs_x + boost::multiprecision::abs(ci);
  }
  if (acc != 0 && magnitude / boost::multiprecision::abs(acc) < HighPrecision(1e70)) {
    return acc.convert_to<double>();
  }
  return hyp2f1_terminating(a, b, c, ExactRational::from_double(x)).to_double();
}

HighPrecision hyp2f1_terminating(long a, long b, long c, const HighPrecision& x) {
  check_hyp2f1_args(a, b, c);
  const auto coeff = hyp2f1_coefficients(a, b, c);
  HighPrecision acc = 0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * x + to_high_precision(*it);
  return acc;
}

HighPrecision to_high_precision(const ExactRational& r) { return HighPrecision(r.raw()); }

}  // namespace abnet
