#pragma once

#include "abnet/rational.hpp"

#include <boost/multiprecision/gmp.hpp>

namespace abnet {

/// 100-digit binary float used wherever an expanded alternating sum has to be
/// evaluated as written.
using HighPrecision = boost::multiprecision::mpf_float_100;

/// Exact n!. Throws InputError for n < 0.
ExactRational factorial(long n);

/// Exact C(n, k); zero when k < 0 or k > n. Throws InputError for n < 0.
ExactRational binomial(long n, long k);

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.
ExactRational pochhammer(long a, long n);

/// Terminating Gauss hypergeometric series 2F1(a, b; c; x) for b <= 0.
///
/// The series has |b|+1 terms. Coefficients are formed exactly. The double
/// overload sums in 100-digit arithmetic and, when the alternating terms
/// cancel too deeply for that, re-sums exactly with x taken as its dyadic
/// rational value; either way the result is correctly rounded to within an ulp.
/// Throws InputError when b > 0, c < 1 or a < 1.
double hyp2f1_terminating(long a, long b, long c, double x);
ExactRational hyp2f1_terminating(long a, long b, long c, const ExactRational& x);
HighPrecision hyp2f1_terminating(long a, long b, long c, const HighPrecision& x);

/// Converts an exact rational into the high-precision float type.
HighPrecision to_high_precision(const ExactRational& r);

}  // namespace abnet
