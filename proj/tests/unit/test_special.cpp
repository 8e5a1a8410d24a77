#include "abnet/error.hpp"
#include "abnet/rational.hpp"
#include "abnet/special.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

using namespace abnet;

TEST_CASE("ExactRational basics") {
  const ExactRational a(6, -8);
  CHECK(a.numerator_string() == "-3");
  CHECK(a.denominator_string() == "4");
  CHECK(a.to_string() == "-3/4");
  CHECK(ExactRational(10, 5).to_string() == "2");
  CHECK(a + ExactRational(3, 4) == ExactRational(0));
  CHECK((a * ExactRational(-4, 3)) == ExactRational(1));
  CHECK(ExactRational(1, 3) < ExactRational(1, 2));
  CHECK(a.sign() == -1);
  CHECK(a.abs() == ExactRational(3, 4));
  CHECK(ExactRational(0).is_zero());
  CHECK_THROWS_AS(ExactRational(1) / ExactRational(0), InputError);
  CHECK_THROWS_AS(ExactRational(1, 0), InputError);
  std::ostringstream os;
  os << ExactRational(7, 2);
  CHECK(os.str() == "7/2");
}

TEST_CASE("ExactRational double conversions") {
  CHECK(ExactRational(1, 3).to_double() == 1.0 / 3.0);
  CHECK(ExactRational(2, 3).to_double() == 2.0 / 3.0);
  CHECK(ExactRational(-10, 3).to_double() == -10.0 / 3.0);
  CHECK(ExactRational::from_double(0.1).to_double() == 0.1);
  CHECK(ExactRational::from_double(0.5) == ExactRational(1, 2));
  CHECK_THROWS_AS(ExactRational::from_double(std::numeric_limits<double>::infinity()), InputError);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> num(-1'000'000'007, 1'000'000'007), den(1, 999'999'937);
  for (int i = 0; i < 2000; ++i) {
    const auto p = num(rng), q = den(rng);
    // Division of two exactly representable integers is correctly rounded.
    CHECK(ExactRational(p, q).to_double() == static_cast<double>(p) / static_cast<double>(q));
  }
  for (int i = 0; i < 200; ++i) {
    const double x = std::ldexp(static_cast<double>(num(rng)), static_cast<int>(den(rng) % 200) - 100);
    CHECK(ExactRational::from_double(x).to_double() == x);
  }
  CHECK(ExactRational(1, 3).to_decimal_string(5) == "0.33333");
  CHECK(ExactRational(-3, 2).to_decimal_string(3) == "-1.5");
  CHECK(ExactRational(2, 3).to_decimal_string(4) == "0.6667");
  CHECK(ExactRational(1, 300000000).to_decimal_string(3) == "3.33e-9");
  CHECK(ExactRational(999, 1000).to_decimal_string(2) == "1");
}

TEST_CASE("factorial") {
  CHECK(factorial(0) == ExactRational(1));
  CHECK(factorial(5) == ExactRational(120));
  CHECK(factorial(12) == ExactRational(479001600));
  CHECK(factorial(25).to_string() == "15511210043330985984000000");
  CHECK_THROWS_AS(factorial(-1), InputError);
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == ExactRational(10));
  for (long n = 0; n < 20; ++n) CHECK(binomial(n, 0) == ExactRational(1));
  CHECK(binomial(7, 9) == ExactRational(0));
  CHECK(binomial(7, -1) == ExactRational(0));
  CHECK_THROWS_AS(binomial(-1, 0), InputError);

  for (long n = 0; n <= 60; ++n) {
    for (long k = 0; k <= n; ++k) {
      CHECK(binomial(n, k) == binomial(n, n - k));
      if (n >= 1) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
  for (long k = 0; k <= 40; ++k) CHECK(binomial(40, k) == oracle::pascal_binomial(40, k));
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer(4, 0) == ExactRational(1));
  CHECK(pochhammer(3, 3) == ExactRational(60));
  CHECK(pochhammer(-2, 3) == ExactRational(0));
  CHECK(pochhammer(-3, 3) == ExactRational(-6));
  CHECK_THROWS_AS(pochhammer(1, -1), InputError);
  for (long a = -5; a <= 10; ++a)
    for (long n = 0; n <= 10; ++n) CHECK(pochhammer(a, n) == oracle::rising(a, n));
}

TEST_CASE("hyp2f1 examples") {
  CHECK(hyp2f1_terminating(5, 0, 7, 0.3) == 1.0);
  CHECK(hyp2f1_terminating(3, -1, 4, 0.5) == 0.625);
  CHECK(hyp2f1_terminating(3, -2, 4, 1.0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(hyp2f1_terminating(3, -2, 4, ExactRational(1)) == ExactRational(1, 10));
  CHECK_THROWS_AS(hyp2f1_terminating(3, 1, 4, 0.5), InputError);
  CHECK_THROWS_AS(hyp2f1_terminating(0, -1, 4, 0.5), InputError);
  CHECK_THROWS_AS(hyp2f1_terminating(3, -1, 0, 0.5), InputError);
}

TEST_CASE("hyp2f1 against brute-force series and Chu-Vandermonde") {
  for (long a = 1; a <= 30; a += 3) {
    for (long c = 1; c <= 30; c += 2) {
      for (long j = 0; j <= 25; j += 4) {
        const auto exact = hyp2f1_terminating(a, -j, c, ExactRational(1));
        CHECK(exact == oracle::chu_vandermonde(a, c, j));
        CHECK(exact == oracle::brute_hyp2f1(a, -j, c, ExactRational(1)));
        const double fl = hyp2f1_terminating(a, -j, c, 1.0);
        CHECK(oracle::rel(fl, exact.to_double()) <= 1e-13);
      }
    }
  }
}

TEST_CASE("hyp2f1 floating agrees with exact evaluation") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> ac(1, 30), jj(0, 25), pq(0, 64);
  for (int trial = 0; trial < 300; ++trial) {
    const long a = ac(rng), c = ac(rng), j = jj(rng);
    const ExactRational x(pq(rng) - 32, 32);  // dyadic, so the double is the same number
    const auto exact = hyp2f1_terminating(a, -j, c, x);
    CHECK(exact == oracle::brute_hyp2f1(a, -j, c, x));
    const double fl = hyp2f1_terminating(a, -j, c, x.to_double());
    const double ref = exact.to_double();
    if (ref == 0.0) {
      CHECK(fl == 0.0);
    } else {
      CHECK(oracle::rel(fl, ref) <= 1e-12);
    }
    const auto hp = hyp2f1_terminating(a, -j, c, to_high_precision(x));
    CHECK(oracle::rel(hp.convert_to<double>(), ref) <= 1e-15);
  }
}

TEST_CASE("hyp2f1 survives deep cancellation") {
  // a = c gives (1 - x)^j exactly; near x = 1 nearly all digits cancel.
  const long j = 60;
  const double x = 1.0 - std::ldexp(1.0, -20);
  const double expected = std::pow(std::ldexp(1.0, -20), static_cast<double>(j));
  CHECK(oracle::rel(hyp2f1_terminating(7, -j, 7, x), expected) <= 1e-14);
}
