#include "abnet/rational.hpp"

#include "abnet/error.hpp"

#include <cmath>
#include <ostream>

namespace abnet {

namespace bmp = boost::multiprecision;

ExactRational::ExactRational(std::int64_t numerator, std::int64_t denominator)
    : ExactRational(integer_type(numerator), integer_type(denominator)) {}

ExactRational::ExactRational(const integer_type& numerator, const integer_type& denominator) {
  if (denominator == 0) throw InputError("ExactRational: zero denominator");
  value_ = backend_type(numerator, denominator);
}

ExactRational ExactRational::from_double(double value) {
  if (!std::isfinite(value)) throw InputError("ExactRational: non-finite double");
  if (value == 0.0) return ExactRational();
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an exact integer for every finite double.
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  integer_type num(scaled);
  integer_type den(1);
  if (exponent >= 0) {
    num <<= exponent;
  } else {
    den <<= -exponent;
  }
  return ExactRational(num, den);
}

ExactRational::integer_type ExactRational::numerator() const { return bmp::numerator(value_); }
ExactRational::integer_type ExactRational::denominator() const { return bmp::denominator(value_); }
std::string ExactRational::numerator_string() const { return numerator().str(); }
std::string ExactRational::denominator_string() const { return denominator().str(); }

double ExactRational::to_double() const {
  // Correctly rounded (half-to-even) for normal results.
  const integer_type num = bmp::abs(numerator());
  const integer_type den = denominator();
  if (num == 0) return 0.0;
  const long shift = static_cast<long>(bmp::msb(num)) - static_cast<long>(bmp::msb(den));
  integer_type scaled_num = num;
  integer_type scaled_den = den;
  if (shift >= 64) {
    scaled_den <<= (shift - 64);
  } else {
    scaled_num <<= (64 - shift);
  }
  integer_type q;
  integer_type rem;
  bmp::divide_qr(scaled_num, scaled_den, q, rem);
  const unsigned bits = bmp::msb(q) + 1;
  const unsigned drop = bits - 53;
  integer_type top = q >> drop;
  const integer_type rest = q - (top << drop);
  const integer_type half = integer_type(1) << (drop - 1);
  if (rest > half || (rest == half && (rem != 0 || bmp::bit_test(top, 0)))) top += 1;
  const double magnitude = std::ldexp(top.convert_to<double>(), static_cast<int>(drop) + static_cast<int>(shift) - 64);
  return sign() < 0 ? -magnitude : magnitude;
}

std::string ExactRational::to_decimal_string(int digits) const {
  if (digits < 1) digits = 1;
  const integer_type num = bmp::abs(numerator());
  const integer_type den = denominator();
  if (num == 0) return "0";

  // Find e with 10^e <= |r| < 10^(e+1).
  long e = static_cast<long>(num.str().size()) - static_cast<long>(den.str().size());
  auto pow10 = [](long n) -> integer_type { return bmp::pow(integer_type(10), static_cast<unsigned>(n)); };
  auto at_least = [&](long ex) {  // |r| >= 10^ex
    return ex >= 0 ? num >= den * pow10(ex) : num * pow10(-ex) >= den;
  };
  while (!at_least(e)) --e;
  while (at_least(e + 1)) ++e;

  // Rounded integer with `digits` significant digits.
  const long scale = digits - 1 - e;
  integer_type scaled_num = scale >= 0 ? num * pow10(scale) : num;
  integer_type scaled_den = scale >= 0 ? den : den * pow10(-scale);
  integer_type mant = (2 * scaled_num + scaled_den) / (2 * scaled_den);
  std::string s = mant.str();
  if (static_cast<int>(s.size()) > digits) {  // rounding carried into a new digit
    ++e;
    s.pop_back();
  }

  std::string out = sign() < 0 ? "-" : "";
  if (e >= -5 && e < digits) {
    if (e >= 0) {
      out += s.substr(0, static_cast<size_t>(e) + 1);
      std::string frac = s.substr(static_cast<size_t>(e) + 1);
      while (!frac.empty() && frac.back() == '0') frac.pop_back();
      if (!frac.empty()) out += "." + frac;
    } else {
      std::string frac = std::string(static_cast<size_t>(-e - 1), '0') + s;
      while (!frac.empty() && frac.back() == '0') frac.pop_back();
      out += "0." + frac;
    }
  } else {
    std::string frac = s.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out += s.substr(0, 1);
    if (!frac.empty()) out += "." + frac;
    out += "e" + std::to_string(e);
  }
  return out;
}

std::string ExactRational::to_string() const {
  if (denominator() == 1) return numerator_string();
  return numerator_string() + "/" + denominator_string();
}

bool ExactRational::is_zero() const { return value_ == 0; }
int ExactRational::sign() const { return value_.sign(); }
ExactRational ExactRational::abs() const { return ExactRational(backend_type(bmp::abs(value_))); }

ExactRational& ExactRational::operator+=(const ExactRational& rhs) {
  value_ += rhs.value_;
  return *this;
}
ExactRational& ExactRational::operator-=(const ExactRational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
ExactRational& ExactRational::operator*=(const ExactRational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
ExactRational& ExactRational::operator/=(const ExactRational& rhs) {
  if (rhs.is_zero()) throw InputError("ExactRational: division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const ExactRational& r) { return os << r.to_string(); }

}  // namespace abnet
