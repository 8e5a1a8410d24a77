#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace abnet {

/// Arbitrary-precision signed rational, always in lowest terms with a
/// positive denominator.
class ExactRational {
 public:
  using backend_type = boost::multiprecision::mpq_rational;
  using integer_type = boost::multiprecision::mpz_int;

  ExactRational() = default;
  ExactRational(std::int64_t value) : value_(value) {}  // NOLINT: implicit by intent
  ExactRational(std::int64_t numerator, std::int64_t denominator);
  ExactRational(const integer_type& numerator, const integer_type& denominator);
  explicit ExactRational(backend_type value) : value_(std::move(value)) {}

  /// Exact conversion of a finite double (every double is a dyadic rational).
  static ExactRational from_double(double value);

  integer_type numerator() const;
  integer_type denominator() const;
  std::string numerator_string() const;
  std::string denominator_string() const;

  /// Nearest double.
  double to_double() const;
  /// Decimal expansion with `digits` significant digits.
  std::string to_decimal_string(int digits = 30) const;
  /// "p/q", or "p" when the denominator is one.
  std::string to_string() const;

  bool is_zero() const;
  int sign() const;
  ExactRational abs() const;

  const backend_type& raw() const noexcept { return value_; }

  ExactRational& operator+=(const ExactRational& rhs);
  ExactRational& operator-=(const ExactRational& rhs);
  ExactRational& operator*=(const ExactRational& rhs);
  /// Throws InputError on division by zero.
  ExactRational& operator/=(const ExactRational& rhs);

  friend ExactRational operator+(ExactRational lhs, const ExactRational& rhs) { return lhs += rhs; }
  friend ExactRational operator-(ExactRational lhs, const ExactRational& rhs) { return lhs -= rhs; }
  friend ExactRational operator*(ExactRational lhs, const ExactRational& rhs) { return lhs *= rhs; }
  friend ExactRational operator/(ExactRational lhs, const ExactRational& rhs) { return lhs /= rhs; }
  friend ExactRational operator-(const ExactRational& x) { return ExactRational(backend_type(-x.value_)); }

  friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  backend_type value_{0};
};

std::ostream& operator<<(std::ostream& os, const ExactRational& r);

}  // namespace abnet
