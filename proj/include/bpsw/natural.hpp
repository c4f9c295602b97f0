#pragma once

// Arbitrary-precision integers used throughout the toolkit.
//
// `Natural` is a non-negative integer with no upper bound; `Integer` is the
// signed counterpart used for Lucas parameters (D, P and Q may be negative).
// Both are backed by GMP.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bpsw {

using Integer = mpz_class;

class Natural {
 public:
  Natural() = default;
  Natural(std::uint64_t value);  // NOLINT(google-explicit-constructor)
  Natural(int value);            // NOLINT(google-explicit-constructor)

  /// Throws std::invalid_argument when `value` is negative.
  explicit Natural(const Integer& value);
  explicit Natural(Integer&& value);

  /// Accepts decimal, `0x` hexadecimal, and scientific notation with an
  /// integral result (`1e7`, `2.5e3`). Leading/trailing whitespace and digit
  /// separators `_` / `'` are ignored.
  static Natural parse(std::string_view text);

  const Integer& mpz() const noexcept { return value_; }
  Integer to_integer() const { return value_; }

  std::string to_string() const { return value_.get_str(); }

  bool is_zero() const noexcept { return sgn(value_) == 0; }
  bool is_odd() const noexcept { return mpz_odd_p(value_.get_mpz_t()) != 0; }
  bool is_even() const noexcept { return !is_odd(); }

  bool fits_u64() const noexcept;
  /// Throws std::overflow_error when the value does not fit.
  std::uint64_t to_u64() const;

  std::size_t bit_length() const noexcept;
  bool bit(std::size_t index) const noexcept {
    return mpz_tstbit(value_.get_mpz_t(), index) != 0;
  }
  /// Number of trailing zero bits; 0 for zero.
  std::size_t trailing_zeros() const noexcept;

  Natural& operator+=(const Natural& rhs);
  /// Throws std::domain_error on underflow.
  Natural& operator-=(const Natural& rhs);
  Natural& operator*=(const Natural& rhs);
  Natural& operator/=(const Natural& rhs);
  Natural& operator%=(const Natural& rhs);
  Natural& operator<<=(std::size_t bits);
  Natural& operator>>=(std::size_t bits);

  friend Natural operator+(Natural lhs, const Natural& rhs) { return lhs += rhs; }
  friend Natural operator-(Natural lhs, const Natural& rhs) { return lhs -= rhs; }
  friend Natural operator*(Natural lhs, const Natural& rhs) { return lhs *= rhs; }
  friend Natural operator/(Natural lhs, const Natural& rhs) { return lhs /= rhs; }
  friend Natural operator%(Natural lhs, const Natural& rhs) { return lhs %= rhs; }
  friend Natural operator<<(Natural lhs, std::size_t bits) { return lhs <<= bits; }
  friend Natural operator>>(Natural lhs, std::size_t bits) { return lhs >>= bits; }

  friend bool operator==(const Natural& a, const Natural& b) noexcept {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) noexcept {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Integer value_{0};
};

std::ostream& operator<<(std::ostream& os, const Natural& n);

/// Parses a signed integer in decimal or `0x` hex (used for explicit P, Q).
Integer parse_integer(std::string_view text);

}  // namespace bpsw
