#include "bpsw/natural.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>

namespace bpsw {

namespace {

std::string strip(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '_' || c == '\'') continue;
    out.push_back(c);
  }
  return out;
}

bool all_of_base(std::string_view digits, int base) {
  if (digits.empty()) return false;
  return std::all_of(digits.begin(), digits.end(), [base](char c) {
    const auto u = static_cast<unsigned char>(c);
    return base == 16 ? std::isxdigit(u) != 0 : std::isdigit(u) != 0;
  });
}

// "<mantissa>e<exp>" with an integral result, e.g. 1e7 or 2.5e3.
Integer parse_scientific(const std::string& s, std::size_t epos) {
  const std::string mantissa = s.substr(0, epos);
  std::string exponent = s.substr(epos + 1);
  if (!exponent.empty() && exponent.front() == '+') exponent.erase(0, 1);
  if (!all_of_base(exponent, 10) || exponent.size() > 6) {
    throw std::invalid_argument("malformed exponent in '" + s + "'");
  }
  long exp10 = std::stol(exponent);

  std::string digits;
  const auto dot = mantissa.find('.');
  if (dot == std::string::npos) {
    digits = mantissa;
  } else {
    digits = mantissa.substr(0, dot);
    const std::string frac = mantissa.substr(dot + 1);
    digits += frac;
    exp10 -= static_cast<long>(frac.size());
  }
  if (!all_of_base(digits, 10)) throw std::invalid_argument("malformed number '" + s + "'");

  Integer value(digits, 10);
  if (exp10 >= 0) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10));
    return value * scale;
  }
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(-exp10));
  if (mpz_divisible_p(value.get_mpz_t(), scale.get_mpz_t()) == 0) {
    throw std::invalid_argument("'" + s + "' is not an integer");
  }
  return value / scale;
}

}  // namespace

Natural::Natural(std::uint64_t value) {
  // mpz_class has no portable uint64 constructor; go through two 32-bit halves.
  value_ = static_cast<unsigned long>(value >> 32);
  value_ <<= 32;
  value_ += static_cast<unsigned long>(value & 0xffffffffULL);
}

Natural::Natural(int value) {
  if (value < 0) throw std::invalid_argument("Natural cannot be negative");
  value_ = value;
}

Natural::Natural(const Integer& value) : value_(value) {
  if (sgn(value_) < 0) throw std::invalid_argument("Natural cannot be negative");
}

Natural::Natural(Integer&& value) : value_(std::move(value)) {
  if (sgn(value_) < 0) throw std::invalid_argument("Natural cannot be negative");
}

Natural Natural::parse(std::string_view text) {
  const std::string s = strip(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    const std::string_view hex = std::string_view(s).substr(2);
    if (!all_of_base(hex, 16)) throw std::invalid_argument("malformed hex number '" + s + "'");
    return Natural(Integer(std::string(hex), 16));
  }
  const auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) return Natural(parse_scientific(s, epos));
  if (!all_of_base(s, 10)) throw std::invalid_argument("malformed number '" + s + "'");
  return Natural(Integer(s, 10));
}

bool Natural::fits_u64() const noexcept { return bit_length() <= 64; }

std::uint64_t Natural::to_u64() const {
  if (!fits_u64()) throw std::overflow_error("Natural does not fit in 64 bits");
  const Integer high = value_ >> 32;
  const Integer low = value_ - (high << 32);
  return (static_cast<std::uint64_t>(high.get_ui()) << 32) | low.get_ui();
}

std::size_t Natural::bit_length() const noexcept {
  if (is_zero()) return 0;
  return mpz_sizeinbase(value_.get_mpz_t(), 2);
}

std::size_t Natural::trailing_zeros() const noexcept {
  if (is_zero()) return 0;
  return mpz_scan1(value_.get_mpz_t(), 0);
}

Natural& Natural::operator+=(const Natural& rhs) {
  value_ += rhs.value_;
  return *this;
}

Natural& Natural::operator-=(const Natural& rhs) {
  if (cmp(value_, rhs.value_) < 0) throw std::domain_error("Natural subtraction underflow");
  value_ -= rhs.value_;
  return *this;
}

Natural& Natural::operator*=(const Natural& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Natural& Natural::operator/=(const Natural& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  mpz_fdiv_q(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
  return *this;
}

Natural& Natural::operator%=(const Natural& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  mpz_fdiv_r(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
  return *this;
}

Natural& Natural::operator<<=(std::size_t bits) {
  mpz_mul_2exp(value_.get_mpz_t(), value_.get_mpz_t(), bits);
  return *this;
}

Natural& Natural::operator>>=(std::size_t bits) {
  mpz_fdiv_q_2exp(value_.get_mpz_t(), value_.get_mpz_t(), bits);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.to_string(); }

Integer parse_integer(std::string_view text) {
  std::string s = strip(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.erase(0, 1);
  }
  Integer value = Natural::parse(s).to_integer();
  return negative ? Integer(-value) : value;
}

}  // namespace bpsw
