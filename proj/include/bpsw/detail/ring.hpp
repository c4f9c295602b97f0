#pragma once

// Residue-ring backends shared by the exponentiation and Lucas kernels.
//
// Every kernel is a template over a ring type exposing the same small
// interface (zero/one/mul/sqr/add/sub/neg/half plus conversions), so the
// algorithms are written once and run either on machine words or on GMP
// integers:
//
//   MontgomeryRing  odd moduli below 2^63, values kept in Montgomery form
//   BigRing         any modulus > 1, canonical GMP residues
//
// Values of both rings are always fully reduced, so equality of values is
// equality of residues.

#include <cstdint>
#include <stdexcept>

#include "bpsw/errors.hpp"
#include "bpsw/natural.hpp"

namespace bpsw::detail {

__extension__ using u128 = unsigned __int128;

/// Largest modulus handled by the word-sized path (exclusive).
inline constexpr std::uint64_t kWordModulusLimit = std::uint64_t{1} << 63;

inline std::uint64_t canonical_u64(const Integer& x, std::uint64_t n) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), Natural(n).mpz().get_mpz_t());
  return Natural(r).to_u64();
}

class MontgomeryRing {
 public:
  using value_type = std::uint64_t;

  explicit MontgomeryRing(std::uint64_t n) : n_(n) {
    if (n <= 1) throw InvalidModulus("modulus must exceed 1");
    if ((n & 1) == 0 || n >= kWordModulusLimit) {
      throw std::invalid_argument("MontgomeryRing needs an odd modulus below 2^63");
    }
    // Newton iteration for n^{-1} mod 2^64; each step doubles the correct bits.
    std::uint64_t inv = n;
    for (int i = 0; i < 5; ++i) inv *= 2 - n * inv;
    neg_inv_ = ~inv + 1;
    r1_ = static_cast<std::uint64_t>((u128{1} << 64) % n);
    r2_ = static_cast<std::uint64_t>((u128{r1_} * r1_) % n);
  }

  std::uint64_t modulus() const noexcept { return n_; }

  value_type zero() const noexcept { return 0; }
  value_type one() const noexcept { return r1_; }

  value_type from_u64(std::uint64_t x) const noexcept { return mul(x % n_, r2_); }
  value_type from_i64(std::int64_t x) const noexcept {
    if (x >= 0) return from_u64(static_cast<std::uint64_t>(x));
    const std::uint64_t mag = static_cast<std::uint64_t>(-(x + 1)) + 1;
    const std::uint64_t r = mag % n_;
    return from_u64(r == 0 ? 0 : n_ - r);
  }
  value_type from_integer(const Integer& x) const {
    if (x.fits_slong_p()) return from_i64(x.get_si());
    return from_u64(canonical_u64(x, n_));
  }
  value_type from_natural(const Natural& x) const { return from_integer(x.mpz()); }

  std::uint64_t to_u64(value_type x) const noexcept { return reduce(x); }
  Natural to_natural(value_type x) const { return Natural(to_u64(x)); }

  value_type mul(value_type a, value_type b) const noexcept { return reduce(u128{a} * b); }
  value_type sqr(value_type a) const noexcept { return reduce(u128{a} * a); }
  value_type add(value_type a, value_type b) const noexcept {
    const std::uint64_t s = a + b;  // < 2^64 because n < 2^63
    return s >= n_ ? s - n_ : s;
  }
  value_type sub(value_type a, value_type b) const noexcept { return a >= b ? a - b : a + (n_ - b); }
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : n_ - a; }
  /// Multiplication by 2^{-1}: add n to an odd value, then shift.
  value_type half(value_type a) const noexcept { return (a & 1) ? (a + n_) >> 1 : a >> 1; }

  bool is_zero(value_type a) const noexcept { return a == 0; }
  bool eq(value_type a, value_type b) const noexcept { return a == b; }

 private:
  value_type reduce(u128 t) const noexcept {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * neg_inv_;
    const u128 sum = t + u128{m} * n_;
    const std::uint64_t r = static_cast<std::uint64_t>(sum >> 64);
    return r >= n_ ? r - n_ : r;
  }

  std::uint64_t n_;
  std::uint64_t neg_inv_ = 0;
  std::uint64_t r1_ = 0;
  std::uint64_t r2_ = 0;
};

class BigRing {
 public:
  using value_type = Integer;

  explicit BigRing(Natural n) : n_(std::move(n)) {
    if (n_ <= Natural(1)) throw InvalidModulus("modulus must exceed 1");
  }

  const Natural& modulus() const noexcept { return n_; }

  value_type zero() const { return Integer(0); }
  value_type one() const { return Integer(1); }

  value_type from_u64(std::uint64_t x) const { return reduced(Natural(x).mpz()); }
  value_type from_i64(std::int64_t x) const { return reduced(Integer(static_cast<long>(x))); }
  value_type from_integer(const Integer& x) const { return reduced(x); }
  value_type from_natural(const Natural& x) const { return reduced(x.mpz()); }

  Natural to_natural(const value_type& x) const { return Natural(x); }

  value_type mul(const value_type& a, const value_type& b) const {
    Integer r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m());
    return r;
  }
  value_type sqr(const value_type& a) const { return mul(a, a); }
  value_type add(const value_type& a, const value_type& b) const {
    Integer r = a + b;
    if (cmp(r, n_.mpz()) >= 0) r -= n_.mpz();
    return r;
  }
  value_type sub(const value_type& a, const value_type& b) const {
    Integer r = a - b;
    if (sgn(r) < 0) r += n_.mpz();
    return r;
  }
  value_type neg(const value_type& a) const { return sgn(a) == 0 ? a : Integer(n_.mpz() - a); }
  value_type half(const value_type& a) const {
    Integer r = a;
    if (mpz_odd_p(r.get_mpz_t())) r += n_.mpz();
    mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), 1);
    return r;
  }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool eq(const value_type& a, const value_type& b) const { return cmp(a, b) == 0; }

 private:
  mpz_srcptr m() const { return n_.mpz().get_mpz_t(); }
  value_type reduced(const Integer& x) const {
    Integer r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m());
    return r;
  }

  Natural n_;
};

inline Natural to_natural(const MontgomeryRing& r, std::uint64_t x) { return r.to_natural(x); }
inline Natural to_natural(const BigRing& r, const Integer& x) { return r.to_natural(x); }

// Bit access for exponents/subscripts of either width.
inline std::size_t bit_length(std::uint64_t e) noexcept {
  return e == 0 ? 0 : 64 - static_cast<std::size_t>(__builtin_clzll(e));
}
inline bool test_bit(std::uint64_t e, std::size_t i) noexcept { return ((e >> i) & 1) != 0; }
inline std::size_t trailing_zeros(std::uint64_t e) noexcept {
  return e == 0 ? 0 : static_cast<std::size_t>(__builtin_ctzll(e));
}
inline std::size_t bit_length(const Natural& e) noexcept { return e.bit_length(); }
inline bool test_bit(const Natural& e, std::size_t i) noexcept { return e.bit(i); }
inline std::size_t trailing_zeros(const Natural& e) noexcept { return e.trailing_zeros(); }

/// Runs `fn(ring, exponent_like_n)` on the word ring when `n` is odd and small
/// enough, otherwise on the GMP ring. `fn` receives n in the matching width.
template <class Fn>
decltype(auto) with_ring(const Natural& n, Fn&& fn) {
  if (n.is_odd() && n.bit_length() < 63 && n > Natural(1)) {
    const std::uint64_t w = n.to_u64();
    return fn(MontgomeryRing(w), w);
  }
  return fn(BigRing(n), n);
}

}  // namespace bpsw::detail
