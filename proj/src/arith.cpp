#include "bpsw/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bpsw/detail/kernel.hpp"
#include "bpsw/detail/ring.hpp"
#include "bpsw/errors.hpp"

namespace bpsw {

namespace {

template <class T>
T newton_isqrt(const T& n) {
  if (n < T(2)) return n;
  const std::size_t bits = detail::bit_length(n);
  T x = T(1) << ((bits + 1) / 2);
  for (;;) {
    T y = (x + n / x) >> 1;
    if (!(y < x)) return x;
    x = y;
  }
}

// Binary Jacobi on GMP integers; a in [0, n).
int jacobi_big(Integer a, Integer n) {
  int t = 1;
  while (sgn(a) != 0) {
    const auto z = mpz_scan1(a.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), z);
    const unsigned long n8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
    if ((z & 1) != 0 && (n8 == 3 || n8 == 5)) t = -t;
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && (n8 & 3) == 3) t = -t;
    std::swap(a, n);
    mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  }
  return n == 1 ? t : 0;
}

}  // namespace

Natural canonical_residue(const Integer& value, const Natural& modulus) {
  if (modulus.is_zero()) throw InvalidModulus("modulus must be positive");
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), modulus.mpz().get_mpz_t());
  return Natural(std::move(r));
}

Natural mod_pow(const Natural& base, const Natural& exponent, const Natural& modulus) {
  if (modulus <= Natural(1)) throw InvalidModulus("mod_pow: modulus must exceed 1");
  return detail::with_ring(modulus, [&](const auto& ring, const auto&) {
    return ring.to_natural(detail::pow(ring, ring.from_natural(base), exponent));
  });
}

std::vector<PowStep> mod_pow_trace(const Natural& base, const Natural& exponent,
                                   const Natural& modulus) {
  if (modulus <= Natural(1)) throw InvalidModulus("mod_pow: modulus must exceed 1");
  std::vector<PowStep> steps;
  detail::BigRing ring(modulus);
  Natural prefix(0);
  detail::pow(ring, ring.from_natural(base), exponent,
              [&](std::size_t position, bool bit, const Integer& value) {
                prefix = (prefix << 1) + Natural(bit ? 1 : 0);
                steps.push_back({position, bit, prefix, ring.to_natural(value)});
              });
  return steps;
}

int jacobi(const Integer& a, const Natural& n) {
  if (n.is_even()) throw std::invalid_argument("jacobi: n must be odd");
  if (n.fits_u64()) {
    const std::uint64_t w = n.to_u64();
    if (a.fits_slong_p()) return detail::jacobi_signed(a.get_si(), w);
    return detail::jacobi_reduced(canonical_residue(a, n).to_u64(), w);
  }
  return jacobi_big(canonical_residue(a, n).mpz(), n.mpz());
}

int jacobi(std::int64_t a, std::uint64_t n) {
  if ((n & 1) == 0) throw std::invalid_argument("jacobi: n must be odd");
  return detail::jacobi_signed(a, n);
}

Natural gcd(const Natural& a, const Natural& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return Natural(std::move(g));
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::optional<Natural> mod_inverse(const Natural& a, const Natural& n) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), a.mpz().get_mpz_t(), n.mpz().get_mpz_t()) == 0) {
    return std::nullopt;
  }
  return Natural(std::move(inv));
}

Natural isqrt(const Natural& n) { return newton_isqrt(n); }

std::uint64_t isqrt(std::uint64_t n) noexcept {
  if (n < 2) return n;
  // Seed 2^ceil(bits/2) may reach 2^32; the loop only decreases from there.
  const std::size_t bits = detail::bit_length(n);
  std::uint64_t x = std::uint64_t{1} << ((bits + 1) / 2);
  for (;;) {
    const std::uint64_t y = (x + n / x) >> 1;
    if (y >= x) return x;
    x = y;
  }
}

SquareRoot is_perfect_square(const Natural& n) {
  Natural root = isqrt(n);
  const bool square = root * root == n;
  return {square, std::move(root)};
}

bool is_perfect_square(std::uint64_t n) noexcept {
  const std::uint64_t r = isqrt(n);
  return r * r == n;
}

std::vector<std::uint64_t> small_prime_sieve(std::uint64_t bound) {
  std::vector<std::uint64_t> primes;
  if (bound <= 2) return primes;
  std::vector<bool> composite(bound, false);
  for (std::uint64_t i = 2; i < bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j < bound; j += i) composite[j] = true;
  }
  return primes;
}

std::vector<bool> prime_flags(std::uint64_t lo, std::uint64_t hi) {
  if (hi <= lo) return {};
  std::vector<bool> prime(hi - lo, true);
  for (std::uint64_t v = lo; v < std::min<std::uint64_t>(hi, 2); ++v) prime[v - lo] = false;
  const std::uint64_t root = isqrt(hi - 1);
  for (std::uint64_t p : small_prime_sieve(root + 1)) {
    std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    for (std::uint64_t m = start; m < hi; m += p) prime[m - lo] = false;
  }
  return prime;
}

}  // namespace bpsw
