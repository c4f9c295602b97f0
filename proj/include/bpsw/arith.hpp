#pragma once

// Exact modular arithmetic on arbitrary-precision naturals: left-to-right
// binary exponentiation, Jacobi symbol, gcd, Newton integer square root and
// prime sieves.

#include <cstdint>
#include <optional>
#include <vector>

#include "bpsw/natural.hpp"

namespace bpsw {

/// `value` reduced into [0, modulus); negative inputs map to modulus - (|x| mod modulus).
Natural canonical_residue(const Integer& value, const Natural& modulus);

/// base^exponent mod modulus, processing exponent bits most-significant first
/// (square, then multiply when the bit is 1). Throws InvalidModulus when
/// modulus <= 1.
Natural mod_pow(const Natural& base, const Natural& exponent, const Natural& modulus);

struct PowStep {
  std::size_t bit_position = 0;  // 1-based, counted from the most significant bit
  bool bit = false;
  Natural exponent;              // exponent prefix reached after this step
  Natural residue;               // base^exponent mod modulus

  bool operator==(const PowStep&) const = default;
};

/// Same computation as mod_pow, returning the residue after every bit.
std::vector<PowStep> mod_pow_trace(const Natural& base, const Natural& exponent,
                                   const Natural& modulus);

/// Jacobi symbol (a/n) for odd n >= 1; `a` may be negative. Iterative binary
/// algorithm. Throws std::invalid_argument for even n.
int jacobi(const Integer& a, const Natural& n);
int jacobi(std::int64_t a, std::uint64_t n);

Natural gcd(const Natural& a, const Natural& b);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;

/// Inverse of a mod n, or nothing when gcd(a, n) != 1.
std::optional<Natural> mod_inverse(const Natural& a, const Natural& n);

/// floor(sqrt(n)) by Newton's iteration seeded with 2^ceil(bits/2).
Natural isqrt(const Natural& n);
std::uint64_t isqrt(std::uint64_t n) noexcept;

struct SquareRoot {
  bool is_square = false;
  Natural root;  // exact root when is_square, floor root otherwise
};

SquareRoot is_perfect_square(const Natural& n);
bool is_perfect_square(std::uint64_t n) noexcept;

/// All primes p < bound in ascending order (sieve of Eratosthenes).
std::vector<std::uint64_t> small_prime_sieve(std::uint64_t bound);

/// Primality flags for every integer in [lo, hi): entry i answers "is lo + i
/// prime?". Segmented sieve using base primes up to sqrt(hi).
std::vector<bool> prime_flags(std::uint64_t lo, std::uint64_t hi);

}  // namespace bpsw
