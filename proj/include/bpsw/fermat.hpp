#pragma once

// Fermat-family probable-prime classifiers: prp(a), Euler prp(a) and
// strong prp(a).
//
// All three take an odd n > 1 (n > 2 for the strong test) and throw
// DomainError otherwise; a base divisible by n is a PreconditionError. When
// 1 < gcd(a, n) < n the result is composite with a GcdFactor certificate.
// Bases a = +-1 (mod n) always pass.

#include <cstddef>

#include "bpsw/natural.hpp"
#include "bpsw/types.hpp"

namespace bpsw {

enum class Direction { MinusOne, PlusOne };

/// n - 1 = d * 2^s (MinusOne) or n + 1 = d * 2^s (PlusOne), d odd.
struct StrongDecomposition {
  Natural d;
  std::size_t s = 0;
  Direction direction = Direction::MinusOne;

  bool operator==(const StrongDecomposition&) const = default;
};

/// Requires n odd and n > 1.
StrongDecomposition decompose(const Natural& n, Direction direction);

/// a^(n-1) = 1 (mod n).
Classification is_prp(const Natural& n, const Natural& a);

/// Euler's criterion a^((n-1)/2) = (a/n) (mod n).
Classification is_epsp_condition(const Natural& n, const Natural& a);

/// a^d = 1 or a^(d 2^r) = -1 for some 0 <= r < s, where n - 1 = d 2^s. Stops
/// at or before exponent (n-1)/2 when n is shown composite.
Classification is_sprp(const Natural& n, const Natural& a);

}  // namespace bpsw
