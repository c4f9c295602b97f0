#pragma once

// Width-generic number-theory kernels: binary exponentiation over a ring and
// the binary Jacobi symbol. Public wrappers live in arith.cpp.

#include <cstddef>
#include <cstdint>
#include <utility>

#include "bpsw/detail/ring.hpp"

namespace bpsw::detail {

struct NoPowTrace {
  template <class V>
  void operator()(std::size_t, bool, const V&) const noexcept {}
};

/// Left-to-right binary exponentiation. `on_step(position, bit, value)` is
/// called once per exponent bit after the square(-and-multiply) for that bit.
template <class Ring, class Exp, class OnStep = NoPowTrace>
typename Ring::value_type pow(const Ring& r, const typename Ring::value_type& base, const Exp& e,
                              OnStep&& on_step = {}) {
  typename Ring::value_type acc = r.one();
  const std::size_t bits = bit_length(e);
  for (std::size_t i = bits; i-- > 0;) {
    acc = r.sqr(acc);
    const bool bit = test_bit(e, i);
    if (bit) acc = r.mul(acc, base);
    on_step(bits - i, bit, acc);
  }
  return acc;
}

/// (a/n) for odd n, with a already reduced into [0, n).
inline int jacobi_reduced(std::uint64_t a, std::uint64_t n) noexcept {
  int t = 1;
  while (a != 0) {
    const int z = __builtin_ctzll(a);
    a >>= z;
    const std::uint64_t n8 = n & 7;
    if ((z & 1) != 0 && (n8 == 3 || n8 == 5)) t = -t;
    if ((a & 3) == 3 && (n & 3) == 3) t = -t;
    std::swap(a, n);
    a %= n;
  }
  return n == 1 ? t : 0;
}

inline int jacobi_signed(std::int64_t a, std::uint64_t n) noexcept {
  std::uint64_t r;
  if (a >= 0) {
    r = static_cast<std::uint64_t>(a) % n;
  } else {
    const std::uint64_t mag = (static_cast<std::uint64_t>(-(a + 1)) + 1) % n;
    r = mag == 0 ? 0 : n - mag;
  }
  return jacobi_reduced(r, n);
}

}  // namespace bpsw::detail
