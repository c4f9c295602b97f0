#pragma once

// Deterministic parameter search shared by the public selectors and the
// census fast path. Methods A, A*, B, B*, C and D only ever produce small
// D, P, Q, so candidates are plain 64-bit integers whatever the size of n.

#include <cstddef>
#include <cstdint>
#include <cstdlib>

#include "bpsw/arith.hpp"
#include "bpsw/detail/kernel.hpp"
#include "bpsw/types.hpp"

namespace bpsw::detail {

struct Candidate {
  std::int64_t D = 0;
  std::int64_t P = 0;
  std::int64_t Q = 0;
};

/// i-th candidate of a method's search sequence, before any Q rewrite.
inline Candidate base_candidate(Method m, std::int64_t i) {
  const std::int64_t sign = (i % 2 == 0) ? 1 : -1;
  switch (m) {
    case Method::A:
    case Method::AStar: {
      const std::int64_t D = sign * (5 + 2 * i);  // 5, -7, 9, -11, ...
      return {D, 1, (1 - D) / 4};
    }
    case Method::C: {
      const std::int64_t D = sign * (41 + 2 * i);  // 41, -43, 45, -47, ...
      return {D, 1, (1 - D) / 4};
    }
    case Method::B:
    case Method::BStar: {
      const std::int64_t D = 5 + 4 * i;  // 5, 9, 13, 17, ...
      const std::int64_t r = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(D)));
      const std::int64_t P = (r + 1) % 2 == 1 ? r + 1 : r + 2;  // smallest odd > sqrt(D)
      return {D, P, (P * P - D) / 4};
    }
    case Method::D: {
      const std::int64_t P = 4 + i;  // Q = 2 fixed
      return {P * P - 8, P, 2};
    }
    default:
      return {};
  }
}

/// Q rewrites that keep D: A* (and C) replace Q = -1 by P = Q = 5; B*
/// replaces Q = 1 by (P + 2, P + Q + 1).
inline Candidate rewrite(Method m, Candidate c) {
  if ((m == Method::AStar || m == Method::C) && c.Q == -1) return {c.D, 5, 5};
  if (m == Method::BStar && c.Q == 1) return {c.D, c.P + 2, c.P + c.Q + 1};
  return c;
}

struct SelectionLimitsLite {
  std::size_t max_candidates = 1000;
  std::size_t square_check_after = 20;
};

enum class SelectStatus { Params, ZeroJacobi, QFactor, Square, Exhausted };

template <class N>
struct SmallSelection {
  SelectStatus status = SelectStatus::Exhausted;
  Candidate candidate;  // accepted params, or the candidate that exposed a factor
  N factor{};           // proper divisor, or square root for Square
  std::size_t tried = 0;
};

inline int jacobi_small(std::int64_t a, std::uint64_t n) { return jacobi_signed(a, n); }
inline int jacobi_small(std::int64_t a, const Natural& n) {
  return jacobi(Integer(static_cast<long>(a)), n);
}
inline std::uint64_t gcd_small(std::uint64_t a, std::uint64_t n) { return gcd(a, n); }
inline Natural gcd_small(std::uint64_t a, const Natural& n) { return gcd(Natural(a), n); }
inline bool square_root_of(std::uint64_t n, std::uint64_t& root) {
  root = isqrt(n);
  return root * root == n;
}
inline bool square_root_of(const Natural& n, Natural& root) {
  auto sq = is_perfect_square(n);
  root = sq.root;
  return sq.is_square;
}

template <class N>
SmallSelection<N> select_small(const N& n, Method m, const SelectionLimitsLite& limits) {
  SmallSelection<N> out;
  std::size_t plus_ones = 0;
  for (std::size_t i = 0; i < limits.max_candidates; ++i) {
    const Candidate c = base_candidate(m, static_cast<std::int64_t>(i));
    out.tried = i + 1;
    const int j = jacobi_small(c.D, n);
    if (j == 0) {
      const std::uint64_t mag = static_cast<std::uint64_t>(std::llabs(c.D));
      const N g = gcd_small(mag, n);
      // |D| >= n with n | D says nothing about n; anything else is a factor.
      if (N(mag) < n || g != n) {
        out.status = SelectStatus::ZeroJacobi;
        out.candidate = c;
        out.factor = g;
        return out;
      }
      continue;
    }
    if (j == 1) {
      if (++plus_ones == limits.square_check_after) {
        N root{};
        if (square_root_of(n, root)) {
          out.status = SelectStatus::Square;
          out.candidate = c;
          out.factor = root;
          return out;
        }
      }
      continue;
    }
    const Candidate accepted = rewrite(m, c);
    const N g = gcd_small(static_cast<std::uint64_t>(std::llabs(accepted.Q)), n);
    if (g != N(1) && g != n) {
      out.status = SelectStatus::QFactor;
      out.candidate = accepted;
      out.factor = g;
      return out;
    }
    out.status = SelectStatus::Params;
    out.candidate = accepted;
    return out;
  }
  out.status = SelectStatus::Exhausted;
  return out;
}

}  // namespace bpsw::detail
