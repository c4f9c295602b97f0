#pragma once

// Lucas sequences U_k(P, Q), V_k(P, Q) modulo n and the Lucas-family
// probable-prime classifiers.
//
// The classifiers require n odd > 1, (D/n) = -1 and gcd(n, Q) = 1 and throw
// PreconditionError otherwise: parameters must be chosen before classifying
// (see params.hpp).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bpsw/natural.hpp"
#include "bpsw/types.hpp"

namespace bpsw {

/// Q mod n, including the 2^-q_shift factor.
Natural resolve_q(const LucasParams& params, const Natural& n);

/// delta(n) = n - (D/n).
Natural delta_index(const Natural& n, const Integer& D);

/// Direct recurrence U_k = P U_{k-1} - Q U_{k-2} (likewise V). O(k); meant as
/// an oracle for small k.
LucasTriple lucas_naive(const Natural& n, const LucasParams& params, std::uint64_t k);

/// (U_k, V_k, Q^k) mod n by the doubling/increment ladder over the bits of k.
LucasTriple lucas_ladder(const Natural& n, const LucasParams& params, const Natural& k);

struct LadderStep {
  std::size_t bit_position = 0;  // 1-based from the most significant bit
  bool bit = false;
  LucasTriple doubled;
  std::optional<LucasTriple> incremented;

  bool operator==(const LadderStep&) const = default;
};

/// The ladder for subscript k with the triple(s) produced at every bit.
std::vector<LadderStep> lucas_ladder_trace(const Natural& n, const LucasParams& params,
                                           const Natural& k);

/// U_(n+1) = 0 (mod n).
Classification is_lprp(const Natural& n, const LucasParams& params);

struct SlprpOutcome {
  Classification classification;
  /// Present when n passed: the triple at subscript n + 1.
  std::optional<LucasTriple> at_n_plus_1;
  /// Q^((n+1)/2) mod n, picked up on the way to n + 1.
  std::optional<Natural> q_half_power;
};

/// U_d = 0 or V_(d 2^r) = 0 for some 0 <= r < s, where n + 1 = d 2^s. A
/// failing n stops at subscript (n+1)/2; a passing n continues to n + 1.
SlprpOutcome is_slprp(const Natural& n, const LucasParams& params);

/// V_(n+1) = 2Q (mod n). `at_n_plus_1.k` must equal n + 1 (ContractViolation).
Classification is_vprp(const Natural& n, const LucasParams& params,
                       const LucasTriple& at_n_plus_1);

/// Q^((n+1)/2) = Q (Q/n) (mod n). A zero Jacobi symbol with a proper
/// gcd(Q, n) yields a GcdFactor certificate; n | Q is a PreconditionError.
Classification euler_q_check(const Natural& n, const LucasParams& params, const Natural& q_power);

}  // namespace bpsw
