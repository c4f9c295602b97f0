#pragma once

// Lucas parameter selection.
//
//   A   D in 5, -7, 9, -11, ... with (D/n) = -1; P = 1, Q = (1 - D)/4
//   A*  as A, but Q = -1 becomes P = Q = 5
//   B   D in 5, 9, 13, 17, ...; P smallest odd above sqrt(D), Q = (P^2 - D)/4
//   B*  as B, but Q = 1 becomes (P + 2, P + Q + 1)
//   C   as A* with D starting at 41: 41, -43, 45, -47, ...
//   D   Q = 2, P = 4, 5, 6, ... with D = P^2 - 8
//   R   P, Q uniform in [1, n - 1] from a seeded per-n stream
//
// Every method stops early with a certificate when a candidate has (D/n) = 0
// and gcd(D, n) is a proper divisor, and checks for a perfect square after 20
// candidates with (D/n) = +1. A proper gcd(Q, n) also yields a certificate.

#include <cstddef>
#include <cstdint>
#include <random>
#include <variant>

#include "bpsw/natural.hpp"
#include "bpsw/types.hpp"

namespace bpsw {

struct SelectionLimits {
  std::size_t max_candidates = 1000;
  std::size_t square_check_after = 20;
};

struct ExhaustedSearch {
  std::size_t candidates_tried = 0;

  bool operator==(const ExhaustedSearch&) const = default;
};

using SelectionOutcome = std::variant<LucasParams, CompositeCertificate, ExhaustedSearch>;

inline const LucasParams* selected_params(const SelectionOutcome& o) {
  return std::get_if<LucasParams>(&o);
}
inline const CompositeCertificate* selection_certificate(const SelectionOutcome& o) {
  return std::get_if<CompositeCertificate>(&o);
}
// Pointers into a temporary would dangle.
const LucasParams* selected_params(SelectionOutcome&&) = delete;
const CompositeCertificate* selection_certificate(SelectionOutcome&&) = delete;

/// Dispatches on `method`; `seed` is only used by Method R. n must be odd > 1
/// (DomainError otherwise). Method::Explicit is rejected.
SelectionOutcome select_params(const Natural& n, Method method, std::uint64_t seed = 0,
                               const SelectionLimits& limits = {});

SelectionOutcome select_method_a(const Natural& n, const SelectionLimits& limits = {});
SelectionOutcome select_method_a_star(const Natural& n, const SelectionLimits& limits = {});
SelectionOutcome select_method_b(const Natural& n, const SelectionLimits& limits = {});
SelectionOutcome select_method_b_star(const Natural& n, const SelectionLimits& limits = {});
SelectionOutcome select_method_c(const Natural& n, const SelectionLimits& limits = {});
SelectionOutcome select_method_d(const Natural& n, const SelectionLimits& limits = {});
SelectionOutcome select_method_r(const Natural& n, std::uint64_t seed,
                                 const SelectionLimits& limits = {});

/// Stream key for Method R: seed XOR a SplitMix64 hash of n's limbs.
std::uint64_t method_r_stream_key(const Natural& n, std::uint64_t seed);

/// Uniform draw from [1, n - 1] by rejection sampling on std::mt19937_64
/// output. Exposed for testing the generator contract.
class UniformResidueSource {
 public:
  UniformResidueSource(const Natural& n, std::uint64_t seed);
  Natural next();

 private:
  Natural max_offset_;  // n - 2
  std::size_t bits_;
  std::mt19937_64 engine_;
};

}  // namespace bpsw
