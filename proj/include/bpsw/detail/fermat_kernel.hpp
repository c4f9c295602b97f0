#pragma once

#include <cstddef>
#include <vector>

#include "bpsw/detail/kernel.hpp"

namespace bpsw::detail {

/// Strong base-a test on n - 1 = d * 2^s. With `stop_early`, returns as soon
/// as the outcome is decided, which is at or before exponent (n-1)/2. The
/// visited powers a^(d 2^r) are appended to `chain` when it is non-null.
template <class Ring, class N>
bool strong_fermat(const Ring& r, const typename Ring::value_type& base, const N& n,
                   bool stop_early, std::vector<typename Ring::value_type>* chain) {
  const N n_minus_1 = n - N(1);
  const std::size_t s = trailing_zeros(n_minus_1);
  const N d = n_minus_1 >> s;
  const auto one = r.one();
  const auto minus_one = r.neg(one);

  auto x = pow(r, base, d);
  if (chain != nullptr) chain->push_back(x);
  bool strong = r.eq(x, one) || r.eq(x, minus_one);
  if (strong && stop_early) return true;
  for (std::size_t i = 1; i < s; ++i) {
    x = r.sqr(x);
    if (chain != nullptr) chain->push_back(x);
    if (!strong && r.eq(x, minus_one)) {
      strong = true;
      if (stop_early) return true;
    }
    // Once 1 appears without a preceding -1 the chain can never reach -1.
    if (stop_early && !strong && r.eq(x, one)) return false;
  }
  return strong;
}

struct FermatProfile {
  bool prp = false;
  bool euler = false;
  bool strong = false;
};

/// All three Fermat-family verdicts from one exponentiation chain.
/// `jacobi_an` is (a/n) and must be +1 or -1.
template <class Ring, class N>
FermatProfile fermat_profile(const Ring& r, const typename Ring::value_type& base, const N& n,
                             int jacobi_an) {
  const N n_minus_1 = n - N(1);
  const std::size_t s = trailing_zeros(n_minus_1);
  const auto one = r.one();
  const auto minus_one = r.neg(one);

  auto x = pow(r, base, n_minus_1 >> s);
  bool strong = r.eq(x, one) || r.eq(x, minus_one);
  for (std::size_t i = 1; i < s; ++i) {
    x = r.sqr(x);
    strong = strong || r.eq(x, minus_one);
  }
  // x is now a^((n-1)/2).
  FermatProfile out;
  out.strong = strong;
  out.euler = r.eq(x, jacobi_an > 0 ? one : minus_one);
  out.prp = r.eq(r.sqr(x), one);
  return out;
}

}  // namespace bpsw::detail
