#pragma once

// Lucas-sequence ladder over a residue ring.
//
// The state is (U_k, V_k, Q^k). Doubling uses
//   U_2k = U_k V_k,  V_2k = V_k^2 - 2 Q^k,  Q^2k = (Q^k)^2
// and incrementing uses
//   U_k+1 = (P U_k + V_k) / 2,  V_k+1 = (D U_k + P V_k) / 2,  Q^k+1 = Q Q^k
// where the halving adds n to an odd numerator (n is odd).

#include <cstddef>
#include <vector>

#include "bpsw/detail/kernel.hpp"
#include "bpsw/types.hpp"

namespace bpsw::detail {

template <class Ring>
struct RingParams {
  typename Ring::value_type p;
  typename Ring::value_type q;
  typename Ring::value_type d;
};

template <class Ring>
RingParams<Ring> to_ring(const Ring& r, const LucasParams& params) {
  auto q = r.from_integer(params.Q);
  for (unsigned i = 0; i < params.q_shift; ++i) q = r.half(q);
  return {r.from_integer(params.P), q, r.from_integer(params.D)};
}

template <class Ring>
struct LadderState {
  typename Ring::value_type u;
  typename Ring::value_type v;
  typename Ring::value_type qk;
};

template <class Ring>
LadderState<Ring> ladder_start(const Ring& r) {
  return {r.zero(), r.add(r.one(), r.one()), r.one()};
}

template <class Ring>
void double_step(const Ring& r, LadderState<Ring>& st) {
  st.u = r.mul(st.u, st.v);
  st.v = r.sub(r.sqr(st.v), r.add(st.qk, st.qk));
  st.qk = r.sqr(st.qk);
}

template <class Ring>
void increment_step(const Ring& r, const RingParams<Ring>& pr, LadderState<Ring>& st) {
  auto u = r.half(r.add(r.mul(pr.p, st.u), st.v));
  auto v = r.half(r.add(r.mul(pr.d, st.u), r.mul(pr.p, st.v)));
  st.u = std::move(u);
  st.v = std::move(v);
  st.qk = r.mul(pr.q, st.qk);
}

struct NoLadderTrace {
  template <class S>
  void operator()(std::size_t, bool, const S&, const S*) const noexcept {}
};

/// Ladder to subscript k, bits most-significant first. `on_bit(position, bit,
/// doubled, incremented_or_null)` fires once per bit of k.
template <class Ring, class Exp, class OnBit = NoLadderTrace>
LadderState<Ring> ladder(const Ring& r, const RingParams<Ring>& pr, const Exp& k,
                         OnBit&& on_bit = {}) {
  LadderState<Ring> st = ladder_start(r);
  const std::size_t bits = bit_length(k);
  for (std::size_t i = bits; i-- > 0;) {
    double_step(r, st);
    if (test_bit(k, i)) {
      const LadderState<Ring> doubled = st;
      increment_step(r, pr, st);
      on_bit(bits - i, true, doubled, &st);
    } else {
      on_bit(bits - i, false, st, static_cast<const LadderState<Ring>*>(nullptr));
    }
  }
  return st;
}

template <class Ring>
struct StrongLucasRun {
  bool strong = false;
  bool completed = false;                 // ladder reached n + 1
  LadderState<Ring> last{};               // state at n + 1 when completed
  typename Ring::value_type q_half{};     // Q^((n+1)/2)
  std::vector<typename Ring::value_type> chain;  // U_d, V_d, V_2d, ... when recorded
};

/// Strong Lucas test on n + 1 = d 2^s with (D/n) = -1 assumed by the caller.
/// Passes when U_d = 0 or V_(d 2^r) = 0 for some 0 <= r < s. With
/// `stop_on_composite` a failing n stops at subscript (n+1)/2; otherwise the
/// ladder always continues to n + 1.
template <class Ring, class N>
StrongLucasRun<Ring> strong_lucas(const Ring& r, const RingParams<Ring>& pr, const N& n,
                                  bool stop_on_composite, bool record_chain) {
  StrongLucasRun<Ring> run;
  const N m = n + N(1);
  const std::size_t s = trailing_zeros(m);
  const std::size_t bits = bit_length(m);
  LadderState<Ring> st = ladder_start(r);
  for (std::size_t i = bits; i-- > 0;) {
    double_step(r, st);
    if (test_bit(m, i)) increment_step(r, pr, st);
    // After bit i the subscript is m >> i.
    if (i == s) {
      if (record_chain) {
        run.chain.push_back(st.u);
        run.chain.push_back(st.v);
      }
      run.strong = r.is_zero(st.u) || r.is_zero(st.v);
    } else if (i < s && i >= 1) {
      if (record_chain) run.chain.push_back(st.v);
      run.strong = run.strong || r.is_zero(st.v);
    }
    if (i == 1) {
      run.q_half = st.qk;
      if (stop_on_composite && !run.strong) {
        run.last = st;
        return run;
      }
    }
  }
  run.completed = true;
  run.last = st;
  return run;
}

}  // namespace bpsw::detail
