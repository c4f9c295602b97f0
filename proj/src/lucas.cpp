#include "bpsw/lucas.hpp"

#include <string>

#include "bpsw/arith.hpp"
#include "bpsw/detail/lucas_kernel.hpp"
#include "bpsw/detail/ring.hpp"
#include "bpsw/errors.hpp"

namespace bpsw {

namespace {

void require_odd_modulus(const Natural& n) {
  if (n.is_even() || n <= Natural(1)) throw DomainError("n must be odd and greater than 1");
}

void require_lucas_preconditions(const Natural& n, const LucasParams& params) {
  require_odd_modulus(n);
  if (!params.is_consistent()) throw PreconditionError("parameters violate D = P^2 - 4Q, D != 0");
  if (jacobi(params.D, n) != -1) throw PreconditionError("(D/n) must be -1");
  if (gcd(resolve_q(params, n), n) != Natural(1)) throw PreconditionError("gcd(n, Q) must be 1");
}

template <class Ring>
LucasTriple to_triple(const Ring& r, const Natural& k, const detail::LadderState<Ring>& st) {
  return {k, r.to_natural(st.u), r.to_natural(st.v), r.to_natural(st.qk)};
}

CompositeCertificate lucas_failure(CertificateKind kind, const Natural& n,
                                   const LucasParams& params, std::vector<Natural> residues,
                                   std::string detail) {
  CompositeCertificate cert;
  cert.kind = kind;
  cert.n = n;
  cert.params = params;
  cert.residues = std::move(residues);
  cert.detail = std::move(detail);
  return cert;
}

}  // namespace

Natural resolve_q(const LucasParams& params, const Natural& n) {
  Natural q = canonical_residue(params.Q, n);
  if (params.q_shift == 0) return q;
  const auto half = mod_inverse(Natural(2), n);
  if (!half) throw PreconditionError("Q has a power-of-two denominator but n is even");
  for (unsigned i = 0; i < params.q_shift; ++i) q = (q * *half) % n;
  return q;
}

Natural delta_index(const Natural& n, const Integer& D) {
  const int j = jacobi(D, n);
  if (j >= 0) return n - Natural(j);
  return n + Natural(1);
}

LucasTriple lucas_naive(const Natural& n, const LucasParams& params, std::uint64_t k) {
  require_odd_modulus(n);
  const Integer& m = n.mpz();
  auto mod = [&](Integer x) {
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return x;
  };
  const Integer p = mod(params.P);
  const Integer q = resolve_q(params, n).mpz();

  if (k == 0) return {Natural(0), Natural(0), Natural(mod(Integer(2))), Natural(1)};

  Integer u_prev = 0, u = 1;
  Integer v_prev = mod(Integer(2)), v = p;
  Integer qk = q;
  for (std::uint64_t i = 1; i < k; ++i) {
    Integer u_next = mod(p * u - q * u_prev);
    Integer v_next = mod(p * v - q * v_prev);
    u_prev = std::move(u);
    u = std::move(u_next);
    v_prev = std::move(v);
    v = std::move(v_next);
    qk = mod(qk * q);
  }
  return {Natural(k), Natural(u), Natural(v), Natural(qk)};
}

LucasTriple lucas_ladder(const Natural& n, const LucasParams& params, const Natural& k) {
  require_odd_modulus(n);
  return detail::with_ring(n, [&](const auto& ring, const auto&) {
    const auto pr = detail::to_ring(ring, params);
    return to_triple(ring, k, detail::ladder(ring, pr, k));
  });
}

std::vector<LadderStep> lucas_ladder_trace(const Natural& n, const LucasParams& params,
                                           const Natural& k) {
  require_odd_modulus(n);
  std::vector<LadderStep> steps;
  detail::BigRing ring(n);
  const auto pr = detail::to_ring(ring, params);
  Natural prefix(0);
  detail::ladder(ring, pr, k,
                 [&](std::size_t position, bool bit, const auto& doubled, const auto* incremented) {
                   LadderStep step;
                   step.bit_position = position;
                   step.bit = bit;
                   prefix <<= 1;
                   step.doubled = to_triple(ring, prefix, doubled);
                   if (incremented != nullptr) {
                     prefix += Natural(1);
                     step.incremented = to_triple(ring, prefix, *incremented);
                   }
                   steps.push_back(std::move(step));
                 });
  return steps;
}

Classification is_lprp(const Natural& n, const LucasParams& params) {
  require_lucas_preconditions(n, params);
  const LucasTriple t = lucas_ladder(n, params, n + Natural(1));
  if (t.u.is_zero()) return Classification::pass();
  return Classification::fail(lucas_failure(CertificateKind::FailedLprp, n, params, {t.u},
                                            "U_(n+1) != 0 (mod n)"));
}

SlprpOutcome is_slprp(const Natural& n, const LucasParams& params) {
  require_lucas_preconditions(n, params);
  return detail::with_ring(n, [&](const auto& ring, const auto& nn) {
    const auto pr = detail::to_ring(ring, params);
    const auto run = detail::strong_lucas(ring, pr, nn, true, true);
    SlprpOutcome out;
    if (run.strong) {
      out.classification = Classification::pass();
      out.at_n_plus_1 = to_triple(ring, n + Natural(1), run.last);
      out.q_half_power = ring.to_natural(run.q_half);
      return out;
    }
    std::vector<Natural> residues;
    for (const auto& x : run.chain) residues.push_back(ring.to_natural(x));
    const std::size_t s = (n + Natural(1)).trailing_zeros();
    out.classification = Classification::fail(lucas_failure(
        CertificateKind::FailedSlprp, n, params, std::move(residues),
        "U_d != 0 and V_(d 2^r) != 0 for 0 <= r < " + std::to_string(s)));
    return out;
  });
}

Classification is_vprp(const Natural& n, const LucasParams& params,
                       const LucasTriple& at_n_plus_1) {
  require_odd_modulus(n);
  if (at_n_plus_1.k != n + Natural(1)) {
    throw ContractViolation("is_vprp needs the Lucas triple at subscript n + 1");
  }
  if (jacobi(params.D, n) != -1) throw PreconditionError("(D/n) must be -1");
  const Natural two_q = (resolve_q(params, n) << 1) % n;
  if (at_n_plus_1.v == two_q) return Classification::pass();
  return Classification::fail(lucas_failure(CertificateKind::FailedVprp, n, params,
                                            {at_n_plus_1.v, two_q}, "V_(n+1) != 2Q (mod n)"));
}

Classification euler_q_check(const Natural& n, const LucasParams& params, const Natural& q_power) {
  require_odd_modulus(n);
  const Natural q = resolve_q(params, n);
  const int j = jacobi(q.mpz(), n);
  if (j == 0) {
    const Natural g = gcd(q, n);
    if (g == n) throw PreconditionError("n divides Q");
    CompositeCertificate cert;
    cert.kind = CertificateKind::GcdFactor;
    cert.n = n;
    cert.factor = g;
    cert.params = params;
    cert.detail = "(Q/n) = 0 with gcd(Q, n) a proper divisor";
    return Classification::fail(std::move(cert));
  }
  const Natural expected = j > 0 ? q : (n - q) % n;
  if (q_power % n == expected) return Classification::pass();
  return Classification::fail(lucas_failure(CertificateKind::FailedEulerQ, n, params,
                                            {q_power % n, expected},
                                            "Q^((n+1)/2) != Q (Q/n) (mod n)"));
}

}  // namespace bpsw
