#include "bpsw/fermat.hpp"

#include <string>

#include "bpsw/arith.hpp"
#include "bpsw/detail/fermat_kernel.hpp"
#include "bpsw/detail/ring.hpp"
#include "bpsw/errors.hpp"

namespace bpsw {

namespace {

void require_odd_above(const Natural& n, const Natural& floor, const char* what) {
  if (n.is_even() || n <= floor) {
    throw DomainError(std::string(what) + ": n must be odd and greater than " + floor.to_string());
  }
}

// Shared gcd(a, n) gate: a proper common factor decides the question.
std::optional<Classification> base_gate(const Natural& n, const Natural& a) {
  const Natural g = gcd(a % n, n);
  if (g == n) throw PreconditionError("base is divisible by n");
  if (g != Natural(1)) {
    CompositeCertificate cert;
    cert.kind = CertificateKind::GcdFactor;
    cert.n = n;
    cert.factor = g;
    cert.base = a;
    cert.detail = "gcd(a, n) is a proper divisor";
    return Classification::fail(std::move(cert));
  }
  return std::nullopt;
}

CompositeCertificate congruence_failure(CertificateKind kind, const Natural& n, const Natural& a,
                                        std::vector<Natural> residues, std::string detail) {
  CompositeCertificate cert;
  cert.kind = kind;
  cert.n = n;
  cert.base = a;
  cert.residues = std::move(residues);
  cert.detail = std::move(detail);
  return cert;
}

}  // namespace

StrongDecomposition decompose(const Natural& n, Direction direction) {
  require_odd_above(n, Natural(1), "decompose");
  const Natural m = direction == Direction::MinusOne ? n - Natural(1) : n + Natural(1);
  const std::size_t s = m.trailing_zeros();
  return {m >> s, s, direction};
}

Classification is_prp(const Natural& n, const Natural& a) {
  require_odd_above(n, Natural(1), "is_prp");
  if (auto gate = base_gate(n, a)) return *gate;
  const Natural r = mod_pow(a, n - Natural(1), n);
  if (r == Natural(1)) return Classification::pass();
  return Classification::fail(
      congruence_failure(CertificateKind::FailedPrp, n, a, {r}, "a^(n-1) != 1 (mod n)"));
}

Classification is_epsp_condition(const Natural& n, const Natural& a) {
  require_odd_above(n, Natural(1), "is_epsp_condition");
  if (auto gate = base_gate(n, a)) return *gate;
  const int j = jacobi(a.mpz(), n);
  const Natural expected = j > 0 ? Natural(1) : n - Natural(1);
  const Natural r = mod_pow(a, (n - Natural(1)) >> 1, n);
  if (r == expected) return Classification::pass();
  return Classification::fail(congruence_failure(CertificateKind::FailedEuler, n, a, {r, expected},
                                                 "a^((n-1)/2) != (a/n) (mod n)"));
}

Classification is_sprp(const Natural& n, const Natural& a) {
  require_odd_above(n, Natural(2), "is_sprp");
  if (auto gate = base_gate(n, a)) return *gate;
  std::vector<Natural> chain;
  const bool strong = detail::with_ring(n, [&](const auto& ring, const auto& nn) {
    std::vector<typename std::decay_t<decltype(ring)>::value_type> raw;
    const bool ok = detail::strong_fermat(ring, ring.from_natural(a), nn, true, &raw);
    if (!ok) {
      for (const auto& x : raw) chain.push_back(ring.to_natural(x));
    }
    return ok;
  });
  if (strong) return Classification::pass();
  return Classification::fail(congruence_failure(
      CertificateKind::FailedSprp, n, a, std::move(chain),
      "a^d != 1 and a^(d 2^r) != -1 for every visited r"));
}

}  // namespace bpsw
