#pragma once

// Domain types shared by the classifiers, the parameter selectors, the
// pipeline and the census.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpsw/natural.hpp"

namespace bpsw {

/// How a set of Lucas parameters was chosen. The textual names (`A`, `A*`,
/// `B`, `B*`, `C`, `D`, `R`, `explicit`) are stable CLI identifiers.
enum class Method { A, AStar, B, BStar, C, D, R, Explicit };

std::string_view method_name(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

/// The triple (D, P, Q) with D = P^2 - 4Q.
///
/// `q_shift` lets Q denote a dyadic fraction: the effective parameter is
/// Q / 2^q_shift, resolved modulo n through the inverse of 2. It is zero for
/// every selection method; only the P = 1, Q = 1/2 family member uses it.
struct LucasParams {
  Integer D;
  Integer P;
  Integer Q;
  unsigned q_shift = 0;
  Method source = Method::Explicit;

  /// Builds params from P and Q, computing D.
  static LucasParams from_pq(Integer P, Integer Q, Method source = Method::Explicit);

  /// D * 2^q_shift == P^2 * 2^q_shift - 4Q and D != 0.
  bool is_consistent() const;

  bool operator==(const LucasParams&) const = default;
};

/// (U_k, V_k, Q^k) mod n at subscript k.
struct LucasTriple {
  Natural k;
  Natural u;
  Natural v;
  Natural qk;

  bool operator==(const LucasTriple&) const = default;
};

enum class Verdict { ProbablePrime, Composite };

enum class CertificateKind {
  SmallFactor,       // pre-sieve found a prime divisor (or n is even)
  GcdFactor,         // gcd of a base or of Q with n is a proper divisor
  ZeroJacobiFactor,  // (D/n) = 0 with gcd(D, n) a proper divisor
  PerfectSquare,
  FailedPrp,
  FailedEuler,
  FailedSprp,
  FailedLprp,
  FailedSlprp,
  FailedVprp,
  FailedEulerQ,
};

std::string_view certificate_kind_name(CertificateKind k) noexcept;
std::optional<CertificateKind> parse_certificate_kind(std::string_view name) noexcept;

/// Evidence that n is composite, re-checkable with verify_certificate().
///
/// `factor` holds a proper divisor (the root for PerfectSquare). `residues`
/// holds the failing residue chain for the congruence kinds:
///   FailedPrp     [a^(n-1)]
///   FailedEuler   [a^((n-1)/2), (a/n) mod n]
///   FailedSprp    [a^d, a^(2d), ...] up to where the test stopped
///   FailedLprp    [U_(n+1)]
///   FailedSlprp   [U_d, V_d, V_(2d), ..., V_(d 2^(s-1))]
///   FailedVprp    [V_(n+1), 2Q mod n]
///   FailedEulerQ  [Q^((n+1)/2), Q (Q/n) mod n]
struct CompositeCertificate {
  CertificateKind kind = CertificateKind::SmallFactor;
  Natural n;
  std::optional<Natural> factor;
  std::optional<Natural> base;
  std::vector<Natural> residues;
  std::optional<LucasParams> params;
  int step = 0;
  std::string detail;

  bool operator==(const CompositeCertificate&) const = default;
};

struct Classification {
  Verdict verdict = Verdict::ProbablePrime;
  std::optional<CompositeCertificate> certificate;

  bool probable_prime() const noexcept { return verdict == Verdict::ProbablePrime; }
  bool composite() const noexcept { return verdict == Verdict::Composite; }

  static Classification pass() { return {}; }
  static Classification fail(CompositeCertificate cert) {
    return {Verdict::Composite, std::move(cert)};
  }

  bool operator==(const Classification&) const = default;
};

}  // namespace bpsw
