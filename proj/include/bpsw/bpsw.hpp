#pragma once

// Baillie-PSW pipelines.
//
//   original  1. strong base-2 test  2. select (D, P, Q)  3. strong Lucas test
//   enhanced  adds  4. V_(n+1) = 2Q (mod n)  5. Q^((n+1)/2) = Q (Q/n) (mod n)
//
// An optional trial-division pre-sieve runs first (step 0). Steps 4 and 5
// reuse the ladder state that step 3 leaves at subscript n + 1.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bpsw/natural.hpp"
#include "bpsw/params.hpp"
#include "bpsw/types.hpp"

namespace bpsw {

enum class Variant { Original, Enhanced };

std::string_view variant_name(Variant v) noexcept;
std::optional<Variant> parse_variant(std::string_view name) noexcept;

struct PipelineOptions {
  Variant variant = Variant::Enhanced;
  /// Trial division by every prime <= sieve_bound before step 1; 0 disables.
  std::uint64_t sieve_bound = 997;
  Method method = Method::AStar;
  std::uint64_t seed = 0;  // Method R only
  SelectionLimits limits;
  /// Research paths: skip the base-2 test and/or use fixed parameters.
  /// Either one also fills PipelineReport::diagnostics.
  bool skip_step1 = false;
  std::optional<LucasParams> params;
};

enum class ReportVerdict { ProbablePrime, Composite, Error };

std::string_view report_verdict_name(ReportVerdict v) noexcept;
std::optional<ReportVerdict> parse_report_verdict(std::string_view name) noexcept;

enum class StepStatus { Passed, Failed, Skipped };

std::string_view step_status_name(StepStatus s) noexcept;
std::optional<StepStatus> parse_step_status(std::string_view name) noexcept;

struct StepOutcome {
  int step = 0;  // 0 pre-sieve, 1 sprp(2), 2 selection, 3 slprp, 4 vprp, 5 Euler-Q
  std::string name;
  StepStatus status = StepStatus::Passed;
  std::string detail;

  bool operator==(const StepOutcome&) const = default;
};

/// Every Lucas-side check evaluated independently of the short circuit.
struct Diagnostics {
  std::optional<bool> sprp2;
  std::optional<bool> lprp;
  std::optional<bool> slprp;
  std::optional<bool> vprp;
  std::optional<bool> euler_q;

  bool operator==(const Diagnostics&) const = default;
};

struct PipelineReport {
  Natural n;
  Variant variant = Variant::Enhanced;
  Method method = Method::AStar;
  ReportVerdict verdict = ReportVerdict::Error;
  std::vector<StepOutcome> steps_run;
  std::optional<CompositeCertificate> certificate;
  std::optional<LucasParams> params;
  /// |Q| is a power of two, so (Q/n) is fixed by n mod 8 and step 5 adds
  /// little beyond step 4.
  bool euler_q_vacuous = false;
  std::optional<Diagnostics> diagnostics;
  std::string error;

  bool probable_prime() const noexcept { return verdict == ReportVerdict::ProbablePrime; }
  bool composite() const noexcept { return verdict == ReportVerdict::Composite; }

  bool operator==(const PipelineReport&) const = default;
};

/// Runs the configured variant. Never throws for n >= 0; invalid input (n < 2)
/// and an exhausted parameter search come back as ReportVerdict::Error.
PipelineReport run_pipeline(const Natural& n, const PipelineOptions& options = {});

PipelineReport bpsw_original(const Natural& n, PipelineOptions options = {});
PipelineReport bpsw_enhanced(const Natural& n, PipelineOptions options = {});

/// Plain boolean front end: enhanced test, default options.
bool is_probable_prime(const Natural& n);

struct CertificateCheck {
  bool valid = false;
  std::string reason;
};

/// Replays a certificate's evidence with the arithmetic and Lucas kernels.
CertificateCheck verify_certificate(const CompositeCertificate& cert);

/// P = 2^k, Q = 2^(2k-1), D = -4^k. For k = 0, Q = 1/2 (q_shift = 1).
LucasParams theorem1_params(unsigned k);

struct Theorem1Report {
  Natural n;
  unsigned k = 0;
  bool is_spsp2 = false;
  unsigned n_mod_4 = 0;
  bool hypotheses_hold = false;  // n odd composite-candidate, sprp(2), n = 3 (mod 4)
  /// Set whenever (D/n) = -1, i.e. n = 3 (mod 4), hypotheses or not.
  std::optional<bool> slprp;
  std::optional<bool> vprp;
  std::optional<bool> euler_q;
  /// True when the hypotheses hold and all three checks pass; false when
  /// the hypotheses hold and one fails; empty when the hypotheses fail.
  std::optional<bool> conclusions_hold;
};

Theorem1Report verify_theorem1(const Natural& n, unsigned k);

/// For r >= 1 returns a = 3 (mod 4) such that every prime p = a (mod 4r)
/// has r as a quadratic residue.
Natural lemma_qr_residue(const Natural& r);

struct WitnessOptions {
  std::uint64_t max_n = 10000;  // cost guard for the O(n^2) search
  bool require_psp2 = true;
};

/// True when n is lprp(P, Q) and vprp(P, Q) with (D/n) = -1, gcd(Q, n) = 1.
bool is_lprp_and_vprp(const Natural& n, const LucasParams& params);

/// First (P, Q) in lexicographic order over [1, n-1]^2 for which n is
/// lprp and vprp, provided n is psp(2) (when required). n must be an odd
/// composite not above max_n (PreconditionError otherwise).
std::optional<LucasParams> psp_lpsp_vpsp_witness(const Natural& n, const WitnessOptions& options = {});

}  // namespace bpsw
