#include "bpsw/bpsw.hpp"

#include <array>
#include <cstdlib>
#include <stdexcept>

#include "bpsw/arith.hpp"
#include "bpsw/detail/lucas_kernel.hpp"
#include "bpsw/detail/ring.hpp"
#include "bpsw/errors.hpp"
#include "bpsw/fermat.hpp"
#include "bpsw/lucas.hpp"

namespace bpsw {

namespace {

constexpr std::array<std::string_view, 2> kVariantNames{"original", "enhanced"};
constexpr std::array<std::string_view, 3> kVerdictNames{"probable-prime", "composite", "error"};
constexpr std::array<std::string_view, 3> kStatusNames{"passed", "failed", "skipped"};

template <class E, std::size_t N>
std::optional<E> parse_enum(const std::array<std::string_view, N>& names, std::string_view s) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<E>(i);
  }
  return std::nullopt;
}

bool is_power_of_two(const Integer& x) {
  if (sgn(x) == 0) return false;
  const Integer m = abs(x);
  return mpz_popcount(m.get_mpz_t()) == 1;
}

bool divisible(const Natural& n, std::uint64_t p) {
  return mpz_divisible_ui_p(n.mpz().get_mpz_t(), static_cast<unsigned long>(p)) != 0;
}

const std::vector<std::uint64_t>& sieve_primes(std::uint64_t bound) {
  // The default bound is hit on every call; cache it.
  static const std::vector<std::uint64_t> default_primes = small_prime_sieve(998);
  if (bound == 997) return default_primes;
  thread_local std::uint64_t cached_bound = 0;
  thread_local std::vector<std::uint64_t> cached;
  if (cached_bound != bound) {
    cached = small_prime_sieve(bound + 1);
    cached_bound = bound;
  }
  return cached;
}

class Pipeline {
 public:
  Pipeline(const Natural& n, const PipelineOptions& opt) : n_(n), opt_(opt) {
    rep_.n = n;
    rep_.variant = opt.variant;
    rep_.method = opt.params ? Method::Explicit : opt.method;
  }

  PipelineReport run() {
    try {
      run_steps();
    } catch (const std::exception& e) {
      rep_.verdict = ReportVerdict::Error;
      rep_.certificate.reset();
      rep_.error = e.what();
    }
    return std::move(rep_);
  }

 private:
  void step(int number, std::string name, StepStatus status, std::string detail = {}) {
    rep_.steps_run.push_back({number, std::move(name), status, std::move(detail)});
  }

  void prime() { rep_.verdict = ReportVerdict::ProbablePrime; }

  void composite(int number, std::string name, CompositeCertificate cert) {
    cert.step = number;
    step(number, std::move(name), StepStatus::Failed, cert.detail);
    rep_.verdict = ReportVerdict::Composite;
    rep_.certificate = std::move(cert);
  }

  void error(std::string message) {
    rep_.verdict = ReportVerdict::Error;
    rep_.error = std::move(message);
  }

  // Returns false when the pre-sieve settled the question.
  bool presieve() {
    if (n_ == Natural(2)) {
      step(0, "pre-sieve", StepStatus::Passed, "n = 2");
      prime();
      return false;
    }
    if (n_.is_even()) {
      CompositeCertificate cert;
      cert.kind = CertificateKind::SmallFactor;
      cert.n = n_;
      cert.factor = Natural(2);
      cert.detail = "n is even";
      composite(0, "pre-sieve", std::move(cert));
      return false;
    }
    if (opt_.sieve_bound < 3) return true;
    for (std::uint64_t p : sieve_primes(opt_.sieve_bound)) {
      if (p == 2) continue;
      if (n_ == Natural(p)) {
        step(0, "pre-sieve", StepStatus::Passed, "n is a sieve prime");
        prime();
        return false;
      }
      if (divisible(n_, p)) {
        CompositeCertificate cert;
        cert.kind = CertificateKind::SmallFactor;
        cert.n = n_;
        cert.factor = Natural(p);
        cert.detail = "divisible by " + std::to_string(p);
        composite(0, "pre-sieve", std::move(cert));
        return false;
      }
    }
    step(0, "pre-sieve", StepStatus::Passed,
         "no prime factor up to " + std::to_string(opt_.sieve_bound));
    return true;
  }

  // Explicit parameters get the same scrutiny selection applies.
  bool check_explicit(const LucasParams& params) {
    if (!params.is_consistent()) {
      error("explicit parameters violate D = P^2 - 4Q, D != 0");
      return false;
    }
    const int j = jacobi(params.D, n_);
    if (j == 0) {
      const Natural g = gcd(Natural(Integer(abs(params.D))), n_);
      if (g == n_) {
        error("n divides D");
        return false;
      }
      CompositeCertificate cert;
      cert.kind = CertificateKind::ZeroJacobiFactor;
      cert.n = n_;
      cert.factor = g;
      cert.params = params;
      cert.detail = "(D/n) = 0 with gcd(D, n) a proper divisor";
      composite(2, "select-params", std::move(cert));
      return false;
    }
    if (j == 1) {
      error("explicit parameters need (D/n) = -1");
      return false;
    }
    const Natural g = gcd(resolve_q(params, n_), n_);
    if (g == n_) {
      error("n divides Q");
      return false;
    }
    if (g != Natural(1)) {
      CompositeCertificate cert;
      cert.kind = CertificateKind::GcdFactor;
      cert.n = n_;
      cert.factor = g;
      cert.params = params;
      cert.detail = "gcd(Q, n) is a proper divisor";
      composite(2, "select-params", std::move(cert));
      return false;
    }
    return true;
  }

  std::optional<LucasParams> choose_params() {
    if (opt_.params) {
      if (!check_explicit(*opt_.params)) return std::nullopt;
      step(2, "select-params", StepStatus::Passed, "explicit parameters");
      return opt_.params;
    }
    SelectionOutcome sel = select_params(n_, opt_.method, opt_.seed, opt_.limits);
    if (auto* p = std::get_if<LucasParams>(&sel)) {
      step(2, "select-params", StepStatus::Passed, std::string("method ") +
                                                       std::string(method_name(opt_.method)));
      return *p;
    }
    if (auto* cert = std::get_if<CompositeCertificate>(&sel)) {
      composite(2, "select-params", std::move(*cert));
      return std::nullopt;
    }
    const auto tried = std::get<ExhaustedSearch>(sel).candidates_tried;
    step(2, "select-params", StepStatus::Failed,
         "no suitable parameters in " + std::to_string(tried) + " candidates");
    error("parameter search exhausted");
    return std::nullopt;
  }

  void fill_diagnostics(const LucasParams& params) {
    Diagnostics d;
    if (n_ > Natural(2)) d.sprp2 = is_sprp(n_, Natural(2)).probable_prime();
    d.lprp = is_lprp(n_, params).probable_prime();
    d.slprp = is_slprp(n_, params).classification.probable_prime();
    const LucasTriple at_n1 = lucas_ladder(n_, params, n_ + Natural(1));
    d.vprp = is_vprp(n_, params, at_n1).probable_prime();
    const LucasTriple half = lucas_ladder(n_, params, (n_ + Natural(1)) >> 1);
    d.euler_q = euler_q_check(n_, params, half.qk).probable_prime();
    rep_.diagnostics = d;
  }

  void run_steps() {
    if (n_ < Natural(2)) {
      error("n must be at least 2");
      return;
    }
    if (!presieve()) return;

    if (opt_.skip_step1) {
      step(1, "sprp-base-2", StepStatus::Skipped, "skipped on request");
    } else {
      Classification c = is_sprp(n_, Natural(2));
      if (c.composite()) {
        composite(1, "sprp-base-2", std::move(*c.certificate));
        return;
      }
      step(1, "sprp-base-2", StepStatus::Passed);
    }

    const std::optional<LucasParams> params = choose_params();
    if (!params) return;
    rep_.params = params;
    if (opt_.skip_step1 || opt_.params) fill_diagnostics(*params);

    SlprpOutcome slprp = is_slprp(n_, *params);
    if (slprp.classification.composite()) {
      composite(3, "strong-lucas", std::move(*slprp.classification.certificate));
      return;
    }
    step(3, "strong-lucas", StepStatus::Passed);
    if (opt_.variant == Variant::Original) {
      prime();
      return;
    }

    Classification v = is_vprp(n_, *params, *slprp.at_n_plus_1);
    if (v.composite()) {
      composite(4, "lucas-v", std::move(*v.certificate));
      return;
    }
    step(4, "lucas-v", StepStatus::Passed);

    Classification e = euler_q_check(n_, *params, *slprp.q_half_power);
    if (e.composite()) {
      composite(5, "euler-q", std::move(*e.certificate));
      return;
    }
    rep_.euler_q_vacuous = !opt_.skip_step1 && is_power_of_two(params->Q);
    step(5, "euler-q", StepStatus::Passed,
         rep_.euler_q_vacuous ? "vacuous: |Q| is a power of two" : "");
    prime();
  }

  const Natural& n_;
  const PipelineOptions& opt_;
  PipelineReport rep_;
};

CertificateCheck ok() { return {true, {}}; }
CertificateCheck bad(std::string why) { return {false, std::move(why)}; }

CertificateCheck check_factor(const CompositeCertificate& c) {
  if (!c.factor) return bad("missing factor");
  const Natural& f = *c.factor;
  if (f <= Natural(1) || f >= c.n) return bad("factor is not a proper divisor");
  if (!(c.n % f).is_zero()) return bad("factor does not divide n");
  return ok();
}

CertificateCheck same_failure(const CompositeCertificate& c, const Classification& redo) {
  if (!redo.composite() || !redo.certificate) return bad("recomputation passes");
  if (redo.certificate->kind != c.kind) return bad("recomputation fails differently");
  if (!c.residues.empty() && c.residues != redo.certificate->residues) {
    return bad("recorded residues do not match recomputation");
  }
  return ok();
}

bool lucas_ready(const CompositeCertificate& c, std::string& why) {
  if (!c.params) {
    why = "missing parameters";
    return false;
  }
  if (!c.params->is_consistent()) {
    why = "inconsistent parameters";
    return false;
  }
  if (jacobi(c.params->D, c.n) != -1) {
    why = "(D/n) != -1";
    return false;
  }
  return true;
}

}  // namespace

std::string_view variant_name(Variant v) noexcept { return kVariantNames[static_cast<int>(v)]; }
std::optional<Variant> parse_variant(std::string_view name) noexcept {
  return parse_enum<Variant>(kVariantNames, name);
}
std::string_view report_verdict_name(ReportVerdict v) noexcept {
  return kVerdictNames[static_cast<int>(v)];
}
std::optional<ReportVerdict> parse_report_verdict(std::string_view name) noexcept {
  return parse_enum<ReportVerdict>(kVerdictNames, name);
}
std::string_view step_status_name(StepStatus s) noexcept {
  return kStatusNames[static_cast<int>(s)];
}
std::optional<StepStatus> parse_step_status(std::string_view name) noexcept {
  return parse_enum<StepStatus>(kStatusNames, name);
}

PipelineReport run_pipeline(const Natural& n, const PipelineOptions& options) {
  return Pipeline(n, options).run();
}

PipelineReport bpsw_original(const Natural& n, PipelineOptions options) {
  options.variant = Variant::Original;
  return run_pipeline(n, options);
}

PipelineReport bpsw_enhanced(const Natural& n, PipelineOptions options) {
  options.variant = Variant::Enhanced;
  return run_pipeline(n, options);
}

bool is_probable_prime(const Natural& n) { return bpsw_enhanced(n).probable_prime(); }

CertificateCheck verify_certificate(const CompositeCertificate& c) {
  try {
    if (c.n <= Natural(3)) return bad("n is too small to be composite");
    switch (c.kind) {
      case CertificateKind::SmallFactor:
        return check_factor(c);
      case CertificateKind::GcdFactor: {
        if (auto r = check_factor(c); !r.valid) return r;
        if (c.base) {
          return gcd(*c.base, c.n) == *c.factor ? ok() : bad("gcd(a, n) differs from factor");
        }
        if (c.params) {
          return gcd(resolve_q(*c.params, c.n), c.n) == *c.factor
                     ? ok()
                     : bad("gcd(Q, n) differs from factor");
        }
        return ok();
      }
      case CertificateKind::ZeroJacobiFactor: {
        if (auto r = check_factor(c); !r.valid) return r;
        if (!c.params) return ok();
        const Natural g = gcd(Natural(Integer(abs(c.params->D))), c.n);
        return g == *c.factor ? ok() : bad("gcd(D, n) differs from factor");
      }
      case CertificateKind::PerfectSquare: {
        if (!c.factor || *c.factor <= Natural(1)) return bad("missing root");
        return *c.factor * *c.factor == c.n ? ok() : bad("root squared is not n");
      }
      case CertificateKind::FailedPrp:
      case CertificateKind::FailedEuler:
      case CertificateKind::FailedSprp: {
        if (!c.base) return bad("missing base");
        if (c.n.is_even()) return bad("n must be odd");
        const Classification redo = c.kind == CertificateKind::FailedPrp ? is_prp(c.n, *c.base)
                                    : c.kind == CertificateKind::FailedEuler
                                        ? is_epsp_condition(c.n, *c.base)
                                        : is_sprp(c.n, *c.base);
        return same_failure(c, redo);
      }
      case CertificateKind::FailedLprp:
      case CertificateKind::FailedSlprp:
      case CertificateKind::FailedVprp:
      case CertificateKind::FailedEulerQ: {
        if (c.n.is_even()) return bad("n must be odd");
        std::string why;
        if (!lucas_ready(c, why)) return bad(why);
        const LucasParams& p = *c.params;
        if (c.kind == CertificateKind::FailedLprp) return same_failure(c, is_lprp(c.n, p));
        if (c.kind == CertificateKind::FailedSlprp) {
          return same_failure(c, is_slprp(c.n, p).classification);
        }
        if (c.kind == CertificateKind::FailedVprp) {
          return same_failure(c, is_vprp(c.n, p, lucas_ladder(c.n, p, c.n + Natural(1))));
        }
        const LucasTriple half = lucas_ladder(c.n, p, (c.n + Natural(1)) >> 1);
        return same_failure(c, euler_q_check(c.n, p, half.qk));
      }
    }
    return bad("unknown certificate kind");
  } catch (const std::exception& e) {
    return bad(e.what());
  }
}

LucasParams theorem1_params(unsigned k) {
  LucasParams p;
  p.source = Method::Explicit;
  if (k == 0) {
    // Q = 2^-1: stored as 1 with one halving.
    p.P = 1;
    p.Q = 1;
    p.q_shift = 1;
    p.D = -1;
    return p;
  }
  mpz_ui_pow_ui(p.P.get_mpz_t(), 2, k);
  mpz_ui_pow_ui(p.Q.get_mpz_t(), 2, 2 * k - 1);
  mpz_ui_pow_ui(p.D.get_mpz_t(), 4, k);
  p.D = -p.D;
  return p;
}

Theorem1Report verify_theorem1(const Natural& n, unsigned k) {
  Theorem1Report rep;
  rep.n = n;
  rep.k = k;
  rep.n_mod_4 = static_cast<unsigned>(mpz_fdiv_ui(n.mpz().get_mpz_t(), 4));
  if (n.is_even() || n <= Natural(2)) return rep;
  rep.is_spsp2 = is_sprp(n, Natural(2)).probable_prime();
  rep.hypotheses_hold = rep.is_spsp2 && rep.n_mod_4 == 3;
  if (rep.n_mod_4 != 3) return rep;

  const LucasParams params = theorem1_params(k);
  rep.slprp = is_slprp(n, params).classification.probable_prime();
  const LucasTriple at_n1 = lucas_ladder(n, params, n + Natural(1));
  rep.vprp = is_vprp(n, params, at_n1).probable_prime();
  const LucasTriple half = lucas_ladder(n, params, (n + Natural(1)) >> 1);
  rep.euler_q = euler_q_check(n, params, half.qk).probable_prime();
  if (rep.hypotheses_hold) rep.conclusions_hold = *rep.slprp && *rep.vprp && *rep.euler_q;
  return rep;
}

Natural lemma_qr_residue(const Natural& r) {
  if (r.is_zero()) throw DomainError("r must be at least 1");
  const std::size_t s = r.trailing_zeros();
  const Natural t = r >> s;
  const bool t_is_1_mod_4 = !t.bit(1);
  Natural a = t_is_1_mod_4 ? Natural(1) + (t << 1) : (t << 2) - Natural(1);
  if (s % 2 == 1) a += t << 2;
  return a;
}

bool is_lprp_and_vprp(const Natural& n, const LucasParams& params) {
  if (n.is_even() || n <= Natural(1) || !params.is_consistent()) return false;
  if (jacobi(params.D, n) != -1) return false;
  const Natural q = resolve_q(params, n);
  if (gcd(q, n) != Natural(1)) return false;
  const LucasTriple t = lucas_ladder(n, params, n + Natural(1));
  return t.u.is_zero() && t.v == (q << 1) % n;
}

std::optional<LucasParams> psp_lpsp_vpsp_witness(const Natural& n, const WitnessOptions& options) {
  if (n.is_even() || n <= Natural(1)) throw DomainError("n must be odd and greater than 1");
  constexpr std::uint64_t kHardCap = std::uint64_t{1} << 31;
  if (n > Natural(options.max_n) || n >= Natural(kHardCap)) {
    throw PreconditionError("n exceeds the exhaustive-search limit of " +
                            std::to_string(std::min(options.max_n, kHardCap - 1)));
  }
  const std::uint64_t w = n.to_u64();
  bool has_factor = false;
  for (std::uint64_t p = 3; p * p <= w && !has_factor; p += 2) has_factor = w % p == 0;
  if (!has_factor) throw PreconditionError("n is prime; witnesses exist only for composites");
  if (options.require_psp2 && mod_pow(Natural(2), n - Natural(1), n) != Natural(1)) {
    return std::nullopt;
  }

  const detail::MontgomeryRing ring(w);
  const auto i64 = static_cast<std::int64_t>(w);
  for (std::int64_t P = 1; P < i64; ++P) {
    for (std::int64_t Q = 1; Q < i64; ++Q) {
      const std::int64_t D = P * P - 4 * Q;
      if (D == 0 || detail::jacobi_signed(D, w) != -1) continue;
      if (gcd(static_cast<std::uint64_t>(Q), w) != 1) continue;
      const detail::RingParams<detail::MontgomeryRing> pr{ring.from_i64(P), ring.from_i64(Q),
                                                          ring.from_i64(D)};
      const auto st = detail::ladder(ring, pr, w + 1);
      if (ring.is_zero(st.u) && ring.eq(st.v, ring.add(pr.q, pr.q))) {
        return LucasParams::from_pq(Integer(static_cast<long>(P)), Integer(static_cast<long>(Q)),
                                    Method::Explicit);
      }
    }
  }
  return std::nullopt;
}

}  // namespace bpsw
