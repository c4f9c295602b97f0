#include "bpsw/params.hpp"

#include "bpsw/arith.hpp"
#include "bpsw/detail/select_kernel.hpp"
#include "bpsw/errors.hpp"

namespace bpsw {

namespace {

void require_odd_modulus(const Natural& n) {
  if (n.is_even() || n <= Natural(1)) throw DomainError("n must be odd and greater than 1");
}

Integer to_integer(std::int64_t x) { return Integer(static_cast<long>(x)); }

LucasParams params_from(const detail::Candidate& c, Method m) {
  LucasParams p;
  p.D = to_integer(c.D);
  p.P = to_integer(c.P);
  p.Q = to_integer(c.Q);
  p.source = m;
  return p;
}

CompositeCertificate selection_cert(CertificateKind kind, const Natural& n, Natural factor,
                                    LucasParams params, std::string detail) {
  CompositeCertificate cert;
  cert.kind = kind;
  cert.n = n;
  cert.factor = std::move(factor);
  cert.params = std::move(params);
  cert.detail = std::move(detail);
  return cert;
}

template <class N>
SelectionOutcome finish(const Natural& n, Method m, const detail::SmallSelection<N>& sel) {
  using detail::SelectStatus;
  const LucasParams params = params_from(sel.candidate, m);
  switch (sel.status) {
    case SelectStatus::Params:
      return params;
    case SelectStatus::ZeroJacobi:
      return selection_cert(CertificateKind::ZeroJacobiFactor, n, Natural(sel.factor), params,
                            "(D/n) = 0 with gcd(D, n) a proper divisor");
    case SelectStatus::QFactor:
      return selection_cert(CertificateKind::GcdFactor, n, Natural(sel.factor), params,
                            "gcd(Q, n) is a proper divisor");
    case SelectStatus::Square:
      return selection_cert(CertificateKind::PerfectSquare, n, Natural(sel.factor), params,
                            "n is a perfect square");
    case SelectStatus::Exhausted:
      break;
  }
  return ExhaustedSearch{sel.tried};
}

SelectionOutcome select_deterministic(const Natural& n, Method m, const SelectionLimits& limits) {
  require_odd_modulus(n);
  const detail::SelectionLimitsLite lite{limits.max_candidates, limits.square_check_after};
  if (n.fits_u64()) return finish(n, m, detail::select_small(n.to_u64(), m, lite));
  return finish(n, m, detail::select_small(n, m, lite));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t method_r_stream_key(const Natural& n, std::uint64_t seed) {
  const mpz_srcptr z = n.mpz().get_mpz_t();
  std::uint64_t h = 0;
  const std::size_t limbs = mpz_size(z);
  for (std::size_t i = 0; i < limbs; ++i) {
    h = splitmix64(h ^ static_cast<std::uint64_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))));
  }
  return seed ^ splitmix64(h ^ limbs);
}

UniformResidueSource::UniformResidueSource(const Natural& n, std::uint64_t seed)
    : max_offset_(n > Natural(2) ? n - Natural(2) : Natural(0)),
      bits_(max_offset_.bit_length()),
      engine_(method_r_stream_key(n, seed)) {
  if (n <= Natural(2)) throw DomainError("need n > 2 to draw from [1, n - 1]");
}

Natural UniformResidueSource::next() {
  if (bits_ == 0) return Natural(1);
  const std::size_t words = (bits_ + 63) / 64;
  const std::size_t top_bits = bits_ - 64 * (words - 1);
  const std::uint64_t top_mask = top_bits == 64 ? ~0ULL : ((1ULL << top_bits) - 1);
  for (;;) {
    Natural x(0);
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = engine_();
      if (w == 0) word &= top_mask;
      x = (x << 64) + Natural(word);
    }
    if (x <= max_offset_) return x + Natural(1);
  }
}

SelectionOutcome select_method_a(const Natural& n, const SelectionLimits& limits) {
  return select_deterministic(n, Method::A, limits);
}
SelectionOutcome select_method_a_star(const Natural& n, const SelectionLimits& limits) {
  return select_deterministic(n, Method::AStar, limits);
}
SelectionOutcome select_method_b(const Natural& n, const SelectionLimits& limits) {
  return select_deterministic(n, Method::B, limits);
}
SelectionOutcome select_method_b_star(const Natural& n, const SelectionLimits& limits) {
  return select_deterministic(n, Method::BStar, limits);
}
SelectionOutcome select_method_c(const Natural& n, const SelectionLimits& limits) {
  return select_deterministic(n, Method::C, limits);
}
SelectionOutcome select_method_d(const Natural& n, const SelectionLimits& limits) {
  return select_deterministic(n, Method::D, limits);
}

SelectionOutcome select_method_r(const Natural& n, std::uint64_t seed,
                                 const SelectionLimits& limits) {
  require_odd_modulus(n);
  UniformResidueSource source(n, seed);
  std::size_t plus_ones = 0;
  for (std::size_t i = 0; i < limits.max_candidates; ++i) {
    const Natural p = source.next();
    const Natural q = source.next();
    LucasParams params = LucasParams::from_pq(p.to_integer(), q.to_integer(), Method::R);
    if (params.D == 0) continue;
    const int j = jacobi(params.D, n);
    if (j == 0) {
      const Natural g = gcd(Natural(Integer(abs(params.D))), n);
      if (g != n) {
        return selection_cert(CertificateKind::ZeroJacobiFactor, n, g, std::move(params),
                              "(D/n) = 0 with gcd(D, n) a proper divisor");
      }
      continue;
    }
    if (j == 1) {
      if (++plus_ones == limits.square_check_after) {
        const SquareRoot sq = is_perfect_square(n);
        if (sq.is_square) {
          return selection_cert(CertificateKind::PerfectSquare, n, sq.root, std::move(params),
                                "n is a perfect square");
        }
      }
      continue;
    }
    const Natural g = gcd(q, n);
    if (g != Natural(1)) {
      return selection_cert(CertificateKind::GcdFactor, n, g, std::move(params),
                            "gcd(Q, n) is a proper divisor");
    }
    return params;
  }
  return ExhaustedSearch{limits.max_candidates};
}

SelectionOutcome select_params(const Natural& n, Method method, std::uint64_t seed,
                               const SelectionLimits& limits) {
  switch (method) {
    case Method::R:
      return select_method_r(n, seed, limits);
    case Method::Explicit:
      throw std::invalid_argument("explicit parameters are not selected");
    default:
      return select_deterministic(n, method, limits);
  }
}

}  // namespace bpsw
