#include "bpsw/types.hpp"

#include <array>
#include <utility>

namespace bpsw {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 8> kMethodNames{{
    {Method::A, "A"},
    {Method::AStar, "A*"},
    {Method::B, "B"},
    {Method::BStar, "B*"},
    {Method::C, "C"},
    {Method::D, "D"},
    {Method::R, "R"},
    {Method::Explicit, "explicit"},
}};

constexpr std::array<std::pair<CertificateKind, std::string_view>, 11> kKindNames{{
    {CertificateKind::SmallFactor, "small-factor"},
    {CertificateKind::GcdFactor, "gcd-factor"},
    {CertificateKind::ZeroJacobiFactor, "zero-jacobi-factor"},
    {CertificateKind::PerfectSquare, "perfect-square"},
    {CertificateKind::FailedPrp, "failed-prp"},
    {CertificateKind::FailedEuler, "failed-euler"},
    {CertificateKind::FailedSprp, "failed-sprp"},
    {CertificateKind::FailedLprp, "failed-lprp"},
    {CertificateKind::FailedSlprp, "failed-slprp"},
    {CertificateKind::FailedVprp, "failed-vprp"},
    {CertificateKind::FailedEulerQ, "failed-euler-q"},
}};

}  // namespace

std::string_view method_name(Method m) noexcept {
  for (const auto& [method, name] : kMethodNames) {
    if (method == m) return name;
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  for (const auto& [method, text] : kMethodNames) {
    if (text == name) return method;
  }
  if (name == "Astar" || name == "a*") return Method::AStar;
  if (name == "Bstar" || name == "b*") return Method::BStar;
  return std::nullopt;
}

std::string_view certificate_kind_name(CertificateKind k) noexcept {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "?";
}

std::optional<CertificateKind> parse_certificate_kind(std::string_view name) noexcept {
  for (const auto& [kind, text] : kKindNames) {
    if (text == name) return kind;
  }
  return std::nullopt;
}

LucasParams LucasParams::from_pq(Integer P, Integer Q, Method source) {
  LucasParams params;
  params.D = P * P - 4 * Q;
  params.P = std::move(P);
  params.Q = std::move(Q);
  params.source = source;
  return params;
}

bool LucasParams::is_consistent() const {
  if (sgn(D) == 0) return false;
  Integer scale = 1;
  scale <<= q_shift;
  return D * scale == P * P * scale - 4 * Q;
}

}  // namespace bpsw
