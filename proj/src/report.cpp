#include "bpsw/report.hpp"

#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bpsw {

namespace {

using nlohmann::json;

json params_json(const LucasParams& p) {
  json j{{"D", p.D.get_str()},
         {"P", p.P.get_str()},
         {"Q", p.Q.get_str()},
         {"method", std::string(method_name(p.source))}};
  if (p.q_shift != 0) j["q_shift"] = p.q_shift;
  return j;
}

LucasParams params_of(const json& j) {
  LucasParams p;
  p.D = parse_integer(j.at("D").get<std::string>());
  p.P = parse_integer(j.at("P").get<std::string>());
  p.Q = parse_integer(j.at("Q").get<std::string>());
  p.q_shift = j.value("q_shift", 0u);
  const auto m = parse_method(j.value("method", std::string("explicit")));
  if (!m) throw std::invalid_argument("unknown method in params");
  p.source = *m;
  return p;
}

json cert_json(const CompositeCertificate& c) {
  json j{{"kind", std::string(certificate_kind_name(c.kind))},
         {"n", c.n.to_string()},
         {"step", c.step}};
  if (c.factor) j["factor"] = c.factor->to_string();
  if (c.base) j["base"] = c.base->to_string();
  if (!c.residues.empty()) {
    j["residues"] = json::array();
    for (const auto& r : c.residues) j["residues"].push_back(r.to_string());
  }
  if (c.params) j["params"] = params_json(*c.params);
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

CompositeCertificate cert_of(const json& j) {
  CompositeCertificate c;
  const auto kind = parse_certificate_kind(j.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown certificate kind");
  c.kind = *kind;
  c.n = Natural::parse(j.at("n").get<std::string>());
  c.step = j.value("step", 0);
  if (j.contains("factor")) c.factor = Natural::parse(j["factor"].get<std::string>());
  if (j.contains("base")) c.base = Natural::parse(j["base"].get<std::string>());
  if (j.contains("residues")) {
    for (const auto& r : j["residues"]) c.residues.push_back(Natural::parse(r.get<std::string>()));
  }
  if (j.contains("params")) c.params = params_of(j["params"]);
  c.detail = j.value("detail", std::string());
  return c;
}

void put_opt(json& j, const char* key, const std::optional<bool>& v) {
  if (v) j[key] = *v;
}
std::optional<bool> get_opt(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return j[key].get<bool>();
}

json report_json(const PipelineReport& r) {
  json j{{"n", r.n.to_string()},
         {"variant", std::string(variant_name(r.variant))},
         {"method", std::string(method_name(r.method))},
         {"verdict", std::string(report_verdict_name(r.verdict))},
         {"euler_q_vacuous", r.euler_q_vacuous}};
  j["steps"] = json::array();
  for (const auto& s : r.steps_run) {
    json sj{{"step", s.step}, {"name", s.name}, {"status", std::string(step_status_name(s.status))}};
    if (!s.detail.empty()) sj["detail"] = s.detail;
    j["steps"].push_back(std::move(sj));
  }
  if (r.certificate) j["certificate"] = cert_json(*r.certificate);
  if (r.params) j["params"] = params_json(*r.params);
  if (r.diagnostics) {
    json d = json::object();
    put_opt(d, "sprp2", r.diagnostics->sprp2);
    put_opt(d, "lprp", r.diagnostics->lprp);
    put_opt(d, "slprp", r.diagnostics->slprp);
    put_opt(d, "vprp", r.diagnostics->vprp);
    put_opt(d, "euler_q", r.diagnostics->euler_q);
    j["diagnostics"] = std::move(d);
  }
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

PipelineReport report_of(const json& j) {
  PipelineReport r;
  r.n = Natural::parse(j.at("n").get<std::string>());
  const auto v = parse_variant(j.at("variant").get<std::string>());
  const auto m = parse_method(j.at("method").get<std::string>());
  const auto verdict = parse_report_verdict(j.at("verdict").get<std::string>());
  if (!v || !m || !verdict) throw std::invalid_argument("bad variant, method or verdict");
  r.variant = *v;
  r.method = *m;
  r.verdict = *verdict;
  r.euler_q_vacuous = j.value("euler_q_vacuous", false);
  for (const auto& sj : j.at("steps")) {
    StepOutcome s;
    s.step = sj.at("step").get<int>();
    s.name = sj.at("name").get<std::string>();
    const auto st = parse_step_status(sj.at("status").get<std::string>());
    if (!st) throw std::invalid_argument("bad step status");
    s.status = *st;
    s.detail = sj.value("detail", std::string());
    r.steps_run.push_back(std::move(s));
  }
  if (j.contains("certificate")) r.certificate = cert_of(j["certificate"]);
  if (j.contains("params")) r.params = params_of(j["params"]);
  if (j.contains("diagnostics")) {
    const auto& d = j["diagnostics"];
    r.diagnostics = Diagnostics{get_opt(d, "sprp2"), get_opt(d, "lprp"), get_opt(d, "slprp"),
                                get_opt(d, "vprp"), get_opt(d, "euler_q")};
  }
  r.error = j.value("error", std::string());
  return r;
}

template <class F>
auto parse_with(std::string_view text, F&& f) {
  try {
    return f(json::parse(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string to_json(const PipelineReport& report, int indent) { return report_json(report).dump(indent); }
std::string to_json(const CompositeCertificate& cert, int indent) { return cert_json(cert).dump(indent); }
std::string to_json(const LucasParams& params, int indent) { return params_json(params).dump(indent); }

PipelineReport report_from_json(std::string_view text) { return parse_with(text, report_of); }
CompositeCertificate certificate_from_json(std::string_view text) { return parse_with(text, cert_of); }
LucasParams params_from_json(std::string_view text) { return parse_with(text, params_of); }

std::string params_summary(const LucasParams& p) {
  std::ostringstream os;
  os << "D=" << p.D << " P=" << p.P << " Q=" << p.Q;
  if (p.q_shift != 0) os << "/2^" << p.q_shift;
  return os.str();
}

std::string to_text(const CompositeCertificate& c) {
  std::ostringstream os;
  os << "certificate: " << certificate_kind_name(c.kind) << " (step " << c.step << ")\n";
  if (c.factor) os << "  factor: " << *c.factor << '\n';
  if (c.base) os << "  base: " << *c.base << '\n';
  if (c.params) os << "  params: " << params_summary(*c.params) << '\n';
  if (!c.residues.empty()) {
    os << "  residues:";
    for (const auto& r : c.residues) os << ' ' << r;
    os << '\n';
  }
  if (!c.detail.empty()) os << "  detail: " << c.detail << '\n';
  return os.str();
}

std::string to_text(const PipelineReport& r) {
  std::ostringstream os;
  os << "n: " << r.n << '\n'
     << "variant: " << variant_name(r.variant) << '\n'
     << "method: " << method_name(r.method) << '\n'
     << "verdict: " << report_verdict_name(r.verdict) << '\n';
  for (const auto& s : r.steps_run) {
    os << "step " << s.step << " " << s.name << ": " << step_status_name(s.status);
    if (!s.detail.empty()) os << " (" << s.detail << ')';
    os << '\n';
  }
  if (r.params) os << "params: " << params_summary(*r.params) << '\n';
  if (r.euler_q_vacuous) os << "note: |Q| is a power of two, so the Euler-Q step adds little\n";
  if (r.diagnostics) {
    const auto line = [&](const char* name, const std::optional<bool>& v) {
      if (v) os << "diagnostic " << name << ": " << yes_no(*v) << '\n';
    };
    line("sprp2", r.diagnostics->sprp2);
    line("lprp", r.diagnostics->lprp);
    line("slprp", r.diagnostics->slprp);
    line("vprp", r.diagnostics->vprp);
    line("euler_q", r.diagnostics->euler_q);
  }
  if (r.certificate) os << to_text(*r.certificate);
  if (!r.error.empty()) os << "error: " << r.error << '\n';
  return os.str();
}

}  // namespace bpsw
