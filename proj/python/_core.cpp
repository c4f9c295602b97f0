// Python bindings. Integers cross the boundary as decimal strings so that
// arbitrary-size Python ints survive; pybpsw/__init__.py does the converting.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bpsw/arith.hpp"
#include "bpsw/bpsw.hpp"
#include "bpsw/census.hpp"
#include "bpsw/errors.hpp"
#include "bpsw/lucas.hpp"
#include "bpsw/params.hpp"
#include "bpsw/report.hpp"

namespace py = pybind11;
using namespace bpsw;

namespace {

Method method_arg(const std::string& s) {
  const auto m = parse_method(s);
  if (!m || *m == Method::Explicit) throw py::value_error("unknown method: " + s);
  return *m;
}

std::string run(const std::string& n, const std::string& variant, const std::string& method,
                std::uint64_t sieve_bound, std::uint64_t seed, bool skip_step1,
                std::optional<std::pair<std::string, std::string>> pq) {
  PipelineOptions o;
  const auto v = parse_variant(variant);
  if (!v) throw py::value_error("unknown variant: " + variant);
  o.variant = *v;
  o.method = method_arg(method);
  o.sieve_bound = sieve_bound;
  o.seed = seed;
  o.skip_step1 = skip_step1;
  if (pq) o.params = LucasParams::from_pq(parse_integer(pq->first), parse_integer(pq->second));
  const Natural value = Natural::parse(n);
  py::gil_scoped_release unlocked;
  return to_json(run_pipeline(value, o));
}

std::string select_json(const std::string& n, const std::string& method, std::uint64_t seed) {
  const auto out = select_params(Natural::parse(n), method_arg(method), seed);
  if (const auto* p = selected_params(out)) return "{\"params\":" + to_json(*p) + "}";
  if (const auto* c = selection_certificate(out)) return "{\"certificate\":" + to_json(*c) + "}";
  return "{\"exhausted\":" + std::to_string(std::get<ExhaustedSearch>(out).candidates_tried) + "}";
}

py::tuple ladder(const std::string& n, const std::string& P, const std::string& Q, const std::string& k) {
  const auto t = lucas_ladder(Natural::parse(n), LucasParams::from_pq(parse_integer(P), parse_integer(Q)),
                              Natural::parse(k));
  return py::make_tuple(t.u.to_string(), t.v.to_string(), t.qk.to_string());
}

py::dict census(std::uint64_t lo, std::uint64_t hi, const std::string& method, const std::string& kinds,
                unsigned workers, std::uint64_t seed, std::uint64_t ceiling) {
  CensusOptions o;
  o.method = method_arg(method);
  o.kinds = parse_kinds(kinds);
  o.workers = workers;
  o.seed = seed;
  o.ceiling = ceiling;
  CensusResult res;
  {
    py::gil_scoped_release unlocked;
    res = scan_range(lo, hi, o);
  }
  py::list rows;
  for (const auto& r : count_table(res).rows) {
    py::dict d;
    d["bound"] = r.bound;
    for (Kind k : all_kinds) d[py::str(std::string(kind_name(k)))] = r[k];
    d["errors"] = r.errors;
    rows.append(d);
  }
  py::dict lists;
  for (Kind k : all_kinds) {
    if (o.kinds.has(k)) lists[py::str(std::string(kind_name(k)))] = list_of(res, k);
  }
  py::dict out;
  out["method"] = std::string(method_name(o.method));
  out["composites"] = res.composites;
  out["rows"] = rows;
  out["lists"] = lists;
  return out;
}

std::vector<std::uint64_t> first(const std::string& kind, std::size_t k, const std::string& method,
                                 std::uint64_t ceiling, std::uint64_t seed) {
  const auto kd = parse_kind(kind);
  if (!kd) throw py::value_error("unknown kind: " + kind);
  const Method m = method_arg(method);
  py::gil_scoped_release unlocked;
  return first_k(*kd, m, k, ceiling, seed);
}

py::list compare(std::uint64_t bound, const std::vector<std::string>& methods, std::uint64_t seed) {
  std::vector<Method> ms;
  for (const auto& m : methods) ms.push_back(method_arg(m));
  std::vector<MethodRow> rows;
  {
    py::gil_scoped_release unlocked;
    rows = method_comparison(bound, ms, seed);
  }
  py::list out;
  for (const auto& r : rows) {
    py::dict d;
    d["method"] = std::string(method_name(r.method));
    d["lpsp"] = r.lpsp;
    d["vpsp_q_pm1"] = r.vpsp_q_pm1;
    d["vpsp_q_other"] = r.vpsp_q_other;
    d["lpsp_and_vpsp"] = r.lpsp_and_vpsp;
    d["errors"] = r.errors;
    out.append(d);
  }
  return out;
}

std::optional<std::pair<std::string, std::string>> witness(const std::string& n, std::uint64_t max_n,
                                                           bool require_psp2) {
  WitnessOptions o;
  o.max_n = max_n;
  o.require_psp2 = require_psp2;
  const auto w = psp_lpsp_vpsp_witness(Natural::parse(n), o);
  if (!w) return std::nullopt;
  return std::pair{w->P.get_str(), w->Q.get_str()};
}

py::dict theorem1(const std::string& n, unsigned k) {
  const auto r = verify_theorem1(Natural::parse(n), k);
  py::dict d;
  d["k"] = r.k;
  d["sprp2"] = r.is_spsp2;
  d["n_mod_4"] = r.n_mod_4;
  d["hypotheses_hold"] = r.hypotheses_hold;
  d["slprp"] = r.slprp;
  d["vprp"] = r.vprp;
  d["euler_q"] = r.euler_q;
  d["conclusions_hold"] = r.conclusions_hold;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Baillie-PSW toolkit core";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InvalidModulus>(m, "InvalidModulus", PyExc_ValueError);

  m.def("run_pipeline", &run, py::arg("n"), py::arg("variant"), py::arg("method"), py::arg("sieve_bound"),
        py::arg("seed"), py::arg("skip_step1"), py::arg("params"));
  m.def("is_probable_prime", [](const std::string& n) { return is_probable_prime(Natural::parse(n)); });
  m.def("select_params", &select_json, py::arg("n"), py::arg("method"), py::arg("seed"));
  m.def("lucas_ladder", &ladder, py::arg("n"), py::arg("P"), py::arg("Q"), py::arg("k"));
  m.def("jacobi", [](const std::string& a, const std::string& n) {
    return jacobi(parse_integer(a), Natural::parse(n));
  });
  m.def("mod_pow", [](const std::string& b, const std::string& e, const std::string& mod) {
    return mod_pow(Natural::parse(b), Natural::parse(e), Natural::parse(mod)).to_string();
  });
  m.def("census", &census, py::arg("lo"), py::arg("hi"), py::arg("method"), py::arg("kinds"),
        py::arg("workers"), py::arg("seed"), py::arg("ceiling"));
  m.def("first_k", &first, py::arg("kind"), py::arg("k"), py::arg("method"), py::arg("ceiling"),
        py::arg("seed"));
  m.def("method_comparison", &compare, py::arg("bound"), py::arg("methods"), py::arg("seed"));
  m.def("witness", &witness, py::arg("n"), py::arg("max_n"), py::arg("require_psp2"));
  m.def("verify_theorem1", &theorem1, py::arg("n"), py::arg("k"));
  m.def("lemma_qr_residue", [](const std::string& r) { return lemma_qr_residue(Natural::parse(r)).to_string(); });
  m.def("verify_certificate", [](const std::string& json) {
    const auto c = verify_certificate(certificate_from_json(json));
    return py::make_tuple(c.valid, c.reason);
  });
}
