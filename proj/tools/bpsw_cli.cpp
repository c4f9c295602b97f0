// bpsw: command-line front end for the probable-prime tests, parameter
// selection, census and witness searches.
//
// Exit status for `test`: 0 probable prime, 1 composite, 2 error.
// `verify-cert`: 0 valid, 1 invalid, 2 error. Everything else: 0 ok, 2 error.

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>  // single-header build
#endif

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bpsw/bpsw.hpp"
#include "bpsw/census.hpp"
#include "bpsw/errors.hpp"
#include "bpsw/report.hpp"

namespace {

using bpsw::Method;
using bpsw::Natural;
using nlohmann::json;

struct Config {
  std::string method = "A*";
  std::string variant = "enhanced";
  std::string sieve_bound = "0";
  std::uint64_t seed = 0;
  std::string output = "text";
  unsigned workers = 1;
};

// Thrown for bad user input; reported with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Method method_of(const std::string& s) {
  const auto m = bpsw::parse_method(s);
  if (!m || *m == Method::Explicit) throw UsageError("unknown method '" + s + "' (A, A*, B, B*, C, D, R)");
  return *m;
}

std::uint64_t bound_of(const std::string& s) {
  const Natural v = Natural::parse(s);
  if (!v.fits_u64()) throw UsageError("bound too large: " + s);
  return v.to_u64();
}

std::pair<bpsw::Integer, bpsw::Integer> pq_of(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("--params expects P,Q");
  return {bpsw::parse_integer(s.substr(0, comma)), bpsw::parse_integer(s.substr(comma + 1))};
}

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

const char* opt_bool(const std::optional<bool>& b) { return !b ? "n/a" : (*b ? "yes" : "no"); }

json opt_json(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

// ---- test ----

struct TestArgs {
  std::string n;
  bool skip_step1 = false;
  std::string params;
};

int cmd_test(const Config& cfg, const TestArgs& a) {
  bpsw::PipelineOptions o;
  const auto variant = bpsw::parse_variant(cfg.variant);
  if (!variant) throw UsageError("unknown variant '" + cfg.variant + "'");
  o.variant = *variant;
  o.method = method_of(cfg.method);
  o.sieve_bound = bound_of(cfg.sieve_bound);
  o.seed = cfg.seed;
  o.skip_step1 = a.skip_step1;
  if (!a.params.empty()) {
    auto [p, q] = pq_of(a.params);
    o.params = bpsw::LucasParams::from_pq(p, q);
  }
  Natural n;
  try {
    n = Natural::parse(a.n);
  } catch (const std::exception&) {
    throw UsageError("cannot parse n: " + a.n);
  }
  const auto report = bpsw::run_pipeline(n, o);
  if (cfg.output == "json") {
    std::cout << bpsw::to_json(report, 2) << '\n';
  } else if (cfg.output == "csv") {
    std::cout << "n,variant,method,verdict,certificate,step\n"
              << report.n << ',' << bpsw::variant_name(report.variant) << ','
              << bpsw::method_name(report.method) << ',' << bpsw::report_verdict_name(report.verdict)
              << ',' << (report.certificate ? bpsw::certificate_kind_name(report.certificate->kind) : "")
              << ',' << (report.certificate ? std::to_string(report.certificate->step) : "") << '\n';
  } else {
    std::cout << bpsw::to_text(report);
  }
  switch (report.verdict) {
    case bpsw::ReportVerdict::ProbablePrime: return 0;
    case bpsw::ReportVerdict::Composite: return 1;
    default: return 2;
  }
}

// ---- census family ----

struct CensusArgs {
  std::string from = "3";
  std::string to;
  std::string kinds = "all";
  std::string out_dir;
  std::string checkpoint;
  std::string ceiling = "1e8";
  bool allow_large = false;
  std::uint64_t chunk = std::uint64_t{1} << 16;
};

void print_table(const Config& cfg, const bpsw::CountTable& table) {
  if (cfg.output == "csv") {
    bpsw::write_count_csv(std::cout, table);
    return;
  }
  if (cfg.output == "json") {
    json rows = json::array();
    for (const auto& r : table.rows) {
      json j{{"bound", r.bound}, {"method", std::string(bpsw::method_name(r.method))}, {"errors", r.errors}};
      for (bpsw::Kind k : bpsw::all_kinds) j[std::string(bpsw::kind_name(k))] = r[k];
      rows.push_back(std::move(j));
    }
    std::cout << rows.dump(2) << '\n';
    return;
  }
  std::cout << "bound method psp2 spsp2 lpsp slpsp vpsp | epsp2 euler_q_psp errors\n";
  for (const auto& r : table.rows) {
    const auto t = r.table1();
    std::cout << r.bound << ' ' << bpsw::method_name(r.method);
    for (auto v : t) std::cout << ' ' << v;
    std::cout << " | " << r[bpsw::Kind::Epsp2] << ' ' << r[bpsw::Kind::EulerQPsp] << ' ' << r.errors << '\n';
  }
}

int cmd_census(const Config& cfg, const CensusArgs& a) {
  bpsw::CensusOptions o;
  o.method = method_of(cfg.method);
  o.kinds = bpsw::parse_kinds(a.kinds);
  o.seed = cfg.seed;
  o.workers = cfg.workers;
  o.chunk = a.chunk;
  o.checkpoint_path = a.checkpoint;
  o.ceiling = bound_of(a.ceiling);
  o.allow_above_ceiling = a.allow_large;
  const auto res = bpsw::scan_range(bound_of(a.from), bound_of(a.to), o);
  const auto table = bpsw::count_table(res);
  if (!a.out_dir.empty()) {
    std::filesystem::create_directories(a.out_dir);
    const std::filesystem::path dir(a.out_dir);
    std::ofstream csv(dir / "counts.csv", std::ios::binary);
    bpsw::write_count_csv(csv, table);
    for (bpsw::Kind k : bpsw::all_kinds) {
      if (!o.kinds.has(k)) continue;
      bpsw::write_list_file((dir / (std::string(bpsw::kind_name(k)) + ".txt")).string(),
                            bpsw::list_of(res, k));
    }
  }
  print_table(cfg, table);
  return 0;
}

int cmd_first(const Config& cfg, const std::string& kind, std::size_t count, const std::string& ceiling) {
  const auto k = bpsw::parse_kind(kind);
  if (!k) throw UsageError("unknown kind '" + kind + "'");
  const auto values = bpsw::first_k(*k, method_of(cfg.method), count, bound_of(ceiling), cfg.seed, cfg.workers);
  if (cfg.output == "json") {
    std::cout << json(values).dump() << '\n';
  } else {
    for (std::size_t i = 0; i < values.size(); ++i) std::cout << (i ? ", " : "") << values[i];
    std::cout << '\n';
  }
  if (values.size() < count) std::cerr << "only " << values.size() << " found below " << ceiling << '\n';
  return 0;
}

int cmd_overlap(const Config& cfg, const std::string& to) {
  const auto rep = bpsw::overlap_report(bound_of(to), method_of(cfg.method), cfg.seed, cfg.workers);
  const auto pw = rep.pairwise();
  const std::uint64_t triple =
      rep.count({bpsw::Kind::Spsp2, bpsw::Kind::Slpsp, bpsw::Kind::Vpsp});
  if (cfg.output == "json") {
    json j{{"bound", rep.bound}, {"method", std::string(bpsw::method_name(rep.method))}};
    for (bpsw::Kind a : bpsw::all_kinds) {
      for (bpsw::Kind b : bpsw::all_kinds) {
        j["pairs"][std::string(bpsw::kind_name(a))][std::string(bpsw::kind_name(b))] =
            pw[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      }
    }
    j["spsp2_slpsp_vpsp"] = triple;
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << "overlap below " << rep.bound << " (method " << bpsw::method_name(rep.method) << ")\n";
  std::cout << "            ";
  for (bpsw::Kind b : bpsw::all_kinds) std::cout << ' ' << std::string(bpsw::kind_name(b)).substr(0, 6);
  std::cout << '\n';
  for (bpsw::Kind a : bpsw::all_kinds) {
    std::string name(bpsw::kind_name(a));
    name.resize(12, ' ');
    std::cout << name;
    for (bpsw::Kind b : bpsw::all_kinds) std::cout << ' ' << pw[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    std::cout << '\n';
  }
  std::cout << "spsp2 & slpsp & vpsp: " << triple << '\n';
  return 0;
}

int cmd_compare(const Config& cfg, const std::string& to, const std::string& methods) {
  std::vector<Method> ms;
  std::stringstream ss(methods);
  for (std::string item; std::getline(ss, item, ',');) ms.push_back(method_of(item));
  const auto rows = bpsw::method_comparison(bound_of(to), ms, cfg.seed, cfg.workers);
  if (cfg.output == "json") {
    json out = json::array();
    for (const auto& r : rows) {
      out.push_back({{"method", std::string(bpsw::method_name(r.method))},
                     {"lpsp", r.lpsp},
                     {"vpsp_q_pm1", r.vpsp_q_pm1},
                     {"vpsp_q_other", r.vpsp_q_other},
                     {"lpsp_and_vpsp", r.lpsp_and_vpsp},
                     {"errors", r.errors},
                     {"vpsp_q_other_values", r.vpsp_q_other_values}});
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  if (cfg.output == "csv") std::cout << "method,lpsp,vpsp_q_pm1,vpsp_q_other,lpsp_and_vpsp\n";
  else std::cout << "method lpsp vpsp(Q=+-1) vpsp(other Q) lpsp&vpsp\n";
  const char sep = cfg.output == "csv" ? ',' : ' ';
  for (const auto& r : rows) {
    std::cout << bpsw::method_name(r.method) << sep << r.lpsp << sep << r.vpsp_q_pm1 << sep
              << r.vpsp_q_other << sep << r.lpsp_and_vpsp << '\n';
  }
  return 0;
}

// ---- witness / theorem1 / lemmaqr / verify-cert ----

int cmd_witness(const Config& cfg, const std::string& n_text, std::uint64_t max_n, bool any) {
  bpsw::WitnessOptions o;
  o.max_n = max_n;
  o.require_psp2 = !any;
  const auto w = bpsw::psp_lpsp_vpsp_witness(Natural::parse(n_text), o);
  if (cfg.output == "json") {
    std::cout << (w ? json{{"P", w->P.get_str()}, {"Q", w->Q.get_str()}} : json(nullptr)).dump() << '\n';
  } else if (w) {
    std::cout << w->P << ' ' << w->Q << '\n';
  } else {
    std::cout << "none\n";
  }
  return 0;
}

int cmd_theorem1(const Config& cfg, const std::string& n_text, unsigned k) {
  const auto r = bpsw::verify_theorem1(Natural::parse(n_text), k);
  const auto p = bpsw::theorem1_params(k);
  if (cfg.output == "json") {
    json j{{"n", r.n.to_string()}, {"k", r.k}, {"params", json::parse(bpsw::to_json(p))},
           {"sprp2", r.is_spsp2}, {"n_mod_4", r.n_mod_4}, {"hypotheses_hold", r.hypotheses_hold},
           {"slprp", opt_json(r.slprp)}, {"vprp", opt_json(r.vprp)}, {"euler_q", opt_json(r.euler_q)},
           {"conclusions_hold", opt_json(r.conclusions_hold)}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "n: " << r.n << "\nk: " << r.k << "\nparams: " << bpsw::params_summary(p)
              << "\nsprp(2): " << (r.is_spsp2 ? "yes" : "no") << "\nn mod 4: " << r.n_mod_4
              << "\nhypotheses: " << (r.hypotheses_hold ? "hold" : "fail")
              << "\nslprp: " << opt_bool(r.slprp) << "\nvprp: " << opt_bool(r.vprp)
              << "\neuler_q: " << opt_bool(r.euler_q)
              << "\nconclusions: " << opt_bool(r.conclusions_hold) << '\n';
  }
  if (r.hypotheses_hold && r.conclusions_hold == false) return 1;
  return 0;
}

int cmd_lemmaqr(const Config& cfg, const std::string& r_text) {
  const Natural r = Natural::parse(r_text);
  const Natural a = bpsw::lemma_qr_residue(r);
  if (cfg.output == "json") {
    std::cout << json{{"r", r.to_string()}, {"a", a.to_string()}, {"modulus", (Natural(4) * r).to_string()}}.dump()
              << '\n';
  } else {
    std::cout << a << '\n';
  }
  return 0;
}

int cmd_verify_cert(const Config& cfg, const std::string& path) {
  const std::string text = read_all(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception&) {
    throw UsageError("input is not JSON");
  }
  if (j.contains("certificate")) j = j["certificate"];
  else if (j.contains("verdict")) throw UsageError("report carries no certificate");
  const auto cert = bpsw::certificate_from_json(j.dump());
  const auto check = bpsw::verify_certificate(cert);
  if (cfg.output == "json") {
    std::cout << json{{"valid", check.valid}, {"reason", check.reason}}.dump() << '\n';
  } else {
    std::cout << (check.valid ? "valid" : "invalid") << (check.reason.empty() ? "" : ": " + check.reason)
              << '\n';
  }
  return check.valid ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Baillie-PSW probable-prime toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file with defaults for the global options");

  Config cfg;
  app.add_option("--method,-m", cfg.method, "parameter method: A, A*, B, B*, C, D, R")->capture_default_str();
  app.add_option("--variant", cfg.variant, "original or enhanced")->capture_default_str();
  app.add_option("--sieve-bound", cfg.sieve_bound, "trial-division bound before step 1 (0 = off)")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for method R")->capture_default_str();
  app.add_option("--output,-o", cfg.output, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  // Env default is read by hand: CLI11 skips envname() on parent options
  // once a subcommand has matched.
  if (const char* env = std::getenv("BPSW_WORKERS"); env != nullptr && *env != '\0') {
    try {
      const long w = std::stol(env);
      if (w < 1) throw std::out_of_range("workers");
      cfg.workers = static_cast<unsigned>(w);
    } catch (const std::exception&) {
      std::cerr << "error: BPSW_WORKERS must be a positive integer\n";
      return 2;
    }
  }
  app.add_option("--workers,-j", cfg.workers, "census worker threads (default $BPSW_WORKERS or 1)")
      ->capture_default_str();

  int status = 0;
  std::function<int()> action;

  TestArgs ta;
  auto* test = app.add_subcommand("test", "run the BPSW pipeline on n");
  test->add_option("n", ta.n, "integer (decimal, 0x hex, 1e7)")->required();
  test->add_flag("--skip-step1", ta.skip_step1, "skip the base-2 test (diagnostic)");
  test->add_option("--params", ta.params, "fixed P,Q (diagnostic)");
  test->callback([&] { action = [&] { return cmd_test(cfg, ta); }; });

  CensusArgs ca;
  auto* census = app.add_subcommand("census", "count pseudoprimes in [from, to)");
  census->add_option("--from", ca.from, "lower bound (>= 3)")->capture_default_str();
  census->add_option("--to", ca.to, "upper bound, exclusive")->required();
  census->add_option("--kinds", ca.kinds, "comma list of psp2,spsp2,epsp2,lpsp,slpsp,vpsp,euler_q_psp")
      ->capture_default_str();
  census->add_option("--out-dir", ca.out_dir, "write counts.csv and one list file per kind");
  census->add_option("--checkpoint", ca.checkpoint, "checkpoint file for resumable scans");
  census->add_option("--chunk", ca.chunk, "numbers per work unit")->capture_default_str();
  census->add_option("--ceiling", ca.ceiling, "largest bound allowed without --allow-large")
      ->capture_default_str();
  census->add_flag("--allow-large", ca.allow_large, "permit bounds above the ceiling");
  census->callback([&] { action = [&] { return cmd_census(cfg, ca); }; });

  std::string first_kind;
  std::size_t first_count = 10;
  std::string first_ceiling = "1e8";
  auto* first = app.add_subcommand("first", "first k pseudoprimes of a kind");
  first->add_option("kind", first_kind, "psp2, spsp2, epsp2, lpsp, slpsp, vpsp, euler_q_psp")->required();
  first->add_option("-k,--count", first_count, "how many")->check(CLI::PositiveNumber)->capture_default_str();
  first->add_option("--ceiling", first_ceiling, "stop searching here")->capture_default_str();
  first->callback([&] { action = [&] { return cmd_first(cfg, first_kind, first_count, first_ceiling); }; });

  std::string overlap_to;
  auto* overlap = app.add_subcommand("overlap", "pairwise intersections of the kinds");
  overlap->add_option("--to", overlap_to, "bound")->required();
  overlap->callback([&] { action = [&] { return cmd_overlap(cfg, overlap_to); }; });

  std::string cmp_to, cmp_methods = "A,A*,B,B*,C,D,R";
  auto* compare = app.add_subcommand("compare-methods", "lpsp and vpsp counts per method");
  compare->add_option("--to", cmp_to, "bound")->required();
  compare->add_option("--methods", cmp_methods, "comma list")->capture_default_str();
  compare->callback([&] { action = [&] { return cmd_compare(cfg, cmp_to, cmp_methods); }; });

  std::string wit_n;
  std::uint64_t wit_max = 10000;
  bool wit_any = false;
  auto* witness = app.add_subcommand("witness", "search (P, Q) making a psp(2) also lpsp and vpsp");
  witness->add_option("n", wit_n)->required();
  witness->add_option("--max-n", wit_max, "refuse larger n")->capture_default_str();
  witness->add_flag("--any", wit_any, "do not require n to be psp(2)");
  witness->callback([&] { action = [&] { return cmd_witness(cfg, wit_n, wit_max, wit_any); }; });

  std::string t1_n;
  unsigned t1_k = 0;
  auto* theorem1 = app.add_subcommand("theorem1", "check the P = 2^k family on an sprp(2)");
  theorem1->add_option("n", t1_n)->required();
  theorem1->add_option("k", t1_k)->required();
  theorem1->callback([&] { action = [&] { return cmd_theorem1(cfg, t1_n, t1_k); }; });

  std::string qr_r;
  auto* lemmaqr = app.add_subcommand("lemmaqr", "residue class mod 4r where r is a square");
  lemmaqr->add_option("r", qr_r)->required();
  lemmaqr->callback([&] { action = [&] { return cmd_lemmaqr(cfg, qr_r); }; });

  std::string cert_path;
  auto* verify = app.add_subcommand("verify-cert", "re-check a JSON certificate or report");
  verify->add_option("file", cert_path, "path, or - for stdin")->required();
  verify->callback([&] { action = [&] { return cmd_verify_cert(cfg, cert_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (cfg.workers < 1) {
    std::cerr << "error: workers must be at least 1\n";
    return 2;
  }
  try {
    status = action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return status;
}
