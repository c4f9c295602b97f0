#include "bpsw/census.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "bpsw/arith.hpp"
#include "bpsw/detail/fermat_kernel.hpp"
#include "bpsw/detail/lucas_kernel.hpp"
#include "bpsw/detail/ring.hpp"
#include "bpsw/detail/select_kernel.hpp"
#include "bpsw/errors.hpp"
#include "bpsw/fermat.hpp"
#include "bpsw/lucas.hpp"

namespace bpsw {

namespace {

constexpr std::array<std::string_view, kind_count> kind_names{
    "psp2", "spsp2", "epsp2", "lpsp", "slpsp", "vpsp", "euler_q_psp"};

constexpr std::uint64_t max_scan_bound = std::uint64_t{1} << 62;

std::string exhausted_message(std::size_t tried) {
  return "parameter search exhausted after " + std::to_string(tried) + " candidates";
}

}  // namespace

std::string_view kind_name(Kind k) noexcept { return kind_names[static_cast<std::size_t>(k)]; }

std::optional<Kind> parse_kind(std::string_view name) noexcept {
  for (Kind k : all_kinds) {
    if (kind_name(k) == name) return k;
  }
  if (name == "euler_q" || name == "eulerq") return Kind::EulerQPsp;
  return std::nullopt;
}

KindSet parse_kinds(std::string_view text) {
  if (text == "all") return KindSet::all();
  KindSet out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto k = parse_kind(item);
    if (!k) throw std::invalid_argument("unknown kind: " + std::string(item));
    out.set(*k);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw std::invalid_argument("empty kind list");
  return out;
}

std::string kinds_to_string(KindSet s) {
  std::string out;
  for (Kind k : all_kinds) {
    if (!s.has(k)) continue;
    if (!out.empty()) out += ',';
    out += kind_name(k);
  }
  return out;
}

// ---- classification ----

CensusRecord classify_composite(std::uint64_t n, Method method, KindSet kinds, std::uint64_t seed,
                                const SelectionLimits& limits) {
  using detail::MontgomeryRing;
  CensusRecord rec;
  rec.n = n;
  rec.method = method;
  const MontgomeryRing r(n);

  if (kinds.intersects(KindSet::fermat())) {
    const int j2 = (n % 8 == 1 || n % 8 == 7) ? 1 : -1;
    const auto prof = detail::fermat_profile(r, r.from_u64(2), n, j2);
    if (prof.prp && kinds.has(Kind::Psp2)) rec.flags.set(Kind::Psp2);
    if (prof.euler && kinds.has(Kind::Epsp2)) rec.flags.set(Kind::Epsp2);
    if (prof.strong && kinds.has(Kind::Spsp2)) rec.flags.set(Kind::Spsp2);
  }
  if (!kinds.intersects(KindSet::lucas())) return rec;

  LucasParams params;
  if (method == Method::R) {
    const auto outcome = select_method_r(Natural(n), seed, limits);
    if (const auto* ex = std::get_if<ExhaustedSearch>(&outcome)) {
      rec.error = exhausted_message(ex->candidates_tried);
      return rec;
    }
    const LucasParams* p = selected_params(outcome);
    if (p == nullptr) return rec;  // selection exposed a factor
    params = *p;
  } else {
    const auto sel =
        detail::select_small<std::uint64_t>(n, method, {limits.max_candidates, limits.square_check_after});
    if (sel.status == detail::SelectStatus::Exhausted) {
      rec.error = exhausted_message(sel.tried);
      return rec;
    }
    if (sel.status != detail::SelectStatus::Params) return rec;
    params.D = Integer(static_cast<long>(sel.candidate.D));
    params.P = Integer(static_cast<long>(sel.candidate.P));
    params.Q = Integer(static_cast<long>(sel.candidate.Q));
    params.source = method;
  }

  const auto pr = detail::to_ring(r, params);
  const auto run = detail::strong_lucas(r, pr, n, false, false);
  const auto two_q = r.add(pr.q, pr.q);
  if (kinds.has(Kind::Lpsp) && r.is_zero(run.last.u)) rec.flags.set(Kind::Lpsp);
  if (kinds.has(Kind::Slpsp) && run.strong) rec.flags.set(Kind::Slpsp);
  if (kinds.has(Kind::Vpsp) && r.eq(run.last.v, two_q)) rec.flags.set(Kind::Vpsp);
  const std::uint64_t q_plain = r.to_u64(pr.q);
  if (kinds.has(Kind::EulerQPsp)) {
    const int jq = detail::jacobi_reduced(q_plain, n);
    if (jq != 0 && r.eq(run.q_half, jq > 0 ? pr.q : r.neg(pr.q))) rec.flags.set(Kind::EulerQPsp);
  }
  rec.q_is_pm1 = q_plain == 1 || q_plain == n - 1;
  rec.params = std::move(params);
  return rec;
}

CensusRecord classify_reference(std::uint64_t n, Method method, KindSet kinds, std::uint64_t seed) {
  CensusRecord rec;
  rec.n = n;
  rec.method = method;
  if (n < 3 || n % 2 == 0) throw DomainError("reference classification needs odd n >= 3");
  bool prime = true;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) {
      prime = false;
      break;
    }
  }
  if (prime) return rec;

  const Natural N(n);
  const Natural two(2);
  if (kinds.has(Kind::Psp2) && is_prp(N, two).probable_prime()) rec.flags.set(Kind::Psp2);
  if (kinds.has(Kind::Epsp2) && is_epsp_condition(N, two).probable_prime()) rec.flags.set(Kind::Epsp2);
  if (kinds.has(Kind::Spsp2) && is_sprp(N, two).probable_prime()) rec.flags.set(Kind::Spsp2);
  if (!kinds.intersects(KindSet::lucas())) return rec;

  const auto outcome = select_params(N, method, seed);
  if (const auto* ex = std::get_if<ExhaustedSearch>(&outcome)) {
    rec.error = exhausted_message(ex->candidates_tried);
    return rec;
  }
  const LucasParams* p = selected_params(outcome);
  if (p == nullptr) return rec;

  if (kinds.has(Kind::Lpsp) && is_lprp(N, *p).probable_prime()) rec.flags.set(Kind::Lpsp);
  if (kinds.has(Kind::Slpsp) && is_slprp(N, *p).classification.probable_prime()) {
    rec.flags.set(Kind::Slpsp);
  }
  if (kinds.has(Kind::Vpsp)) {
    const auto at = lucas_ladder(N, *p, N + Natural(1));
    if (is_vprp(N, *p, at).probable_prime()) rec.flags.set(Kind::Vpsp);
  }
  if (kinds.has(Kind::EulerQPsp)) {
    const auto half = lucas_ladder(N, *p, (N + Natural(1)) >> 1);
    if (euler_q_check(N, *p, half.qk).probable_prime()) rec.flags.set(Kind::EulerQPsp);
  }
  const Natural q = resolve_q(*p, N);
  rec.q_is_pm1 = q == Natural(1) || q == N - Natural(1);
  rec.params = *p;
  rec.params->source = method;
  return rec;
}

// ---- scanning ----

namespace {

struct ChunkOutput {
  std::vector<CensusRecord> records;
  std::uint64_t composites = 0;
};

ChunkOutput scan_chunk(std::uint64_t lo, std::uint64_t hi, const CensusOptions& opts) {
  ChunkOutput out;
  const auto prime = prime_flags(lo, hi);
  for (std::uint64_t n = lo | 1; n < hi; n += 2) {
    if (n < 3 || prime[n - lo]) continue;
    ++out.composites;
    CensusRecord rec = classify_composite(n, opts.method, opts.kinds, opts.seed, opts.limits);
    if (!rec.flags.empty() || !rec.error.empty()) out.records.push_back(std::move(rec));
  }
  return out;
}

using nlohmann::json;

json record_to_json(const CensusRecord& r) {
  json j = json::array({r.n, r.flags.bits(), r.q_is_pm1, r.error});
  if (r.params) {
    j.push_back(r.params->D.get_str());
    j.push_back(r.params->P.get_str());
    j.push_back(r.params->Q.get_str());
  }
  return j;
}

CensusRecord record_from_json(const json& j, Method method) {
  CensusRecord r;
  r.n = j.at(0).get<std::uint64_t>();
  r.flags = KindSet(j.at(1).get<std::uint8_t>());
  r.q_is_pm1 = j.at(2).get<bool>();
  r.error = j.at(3).get<std::string>();
  r.method = method;
  if (j.size() >= 7) {
    LucasParams p;
    p.D = Integer(j.at(4).get<std::string>());
    p.P = Integer(j.at(5).get<std::string>());
    p.Q = Integer(j.at(6).get<std::string>());
    p.source = method;
    r.params = std::move(p);
  }
  return r;
}

struct Checkpoint {
  std::uint64_t completed_to = 0;
  std::uint64_t composites = 0;
  std::vector<CensusRecord> records;
};

json checkpoint_header(std::uint64_t lo, std::uint64_t hi, const CensusOptions& opts) {
  return {{"method", std::string(method_name(opts.method))},
          {"kinds", kinds_to_string(opts.kinds)},
          {"lo", lo},
          {"hi", hi},
          {"chunk", opts.chunk},
          {"seed", opts.seed}};
}

std::optional<Checkpoint> load_checkpoint(std::uint64_t lo, std::uint64_t hi,
                                          const CensusOptions& opts) {
  std::ifstream in(opts.checkpoint_path);
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
  } catch (const json::exception&) {
    return std::nullopt;  // torn or foreign file: start over
  }
  const json want = checkpoint_header(lo, hi, opts);
  for (const auto& [key, value] : want.items()) {
    if (!j.contains(key) || j[key] != value) return std::nullopt;
  }
  Checkpoint cp;
  cp.completed_to = j.at("completed_to").get<std::uint64_t>();
  cp.composites = j.at("composites").get<std::uint64_t>();
  for (const auto& r : j.at("records")) cp.records.push_back(record_from_json(r, opts.method));
  return cp;
}

void save_checkpoint(std::uint64_t lo, std::uint64_t hi, const CensusOptions& opts,
                     std::uint64_t completed_to, std::uint64_t composites,
                     const std::vector<CensusRecord>& records) {
  json j = checkpoint_header(lo, hi, opts);
  j["completed_to"] = completed_to;
  j["composites"] = composites;
  j["records"] = json::array();
  for (const auto& r : records) j["records"].push_back(record_to_json(r));
  const std::string tmp = opts.checkpoint_path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    out << j.dump() << '\n';
  }
  std::filesystem::rename(tmp, opts.checkpoint_path);
}

}  // namespace

CensusResult scan_range(std::uint64_t lo, std::uint64_t hi, const CensusOptions& opts,
                        const RecordSink& sink) {
  if (lo < 3) throw PreconditionError("census range must start at 3 or above");
  if (hi <= lo) throw PreconditionError("census range is empty");
  if (hi >= max_scan_bound) throw PreconditionError("census bound must stay below 2^62");
  if (hi > opts.ceiling && !opts.allow_above_ceiling) {
    throw PreconditionError("census bound " + std::to_string(hi) + " is above the ceiling " +
                            std::to_string(opts.ceiling));
  }
  if (opts.method == Method::Explicit) throw std::invalid_argument("census needs a selection method");
  if (opts.chunk == 0) throw std::invalid_argument("chunk size must be positive");

  CensusResult result;
  result.lo = lo;
  result.hi = hi;
  result.method = opts.method;
  result.kinds = opts.kinds;
  result.seed = opts.seed;

  std::uint64_t start = lo;
  if (!opts.checkpoint_path.empty()) {
    if (auto cp = load_checkpoint(lo, hi, opts)) {
      start = std::max(lo, std::min(hi, cp->completed_to));
      result.composites = cp->composites;
      result.resumed = true;
      for (auto& r : cp->records) {
        if (sink) sink(r);
        if (opts.keep_records) result.records.push_back(std::move(r));
      }
    }
  }

  const unsigned workers = std::max(1u, opts.workers);
  const std::uint64_t batch_chunks = std::uint64_t{workers} * 4;
  // Checkpoints need every record, whatever keep_records says.
  std::vector<CensusRecord> saved;
  if (!opts.checkpoint_path.empty() && !opts.keep_records) saved = result.records;

  while (start < hi) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> spans;
    std::uint64_t cursor = start;
    while (cursor < hi && spans.size() < batch_chunks) {
      const std::uint64_t end = hi - cursor > opts.chunk ? cursor + opts.chunk : hi;
      spans.emplace_back(cursor, end);
      cursor = end;
    }
    std::vector<ChunkOutput> outputs(spans.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= spans.size() || failed.load()) return;
        try {
          outputs[i] = scan_chunk(spans[i].first, spans[i].second, opts);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    const unsigned helpers = std::min<std::size_t>(workers, spans.size()) - 1;
    for (unsigned t = 0; t < helpers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    for (auto& o : outputs) {
      result.composites += o.composites;
      for (auto& r : o.records) {
        if (sink) sink(r);
        if (!opts.checkpoint_path.empty() && !opts.keep_records) saved.push_back(r);
        if (opts.keep_records) result.records.push_back(std::move(r));
      }
    }
    start = cursor;
    if (!opts.checkpoint_path.empty()) {
      save_checkpoint(lo, hi, opts, start, result.composites,
                      opts.keep_records ? result.records : saved);
    }
  }
  return result;
}

// ---- tables ----

std::array<std::uint64_t, 5> CountRow::table1() const {
  return {(*this)[Kind::Psp2], (*this)[Kind::Spsp2], (*this)[Kind::Lpsp], (*this)[Kind::Slpsp],
          (*this)[Kind::Vpsp]};
}

std::vector<std::uint64_t> decade_buckets(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 10; p < hi; p *= 10) {
    if (p > lo) out.push_back(p);
    if (p > hi / 10) break;
  }
  out.push_back(hi);
  return out;
}

CountTable count_table(const CensusResult& result, std::vector<std::uint64_t> buckets) {
  if (buckets.empty()) buckets = decade_buckets(result.lo, result.hi);
  std::sort(buckets.begin(), buckets.end());
  buckets.erase(std::unique(buckets.begin(), buckets.end()), buckets.end());

  CountTable table;
  CountRow running;
  running.method = result.method;
  std::size_t i = 0;
  for (std::uint64_t b : buckets) {
    for (; i < result.records.size() && result.records[i].n < b; ++i) {
      const auto& r = result.records[i];
      for (Kind k : all_kinds) running.counts[static_cast<std::size_t>(k)] += r.flags.has(k);
      running.errors += !r.error.empty();
    }
    running.bound = b;
    table.rows.push_back(running);
  }
  return table;
}

std::vector<std::uint64_t> list_of(const CensusResult& result, Kind kind) {
  std::vector<std::uint64_t> out;
  for (const auto& r : result.records) {
    if (r.flags.has(kind)) out.push_back(r.n);
  }
  return out;
}

void write_list(std::ostream& out, std::vector<std::uint64_t> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (std::uint64_t v : values) out << v << '\n';
}

void write_list_file(const std::string& path, std::vector<std::uint64_t> values) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_list(out, std::move(values));
}

void write_count_csv(std::ostream& out, const CountTable& table) {
  out << "bound,method,psp2,spsp2,epsp2,lpsp,slpsp,vpsp\n";
  for (const auto& row : table.rows) {
    out << row.bound << ',' << method_name(row.method) << ',' << row[Kind::Psp2] << ','
        << row[Kind::Spsp2] << ',' << row[Kind::Epsp2] << ',' << row[Kind::Lpsp] << ','
        << row[Kind::Slpsp] << ',' << row[Kind::Vpsp] << '\n';
  }
}

std::vector<std::uint64_t> first_k(Kind kind, Method method, std::size_t k, std::uint64_t ceiling,
                                   std::uint64_t seed, unsigned workers) {
  if (k == 0) throw PreconditionError("k must be at least 1");
  CensusOptions opts;
  opts.method = method;
  opts.kinds = KindSet{kind};
  opts.seed = seed;
  opts.workers = workers;
  opts.ceiling = ceiling;
  std::vector<std::uint64_t> out;
  std::uint64_t lo = 3;
  std::uint64_t hi = 4096;
  while (out.size() < k && lo < ceiling) {
    hi = std::min(hi, ceiling);
    const auto res = scan_range(lo, hi, opts);
    for (const auto& r : res.records) {
      if (r.flags.has(kind) && out.size() < k) out.push_back(r.n);
    }
    lo = hi;
    hi = hi > ceiling / 4 ? ceiling : hi * 4;
  }
  return out;
}

std::uint64_t OverlapReport::count(KindSet required) const {
  std::uint64_t total = 0;
  for (unsigned m = 0; m < by_mask.size(); ++m) {
    if (KindSet(static_cast<std::uint8_t>(m)).contains(required)) total += by_mask[m];
  }
  return total;
}

std::array<std::array<std::uint64_t, kind_count>, kind_count> OverlapReport::pairwise() const {
  std::array<std::array<std::uint64_t, kind_count>, kind_count> out{};
  for (Kind a : all_kinds) {
    for (Kind b : all_kinds) {
      out[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = count(KindSet{a, b});
    }
  }
  return out;
}

OverlapReport overlap_from(const CensusResult& result) {
  OverlapReport rep;
  rep.bound = result.hi;
  rep.method = result.method;
  for (const auto& r : result.records) ++rep.by_mask[r.flags.bits()];
  return rep;
}

OverlapReport overlap_report(std::uint64_t bound, Method method, std::uint64_t seed,
                             unsigned workers, std::uint64_t ceiling) {
  CensusOptions opts;
  opts.method = method;
  opts.seed = seed;
  opts.workers = workers;
  opts.ceiling = ceiling;
  return overlap_from(scan_range(3, bound, opts));
}

MethodRow method_row(const CensusResult& result) {
  MethodRow row;
  row.method = result.method;
  for (const auto& r : result.records) {
    const bool l = r.flags.has(Kind::Lpsp);
    const bool v = r.flags.has(Kind::Vpsp);
    row.lpsp += l;
    row.errors += !r.error.empty();
    if (v && r.q_is_pm1) ++row.vpsp_q_pm1;
    if (v && !r.q_is_pm1) {
      ++row.vpsp_q_other;
      row.vpsp_q_other_values.push_back(r.n);
    }
    row.lpsp_and_vpsp += l && v;
  }
  return row;
}

std::vector<MethodRow> method_comparison(std::uint64_t bound, const std::vector<Method>& methods,
                                         std::uint64_t seed, unsigned workers,
                                         std::uint64_t ceiling) {
  std::vector<MethodRow> rows;
  for (Method m : methods) {
    CensusOptions opts;
    opts.method = m;
    opts.kinds = {Kind::Lpsp, Kind::Vpsp};
    opts.seed = seed;
    opts.workers = workers;
    opts.ceiling = ceiling;
    rows.push_back(method_row(scan_range(3, bound, opts)));
  }
  return rows;
}

}  // namespace bpsw
