// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. `--quick` stops the census at 10^7 and skips the 10^8 row.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bpsw/arith.hpp"
#include "bpsw/bpsw.hpp"
#include "bpsw/census.hpp"
#include "bpsw/fermat.hpp"
#include "bpsw/lucas.hpp"
#include "bpsw/params.hpp"
#include "oracles.hpp"

using namespace bpsw;

namespace {

int failures = 0;

// Collects the first few mismatches for the report line.
struct Check {
  std::size_t bad = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (bad++ < 3) first += (first.empty() ? "" : "; ") + what;
  }
  bool ok() const { return bad == 0; }
  std::string why() const { return ok() ? "" : std::to_string(bad) + " mismatch(es): " + first; }
};

void report(const char* id, const std::string& title, const std::function<std::pair<bool, std::string>()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    std::tie(ok, note) = body();
  } catch (const std::exception& e) {
    note = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!ok) ++failures;
  std::printf("%s %-3s %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), secs,
              note.empty() ? "" : " -- ", note.c_str());
  std::fflush(stdout);
}

std::string row_text(const std::array<std::uint64_t, 5>& r) {
  std::ostringstream os;
  os << '(' << r[0] << ',' << r[1] << ',' << r[2] << ',' << r[3] << ',' << r[4] << ')';
  return os.str();
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// Method A* chosen from first principles: D = 5, -7, 9, ... until (D/n) = -1.
struct OracleParams {
  bool found = false;
  oracle::i64 P = 0, Q = 0;
};

OracleParams oracle_a_star(oracle::u64 n) {
  int plus_ones = 0;
  for (oracle::i64 i = 0; i < 1000; ++i) {
    const oracle::i64 D = (i % 2 == 0 ? 1 : -1) * (5 + 2 * i);
    const int j = oracle::jacobi(D, n);
    const oracle::u64 mag = static_cast<oracle::u64>(D < 0 ? -D : D);
    if (j == 0) {
      if (mag < n || mag % n != 0) return {};
      continue;
    }
    if (j == 1) {
      if (++plus_ones == 20) {
        oracle::u64 r = 0;
        while ((r + 1) * (r + 1) <= n) ++r;
        if (r * r == n) return {};
      }
      continue;
    }
    OracleParams out{true, 1, (1 - D) / 4};
    if (out.Q == -1) out = {true, 5, 5};
    const oracle::u64 g = oracle::gcd(static_cast<oracle::u64>(out.Q < 0 ? -out.Q : out.Q), n);
    if (g != 1 && g != n) return {};  // proper factor of n
    return out;
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  const std::uint64_t top = quick ? 10'000'000 : 100'000'000;

  // One census feeds criteria 1, 2 and 5.
  CensusOptions copts;
  copts.workers = workers();
  CensusResult census;
  double census_secs = 0;
  {
    const auto t0 = std::chrono::steady_clock::now();
    census = scan_range(3, top, copts);
    census_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  std::printf("census to %llu with A*: %.1fs, %llu odd composites, %zu records\n",
              static_cast<unsigned long long>(top), census_secs,
              static_cast<unsigned long long>(census.composites), census.records.size());

  report("1", "counts psp2,spsp2,lpsp,slpsp,vpsp for n < 10^k, k = 2..7, method A*", [&] {
    const std::vector<std::array<std::uint64_t, 5>> want{
        {0, 0, 0, 0, 0}, {3, 0, 2, 0, 1}, {22, 5, 9, 2, 1}, {78, 16, 57, 12, 1},
        {245, 46, 219, 58, 1}, {750, 162, 659, 178, 1}};
    const auto table = count_table(census, {100, 1000, 10000, 100000, 1000000, 10000000});
    Check c;
    std::string got;
    for (std::size_t i = 0; i < want.size(); ++i) {
      const auto r = table.rows[i].table1();
      got += (i ? " " : "") + row_text(r);
      c.expect(r == want[i], "k=" + std::to_string(i + 2) + " got " + row_text(r));
    }
    return std::pair{c.ok(), c.ok() ? got : c.why()};
  });

  if (!quick) {
    report("1+", "slow row k = 8: (2057,488,1911,505,1)", [&] {
      const auto r = count_table(census, {100000000}).rows[0].table1();
      return std::pair{r == std::array<std::uint64_t, 5>{2057, 488, 1911, 505, 1}, row_text(r)};
    });
  }

  report("2", "only vpsp below " + std::to_string(top) + " under A* is 913 with P = Q = 5", [&] {
    std::vector<std::uint64_t> v;
    bool five_five = false;
    for (const auto& r : census.records) {
      if (!r.flags.has(Kind::Vpsp)) continue;
      v.push_back(r.n);
      five_five = r.params && r.params->P == 5 && r.params->Q == 5;
    }
    // The next ones are far beyond a scan; check them point-wise.
    Check c;
    for (std::uint64_t n : {150267335403ull, 430558874533ull, 14760229232131ull, 936916995253453ull}) {
      const auto rec = classify_composite(n, Method::AStar, KindSet{Kind::Vpsp});
      c.expect(rec.flags.has(Kind::Vpsp), std::to_string(n) + " is not vpsp");
    }
    const bool ok = v == std::vector<std::uint64_t>{913} && five_five && c.ok();
    return std::pair{ok, "found {" + join(v) + "}; larger listed vpsp re-checked individually" + (c.ok() ? "" : ", " + c.why())};
  });

  report("3", "first ten psp2, epsp2, spsp2, lpsp(A*), slpsp(A*)", [] {
    using V = std::vector<std::uint64_t>;
    const std::vector<std::pair<Kind, V>> want{
        {Kind::Psp2, {341, 561, 645, 1105, 1387, 1729, 1905, 2047, 2465, 2701}},
        {Kind::Epsp2, {561, 1105, 1729, 1905, 2047, 2465, 3277, 4033, 4681, 6601}},
        {Kind::Spsp2, {2047, 3277, 4033, 4681, 8321, 15841, 29341, 42799, 49141, 52633}},
        {Kind::Lpsp, {323, 377, 1159, 1829, 3827, 5459, 5777, 9071, 9179, 10877}},
        {Kind::Slpsp, {5459, 5777, 10877, 16109, 18971, 22499, 24569, 25199, 40309, 58519}}};
    Check c;
    for (const auto& [kind, list] : want) {
      const auto got = first_k(kind, Method::AStar, 10);
      c.expect(got == list, std::string(kind_name(kind)) + " got " + join(got));
    }
    return std::pair{c.ok(), c.why()};
  });

  report("4", "ladder traces: 2^340 mod 341 and (U,V,Q^k) to 324 mod 323", [] {
    Check c;
    const auto pow_steps = mod_pow_trace(2, 340, 341);
    const std::vector<std::uint64_t> residues{2, 4, 32, 1, 2, 4, 32, 1, 1};
    c.expect(pow_steps.size() == 9, "341 trace length");
    for (std::size_t i = 0; i < std::min<std::size_t>(9, pow_steps.size()); ++i) {
      c.expect(pow_steps[i].residue == Natural(residues[i]), "341 step " + std::to_string(i + 1));
    }
    struct T {
      std::uint64_t k, u, v, q;
    };
    // After each bit: the doubled triple, then the incremented one on 1-bits.
    const std::vector<T> want{{1, 1, 5, 5},       {2, 5, 15, 25},     {5, 275, 302, 218},
                              {10, 39, 5, 43},    {20, 195, 262, 234}, {40, 56, 23, 169},
                              {81, 247, 306, 39}, {162, 0, 211, 229}, {324, 0, 135, 115}};
    const auto steps = lucas_ladder_trace(323, LucasParams::from_pq(5, 5), 324);
    c.expect(steps.size() == 9, "323 trace length");
    for (std::size_t i = 0; i < std::min<std::size_t>(9, steps.size()); ++i) {
      const LucasTriple& t = steps[i].incremented ? *steps[i].incremented : steps[i].doubled;
      const auto& w = want[i];
      c.expect(t == LucasTriple{w.k, w.u, w.v, w.q}, "323 line " + std::to_string(i + 1));
    }
    return std::pair{c.ok(), c.why()};
  });

  report("5", "psp2 & lpsp(A*) and lpsp & vpsp(A*) empty below 10^7", [&] {
    std::uint64_t a = 0, b = 0;
    for (const auto& r : census.records) {
      if (r.n >= 10'000'000) break;
      a += r.flags.has(Kind::Psp2) && r.flags.has(Kind::Lpsp);
      b += r.flags.has(Kind::Lpsp) && r.flags.has(Kind::Vpsp);
    }
    return std::pair{a == 0 && b == 0,
                     "|psp2&lpsp| = " + std::to_string(a) + ", |lpsp&vpsp| = " + std::to_string(b)};
  });

  report("6", "methods A and A* agree on lpsp/slpsp below 10^6; 10^4 random identity checks", [] {
    CensusOptions o;
    o.kinds = {Kind::Lpsp, Kind::Slpsp};
    o.method = Method::A;
    const auto a = scan_range(3, 1'000'000, o);
    o.method = Method::AStar;
    const auto s = scan_range(3, 1'000'000, o);
    const auto coprime10 = [](std::vector<std::uint64_t> v) {
      std::erase_if(v, [](std::uint64_t n) { return n % 5 == 0; });
      return v;
    };
    Check c;
    c.expect(coprime10(list_of(a, Kind::Lpsp)) == coprime10(list_of(s, Kind::Lpsp)), "lpsp lists differ");
    c.expect(coprime10(list_of(a, Kind::Slpsp)) == coprime10(list_of(s, Kind::Slpsp)), "slpsp lists differ");

    std::mt19937_64 rng(2024);
    const auto five_five = LucasParams::from_pq(5, 5), one_minus = LucasParams::from_pq(1, -1);
    for (int i = 0; i < 10000; ++i) {
      std::uint64_t n = (rng() >> 24) | 1;
      if (n < 3 || n % 5 == 0) n += 2;
      const std::uint64_t k = rng() % 1'000'000;
      const Natural N(n);
      const Natural fk = mod_pow(5, k, N), fk1 = mod_pow(5, k + 1, N);
      const auto ae = lucas_ladder(N, five_five, 2 * k), be = lucas_ladder(N, one_minus, 2 * k);
      const auto ao = lucas_ladder(N, five_five, 2 * k + 1), bo = lucas_ladder(N, one_minus, 2 * k + 1);
      const std::string at = "n=" + std::to_string(n) + " k=" + std::to_string(k);
      c.expect(ae.u == fk * be.u % N, "U even " + at);
      c.expect(ao.u == fk * bo.v % N, "U odd " + at);
      c.expect(ao.v == fk1 * bo.u % N, "V odd " + at);
      c.expect(ae.v == fk * be.v % N, "V even " + at);
    }
    return std::pair{c.ok(), c.why()};
  });

  report("7", "P = 2^k family on every spsp2 = 3 mod 4 below 10^6, k = 0..3, and 3215031751", [&] {
    Check c;
    std::size_t cases = 0;
    auto spsp = list_of(census, Kind::Spsp2);
    std::erase_if(spsp, [](std::uint64_t n) { return n >= 1'000'000 || n % 4 != 3; });
    spsp.push_back(3215031751ull);
    for (std::uint64_t n : spsp) {
      for (unsigned k = 0; k <= 3; ++k) {
        const auto r = verify_theorem1(n, k);
        ++cases;
        c.expect(r.hypotheses_hold && r.conclusions_hold == true,
                 "n=" + std::to_string(n) + " k=" + std::to_string(k));
      }
    }
    return std::pair{c.ok() && cases > 4, std::to_string(cases) + " cases" + (c.ok() ? "" : ", " + c.why())};
  });

  report("8", "r <= 30: primes p = a (mod 4r) below 10^5 have (r/p) = +1", [] {
    Check c;
    const auto primes = oracle::primes_below(100000);
    std::size_t hits = 0;
    for (std::uint64_t r = 1; r <= 30; ++r) {
      const std::uint64_t a = lemma_qr_residue(r).to_u64();
      for (std::uint64_t p : primes) {
        if (p % (4 * r) != a % (4 * r)) continue;
        ++hits;
        c.expect(oracle::jacobi(static_cast<oracle::i64>(r), p) == 1,
                 "r=" + std::to_string(r) + " p=" + std::to_string(p));
      }
    }
    return std::pair{c.ok(), std::to_string(hits) + " (r, p) pairs" + (c.ok() ? "" : ", " + c.why())};
  });

  report("9", "ladder = naive recurrence on 1000 random cases; all classifiers vs oracle for odd n < 10^5", [] {
    Check c;
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
      const std::uint64_t n = (rng() >> (20 + rng() % 40)) | 1;
      if (n < 3) continue;
      const std::int64_t P = static_cast<std::int64_t>(rng() % 41) - 20;
      std::int64_t Q = static_cast<std::int64_t>(rng() % 41) - 20;
      if (P * P - 4 * Q == 0) ++Q;
      const std::uint64_t k = rng() % 3000;
      const auto params = LucasParams::from_pq(P, Q);
      const auto lad = lucas_ladder(n, params, k);
      const auto nai = lucas_naive(n, params, k);
      const auto ora = oracle::lucas(n, P, Q, k);
      c.expect(lad == nai, "ladder/naive n=" + std::to_string(n) + " k=" + std::to_string(k));
      c.expect(lad.u == Natural(ora.u) && lad.v == Natural(ora.v) && lad.qk == Natural(ora.qk),
               "ladder/recurrence n=" + std::to_string(n));
    }

    PipelineOptions bare;
    bare.sieve_bound = 0;
    for (std::uint64_t n = 3; n < 100000; n += 2) {
      const std::string at = "n=" + std::to_string(n);
      // Fermat family from powmod.
      std::uint64_t d = n - 1;
      unsigned s = 0;
      while (d % 2 == 0) d /= 2, ++s;
      std::uint64_t x = oracle::powmod(2, d, n);
      bool strong = x == 1 || x == n - 1;
      for (unsigned r = 1; r < s; ++r) {
        x = oracle::mulmod(x, x, n);
        strong = strong || x == n - 1;
      }
      c.expect(is_sprp(n, 2).probable_prime() == strong, "sprp " + at);
      c.expect(is_prp(n, 2).probable_prime() == (oracle::powmod(2, n - 1, n) == 1), "prp " + at);

      const auto op = oracle_a_star(n);
      const auto sel = select_params(n, Method::AStar);
      const LucasParams* lp = selected_params(sel);
      c.expect(op.found == (lp != nullptr), "selection " + at);
      bool expect_prime = false;
      if (op.found && lp != nullptr) {
        c.expect(lp->P == op.P && lp->Q == op.Q, "params " + at);
        // Strong Lucas from matrix powers at each subscript of the chain.
        std::uint64_t dd = n + 1;
        unsigned ss = 0;
        while (dd % 2 == 0) dd /= 2, ++ss;
        bool slprp = oracle::lucas_matrix(n, op.P, op.Q, dd).u == 0;
        for (unsigned r = 0; r < ss && !slprp; ++r) {
          slprp = oracle::lucas_matrix(n, op.P, op.Q, dd << r).v == 0;
        }
        const auto full = oracle::lucas_matrix(n, op.P, op.Q, n + 1);
        const auto half = oracle::lucas_matrix(n, op.P, op.Q, (n + 1) / 2);
        const bool lprp = full.u == 0;
        const bool vprp = full.v == oracle::residue(2 * op.Q, n);
        const int jq = oracle::jacobi(op.Q, n);
        const bool eq = half.qk == oracle::mulmod(oracle::residue(op.Q, n), oracle::residue(jq, n), n);

        const Natural N(n);
        c.expect(is_lprp(N, *lp).probable_prime() == lprp, "lprp " + at);
        const auto sl = is_slprp(N, *lp);
        c.expect(sl.classification.probable_prime() == slprp, "slprp " + at);
        c.expect(is_vprp(N, *lp, lucas_ladder(N, *lp, N + Natural(1))).probable_prime() == vprp, "vprp " + at);
        c.expect(euler_q_check(N, *lp, lucas_ladder(N, *lp, (N + Natural(1)) >> 1).qk).probable_prime() == eq,
                 "euler-q " + at);
        expect_prime = strong && slprp && vprp && eq;
      }
      const auto rep = run_pipeline(n, bare);
      c.expect(rep.probable_prime() == expect_prime, "pipeline " + at);
      c.expect(rep.probable_prime() == oracle::is_prime(n), "truth " + at);
    }
    return std::pair{c.ok(), c.why()};
  });

  report("10", "enhanced test accepts every prime below 10^6", [] {
    std::vector<bool> composite(1'000'000, false);
    std::size_t primes = 0, rejected = 0;
    for (std::uint64_t i = 2; i < composite.size(); ++i) {
      if (composite[i]) continue;
      for (std::uint64_t j = i * i; j < composite.size(); j += i) composite[j] = true;
      ++primes;
      PipelineOptions bare;
      bare.sieve_bound = 0;
      rejected += !bpsw_enhanced(i).probable_prime() || !bpsw_enhanced(i, bare).probable_prime();
    }
    return std::pair{primes == 78498 && rejected == 0,
                     std::to_string(primes) + " primes, " + std::to_string(rejected) + " rejected"};
  });

  std::printf("DOC 11  counts to 10^15 / 2^64, the 10^10 method table and external psp(2) / Carmichael "
              "lists are out of desk scale; see README\n");
  std::printf("%s: %d criterion line(s) failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
