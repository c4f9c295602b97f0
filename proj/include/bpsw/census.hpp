#pragma once

// Range census of pseudoprimes. Every odd composite in [lo, hi) is run
// through the base-2 Fermat family and the strong Lucas ladder with the
// chosen parameter method; composites that pass anything are reported.
//
// Primality inside a scan comes from a segmented sieve, never from a
// probable-prime test, so the counts do not depend on what is being counted.
// Ranges are 64-bit (below 2^62) since the census is meant for desk-scale
// bounds.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpsw/params.hpp"
#include "bpsw/types.hpp"

namespace bpsw {

enum class Kind : std::uint8_t { Psp2, Spsp2, Epsp2, Lpsp, Slpsp, Vpsp, EulerQPsp };
inline constexpr std::size_t kind_count = 7;
inline constexpr std::array<Kind, kind_count> all_kinds{Kind::Psp2,  Kind::Spsp2, Kind::Epsp2,
                                                       Kind::Lpsp,  Kind::Slpsp, Kind::Vpsp,
                                                       Kind::EulerQPsp};

std::string_view kind_name(Kind k) noexcept;
std::optional<Kind> parse_kind(std::string_view name) noexcept;

class KindSet {
 public:
  constexpr KindSet() = default;
  constexpr explicit KindSet(std::uint8_t bits) : bits_(bits & 0x7f) {}
  constexpr KindSet(std::initializer_list<Kind> ks) {
    for (Kind k : ks) bits_ |= bit(k);
  }

  static constexpr KindSet all() { return KindSet(0x7f); }
  static constexpr KindSet fermat() { return {Kind::Psp2, Kind::Spsp2, Kind::Epsp2}; }
  static constexpr KindSet lucas() {
    return {Kind::Lpsp, Kind::Slpsp, Kind::Vpsp, Kind::EulerQPsp};
  }

  constexpr bool has(Kind k) const noexcept { return (bits_ & bit(k)) != 0; }
  constexpr void set(Kind k) noexcept { bits_ |= bit(k); }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool intersects(KindSet o) const noexcept { return (bits_ & o.bits_) != 0; }
  constexpr bool contains(KindSet o) const noexcept { return (bits_ & o.bits_) == o.bits_; }
  constexpr std::uint8_t bits() const noexcept { return bits_; }
  constexpr KindSet operator&(KindSet o) const noexcept { return KindSet(bits_ & o.bits_); }
  constexpr KindSet operator|(KindSet o) const noexcept { return KindSet(bits_ | o.bits_); }
  constexpr bool operator==(const KindSet&) const = default;

 private:
  static constexpr std::uint8_t bit(Kind k) { return std::uint8_t(1u << static_cast<unsigned>(k)); }
  std::uint8_t bits_ = 0;
};

/// Comma separated kind names, or "all".
KindSet parse_kinds(std::string_view text);
std::string kinds_to_string(KindSet s);

struct CensusRecord {
  std::uint64_t n = 0;
  KindSet flags;
  std::optional<LucasParams> params;  // present when the Lucas kinds were evaluated
  Method method = Method::AStar;
  bool q_is_pm1 = false;  // Q = +-1 (mod n)
  std::string error;      // non-empty when parameter selection gave up

  bool operator==(const CensusRecord&) const = default;
};

struct CensusOptions {
  Method method = Method::AStar;
  KindSet kinds = KindSet::all();
  std::uint64_t seed = 0;  // Method R only
  std::uint64_t chunk = std::uint64_t{1} << 16;
  unsigned workers = 1;
  std::string checkpoint_path;  // empty: no checkpointing
  std::uint64_t ceiling = 100'000'000;
  bool allow_above_ceiling = false;
  bool keep_records = true;
  SelectionLimits limits;
};

struct CensusResult {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  Method method = Method::AStar;
  KindSet kinds;
  std::uint64_t seed = 0;
  std::uint64_t composites = 0;  // odd composites classified
  std::vector<CensusRecord> records;  // ascending n
  bool resumed = false;
};

using RecordSink = std::function<void(const CensusRecord&)>;

/// Scans odd n in [lo, hi). Requires 3 <= lo < hi < 2^62 and hi within the
/// ceiling unless overridden (PreconditionError). Records reach `sink` in
/// ascending order regardless of `workers` and `chunk`. With a checkpoint
/// path, progress is saved after every batch of chunks and a matching
/// checkpoint is resumed.
CensusResult scan_range(std::uint64_t lo, std::uint64_t hi, const CensusOptions& opts = {},
                        const RecordSink& sink = {});

/// Classification of a single odd composite n on the census fast path.
CensusRecord classify_composite(std::uint64_t n, Method method, KindSet kinds,
                                std::uint64_t seed = 0, const SelectionLimits& limits = {});

/// The same classification rebuilt from the public classifiers only; slow,
/// meant for re-verifying census output. Primes get empty flags.
CensusRecord classify_reference(std::uint64_t n, Method method, KindSet kinds,
                                std::uint64_t seed = 0);

struct CountRow {
  std::uint64_t bound = 0;  // counts cover n < bound
  Method method = Method::AStar;
  std::array<std::uint64_t, kind_count> counts{};
  std::uint64_t errors = 0;

  std::uint64_t operator[](Kind k) const { return counts[static_cast<std::size_t>(k)]; }
  /// psp2, spsp2, lpsp, slpsp, vpsp.
  std::array<std::uint64_t, 5> table1() const;
};

struct CountTable {
  std::vector<CountRow> rows;  // ascending bound, cumulative
};

/// Powers of ten in (lo, hi] followed by hi itself.
std::vector<std::uint64_t> decade_buckets(std::uint64_t lo, std::uint64_t hi);

/// Cumulative counts per bucket; empty `buckets` means decade_buckets.
CountTable count_table(const CensusResult& result, std::vector<std::uint64_t> buckets = {});

/// Values of one kind, ascending.
std::vector<std::uint64_t> list_of(const CensusResult& result, Kind kind);

/// One decimal per line, LF endings, sorted and deduplicated.
void write_list(std::ostream& out, std::vector<std::uint64_t> values);
void write_list_file(const std::string& path, std::vector<std::uint64_t> values);

/// Header `bound,method,psp2,spsp2,epsp2,lpsp,slpsp,vpsp`.
void write_count_csv(std::ostream& out, const CountTable& table);

/// First k pseudoprimes of a kind, scanning growing windows up to `ceiling`.
/// Fewer than k values come back if the ceiling is reached first. The method
/// is ignored for the Fermat kinds.
std::vector<std::uint64_t> first_k(Kind kind, Method method, std::size_t k,
                                   std::uint64_t ceiling = 100'000'000, std::uint64_t seed = 0,
                                   unsigned workers = 1);

struct OverlapReport {
  std::uint64_t bound = 0;
  Method method = Method::AStar;
  std::array<std::uint64_t, 128> by_mask{};  // exact flag set -> count

  /// Number of n carrying every kind in `required`.
  std::uint64_t count(KindSet required) const;
  std::array<std::array<std::uint64_t, kind_count>, kind_count> pairwise() const;
};

OverlapReport overlap_report(std::uint64_t bound, Method method, std::uint64_t seed = 0,
                             unsigned workers = 1, std::uint64_t ceiling = 100'000'000);
OverlapReport overlap_from(const CensusResult& result);

struct MethodRow {
  Method method = Method::AStar;
  std::uint64_t lpsp = 0;
  std::uint64_t vpsp_q_pm1 = 0;
  std::uint64_t vpsp_q_other = 0;
  std::uint64_t lpsp_and_vpsp = 0;
  std::uint64_t errors = 0;
  std::vector<std::uint64_t> vpsp_q_other_values;

  bool operator==(const MethodRow&) const = default;
};

MethodRow method_row(const CensusResult& result);
std::vector<MethodRow> method_comparison(std::uint64_t bound, const std::vector<Method>& methods,
                                         std::uint64_t seed = 0, unsigned workers = 1,
                                         std::uint64_t ceiling = 100'000'000);

}  // namespace bpsw
