#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "additive.hpp"
#include "redei.hpp"
#include "rng.hpp"

namespace fqdirs {

// An enumeration request exceeded the configured candidate cap.
struct cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Binomial coefficient, saturating at 10^18; large enough to compare
// against any realistic candidate cap.
uint64_t binomial_capped(uint64_t n, uint64_t k);

// k-subsets of {0..universe-1} in colexicographic order: compare largest
// member first. colex_unrank is used for random access in parallel scans,
// colex_next for sequential walks; both agree on the order.
std::vector<uint32_t> colex_unrank(uint64_t rank, uint32_t k, uint32_t universe);
bool colex_next(std::vector<uint32_t>& s, uint32_t universe);

enum class ScanMode { Exhaustive, Sample };
// Survey level keeps only the direction-level fields (directions, coset
// flag, bound, dilates); Full adds profiles and every profile-backed check.
enum class ScanLevel { Full, Survey };
enum class ReportFormat { Jsonl, Csv };

struct ScanConfig {
  uint32_t p = 3;
  uint32_t k = 2;
  uint32_t size_min = 2;
  uint32_t size_max = 3;
  ScanMode mode = ScanMode::Exhaustive;
  uint64_t sample_count = 0;  // required in Sample mode
  uint64_t seed = 0;
  double k_constant = 1.0;  // user-chosen stand-in for the window constant
  uint64_t candidate_cap = 10'000'000;
  uint32_t jobs = 1;
  ScanLevel level = ScanLevel::Full;
  ReportFormat format = ReportFormat::Jsonl;
};

// Receives one finished report line (no trailing newline); returning false
// aborts the scan.
using LineSink = std::function<bool(std::string_view)>;

struct ScanSummary {
  uint64_t records = 0;
  uint64_t failed_records = 0;
  uint64_t oracle_checked = 0;
  uint64_t oracle_mismatch = 0;
  uint64_t coset_records = 0;
  uint64_t window_records = 0;
  bool aborted = false;
  // check name -> status name -> count, over checks that actually ran.
  std::map<std::string, std::map<std::string, uint64_t>> status_counts;
  std::vector<std::string> first_failures;  // up to 5 short descriptions

  std::string to_json(const ScanConfig& cfg, const std::string& kind) const;
};

// One record of a Cartesian-square scan. The main size bound
// (|A|^2 + 1)/2 is recorded next to |D(A)| but never asserted.
struct ProductRecord {
  uint64_t index = 0;
  SubsetA set;
  bool coset = false;
  Fq coset_c;
  Fq coset_d;
  uint64_t num_directions = 0;
  Rational bound;
  bool bound_holds = false;
  bool window = false;
  uint64_t max_dilate = 0;
  bool has_profile = false;
  uint64_t s = 0;
  AlgMult t;
  BoundsVerdict bounds;
  SupportVerdict support;
  OrderVerdict s_le_t;
  Status collapse_status = Status::NotApplicable;
  uint64_t collapse_triggered = 0;
  std::string collapse_witness;
  std::optional<bool> oracle_ok;  // empty when this record was not sampled
};

ProductRecord build_product_record(const FieldCtx& F, const SubsetA& A, uint64_t index,
                                   ScanLevel level, double k_constant, bool oracle);
std::string product_record_jsonl(const FieldCtx& F, const ProductRecord& r);
std::string product_record_csv(const FieldCtx& F, const ProductRecord& r);
extern const char* const kProductCsvHeader;

struct PointsetRecord {
  uint64_t index = 0;
  PointSet set;
  uint64_t num_directions = 0;  // affine only
  bool vertical = false;
  bool has_profile = false;
  uint64_t s = 0;
  AlgMult t;
  BoundsVerdict bounds;
  SupportVerdict support;
  OrderVerdict s_le_t;
};

PointsetRecord build_pointset_record(const FieldCtx& F, const PointSet& U, uint64_t index,
                                     ScanLevel level);
std::string pointset_record_jsonl(const FieldCtx& F, const PointsetRecord& r);
std::string pointset_record_csv(const FieldCtx& F, const PointsetRecord& r);
extern const char* const kPointsetCsvHeader;

// Sweep over subsets A of the field (exhaustive in colex order, or
// sampled by a counter-based generator). Identical configs produce
// byte-identical line streams for every jobs width.
ScanSummary scan_products(const ScanConfig& cfg, const LineSink& sink);
// Sweep over random planar point sets of 2..q points; sample mode only.
ScanSummary scan_pointsets(const ScanConfig& cfg, const LineSink& sink);

struct MinStratum {
  uint64_t sets = 0;
  uint64_t min_directions = 0;
  uint64_t attaining = 0;
  std::vector<SubsetA> examples;  // up to 8 minimizers
};

struct MinDirectionsReport {
  uint32_t p = 0;
  uint32_t k = 0;
  uint32_t set_size = 0;
  uint64_t total_sets = 0;
  MinStratum coset;
  MinStratum non_coset;
  std::string to_json(const FieldCtx& F) const;
};

// Exhaustive minimum of |D(A)| over all size-n subsets, reported per
// coset stratum without interpretation.
MinDirectionsReport find_min_directions(uint32_t p, uint32_t k, uint32_t set_size, uint64_t cap);

struct VerifyBudget {
  uint32_t max_subset_size = 4;
  uint64_t exhaustive_cap = 5000;  // enumerate every set when the count fits
  uint64_t sample_sets = 1500;     // otherwise, this many sampled sets
  uint64_t plunnecke_trials = 1000;
  uint64_t pigeonhole_trials = 100;
  uint64_t pair_samples = 512;  // sampled subset pairs for large dilate checks
};

struct VerifySection {
  std::string name;
  Status status = Status::Pass;  // Pass unless any instance failed
  bool exhaustive = true;
  uint64_t checked = 0;
  uint64_t failures = 0;
  uint64_t not_applicable = 0;
  uint64_t not_triggered = 0;
  uint64_t hypothesis_count = 0;
  std::vector<std::string> witnesses;  // first few failure descriptions
};

struct VerifyReport {
  uint32_t p = 0;
  uint32_t k = 0;
  uint64_t seed = 0;
  VerifyBudget budget;
  std::vector<VerifySection> sections;

  bool all_pass() const;
  std::string to_json() const;
};

// Batch driver over the lemma checkers (dilate cardinality, sum growth,
// subfield closure, multiplicity collapse) plus the pigeonhole property.
VerifyReport verify_lemmas(uint32_t p, uint32_t k, uint64_t seed, const VerifyBudget& budget);

// |U| = q+1 random points always determine all q+1 directions.
VerifySection run_pigeonhole(const FieldCtx& F, uint64_t trials, uint64_t seed);

// Single-set query payloads (the C API surface for the one-shot
// subcommands). The profile payload carries both the machine coefficient
// form and a display form of each polynomial, so presentation layers never
// re-derive math.
std::string directions_query_json(const FieldCtx& F, const SubsetA& A);
std::string redei_query_json(const FieldCtx& F, const SubsetA& A, Fq slope);

// Deterministic ordered parallel map: produce(i) for i in [0, total) runs
// on up to `jobs` workers, emit(i, item) runs on the calling thread in
// index order. Returns false when emit aborted the run.
template <class T>
bool run_ordered(uint64_t total, uint32_t jobs, const std::function<T(uint64_t)>& produce,
                 const std::function<bool(uint64_t, T&)>& emit) {
  if (jobs <= 1) {
    for (uint64_t i = 0; i < total; ++i) {
      T item = produce(i);
      if (!emit(i, item)) return false;
    }
    return true;
  }
  const uint64_t chunk = 2048;
  std::vector<T> buf;
  for (uint64_t base = 0; base < total; base += chunk) {
    uint64_t len = std::min(chunk, total - base);
    buf.clear();
    buf.resize(size_t(len));
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (uint32_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (uint64_t off = w; off < len; off += jobs) {
          if (failed.load(std::memory_order_relaxed)) return;
          try {
            buf[size_t(off)] = produce(base + off);
          } catch (...) {
            std::scoped_lock lk(error_mu);
            if (!error) error = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
            return;
          }
        }
      });
    }
    for (auto& t : workers) t.join();
    if (error) std::rethrow_exception(error);
    for (uint64_t off = 0; off < len; ++off) {
      if (!emit(base + off, buf[size_t(off)])) return false;
    }
  }
  return true;
}

}  // namespace fqdirs
