#include "harness.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace fqdirs {

using ojson = nlohmann::ordered_json;

namespace {

constexpr uint64_t kBinomialSat = 1'000'000'000'000'000'000ULL;

ojson t_json(const AlgMult& t) { return t.is_q ? ojson("q") : ojson(t.value); }

std::string t_csv(const AlgMult& t) { return t.str(); }

ojson set_json(const FieldCtx& F, const SubsetA& A) {
  ojson arr = ojson::array();
  for (Fq a : A.elems) arr.push_back(F.format_element(a));
  return arr;
}

std::string set_cell(const FieldCtx& F, const SubsetA& A) {
  std::string out;
  for (size_t i = 0; i < A.elems.size(); ++i) {
    if (i) out += ' ';
    out += F.format_element(A.elems[i]);
  }
  return out;
}

ojson pointset_json(const FieldCtx& F, const PointSet& U) {
  ojson arr = ojson::array();
  for (const Point& pt : U.pts) arr.push_back(format_point(F, pt));
  return arr;
}

std::string pointset_cell(const FieldCtx& F, const PointSet& U) {
  std::string out;
  for (size_t i = 0; i < U.pts.size(); ++i) {
    if (i) out += ' ';
    out += format_point(F, U.pts[i]);
  }
  return out;
}

ojson bounds_json(const BoundsVerdict& b) {
  ojson j;
  j["status"] = to_string(b.status);
  j["branch"] = b.branch;
  if (b.status == Status::Pass || b.status == Status::Fail) {
    j["lower"] = b.lower.str();
    j["upper"] = b.upper.str();
  }
  return j;
}

ojson support_json(const SupportVerdict& s) {
  ojson j;
  j["status"] = to_string(s.status);
  if (!s.violations.empty()) j["violations"] = s.violations;
  return j;
}

ojson order_json(const OrderVerdict& o) {
  ojson j;
  j["status"] = to_string(o.status);
  if (!o.violations.empty()) j["violations"] = o.violations;
  return j;
}

// The window annotation: k_constant * p^(2/3) < |A| < p.
bool in_window(double k_constant, uint32_t p, uint64_t size) {
  return double(size) > k_constant * std::cbrt(double(p) * double(p)) && size < p;
}

}  // namespace

uint64_t binomial_capped(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kBinomialSat) return kBinomialSat;
  }
  return uint64_t(r);
}

std::vector<uint32_t> colex_unrank(uint64_t rank, uint32_t k, uint32_t universe) {
  std::vector<uint32_t> s(k);
  uint64_t r = rank;
  for (uint32_t i = k; i >= 1; --i) {
    uint32_t c = i - 1;
    while (c + 1 < universe && binomial_capped(c + 1, i) <= r) ++c;
    s[i - 1] = c;
    r -= binomial_capped(c, i);
  }
  return s;
}

bool colex_next(std::vector<uint32_t>& s, uint32_t universe) {
  for (size_t i = 0; i < s.size(); ++i) {
    uint32_t limit = (i + 1 < s.size()) ? s[i + 1] : universe;
    if (s[i] + 1 < limit) {
      ++s[i];
      for (size_t j = 0; j < i; ++j) s[j] = uint32_t(j);
      return true;
    }
  }
  return false;
}

ProductRecord build_product_record(const FieldCtx& F, const SubsetA& A, uint64_t index,
                                   ScanLevel level, double k_constant, bool oracle) {
  if (A.size() < 2) throw domain_error("scan sets need at least two elements");
  ProductRecord r;
  r.index = index;
  r.set = A;

  std::vector<Fq> dirs = product_directions(F, A);
  r.num_directions = dirs.size();

  CosetCheck cc = is_affine_prime_coset(F, A);
  r.coset = cc.is_coset;
  r.coset_c = cc.c;
  r.coset_d = cc.d;

  int64_t n = int64_t(A.size());
  r.bound = Rational::make(n * n + 1, 2);
  r.bound_holds = r.bound.leq_int(int64_t(r.num_directions));
  r.window = in_window(k_constant, F.p(), A.size());

  // |y*A - A| per determined ratio, via a stamped scratch buffer.
  std::vector<uint64_t> dilate(dirs.size(), 0);
  std::vector<uint32_t> stamp(F.q(), UINT32_MAX);
  for (size_t di = 0; di < dirs.size(); ++di) {
    uint64_t cnt = 0;
    for (Fq a : A.elems) {
      for (Fq b : A.elems) {
        uint64_t idx = F.index(F.sub(F.mul(dirs[di], a), b));
        if (stamp[idx] != uint32_t(di)) {
          stamp[idx] = uint32_t(di);
          ++cnt;
        }
      }
    }
    dilate[di] = cnt;
    r.max_dilate = std::max(r.max_dilate, cnt);
  }

  if (level == ScanLevel::Full && A.size() * A.size() <= F.q()) {
    PointSet U = grid(F, A);
    ProfileSummary ps = profile(F, U);
    r.has_profile = true;
    r.s = ps.s_min;
    r.t = ps.t_min;
    r.bounds = check_direction_bounds(F, ps);
    r.support = verify_profile(F, U, ps);
    r.s_le_t = check_s_le_t(F, ps);

    // The determined affine directions of A x A are exactly the ratio set,
    // in the same order.
    if (F.k() == 2 && A.size() < F.p() && ps.dirs.size() == dirs.size()) {
      r.collapse_status = Status::NotTriggered;
      for (size_t di = 0; di < dirs.size(); ++di) {
        if (dilate[di] <= F.p()) continue;
        ++r.collapse_triggered;
        const DirectionProfile& d = ps.dirs[di];
        if (!(d.s == 1 && !d.t.is_q && d.t.value == 1)) {
          r.collapse_status = Status::Fail;
          if (r.collapse_witness.empty()) {
            r.collapse_witness = "y=" + F.format_element(d.y) + " dilate=" +
                                 std::to_string(dilate[di]) + " s=" + std::to_string(d.s) +
                                 " t=" + d.t.str();
          }
        }
      }
      if (r.collapse_triggered > 0 && r.collapse_status != Status::Fail) {
        r.collapse_status = Status::Pass;
      }
    }
  }

  if (oracle) r.oracle_ok = (product_directions_naive(F, A).size() == r.num_directions);
  return r;
}

std::string product_record_jsonl(const FieldCtx& F, const ProductRecord& r) {
  ojson j;
  j["v"] = 1;
  j["kind"] = "product";
  j["index"] = r.index;
  j["size"] = r.set.size();
  j["set"] = set_json(F, r.set);
  j["coset"] = r.coset;
  if (r.coset) {
    j["coset_witness"] = ojson{{"c", F.format_element(r.coset_c)},
                               {"d", F.format_element(r.coset_d)}};
  } else {
    j["coset_witness"] = nullptr;
  }
  j["num_directions"] = r.num_directions;
  j["bound"] = r.bound.str();
  j["bound_holds"] = r.bound_holds;
  j["window"] = r.window;
  j["max_dilate"] = r.max_dilate;
  if (r.has_profile) {
    j["profile"] = ojson{{"s", r.s}, {"t", t_json(r.t)}};
    ojson v;
    v["direction_bounds"] = bounds_json(r.bounds);
    v["support"] = support_json(r.support);
    v["s_le_t"] = order_json(r.s_le_t);
    ojson c;
    c["status"] = to_string(r.collapse_status);
    c["triggered"] = r.collapse_triggered;
    if (!r.collapse_witness.empty()) c["witness"] = r.collapse_witness;
    v["multiplicity_collapse"] = c;
    j["verdicts"] = v;
  } else {
    j["profile"] = nullptr;
  }
  if (r.oracle_ok.has_value()) j["oracle"] = *r.oracle_ok ? "Pass" : "Fail";
  return j.dump();
}

const char* const kProductCsvHeader =
    "v,kind,index,size,set,coset,coset_c,coset_d,num_directions,bound,bound_holds,window,"
    "max_dilate,s,t,direction_bounds,bounds_branch,bounds_lower,bounds_upper,support,s_le_t,"
    "multiplicity_collapse,collapse_triggered,oracle";

std::string product_record_csv(const FieldCtx& F, const ProductRecord& r) {
  std::string row = "1,product," + std::to_string(r.index) + "," + std::to_string(r.set.size()) +
                    "," + set_cell(F, r.set) + ",";
  row += r.coset ? "true" : "false";
  row += ",";
  row += r.coset ? F.format_element(r.coset_c) : "";
  row += ",";
  row += r.coset ? F.format_element(r.coset_d) : "";
  row += "," + std::to_string(r.num_directions) + "," + r.bound.str() + ",";
  row += r.bound_holds ? "true" : "false";
  row += ",";
  row += r.window ? "true" : "false";
  row += "," + std::to_string(r.max_dilate) + ",";
  if (r.has_profile) {
    row += std::to_string(r.s);
    row += "," + t_csv(r.t) + ",";
    row += to_string(r.bounds.status);
    row += "," + r.bounds.branch + ",";
    bool have_sides = r.bounds.status == Status::Pass || r.bounds.status == Status::Fail;
    row += have_sides ? r.bounds.lower.str() : "";
    row += ",";
    row += have_sides ? r.bounds.upper.str() : "";
    row += ",";
    row += to_string(r.support.status);
    row += ",";
    row += to_string(r.s_le_t.status);
    row += ",";
    row += to_string(r.collapse_status);
    row += "," + std::to_string(r.collapse_triggered) + ",";
  } else {
    row += ",,,,,,,,,,";
  }
  if (r.oracle_ok.has_value()) row += *r.oracle_ok ? "Pass" : "Fail";
  return row;
}

PointsetRecord build_pointset_record(const FieldCtx& F, const PointSet& U, uint64_t index,
                                     ScanLevel level) {
  PointsetRecord r;
  r.index = index;
  r.set = U;
  DirectionSet ds = pointset_directions(F, U);
  r.num_directions = ds.affine.size();
  r.vertical = ds.vertical;
  if (level == ScanLevel::Full && U.size() <= F.q()) {
    ProfileSummary ps = profile(F, U);
    r.has_profile = true;
    r.s = ps.s_min;
    r.t = ps.t_min;
    r.bounds = check_direction_bounds(F, ps);
    r.support = verify_profile(F, U, ps);
    r.s_le_t = check_s_le_t(F, ps);
  }
  return r;
}

std::string pointset_record_jsonl(const FieldCtx& F, const PointsetRecord& r) {
  ojson j;
  j["v"] = 1;
  j["kind"] = "pointset";
  j["index"] = r.index;
  j["size"] = r.set.size();
  j["set"] = pointset_json(F, r.set);
  j["num_directions"] = r.num_directions;
  j["vertical"] = r.vertical;
  if (r.has_profile) {
    j["profile"] = ojson{{"s", r.s}, {"t", t_json(r.t)}};
    ojson v;
    v["direction_bounds"] = bounds_json(r.bounds);
    v["support"] = support_json(r.support);
    v["s_le_t"] = order_json(r.s_le_t);
    j["verdicts"] = v;
  } else {
    j["profile"] = nullptr;
  }
  return j.dump();
}

const char* const kPointsetCsvHeader =
    "v,kind,index,size,set,num_directions,vertical,s,t,direction_bounds,bounds_branch,"
    "bounds_lower,bounds_upper,support,s_le_t";

std::string pointset_record_csv(const FieldCtx& F, const PointsetRecord& r) {
  std::string row = "1,pointset," + std::to_string(r.index) + "," + std::to_string(r.set.size()) +
                    "," + pointset_cell(F, r.set) + "," + std::to_string(r.num_directions) + ",";
  row += r.vertical ? "true" : "false";
  row += ",";
  if (r.has_profile) {
    row += std::to_string(r.s);
    row += "," + t_csv(r.t) + ",";
    row += to_string(r.bounds.status);
    row += "," + r.bounds.branch + ",";
    bool have_sides = r.bounds.status == Status::Pass || r.bounds.status == Status::Fail;
    row += have_sides ? r.bounds.lower.str() : "";
    row += ",";
    row += have_sides ? r.bounds.upper.str() : "";
    row += ",";
    row += to_string(r.support.status);
    row += ",";
    row += to_string(r.s_le_t.status);
  } else {
    row += ",,,,,,,";
  }
  return row;
}

namespace {

void count_status(ScanSummary& sum, const char* check, Status st) {
  ++sum.status_counts[check][to_string(st)];
}

void accumulate_product(ScanSummary& sum, const ProductRecord& r, const FieldCtx& F) {
  ++sum.records;
  if (r.coset) ++sum.coset_records;
  if (r.window) ++sum.window_records;
  bool fail = false;
  if (r.has_profile) {
    count_status(sum, "direction_bounds", r.bounds.status);
    count_status(sum, "support", r.support.status);
    count_status(sum, "s_le_t", r.s_le_t.status);
    count_status(sum, "multiplicity_collapse", r.collapse_status);
    fail |= r.bounds.status == Status::Fail;
    fail |= r.support.status == Status::Fail;
    fail |= r.s_le_t.status == Status::Fail;
    fail |= r.collapse_status == Status::Fail;
  }
  if (r.oracle_ok.has_value()) {
    ++sum.oracle_checked;
    if (!*r.oracle_ok) {
      ++sum.oracle_mismatch;
      fail = true;
    }
  }
  if (fail) {
    ++sum.failed_records;
    if (sum.first_failures.size() < 5) {
      std::string desc = "index=" + std::to_string(r.index) + " set=" + set_cell(F, r.set);
      if (r.has_profile && r.bounds.status == Status::Fail) desc += " direction_bounds";
      if (r.has_profile && r.support.status == Status::Fail) desc += " support";
      if (r.has_profile && r.s_le_t.status == Status::Fail) desc += " s_le_t";
      if (r.has_profile && r.collapse_status == Status::Fail) {
        desc += " multiplicity_collapse(" + r.collapse_witness + ")";
      }
      if (r.oracle_ok.has_value() && !*r.oracle_ok) desc += " oracle";
      sum.first_failures.push_back(desc);
    }
  }
}

void accumulate_pointset(ScanSummary& sum, const PointsetRecord& r, const FieldCtx& F) {
  ++sum.records;
  bool fail = false;
  if (r.has_profile) {
    count_status(sum, "direction_bounds", r.bounds.status);
    count_status(sum, "support", r.support.status);
    count_status(sum, "s_le_t", r.s_le_t.status);
    fail |= r.bounds.status == Status::Fail;
    fail |= r.support.status == Status::Fail;
    fail |= r.s_le_t.status == Status::Fail;
  }
  if (fail) {
    ++sum.failed_records;
    if (sum.first_failures.size() < 5) {
      sum.first_failures.push_back("index=" + std::to_string(r.index) + " set=" +
                                   pointset_cell(F, r.set));
    }
  }
}

void validate_common(const FieldCtx& F, const ScanConfig& cfg) {
  if (cfg.size_min < 2) throw std::invalid_argument("size_min must be at least 2");
  if (cfg.size_min > cfg.size_max) throw std::invalid_argument("size_min exceeds size_max");
  if (cfg.size_max > F.q()) throw std::invalid_argument("size_max exceeds the field order");
  if (cfg.mode == ScanMode::Sample && cfg.sample_count == 0) {
    throw std::invalid_argument("sample mode needs a positive sample count");
  }
}

}  // namespace

std::string ScanSummary::to_json(const ScanConfig& cfg, const std::string& kind) const {
  ojson j;
  j["v"] = 1;
  j["kind"] = kind;
  ojson c;
  c["p"] = cfg.p;
  c["ext"] = cfg.k;
  c["size_min"] = cfg.size_min;
  c["size_max"] = cfg.size_max;
  c["mode"] = cfg.mode == ScanMode::Exhaustive ? "exhaustive" : "sample";
  c["samples"] = cfg.sample_count;
  c["seed"] = cfg.seed;
  c["k_constant"] = cfg.k_constant;
  c["cap"] = cfg.candidate_cap;
  c["level"] = cfg.level == ScanLevel::Full ? "full" : "survey";
  c["format"] = cfg.format == ReportFormat::Jsonl ? "jsonl" : "csv";
  j["config"] = c;
  j["records"] = records;
  j["failed_records"] = failed_records;
  j["aborted"] = aborted;
  j["coset_records"] = coset_records;
  j["window_records"] = window_records;
  j["oracle"] = ojson{{"checked", oracle_checked}, {"mismatch", oracle_mismatch}};
  ojson sc;
  for (const auto& [check, by_status] : status_counts) {
    ojson one;
    for (const auto& [st, n] : by_status) one[st] = n;
    sc[check] = one;
  }
  j["status_counts"] = sc;
  j["first_failures"] = first_failures;
  return j.dump();
}

ScanSummary scan_products(const ScanConfig& cfg, const LineSink& sink) {
  FieldCtx F(cfg.p, cfg.k);
  validate_common(F, cfg);
  uint32_t jobs = std::max<uint32_t>(1, cfg.jobs);

  std::vector<uint64_t> block_offset;  // running offset per size block
  std::vector<uint32_t> block_size;
  uint64_t total = 0;
  if (cfg.mode == ScanMode::Exhaustive) {
    for (uint32_t n = cfg.size_min; n <= cfg.size_max; ++n) {
      block_offset.push_back(total);
      block_size.push_back(n);
      total += binomial_capped(F.q(), n);
      if (total > cfg.candidate_cap) {
        throw cap_error("exhaustive enumeration exceeds the candidate cap");
      }
    }
  } else {
    total = cfg.sample_count;
    if (total > cfg.candidate_cap) throw cap_error("sample count exceeds the candidate cap");
  }

  ScanSummary sum;
  if (cfg.format == ReportFormat::Csv && total > 0) {
    if (!sink(kProductCsvHeader)) {
      sum.aborted = true;
      return sum;
    }
  }

  std::function<ProductRecord(uint64_t)> produce = [&](uint64_t i) {
    SubsetA A;
    if (cfg.mode == ScanMode::Exhaustive) {
      size_t b = block_offset.size() - 1;
      while (block_offset[b] > i) --b;
      std::vector<uint32_t> idx = colex_unrank(i - block_offset[b], block_size[b],
                                               uint32_t(F.q()));
      std::vector<Fq> elems;
      elems.reserve(idx.size());
      for (uint32_t e : idx) elems.push_back(F.from_index(e));
      A = make_subset(F, std::move(elems));
    } else {
      CounterRng rng(cfg.seed, i);
      uint64_t n = cfg.size_min + rng.below(cfg.size_max - cfg.size_min + 1);
      std::vector<Fq> elems;
      elems.reserve(n);
      for (uint64_t e : random_subset_indices(rng, F.q(), n)) elems.push_back(F.from_index(e));
      A = make_subset(F, std::move(elems));
    }
    return build_product_record(F, A, i, cfg.level, cfg.k_constant, i % 100 == 0);
  };
  std::function<bool(uint64_t, ProductRecord&)> emit = [&](uint64_t, ProductRecord& r) {
    accumulate_product(sum, r, F);
    std::string line = cfg.format == ReportFormat::Jsonl ? product_record_jsonl(F, r)
                                                         : product_record_csv(F, r);
    return sink(line);
  };
  bool done = run_ordered<ProductRecord>(total, jobs, produce, emit);
  sum.aborted = !done;
  return sum;
}

ScanSummary scan_pointsets(const ScanConfig& cfg, const LineSink& sink) {
  FieldCtx F(cfg.p, cfg.k);
  validate_common(F, cfg);
  if (cfg.mode != ScanMode::Sample) {
    throw std::invalid_argument("point-set scans are sampled; use sample mode");
  }
  uint32_t jobs = std::max<uint32_t>(1, cfg.jobs);
  uint64_t total = cfg.sample_count;
  if (total > cfg.candidate_cap) throw cap_error("sample count exceeds the candidate cap");

  ScanSummary sum;
  if (cfg.format == ReportFormat::Csv && total > 0) {
    if (!sink(kPointsetCsvHeader)) {
      sum.aborted = true;
      return sum;
    }
  }

  std::function<PointsetRecord(uint64_t)> produce = [&](uint64_t i) {
    CounterRng rng(cfg.seed, i);
    uint64_t n = cfg.size_min + rng.below(cfg.size_max - cfg.size_min + 1);
    std::vector<Point> pts;
    pts.reserve(n);
    for (uint64_t g : random_subset_indices(rng, F.q() * F.q(), n)) {
      pts.push_back(Point{F.from_index(g / F.q()), F.from_index(g % F.q())});
    }
    return build_pointset_record(F, make_pointset(F, std::move(pts)), i, cfg.level);
  };
  std::function<bool(uint64_t, PointsetRecord&)> emit = [&](uint64_t, PointsetRecord& r) {
    accumulate_pointset(sum, r, F);
    std::string line = cfg.format == ReportFormat::Jsonl ? pointset_record_jsonl(F, r)
                                                         : pointset_record_csv(F, r);
    return sink(line);
  };
  bool done = run_ordered<PointsetRecord>(total, jobs, produce, emit);
  sum.aborted = !done;
  return sum;
}

std::string MinDirectionsReport::to_json(const FieldCtx& F) const {
  auto stratum = [&](const MinStratum& s) -> ojson {
    if (s.sets == 0) return nullptr;
    ojson j;
    j["sets"] = s.sets;
    j["min_directions"] = s.min_directions;
    j["attaining"] = s.attaining;
    ojson ex = ojson::array();
    for (const SubsetA& A : s.examples) ex.push_back(set_json(F, A));
    j["examples"] = ex;
    return j;
  };
  ojson j;
  j["v"] = 1;
  j["kind"] = "min_directions";
  j["p"] = p;
  j["ext"] = k;
  j["size"] = set_size;
  j["total_sets"] = total_sets;
  j["strata"] = ojson{{"coset", stratum(coset)}, {"non_coset", stratum(non_coset)}};
  return j.dump();
}

MinDirectionsReport find_min_directions(uint32_t p, uint32_t k, uint32_t set_size, uint64_t cap) {
  FieldCtx F(p, k);
  if (set_size < 2) throw std::invalid_argument("set size must be at least 2");
  if (set_size > F.q()) throw std::invalid_argument("set size exceeds the field order");
  uint64_t total = binomial_capped(F.q(), set_size);
  if (total > cap) throw cap_error("exhaustive enumeration exceeds the candidate cap");

  MinDirectionsReport rep;
  rep.p = p;
  rep.k = k;
  rep.set_size = set_size;
  rep.total_sets = total;

  std::vector<uint32_t> idx(set_size);
  for (uint32_t i = 0; i < set_size; ++i) idx[i] = i;
  do {
    std::vector<Fq> elems;
    elems.reserve(set_size);
    for (uint32_t e : idx) elems.push_back(F.from_index(e));
    SubsetA A = make_subset(F, std::move(elems));
    uint64_t d = product_directions(F, A).size();
    MinStratum& st = is_affine_prime_coset(F, A).is_coset ? rep.coset : rep.non_coset;
    ++st.sets;
    if (st.sets == 1 || d < st.min_directions) {
      st.min_directions = d;
      st.attaining = 1;
      st.examples.clear();
      st.examples.push_back(A);
    } else if (d == st.min_directions) {
      ++st.attaining;
      if (st.examples.size() < 8) st.examples.push_back(A);
    }
  } while (colex_next(idx, uint32_t(F.q())));
  return rep;
}

namespace {

void section_fail(VerifySection& sec, const std::string& witness) {
  sec.status = Status::Fail;
  ++sec.failures;
  if (sec.witnesses.size() < 8) sec.witnesses.push_back(witness);
}

// Enumerate candidate subsets of sizes 2..max_size: exhaustively in colex
// order when the count fits the budget, otherwise by seeded sampling.
template <class Fn>
bool for_each_candidate_set(const FieldCtx& F, const VerifyBudget& budget, uint64_t seed,
                            uint64_t salt, Fn&& fn) {
  uint32_t max_size = std::min<uint32_t>(budget.max_subset_size, uint32_t(F.q()));
  uint64_t total = 0;
  for (uint32_t n = 2; n <= max_size; ++n) total += binomial_capped(F.q(), n);
  if (total <= budget.exhaustive_cap) {
    for (uint32_t n = 2; n <= max_size; ++n) {
      std::vector<uint32_t> idx(n);
      for (uint32_t i = 0; i < n; ++i) idx[i] = i;
      do {
        std::vector<Fq> elems;
        elems.reserve(n);
        for (uint32_t e : idx) elems.push_back(F.from_index(e));
        fn(make_subset(F, std::move(elems)));
      } while (colex_next(idx, uint32_t(F.q())));
    }
    return true;
  }
  for (uint64_t i = 0; i < budget.sample_sets; ++i) {
    CounterRng rng(seed ^ salt, i);
    uint64_t n = 2 + rng.below(max_size - 1);
    std::vector<Fq> elems;
    elems.reserve(n);
    for (uint64_t e : random_subset_indices(rng, F.q(), n)) elems.push_back(F.from_index(e));
    fn(make_subset(F, std::move(elems)));
  }
  return false;
}

}  // namespace

VerifySection run_pigeonhole(const FieldCtx& F, uint64_t trials, uint64_t seed) {
  VerifySection sec;
  sec.name = "pigeonhole";
  for (uint64_t i = 0; i < trials; ++i) {
    CounterRng rng(seed, 0xBADC0FFEULL + i);
    std::vector<Point> pts;
    for (uint64_t g : random_subset_indices(rng, F.q() * F.q(), F.q() + 1)) {
      pts.push_back(Point{F.from_index(g / F.q()), F.from_index(g % F.q())});
    }
    PointSet U = make_pointset(F, std::move(pts));
    DirectionSet ds = pointset_directions(F, U);
    ++sec.checked;
    ++sec.hypothesis_count;
    if (ds.total() != F.q() + 1) {
      section_fail(sec, "trial " + std::to_string(i) + " determined " +
                            std::to_string(ds.total()) + " directions");
    }
  }
  return sec;
}

VerifyReport verify_lemmas(uint32_t p, uint32_t k, uint64_t seed, const VerifyBudget& budget) {
  if (budget.max_subset_size < 2 || budget.exhaustive_cap == 0 || budget.sample_sets == 0 ||
      budget.plunnecke_trials == 0 || budget.pigeonhole_trials == 0 ||
      budget.pair_samples == 0) {
    throw std::invalid_argument("verify budget has an empty field");
  }
  FieldCtx F(p, k);
  VerifyReport rep;
  rep.p = p;
  rep.k = k;
  rep.seed = seed;
  rep.budget = budget;

  // Cardinality identity |X1 +- r*X2| = |X1||X2| for undetermined r.
  {
    VerifySection sec;
    sec.name = "dilate_product";
    uint64_t set_no = 0;
    sec.exhaustive = for_each_candidate_set(F, budget, seed, 0xD117, [&](const SubsetA& X) {
      uint64_t my_no = set_no++;
      std::vector<Fq> dirs = product_directions(F, X);
      bool any_r = false;
      for (uint64_t ri = 0; ri < F.q(); ++ri) {
        Fq r = F.from_index(ri);
        if (std::binary_search(dirs.begin(), dirs.end(), r)) continue;
        any_r = true;
        PairPolicy policy{6, budget.pair_samples, seed ^ (my_no * 131 + ri)};
        DilateVerdict v = check_dilate_product(F, X, r, policy);
        if (v.status == Status::Pass) {
          ++sec.checked;
        } else if (v.status == Status::NotApplicable) {
          ++sec.not_applicable;
        } else {
          section_fail(sec, "X=" + set_cell(F, X) + " r=" + F.format_element(r) + " " +
                                (v.violations.empty() ? "" : v.violations.front()));
        }
      }
      if (any_r) ++sec.hypothesis_count;
    });
    rep.sections.push_back(std::move(sec));
  }

  // Sum growth |B1+...+Bk| |X|^(k-1) <= prod |X+Bi| on random instances.
  {
    VerifySection sec;
    sec.name = "plunnecke";
    sec.exhaustive = false;
    for (uint64_t i = 0; i < budget.plunnecke_trials; ++i) {
      CounterRng rng(seed, 0x9B1A + i);
      uint64_t max_size = std::min<uint64_t>(F.q(), 12);
      auto draw = [&]() {
        uint64_t n = 1 + rng.below(max_size);
        std::vector<Fq> elems;
        for (uint64_t e : random_subset_indices(rng, F.q(), n)) elems.push_back(F.from_index(e));
        return make_subset(F, std::move(elems));
      };
      SubsetA X = draw();
      std::vector<SubsetA> Bs;
      uint64_t kk = 1 + rng.below(3);
      for (uint64_t b = 0; b < kk; ++b) Bs.push_back(draw());
      GrowthVerdict v = check_plunnecke(F, X, Bs);
      ++sec.checked;
      ++sec.hypothesis_count;
      if (v.status == Status::Fail) {
        section_fail(sec, "trial " + std::to_string(i) + " lhs=" + v.lhs + " rhs=" + v.rhs);
      }
    }
    rep.sections.push_back(std::move(sec));
  }

  // Closure of D(A) under A* and 1+* forces D(A) to be the generated
  // subfield.
  {
    VerifySection sec;
    sec.name = "subfield_closure";
    sec.exhaustive = for_each_candidate_set(F, budget, seed, 0x5F1E, [&](const SubsetA& A) {
      SubfieldVerdict v = check_subfield_closure(F, A);
      if (v.status == Status::NotApplicable) {
        ++sec.not_applicable;
        return;
      }
      ++sec.hypothesis_count;
      ++sec.checked;
      if (v.status == Status::Fail) {
        section_fail(sec, "A=" + set_cell(F, A) + " |D|=" + std::to_string(v.num_directions) +
                              " subfield_order=" + std::to_string(v.subfield_order));
      }
    });
    rep.sections.push_back(std::move(sec));
  }

  // Large dilates collapse both multiplicities (quadratic extensions only).
  if (k == 2) {
    VerifySection sec;
    sec.name = "multiplicity_collapse";
    sec.exhaustive = for_each_candidate_set(F, budget, seed, 0xC011, [&](const SubsetA& A) {
      if (A.size() >= F.p()) {
        ++sec.not_applicable;
        return;
      }
      ++sec.hypothesis_count;
      for (Fq y : product_directions(F, A)) {
        CollapseVerdict v = check_multiplicity_collapse(F, A, y);
        if (v.status == Status::NotTriggered) {
          ++sec.not_triggered;
        } else {
          ++sec.checked;
          if (v.status == Status::Fail) {
            section_fail(sec, "A=" + set_cell(F, A) + " y=" + F.format_element(y) +
                                  " dilate=" + std::to_string(v.dilate_size) + " s=" +
                                  std::to_string(v.s) + " t=" + v.t.str());
          }
        }
      }
    });
    rep.sections.push_back(std::move(sec));
  }

  rep.sections.push_back(run_pigeonhole(F, budget.pigeonhole_trials, seed));
  return rep;
}

bool VerifyReport::all_pass() const {
  for (const VerifySection& sec : sections) {
    if (sec.status == Status::Fail) return false;
  }
  return true;
}

std::string VerifyReport::to_json() const {
  ojson j;
  j["v"] = 1;
  j["kind"] = "verify_lemmas";
  j["p"] = p;
  j["ext"] = k;
  j["seed"] = seed;
  j["budget"] = ojson{{"max_subset_size", budget.max_subset_size},
                      {"exhaustive_cap", budget.exhaustive_cap},
                      {"sample_sets", budget.sample_sets},
                      {"plunnecke_trials", budget.plunnecke_trials},
                      {"pigeonhole_trials", budget.pigeonhole_trials},
                      {"pair_samples", budget.pair_samples}};
  ojson secs = ojson::array();
  for (const VerifySection& sec : sections) {
    ojson s;
    s["name"] = sec.name;
    s["status"] = to_string(sec.status);
    s["exhaustive"] = sec.exhaustive;
    s["checked"] = sec.checked;
    s["failures"] = sec.failures;
    s["not_applicable"] = sec.not_applicable;
    s["not_triggered"] = sec.not_triggered;
    s["hypothesis_count"] = sec.hypothesis_count;
    s["witnesses"] = sec.witnesses;
    secs.push_back(s);
  }
  j["sections"] = secs;
  j["all_pass"] = all_pass();
  return j.dump();
}

std::string directions_query_json(const FieldCtx& F, const SubsetA& A) {
  std::vector<Fq> dirs = product_directions(F, A);
  ojson j;
  j["v"] = 1;
  j["kind"] = "directions";
  j["p"] = F.p();
  j["ext"] = F.k();
  j["set"] = set_json(F, A);
  ojson arr = ojson::array();
  for (Fq d : dirs) arr.push_back(F.format_element(d));
  j["directions"] = arr;
  j["count"] = dirs.size();
  return j.dump();
}

namespace {

DirectionProfile redei_query_profile(const FieldCtx& F, const SubsetA& A, Fq slope) {
  F.check(slope);
  if (A.size() < 2) throw domain_error("profile queries need at least two elements");
  if (A.size() * A.size() > F.q()) {
    throw domain_error("the Cartesian square exceeds the field order");
  }
  return direction_profile(F, grid(F, A), slope);
}

}  // namespace

std::string redei_query_json(const FieldCtx& F, const SubsetA& A, Fq slope) {
  DirectionProfile d = redei_query_profile(F, A, slope);
  PointSet U = grid(F, A);
  ojson j;
  j["v"] = 1;
  j["kind"] = "redei";
  j["p"] = F.p();
  j["ext"] = F.k();
  j["set"] = set_json(F, A);
  j["slope"] = F.format_element(slope);
  j["R"] = format_poly(F, d.R);
  j["H"] = format_poly(F, d.H);
  j["Q"] = format_poly(F, d.Q);
  j["deg_R"] = d.R.deg();
  j["deg_Q"] = d.Q.deg();
  j["s"] = d.s;
  j["t"] = t_json(d.t);
  j["witness"] = d.witness ? ojson(format_poly(F, *d.witness)) : ojson(nullptr);
  ojson disp;
  disp["R"] = format_poly_human(F, d.R);
  disp["H"] = format_poly_human(F, d.H);
  disp["Q"] = format_poly_human(F, d.Q);
  disp["witness"] = d.witness ? ojson(format_poly_human(F, *d.witness)) : ojson(nullptr);
  j["display"] = disp;
  ojson lc = ojson::array();
  for (auto& [z, c] : line_counts(F, U, slope)) {
    lc.push_back(ojson::array({F.format_element(z), c}));
  }
  j["line_counts"] = lc;
  return j.dump();
}

}  // namespace fqdirs
