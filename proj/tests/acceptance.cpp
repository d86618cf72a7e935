// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Each criterion also carries a wall-clock budget; blowing the budget
// fails the criterion even when every assertion holds.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fqdirs/fqdirs.h"
#include "harness.hpp"
#include "json.hpp"

using namespace fqdirs;
using nlohmann::json;

namespace {

struct Check {
  bool ok = true;
  std::string why;
  void expect(bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      why = msg;
    }
  }
};

std::vector<std::string> run_scan(ScanSummary (*scan)(const ScanConfig&, const LineSink&),
                                  const ScanConfig& cfg, ScanSummary* sum_out = nullptr) {
  std::vector<std::string> lines;
  ScanSummary sum = scan(cfg, [&](std::string_view line) {
    lines.emplace_back(line);
    return true;
  });
  if (sum_out) *sum_out = sum;
  return lines;
}

// Summaries shared with the aggregate criterion below.
std::vector<ScanSummary> g_summaries;

uint64_t fail_count(const ScanSummary& sum, const std::string& check) {
  auto it = sum.status_counts.find(check);
  if (it == sum.status_counts.end()) return 0;
  auto jt = it->second.find("Fail");
  return jt == it->second.end() ? 0 : jt->second;
}

uint64_t pass_count(const ScanSummary& sum, const std::string& check) {
  auto it = sum.status_counts.find(check);
  if (it == sum.status_counts.end()) return 0;
  auto jt = it->second.find("Pass");
  return jt == it->second.end() ? 0 : jt->second;
}

void criterion_tight_coset(Check& c) {
  ScanConfig cfg;
  cfg.p = 3;
  cfg.k = 2;
  cfg.size_min = 3;
  cfg.size_max = 3;
  ScanSummary sum;
  auto lines = run_scan(scan_products, cfg, &sum);
  g_summaries.push_back(sum);
  c.expect(lines.size() == 84, "expected 84 size-3 records, got " + std::to_string(lines.size()));
  c.expect(sum.failed_records == 0, "scan reported failing records");
  if (!c.ok) return;
  json first = json::parse(lines[0]);
  c.expect(first["set"] == json::array({"0", "1", "2"}), "first record is not the prime coset");
  c.expect(first["coset"] == true, "prime coset not recognized");
  c.expect(first["num_directions"] == 3, "prime coset direction count is not 3");
  c.expect(first["profile"]["s"] == 3, "coset line multiplicity is not 3");
  c.expect(first["profile"]["t"] == 3, "coset power multiplicity is not 3");
  json b = first["verdicts"]["direction_bounds"];
  c.expect(b["status"] == "Pass", "bounds verdict is not Pass");
  c.expect(b["branch"] == "s_gt_1", "bounds branch is not s_gt_1");
  c.expect(b["lower"] == "3" && b["upper"] == "3", "bounds are not tight at 3");
}

void criterion_profile_query(Check& c) {
  fqdirs_field* f = nullptr;
  c.expect(fqdirs_field_create(3, 2, &f) == FQDIRS_OK, "field create failed");
  if (!f) return;
  char* out = nullptr;
  fqdirs_status st = fqdirs_redei(f, "0,1", "1", &out);
  c.expect(st == FQDIRS_OK, std::string("query failed: ") + fqdirs_last_error());
  if (out) {
    json j = json::parse(out);
    c.expect(j["R"] == "0 0 2 0 1", "R mismatch");
    c.expect(j["H"] == "0 0 0 2", "H mismatch");
    c.expect(j["Q"] == "0 1 0 1 0 1", "Q mismatch");
    c.expect(j["deg_R"] == 4 && j["deg_Q"] == 5, "degree mismatch");
    c.expect(j["s"] == 1 && j["t"] == 3, "multiplicity mismatch");
    c.expect(j["witness"] == "0 2", "witness mismatch");
    c.expect(j["line_counts"] ==
                 json::array({json::array({"0", 2}), json::array({"1", 1}),
                              json::array({"2", 1})}),
             "line count partition mismatch");
    fqdirs_string_free(out);
  }
  fqdirs_field_destroy(f);
}

void criterion_clean_profiles(Check& c) {
  ScanConfig prod;
  prod.p = 3;
  prod.k = 2;
  prod.size_min = 2;
  prod.size_max = 3;
  ScanSummary psum;
  auto plines = run_scan(scan_products, prod, &psum);
  g_summaries.push_back(psum);
  c.expect(plines.size() == 120, "expected 120 product records");
  c.expect(psum.failed_records == 0, "product scan reported failures");
  for (const auto& line : plines) {
    json j = json::parse(line);
    if (j["verdicts"]["direction_bounds"]["status"] == "NotApplicable") {
      c.expect(false, "product record with inapplicable bounds: " + line);
      return;
    }
  }

  auto check_pointsets = [&](uint32_t p, uint64_t samples, uint32_t size_max, uint64_t seed) {
    ScanConfig cfg;
    cfg.p = p;
    cfg.k = 2;
    cfg.size_min = 2;
    cfg.size_max = size_max;
    cfg.mode = ScanMode::Sample;
    cfg.sample_count = samples;
    cfg.seed = seed;
    ScanSummary sum;
    auto lines = run_scan(scan_pointsets, cfg, &sum);
    g_summaries.push_back(sum);
    c.expect(sum.failed_records == 0,
             "point-set scan over p=" + std::to_string(p) + " reported failures");
    for (const auto& line : lines) {
      json j = json::parse(line);
      bool na = j["verdicts"]["direction_bounds"]["status"] == "NotApplicable";
      bool degenerate = j["num_directions"].get<uint64_t>() <= 1;
      if (na != degenerate) {
        c.expect(false, "bounds applicability does not match direction count: " + line);
        return;
      }
    }
  };
  check_pointsets(3, 1000, 9, 11);
  check_pointsets(5, 500, 25, 12);
}

void criterion_collapse_sweep(Check& c) {
  ScanConfig cfg;
  cfg.p = 5;
  cfg.k = 2;
  cfg.size_min = 2;
  cfg.size_max = 4;
  ScanSummary sum;
  auto lines = run_scan(scan_products, cfg, &sum);
  g_summaries.push_back(sum);
  c.expect(lines.size() == 15250, "expected 15250 records, got " + std::to_string(lines.size()));
  c.expect(sum.failed_records == 0, "sweep reported failing records");
  uint64_t triggered_records = 0;
  bool saw_witness_set = false;
  for (const auto& line : lines) {
    json j = json::parse(line);
    json mc = j["verdicts"]["multiplicity_collapse"];
    uint64_t trig = mc["triggered"].get<uint64_t>();
    if (trig > 0) {
      ++triggered_records;
      if (mc["status"] != "Pass") {
        c.expect(false, "triggered collapse did not pass: " + line);
        return;
      }
    }
    if (j["set"] == json::array({"0", "1", "0+1w"})) {
      saw_witness_set = true;
      c.expect(trig >= 1 && mc["status"] == "Pass", "reference set fails collapse: " + line);
    }
  }
  c.expect(triggered_records > 0, "no record triggered the collapse hypothesis");
  c.expect(saw_witness_set, "reference set missing from the sweep");
}

void criterion_lemma_suite(Check& c) {
  VerifyBudget budget;
  for (auto [p, k] : {std::pair<uint32_t, uint32_t>{3, 2}, {5, 2}}) {
    VerifyReport rep = verify_lemmas(p, k, 0, budget);
    c.expect(rep.all_pass(), "lemma suite failed over p=" + std::to_string(p));
    for (const auto& sec : rep.sections) {
      c.expect(sec.hypothesis_count > 0,
               sec.name + " never met its hypothesis over p=" + std::to_string(p));
      c.expect(sec.failures == 0, sec.name + " recorded failures");
    }
    if (p == 5) {
      for (const auto& sec : rep.sections) {
        if (sec.name == "multiplicity_collapse") {
          c.expect(sec.checked > 0, "collapse hypothesis never triggered over p=5");
        }
      }
    }
  }
}

void criterion_no_check_failures(Check& c) {
  c.expect(!g_summaries.empty(), "no scan summaries were collected");
  uint64_t support_pass = 0;
  for (const auto& sum : g_summaries) {
    c.expect(fail_count(sum, "support") == 0, "a support check failed");
    c.expect(fail_count(sum, "s_le_t") == 0, "a multiplicity ordering check failed");
    support_pass += pass_count(sum, "support");
  }
  c.expect(support_pass > 0, "support checks never ran");
}

void criterion_pigeonhole(Check& c) {
  for (auto [p, k] : {std::pair<uint32_t, uint32_t>{3, 2}, {5, 2}}) {
    FieldCtx F(p, k);
    VerifySection sec = run_pigeonhole(F, 100, 2026);
    c.expect(sec.status == Status::Pass, "pigeonhole failed over p=" + std::to_string(p));
    c.expect(sec.checked == 100, "pigeonhole trial count mismatch");
    c.expect(sec.failures == 0, "pigeonhole recorded failures");
  }
}

ScanConfig wide_sample_config() {
  ScanConfig cfg;
  cfg.p = 7;
  cfg.k = 2;
  cfg.size_min = 4;
  cfg.size_max = 7;
  cfg.mode = ScanMode::Sample;
  cfg.sample_count = 100000;
  cfg.seed = 42;
  cfg.level = ScanLevel::Survey;
  cfg.jobs = 1;
  return cfg;
}

void criterion_bound_landscape(Check& c) {
  uint64_t window_records = 0;
  auto sweep = [&](const ScanConfig& cfg, const char* label) {
    ScanSummary sum;
    auto lines = run_scan(scan_products, cfg, &sum);
    c.expect(sum.failed_records == 0, std::string(label) + ": failing records");
    c.expect(sum.oracle_mismatch == 0, std::string(label) + ": oracle mismatch");
    window_records += sum.window_records;
    uint32_t p = cfg.p;
    for (const auto& line : lines) {
      json j = json::parse(line);
      bool coset = j["coset"].get<bool>();
      bool holds = j["bound_holds"].get<bool>();
      uint64_t size = j["size"].get<uint64_t>();
      uint64_t dirs = j["num_directions"].get<uint64_t>();
      if (!coset && !holds) {
        c.expect(false, std::string(label) + ": non-coset set below the bound: " + line);
        return;
      }
      if (coset && size * size > 2 * uint64_t(p) - 1) {
        if (dirs > p || holds) {
          c.expect(false, std::string(label) + ": large coset should defeat the bound: " + line);
          return;
        }
      }
    }
  };

  ScanConfig full5;
  full5.p = 5;
  full5.k = 2;
  full5.size_min = 4;
  full5.size_max = 4;
  sweep(full5, "size-4 sweep");

  ScanConfig survey5;
  survey5.p = 5;
  survey5.k = 2;
  survey5.size_min = 5;
  survey5.size_max = 5;
  survey5.level = ScanLevel::Survey;
  sweep(survey5, "size-5 survey");

  sweep(wide_sample_config(), "wide sample");
  c.expect(window_records > 0, "no record fell in the window");
}

void criterion_stream_determinism(Check& c) {
  ScanConfig prod;
  prod.p = 3;
  prod.k = 2;
  prod.size_min = 2;
  prod.size_max = 3;
  prod.jobs = 1;
  auto seq = run_scan(scan_products, prod);
  prod.jobs = 4;
  auto par = run_scan(scan_products, prod);
  c.expect(seq == par, "exhaustive streams differ across worker counts");

  ScanConfig wide = wide_sample_config();
  wide.jobs = 1;
  auto wseq = run_scan(scan_products, wide);
  wide.jobs = 4;
  auto wpar = run_scan(scan_products, wide);
  c.expect(wseq == wpar, "sampled streams differ across worker counts");
}

struct Criterion {
  const char* label;
  double budget_seconds;
  std::function<void(Check&)> fn;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"tight coset profile at the smallest extension", 1.0, criterion_tight_coset},
      {"single-slope profile query through the C interface", 5.0, criterion_profile_query},
      {"clean profiles across product and point-set scans", 30.0, criterion_clean_profiles},
      {"collapse verdicts across the full p=5 sweep", 300.0, criterion_collapse_sweep},
      {"lemma suite passes with live hypotheses", 60.0, criterion_lemma_suite},
      {"no support or ordering failures in any summary", 1.0, criterion_no_check_failures},
      {"q+1 points always determine every direction", 5.0, criterion_pigeonhole},
      {"bound landscape splits on the coset structure", 300.0, criterion_bound_landscape},
      {"record streams are independent of worker count", 300.0, criterion_stream_determinism},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].fn(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > criteria[i].budget_seconds) {
      std::string msg =
          "exceeded the " + std::to_string(long(criteria[i].budget_seconds)) + "s budget";
      if (check.ok) check.why = msg;
      check.ok = false;
    }
    if (check.ok) {
      std::printf("[%zu] PASS %s (%.2fs)\n", i + 1, criteria[i].label, secs);
    } else {
      ++failures;
      std::printf("[%zu] FAIL %s (%.2fs): %s\n", i + 1, criteria[i].label, secs,
                  check.why.c_str());
    }
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
