#include "fqdirs/fqdirs.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "harness.hpp"

using namespace fqdirs;

struct fqdirs_field {
  FieldCtx ctx;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs fn under the exception-to-status mapping shared by every entry
// point. fn returns the status for the non-throwing path.
template <class Fn>
fqdirs_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const parse_error& e) {
    g_last_error = e.what();
    return FQDIRS_EPARSE;
  } catch (const domain_error& e) {
    g_last_error = e.what();
    return FQDIRS_EDOMAIN;
  } catch (const cap_error& e) {
    g_last_error = e.what();
    return FQDIRS_ECAP;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return FQDIRS_EINVAL;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FQDIRS_EINTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FQDIRS_EINTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return FQDIRS_EINTERNAL;
  }
}

fqdirs_status invalid(const char* msg) {
  g_last_error = msg;
  return FQDIRS_EINVAL;
}

ScanConfig convert_config(const fqdirs_scan_config& c) {
  ScanConfig cfg;
  cfg.p = c.p;
  cfg.k = c.ext;
  cfg.size_min = c.size_min;
  cfg.size_max = c.size_max;
  cfg.mode = c.sample_mode ? ScanMode::Sample : ScanMode::Exhaustive;
  cfg.sample_count = c.samples;
  cfg.seed = c.seed;
  cfg.k_constant = c.k_constant;
  cfg.candidate_cap = c.cap;
  cfg.jobs = c.jobs;
  cfg.level = c.survey ? ScanLevel::Survey : ScanLevel::Full;
  cfg.format = c.csv ? ReportFormat::Csv : ReportFormat::Jsonl;
  return cfg;
}

fqdirs_status run_scan(ScanSummary (*scan)(const ScanConfig&, const LineSink&),
                       const char* kind, const fqdirs_scan_config* cfg, fqdirs_line_cb cb,
                       void* user, fqdirs_scan_result* out, char** out_summary) {
  if (!cfg) return invalid("null config");
  if (out_summary) *out_summary = nullptr;
  if (out) *out = fqdirs_scan_result{0, 0};
  return guarded([&]() -> fqdirs_status {
    ScanConfig sc = convert_config(*cfg);
    LineSink sink = [&](std::string_view line) {
      if (!cb) return true;
      return cb(user, line.data(), line.size()) != 0;
    };
    ScanSummary sum = scan(sc, sink);
    if (out) {
      out->records = sum.records;
      out->failures = sum.failed_records;
    }
    if (out_summary) *out_summary = dup_string(sum.to_json(sc, kind));
    if (sum.aborted) {
      g_last_error = "scan aborted by the line callback";
      return FQDIRS_EABORT;
    }
    if (sum.failed_records > 0) {
      g_last_error = "scan finished with failing records";
      return FQDIRS_ECHECK;
    }
    return FQDIRS_OK;
  });
}

}  // namespace

extern "C" {

fqdirs_status fqdirs_field_create(uint32_t p, uint32_t ext, fqdirs_field** out) {
  if (!out) return invalid("null output handle");
  *out = nullptr;
  return guarded([&]() -> fqdirs_status {
    *out = new fqdirs_field{FieldCtx(p, ext)};
    return FQDIRS_OK;
  });
}

void fqdirs_field_destroy(fqdirs_field* f) { delete f; }

uint64_t fqdirs_field_order(const fqdirs_field* f) { return f ? f->ctx.q() : 0; }

uint32_t fqdirs_field_char(const fqdirs_field* f) { return f ? f->ctx.p() : 0; }

uint32_t fqdirs_field_degree(const fqdirs_field* f) { return f ? f->ctx.k() : 0; }

uint32_t fqdirs_field_nonresidue(const fqdirs_field* f) { return f ? f->ctx.nonresidue() : 0; }

void fqdirs_string_free(char* s) { std::free(s); }

const char* fqdirs_last_error(void) { return g_last_error.c_str(); }

const char* fqdirs_version(void) { return "0.1.0"; }

fqdirs_status fqdirs_directions(const fqdirs_field* f, const char* set_csv, char** out_json) {
  if (!f || !set_csv || !out_json) return invalid("null argument");
  *out_json = nullptr;
  return guarded([&]() -> fqdirs_status {
    SubsetA A = parse_subset_csv(f->ctx, set_csv);
    if (A.size() < 2) throw domain_error("the set needs at least two elements");
    *out_json = dup_string(directions_query_json(f->ctx, A));
    return FQDIRS_OK;
  });
}

fqdirs_status fqdirs_redei(const fqdirs_field* f, const char* set_csv, const char* slope,
                           char** out_json) {
  if (!f || !set_csv || !slope || !out_json) return invalid("null argument");
  *out_json = nullptr;
  return guarded([&]() -> fqdirs_status {
    SubsetA A = parse_subset_csv(f->ctx, set_csv);
    Fq y = f->ctx.parse_element(slope);
    *out_json = dup_string(redei_query_json(f->ctx, A, y));
    return FQDIRS_OK;
  });
}

void fqdirs_scan_config_init(fqdirs_scan_config* cfg) {
  if (!cfg) return;
  ScanConfig d;
  cfg->p = d.p;
  cfg->ext = d.k;
  cfg->size_min = d.size_min;
  cfg->size_max = d.size_max;
  cfg->sample_mode = d.mode == ScanMode::Sample ? 1 : 0;
  cfg->samples = d.sample_count;
  cfg->seed = d.seed;
  cfg->k_constant = d.k_constant;
  cfg->cap = d.candidate_cap;
  cfg->jobs = d.jobs;
  cfg->survey = d.level == ScanLevel::Survey ? 1 : 0;
  cfg->csv = d.format == ReportFormat::Csv ? 1 : 0;
}

fqdirs_status fqdirs_scan_products(const fqdirs_scan_config* cfg, fqdirs_line_cb cb, void* user,
                                   fqdirs_scan_result* out, char** out_summary) {
  return run_scan(scan_products, "product_scan_summary", cfg, cb, user, out, out_summary);
}

fqdirs_status fqdirs_scan_pointsets(const fqdirs_scan_config* cfg, fqdirs_line_cb cb, void* user,
                                    fqdirs_scan_result* out, char** out_summary) {
  return run_scan(scan_pointsets, "pointset_scan_summary", cfg, cb, user, out, out_summary);
}

fqdirs_status fqdirs_min_directions(uint32_t p, uint32_t ext, uint32_t set_size, uint64_t cap,
                                    char** out_json) {
  if (!out_json) return invalid("null output");
  *out_json = nullptr;
  return guarded([&]() -> fqdirs_status {
    MinDirectionsReport rep = find_min_directions(p, ext, set_size, cap);
    FieldCtx F(p, ext);
    *out_json = dup_string(rep.to_json(F));
    return FQDIRS_OK;
  });
}

void fqdirs_verify_budget_init(fqdirs_verify_budget* b) {
  if (!b) return;
  VerifyBudget d;
  b->max_subset_size = d.max_subset_size;
  b->exhaustive_cap = d.exhaustive_cap;
  b->sample_sets = d.sample_sets;
  b->plunnecke_trials = d.plunnecke_trials;
  b->pigeonhole_trials = d.pigeonhole_trials;
  b->pair_samples = d.pair_samples;
}

fqdirs_status fqdirs_verify_lemmas(uint32_t p, uint32_t ext, uint64_t seed,
                                   const fqdirs_verify_budget* budget, fqdirs_verify_result* out,
                                   char** out_json) {
  if (!budget || !out_json) return invalid("null argument");
  *out_json = nullptr;
  if (out) *out = fqdirs_verify_result{0, 0, 0};
  return guarded([&]() -> fqdirs_status {
    VerifyBudget b;
    b.max_subset_size = budget->max_subset_size;
    b.exhaustive_cap = budget->exhaustive_cap;
    b.sample_sets = budget->sample_sets;
    b.plunnecke_trials = budget->plunnecke_trials;
    b.pigeonhole_trials = budget->pigeonhole_trials;
    b.pair_samples = budget->pair_samples;
    VerifyReport rep = verify_lemmas(p, ext, seed, b);
    if (out) {
      out->all_pass = rep.all_pass() ? 1 : 0;
      out->sections = rep.sections.size();
      uint64_t fails = 0;
      for (const VerifySection& s : rep.sections) fails += s.failures;
      out->failures = fails;
    }
    *out_json = dup_string(rep.to_json());
    if (!rep.all_pass()) {
      g_last_error = "verification found failing sections";
      return FQDIRS_ECHECK;
    }
    return FQDIRS_OK;
  });
}

}  // extern "C"
