// Command-line front end. Everything mathematical happens behind the C
// API of the shared library; this file only parses flags, moves bytes,
// and renders payloads.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fqdirs/fqdirs.h"
#include "json.hpp"

namespace {

using njson = nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct FieldGuard {
  fqdirs_field* f = nullptr;
  ~FieldGuard() { fqdirs_field_destroy(f); }
};

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { fqdirs_string_free(s); }
};

void report_error(const char* what) {
  std::fprintf(stderr, "error: %s\n", what && *what ? what : "unknown failure");
}

// A set argument is either inline CSV or @path to a file holding elements
// separated by commas, spaces, or newlines.
bool load_set_arg(const std::string& arg, std::string& out) {
  if (arg.empty() || arg[0] != '@') {
    out = arg;
    return true;
  }
  std::ifstream in(arg.substr(1));
  if (!in) {
    std::fprintf(stderr, "error: cannot open set file '%s'\n", arg.c_str() + 1);
    return false;
  }
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::string token;
  std::vector<std::string> tokens;
  for (char c : all) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      if (!token.empty()) tokens.push_back(std::move(token));
      token.clear();
    } else {
      token += c;
    }
  }
  if (!token.empty()) tokens.push_back(std::move(token));
  out.clear();
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ',';
    out += tokens[i];
  }
  return true;
}

int map_scan_status(fqdirs_status st) {
  switch (st) {
    case FQDIRS_OK: return kExitPass;
    case FQDIRS_ECHECK: return kExitFail;
    case FQDIRS_EABORT: return kExitFail;
    default: return kExitUsage;
  }
}

struct SinkCtx {
  std::ostream* os;
};

int line_cb(void* user, const char* line, size_t len) {
  auto* ctx = static_cast<SinkCtx*>(user);
  ctx->os->write(line, std::streamsize(len));
  ctx->os->put('\n');
  return ctx->os->good() ? 1 : 0;
}

// Options shared by both scan subcommands.
struct ScanOpts {
  uint32_t p = 3;
  uint32_t ext = 2;
  uint32_t size_min = 2;
  uint32_t size_max = 3;
  std::string mode = "exhaustive";
  uint64_t samples = 0;
  uint64_t seed = 0;
  double k_constant = 1.0;
  uint64_t cap = 10000000;
  uint32_t jobs = 1;
  std::string level = "full";
  std::string format = "jsonl";
  std::string out_path;
};

void add_scan_options(CLI::App* cmd, ScanOpts& o, bool pointsets) {
  cmd->add_option("--p", o.p, "field characteristic (odd prime)")->capture_default_str();
  cmd->add_option("--ext", o.ext, "extension degree")->check(CLI::Range(1, 2))
      ->capture_default_str();
  cmd->add_option("--size-min", o.size_min, "smallest set size")->capture_default_str();
  cmd->add_option("--size-max", o.size_max, "largest set size")->capture_default_str();
  if (pointsets) {
    o.mode = "sample";
  } else {
    cmd->add_option("--mode", o.mode, "exhaustive or sample")
        ->check(CLI::IsMember({"exhaustive", "sample"}))->capture_default_str();
  }
  cmd->add_option("--samples", o.samples, "candidate count in sample mode");
  cmd->add_option("--seed", o.seed, "sampling seed")->capture_default_str();
  cmd->add_option("--k-constant", o.k_constant, "window threshold multiplier")
      ->capture_default_str();
  cmd->add_option("--cap", o.cap, "hard ceiling on candidates")->capture_default_str();
  cmd->add_option("--jobs", o.jobs, "worker threads (FQDIRS_JOBS overrides the default)");
  cmd->add_option("--level", o.level, "full or survey (survey skips profiles)")
      ->check(CLI::IsMember({"full", "survey"}))->capture_default_str();
  cmd->add_option("--format", o.format, "record format")
      ->check(CLI::IsMember({"jsonl", "csv"}))->capture_default_str();
  cmd->add_option("--out", o.out_path, "write records to a file instead of stdout");
}

fqdirs_scan_config to_config(const ScanOpts& o, const CLI::App* cmd) {
  fqdirs_scan_config cfg;
  fqdirs_scan_config_init(&cfg);
  cfg.p = o.p;
  cfg.ext = o.ext;
  cfg.size_min = o.size_min;
  cfg.size_max = o.size_max;
  cfg.sample_mode = o.mode == "sample" ? 1 : 0;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.k_constant = o.k_constant;
  cfg.cap = o.cap;
  cfg.jobs = o.jobs;
  if (cmd->count("--jobs") == 0) {
    if (const char* env = std::getenv("FQDIRS_JOBS")) {
      char* end = nullptr;
      unsigned long v = std::strtoul(env, &end, 10);
      if (end && *end == '\0' && v >= 1) cfg.jobs = uint32_t(v);
    }
  }
  cfg.survey = o.level == "survey" ? 1 : 0;
  cfg.csv = o.format == "csv" ? 1 : 0;
  return cfg;
}

int run_scan_command(const ScanOpts& o, const CLI::App* cmd, bool pointsets) {
  fqdirs_scan_config cfg = to_config(o, cmd);
  std::ofstream file;
  SinkCtx sink{&std::cout};
  if (!o.out_path.empty()) {
    file.open(o.out_path);
    if (!file) {
      std::fprintf(stderr, "error: cannot open output file '%s'\n", o.out_path.c_str());
      return kExitUsage;
    }
    sink.os = &file;
  }
  fqdirs_scan_result res{};
  StringGuard summary;
  fqdirs_status st = pointsets
      ? fqdirs_scan_pointsets(&cfg, line_cb, &sink, &res, &summary.s)
      : fqdirs_scan_products(&cfg, line_cb, &sink, &res, &summary.s);
  sink.os->flush();
  if (summary.s) {
    std::fprintf(stderr, "%s\n", summary.s);
    njson j = njson::parse(summary.s, nullptr, false);
    if (!j.is_discarded()) {
      std::fprintf(stderr, "records=%llu failed=%llu\n",
                   (unsigned long long)j.value("records", 0ULL),
                   (unsigned long long)j.value("failed_records", 0ULL));
      if (j.contains("first_failures")) {
        for (const auto& w : j["first_failures"]) {
          std::fprintf(stderr, "fail: %s\n", w.get<std::string>().c_str());
        }
      }
    }
  }
  if (st != FQDIRS_OK && st != FQDIRS_ECHECK) report_error(fqdirs_last_error());
  (void)res;
  return map_scan_status(st);
}

int render_directions(const std::string& payload, const std::string& format) {
  if (format == "json") {
    std::printf("%s\n", payload.c_str());
    return kExitPass;
  }
  njson j = njson::parse(payload);
  std::string dirs;
  for (const auto& d : j["directions"]) {
    if (!dirs.empty()) dirs += format == "csv" ? " " : ", ";
    dirs += d.get<std::string>();
  }
  if (format == "csv") {
    std::string set;
    for (const auto& e : j["set"]) {
      if (!set.empty()) set += ' ';
      set += e.get<std::string>();
    }
    std::printf("v,kind,p,ext,set,directions,count\n");
    std::printf("1,directions,%u,%u,%s,%s,%llu\n", j["p"].get<uint32_t>(),
                j["ext"].get<uint32_t>(), set.c_str(), dirs.c_str(),
                (unsigned long long)j["count"].get<uint64_t>());
  } else {
    std::printf("D(A) = {%s}  |D| = %llu\n", dirs.c_str(),
                (unsigned long long)j["count"].get<uint64_t>());
  }
  return kExitPass;
}

int render_redei(const std::string& payload, const std::string& format) {
  if (format == "json") {
    std::printf("%s\n", payload.c_str());
    return kExitPass;
  }
  njson j = njson::parse(payload);
  std::string t = j["t"].is_string() ? j["t"].get<std::string>()
                                     : std::to_string(j["t"].get<uint64_t>());
  if (format == "csv") {
    std::string set;
    for (const auto& e : j["set"]) {
      if (!set.empty()) set += ' ';
      set += e.get<std::string>();
    }
    std::printf("v,kind,p,ext,set,slope,R,H,Q,s,t,witness\n");
    std::printf("1,redei,%u,%u,%s,%s,%s,%s,%s,%llu,%s,%s\n", j["p"].get<uint32_t>(),
                j["ext"].get<uint32_t>(), set.c_str(),
                j["slope"].get<std::string>().c_str(), j["R"].get<std::string>().c_str(),
                j["H"].get<std::string>().c_str(), j["Q"].get<std::string>().c_str(),
                (unsigned long long)j["s"].get<uint64_t>(), t.c_str(),
                j["witness"].is_null() ? "" : j["witness"].get<std::string>().c_str());
  } else {
    const njson& d = j["display"];
    std::printf("R = %s\n", d["R"].get<std::string>().c_str());
    std::printf("H = %s\n", d["H"].get<std::string>().c_str());
    std::printf("Q = %s\n", d["Q"].get<std::string>().c_str());
    std::printf("s = %llu\n", (unsigned long long)j["s"].get<uint64_t>());
    std::printf("t = %s\n", t.c_str());
    if (!d["witness"].is_null()) {
      std::printf("f = %s\n", d["witness"].get<std::string>().c_str());
    }
    std::string lc;
    for (const auto& pair : j["line_counts"]) {
      if (!lc.empty()) lc += "  ";
      lc += pair[0].get<std::string>() + ":" + std::to_string(pair[1].get<uint32_t>());
    }
    std::printf("line counts: %s\n", lc.c_str());
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"direction sets of planar point sets over small finite fields"};
  app.require_subcommand(1);

  // directions
  uint32_t q_p = 3, q_ext = 2;
  std::string q_set, q_slope, q_format = "json";
  CLI::App* dirs_cmd = app.add_subcommand("directions", "directions of A x A");
  dirs_cmd->add_option("--p", q_p, "field characteristic")->capture_default_str();
  dirs_cmd->add_option("--ext", q_ext, "extension degree")->check(CLI::Range(1, 2))
      ->capture_default_str();
  dirs_cmd->add_option("--set", q_set, "element list, or @file")->required();
  dirs_cmd->add_option("--format", q_format, "json, csv, or human")
      ->check(CLI::IsMember({"json", "csv", "human"}))->capture_default_str();

  // redei
  CLI::App* redei_cmd = app.add_subcommand("redei", "single-direction profile of A x A");
  redei_cmd->add_option("--p", q_p, "field characteristic")->capture_default_str();
  redei_cmd->add_option("--ext", q_ext, "extension degree")->check(CLI::Range(1, 2))
      ->capture_default_str();
  redei_cmd->add_option("--set", q_set, "element list, or @file")->required();
  redei_cmd->add_option("--slope", q_slope, "direction to profile")->required();
  redei_cmd->add_option("--format", q_format, "json, csv, or human")
      ->check(CLI::IsMember({"json", "csv", "human"}))->capture_default_str();

  // scans
  ScanOpts prod_opts, point_opts;
  CLI::App* prod_cmd = app.add_subcommand("scan-products", "scan Cartesian squares A x A");
  add_scan_options(prod_cmd, prod_opts, false);
  CLI::App* point_cmd = app.add_subcommand("scan-pointsets", "scan sampled planar point sets");
  point_opts.size_max = 9;
  point_opts.samples = 100;
  add_scan_options(point_cmd, point_opts, true);

  // verify-lemmas
  uint32_t v_p = 3, v_ext = 2;
  uint64_t v_seed = 0;
  fqdirs_verify_budget budget;
  fqdirs_verify_budget_init(&budget);
  CLI::App* verify_cmd = app.add_subcommand("verify-lemmas", "run the lemma suite");
  verify_cmd->add_option("--p", v_p, "field characteristic")->capture_default_str();
  verify_cmd->add_option("--ext", v_ext, "extension degree")->check(CLI::Range(1, 2))
      ->capture_default_str();
  verify_cmd->add_option("--seed", v_seed, "sampling seed")->capture_default_str();
  verify_cmd->add_option("--max-size", budget.max_subset_size, "largest subset size")
      ->capture_default_str();
  verify_cmd->add_option("--exhaustive-cap", budget.exhaustive_cap,
                         "enumerate all sets when the count fits")->capture_default_str();
  verify_cmd->add_option("--sample-sets", budget.sample_sets, "sampled sets otherwise")
      ->capture_default_str();
  verify_cmd->add_option("--plunnecke-trials", budget.plunnecke_trials, "growth trials")
      ->capture_default_str();
  verify_cmd->add_option("--pigeonhole-trials", budget.pigeonhole_trials,
                         "q+1 point-set trials")->capture_default_str();
  verify_cmd->add_option("--pair-samples", budget.pair_samples,
                         "sampled subset pairs per dilate check")->capture_default_str();

  // min-directions
  uint32_t m_p = 3, m_ext = 2, m_size = 3;
  uint64_t m_cap = 10000000;
  CLI::App* min_cmd = app.add_subcommand("min-directions",
                                         "exhaustive minimum of |D(A)| per coset stratum");
  min_cmd->add_option("--p", m_p, "field characteristic")->capture_default_str();
  min_cmd->add_option("--ext", m_ext, "extension degree")->check(CLI::Range(1, 2))
      ->capture_default_str();
  min_cmd->add_option("--size", m_size, "subset size")->capture_default_str();
  min_cmd->add_option("--cap", m_cap, "hard ceiling on candidates")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (dirs_cmd->parsed() || redei_cmd->parsed()) {
    std::string csv;
    if (!load_set_arg(q_set, csv)) return kExitUsage;
    FieldGuard field;
    if (fqdirs_field_create(q_p, q_ext, &field.f) != FQDIRS_OK) {
      report_error(fqdirs_last_error());
      return kExitUsage;
    }
    StringGuard payload;
    fqdirs_status st = dirs_cmd->parsed()
        ? fqdirs_directions(field.f, csv.c_str(), &payload.s)
        : fqdirs_redei(field.f, csv.c_str(), q_slope.c_str(), &payload.s);
    if (st != FQDIRS_OK) {
      report_error(fqdirs_last_error());
      return kExitUsage;
    }
    return dirs_cmd->parsed() ? render_directions(payload.s, q_format)
                              : render_redei(payload.s, q_format);
  }

  if (prod_cmd->parsed()) return run_scan_command(prod_opts, prod_cmd, false);
  if (point_cmd->parsed()) return run_scan_command(point_opts, point_cmd, true);

  if (verify_cmd->parsed()) {
    fqdirs_verify_result res{};
    StringGuard report;
    fqdirs_status st = fqdirs_verify_lemmas(v_p, v_ext, v_seed, &budget, &res, &report.s);
    if (report.s) {
      std::printf("%s\n", report.s);
      std::fflush(stdout);
      njson j = njson::parse(report.s, nullptr, false);
      if (!j.is_discarded()) {
        for (const auto& sec : j["sections"]) {
          std::fprintf(stderr, "%s: %s (checked=%llu failures=%llu hypothesis=%llu)\n",
                       sec["name"].get<std::string>().c_str(),
                       sec["status"].get<std::string>().c_str(),
                       (unsigned long long)sec["checked"].get<uint64_t>(),
                       (unsigned long long)sec["failures"].get<uint64_t>(),
                       (unsigned long long)sec["hypothesis_count"].get<uint64_t>());
          for (const auto& w : sec["witnesses"]) {
            std::fprintf(stderr, "fail: %s\n", w.get<std::string>().c_str());
          }
        }
      }
    }
    if (st == FQDIRS_OK) return kExitPass;
    if (st == FQDIRS_ECHECK) return kExitFail;
    report_error(fqdirs_last_error());
    return kExitUsage;
  }

  if (min_cmd->parsed()) {
    StringGuard payload;
    fqdirs_status st = fqdirs_min_directions(m_p, m_ext, m_size, m_cap, &payload.s);
    if (st != FQDIRS_OK) {
      report_error(fqdirs_last_error());
      return kExitUsage;
    }
    std::printf("%s\n", payload.s);
    std::fflush(stdout);
    njson j = njson::parse(payload.s, nullptr, false);
    if (!j.is_discarded()) {
      for (const char* name : {"coset", "non_coset"}) {
        const njson& s = j["strata"][name];
        if (s.is_null()) {
          std::fprintf(stderr, "%s: no sets\n", name);
        } else {
          std::fprintf(stderr, "%s: min=%llu attaining=%llu of %llu\n", name,
                       (unsigned long long)s["min_directions"].get<uint64_t>(),
                       (unsigned long long)s["attaining"].get<uint64_t>(),
                       (unsigned long long)s["sets"].get<uint64_t>());
        }
      }
    }
    return kExitPass;
  }

  return kExitUsage;
}
