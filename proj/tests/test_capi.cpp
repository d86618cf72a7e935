#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "fqdirs/fqdirs.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct StrGuard {
  char* s = nullptr;
  ~StrGuard() { fqdirs_string_free(s); }
  json parse() const {
    REQUIRE(s != nullptr);
    return json::parse(s);
  }
};

struct FieldGuard {
  fqdirs_field* f = nullptr;
  ~FieldGuard() { fqdirs_field_destroy(f); }
};

struct Collector {
  std::vector<std::string> lines;
  int stop_after = -1;  // abort once this many lines arrived
};

int collect_cb(void* user, const char* line, size_t len) {
  auto* c = static_cast<Collector*>(user);
  c->lines.emplace_back(line, len);
  if (c->stop_after >= 0 && c->lines.size() >= size_t(c->stop_after)) return 0;
  return 1;
}

}  // namespace

TEST_CASE("field handle lifecycle") {
  FieldGuard g;
  REQUIRE(fqdirs_field_create(3, 2, &g.f) == FQDIRS_OK);
  REQUIRE(g.f != nullptr);
  CHECK(fqdirs_field_order(g.f) == 9);
  CHECK(fqdirs_field_char(g.f) == 3);
  CHECK(fqdirs_field_degree(g.f) == 2);
  CHECK(fqdirs_field_nonresidue(g.f) == 2);
  CHECK(std::string(fqdirs_last_error()).empty());

  fqdirs_field* bad = reinterpret_cast<fqdirs_field*>(1);
  CHECK(fqdirs_field_create(4, 1, &bad) == FQDIRS_EDOMAIN);
  CHECK(bad == nullptr);
  CHECK(!std::string(fqdirs_last_error()).empty());
  CHECK(fqdirs_field_create(3, 3, &bad) == FQDIRS_EDOMAIN);
  CHECK(fqdirs_field_create(3, 2, nullptr) == FQDIRS_EINVAL);

  CHECK(fqdirs_field_order(nullptr) == 0);
  CHECK(fqdirs_field_char(nullptr) == 0);
  fqdirs_field_destroy(nullptr);
  fqdirs_string_free(nullptr);
  CHECK(std::string(fqdirs_version()) == "0.1.0");
}

TEST_CASE("direction queries") {
  FieldGuard g;
  REQUIRE(fqdirs_field_create(3, 2, &g.f) == FQDIRS_OK);

  StrGuard out;
  REQUIRE(fqdirs_directions(g.f, "0,1", &out.s) == FQDIRS_OK);
  json j = out.parse();
  CHECK(j["kind"] == "directions");
  CHECK(j["count"] == 3);
  CHECK(j["directions"] == json::array({"0", "1", "2"}));

  StrGuard bad;
  CHECK(fqdirs_directions(g.f, "0,,1", &bad.s) == FQDIRS_EPARSE);
  CHECK(bad.s == nullptr);
  CHECK(!std::string(fqdirs_last_error()).empty());
  CHECK(fqdirs_directions(g.f, "0", &bad.s) == FQDIRS_EDOMAIN);
  CHECK(fqdirs_directions(nullptr, "0,1", &bad.s) == FQDIRS_EINVAL);
  CHECK(fqdirs_directions(g.f, nullptr, &bad.s) == FQDIRS_EINVAL);
  CHECK(fqdirs_directions(g.f, "0,1", nullptr) == FQDIRS_EINVAL);
}

TEST_CASE("single-slope profile") {
  FieldGuard g;
  REQUIRE(fqdirs_field_create(3, 2, &g.f) == FQDIRS_OK);

  StrGuard out;
  REQUIRE(fqdirs_redei(g.f, "0,1", "1", &out.s) == FQDIRS_OK);
  json j = out.parse();
  CHECK(j["kind"] == "redei");
  CHECK(j["R"] == "0 0 2 0 1");
  CHECK(j["H"] == "0 0 0 2");
  CHECK(j["Q"] == "0 1 0 1 0 1");
  CHECK(j["deg_R"] == 4);
  CHECK(j["deg_Q"] == 5);
  CHECK(j["s"] == 1);
  CHECK(j["t"] == 3);
  CHECK(j["witness"] == "0 2");
  CHECK(j["display"]["R"] == "X^4+2X^2");
  CHECK(j["display"]["H"] == "2X^3");
  CHECK(j["display"]["Q"] == "X^5+X^3+X");
  CHECK(j["display"]["witness"] == "2X");
  REQUIRE(j["line_counts"].size() == 3);
  CHECK(j["line_counts"][0] == json::array({"0", 2}));
  CHECK(j["line_counts"][1] == json::array({"1", 1}));
  CHECK(j["line_counts"][2] == json::array({"2", 1}));

  StrGuard bad;
  CHECK(fqdirs_redei(g.f, "0,1", "0+1w", &bad.s) == FQDIRS_EDOMAIN);
  CHECK(fqdirs_redei(g.f, "0,1", "x", &bad.s) == FQDIRS_EPARSE);
  CHECK(fqdirs_redei(g.f, "0,1", nullptr, &bad.s) == FQDIRS_EINVAL);
}

TEST_CASE("streaming product scan") {
  fqdirs_scan_config cfg;
  fqdirs_scan_config_init(&cfg);
  cfg.p = 3;
  cfg.ext = 2;
  cfg.size_min = 2;
  cfg.size_max = 3;

  Collector col;
  fqdirs_scan_result res{};
  StrGuard sum;
  REQUIRE(fqdirs_scan_products(&cfg, collect_cb, &col, &res, &sum.s) == FQDIRS_OK);
  CHECK(col.lines.size() == 120);
  CHECK(res.records == 120);
  CHECK(res.failures == 0);
  json j = sum.parse();
  CHECK(j["records"] == 120);
  CHECK(j["failed_records"] == 0);
  CHECK(j["coset_records"] == 48);
  CHECK(j["aborted"] == false);
  CHECK(j["config"]["p"] == 3);
  CHECK(col.lines[0].find("\"index\":0") != std::string::npos);
  CHECK(col.lines[0].find("\"set\":[\"0\",\"1\"]") != std::string::npos);

  // Abort from the callback.
  Collector abort_col;
  abort_col.stop_after = 3;
  fqdirs_scan_result ares{};
  StrGuard asum;
  CHECK(fqdirs_scan_products(&cfg, collect_cb, &abort_col, &ares, &asum.s) == FQDIRS_EABORT);
  CHECK(abort_col.lines.size() == 3);
  CHECK(ares.records == 3);
  CHECK(asum.parse()["aborted"] == true);

  // CSV framing.
  fqdirs_scan_config csv_cfg = cfg;
  csv_cfg.size_max = 2;
  csv_cfg.csv = 1;
  Collector csv_col;
  REQUIRE(fqdirs_scan_products(&csv_cfg, collect_cb, &csv_col, nullptr, nullptr) == FQDIRS_OK);
  REQUIRE(csv_col.lines.size() == 37);
  CHECK(csv_col.lines[0].rfind("v,kind,index,size,set,coset", 0) == 0);

  CHECK(fqdirs_scan_products(nullptr, collect_cb, &col, &res, &sum.s) == FQDIRS_EINVAL);
  fqdirs_scan_config bad = cfg;
  bad.size_min = 1;
  CHECK(fqdirs_scan_products(&bad, nullptr, nullptr, nullptr, nullptr) == FQDIRS_EINVAL);
  bad = cfg;
  bad.cap = 10;
  CHECK(fqdirs_scan_products(&bad, nullptr, nullptr, nullptr, nullptr) == FQDIRS_ECAP);
}

TEST_CASE("streaming point-set scan") {
  fqdirs_scan_config cfg;
  fqdirs_scan_config_init(&cfg);
  cfg.p = 3;
  cfg.ext = 2;
  cfg.size_min = 2;
  cfg.size_max = 9;
  cfg.sample_mode = 1;
  cfg.samples = 60;
  cfg.seed = 7;

  Collector col;
  fqdirs_scan_result res{};
  StrGuard sum;
  REQUIRE(fqdirs_scan_pointsets(&cfg, collect_cb, &col, &res, &sum.s) == FQDIRS_OK);
  CHECK(res.records == 60);
  CHECK(res.failures == 0);
  CHECK(col.lines.size() == 60);
  CHECK(col.lines[0].find("\"kind\":\"pointset\"") != std::string::npos);
  CHECK(sum.parse()["kind"] == "pointset_scan_summary");

  cfg.sample_mode = 0;
  CHECK(fqdirs_scan_pointsets(&cfg, collect_cb, &col, &res, &sum.s) == FQDIRS_EINVAL);
}

TEST_CASE("minimum direction report") {
  StrGuard out;
  REQUIRE(fqdirs_min_directions(3, 2, 3, 100000, &out.s) == FQDIRS_OK);
  json j = out.parse();
  CHECK(j["total_sets"] == 84);
  CHECK(j["strata"]["coset"]["min_directions"] == 3);
  CHECK(j["strata"]["coset"]["sets"] == 12);
  CHECK(j["strata"]["non_coset"]["min_directions"] == 9);

  StrGuard pairs;
  REQUIRE(fqdirs_min_directions(3, 2, 2, 100000, &pairs.s) == FQDIRS_OK);
  CHECK(pairs.parse()["strata"]["non_coset"].is_null());

  StrGuard capped;
  CHECK(fqdirs_min_directions(3, 2, 3, 10, &capped.s) == FQDIRS_ECAP);
  CHECK(capped.s == nullptr);
  CHECK(fqdirs_min_directions(3, 2, 3, 100000, nullptr) == FQDIRS_EINVAL);
}

TEST_CASE("lemma verification") {
  fqdirs_verify_budget budget;
  fqdirs_verify_budget_init(&budget);
  CHECK(budget.max_subset_size == 4);

  fqdirs_verify_result res{};
  StrGuard out;
  REQUIRE(fqdirs_verify_lemmas(3, 2, 0, &budget, &res, &out.s) == FQDIRS_OK);
  CHECK(res.all_pass == 1);
  CHECK(res.sections == 5);
  CHECK(res.failures == 0);
  json j = out.parse();
  CHECK(j["all_pass"] == true);
  CHECK(j["sections"].size() == 5);

  // Prime fields skip the quadratic-extension section.
  fqdirs_verify_result pres{};
  StrGuard pout;
  REQUIRE(fqdirs_verify_lemmas(3, 1, 0, &budget, &pres, &pout.s) == FQDIRS_OK);
  CHECK(pres.all_pass == 1);
  CHECK(pres.sections == 4);

  CHECK(fqdirs_verify_lemmas(3, 2, 0, nullptr, &res, &out.s) == FQDIRS_EINVAL);
  fqdirs_verify_budget zero = budget;
  zero.sample_sets = 0;
  StrGuard zout;
  CHECK(fqdirs_verify_lemmas(3, 2, 0, &zero, &res, &zout.s) == FQDIRS_EINVAL);
}
