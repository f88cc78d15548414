#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "percolata.h"

using nlohmann::json;

namespace {

/// Parses and frees a string returned through the C interface.
json take(char* s) {
  REQUIRE(s != nullptr);
  json out = json::parse(std::string(s));
  pct_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and error strings are always available") {
  CHECK(pct_version() != nullptr);
  CHECK(std::strlen(pct_version()) > 0);
  CHECK(pct_last_error() != nullptr);
}

TEST_CASE("graph handle lifecycle and info") {
  pct_graph* g = nullptr;
  REQUIRE(pct_graph_create("inf,inf", 2, &g) == PCT_OK);
  REQUIRE(g != nullptr);
  char* out = nullptr;
  REQUIRE(pct_graph_info(g, &out) == PCT_OK);
  json info = take(out);
  CHECK(info["record"] == "ball");
  CHECK(info["version"] == std::string(pct_version()));
  CHECK(info["num_vertices"] == 13);
  CHECK(info["num_edges"] == 16);
  CHECK(info["degree"] == 4);
  pct_graph_free(g);
}

TEST_CASE("argument errors set the status and message") {
  pct_graph* g = nullptr;
  CHECK(pct_graph_create("inf,,4", 2, &g) == PCT_ARGUMENT);
  CHECK(g == nullptr);
  CHECK(std::strlen(pct_last_error()) > 0);

  char* out = nullptr;
  CHECK(pct_theta("inf,inf", 1.5, 3, 10, 1, &out) == PCT_ARGUMENT);
  CHECK(out == nullptr);
  CHECK(pct_graph_info(nullptr, &out) == PCT_ARGUMENT);
}

TEST_CASE("theta estimate at p = 1 is certain") {
  char* out = nullptr;
  REQUIRE(pct_theta("inf,inf", 1.0, 4, 100, 7, &out) == PCT_OK);
  json rec = take(out);
  CHECK(rec["record"] == "theta");
  CHECK(rec["estimate"] == 1.0);
  CHECK(rec["successes"] == 100);
}

TEST_CASE("two-point and tail records carry per-point estimates") {
  char* out = nullptr;
  const int ds[] = {2, 3};
  REQUIRE(pct_two_point("inf,inf", 0.6, ds, 2, 10, 500, 11, &out) == PCT_OK);
  json tp = take(out);
  REQUIRE(tp["points"].size() == 2);
  CHECK(tp["points"][0]["distance"] == 2);
  CHECK(tp["points"][0]["samples"] == 500);

  const long long ks[] = {1, 4};
  REQUIRE(pct_tail("inf,inf", 0.4, ks, 2, 8, 500, 11, &out) == PCT_OK);
  json tail = take(out);
  REQUIRE(tail["points"].size() == 2);
  CHECK(tail["points"][0]["k"] == 1);
  CHECK(tail.contains("stretch_fit"));
  // Monotone: P(|C| > 4, finite) <= P(|C| > 1, finite).
  CHECK(tail["points"][1]["estimate"].get<double>() <=
        tail["points"][0]["estimate"].get<double>());
}

TEST_CASE("locality radius record") {
  char* out = nullptr;
  REQUIRE(pct_locality_radius("inf,inf,6", "inf,inf,inf", 10, &out) == PCT_OK);
  json rec = take(out);
  CHECK(rec["radius"] == 2);
  CHECK(rec["at_cap"] == false);
}

TEST_CASE("cutset record on the square lattice") {
  pct_graph* g = nullptr;
  REQUIRE(pct_graph_create("inf,inf", 3, &g) == PCT_OK);
  char* out = nullptr;
  REQUIRE(pct_cutsets(g, "vertex", 4, &out) == PCT_OK);
  json rec = take(out);
  CHECK(rec["count"] == 1);
  CHECK(rec["connectivity"] == 2);
  CHECK(rec["cutsets"][0]["size"] == 4);
  CHECK(pct_cutsets(g, "diagonal", 4, &out) == PCT_ARGUMENT);
  pct_graph_free(g);
}

TEST_CASE("interface candidates record") {
  pct_graph* g = nullptr;
  REQUIRE(pct_graph_create("inf,inf", 4, &g) == PCT_OK);
  char* out = nullptr;
  REQUIRE(pct_interfaces(g, 1, 2, 1, &out) == PCT_OK);
  json rec = take(out);
  CHECK(rec["count"] == 1);
  CHECK(rec["candidates"][0]["members"][0] == json::array({0, 0}));
  pct_graph_free(g);
}

TEST_CASE("oracle record: star window connect polynomial") {
  pct_graph* g = nullptr;
  REQUIRE(pct_graph_create("inf,inf", 1, &g) == PCT_OK);
  char* out = nullptr;
  const double ps[] = {0.5};
  REQUIRE(pct_oracle(g, "connect", 0, ps, 1, &out) == PCT_OK);
  json rec = take(out);
  CHECK(rec["polynomial"]["coeff"] ==
        json::array({"0", "4", "6", "4", "1"}));
  CHECK(rec["evaluations"][0]["value"].get<double>() ==
        doctest::Approx(15.0 / 16.0));
  pct_graph_free(g);
}

TEST_CASE("oracle record: edge cap maps to the resource status") {
  pct_graph* g = nullptr;
  REQUIRE(pct_graph_create("inf,inf", 3, &g) == PCT_OK);  // 24 edges
  char* out = nullptr;
  const double ps[] = {0.5};
  CHECK(pct_oracle(g, "connect", 0, ps, 1, &out) == PCT_RESOURCE);
  CHECK(out == nullptr);
  pct_graph_free(g);
}

TEST_CASE("series record on the toy window") {
  pct_graph* g = nullptr;
  REQUIRE(pct_graph_create("inf,inf", 2, &g) == PCT_OK);
  char* out = nullptr;
  REQUIRE(pct_series(g, 1, 2, 4, 0.5, 0.02, 0.5, 0.1, &out) == PCT_OK);
  json rec = take(out);
  CHECK(rec["term_magnitudes"].size() == 4);
  CHECK(rec["value"].size() == 2);
  // Domain violation: z outside the disk |z - p0| <= r.
  CHECK(pct_series(g, 1, 2, 4, 0.9, 0.0, 0.5, 0.1, &out) == PCT_ARGUMENT);
  pct_graph_free(g);
}

TEST_CASE("accept runs a chosen criterion") {
  const int ids[] = {1};
  char* out = nullptr;
  REQUIRE(pct_accept(ids, 1, &out) == PCT_OK);
  json rec = take(out);
  REQUIRE(rec["criteria"].size() == 1);
  CHECK(rec["criteria"][0]["id"] == 1);
  CHECK(rec["criteria"][0]["passed"] == true);
  CHECK(rec["failures"] == 0);
}
