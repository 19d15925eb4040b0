#include <doctest.h>

#include <regex>
#include <sstream>
#include <stdexcept>

#include "btu/report.hpp"
#include "btu/stabilizer.hpp"

using namespace btu;

namespace {

void check_hex_strings(const Json& j) {
  static const std::regex hex("^[0-9a-f]+$");
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "modulus" || it.key() == "epsilon" || it.key() == "delta") {
        REQUIRE(it.value().is_string());
        CHECK(std::regex_match(it.value().get<std::string>(), hex));
      }
      check_hex_strings(it.value());
    }
  } else if (j.is_array()) {
    for (const auto& x : j) check_hex_strings(x);
  }
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("subcommand table") {
    CHECK(subcommands().size() == 11);
    CHECK(suites_for("all") == suite_names());
    CHECK(suites_for("verify-unital") == std::vector<std::string>{"unital_build", "unital_axiom", "subline_property"});
    CHECK_THROWS_AS(suites_for("nope"), std::invalid_argument);
  }

  TEST_CASE("json is deterministic and lists every suite") {
    RunOptions opt;
    opt.threads = 1;
    const Json a = to_json(run_suites("group", opt), false);
    const Json b = to_json(run_suites("group", opt), false);
    CHECK(a.dump() == b.dump());
    CHECK(a["schema_version"] == kSchemaVersion);
    CHECK(a["artifact_version"] == kArtifactVersion);
    CHECK(a["field"]["modulus"] == "43");
    CHECK(a["field"]["epsilon"] == "22");
    CHECK(a["field"]["delta"] == "16");
    CHECK(a["runtime_ms"] == 0);
    REQUIRE(a["suites"].size() == suite_names().size());
    for (std::size_t i = 0; i < suite_names().size(); ++i) {
      const auto& s = a["suites"][i];
      CHECK(s["name"] == suite_names()[i]);
      CHECK(s["runtime_ms"] == 0);
      const bool selected = s["name"] == "group_law" || s["name"] == "psi" || s["name"] == "orbit_representatives";
      CHECK(s["status"] == (selected ? "pass" : "skipped"));
    }
    CHECK(a["summary"]["pass"] == 3);
    check_hex_strings(a);
  }

  TEST_CASE("witness suite fails on the off-pencil four-point line") {
    RunOptions opt;
    const VerificationReport r = run_suites("witnesses", opt);
    CHECK(r.failed());
    const auto& s = r.suite("witnesses");
    CHECK(s.status == SuiteStatus::fail);
    CHECK(s.payload["three"] == 3);
    CHECK(s.payload["four"] == 0);
    CHECK(s.payload["four_pencil"] == 4);
    CHECK(s.witnesses[0]["point"] == Json::array({"1", "0", "22"}));
  }

  TEST_CASE("csv tables") {
    RunOptions opt;
    const VerificationReport r = run_suites("spectrum", opt);
    REQUIRE(r.spectrum);
    const std::string csv = spectrum_csv(*r.spectrum);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "point_rep_a,point_rep_b,k0,k1,k2,k3,k4");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 56);
    const VerificationReport g = run_suites("group", opt);
    REQUIRE(g.census);
    CHECK(census_csv(*g.census) == "order,elements\n1,1\n2,7\n4,56\n");
  }

  TEST_CASE("stabilizer budget handling") {
    RunOptions opt;
    opt.e = 2;
    CHECK_THROWS_AS(run_suites("stabilizer", opt), BudgetExceeded);
  }
}
