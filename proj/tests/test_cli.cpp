#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "banach_ortho/cli.hpp"

using namespace bjo;

namespace {

json run(const std::string& text) { return cli::run_problem(json::parse(text)); }

}  // namespace

TEST_CASE("run dispatches bj_orthogonal") {
  auto rep = run(R"({"kind": "bj_orthogonal",
                     "space": {"field": "real", "dim": 2, "kind": {"p": 2}},
                     "x": [1, 0], "y": [0, 1]})");
  CHECK(rep["payload"]["result"]["decision"].get<bool>());
  CHECK(rep["payload"]["kind"] == "bj_orthogonal");
  CHECK(rep["meta"].contains("wall_ms"));
}

TEST_CASE("numerical index problem reproduces the skew witness bound") {
  auto rep = run(R"({"kind": "numerical_index", "seed": 7, "budget": 20,
                     "space": {"field": "real", "dim": 2, "kind": {"p": 2}}})");
  CHECK(rep["payload"]["result"]["upper"].get<double>() <= 1e-6);
  CHECK(rep["payload"]["result"].contains("witness"));
}

TEST_CASE("range_scan emits plot-ready polygons") {
  auto rep = run(R"({"kind": "range_scan",
                     "space": {"field": "real", "dim": 2, "kind": {"p": 1}},
                     "u": [1, 0], "z": [0, 1]})");
  const auto& result = rep["payload"]["result"];
  REQUIRE(result.contains("inner"));
  REQUIRE(result.contains("outer"));
  for (auto& v : result["outer"]) {
    REQUIRE(v.is_array());
    REQUIRE(v.size() == 2);
  }
}

TEST_CASE("unknown kinds and schema violations raise DomainError") {
  CHECK_THROWS_AS(run(R"({"kind": "no_such_op"})"), DomainError);
  CHECK_THROWS_AS(run(R"({"x": [1, 0]})"), DomainError);
  CHECK_THROWS_AS(run(R"({"kind": "bj_orthogonal",
                          "space": {"field": "real", "dim": 2, "kind": {"p": 2}},
                          "x": [1], "y": [0, 1]})"),
                  DomainError);
  // sampled kinds demand a seed
  CHECK_THROWS_AS(run(R"({"kind": "numerical_index",
                          "space": {"field": "real", "dim": 2, "kind": {"p": 2}}})"),
                  DomainError);
}

TEST_CASE("capability errors surface as CapabilityError") {
  CHECK_THROWS_AS(run(R"({"kind": "dual_extreme_points",
                          "space": {"field": "real", "dim": 2, "kind": {"p": 3}}})"),
                  CapabilityError);
}

TEST_CASE("complex payloads round-trip through the schema") {
  auto rep = run(R"({"kind": "bj_orthogonal",
                     "space": {"field": "complex", "dim": 1, "kind": {"p": 2}},
                     "x": [1, 0], "y": [0, 1]})");
  // x = 1, y = i in one complex dimension: lambda = -i collapses the norm
  CHECK(!rep["payload"]["result"]["decision"].get<bool>());
}

TEST_CASE("operator schema round-trip and verdicts") {
  auto rep = run(R"({"kind": "bhatia_semrl",
        "T": {"domain": {"field": "real", "dim": 2, "kind": {"p": 2}},
              "codomain": {"field": "real", "dim": 2, "kind": {"p": 2}},
              "matrix": [[1, 0], [0, 1]]},
        "A": {"domain": {"field": "real", "dim": 2, "kind": {"p": 2}},
              "codomain": {"field": "real", "dim": 2, "kind": {"p": 2}},
              "matrix": [[1, 0], [0, -1]]}})");
  CHECK(rep["payload"]["result"]["decision"].get<bool>());
}

TEST_CASE("suite reports are reproducible bit for bit") {
  auto a = cli::run_suite("invariants", 42);
  auto b = cli::run_suite("invariants", 42);
  CHECK(a["payload"].dump() == b["payload"].dump());
  auto c = cli::run_suite("invariants", 43);
  CHECK(a["payload"].dump() != c["payload"].dump());
  CHECK(a["payload"]["all_pass"].get<bool>());
}

TEST_CASE("injected buggy tolerance produces a replayable failing instance") {
  cli::SuiteOptions opts;
  opts.inject_bug_tolerance = 1e-9;
  auto summary = cli::run_suite("invariants", 5, opts);
  const auto& checks = summary["payload"]["checks"];
  json failing;
  for (auto& c : checks)
    if (c["fail"].get<int>() > 0) failing = c["first_failure"];
  REQUIRE(!failing.is_null());
  // replaying the emitted problem reproduces the failure
  auto rep = cli::run_problem(failing);
  CHECK(!rep["payload"]["result"]["pass"].get<bool>());
  CHECK(!summary["payload"]["all_pass"].get<bool>());
}

TEST_CASE("unknown suite names are usage errors") {
  CHECK_THROWS_AS(cli::run_suite("nope", 1), DomainError);
}

TEST_CASE("the binary honors the exit-code contract") {
  const char* bin = std::getenv("BANACH_ORTHO_BIN");
  if (!bin) return;  // library-only environment
  auto run_binary = [&](const std::string& args) {
    return std::system((std::string(bin) + " " + args + " > /dev/null 2>&1").c_str());
  };
  auto write_problem = [](const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
  };

  write_problem("/tmp/bjo_ok.json",
                R"({"kind": "bj_orthogonal",
                    "space": {"field": "real", "dim": 2, "kind": {"p": 2}},
                    "x": [1, 0], "y": [1, 0]})");
  CHECK(WEXITSTATUS(run_binary("run /tmp/bjo_ok.json")) == 0);  // false verdict still exits 0

  write_problem("/tmp/bjo_schema.json", R"({"kind": "no_such_op"})");
  CHECK(WEXITSTATUS(run_binary("run /tmp/bjo_schema.json")) == 2);

  write_problem("/tmp/bjo_cap.json",
                R"({"kind": "dual_extreme_points",
                    "space": {"field": "real", "dim": 2, "kind": {"p": 3}}})");
  CHECK(WEXITSTATUS(run_binary("run /tmp/bjo_cap.json")) == 3);

  CHECK(WEXITSTATUS(run_binary("suite invariants --seed 3 --out /tmp/bjo_suite.json")) == 0);
  std::ifstream in("/tmp/bjo_suite.json");
  REQUIRE(in.good());
  json summary = json::parse(in);
  CHECK(summary["payload"]["all_pass"].get<bool>());
}

TEST_CASE("identical problems reproduce identical payloads") {
  const char* text = R"({"kind": "numerical_index", "seed": 11, "budget": 8,
                         "space": {"field": "real", "dim": 2, "kind": {"p": 2}}})";
  auto a = run(text);
  auto b = run(text);
  CHECK(a["payload"].dump() == b["payload"].dump());
}

TEST_CASE("p accepts the string inf") {
  auto rep = run(R"({"kind": "norm",
                     "space": {"field": "real", "dim": 2, "kind": {"p": "inf"}},
                     "x": [1, -0.25]})");
  CHECK(rep["payload"]["result"]["value"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("the thread cap does not change results") {
  const char* text = R"({"kind": "range_scan",
                         "space": {"field": "complex", "dim": 2, "kind": {"p": 2}},
                         "u": [1, 0, 0, 0], "z": [0, 0, 1, 0], "grid": 32})";
  auto serial = run(text);
  setenv("BANACH_ORTHO_THREADS", "4", 1);
  auto threaded = run(text);
  unsetenv("BANACH_ORTHO_THREADS");
  CHECK(serial["payload"].dump() == threaded["payload"].dump());
}

TEST_CASE("aliases for the obstruction checks resolve") {
  auto rep = run(R"({"kind": "theorem51_check",
                     "space": {"field": "real", "dim": 2, "kind": {"p": 1}},
                     "u": [1, 0], "z": [1, 0.5]})");
  CHECK(rep["payload"]["result"]["violation"].get<bool>() == false);
  CHECK(rep["payload"]["result"]["orthogonal"]["decision"].get<bool>() == false);
}
