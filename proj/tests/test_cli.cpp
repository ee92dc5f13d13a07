//  Copyright 2026 The Ambiguity Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ambiguity/cli.hpp"
#include "ambiguity/json_io.hpp"
#include "support/oracles.hpp"

using namespace ambiguity;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
  json report;
};

RunResult run(const std::vector<std::string>& args, bool parse_json = true) {
  std::ostringstream out, err;
  RunResult r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  if (parse_json && r.code == 0 && !r.out.empty())
    r.report = json::parse(r.out);
  return r;
}

class TempDir {
 public:
  TempDir() {
    dir_ = fs::temp_directory_path() /
           ("ambiguity_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter_++));
    fs::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  std::string file(const std::string& name, const json& content) const {
    auto path = dir_ / name;
    std::ofstream f(path);
    f << content.dump();
    return path.string();
  }
  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }

 private:
  static inline int counter_ = 0;
  fs::path dir_;
};

json knob_domain_json(std::initializer_list<json> knobs) {
  return json{{"knobs", knobs}};
}

json two_row_measure() {
  auto mu = testing::measure_from_rows({{0.75, 0.25}, {0.25, 0.75}}, "k", "d");
  return json(mu);
}

}  // namespace

TEST_CASE("bb84 report carries the error floor and the alternative") {
  auto r = run({"bb84"});
  REQUIRE(r.code == 0);

  bool found = false;
  for (const auto& row : r.report["standardErrors"]) {
    if (row["alice1"] == "0Z" && row["alice2"] == "0X") {
      found = true;
      CHECK(std::abs(row["helstromError"].get<double>() -
                     0.5 * (1.0 - 1.0 / std::sqrt(2.0))) <= 1e-8);
      CHECK(std::abs(row["traceDistance"].get<double>() -
                     1.0 / std::sqrt(2.0)) <= 1e-10);
    }
  }
  CHECK(found);
  CHECK(r.report["condition"]["possible"] == true);
  CHECK(r.report["metdevDensity"].get<double>() > 0.29);

  // identical invocations produce identical bytes
  auto again = run({"bb84"});
  CHECK(again.out == r.out);
}

TEST_CASE("bb84 text format") {
  auto r = run({"--format", "text", "bb84"}, false);
  CHECK(r.code == 0);
  CHECK(r.out.find("0Z vs 0X") != std::string::npos);
}

TEST_CASE("lattice verbs") {
  TempDir tmp;
  auto a = tmp.file("a.json",
                    knob_domain_json({{{"name", "A"}, {"settings", {"a1"}}}}));
  auto b = tmp.file("b.json",
                    knob_domain_json({{{"name", "B"}, {"settings", {"b1"}}}}));

  auto joined = run({"lattice", "join", a, b});
  REQUIRE(joined.code == 0);
  CHECK(joined.report["knobs"].size() == 2);

  auto met = run({"lattice", "meet", a, b});
  REQUIRE(met.code == 0);
  CHECK(met.report["knobs"].empty());

  auto ordered = run({"lattice", "leq", a, b});
  REQUIRE(ordered.code == 0);
  CHECK(ordered.report["leq"] == false);

  // conflicting settings for the same name: validation failure, exit 2
  auto a_conflict = tmp.file(
      "a2.json", knob_domain_json({{{"name", "A"}, {"settings", {"zz"}}}}));
  auto clash = run({"lattice", "join", a, a_conflict});
  CHECK(clash.code == 2);
  CHECK(clash.err.find("NameClash") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({"no-such-verb"}, false).code == 1);
  CHECK(run({}, false).code == 1);
  CHECK(run({"lattice", "join"}, false).code == 1);  // missing positionals
  CHECK(run({"--help"}, false).code == 0);
}

TEST_CASE("malformed input exits 2") {
  TempDir tmp;
  auto bad = tmp.path("bad.json");
  {
    std::ofstream f(bad);
    f << "{ not json";
  }
  auto r = run({"topology", "--mu", bad}, false);
  CHECK(r.code == 2);
  CHECK(run({"topology", "--mu", tmp.path("missing.json")}, false).code == 2);
}

TEST_CASE("metdev and topology") {
  TempDir tmp;
  auto mu = tmp.file("mu.json", two_row_measure());
  auto mu2 = tmp.file(
      "mu2.json",
      json(testing::measure_from_rows({{0.75, 0.25}, {0.75, 0.25}}, "k", "d")));

  auto dev = run({"metdev", "--mu", mu, "--mu2", mu2});
  REQUIRE(dev.code == 0);
  CHECK(dev.report["metdev"].get<double>() == doctest::Approx(0.5));

  auto topo = run({"topology", "--mu", mu});
  REQUIRE(topo.code == 0);
  CHECK(topo.report["classes"].size() == 2);
  CHECK(topo.report["distances"][0][1].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("marginalize verb") {
  TempDir tmp;
  KnobDomain k = testing::single_knob_domain("k", 1);
  DetectorDomain joint(
      {Detector{"d", {"x", "y"}}, Detector{"e", {"u", "v"}}});
  ParamProbMeasure mu(k, joint, {0.1, 0.2, 0.3, 0.4});
  auto path = tmp.file("mu.json", json(mu));
  auto r = run({"marginalize", "--mu", path, "--drop", "e"});
  REQUIRE(r.code == 0);
  auto reduced = parse_measure(r.report);
  CHECK(reduced.value(0, 0) == doctest::Approx(0.3));
  CHECK(reduced.value(0, 1) == doctest::Approx(0.7));

  CHECK(run({"marginalize", "--mu", path, "--drop", "d,e"}, false).code == 2);
}

TEST_CASE("explain, trace-rule and verify round trip") {
  TempDir tmp;
  auto mu_path = tmp.file("mu.json", two_row_measure());

  for (const std::string method : {"measurement", "state", "sqrt"}) {
    auto explained = run({"explain", "--mu", mu_path, "--method", method});
    REQUIRE(explained.code == 0);
    auto expl_path = tmp.file("e_" + method + ".json", explained.report);

    auto verified = run({"verify", "--mu", mu_path, "--expl", expl_path});
    CHECK(verified.code == 0);
    CHECK(verified.report["ok"] == true);

    auto traced = run({"trace-rule", "--expl", expl_path});
    REQUIRE(traced.code == 0);
    auto implied = parse_measure(traced.report);
    auto original = parse_measure(json::parse(std::ifstream(mu_path)));
    CHECK(uniform_metric_ppm(implied, original) <= 1e-10);
  }
}

TEST_CASE("verify mismatch exits 3 and locates the deviation") {
  TempDir tmp;
  auto mu_path = tmp.file("mu.json", two_row_measure());
  auto other = json(
      testing::measure_from_rows({{0.70, 0.30}, {0.25, 0.75}}, "k", "d"));
  auto explained = run({"explain", "--mu", tmp.file("other.json", other),
                        "--method", "measurement"});
  REQUIRE(explained.code == 0);
  auto expl_path = tmp.file("e.json", explained.report);

  std::ostringstream out, err;
  int code = run_cli({"verify", "--mu", mu_path, "--expl", expl_path}, out, err);
  CHECK(code == 3);
  auto report = json::parse(out.str());
  CHECK(report["ok"] == false);
  CHECK(report["maxEntryDeviation"].get<double>() == doctest::Approx(0.05));
  CHECK(report["argmaxSetting"]["k"] == "k0");
}

TEST_CASE("check-prop47 finds the BB84 witness") {
  TempDir tmp;
  auto s = bb84_build();
  auto mu_path = tmp.file("mu.json", json(s.mu));
  auto r = run({"check-prop47", "--mu", mu_path, "--state-knobs", "alice"});
  REQUIRE(r.code == 0);
  CHECK(r.report["possible"] == true);
  CHECK(r.report["witness"][0]["alice"] == "0Z");
  CHECK(r.report["witness"][1]["alice"] == "0X");
  CHECK(r.report["witnessSeparation"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("helstrom verb takes matrix files") {
  TempDir tmp;
  json rho1{{"dim", 2}, {"entries", {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}}};
  json rho2{{"dim", 2}, {"entries", {{0.5, 0.0}, {0.5, 0.0}, {0.5, 0.0}, {0.5, 0.0}}}};
  auto r = run({"helstrom", "--rho1", tmp.file("r1.json", rho1), "--rho2",
                tmp.file("r2.json", rho2)});
  REQUIRE(r.code == 0);
  CHECK(std::abs(r.report["traceDistance"].get<double>() -
                 1.0 / std::sqrt(2.0)) <= 1e-10);
  CHECK(r.report["ePlus"]["dim"] == 2);
}

TEST_CASE("bound verb checks all pairs and random explanations") {
  TempDir tmp;
  auto mu_path = tmp.file("mu.json", two_row_measure());
  auto explained = run({"explain", "--mu", mu_path, "--method", "sqrt"});
  auto expl_path = tmp.file("e.json", explained.report);

  auto r = run({"bound", "--expl", expl_path, "--random", "5"});
  REQUIRE(r.code == 0);
  CHECK(r.report["holds"] == true);
  CHECK(r.report["checks"].size() == 6);  // 1 given pair + 5 random trials

  // seeded: same seed, same bytes
  auto r2 = run({"--seed", "99", "bound", "--expl", expl_path, "--random", "3"});
  auto r3 = run({"--seed", "99", "bound", "--expl", expl_path, "--random", "3"});
  CHECK(r2.out == r3.out);
}

TEST_CASE("AMBIGUITY_SEED overrides the flag") {
  TempDir tmp;
  auto mu_path = tmp.file("mu.json", two_row_measure());
  auto explained = run({"explain", "--mu", mu_path, "--method", "sqrt"});
  auto expl_path = tmp.file("e.json", explained.report);

  ::setenv("AMBIGUITY_SEED", "4242", 1);
  auto with_env = run({"--seed", "1", "bound", "--expl", expl_path, "--random", "2"});
  ::unsetenv("AMBIGUITY_SEED");
  auto with_flag = run({"--seed", "4242", "bound", "--expl", expl_path, "--random", "2"});
  CHECK(with_env.out == with_flag.out);
}

TEST_CASE("cycle verb with explicit explanations and rounds") {
  TempDir tmp;
  auto mu_path = tmp.file("mu.json", two_row_measure());
  auto e1 = run({"explain", "--mu", mu_path, "--method", "measurement"});
  auto e2 = run({"explain", "--mu", mu_path, "--method", "state"});
  auto e1_path = tmp.file("e1.json", e1.report);
  auto e2_path = tmp.file("e2.json", e2.report);

  auto single = run({"cycle", "--mu", mu_path, "--expl", e1_path, "--expl2",
                     e2_path});
  REQUIRE(single.code == 0);
  CHECK(single.report["conflict"] == true);
  CHECK(single.report["metdev"].get<double>() == doctest::Approx(1.0));

  auto iterated = run({"cycle", "--mu", mu_path, "--rounds", "2"});
  REQUIRE(iterated.code == 0);
  CHECK(iterated.report.is_array());
  CHECK(iterated.report.size() == 2);

  // explicit explanations only make sense for a single round
  CHECK(run({"cycle", "--mu", mu_path, "--expl", e1_path, "--expl2", e2_path,
             "--rounds", "2"},
            false)
            .code == 1);
}

TEST_CASE("--out writes the report to a file") {
  TempDir tmp;
  auto out_path = tmp.path("report.json");
  auto r = run({"--out", out_path, "bb84"}, false);
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  auto written = json::parse(std::ifstream(out_path));
  CHECK(written.contains("standardErrors"));
}

TEST_CASE("measure and explanation JSON round trips") {
  auto s = bb84_build();
  auto mu2 = parse_measure(json(s.mu));
  CHECK(mu2 == s.mu);

  auto e2 = parse_explanation(json(s.standard));
  CHECK(e2.dim() == s.standard.dim());
  CHECK(uniform_metric_ppm(trace_rule(e2), s.mu) <= 1e-12);

  // canonical dumps are byte-stable across round trips
  auto dumped = dump_canonical(json(s.mu));
  auto reparsed = dump_canonical(json::parse(dumped));
  CHECK(dumped == reparsed);
}

#ifdef AMBIGUITY_CLI_BIN
TEST_CASE("the installed binary honors the exit-code contract") {
  std::string bin = AMBIGUITY_CLI_BIN;
  auto shell = [&](const std::string& args) {
    int status = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  CHECK(shell("bb84") == 0);
  CHECK(shell("definitely-not-a-verb") == 1);
  CHECK(shell("topology --mu /nonexistent.json") == 2);
}
#endif
