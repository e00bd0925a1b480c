#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

std::string cli() {
  const char* p = std::getenv("SPP_CLI");
  REQUIRE(p != nullptr);
  return p;
}

std::string tmp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

int run(const std::string& args) {
  int rc = std::system((cli() + " " + args).c_str());
  return WEXITSTATUS(rc);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string l;
  while (std::getline(in, l)) lines.push_back(l);
  return lines;
}

const char* kCombConfig = R"({
  "system": {
    "cell": {"kind": "delta", "strength": 50.0},
    "tiers": [{"N": 2, "s": 1.0}, {"N": 2, "y": 4.0}]
  },
  "sweep": {"axis": "k", "start": 3.0, "stop": 3.2, "points": 201}
})";

}  // namespace

TEST_CASE("transmission emits the schema header and a full table") {
  write_file(tmp_path("comb.json"), kCombConfig);
  int rc = run("transmission --config " + tmp_path("comb.json") + " --output " +
               tmp_path("comb.csv"));
  CHECK(rc == 0);
  auto lines = read_lines(tmp_path("comb.csv"));
  REQUIRE(lines.size() == 2 + 201);
  CHECK(lines[0] == "# schema=spp.v1");
  CHECK(lines[1] == "k,T,log10T,xi_1,xi_2");
  CHECK(lines[2].substr(0, 2) == "3,");

  // deterministic across runs and thread counts
  int rc2 = run("transmission --config " + tmp_path("comb.json") + " --threads 3 --output " +
                tmp_path("comb2.csv"));
  CHECK(rc2 == 0);
  CHECK(read_lines(tmp_path("comb2.csv")) == lines);
}

TEST_CASE("jsonl output") {
  write_file(tmp_path("comb.json"), kCombConfig);
  int rc = run("transmission --config " + tmp_path("comb.json") + " --format jsonl --output " +
               tmp_path("comb.jsonl"));
  CHECK(rc == 0);
  auto lines = read_lines(tmp_path("comb.jsonl"));
  REQUIRE(lines.size() == 201);
  CHECK(lines[0].find("{\"k\":3,") == 0);
}

TEST_CASE("resonances locate the comb line with width diagnostics") {
  write_file(tmp_path("comb.json"), kCombConfig);
  int rc = run("resonances --config " + tmp_path("comb.json") + " --output " +
               tmp_path("res.csv"));
  CHECK(rc == 0);
  auto lines = read_lines(tmp_path("res.csv"));
  REQUIRE(lines.size() >= 3);
  CHECK(lines[1] == "k_star,type,delta_k_analytic,width_numeric,f1_tilde,f2_tilde,Z,zeta");
  bool found = false;
  for (const auto& l : lines)
    if (l.find("3.0800") != std::string::npos && l.find("comb") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("bands come out as intervals") {
  write_file(tmp_path("bands.json"), R"({
    "system": {
      "cell": {"kind": "delta", "strength": 10.0},
      "tiers": [{"N": 2, "s": 1.0}, {"N": 2, "s": 0.5}]
    },
    "sweep": {"axis": "k", "start": 0.5, "stop": 15.0, "points": 1500},
    "overlap_policy": "permissive"
  })");
  int rc = run("bands --config " + tmp_path("bands.json") + " --output " + tmp_path("bands.csv"));
  CHECK(rc == 0);
  auto lines = read_lines(tmp_path("bands.csv"));
  CHECK(lines[1] == "tier,kind,k_lo,k_hi");
  bool forbidden = false;
  for (const auto& l : lines)
    if (l.find("2,forbidden") == 0) forbidden = true;
  CHECK(forbidden);
}

TEST_CASE("exit codes distinguish parse and validation failures") {
  write_file(tmp_path("broken.json"), "{ not json");
  CHECK(run("transmission --config " + tmp_path("broken.json") + " --output /dev/null") == 2);

  write_file(tmp_path("unknown.json"), R"({
    "system": {"cell": {"kind": "delta", "strength": 1.0}},
    "sweep": {"axis": "k", "start": 1, "stop": 2, "points": 10},
    "typo": true
  })");
  CHECK(run("transmission --config " + tmp_path("unknown.json") + " --output /dev/null") == 2);

  write_file(tmp_path("overlap.json"), R"({
    "system": {
      "cell": {"kind": "rectangular", "height": 5.0, "width": 2.0},
      "tiers": [{"N": 3, "s": 1.0}]
    },
    "sweep": {"axis": "k", "start": 1, "stop": 2, "points": 10}
  })");
  CHECK(run("transmission --config " + tmp_path("overlap.json") + " --output /dev/null") == 3);
  // the same geometry is evaluable under --permissive-overlap
  CHECK(run("transmission --config " + tmp_path("overlap.json") +
            " --permissive-overlap --output /dev/null") == 0);
}

TEST_CASE("verify runs the seeded default suite") {
  CHECK(run("verify --output " + tmp_path("verify.txt")) == 0);
  auto lines = read_lines(tmp_path("verify.txt"));
  REQUIRE(!lines.empty());
  CHECK(lines[0].find("random specs") != std::string::npos);
}

TEST_CASE("verify flags tolerance violations with exit 1") {
  write_file(tmp_path("strictverify.json"), R"({
    "system": {
      "cell": {"kind": "rectangular", "height": 10.0, "width": 1.0},
      "tiers": [{"N": 2, "s": 2.5}]
    },
    "sweep": {"axis": "k", "start": 0.5, "stop": 14.0, "points": 300},
    "tolerances": {"oracle_abs": 1e-30, "oracle_rel_log": 1e-30}
  })");
  CHECK(run("verify --config " + tmp_path("strictverify.json") + " --output /dev/null") == 1);

  write_file(tmp_path("okverify.json"), R"({
    "system": {
      "cell": {"kind": "rectangular", "height": 10.0, "width": 1.0},
      "tiers": [{"N": 2, "s": 2.5}]
    },
    "sweep": {"axis": "k", "start": 0.5, "stop": 14.0, "points": 300}
  })");
  CHECK(run("verify --config " + tmp_path("okverify.json") + " --output /dev/null") == 0);
}

TEST_CASE("fractal config drives the specialized path") {
  write_file(tmp_path("svc.json"), R"({
    "system": {"fractal": {"kind": "svc", "stage": 8, "span": 10.0, "height": 10.0}},
    "sweep": {"axis": "k", "start": 0.1, "stop": 15.0, "points": 120}
  })");
  int rc = run("transmission --config " + tmp_path("svc.json") + " --output " +
               tmp_path("svc.csv"));
  CHECK(rc == 0);
  auto lines = read_lines(tmp_path("svc.csv"));
  REQUIRE(lines.size() == 2 + 120);
  CHECK(lines[1].find("xi_8") != std::string::npos);
  // every log10T entry is finite
  for (std::size_t i = 2; i < lines.size(); ++i) {
    CHECK(lines[i].find("inf") == std::string::npos);
    CHECK(lines[i].find("nan") == std::string::npos);
  }
}
