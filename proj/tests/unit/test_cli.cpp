// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using json = nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = ymx::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = "ymx_test_" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("wg table") {
  const auto r = run({"wg", "--n", "2", "--N", "2"});
  REQUIRE(r.code == ymx::cli::kOk);
  const auto j = json::parse(r.out);
  CHECK(j["config"]["command"] == "wg");
  CHECK(j["result"]["table"][0]["wg"] == "1/3");
  CHECK(j["result"]["table"][1]["wg"] == "-1/6");
}

TEST_CASE("lattice-describe") {
  const auto r = run({"lattice-describe", "--extents", "1,1"});
  REQUIRE(r.code == ymx::cli::kOk);
  const auto j = json::parse(r.out);
  CHECK(j["result"]["edges"].size() == 4);
  CHECK(j["result"]["plaquettes"].size() == 1);
}

TEST_CASE("exit codes") {
  CHECK(run({"wg", "--n", "-1", "--N", "2"}).code == ymx::cli::kValidation);
  CHECK(run({"nonsense"}).code == ymx::cli::kValidation);
  CHECK(run({"statesum", "--extents", "1,1", "--loop", "+e0 +e1"}).code == ymx::cli::kValidation);
  const auto loops = temp_file("loops.json", R"({"loops":[{"plaquette":0}]})");
  const auto refusal = run({"mc", "--extents", "2,2", "--action", "heat", "--t", "0.05", "--N", "2", "--samples", "2000",
                            "--loops", loops});
  CHECK(refusal.code == ymx::cli::kRefusal);
  std::remove(loops.c_str());
}

TEST_CASE("statesum result") {
  const auto r = run({"statesum", "--extents", "1,1", "--loop", "+e0 +e3 -e2 -e1", "--N", "1", "--beta", "1"});
  REQUIRE(r.code == ymx::cli::kOk);
  const auto j = json::parse(r.out);
  CHECK(std::stod(j["result"]["value"].get<std::string>()) == doctest::Approx(0.4463899658965344).epsilon(1e-12));
}

TEST_CASE("crosscheck passes on a single plaquette") {
  const auto r = run({"crosscheck", "--extents", "1,1", "--loop", "+e0 +e3 -e2 -e1", "--N", "2", "--beta", "0.5",
                      "--samples", "100000"});
  CHECK(r.code == ymx::cli::kOk);
  const auto j = json::parse(r.out);
  CHECK(j["result"]["pass"] == true);
}
