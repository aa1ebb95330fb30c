#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "billiards/cli/cli.hpp"
#include "billiards/io.hpp"
#include "billiards/report.hpp"
#include "doctest.h"

using namespace billiards;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "billiards");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("dd json") {
  const Result r = invoke({"dd", "--degree", "3", "--json"});
  REQUIRE(r.code == kExitPass);
  const Json j = Json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "dd");
  CHECK(j["passed"] == true);
  CHECK(std::abs(j["dd"][0]["lambda1"].get<double>() - 8.7720019) < 1e-7);
  CHECK(j["dd"][0]["lambda1_exact"] == "(9 + sqrt(73))/2");
  CHECK_FALSE(j["dd"][0].contains("consistency"));
}

TEST_CASE("suites exit 0") {
  CHECK(invoke({"verify-series", "--degree", "4", "--order", "12"}).code == kExitPass);
  CHECK(invoke({"verify-geometry", "--degree", "2,5"}).code == kExitPass);
  CHECK(invoke({"midpoint-scan", "--degree", "5", "--samples", "10000", "--iters", "10"}).code == kExitPass);
  CHECK(invoke({"witness", "--degree", "2", "--depth", "4"}).code == kExitPass);
  CHECK(invoke({"orbit", "--degree", "4", "--depth", "2"}).code == kExitPass);
  CHECK(invoke({"reflective-scan", "--samples", "20", "--depth", "3"}).code == kExitPass);
  CHECK(invoke({"ivrii-scan", "--grid", "16x1024"}).code == kExitPass);
}

TEST_CASE("formats") {
  const Result csv = invoke({"midpoint-scan", "--degree", "2", "--samples", "50", "--iters", "3", "--csv"});
  CHECK(csv.out.rfind("d,level,states,", 0) == 0);
  const Result svg = invoke({"billiard-sim", "--samples", "3", "--iters", "10", "--svg"});
  CHECK(svg.code == kExitPass);
  CHECK(svg.out.rfind("<svg", 0) == 0);
  const Result cells = invoke({"ivrii-scan", "--grid", "8x256", "--csv"});
  CHECK(cells.out.rfind("theta,phi,distance,flag\n", 0) == 0);
  const Result text = invoke({"verify-geometry", "--degree", "3"});
  CHECK(text.out.find("[PASS] ind_r_count") != std::string::npos);
  CHECK(text.out.find("result: PASS") != std::string::npos);
}

TEST_CASE("byte reproducible") {
  const std::vector<std::string> args{"orbit", "--degree", "3", "--depth", "3", "--json", "--seed", "7"};
  const Result a = invoke(args);
  const Result b = invoke(args);
  CHECK(a.code == kExitPass);
  CHECK(a.out == b.out);
  const Result c = invoke({"billiard-sim", "--samples", "4", "--csv", "--seed", "3"});
  CHECK(c.out == invoke({"billiard-sim", "--samples", "4", "--csv", "--seed", "3"}).out);
}

TEST_CASE("failures are reported with exit 1") {
  const Result r = invoke({"ivrii-scan", "--grid", "8x256", "--min-exponent", "5"});
  CHECK(r.code == kExitFail);
  CHECK(r.out.find("[FAIL] exponent") != std::string::npos);
  CHECK(Json::parse(r.err)["failed"][0]["check"] == "exponent");
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"nonsense"}).code == kExitUsage);
  CHECK(invoke({"dd", "--degree", "1"}).code == kExitUsage);
  CHECK(invoke({"dd", "--json", "--csv"}).code == kExitUsage);
  CHECK(invoke({"verify-series", "--svg"}).code == kExitUsage);
  CHECK(invoke({"ivrii-scan", "--grid", "64"}).code == kExitUsage);
  CHECK(invoke({"billiard-sim", "--table", "square"}).code == kExitUsage);
  CHECK(invoke({"--help"}).code == kExitPass);
}

TEST_CASE("io errors exit 3 and --out writes the artifact") {
  const Result bad = invoke({"dd", "--degree", "2", "--out", "/nonexistent-dir/dd.json"});
  CHECK(bad.code == kExitError);
  CHECK(bad.err.find("/nonexistent-dir/dd.json") != std::string::npos);
  CHECK(invoke({"orbit", "--curve", "/nonexistent-dir/curve.json"}).code == kExitError);

  const std::filesystem::path path = std::filesystem::temp_directory_path() / "billiards_test_cli_dd.json";
  const Result ok = invoke({"dd", "--degree", "2", "--json", "--out", path.string()});
  CHECK(ok.code == kExitPass);
  CHECK(ok.out.empty());
  CHECK(Json::parse(read_file(path.string()))["dd"][0]["lambda1_exact"] == "1");
  std::filesystem::remove(path);
}

TEST_CASE("dd json matches the golden file") {
  const Result r = invoke({"dd", "--degree", "2,3", "--json"});
  CHECK(r.out == read_file(std::string(BILLIARDS_GOLDEN_DIR) + "/dd_d2_d3.json"));
}
