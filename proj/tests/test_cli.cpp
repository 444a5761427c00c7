#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "ltnn/cli.hpp"
#include "ltnn/errors.hpp"
#include "ltnn/network.hpp"
#include "ltnn/spec_io.hpp"

namespace fs = std::filesystem;
using namespace ltnn;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ltnn_cli_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const auto p = path / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string at(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kXor = "x1,x2,y\n0,0,0\n1,0,1\n0,1,1\n1,1,0\n";

}  // namespace

TEST_CASE("parse_widths") {
  CHECK(cli::parse_widths("2,1") == std::vector<std::size_t>{2, 1});
  CHECK(cli::parse_widths("3") == std::vector<std::size_t>{3});
  CHECK_THROWS_AS(cli::parse_widths("2,,1"), InputError);
  CHECK_THROWS_AS(cli::parse_widths("0"), InputError);
  CHECK_THROWS_AS(cli::parse_widths("a"), InputError);
}

TEST_CASE("train on XOR") {
  TempDir dir;
  const auto data = dir.file("xor.csv", kXor);
  const auto net = dir.at("net.json");
  const auto r = run({"train", data, "--arch", "2,1", "-o", net});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["optimum"] == "0");
  CHECK(j["data_points"] == 4);
  CHECK_FALSE(j.contains("wall_time_seconds"));
  const auto network = deserialize_network(slurp(net));
  CHECK(size(network) == 3);

  // Byte-identical reruns.
  const auto first = slurp(net);
  const auto again = run({"train", data, "--arch", "2,1", "-o", net});
  CHECK(again.out == r.out);
  CHECK(slurp(net) == first);

  const auto pts = dir.file("pts.csv", "x1,x2\n0,0\n1,0\n1,1\n");
  const auto ev = run({"eval", net, pts});
  CHECK(ev.code == 0);
  CHECK(ev.out == "x1,x2,y\n0,0,0\n1,0,1\n1,1,0\n");

  const auto timed = run({"train", data, "--arch", "1", "--timing", "-o", dir.at("net2.json")});
  CHECK(nlohmann::json::parse(timed.out).contains("wall_time_seconds"));
}

TEST_CASE("train errors map to exit codes") {
  TempDir dir;
  const auto data = dir.file("xor.csv", kXor);
  const auto refused = run({"train", data, "--arch", "5,5,1", "-o", dir.at("n.json")});
  CHECK(refused.code == cli::kRefused);
  CHECK(refused.err.find("collection cap") != std::string::npos);
  const auto bad = dir.file("bad.csv", "x1,y\n1/0,2\n");
  const auto parse = run({"train", bad, "--arch", "1", "-o", dir.at("n.json")});
  CHECK(parse.code == cli::kInputError);
  CHECK(parse.err.find("bad.csv:2") != std::string::npos);
  CHECK(run({"train", dir.at("missing.csv"), "--arch", "1"}).code == cli::kInputError);
  CHECK(run({"frobnicate"}).code != 0);
  const auto dup = dir.file("dup.csv", "x1,y\n1,2\n1,3\n");
  CHECK(run({"train", dup, "--arch", "1", "-o", dir.at("n.json")}).code == cli::kInputError);
}

TEST_CASE("config file from the environment") {
  TempDir dir;
  const auto data = dir.file("xor.csv", kXor);
  const auto cfg = dir.file("cfg.json", R"({"collection_cap": 1})");
  ::setenv("LTNN_CONFIG", cfg.c_str(), 1);
  const auto r = run({"train", data, "--arch", "2,1", "-o", dir.at("n.json")});
  ::unsetenv("LTNN_CONFIG");
  CHECK(r.code == cli::kRefused);
  const auto bad = dir.file("bad.json", R"({"colection_cap": 1})");
  CHECK(run({"--config", bad, "count", "--collections", "2"}).code == cli::kInputError);
}

TEST_CASE("compile and verify") {
  TempDir dir;
  const auto spec = dir.file("grid.json", spec_to_json(fixtures::square_grid()).dump());
  const auto net = dir.at("grid_net.json");
  const auto c = run({"compile", spec, "--mode", "exact", "-o", net});
  REQUIRE(c.code == 0);
  const auto report = nlohmann::json::parse(c.out);
  CHECK(report["within_bound"] == true);
  CHECK(report["cells"] == 25);
  CHECK(c.err.find("volume bound") != std::string::npos);
  const auto v = run({"verify", net, spec, "--samples", "500", "--seed", "3"});
  CHECK(v.code == 0);
  CHECK(nlohmann::json::parse(v.out)["mismatches"] == 0);

  const auto other = dir.file("const.json", spec_to_json(fixtures::constant(2, 1)).dump());
  CHECK(run({"verify", net, other, "--samples", "100"}).code == cli::kMismatch);

  const auto ae_net = dir.at("ae.json");
  CHECK(run({"compile", spec, "--mode", "ae", "-o", ae_net}).code == 0);
  CHECK(run({"verify", ae_net, spec, "--open-cells", "--samples", "500"}).code == 0);

  auto broken = spec_to_json(fixtures::step_function());
  broken["cells"].erase(broken["cells"].begin() + 3);
  broken.erase("faces");
  const auto missing = dir.file("missing.json", broken.dump());
  const auto m = run({"compile", missing, "--mode", "exact", "-o", dir.at("x.json")});
  CHECK(m.code == cli::kInputError);
  CHECK_MESSAGE(m.err.find("not a cell") != std::string::npos, m.err);
}

TEST_CASE("count") {
  TempDir dir;
  const auto c = run({"count", "--collections", "2"});
  REQUIRE(c.code == 0);
  CHECK(nlohmann::json::parse(c.out)["collections"] == 14);
  const auto pts = dir.file("sq.csv", "x1,x2\n0,0\n1,0\n0,1\n1,1\n");
  const auto p = run({"count", pts});
  REQUIRE(p.code == 0);
  CHECK(nlohmann::json::parse(p.out)["separable_subsets"] == 14);
  CHECK(run({"count", "--collections", "5"}).code == cli::kRefused);
}

TEST_CASE("generate then eval") {
  TempDir dir;
  const auto net = dir.at("parity.json");
  REQUIRE(run({"generate", "parity", "3", "-o", net}).code == 0);
  const auto pts = dir.file("p.csv", "x1,x2,x3\n1,1,1\n-1,1,1\n-1,-2,1/3\n");
  const auto ev = run({"eval", net, pts});
  CHECK(ev.out == "x1,x2,x3,y\n1,1,1,1\n-1,1,1,0\n-1,-2,1/3,1\n");
  const auto braid = run({"generate", "braid", "3"});
  CHECK(braid.code == 0);
  CHECK(deserialize_network(braid.out).index() == 0);
}
