#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "splinedim/cli.hpp"
#include "splinedim/mesh.hpp"
#include "splinedim/refine.hpp"
#include "support/meshgen.hpp"

using namespace splinedim;
namespace ts = splinedim::testsupport;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("splinedim_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path file = path / name;
    std::ofstream out(file);
    out << text;
    return file.string();
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("validate: exit codes and report text") {
  TempDir dir;
  const auto good = dir.write("good.json", write_mesh_json(ts::two_triangles()));
  auto result = run({"validate", good});
  CHECK(result.code == kExitOk);
  CHECK(result.out.find("valid disk") != std::string::npos);

  const auto bad = dir.write("bad.json", write_mesh_json(ts::pinch_pair()));
  result = run({"validate", bad});
  CHECK(result.code == kExitUsageOrInput);
  CHECK(result.out.find("invalid") != std::string::npos);

  result = run({"validate", dir.file("missing.json")});
  CHECK(result.code == kExitUsageOrInput);
}

TEST_CASE("stats lists the f-vector and slope counts") {
  TempDir dir;
  const auto path = dir.write("fan.json", write_mesh_json(ts::fan5_generic()));
  const auto result = run({"stats", path, "--format", "json"});
  CHECK(result.code == kExitOk);
  const auto doc = nlohmann::json::parse(result.out);
  CHECK(doc["f0"] == 6);
  CHECK(doc["f2"] == 5);
  CHECK(doc["interior_vertices"][0]["slope_count"] == 5);
}

TEST_CASE("bounds on the twelve-split: exactness across the board") {
  TempDir dir;
  const auto rec = ps12_split(ts::single_triangle());
  const auto path = dir.write("ps12.json", write_mesh_json(rec.child));
  const auto result = run({"bounds", path, "--r", "1", "--k", "2..6",
                           "--order", "exhaustive", "--oracle", "--format",
                           "json"});
  REQUIRE(result.code == kExitOk);
  const auto doc = nlohmann::json::parse(result.out);
  REQUIRE(doc.size() == 5);
  for (const auto& row : doc) {
    CHECK(row["lbh"] == row["lbs"]);
    CHECK(row["lbh"] == row["best_ubh"]);
    CHECK(row["lbh"] == row["oracle_dim"]);
    CHECK(row["homology_defect"] == 0);
    CHECK(row["exactness_certified"] == true);
  }
  CHECK(doc[0]["k"] == 2);
  CHECK(doc[0]["lbh"] == 12);
}

TEST_CASE("bounds: usage errors") {
  TempDir dir;
  const auto path = dir.write("tri.json", write_mesh_json(ts::single_triangle()));
  CHECK(run({"bounds", path, "--r", "3", "--k", "2"}).code == kExitUsageOrInput);
  CHECK(run({"bounds", path, "--r", "1", "--k", "4..2"}).code == kExitUsageOrInput);
  CHECK(run({"bounds", path, "--r", "1", "--k", "2", "--format", "yaml"}).code ==
        kExitUsageOrInput);
  CHECK(run({"bounds", path}).code == kExitUsageOrInput);
  CHECK(run({}).code == kExitUsageOrInput);
}

TEST_CASE("bounds json output round-trips byte-identically") {
  TempDir dir;
  const auto path =
      dir.write("mesh.json", write_mesh_json(ts::random_disk_mesh(900)));
  const auto out_path = dir.file("report.json");
  const auto result = run({"bounds", path, "--r", "1", "--k", "1..5", "--order",
                           "greedy", "--format", "json", "--out", out_path});
  REQUIRE(result.code == kExitOk);
  const std::string emitted = slurp(out_path);
  const auto parsed = nlohmann::ordered_json::parse(emitted);
  CHECK(parsed.dump(2) + "\n" == emitted);
}

TEST_CASE("bounds output is deterministic for a fixed seed") {
  TempDir dir;
  const auto path =
      dir.write("mesh.json", write_mesh_json(ts::random_disk_mesh(901)));
  const auto a = run({"bounds", path, "--r", "1", "--k", "1..4", "--order",
                      "greedy", "--seed", "7", "--format", "csv"});
  const auto b = run({"bounds", path, "--r", "1", "--k", "1..4", "--order",
                      "greedy", "--seed", "7", "--format", "csv"});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
}

TEST_CASE("bounds accepts a file-supplied ordering") {
  TempDir dir;
  const auto rec = ps12_split(ts::single_triangle());
  const auto path = dir.write("ps12.json", write_mesh_json(rec.child));
  nlohmann::json ord = nlohmann::json::array();
  ord.push_back(rec.medial_midpoint_child[0][0]);
  ord.push_back(rec.medial_midpoint_child[0][1]);
  ord.push_back(rec.medial_midpoint_child[0][2]);
  ord.push_back(rec.interior_point_child[0]);
  const auto ord_path = dir.write("ord.json", ord.dump());
  const auto result = run({"bounds", path, "--r", "1", "--k", "2", "--order",
                           ord_path, "--format", "json"});
  REQUIRE(result.code == kExitOk);
  const auto doc = nlohmann::json::parse(result.out);
  CHECK(doc[0]["ubh_for_ordering"] == 12);
  // No Schumaker-valid ordering exists on this mesh, so that cell is null.
  CHECK(doc[0]["ubs_for_ordering"].is_null());
  CHECK(doc[0]["exactness_certified"] == true);
}

TEST_CASE("oracle command reports dimension and defect") {
  TempDir dir;
  const auto path = dir.write("ms.json", write_mesh_json(ts::morgan_scott_symmetric()));
  const auto result = run({"oracle", path, "--r", "1", "--k", "2", "--format", "csv"});
  REQUIRE(result.code == kExitOk);
  CHECK(result.out.find("1,2,6,6,-,-,-,7,1,0,6") != std::string::npos);
}

TEST_CASE("refine emits provenance and certify consumes the numbering") {
  TempDir dir;
  const auto parent_path =
      dir.write("quad.json", write_mesh_json(ts::unit_square_two_triangles()));
  const auto child_path = dir.file("child.json");
  auto result = run({"refine", parent_path, "--scheme", "ps6", "--out", child_path});
  REQUIRE(result.code == kExitOk);

  const auto doc = nlohmann::json::parse(slurp(child_path));
  CHECK(doc["parent_of_triangle"].size() == 12);
  CHECK(doc["suggested_ordering"].size() == 3);
  // The emitted file is a valid mesh document.
  const auto child = parse_triangulation(slurp(child_path));
  CHECK(child.f2() == 12);

  result = run({"certify", child_path, "--r", "1", "--ordering", child_path});
  REQUIRE(result.code == kExitOk);
  CHECK(result.out.find("exactness certified") != std::string::npos);
}

TEST_CASE("certify searches for an ordering when none is supplied") {
  TempDir dir;
  const auto rec = ps12_split(ts::single_triangle());
  const auto path = dir.write("ps12.json", write_mesh_json(rec.child));
  const auto result = run({"certify", path, "--r", "1"});
  REQUIRE(result.code == kExitOk);
  CHECK(result.out.find("exactness certified") != std::string::npos);
}

TEST_CASE("refine ps12 output validates and carries the parent map") {
  TempDir dir;
  const auto parent_path =
      dir.write("two.json", write_mesh_json(ts::two_triangles()));
  const auto out_path = dir.file("ps12.json");
  const auto result =
      run({"refine", parent_path, "--scheme", "ps12", "--out", out_path});
  REQUIRE(result.code == kExitOk);
  const auto doc = nlohmann::json::parse(slurp(out_path));
  CHECK(doc["parent_of_triangle"].size() == 24);
  CHECK(run({"validate", out_path}).code == kExitOk);
}

TEST_CASE("order: schumaker search outcomes") {
  TempDir dir;
  const auto rec = ps12_split(ts::single_triangle());
  const auto ps12_path = dir.write("ps12.json", write_mesh_json(rec.child));
  auto result = run({"order", ps12_path, "--strategy", "schumaker-search"});
  REQUIRE(result.code == kExitOk);
  CHECK(result.out.find("no Schumaker-valid ordering exists") != std::string::npos);

  const auto grid_path = dir.write("grid.json", write_mesh_json(ts::grid2x2()));
  result = run({"order", grid_path, "--strategy", "schumaker-search"});
  REQUIRE(result.code == kExitOk);
  CHECK(result.out.find("schumaker ordering found") != std::string::npos);
}

TEST_CASE("order: exhaustive minimization prints the bound") {
  TempDir dir;
  const auto rec = ps12_split(ts::single_triangle());
  const auto path = dir.write("ps12.json", write_mesh_json(rec.child));
  const auto result = run({"order", path, "--strategy", "exhaustive", "--r",
                           "1", "--k", "2"});
  REQUIRE(result.code == kExitOk);
  CHECK(result.out.find("upper bound (r=1, k=2): 12") != std::string::npos);
  CHECK(result.out.find("[exhaustive minimum]") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("run accepts a resolved config directly") {
  TempDir dir;
  const auto rec = ps12_split(ts::single_triangle());
  const auto path = dir.write("ps12.json", write_mesh_json(rec.child));

  RunConfig config;
  config.command = "bounds";
  config.mesh_path = path;
  config.r = 1;
  config.k_min = 2;
  config.k_max = 3;
  config.order = "exhaustive";
  config.oracle = true;
  config.format = OutputFormat::Json;

  std::ostringstream out, err;
  REQUIRE(splinedim::run(config, out, err) == kExitOk);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc.size() == 2);
  CHECK(doc[0]["lbh"] == 12);
  CHECK(doc[0]["oracle_dim"] == 12);

  // The same config twice is byte-identical.
  std::ostringstream out2, err2;
  splinedim::run(config, out2, err2);
  CHECK(out.str() == out2.str());

  config.command = "nonsense";
  std::ostringstream out3, err3;
  CHECK(splinedim::run(config, out3, err3) == kExitUsageOrInput);
}
