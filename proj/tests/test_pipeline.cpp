#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "doctest.h"
#include "kjell/criteria.hpp"
#include "kjell/errors.hpp"
#include "kjell/pipeline.hpp"
#include "kjell/report.hpp"

using namespace kjell;
namespace fs = std::filesystem;

namespace {

RunConfig small_run(const std::string& family, const std::string& dir) {
  RunConfig c;
  c.family = family;
  c.n_max = family == "sodin" ? 30 : 4;
  c.n_min = family == "kjellberg" ? -3 : 0;
  c.nodes = family == "sodin" ? 4 : 16;
  c.grid_radii = 8;
  c.grid_angles = 4;
  c.samples = 20;
  c.walks = 1000;
  c.radii = {5.0};
  c.out = (fs::temp_directory_path() / "kjell_test_pipeline" / dir).string();
  fs::remove_all(c.out);
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(is), {});
}

std::size_t count_ext(const std::string& dir, const std::string& ext) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.path().extension() == ext;
  return n;
}

}  // namespace

TEST_CASE("config round trip and validation") {
  RunConfig c;
  c.family = "kjellberg";
  c.n_min = -4;
  c.radii = {1.5, 2.25};
  c.checks = {"harnack", "beurling"};
  c.continuum = true;
  std::ostringstream a;
  write_config(a, c);
  std::istringstream in(a.str());
  const RunConfig back = read_config(in);
  std::ostringstream b;
  write_config(b, back);
  CHECK(a.str() == b.str());
  CHECK(back.radii == c.radii);
  CHECK(back.checks == c.checks);

  std::istringstream bad_key("colour = red\n");
  CHECK_THROWS_AS(read_config(bad_key), InvalidSpec);
  std::istringstream bad_num("[solver]\nnodes = many\n");
  CHECK_THROWS_AS(read_config(bad_num), InvalidSpec);
  std::istringstream no_eq("nodes 12\n");
  CHECK_THROWS_AS(read_config(no_eq), InvalidSpec);
  std::istringstream comments("# a comment\n[set]\nfamily = thick  # trailing\n");
  CHECK(read_config(comments).family == "thick");
}

TEST_CASE("set construction from the config") {
  RunConfig c;
  c.family = "kjellberg";
  c.n_min = 0;
  c.n_max = 3;
  CHECK(build_set(c).size() == 4);
  c.family = "sodin";
  c.n_max = 10;
  CHECK(build_set(c).size() == 9);  // [1, 2] and [2, 5/2] touch and merge
  c.family = "moebius";
  CHECK_THROWS_AS(build_set(c), InvalidSpec);
  c.family = "intervals";
  CHECK_THROWS_AS(build_set(c), InvalidSpec);
}

TEST_CASE("targets and criterion names") {
  CHECK(criterion_names().size() == kCriterionCount);
  const auto t = check_targets();
  for (const char* name : {"harnack", "zero_table", "criterion1", "criterion13", "determinism"})
    CHECK(std::find(t.begin(), t.end(), name) != t.end());
  CHECK_THROWS_AS(run_criterion(0), DomainError);
  CriterionResult r;
  r.id = 3;
  r.name = "x";
  r.passed = true;
  r.detail = "ok";
  CHECK(format_result(r).rfind("PASS criterion 3 x: ok", 0) == 0);
}

TEST_CASE("construct needs a solve artifact") {
  const auto c = small_run("corollary", "missing");
  std::ostringstream log;
  CHECK_THROWS_AS(cmd_construct(c, log), MissingArtifact);
  CHECK_THROWS_AS(cmd_report(c, log), MissingArtifact);
}

TEST_CASE("solve, construct, check and report on a corollary set") {
  auto c = small_run("corollary", "corollary");
  std::ostringstream log;
  REQUIRE(cmd_solve(c, log) == kExitPass);
  REQUIRE(cmd_construct(c, log) == kExitPass);
  std::vector<CheckRecord> recs;
  CHECK(cmd_check(c, log, &recs) == kExitPass);
  CHECK(std::any_of(recs.begin(), recs.end(), [](const CheckRecord& r) { return r.name == "zero_table"; }));

  c.checks = {"harnack"};
  CHECK(cmd_check(c, log, &recs) == kExitPass);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].name == "harnack");

  c.checks = {"no_such_check"};
  CHECK_THROWS_AS(cmd_check(c, log), InvalidSpec);

  c.checks.clear();
  CHECK(cmd_measure(c, log) == kExitPass);
  CHECK(cmd_report(c, log) == kExitPass);
  CHECK(count_ext(c.out, ".svg") == 6);
  for (const char* stem : {"growth", "envelope", "density", "rho_upper", "error_field", "omega"}) {
    CHECK(fs::exists(fs::path(c.out) / (std::string(stem) + ".svg")));
    CHECK(fs::exists(fs::path(c.out) / (std::string(stem) + ".csv")));
  }
  CHECK(slurp(fs::path(c.out) / "growth.csv").rfind("r,A,B,B/sqrt(r)\n", 0) == 0);

  // a corrupted zero table fails the named check
  {
    std::ofstream os(fs::path(c.out) / "zeros.txt", std::ios::app);
    os << "999999 0.5 1\n";
  }
  c.checks = {"zero_table"};
  CHECK(cmd_check(c, log, &recs) == kExitCheckFailed);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].name == "zero_table");
  CHECK_FALSE(recs[0].passed);
  CHECK(slurp(fs::path(c.out) / "check_summary.txt").rfind("FAIL zero_table", 0) == 0);
}

TEST_CASE("continuum mode has a zero error field") {
  auto c = small_run("corollary", "continuum");
  c.continuum = true;
  std::ostringstream log;
  REQUIRE(cmd_solve(c, log) == kExitPass);
  REQUIRE(cmd_construct(c, log) == kExitPass);
  std::ifstream is(fs::path(c.out) / "error_field.csv");
  const auto rows = read_csv_rows(is);
  REQUIRE(!rows.empty());
  for (const auto& r : rows) CHECK(r[4] == 0.0);
}

TEST_CASE("family-specific plots") {
  std::ostringstream log;
  auto s = small_run("sodin", "sodin");
  REQUIRE(cmd_solve(s, log) == kExitPass);
  REQUIRE(cmd_report(s, log) == kExitPass);
  CHECK(fs::exists(fs::path(s.out) / "decay.svg"));
  CHECK(fs::exists(fs::path(s.out) / "decay.csv"));

  auto k = small_run("kjellberg", "kjellberg");
  REQUIRE(cmd_solve(k, log) == kExitPass);
  REQUIRE(cmd_report(k, log) == kExitPass);
  CHECK(fs::exists(fs::path(k.out) / "scaling.svg"));
  std::ifstream is(fs::path(k.out) / "scaling.csv");
  const auto rows = read_csv_rows(is);
  REQUIRE(rows.size() > 2);
  for (const auto& r : rows) CHECK(r[1] == doctest::Approx(rows[0][1]).epsilon(0.05));
}

TEST_CASE("repeated runs give identical CSV bytes") {
  std::vector<std::string> runs;
  for (const char* dir : {"det_a", "det_b"}) {
    auto c = small_run("corollary", dir);
    c.deterministic = true;
    std::ostringstream log;
    cmd_solve(c, log);
    cmd_construct(c, log);
    cmd_report(c, log);
    std::string all;
    for (const char* f : {"growth.csv", "error_field.csv", "omega.csv", "rho_upper.csv"})
      all += slurp(fs::path(c.out) / f);
    runs.push_back(all);
  }
  CHECK(runs[0] == runs[1]);
}

TEST_CASE("SVG and CSV writers") {
  LinePlot p;
  p.title = "a < b";
  p.log_y = true;
  p.series = {{"s", {1, 2, 3}, {1, 0, 10}}};
  std::ostringstream os;
  write_svg(os, p);
  const std::string svg = os.str();
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("a &lt; b") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  HeatMap m;
  m.cells = {{0, 0, -1}, {1, 1, 2}};
  std::ostringstream hs;
  write_svg(hs, m);
  CHECK(hs.str().find("#ffffff") == std::string::npos);
  CHECK(hs.str().find("#ff0000") != std::string::npos);

  std::ostringstream cs;
  write_columns_csv(cs, {"x", "y"}, {{1, 2}, {0.5, -3}});
  CHECK(cs.str() == "x,y\n1,0.5\n2,-3\n");
  std::istringstream in(cs.str());
  const auto rows = read_csv_rows(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][1] == -3.0);
  CHECK_THROWS_AS(write_columns_csv(cs, {"x"}, {{1}, {2}}), DomainError);
  CHECK_THROWS_AS(write_columns_csv(cs, {"x", "y"}, {{1}, {2, 3}}), DomainError);
}
