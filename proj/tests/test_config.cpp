#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "config.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "run.hpp"

using namespace wetlab;

namespace {

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary);
  out << body;
  return path;
}

bool mentions(const ValidationError& e, const std::string& needle) {
  for (const auto& s : e.issues)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults from an empty config") {
  RunConfig cfg = make_config({}, {});
  CHECK(cfg.profile_kind == "flat");
  CHECK(cfg.resolution == 256);
  CHECK(cfg.slack == doctest::Approx(0.005));
  CHECK(cfg.neighborhood == 16);
  CHECK(cfg.gamma == doctest::Approx(0.3));
  CHECK(cfg.epsilon_list.size() == 3);
}

TEST_CASE("unit fraction parsing") {
  double v = 0.0;
  CHECK(parse_unit_fraction("1/8", &v) == 8);
  CHECK(v == doctest::Approx(0.125));
  CHECK(parse_unit_fraction("0.125", &v) == 8);
  CHECK(parse_unit_fraction(" 1 / 16 ", &v) == 16);
  CHECK(parse_unit_fraction("0.3", &v) == 0);
  CHECK(parse_unit_fraction("2/8", &v) == 0);
  CHECK(parse_unit_fraction("-0.5", &v) == 0);
}

TEST_CASE("file parsing: comments, blanks, duplicates") {
  auto path = write_temp("wetlab_cfg_basic.cfg",
                         "# comment\n"
                         "\n"
                         "wetting.gamma = 0.4\n"
                         "wetting.gamma = 0.6\n"
                         "solver.resolution = 128\n");
  RunConfig cfg = parse_config(path.string());
  CHECK(cfg.gamma == doctest::Approx(0.6));  // last writer wins
  CHECK(cfg.resolution == 128);
  CHECK(cfg.source_path == path.string());
  std::filesystem::remove(path);
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(parse_config("/nonexistent/path.cfg"), IoError);
}

TEST_CASE("violations are collected, not truncated") {
  try {
    make_config({{"wetting.gamma", "1.2"},
                 {"solver.resolution", "4"},
                 {"bogus.key", "1"},
                 {"experiment.epsilon_list", "0.3, 1/8"}},
                {});
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.issues.size() >= 4);
    CHECK(mentions(e, "wetting.gamma"));
    CHECK(mentions(e, "solver.resolution"));
    CHECK(mentions(e, "bogus.key"));
    CHECK(mentions(e, "epsilon must equal 1/j"));
  }
}

TEST_CASE("set overrides win over the file") {
  RunConfig cfg = make_config({{"wetting.gamma", "0.2"}},
                              {"wetting.gamma=0.7", "solver.threads=3"});
  CHECK(cfg.gamma == doctest::Approx(0.7));
  CHECK(cfg.threads == 3);
  CHECK_THROWS_AS(make_config({}, {"no_equals_sign"}), ValidationError);
}

TEST_CASE("epsilon list accepts 1/j strings") {
  RunConfig cfg = make_config({{"experiment.epsilon_list", "1/4, 1/8, 1/16"}}, {});
  REQUIRE(cfg.epsilon_list.size() == 3);
  CHECK(cfg.epsilon_list[0] == doctest::Approx(0.25));
  CHECK(cfg.epsilon_list[2] == doctest::Approx(0.0625));
  CHECK_THROWS_AS(make_config({{"experiment.epsilon_list", "1/8, 1/4"}}, {}),
                  ValidationError);
}

TEST_CASE("run dispatch: analyze succeeds, certify on triangle exits 2") {
  RunConfig flat = make_config({{"wetting.gamma", "0.5"}}, {});
  CHECK(run("analyze", flat) == 0);

  RunConfig tri = make_config(
      {{"profile.kind", "triangle"}, {"profile.m", "2.0"},
       {"wetting.gamma", "0.6"}},
      {});
  CHECK(run("certify", tri) == 2);
  CHECK(run("frobnicate", tri) == 1);
}

TEST_CASE("run dispatch: minimize writes its outputs") {
  auto dir = std::filesystem::temp_directory_path() / "wetlab_test_minimize";
  std::filesystem::remove_all(dir);
  RunConfig cfg = make_config({{"wetting.gamma", "0.5"},
                               {"experiment.q", "0.05"},
                               {"solver.resolution", "96"},
                               {"output.outdir", dir.string()}},
                              {});
  CHECK(run("minimize", cfg) == 0);
  CHECK(std::filesystem::exists(dir / "droplet.pgm"));
  CHECK(std::filesystem::exists(dir / "energy.csv"));
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
