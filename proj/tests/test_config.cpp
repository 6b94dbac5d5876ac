#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "dwlab/config.hpp"

using namespace dwlab;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = std::string("cfg_") + name + ".tmp";
  std::ofstream out(path);
  out << body;
  return path;
}

bool mentions(const std::vector<std::string>& errors, const std::string& needle) {
  for (const std::string& e : errors) {
    if (e.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("minimal config picks up documented defaults") {
  const std::string path = write_temp("minimal",
                                      "[experiment]\n"
                                      "kind = lifespan-sweep\n"
                                      "[sweep]\n"
                                      "epsilons = 0.5 0.25\n");
  const ConfigParse parsed = parse_config(path);
  REQUIRE(parsed.ok());
  CHECK(parsed.config.kind == ExperimentKind::LifespanSweep);
  CHECK(parsed.config.dr == 0.02);
  CHECK(parsed.config.cfl_safety == 0.9);
  CHECK(parsed.config.blow_threshold == 1e8);
  CHECK(parsed.config.epsilons.size() == 2);
  std::remove(path.c_str());
}

TEST_CASE("violations are reported together, each naming its key") {
  const std::string path = write_temp("bad",
                                      "[sweep]\n"
                                      "p = 0.5\n"
                                      "[grid]\n"
                                      "dr = 0.02\n"
                                      "[solver]\n"
                                      "dt = 0.05\n"
                                      "[mystery]\n"
                                      "knob = 1\n");
  const ConfigParse parsed = parse_config(path);
  REQUIRE_FALSE(parsed.ok());
  CHECK(mentions(parsed.errors, "sweep.p"));
  CHECK(mentions(parsed.errors, "CFL"));
  CHECK(mentions(parsed.errors, "mystery.knob"));
  std::remove(path.c_str());
}

TEST_CASE("missing files and malformed lines are rejected") {
  const ConfigParse missing = parse_config("does_not_exist.cfg");
  CHECK_FALSE(missing.ok());

  const std::string path = write_temp("malformed", "just some words\n");
  const ConfigParse parsed = parse_config(path);
  CHECK_FALSE(parsed.ok());
  std::remove(path.c_str());
}

TEST_CASE("a lifespan sweep without amplitudes is named in the errors") {
  const std::string path = write_temp("nosweep",
                                      "[experiment]\n"
                                      "kind = lifespan-sweep\n");
  const ConfigParse parsed = parse_config(path);
  REQUIRE_FALSE(parsed.ok());
  CHECK(mentions(parsed.errors, "sweep.epsilons"));
  std::remove(path.c_str());
}

TEST_CASE("comments and section scoping behave") {
  const std::string path = write_temp("comments",
                                      "# leading comment\n"
                                      "[experiment]\n"
                                      "kind = inequalities  # trailing\n"
                                      "seed = 42\n"
                                      "\n"
                                      "[report]\n"
                                      "q_values = 1 2\n");
  const ConfigParse parsed = parse_config(path);
  REQUIRE(parsed.ok());
  CHECK(parsed.config.kind == ExperimentKind::Inequalities);
  CHECK(parsed.config.seed == 42);
  REQUIRE(parsed.config.q_values.size() == 2);
  CHECK(parsed.config.q_values[1] == 2.0);
  std::remove(path.c_str());
}
