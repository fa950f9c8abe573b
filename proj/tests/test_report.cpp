#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "pwc/report.hpp"

using namespace pwc;
using nlohmann::json;

TEST_CASE("config parsing") {
  SUBCASE("defaults") {
    const RunConfig cfg = RunConfig::defaults();
    CHECK(cfg.params.mass == 1.0);
    CHECK(cfg.n_points == 1024);
    CHECK(cfg.dt() == doctest::Approx(cfg.params.period() / 1000.0));
    CHECK(cfg.lags().size() == 8);
    CHECK(cfg.lags().back() == doctest::Approx(cfg.params.period()));
    CHECK_NOTHROW(cfg.validate());
  }

  SUBCASE("key-value text") {
    const RunConfig cfg = RunConfig::from_text(
        "# comment line\n"
        "mass = 2.0\n"
        "omega = 3.0\n"
        "state = coherent:1.0+0.0i\n"
        "ensemble_n = 128\n"
        "ensemble_scheme = random\n"
        "ensemble_seed = 99\n"
        "lags = 0, 0.5T, T/4, 1.25\n"
        "dt = T/2000\n"
        "t_final = 2T\n");
    CHECK(cfg.params.mass == 2.0);
    CHECK(cfg.state().kind == StateSpec::Kind::coherent);
    CHECK(cfg.ensemble_n == 128);
    CHECK(cfg.scheme == SamplingScheme::random);
    CHECK(cfg.seed == 99);
    const std::vector<double> lags = cfg.lags();
    REQUIRE(lags.size() == 4);
    const double period = cfg.params.period();
    CHECK(lags[1] == doctest::Approx(0.5 * period));
    CHECK(lags[2] == doctest::Approx(period / 4.0));
    CHECK(lags[3] == doctest::Approx(1.25));
    CHECK(cfg.dt() == doctest::Approx(period / 2000.0));
    CHECK(cfg.t_final() == doctest::Approx(2.0 * period));
  }

  SUBCASE("rejections") {
    CHECK_THROWS_AS(RunConfig::from_text("unknown_key = 1\n"), Error);
    CHECK_THROWS_AS(RunConfig::from_text("mass\n"), Error);
    CHECK_THROWS_AS(RunConfig::from_text("mass = pork\n"), Error);
    CHECK_THROWS_AS(RunConfig::from_text("dt = 0.5X\n").dt(), Error);

    RunConfig bad = RunConfig::defaults();
    bad.n_points = 100;
    CHECK_THROWS_AS(bad.validate(), Error);

    RunConfig coarse = RunConfig::defaults();
    coarse.dt_spec = "T/5";
    CHECK_THROWS_AS(coarse.validate(), Error);
  }

  SUBCASE("get mirrors set") {
    RunConfig cfg = RunConfig::defaults();
    cfg.set("omega", "2.5");
    CHECK(cfg.get("omega") == format_double(2.5));
    CHECK(cfg.get("ensemble_scheme") == "quantile");
    CHECK_THROWS_AS(cfg.get("nonsense"), Error);
  }
}

TEST_CASE("trajectory runner") {
  RunConfig cfg = RunConfig::defaults();
  cfg.set("ensemble_n", "5");
  cfg.set("t_final", "0.25T");

  const RunReport report = run_trajectories(cfg);
  CHECK(report.exit_status == 0);
  const std::string* csv = report.artifact("trajectories.csv");
  REQUIRE(csv != nullptr);
  CHECK(csv->rfind("particle_id,xi,t,x\n", 0) == 0);

  // Ground state: every path is constant.
  std::stringstream ss(*csv);
  std::string line;
  std::getline(ss, line);
  int rows = 0;
  while (std::getline(ss, line)) {
    ++rows;
    const size_t c1 = line.find(',');
    const size_t c2 = line.find(',', c1 + 1);
    const size_t c3 = line.find(',', c2 + 1);
    const double xi = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    const double x = std::stod(line.substr(c3 + 1));
    CHECK(std::abs(x - xi) <= 1e-5);
  }
  CHECK(rows == 5 * 251);

  const std::string* initial = report.artifact("state_initial.csv");
  REQUIRE(initial != nullptr);
  CHECK(initial->rfind("x,re,im,p_density\n", 0) == 0);
  CHECK(report.artifact("state_final.csv") != nullptr);
  CHECK(report.artifact("trajectories.json") != nullptr);
}

TEST_CASE("trajectory runner is deterministic") {
  RunConfig cfg = RunConfig::defaults();
  cfg.set("ensemble_n", "7");
  cfg.set("ensemble_scheme", "random");
  cfg.set("ensemble_seed", "1234");
  cfg.set("t_final", "0.1T");

  const RunReport a = run_trajectories(cfg);
  const RunReport b = run_trajectories(cfg);
  REQUIRE(a.artifacts.size() == b.artifacts.size());
  for (size_t i = 0; i < a.artifacts.size(); ++i) {
    CHECK(a.artifacts[i].first == b.artifacts[i].first);
    CHECK(a.artifacts[i].second == b.artifacts[i].second);
  }
}

TEST_CASE("coherent paths return home after one period") {
  RunConfig cfg = RunConfig::defaults();
  cfg.set("state", "coherent:1.0+0.0i");
  cfg.set("ensemble_n", "8");
  cfg.set("t_final", "1T");

  const RunReport report = run_trajectories(cfg);
  const std::string* csv = report.artifact("trajectories.csv");
  REQUIRE(csv != nullptr);

  // Compare the first and last row of each particle block.
  std::stringstream ss(*csv);
  std::string line;
  std::getline(ss, line);
  double first_x = 0.0, last_x = 0.0;
  int current_id = -1;
  while (std::getline(ss, line)) {
    const int id = std::stoi(line.substr(0, line.find(',')));
    const double x = std::stod(line.substr(line.rfind(',') + 1));
    if (id != current_id) {
      if (current_id >= 0) CHECK(std::abs(last_x - first_x) <= 2e-3);
      current_id = id;
      first_x = x;
    }
    last_x = x;
  }
  CHECK(std::abs(last_x - first_x) <= 2e-3);
}

TEST_CASE("correlate runner emits the documented schema") {
  RunConfig cfg = RunConfig::defaults();
  cfg.set("ensemble_n", "2000");
  cfg.set("lags", "0, 0.5T");

  const RunReport report = run_correlate(cfg);
  CHECK(report.exit_status == 0);

  const std::string* text = report.artifact("correlate.json");
  REQUIRE(text != nullptr);
  const json doc = json::parse(*text);
  CHECK(doc["command"] == "correlate");
  CHECK(doc.contains("config"));
  CHECK(doc["config"]["n_points"] == 1024);
  CHECK(doc["params"]["omega"] == 1.0);
  CHECK(doc["grid"]["n_points"] == 1024);
  const json& lags = doc["lags"];
  REQUIRE(lags.size() == 2);
  for (const char* field : {"tau", "qm_re", "qm_im", "qm_sym", "bohm",
                            "fock_re", "fock_im", "flag"}) {
    CHECK(lags[0].contains(field));
  }
  CHECK(lags[1]["flag"] == "CONTRADICTION");

  const std::string* csv = report.artifact("correlate.csv");
  REQUIRE(csv != nullptr);
  CHECK(csv->rfind("tau,qm_re,qm_im,qm_sym,bohm,fock_re,fock_im,flag\n", 0) ==
        0);
  CHECK(std::count(csv->begin(), csv->end(), '\n') == 3);
}

TEST_CASE("demo runner confirms the contradiction and refuses other states") {
  RunConfig cfg = RunConfig::defaults();
  cfg.set("ensemble_n", "4000");
  cfg.set("lags", "0, 0.375T, 0.5T, 1T");

  const RunReport report = run_contradiction_demo(cfg);
  CHECK(report.exit_status == 0);
  const json doc = json::parse(*report.artifact("contradiction.json"));
  CHECK(doc["contradiction_confirmed"] == true);
  CHECK(report.artifact("contradiction.csv") != nullptr);

  RunConfig moving = RunConfig::defaults();
  moving.set("state", "coherent:1.0+0.0i");
  CHECK_THROWS_AS(run_contradiction_demo(moving), Error);
}

TEST_CASE("unknown command is rejected") {
  CHECK_THROWS_AS(run_command(RunConfig::defaults(), "resonate"), Error);
}

TEST_CASE("artifact writing respects the format filter") {
  RunConfig cfg = RunConfig::defaults();
  cfg.set("ensemble_n", "500");
  cfg.set("lags", "0");
  const RunReport report = run_correlate(cfg);

  const std::string dir = "report_test_out";
  std::filesystem::remove_all(dir);
  const std::vector<std::string> json_only =
      write_artifacts(report, dir, "json");
  CHECK(json_only.size() == 1);
  CHECK(json_only[0].find("correlate.json") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(dir + "/correlate.csv"));

  const std::vector<std::string> both = write_artifacts(report, dir, "both");
  CHECK(both.size() == 2);
  CHECK(std::filesystem::exists(dir + "/correlate.csv"));
  CHECK_THROWS_AS(write_artifacts(report, dir, "yaml"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("verify runner passes on the default configuration") {
  const RunConfig cfg = RunConfig::defaults();
  const RunReport report = run_verify(cfg);
  const json doc = json::parse(*report.artifact("verify.json"));

  INFO(doc.dump(2));
  CHECK(report.exit_status == 0);
  CHECK(doc["passed"] == true);
  // Echoes the fully resolved configuration.
  CHECK(doc["config"]["dt"] ==
        doctest::Approx(cfg.params.period() / 1000.0));
  // Every check carries a measured value and tolerance.
  for (const json& group : doc["checks"]) {
    for (const json& item : group["items"]) {
      CHECK(item.contains("measured"));
      CHECK(item.contains("tolerance"));
    }
  }
}

TEST_CASE("verify runner fails a coarse time step scientifically") {
  RunConfig cfg = RunConfig::defaults();
  cfg.set("dt", "T/10");
  cfg.set("ensemble_n", "500");

  const RunReport report = run_verify(cfg);
  CHECK(report.exit_status == 1);
  const json doc = json::parse(*report.artifact("verify.json"));
  CHECK(doc["passed"] == false);

  bool found_named_failure = false;
  for (const json& group : doc["checks"]) {
    for (const json& item : group["items"]) {
      if (item["passed"] == false && !item["name"].get<std::string>().empty()) {
        found_named_failure = true;
      }
    }
  }
  CHECK(found_named_failure);
}
