#include <doctest.h>

#include <unistd.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "cli_runner.hpp"

using nlohmann::json;

namespace {

const char* kEx1d = R"({"dim":1,"box":[3],"scale":"log","values":[0,2,1,6]})";

json results(const cli::Result& r) {
  REQUIRE(r.code == 0);
  return json::parse(r.out).at("results");
}

}  // namespace

TEST_CASE("minorant methods") {
  cli::Runner t("minorant");
  t.write("ex1d.json", kEx1d);
  const auto sw = results(t.run("minorant ex1d.json --method sweep --json"));
  CHECK(sw["sweep"]["contacts"] == json({0, 2, 3}));
  CHECK(sw["sweep"]["minorant"] == json({0, 0.5, 1, 6}));

  const auto lp = results(t.run("minorant ex1d.json --method lp --json"));
  CHECK(lp["lp"]["minorant"]["values"] == json({0, 0.5, 1, 6}));
  for (const char* m : {"dual-grid", "oracle"}) CHECK(t.run(std::string("minorant ex1d.json --json --method ") + m).code == 0);
  CHECK(t.run("minorant ex1d.json --method simplex").code == 1);

  t.write("conv.json", R"({"dim":1,"box":[3],"scale":"log","values":[0,0,1,3]})");
  const auto cv = results(t.run("minorant conv.json --json"));
  CHECK(cv["lp"]["minorant"]["values"] == json({0, 0, 1, 3}));
  CHECK(cv["lp"]["contact_set"].size() == 4);

  REQUIRE(t.run("gen paper-notconvex --box 2,2 --scale log -o nc.json").code == 0);
  const auto nc = results(t.run("minorant nc.json --json"));
  CHECK(nc["lp"]["minorant"]["values"][4].get<double>() == doctest::Approx(8.0));
  CHECK(nc["lp"]["max_gap"].get<double>() == doctest::Approx(7.0));

  t.write("big.json", R"({"dim":1,"box":[4],"scale":"log","values":[0,2,1,6,2]})");
  const auto st = results(t.run("minorant ex1d.json --stability big.json --json"));
  CHECK(st["stability"]["unstable"].size() == 1);
}

TEST_CASE("assoc") {
  cli::Runner t("assoc");
  REQUIRE(t.run("gen factorial --n 10 -o fact.json").code == 0);
  auto r = results(t.run("assoc fact.json --t 1 --json"));
  CHECK(r["omega"][0]["omega"].get<double>() == 0.0);
  r = results(t.run("assoc fact.json --t 2 --json"));
  CHECK(r["omega"][0]["omega"].get<double>() == doctest::Approx(std::log(2.0)));

  REQUIRE(t.run("gen random --dim 2 --box 3,3 --seed 4 -o g.json").code == 0);
  const auto a = results(t.run("assoc g.json --trace-k 0,0 --t 1,1 --json"));
  CHECK(a["trace"][0]["A"] == a["omega"][0]["omega"]);
  const auto grid = results(t.run("assoc g.json --t-grid 0.5:4:8 --json"));
  CHECK(grid["omega"].size() == 8);
}

TEST_CASE("check") {
  cli::Runner t("check");
  REQUIRE(t.run("gen factorial --n 10 -o fact.json").code == 0);
  CHECK(results(t.run("check fact.json --json"))["globally_convex"] == true);

  REQUIRE(t.run("gen paper-notconvex --box 2,2 -o nc.json").code == 0);
  const auto r = results(t.run("check nc.json --json"));
  CHECK(r["coordinatewise_ok"] == true);
  CHECK(r["globally_convex"] == false);
  CHECK(r["q3_holds"] == false);
  CHECK(r["q3_failure"] == json({1, 1}));

  // The minorant output, wrapped back into a grid, is convex.
  const auto m = results(t.run("minorant nc.json --json"));
  t.write("mc.json", m["lp"]["minorant"].dump());
  const auto c = results(t.run("check mc.json --json"));
  CHECK(c["globally_convex"] == true);
  CHECK(c["max_gap"].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("matrix subcommands") {
  cli::Runner t("matrix");
  REQUIRE(t.run("gen factorial --n 10 -o f.json").code == 0);
  t.write("w.json", R"({"kind":"roumieu","entries":[{"lambda":1,"kappa":1,"C":1}]})");
  auto r = results(t.run("matrix verify-relation f.json f.json --kind roumieu --witness w.json --json"));
  CHECK(r["report"]["holds"] == true);
  CHECK(r["report"]["max_slack"].get<double>() == 0.0);
  CHECK(t.run("matrix verify-relation f.json f.json --kind beurling --witness w.json").code == 1);

  r = results(t.run("matrix search-relation f.json f.json --kind roumieu --json"));
  CHECK(r["search"]["witness"]["entries"][0]["C"].get<double>() == 1.0);

  t.write("c.json", R"({"condition":"L37R","entries":[{"lambda":1,"kappa":1,"A":1}]})");
  r = results(t.run("matrix verify-condition f.json --cond L37R --witness c.json --json"));
  CHECK(r["report"]["holds"] == true);

  r = results(t.run("matrix counterexample --n-max 10 --json"));
  REQUIRE(r["curve"].size() == 10);
  for (int n = 1; n <= 10; ++n) CHECK(r["curve"][n - 1]["margin"].get<double>() == doctest::Approx(n * n));
}

TEST_CASE("gen") {
  cli::Runner t("gen");
  const auto nc = json::parse(t.run("gen paper-notconvex --box 4,4").out);
  CHECK(nc["scale"] == "exp");
  CHECK(nc["values"][0].get<double>() == 1.0);
  CHECK(nc["values"][6].get<double>() == doctest::Approx(std::exp(15.0)));

  const auto f = json::parse(t.run("gen factorial --n 12").out);
  CHECK(f["values"][12].get<double>() == 479001600.0);

  const auto a = t.run("gen random --dim 2 --box 4,4 --seed 7");
  CHECK(a.out == t.run("gen random --dim 2 --box 4,4 --seed 7").out);
  CHECK(a.out != t.run("gen random --dim 2 --box 4,4 --seed 8").out);
  t.write("r.json", a.out);
  CHECK(t.run("minorant r.json").code == 0);
  CHECK(t.run("gen nope").code == 1);

  const auto csv = t.run("gen paper-notconvex --box 2,2 --format csv");
  REQUIRE(csv.code == 0);
  t.write("nc.csv", csv.out);
  t.write("nc.json", t.run("gen paper-notconvex --box 2,2").out);
  const auto x = results(t.run("minorant nc.csv --json"));
  const auto y = results(t.run("minorant nc.json --json"));
  CHECK(x == y);
}

TEST_CASE("round trip through a file") {
  cli::Runner t("roundtrip");
  const auto text = t.run("gen random --dim 2 --box 3,4 --seed 3").out;
  REQUIRE(t.run("gen random --dim 2 --box 3,4 --seed 3 -o g.json").code == 0);
  CHECK(t.read("g.json") == text);
}

TEST_CASE("exit codes") {
  cli::Runner t("exit");
  t.write("bad.json", R"({"dim":1,"box":[3],"scale":"log","values":[0,2,1]})");
  t.write("inv.json", R"({"dim":1,"box":[3],"scale":"log","values":["inf",2,1,6]})");
  t.write("broken.json", "{");
  CHECK(t.run("minorant bad.json").code == 3);
  CHECK(t.run("minorant broken.json").code == 3);
  const auto v = t.run("minorant inv.json --json");
  CHECK(v.code == 2);
  const auto err = json::parse(v.out);
  CHECK(err["error"]["kind"] == "Validation");
  CHECK(err["error"]["violations"].size() == 1);
  CHECK(t.run("minorant missing.json").code != 0);
  CHECK(t.run("").code == 1);
  CHECK(t.run("frobnicate").code == 1);
}

TEST_CASE("warnings do not change the exit code") {
  cli::Runner t("warn");
  t.write("lin.json", R"({"dim":1,"box":[4],"scale":"log","values":[0,1,2,3,4]})");
  const auto r = t.run("minorant lin.json --json");
  CHECK(r.code == 0);
  CHECK_FALSE(json::parse(r.out)["warnings"].empty());
}

TEST_CASE("output directory override") {
  cli::Runner t("outdir");
  std::filesystem::create_directories(t.dir() / "out");
  const std::string env = "LCMIN_OUTPUT_DIR='" + (t.dir() / "out").string() + "' ";
  const std::string cmd = "cd '" + t.dir().string() + "' && " + env + "'" LCMIN_CLI_PATH "' gen factorial --n 3 -o f.json";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(std::filesystem::exists(t.dir() / "out" / "f.json"));
}

TEST_CASE("serial and parallel reports match") {
  cli::Runner t("parallel");
  REQUIRE(t.run("gen random --dim 2 --box 5,5 --seed 11 -o g.json").code == 0);
  for (const char* cmd : {"minorant g.json --json", "check g.json --json"}) {
    const auto a = t.run(cmd);
    const auto b = t.run(std::string(cmd) + " --parallel");
    CHECK(json::parse(a.out)["results"] == json::parse(b.out)["results"]);
  }
}
