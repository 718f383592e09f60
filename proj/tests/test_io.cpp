#include <doctest.h>

#include <cmath>

#include "lcmin/generators.hpp"
#include "lcmin/io.hpp"

using namespace lcmin;
using namespace lcmin::io;

namespace {

std::string schema_path(auto&& fn) {
  try {
    fn();
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("minimal grid") {
  const auto g = read_grid(R"({"dim":1,"box":[3],"scale":"log","values":[0,2,1,6]})");
  CHECK(g.dim() == 1);
  CHECK(g[3] == 6.0);
  const auto h = read_grid(R"({"dim":1,"box":[2],"scale":"log","values":[0,"inf",1]})");
  CHECK(h[1] == kInf);
  CHECK_THROWS_AS(read_grid(R"({"dim":1,"box":[2],"scale":"log","values":[0,1,null]})"), ValidationError);
}

TEST_CASE("schema errors carry a path") {
  CHECK(schema_path([] { read_grid(R"({"dim":1,"box":[3],"scale":"log","values":[0,2,1]})"); }) == "/values");
  CHECK(schema_path([] { read_grid(R"({"dim":1,"box":[3],"scale":"log","values":[0,2,"x",6]})"); }) == "/values/2");
  CHECK(schema_path([] { read_grid(R"({"dim":2,"box":[3],"scale":"log","values":[]})"); }) == "/box");
  CHECK(schema_path([] { read_grid(R"({"dim":1,"box":[-1],"scale":"log","values":[]})"); }) == "/box/0");
  CHECK(schema_path([] { read_grid(R"({"dim":1,"box":[1],"scale":"lin","values":[0,1]})"); }) == "/scale");
  CHECK(schema_path([] { read_grid(R"({"dim":1,"box":[1],"scale":"log","values":[0,1],"x":1})"); }) == "/x");
  CHECK(schema_path([] { read_grid(R"({"box":[1],"scale":"log","values":[0,1]})"); }) != "<none>");
  CHECK(schema_path([] { read_grid("{not json"); }) != "<none>");
  CHECK(schema_path([] { read_grid("[1,2]"); }) != "<none>");
}

TEST_CASE("validation errors list violations") {
  try {
    read_grid(R"({"dim":1,"box":[3],"scale":"log","values":["inf",2,1,6]})");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    REQUIRE(e.violations().size() == 1);
    CHECK(e.violations()[0].rule == "(iv)");
    CHECK(e.kind() == ErrorKind::Validation);
  }
}

TEST_CASE("canonical numbers") {
  CHECK(canonical_dump(number(kInf)) == "\"inf\"\n");
  CHECK(canonical_dump(number(-kInf)) == "\"-inf\"\n");
  CHECK(canonical_dump(number(std::nan(""))) == "null\n");
  CHECK(canonical_dump(number(0.1)) == "0.10000000000000001\n");
  CHECK(canonical_dump(number(2.0)) == "2\n");
}

TEST_CASE("grid round trips are byte-identical") {
  SplitMix64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = gen::random_lifted({rng.uniform_int(0, 4), rng.uniform_int(0, 4)}, rng);
    const auto text = write_grid(g);
    const auto back = read_grid(text);
    CHECK(back == g);
    CHECK(write_grid(back) == text);
    const auto csv = write_grid(g, Format::csv);
    const auto from_csv = read_grid(csv, Format::csv);
    CHECK(from_csv == g);
    CHECK(write_grid(from_csv, Format::csv) == csv);
  }
  const auto g1 = gen::factorial(6);
  CHECK(read_grid(write_grid(g1, Format::csv), Format::csv) == g1);
  const auto inf = SequenceGrid({2}, Scale::log, {0, kInf, 3});
  CHECK(read_grid(write_grid(inf)) == inf);
  CHECK(read_grid(write_grid(inf, Format::csv), Format::csv) == inf);
}

TEST_CASE("CSV fixture of the not-convex example") {
  const std::string csv =
      "exp,0,1,2\n"
      "0,1,20.085536923187668,2980.9579870417283\n"
      "1,20.085536923187668,3269017.3724721107,1586013452313430.8\n"
      "2,2980.9579870417283,1586013452313430.8,5.5406223843935098e+34\n";
  const auto g = read_grid(csv, Format::csv);
  const auto ref = gen::paper_notconvex({2, 2});
  REQUIRE(g.size() == ref.size());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == doctest::Approx(ref[i]).epsilon(1e-15));
}

TEST_CASE("CSV errors") {
  CHECK(schema_path([] { read_grid("exp,0,1\n0,1,x\n1,2,3\n", Format::csv); }).starts_with("csv:row 2:col 3"));
  CHECK(schema_path([] { read_grid("foo,0,1\n0,1,2\n", Format::csv); }).starts_with("csv:row 1"));
  CHECK(schema_path([] { read_grid("log,0,1\n0,0,1\n1,2\n", Format::csv); }).starts_with("csv:row 3"));
  CHECK(format_for("a/b.csv") == Format::csv);
  CHECK(format_for("a/b.json") == Format::json);
}

TEST_CASE("matrix files") {
  const WeightMatrix m({1.0, 2.0}, {gen::factorial(4), to_exp(gen::factorial(4, Scale::log))});
  const auto text = write_matrix(m);
  const auto back = read_matrix(text);
  CHECK(back.levels() == m.levels());
  CHECK(write_matrix(back) == text);

  const std::string g0 = R"({"dim":1,"box":[2],"scale":"log","values":[0,1,2]})";
  const std::string g1 = R"({"dim":1,"box":[2],"scale":"log","values":[0,0.5,3]})";
  const std::string g2 = R"({"dim":1,"box":[3],"scale":"log","values":[0,1,2,3]})";
  const std::string gn = R"({"dim":1,"box":[2],"scale":"log","values":[1,1,2]})";
  CHECK(schema_path([&] { read_matrix(R"({"levels":[1,2],"grids":[)" + g0 + "," + g1 + "]}"); }) == "/grids/1/values/1");
  CHECK(schema_path([&] { read_matrix(R"({"levels":[2,1],"grids":[)" + g0 + "," + g0 + "]}"); }) == "/levels/1");
  CHECK(schema_path([&] { read_matrix(R"({"levels":[1,2],"grids":[)" + g0 + "]}"); }) == "/grids");
  CHECK(schema_path([&] { read_matrix(R"({"levels":[1,2],"grids":[)" + g0 + "," + g2 + "]}"); }) == "/grids/1/box");
  CHECK(schema_path([&] { read_matrix(R"({"levels":[1],"grids":[)" + gn + "]}"); }) == "/grids/0/values/0");
  CHECK(schema_path([&] { read_matrix(R"({"levels":[1],"grids":[{"dim":1}]})"); }).starts_with("/grids/0"));
}

TEST_CASE("witness files") {
  const RelationWitness w{RelationKind::triangle, {{1, 2, 3.5, 0.25}}};
  const auto back = read_relation_witness(canonical_dump(relation_witness_to_json(w)));
  CHECK(back.kind == w.kind);
  CHECK(back.entries[0].c == 3.5);
  CHECK(back.entries[0].h == 0.25);
  const auto d = read_relation_witness(R"({"kind":"roumieu","entries":[{"lambda":1,"kappa":1}]})");
  CHECK(d.entries[0].c == 1.0);

  const ConditionWitness cw{Condition::L12B, {{2, 1, 1, 4, 0.5, 2}}};
  const auto cb = read_condition_witness(canonical_dump(condition_witness_to_json(cw)));
  CHECK(cb.condition == Condition::L12B);
  CHECK(cb.entries[0].b == 4.0);
  CHECK(cb.entries[0].c == 0.5);
  CHECK(schema_path([] { read_relation_witness(R"({"kind":"sideways","entries":[]})"); }) == "/kind");
}

TEST_CASE("reports round trip exactly") {
  RunReport r;
  r.command = {"matrix", "verify-relation", "m.json"};
  r.input_digest = digest({"abc"});
  r.results["max_slack"] = number(-0.1234567890123456789);
  r.results["inf"] = number(kInf);
  r.warnings = {"w"};
  const auto text = write_report(r);
  const auto back = read_report(text);
  CHECK(back.command == r.command);
  CHECK(back.results["max_slack"].get<double>() == -0.1234567890123456789);
  CHECK(write_report(back) == text);
  CHECK(r.input_digest.starts_with("sha256:"));
  CHECK(r.input_digest.size() == 7 + 64);
  CHECK(digest({"ab", "c"}) != digest({"a", "bc"}));
}
