/**
 * @file lcmin_cli.cpp
 * @brief `lcmin` command-line tool.
 *
 *   lcmin minorant GRID [--method lp|sweep|dual-grid|oracle] [--stability LARGER]
 *   lcmin assoc GRID [--t T]... [--t-grid LO:HI:N] [--trace-k K]...
 *   lcmin check GRID [--rel-tol R] [--s-points N]
 *   lcmin matrix verify-relation M N --kind K --witness W
 *   lcmin matrix search-relation M N --kind K [--c-max C]
 *   lcmin matrix verify-condition M --cond NAME --witness W
 *   lcmin matrix counterexample [--n-max N] [--box N1,N2 --a A...]
 *   lcmin gen NAME [--box ...] [--n N] [--dim D] [--seed S] [--scale log|exp]
 *
 * Common flags: --json (canonical report on stdout), -o FILE, --parallel,
 * --timing. A relative -o path is resolved against $LCMIN_OUTPUT_DIR when set.
 * Exit codes: 0 ok, 1 usage, 2 validation, 3 parse, 4 numeric/internal.
 */
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "lcmin/assoc.hpp"
#include "lcmin/envelope.hpp"
#include "lcmin/envelope1d.hpp"
#include "lcmin/generators.hpp"
#include "lcmin/io.hpp"
#include "lcmin/matrices.hpp"

namespace fs = std::filesystem;
using namespace lcmin;
using io::Json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  bool json = false;
  bool parallel = false;
  bool timing = false;
  std::string output;

  Exec exec() const { return parallel ? Exec::parallel : Exec::serial; }
};

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string cell = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size()) throw UsageError(std::string(flag) + ": bad number '" + cell + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<int> parse_box(const std::string& text) {
  std::vector<int> box;
  for (double v : parse_list(text, "--box")) {
    if (v < 0 || v != std::floor(v)) throw UsageError("--box: entries must be non-negative integers");
    box.push_back(static_cast<int>(v));
  }
  return box;
}

Scale parse_scale(const std::string& s) {
  if (s == "log") return Scale::log;
  if (s == "exp") return Scale::exp;
  throw UsageError("--scale must be log or exp");
}

fs::path output_path(const std::string& out) {
  fs::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("LCMIN_OUTPUT_DIR"); dir && *dir) return fs::path(dir) / p;
  }
  return p;
}

/// Grids whose scale does not suit the envelope are converted to LOG.
SequenceGrid log_grid(const SequenceGrid& g) { return g.scale() == Scale::log ? g : to_log(g); }

void grid_warnings(const SequenceGrid& g, std::vector<std::string>& warnings) {
  const SequenceGrid lg = log_grid(g);
  try {
    const auto diag = growth_check(lg);
    if (!diag.passes)
      warnings.push_back("growth heuristic not met: min outer ratio " + std::to_string(diag.min_boundary_ratio) +
                         " <= max interior ratio " + std::to_string(diag.max_interior_ratio));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EmptyShell) throw;
    warnings.push_back("growth heuristic skipped: fewer than 3 order shells");
  }
  for (auto i : outer_face_infinities(g))
    warnings.push_back("+inf entry on the outer face at " + g.layout().index(i).to_string());
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Run {
  io::RunReport report;
  std::vector<std::string> inputs;
  std::string text;  // human-readable summary
};

// ---------------------------------------------------------------- minorant

struct MinorantArgs {
  std::string input;
  std::string method = "lp";
  std::string stability;
  double k_step = 0.25;
};

Run cmd_minorant(const MinorantArgs& a, const Common& c) {
  Run run;
  run.inputs.push_back(io::read_text(a.input));
  const auto g = io::read_grid(run.inputs.back(), io::format_for(a.input));
  const auto lg = log_grid(g);
  grid_warnings(g, run.report.warnings);
  Json& res = run.report.results;
  res["method"] = a.method;
  std::string& t = run.text;

  if (a.method == "lp") {
    const auto r = minorant_lp(lg, c.exec());
    res["lp"] = io::minorant_json(lg, r);
    if (!r.boundary_affected.empty())
      run.report.warnings.push_back(std::to_string(r.boundary_affected.size()) +
                                    " value(s) rest on outer-face points and are upper bounds");
    t += "minorant (lp) on box " + g.layout().index(g.size() - 1).to_string() + "\n";
    for (std::size_t i = 0; i < lg.size(); ++i)
      t += "  " + lg.layout().index(i).to_string() + "  a=" + fmt(lg[i]) + "  a^c=" + fmt(r.minorant[i]) + "\n";
    t += "contacts: " + std::to_string(r.contact_set.size()) + " of " + std::to_string(lg.size()) + "\n";
  } else if (a.method == "sweep") {
    const auto p = sweep(lg);
    res["sweep"] = io::polygon_json(p);
    t += "newton polygon contacts:";
    for (int q : p.contacts) t += " " + std::to_string(q);
    t += "\nminorant:";
    for (double v : p.minorant) t += " " + fmt(v);
    t += "\n";
  } else if (a.method == "dual-grid") {
    const auto spec = default_k_grid(lg, a.k_step);
    const auto values = minorant_dual_grid(lg, spec, c.exec());
    Json rows = Json::array();
    for (std::size_t i = 0; i < values.size(); ++i) {
      Json row;
      row["alpha"] = io::index_json(lg.layout().index(i));
      row["value"] = io::number(values[i].value);
      row["best_k"] = Json::array();
      for (double k : values[i].best_k) row["best_k"].push_back(io::number(k));
      rows.push_back(std::move(row));
      t += "  " + lg.layout().index(i).to_string() + "  " + fmt(values[i].value) + "\n";
    }
    Json sj;
    sj["lo"] = spec.lo;
    sj["hi"] = spec.hi;
    sj["step"] = spec.step;
    res["k_grid"] = std::move(sj);
    res["dual_grid"] = std::move(rows);
  } else if (a.method == "oracle") {
    const auto values = minorant_brute_force(lg, c.exec());
    res["oracle"] = io::grid_to_json(SequenceGrid(std::vector<int>(lg.box().begin(), lg.box().end()), Scale::log, values));
    for (std::size_t i = 0; i < values.size(); ++i)
      t += "  " + lg.layout().index(i).to_string() + "  " + fmt(values[i]) + "\n";
  } else {
    throw UsageError("--method must be lp, sweep, dual-grid or oracle");
  }

  if (!a.stability.empty()) {
    run.inputs.push_back(io::read_text(a.stability));
    const auto large = log_grid(io::read_grid(run.inputs.back(), io::format_for(a.stability)));
    const auto s = stability_probe(lg, large, c.exec());
    res["stability"] = io::stability_json(lg, s);
    t += "stability: max diff " + fmt(s.max_diff) + ", unstable " + std::to_string(s.unstable.size()) + "\n";
  }
  return run;
}

// ------------------------------------------------------------------- assoc

struct AssocArgs {
  std::string input;
  std::vector<std::string> t;
  std::string t_grid;
  std::vector<std::string> trace_k;
};

Run cmd_assoc(const AssocArgs& a, const Common&) {
  Run run;
  run.inputs.push_back(io::read_text(a.input));
  const auto g = io::read_grid(run.inputs.back(), io::format_for(a.input));
  grid_warnings(g, run.report.warnings);
  const auto d = static_cast<std::size_t>(g.dim());

  std::vector<std::vector<double>> ts;
  for (const auto& s : a.t) ts.push_back(parse_list(s, "--t"));
  if (!a.t_grid.empty()) {
    std::string spec = a.t_grid;
    std::replace(spec.begin(), spec.end(), ':', ',');
    const auto parts = parse_list(spec, "--t-grid");
    if (parts.size() != 3 || parts[2] < 1 || parts[2] != std::floor(parts[2]))
      throw UsageError("--t-grid expects LO:HI:N");
    const int n = static_cast<int>(parts[2]);
    for (int i = 0; i < n; ++i) {
      const double s = n == 1 ? parts[0] : parts[0] + (parts[1] - parts[0]) * i / (n - 1);
      ts.emplace_back(d, s);
    }
  }
  if (ts.empty() && a.trace_k.empty()) throw UsageError("give --t, --t-grid or --trace-k");

  Json rows = Json::array();
  bool any_boundary = false;
  for (const auto& t : ts) {
    if (t.size() != d) throw UsageError("--t needs " + std::to_string(d) + " coordinates");
    const auto w = omega(g, t);
    any_boundary = any_boundary || w.sup_on_boundary;
    rows.push_back(io::omega_json(g, t, w));
    run.text += "omega(";
    for (std::size_t j = 0; j < d; ++j) run.text += (j ? "," : "") + fmt(t[j]);
    run.text += ") = " + fmt(w.value) + (w.sup_on_boundary ? "  [sup on boundary]" : "") + "\n";
  }
  run.report.results["omega"] = std::move(rows);

  Json trace = Json::array();
  for (const auto& s : a.trace_k) {
    const auto k = parse_list(s, "--trace-k");
    if (k.size() != d) throw UsageError("--trace-k needs " + std::to_string(d) + " coordinates");
    Json row;
    row["k"] = k;
    row["A"] = io::number(trace_function(g, k));
    run.text += "A(" + s + ") = " + fmt(row["A"].is_number() ? row["A"].get<double>() : kInf) + "\n";
    trace.push_back(std::move(row));
  }
  run.report.results["trace"] = std::move(trace);
  if (any_boundary) run.report.warnings.push_back("some suprema sit on the outer face; omega is a lower bound there");
  return run;
}

// ------------------------------------------------------------------- check

struct CheckArgs {
  std::string input;
  double rel_tol = 0.02;
  int s_points = 0;
};

Run cmd_check(const CheckArgs& a, const Common& c) {
  Run run;
  run.inputs.push_back(io::read_text(a.input));
  const auto g = io::read_grid(run.inputs.back(), io::format_for(a.input));
  grid_warnings(g, run.report.warnings);
  Q3Options opts;
  opts.rel_tol = a.rel_tol;
  if (a.s_points > 0) {
    auto spec = default_s_grid(g);
    for (auto& p : spec.points) p = static_cast<std::size_t>(a.s_points);
    opts.s_grid = spec;
  }
  const auto r = check_log_convexity(g, opts, c.exec());
  run.report.results = io::convexity_json(g, r);
  if (r.boundary_caveat) run.report.warnings.push_back("non-convexity evidence touches the outer face");
  auto yes = [](bool b) { return b ? std::string("yes") : std::string("no"); };
  run.text += "coordinate-wise log-convex: " + yes(r.coordinatewise_ok) + "\n";
  run.text += "log-convex:                 " + yes(r.globally_convex) + "  (max gap " + fmt(r.max_gap) +
              (r.max_gap_at ? " at " + r.max_gap_at->to_string() : "") + ")\n";
  run.text += "q3 reaches M on interior:   " + yes(r.q3_holds) +
              (r.q3_failure ? "  (fails at " + r.q3_failure->to_string() + ")" : "") + "\n";
  return run;
}

// ------------------------------------------------------------------ matrix

WeightMatrix load_matrix(const std::string& path, std::string& text) {
  text = io::read_text(path);
  if (io::format_for(path) == io::Format::csv) return single_level(io::read_grid(text, io::Format::csv));
  const auto j = Json::parse(text, nullptr, false);
  if (!j.is_discarded() && j.is_object() && j.contains("levels")) return io::read_matrix(text);
  return single_level(io::read_grid(text));
}

struct MatrixArgs {
  std::string m, n;
  std::string kind = "roumieu";
  bool kind_given = false;
  std::string witness;
  std::string cond;
  double c_max = 1e6;
  int n_max = 10;
  std::string box;
  std::string a_values;
};

Run cmd_matrix(const std::string& sub, const MatrixArgs& a, const Common& c) {
  Run run;
  Json& res = run.report.results;
  res["subcommand"] = sub;
  if (sub == "verify-relation" || sub == "search-relation") {
    std::string tm, tn;
    const auto m = load_matrix(a.m, tm);
    const auto n = load_matrix(a.n, tn);
    run.inputs = {tm, tn};
    if (sub == "verify-relation") {
      if (a.witness.empty()) throw UsageError("--witness is required");
      run.inputs.push_back(io::read_text(a.witness));
      const auto w = io::read_relation_witness(run.inputs.back());
      if (a.kind_given && relation_from_string(a.kind) != w.kind) throw UsageError("--kind disagrees with the witness file");
      const auto r = verify_relation(m, n, w, c.exec());
      res["kind"] = std::string(to_string(w.kind));
      res["report"] = io::verify_json(r);
      run.text += std::string(to_string(w.kind)) + " relation: " + (r.holds ? "holds" : "fails") +
                  ", worst slack " + fmt(r.max_slack) + "\n";
    } else {
      SearchSpace space;
      space.c_max = a.c_max;
      const auto r = search_relation(m, n, relation_from_string(a.kind), space, c.exec());
      res["kind"] = a.kind;
      res["search"] = io::search_json(r);
      run.text += a.kind + " witness: " + (r.witness ? "found" : "NOT_FOUND (at this truncation)") + "\n";
      for (const auto& cand : r.candidates)
        run.text += "  lambda=" + fmt(cand.lambda) + " kappa=" + fmt(cand.kappa) + " min C=" +
                    fmt(std::exp(cand.min_log_c)) + (cand.feasible ? "" : "  (exceeds c-max)") + "\n";
    }
    return run;
  }
  if (sub == "verify-condition") {
    std::string tm;
    const auto m = load_matrix(a.m, tm);
    if (a.witness.empty()) throw UsageError("--witness is required");
    run.inputs = {tm, io::read_text(a.witness)};
    auto w = io::read_condition_witness(run.inputs.back());
    if (!a.cond.empty()) {
      const auto cond = condition_from_string(a.cond);
      if (cond != w.condition) throw UsageError("--cond disagrees with the witness file");
    }
    const auto r = verify_condition(m, w, c.exec());
    res["condition"] = std::string(to_string(w.condition));
    res["report"] = io::verify_json(r);
    run.text += std::string(to_string(w.condition)) + ": " + (r.holds ? "holds" : "fails") + ", worst slack " +
                fmt(r.max_slack) + "\n";
    for (const auto& e : r.entries)
      if (e.result.first_violation)
        run.text += "  entry " + std::to_string(e.entry) + " first violation at alpha=" +
                    e.result.first_violation->to_string() +
                    (e.result.first_violation_beta ? " beta=" + e.result.first_violation_beta->to_string() : "") + "\n";
    return run;
  }
  if (sub == "counterexample") {
    const auto curve = l37r_counterexample_curve(a.n_max);
    Json rows = Json::array();
    for (const auto& [n, margin] : curve) {
      Json row;
      row["n"] = n;
      row["margin"] = io::number(margin);
      rows.push_back(std::move(row));
      run.text += "  n=" + std::to_string(n) + "  margin=" + fmt(margin) + "\n";
    }
    res["curve"] = std::move(rows);
    if (!a.a_values.empty()) {
      const auto box = a.box.empty() ? std::vector<int>{12, 12} : parse_box(a.box);
      const auto m = single_level(counterexample_grid(box));
      Json checks = Json::array();
      for (double av : parse_list(a.a_values, "--a")) {
        ConditionWitness w{Condition::L37R, {{1.0, 1.0, av, 1.0, 1.0, 1.0}}};
        const auto r = verify_condition(m, w, c.exec());
        Json row;
        row["A"] = io::number(av);
        row["report"] = io::verify_json(r);
        checks.push_back(std::move(row));
        run.text += "  L37R with A=" + fmt(av) + " on " + MultiIndex(box).to_string() + ": " +
                    (r.holds ? "holds" : "violated") + "\n";
      }
      res["l37r_checks"] = std::move(checks);
    }
    return run;
  }
  throw UsageError("unknown matrix subcommand");
}

// --------------------------------------------------------------------- gen

struct GenArgs {
  std::string name;
  std::string box;
  int n = 12;
  int dim = 1;
  std::uint64_t seed = 1;
  std::string scale;
  std::string format = "json";
};

Run cmd_gen(const GenArgs& a, const Common&, SequenceGrid& out) {
  Run run;
  auto box_or = [&](std::vector<int> fallback) { return a.box.empty() ? fallback : parse_box(a.box); };
  if (a.name == "paper-notconvex") {
    out = gen::paper_notconvex(box_or({2, 2}), a.scale.empty() ? Scale::exp : parse_scale(a.scale));
  } else if (a.name == "factorial") {
    out = gen::factorial(a.n, a.scale.empty() ? Scale::exp : parse_scale(a.scale));
  } else if (a.name == "l37r-counterexample") {
    out = gen::l37r_counterexample(box_or({12, 12}), a.scale.empty() ? Scale::log : parse_scale(a.scale));
  } else if (a.name == "random") {
    auto box = box_or(std::vector<int>(static_cast<std::size_t>(a.dim), 4));
    if (static_cast<int>(box.size()) != a.dim) throw UsageError("--box needs --dim entries");
    SplitMix64 rng(a.seed);
    out = gen::random_lifted(box, rng, a.scale.empty() ? Scale::log : parse_scale(a.scale));
  } else {
    throw UsageError("unknown generator '" + a.name + "'");
  }
  run.report.results["generator"] = a.name;
  run.report.results["grid"] = io::grid_to_json(out);
  return run;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Schema: return 3;
    case ErrorKind::NumericBreakdown: return 4;
    default: return 2;
  }
}

void print_error(const Common& c, const std::string& kind, const std::string& message,
                 const std::vector<Violation>& violations = {}) {
  if (c.json) {
    Json j;
    j["error"]["kind"] = kind;
    j["error"]["message"] = message;
    j["error"]["violations"] = Json::array();
    for (const auto& v : violations) {
      Json x;
      x["alpha"] = io::index_json(v.index);
      x["rule"] = v.rule;
      x["message"] = v.message;
      j["error"]["violations"].push_back(std::move(x));
    }
    std::cout << io::canonical_dump(j);
  }
  std::cerr << "error: " << message << "\n";
  for (const auto& v : violations) std::cerr << "  " << v.index.to_string() << " " << v.rule << ": " << v.message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex minorants, associated functions and weight-matrix checks"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", common.json, "print the canonical JSON report");
    sub->add_flag("--parallel", common.parallel, "run per-index kernels with OpenMP");
    sub->add_flag("--timing", common.timing, "include wall-clock duration in the report");
    sub->add_option("-o,--output", common.output, "write the report (or generated grid) to a file");
  };

  MinorantArgs ma;
  auto* minorant = app.add_subcommand("minorant", "convex minorant of a LOG-scale grid");
  minorant->add_option("input", ma.input, "grid file (.json or .csv)")->required();
  minorant->add_option("--method", ma.method, "lp | sweep | dual-grid | oracle");
  minorant->add_option("--stability", ma.stability, "grid on a larger box for the stability probe");
  minorant->add_option("--k-step", ma.k_step, "slope step for --method dual-grid");
  add_common(minorant);

  AssocArgs aa;
  auto* assoc = app.add_subcommand("assoc", "associated function and trace function");
  assoc->add_option("input", aa.input, "normalized grid file")->required();
  assoc->add_option("--t", aa.t, "evaluation point t1,...,td (repeatable)");
  assoc->add_option("--t-grid", aa.t_grid, "LO:HI:N points on the diagonal t = (s,...,s)");
  assoc->add_option("--trace-k", aa.trace_k, "trace function at k1,...,kd (repeatable)");
  add_common(assoc);

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "coordinate-wise and global log-convexity, q3 test");
  check->add_option("input", ca.input, "normalized grid file")->required();
  check->add_option("--rel-tol", ca.rel_tol, "relative sampling tolerance for the q3 test");
  check->add_option("--s-points", ca.s_points, "s-grid points per axis");
  add_common(check);

  MatrixArgs xa;
  auto* matrix = app.add_subcommand("matrix", "weight-matrix relations and conditions");
  matrix->require_subcommand(1);
  auto* vr = matrix->add_subcommand("verify-relation", "check a relation witness");
  vr->add_option("M", xa.m)->required();
  vr->add_option("N", xa.n)->required();
  auto* vr_kind = vr->add_option("--kind", xa.kind, "roumieu | beurling | triangle (must match the witness)");
  vr->add_option("--witness", xa.witness)->required();
  add_common(vr);
  auto* sr = matrix->add_subcommand("search-relation", "smallest-C witness search");
  sr->add_option("M", xa.m)->required();
  sr->add_option("N", xa.n)->required();
  sr->add_option("--kind", xa.kind, "roumieu | beurling | triangle");
  sr->add_option("--c-max", xa.c_max, "largest admissible C");
  add_common(sr);
  auto* vc = matrix->add_subcommand("verify-condition", "check a condition witness");
  vc->add_option("M", xa.m)->required();
  vc->add_option("--cond", xa.cond, "L12R | L21R | L37R | L12B | L21B | 63B");
  vc->add_option("--witness", xa.witness)->required();
  add_common(vc);
  auto* ce = matrix->add_subcommand("counterexample", "L37R margins of alpha^{alpha/2} e^{max(a1^2,a2^2)}");
  ce->add_option("--n-max", xa.n_max, "largest n (<= 30)");
  ce->add_option("--box", xa.box, "box for --a checks (default 12,12)");
  ce->add_option("--a", xa.a_values, "comma-separated A values to test L37R with");
  add_common(ce);

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "example sequences");
  gen->add_option("name", ga.name, "paper-notconvex | factorial | l37r-counterexample | random")->required();
  gen->add_option("--box", ga.box, "N1,...,Nd");
  gen->add_option("--n", ga.n, "largest index for factorial");
  gen->add_option("--dim", ga.dim, "dimension for random");
  gen->add_option("--seed", ga.seed, "seed for random");
  gen->add_option("--scale", ga.scale, "log | exp");
  gen->add_option("--format", ga.format, "json | csv");
  add_common(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  xa.kind_given = vr_kind->count() > 0;
  std::vector<std::string> echo(argv + 1, argv + argc);
  const auto start = std::chrono::steady_clock::now();
  try {
    Run run;
    std::optional<SequenceGrid> generated;
    if (minorant->parsed()) run = cmd_minorant(ma, common);
    else if (assoc->parsed()) run = cmd_assoc(aa, common);
    else if (check->parsed()) run = cmd_check(ca, common);
    else if (gen->parsed()) {
      SequenceGrid g;
      run = cmd_gen(ga, common, g);
      generated = std::move(g);
    } else {
      for (auto* sub : {vr, sr, vc, ce})
        if (sub->parsed()) run = cmd_matrix(sub->get_name(), xa, common);
    }
    run.report.command = echo;
    run.report.input_digest = io::digest(run.inputs);
    if (common.timing)
      run.report.duration_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (generated) {
      if (ga.format != "json" && ga.format != "csv") throw UsageError("--format must be json or csv");
      const auto fmt_out = ga.format == "csv" ? io::Format::csv : io::Format::json;
      const std::string text = io::write_grid(*generated, fmt_out);
      if (!common.output.empty()) io::write_text(output_path(common.output), text);
      if (common.json) std::cout << io::write_report(run.report);
      else if (common.output.empty()) std::cout << text;
      return 0;
    }
    const std::string report = io::write_report(run.report);
    if (!common.output.empty()) io::write_text(output_path(common.output), report);
    if (common.json) {
      std::cout << report;
    } else {
      std::cout << run.text;
      for (const auto& w : run.report.warnings) std::cout << "warning: " << w << "\n";
    }
    return 0;
  } catch (const UsageError& e) {
    print_error(common, "Usage", e.what());
    return 1;
  } catch (const io::ValidationError& e) {
    print_error(common, "Validation", e.what(), e.violations());
    return 2;
  } catch (const Error& e) {
    print_error(common, std::string(to_string(e.kind())), e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    print_error(common, "Internal", e.what());
    return 4;
  }
}
