#include "lcmin/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lcmin::io {

SchemaError::SchemaError(std::string path, std::string expected, std::string found)
    : Error(ErrorKind::Schema, "at " + path + ": expected " + expected + ", found " + found),
      path_(std::move(path)),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

std::string summarize(const std::vector<Violation>& v) {
  std::string s = std::to_string(v.size()) + " violation(s)";
  if (!v.empty()) s += ", first: " + v.front().message;
  return s;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string describe(const Json& j) {
  if (j.is_string() || j.is_number() || j.is_boolean() || j.is_null()) return j.dump();
  return j.type_name();
}

std::string child(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string child(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }
std::string root(const std::string& where) { return where.empty() ? "/" : where; }

const Json& require(const Json& obj, const std::string& where, const char* key, const std::string& expected) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(child(where, key), expected, "missing");
  return *it;
}

void only_keys(const Json& obj, const std::string& where, std::initializer_list<std::string_view> keys) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (auto k : keys) known = known || it.key() == k;
    if (!known) throw SchemaError(child(where, it.key()), "no additional properties", "key \"" + it.key() + "\"");
  }
}

const Json& require_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw SchemaError(root(where), "object", describe(j));
  return j;
}

long long get_int(const Json& j, const std::string& path, long long min, const std::string& expected) {
  if (!j.is_number_integer()) throw SchemaError(path, expected, describe(j));
  const auto v = j.get<long long>();
  if (v < min) throw SchemaError(path, expected, describe(j));
  return v;
}

double get_positive(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "positive number", describe(j));
  const double v = j.get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) throw SchemaError(path, "positive number", describe(j));
  return v;
}

double get_extended(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_null()) return std::nan("");
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw SchemaError(path, "number, \"inf\" or null", describe(j));
}

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("/", "valid JSON", "parse error at byte " + std::to_string(e.byte));
  }
}

void dump(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isnan(v)) out += "null";
      else if (std::isinf(v)) out += v > 0 ? "\"inf\"" : "\"-inf\"";
      else out += format_double(v);
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump(j[i], out, indent);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad;
        dump(j[i], out, indent + 2);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += close + "]";
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad + Json(it.key()).dump() + ": ";
        dump(it.value(), out, indent + 2);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += close + "}";
      return;
    }
    default:
      out += j.dump();
  }
}

// ------------------------------------------------------------------- CSV

std::vector<std::string> split_cells(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    auto cell = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
    cells.emplace_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string csv_pos(std::size_t row, std::size_t col) {
  return "csv:row " + std::to_string(row) + ":col " + std::to_string(col);
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  if (cell.empty()) return std::nan("");
  if (cell == "inf" || cell == "+inf") return kInf;
  if (cell == "-inf") return -kInf;
  double v = 0.0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end) throw SchemaError(csv_pos(row, col), "number, \"inf\" or empty", "\"" + cell + "\"");
  return v;
}

int parse_label(const std::string& cell, std::size_t row, std::size_t col, int expected) {
  int v = -1;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end || v != expected)
    throw SchemaError(csv_pos(row, col), "index " + std::to_string(expected), "\"" + cell + "\"");
  return v;
}

Scale parse_scale(const std::string& s, const std::string& path) {
  if (s == "log") return Scale::log;
  if (s == "exp") return Scale::exp;
  throw SchemaError(path, "\"log\" or \"exp\"", "\"" + s + "\"");
}

SequenceGrid read_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    auto line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    rows.push_back(split_cells(line));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  while (!rows.empty() && rows.back().size() == 1 && rows.back()[0].empty()) rows.pop_back();
  if (rows.empty()) throw SchemaError(csv_pos(1, 1), "header row", "empty file");
  if (rows.size() < 2) throw SchemaError(csv_pos(2, 1), "at least one data row", "end of file");

  const auto& header = rows[0];
  const Scale scale = parse_scale(header[0], csv_pos(1, 1));
  const bool one_d = header.size() == 2 && header[1] == "value";
  if (!one_d) {
    if (header.size() < 2) throw SchemaError(csv_pos(1, 2), "alpha_2 labels or \"value\"", "end of row");
    for (std::size_t c = 1; c < header.size(); ++c) parse_label(header[c], 1, c + 1, static_cast<int>(c - 1));
  }

  const std::size_t cols = header.size() - 1;
  std::vector<double> values;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    parse_label(row[0], r + 1, 1, static_cast<int>(r - 1));
    if (row.size() != header.size())
      throw SchemaError(csv_pos(r + 1, row.size() < header.size() ? row.size() + 1 : header.size() + 1),
                        std::to_string(header.size()) + " cells", std::to_string(row.size()) + " cells");
    for (std::size_t c = 1; c < row.size(); ++c) values.push_back(parse_cell(row[c], r + 1, c + 1));
  }
  std::vector<int> box{static_cast<int>(rows.size() - 2)};
  if (!one_d) box.push_back(static_cast<int>(cols - 1));
  SequenceGrid g(std::move(box), scale, std::move(values));
  auto violations = validate_grid(g);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return g;
}

std::string csv_cell(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

std::string write_csv(const SequenceGrid& g) {
  if (g.dim() > 2) throw Error(ErrorKind::InvalidArgument, "CSV grids need d <= 2");
  std::string out(to_string(g.scale()));
  if (g.dim() == 1) {
    out += ",value\n";
    for (std::size_t p = 0; p < g.size(); ++p) out += std::to_string(p) + "," + csv_cell(g[p]) + "\n";
    return out;
  }
  const int n1 = g.box()[0], n2 = g.box()[1];
  for (int b = 0; b <= n2; ++b) out += "," + std::to_string(b);
  out += "\n";
  for (int a = 0; a <= n1; ++a) {
    out += std::to_string(a);
    for (int b = 0; b <= n2; ++b) out += "," + csv_cell(g.at(MultiIndex{a, b}));
    out += "\n";
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(ErrorKind::Validation, summarize(violations)), violations_(std::move(violations)) {}

Format format_for(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? Format::csv : Format::json;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << text;
}

Json number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string canonical_dump(const Json& j) {
  std::string out;
  dump(j, out, 0);
  out += '\n';
  return out;
}

// ------------------------------------------------------------------ grids

Json grid_to_json(const SequenceGrid& g) {
  Json j;
  j["dim"] = g.dim();
  j["box"] = Json::array();
  for (int n : g.box()) j["box"].push_back(n);
  j["scale"] = std::string(to_string(g.scale()));
  j["values"] = Json::array();
  for (double v : g.values()) j["values"].push_back(number(v));
  return j;
}

SequenceGrid grid_from_json(const Json& j, const std::string& where) {
  require_object(j, where);
  only_keys(j, where, {"dim", "box", "scale", "values"});
  const auto dim = get_int(require(j, where, "dim", "integer >= 1"), child(where, "dim"), 1, "integer >= 1");

  const auto& box_j = require(j, where, "box", "array of " + std::to_string(dim) + " integers");
  if (!box_j.is_array() || box_j.size() != static_cast<std::size_t>(dim))
    throw SchemaError(child(where, "box"), "array of " + std::to_string(dim) + " integers", describe(box_j));
  std::vector<int> box;
  double volume = 1.0;
  for (std::size_t i = 0; i < box_j.size(); ++i) {
    const auto n = get_int(box_j[i], child(child(where, "box"), i), 0, "integer >= 0");
    volume *= static_cast<double>(n + 1);
    if (volume > 1e8) throw SchemaError(child(child(where, "box"), i), "box volume <= 1e8", std::to_string(n));
    box.push_back(static_cast<int>(n));
  }

  const auto& scale_j = require(j, where, "scale", "\"log\" or \"exp\"");
  if (!scale_j.is_string()) throw SchemaError(child(where, "scale"), "\"log\" or \"exp\"", describe(scale_j));
  const Scale scale = parse_scale(scale_j.get<std::string>(), child(where, "scale"));

  const auto expected_len = static_cast<std::size_t>(volume);
  const std::string values_path = child(where, "values");
  const auto& values_j = require(j, where, "values", "array of length " + std::to_string(expected_len));
  if (!values_j.is_array()) throw SchemaError(values_path, "array", describe(values_j));
  if (values_j.size() != expected_len)
    throw SchemaError(values_path, "array of length " + std::to_string(expected_len),
                      "length " + std::to_string(values_j.size()));
  std::vector<double> values(expected_len);
  for (std::size_t i = 0; i < expected_len; ++i) values[i] = get_extended(values_j[i], child(values_path, i));

  SequenceGrid g(std::move(box), scale, std::move(values));
  auto violations = validate_grid(g);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return g;
}

SequenceGrid read_grid(std::string_view text, Format format) {
  if (format == Format::csv) return read_csv(text);
  return grid_from_json(parse(text));
}

std::string write_grid(const SequenceGrid& g, Format format) {
  if (format == Format::csv) return write_csv(g);
  return canonical_dump(grid_to_json(g));
}

SequenceGrid read_grid_file(const std::filesystem::path& path) { return read_grid(read_text(path), format_for(path)); }

// --------------------------------------------------------------- matrices

Json matrix_to_json(const WeightMatrix& m) {
  Json j;
  j["levels"] = Json::array();
  for (double l : m.levels()) j["levels"].push_back(number(l));
  j["grids"] = Json::array();
  for (const auto& g : m.grids()) j["grids"].push_back(grid_to_json(g));
  return j;
}

WeightMatrix read_matrix(std::string_view text) {
  const Json j = parse(text);
  require_object(j, "");
  only_keys(j, "", {"levels", "grids"});
  const auto& levels_j = require(j, "", "levels", "non-empty array of increasing positive numbers");
  if (!levels_j.is_array() || levels_j.empty())
    throw SchemaError("/levels", "non-empty array of increasing positive numbers", describe(levels_j));
  std::vector<double> levels;
  for (std::size_t i = 0; i < levels_j.size(); ++i) {
    const double l = get_positive(levels_j[i], child("/levels", i));
    if (!levels.empty() && !(l > levels.back()))
      throw SchemaError(child("/levels", i), "level > " + format_double(levels.back()) + " (increasing ladder)",
                        format_double(l));
    levels.push_back(l);
  }

  const auto& grids_j = require(j, "", "grids", "array of " + std::to_string(levels.size()) + " grids");
  if (!grids_j.is_array() || grids_j.size() != levels.size())
    throw SchemaError("/grids", "array of " + std::to_string(levels.size()) + " grids (one per level)",
                      grids_j.is_array() ? "length " + std::to_string(grids_j.size()) : describe(grids_j));
  std::vector<SequenceGrid> grids;
  for (std::size_t i = 0; i < grids_j.size(); ++i) {
    const std::string where = child("/grids", i);
    auto g = grid_from_json(grids_j[i], where);
    if (!grids.empty() && !(g.layout() == grids.front().layout()))
      throw SchemaError(child(where, "box"), "the box of level 0", describe(grids_j[i]["box"]));
    if (!g.is_normalized()) throw SchemaError(child(child(where, "values"), 0), "M_0 = 1 (normalized)", describe(grids_j[i]["values"][0]));
    if (!grids.empty()) {
      const auto& prev = grids.back();
      for (std::size_t k = 0; k < g.size(); ++k) {
        const double lo = prev.log_value(k), hi = g.log_value(k);
        if (lo > hi + 1e-12 * std::max(1.0, std::abs(hi)))
          throw SchemaError(child(child(where, "values"), k),
                            "value >= level " + std::to_string(i - 1) + " at " + g.layout().index(k).to_string() +
                                " (monotone ladder)",
                            describe(grids_j[i]["values"][k]));
      }
    }
    grids.push_back(std::move(g));
  }
  return WeightMatrix(std::move(levels), std::move(grids));
}

std::string write_matrix(const WeightMatrix& m) { return canonical_dump(matrix_to_json(m)); }

Json relation_witness_to_json(const RelationWitness& w) {
  Json j;
  j["kind"] = std::string(to_string(w.kind));
  j["entries"] = Json::array();
  for (const auto& e : w.entries) {
    Json x;
    x["lambda"] = number(e.lambda);
    x["kappa"] = number(e.kappa);
    x["C"] = number(e.c);
    x["h"] = number(e.h);
    j["entries"].push_back(std::move(x));
  }
  return j;
}

namespace {

double optional_positive(const Json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) return 1.0;
  return get_positive(*it, child(where, key));
}

const Json& require_entries(const Json& j) {
  const auto& entries = require(j, "", "entries", "array of witness entries");
  if (!entries.is_array()) throw SchemaError("/entries", "array of witness entries", describe(entries));
  return entries;
}

}  // namespace

RelationWitness read_relation_witness(std::string_view text) {
  const Json j = parse(text);
  require_object(j, "");
  only_keys(j, "", {"kind", "entries"});
  RelationWitness w;
  const auto& kind = require(j, "", "kind", "\"roumieu\", \"beurling\" or \"triangle\"");
  try {
    w.kind = relation_from_string(kind.is_string() ? kind.get<std::string>() : "");
  } catch (const Error&) {
    throw SchemaError("/kind", "\"roumieu\", \"beurling\" or \"triangle\"", describe(kind));
  }
  const auto& entries = require_entries(j);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string where = child("/entries", i);
    require_object(entries[i], where);
    only_keys(entries[i], where, {"lambda", "kappa", "C", "h"});
    RelationEntry e;
    e.lambda = get_positive(require(entries[i], where, "lambda", "positive number"), child(where, "lambda"));
    e.kappa = get_positive(require(entries[i], where, "kappa", "positive number"), child(where, "kappa"));
    e.c = optional_positive(entries[i], where, "C");
    e.h = optional_positive(entries[i], where, "h");
    w.entries.push_back(e);
  }
  return w;
}

Json condition_witness_to_json(const ConditionWitness& w) {
  Json j;
  j["condition"] = std::string(to_string(w.condition));
  j["entries"] = Json::array();
  for (const auto& e : w.entries) {
    Json x;
    x["lambda"] = number(e.lambda);
    x["kappa"] = number(e.kappa);
    x["A"] = number(e.a);
    x["B"] = number(e.b);
    x["C"] = number(e.c);
    x["H"] = number(e.h);
    j["entries"].push_back(std::move(x));
  }
  return j;
}

ConditionWitness read_condition_witness(std::string_view text) {
  const Json j = parse(text);
  require_object(j, "");
  only_keys(j, "", {"condition", "entries"});
  ConditionWitness w;
  const auto& cond = require(j, "", "condition", "condition name");
  try {
    w.condition = condition_from_string(cond.is_string() ? cond.get<std::string>() : "");
  } catch (const Error&) {
    throw SchemaError("/condition", "one of L12R, L21R, L37R, L12B, L21B, 63B", describe(cond));
  }
  const auto& entries = require_entries(j);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string where = child("/entries", i);
    require_object(entries[i], where);
    only_keys(entries[i], where, {"lambda", "kappa", "A", "B", "C", "H"});
    ConditionEntry e;
    e.lambda = get_positive(require(entries[i], where, "lambda", "positive number"), child(where, "lambda"));
    e.kappa = get_positive(require(entries[i], where, "kappa", "positive number"), child(where, "kappa"));
    e.a = optional_positive(entries[i], where, "A");
    e.b = optional_positive(entries[i], where, "B");
    e.c = optional_positive(entries[i], where, "C");
    e.h = optional_positive(entries[i], where, "H");
    w.entries.push_back(e);
  }
  return w;
}

// ---------------------------------------------------------------- reports

Json report_to_json(const RunReport& r) {
  Json j;
  j["command"] = r.command;
  j["input_digest"] = r.input_digest;
  j["results"] = r.results;
  j["warnings"] = r.warnings;
  if (r.duration_s) j["duration_s"] = *r.duration_s;
  return j;
}

std::string write_report(const RunReport& r) { return canonical_dump(report_to_json(r)); }

RunReport read_report(std::string_view text) {
  const Json j = parse(text);
  require_object(j, "");
  only_keys(j, "", {"command", "input_digest", "results", "warnings", "duration_s"});
  RunReport r;
  try {
    r.command = require(j, "", "command", "array of strings").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError("/command", "array of strings", describe(j["command"]));
  }
  const auto& digest_j = require(j, "", "input_digest", "string");
  if (!digest_j.is_string()) throw SchemaError("/input_digest", "string", describe(digest_j));
  r.input_digest = digest_j.get<std::string>();
  r.results = require(j, "", "results", "object");
  try {
    r.warnings = require(j, "", "warnings", "array of strings").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError("/warnings", "array of strings", describe(j["warnings"]));
  }
  if (auto it = j.find("duration_s"); it != j.end()) {
    if (!it->is_number()) throw SchemaError("/duration_s", "number", describe(*it));
    r.duration_s = it->get<double>();
  }
  return r;
}

std::string digest(const std::vector<std::string>& inputs) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw Error(ErrorKind::NumericBreakdown, "cannot allocate a digest context");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  for (const auto& s : inputs) {
    const std::string prefix = std::to_string(s.size()) + ":";
    EVP_DigestUpdate(ctx, prefix.data(), prefix.size());
    EVP_DigestUpdate(ctx, s.data(), s.size());
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xF];
  }
  return out;
}

// ------------------------------------------------------- result payloads

Json index_json(const MultiIndex& alpha) {
  Json j = Json::array();
  for (int a : alpha.entries()) j.push_back(a);
  return j;
}

Json index_list_json(const BoxLayout& layout, const std::vector<std::size_t>& flat) {
  Json j = Json::array();
  for (auto i : flat) j.push_back(index_json(layout.index(i)));
  return j;
}

namespace {

Json doubles(std::span<const double> v) {
  Json j = Json::array();
  for (double x : v) j.push_back(number(x));
  return j;
}

Json optional_index(const std::optional<MultiIndex>& a) { return a ? index_json(*a) : Json(nullptr); }

}  // namespace

Json minorant_json(const SequenceGrid& input, const MinorantResult& r) {
  const auto& layout = input.layout();
  Json j;
  j["minorant"] = grid_to_json(r.minorant);
  j["contact_set"] = index_list_json(layout, r.contact_set);
  j["boundary_affected"] = index_list_json(layout, r.boundary_affected);
  double max_gap = 0.0;
  std::optional<MultiIndex> at;
  for (std::size_t i = 0; i < input.size(); ++i) {
    const double a = input.log_value(i), c = r.minorant[i];
    const double gap = a == c ? 0.0 : a - c;
    if (gap > max_gap) {
      max_gap = gap;
      at = layout.index(i);
    }
  }
  j["max_gap"] = number(max_gap);
  j["max_gap_at"] = optional_index(at);
  Json certs = Json::array();
  for (std::size_t i = 0; i < input.size(); ++i) {
    Json c;
    c["alpha"] = index_json(layout.index(i));
    if (const auto& p = r.certificates[i]) {
      c["k"] = doubles(p->k);
      c["h"] = number(p->h);
      c["touching"] = index_list_json(layout, p->touching);
    } else {
      c["k"] = nullptr;
    }
    certs.push_back(std::move(c));
  }
  j["certificates"] = std::move(certs);
  return j;
}

Json polygon_json(const NewtonPolygon& p) {
  Json j;
  j["contacts"] = p.contacts;
  Json segs = Json::array();
  for (const auto& s : p.segments) {
    Json x;
    x["p_lo"] = s.p_lo;
    x["p_hi"] = s.p_hi;
    x["slope"] = number(s.slope);
    x["intercept"] = number(s.intercept);
    segs.push_back(std::move(x));
  }
  j["segments"] = std::move(segs);
  j["minorant"] = doubles(p.minorant);
  j["boundary_affected"] = p.boundary_affected;
  return j;
}

Json stability_json(const SequenceGrid& small, const StabilityReport& r) {
  Json j;
  j["max_diff"] = number(r.max_diff);
  j["unstable"] = index_list_json(small.layout(), r.unstable);
  j["diffs"] = doubles(r.diffs);
  return j;
}

Json omega_json(const SequenceGrid& g, std::span<const double> t, const OmegaValue& w) {
  Json j;
  j["t"] = doubles(t);
  j["omega"] = number(w.value);
  j["argmax"] = index_list_json(g.layout(), w.argmax);
  j["sup_on_boundary"] = w.sup_on_boundary;
  return j;
}

Json convexity_json(const SequenceGrid& g, const LogConvexityReport& r) {
  Json j;
  j["coordinatewise_ok"] = r.coordinatewise_ok;
  if (r.coordinatewise_violation) {
    Json v;
    v["alpha"] = index_json(r.coordinatewise_violation->first);
    v["axis"] = r.coordinatewise_violation->second;
    j["coordinatewise_violation"] = std::move(v);
  } else {
    j["coordinatewise_violation"] = nullptr;
  }
  j["globally_convex"] = r.globally_convex;
  j["max_gap"] = number(r.max_gap);
  j["max_gap_at"] = optional_index(r.max_gap_at);
  j["q3_holds"] = r.q3_holds;
  j["q3_failure"] = optional_index(r.q3_failure);
  j["boundary_caveat"] = r.boundary_caveat;
  j["box"] = Json(std::vector<int>(g.box().begin(), g.box().end()));
  j["log_minorant"] = doubles(r.log_minorant);
  j["log_q3"] = doubles(r.log_q3);
  return j;
}

Json verify_json(const VerifyReport& r) {
  Json j;
  j["holds"] = r.holds;
  j["max_slack"] = number(r.max_slack);
  j["verified_on"] = r.verified_on;
  j["missing"] = r.missing;
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json x;
    x["entry"] = e.entry;
    x["holds"] = e.result.holds();
    x["max_slack"] = number(e.result.max_slack);
    if (e.result.first_violation) {
      Json v;
      v["alpha"] = index_json(*e.result.first_violation);
      v["beta"] = optional_index(e.result.first_violation_beta);
      x["first_violation"] = std::move(v);
    } else {
      x["first_violation"] = nullptr;
    }
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json search_json(const SearchResult& r) {
  Json j;
  j["found"] = r.witness.has_value();
  j["witness"] = r.witness ? relation_witness_to_json(*r.witness) : Json(nullptr);
  Json cands = Json::array();
  for (const auto& c : r.candidates) {
    Json x;
    x["lambda"] = number(c.lambda);
    x["kappa"] = number(c.kappa);
    x["h"] = number(c.h);
    x["min_C"] = number(std::exp(c.min_log_c));
    x["min_log_C"] = number(c.min_log_c);
    x["argmax"] = optional_index(c.argmax);
    x["argmax_on_boundary"] = c.argmax_on_boundary;
    x["feasible"] = c.feasible;
    cands.push_back(std::move(x));
  }
  j["candidates"] = std::move(cands);
  if (!r.witness) j["note"] = "no witness in the searched range at this truncation";
  return j;
}

Json growth_json(const GrowthDiagnostic& d) {
  Json j;
  j["passes"] = d.passes;
  j["min_boundary_ratio"] = number(d.min_boundary_ratio);
  j["max_interior_ratio"] = number(d.max_interior_ratio);
  Json ratios = Json::array();
  for (const auto& [alpha, ratio] : d.ratios) {
    Json x;
    x["alpha"] = index_json(alpha);
    x["ratio"] = number(ratio);
    ratios.push_back(std::move(x));
  }
  j["ratios"] = std::move(ratios);
  return j;
}

}  // namespace lcmin::io
