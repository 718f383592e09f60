/**
 * @file io.hpp
 * @brief Grid, weight-matrix, witness and report files.
 *
 * Grid JSON:   {"dim": d, "box": [N_1, ...], "scale": "log"|"exp", "values": [...]}
 *              values are row-major (last axis fastest); "inf" stands for +inf.
 * Grid CSV:    d <= 2. The first header cell is the scale. For d = 2 the rest
 *              of the header lists alpha_2 = 0..N_2 and every row starts with
 *              alpha_1; for d = 1 the header is "<scale>,value" and rows are
 *              "p,a_p".
 * Matrix JSON: {"levels": [lambda...], "grids": [grid...]}.
 *
 * Output is canonical: fixed key order, 17 significant digits, "inf"/"-inf"
 * strings, null for NaN, two-space indentation with scalar arrays on one line.
 */
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lcmin/assoc.hpp"
#include "lcmin/core.hpp"
#include "lcmin/envelope.hpp"
#include "lcmin/envelope1d.hpp"
#include "lcmin/matrices.hpp"

namespace lcmin::io {

using Json = nlohmann::ordered_json;

class SchemaError : public Error {
 public:
  SchemaError(std::string path, std::string expected, std::string found);

  /// JSON pointer ("/values/3") or CSV position ("csv:row 2:col 3").
  const std::string& path() const { return path_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::string path_;
  std::string expected_;
  std::string found_;
};

/// A grid that parsed but fails validate_grid.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

enum class Format { json, csv };

/// `.csv` selects CSV, anything else JSON.
Format format_for(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

// --------------------------------------------------------------- scalars

/// +inf -> "inf", -inf -> "-inf", NaN -> null, finite -> number.
Json number(double v);
std::string canonical_dump(const Json& j);

// ------------------------------------------------------------------ grids

Json grid_to_json(const SequenceGrid& g);
/// Throws SchemaError (paths relative to `where`) or ValidationError.
SequenceGrid grid_from_json(const Json& j, const std::string& where = "");

SequenceGrid read_grid(std::string_view text, Format format = Format::json);
std::string write_grid(const SequenceGrid& g, Format format = Format::json);
SequenceGrid read_grid_file(const std::filesystem::path& path);

// --------------------------------------------------------------- matrices

Json matrix_to_json(const WeightMatrix& m);
/// Ladder invariants are reported as SchemaError inside "/levels" or "/grids".
WeightMatrix read_matrix(std::string_view text);
std::string write_matrix(const WeightMatrix& m);

Json relation_witness_to_json(const RelationWitness& w);
RelationWitness read_relation_witness(std::string_view text);
Json condition_witness_to_json(const ConditionWitness& w);
ConditionWitness read_condition_witness(std::string_view text);

// ---------------------------------------------------------------- reports

struct RunReport {
  std::vector<std::string> command;
  std::string input_digest;
  Json results = Json::object();
  std::vector<std::string> warnings;
  std::optional<double> duration_s;
};

Json report_to_json(const RunReport& r);
std::string write_report(const RunReport& r);
RunReport read_report(std::string_view text);

/// "sha256:<hex>" over the concatenated inputs, each prefixed with its size.
std::string digest(const std::vector<std::string>& inputs);

// ------------------------------------------------------- result payloads

Json index_json(const MultiIndex& alpha);
Json index_list_json(const BoxLayout& layout, const std::vector<std::size_t>& flat);
Json minorant_json(const SequenceGrid& input, const MinorantResult& r);
Json polygon_json(const NewtonPolygon& p);
Json stability_json(const SequenceGrid& small, const StabilityReport& r);
Json omega_json(const SequenceGrid& g, std::span<const double> t, const OmegaValue& w);
Json convexity_json(const SequenceGrid& g, const LogConvexityReport& r);
Json verify_json(const VerifyReport& r);
Json search_json(const SearchResult& r);
Json growth_json(const GrowthDiagnostic& d);

}  // namespace lcmin::io
