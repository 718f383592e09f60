/**
 * @file matrices.hpp
 * @brief Weight matrices, the relations between them and the Roumieu/Beurling
 *        conditions, checked on a finite box.
 *
 * A weight matrix is a finite ladder of levels lambda_1 < ... < lambda_m with
 * one normalized sequence per level, pointwise non-decreasing in lambda. The
 * quantifier "for all lambda there is kappa" becomes "for every level of the
 * ladder a witness level exists". Every inequality is checked in log scale;
 * a slack is rhs - lhs and a check holds when the worst slack is >= -1e-9.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lcmin/core.hpp"
#include "lcmin/exec.hpp"

namespace lcmin {

inline constexpr double kSlackTol = 1e-9;

class WeightMatrix {
 public:
  WeightMatrix() = default;
  /// Throws Validation when a ladder invariant fails (no level, levels not
  /// positive and increasing, mixed boxes, unnormalized or non-monotone
  /// sequences).
  WeightMatrix(std::vector<double> levels, std::vector<SequenceGrid> grids);

  std::size_t size() const { return levels_.size(); }
  const std::vector<double>& levels() const { return levels_; }
  const std::vector<SequenceGrid>& grids() const { return grids_; }
  int dim() const { return layout_.dim(); }
  const BoxLayout& layout() const { return layout_; }

  /// Position of `level` in the ladder; throws LevelNotFound.
  std::size_t level_index(double level) const;
  /// log M^{(level i)} at a flat index.
  double log_value(std::size_t level, std::size_t flat) const { return logs_[level][flat]; }

 private:
  std::vector<double> levels_;
  std::vector<SequenceGrid> grids_;
  std::vector<std::vector<double>> logs_;
  BoxLayout layout_;
};

/// Ladder with one level.
WeightMatrix single_level(const SequenceGrid& g, double level = 1.0);

// ------------------------------------------------------------- relations

enum class RelationKind { roumieu, beurling, triangle };

std::string_view to_string(RelationKind kind);
RelationKind relation_from_string(std::string_view name);

/// roumieu:  M^(lambda) <= C^|a| N^(kappa)      (lambda ranges over M)
/// beurling: M^(kappa)  <= C^|a| N^(lambda)     (lambda ranges over N)
/// triangle: M^(lambda) <= C h^|a| N^(kappa)    (every lambda, kappa, h)
struct RelationEntry {
  double lambda = 1.0;
  double kappa = 1.0;
  double c = 1.0;
  double h = 1.0;
};

struct RelationWitness {
  RelationKind kind = RelationKind::roumieu;
  std::vector<RelationEntry> entries;
};

struct SlackResult {
  /// Worst (smallest) slack over the box.
  double max_slack = kInf;
  /// First lattice point in row-major order whose slack is below -1e-9.
  std::optional<MultiIndex> first_violation;
  /// Second index of the violating pair, for two-index conditions.
  std::optional<MultiIndex> first_violation_beta;
  bool holds() const { return max_slack >= -kSlackTol; }
};

struct EntryReport {
  std::size_t entry = 0;
  SlackResult result;
};

struct VerifyReport {
  bool holds = true;
  double max_slack = kInf;
  std::vector<EntryReport> entries;
  /// Quantified combinations without a witness entry, e.g. "lambda=2".
  std::vector<std::string> missing;
  std::vector<int> verified_on;
};

/// Throws LevelNotFound for witness levels outside the ladders,
/// DimensionMismatch for different boxes and InvalidArgument for C < 1 or
/// h <= 0.
VerifyReport verify_relation(const WeightMatrix& m, const WeightMatrix& n, const RelationWitness& witness,
                             Exec exec = Exec::serial);

struct SearchSpace {
  double c_max = 1e6;
  /// h values for the triangle relation.
  std::vector<double> h_values = default_h_values();

  static std::vector<double> default_h_values();
};

/// Smallest admissible C for one candidate, in closed form:
/// log C = max(0, max_{a != 0} (lhs_a - rhs_a) / |a|) for roumieu/beurling and
/// max(0, max_a (lhs_a - rhs_a)) for triangle.
struct CandidateEvidence {
  double lambda = 0.0;
  double kappa = 0.0;
  double h = 1.0;
  double min_log_c = 0.0;
  std::optional<MultiIndex> argmax;
  bool argmax_on_boundary = false;
  bool feasible = false;
};

struct SearchResult {
  /// Empty: no witness with C <= c_max at this truncation. That is evidence,
  /// not proof, that the relation fails.
  std::optional<RelationWitness> witness;
  std::vector<CandidateEvidence> candidates;
};

SearchResult search_relation(const WeightMatrix& m, const WeightMatrix& n, RelationKind kind,
                             const SearchSpace& space = {}, Exec exec = Exec::serial);

// ------------------------------------------------------------ conditions

enum class Condition { L12R, L21R, L37R, L12B, L21B, C63B };

std::string_view to_string(Condition c);
Condition condition_from_string(std::string_view name);

/// Parameters for one level. L21*, L37R and 63B use `a`; L12* use b, c, h.
/// Roumieu conditions need kappa >= lambda, Beurling ones kappa <= lambda.
/// L12B quantifies "for all C there is B": list one entry per (C, B) pair.
struct ConditionEntry {
  double lambda = 1.0;
  double kappa = 1.0;
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  double h = 1.0;
};

struct ConditionWitness {
  Condition condition = Condition::L37R;
  std::vector<ConditionEntry> entries;
};

/// Throws LevelNotFound, InvalidArgument (kappa on the wrong side of lambda,
/// A < 1, non-positive constants) and BoxTooSmall when the box is {0}.
VerifyReport verify_condition(const WeightMatrix& m, const ConditionWitness& witness, Exec exec = Exec::serial);

/// rhs - lhs of the condition at (alpha, beta); beta is ignored by L21R/L21B,
/// where `axis` selects e_j. Negative means violated.
double condition_slack(const WeightMatrix& m, Condition cond, const ConditionEntry& entry, const MultiIndex& alpha,
                        const MultiIndex& beta, int axis = 0);

/// sum_j (alpha_j / 2) log alpha_j, with 0 log 0 = 0.
double half_alpha_log_alpha(std::span<const int> alpha);

/// log M_alpha = sum_j (alpha_j/2) log alpha_j + max(alpha_1^2, alpha_2^2).
double counterexample_log_value(std::span<const int> alpha);
/// The sequence above on `box` (d = 2), LOG scale.
SequenceGrid counterexample_grid(std::vector<int> box);

/// (n, log M_(n,0) + log M_(0,n) - log M_(n,n)) for n = 1..n_max: the L37R
/// margin at alpha = (n,0), beta = (0,n) with A = 1, which equals n^2.
/// Throws OutOfRange unless 1 <= n_max <= 30.
std::vector<std::pair<int, double>> l37r_counterexample_curve(int n_max);

}  // namespace lcmin
