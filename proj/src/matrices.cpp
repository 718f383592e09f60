#include "lcmin/matrices.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace lcmin {

namespace {

double slack(double lhs, double rhs) {
  if (rhs == kInf) return kInf;
  if (lhs == kInf) return -kInf;
  return rhs - lhs;
}

std::string level_name(std::string_view symbol, double v) {
  std::ostringstream os;
  os << symbol << '=' << v;
  return os.str();
}

/// Worst slack at one alpha and the first violating partner (beta flat index
/// or axis), -1 when none.
struct Local {
  double worst = kInf;
  long partner = -1;
};

template <class Fn>
std::vector<Local> scan(std::size_t n, Exec exec, Fn&& at) {
  std::vector<Local> out(n);
  for_each_index(n, exec, [&](std::size_t i) { out[i] = at(i); });
  return out;
}

void note(Local& l, double s, long partner) {
  l.worst = std::min(l.worst, s);
  if (s < -kSlackTol && l.partner < 0) l.partner = partner;
}

enum class PartnerKind { none, beta, axis };

SlackResult reduce(const std::vector<Local>& locals, const BoxLayout& layout, PartnerKind kind) {
  SlackResult r;
  for (std::size_t i = 0; i < locals.size(); ++i) {
    r.max_slack = std::min(r.max_slack, locals[i].worst);
    if (!r.first_violation && locals[i].partner >= 0) {
      r.first_violation = layout.index(i);
      if (kind == PartnerKind::beta) r.first_violation_beta = layout.index(static_cast<std::size_t>(locals[i].partner));
      if (kind == PartnerKind::axis)
        r.first_violation_beta = MultiIndex::unit(layout.dim(), static_cast<int>(locals[i].partner));
    }
  }
  return r;
}

void merge(VerifyReport& report, std::size_t entry, SlackResult r) {
  report.max_slack = std::min(report.max_slack, r.max_slack);
  if (!r.holds()) report.holds = false;
  report.entries.push_back({entry, std::move(r)});
}

/// Flat index of alpha + beta, if inside the box.
std::optional<std::size_t> sum_index(const BoxLayout& layout, std::size_t a, std::size_t b, std::vector<int>& buf) {
  auto ca = layout.coords(a);
  auto cb = layout.coords(b);
  buf.resize(ca.size());
  for (std::size_t j = 0; j < ca.size(); ++j) {
    buf[j] = ca[j] + cb[j];
    if (buf[j] > layout.box()[j]) return std::nullopt;
  }
  return layout.flat(std::span<const int>(buf));
}

bool is_roumieu(Condition c) { return c == Condition::L12R || c == Condition::L21R || c == Condition::L37R; }

}  // namespace

// ------------------------------------------------------------ WeightMatrix

WeightMatrix::WeightMatrix(std::vector<double> levels, std::vector<SequenceGrid> grids)
    : levels_(std::move(levels)), grids_(std::move(grids)) {
  if (levels_.empty()) throw Error(ErrorKind::Validation, "a weight matrix needs at least one level");
  if (levels_.size() != grids_.size()) throw Error(ErrorKind::Validation, "one grid per level is required");
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    if (!(levels_[l] > 0.0) || !std::isfinite(levels_[l]))
      throw Error(ErrorKind::Validation, "levels must be positive and finite");
    if (l > 0 && !(levels_[l] > levels_[l - 1])) throw Error(ErrorKind::Validation, "levels must be strictly increasing");
  }
  layout_ = grids_.front().layout();
  for (std::size_t l = 0; l < grids_.size(); ++l) {
    const auto& g = grids_[l];
    if (!(g.layout() == layout_)) throw Error(ErrorKind::Validation, "all levels must share one box");
    const auto violations = validate_grid(g);
    if (!violations.empty()) throw Error(ErrorKind::Validation, "level " + std::to_string(l) + ": " + violations.front().message);
    if (!g.is_normalized()) throw Error(ErrorKind::Validation, "level " + std::to_string(l) + " is not normalized");
    std::vector<double> logs(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) logs[i] = g.log_value(i);
    logs_.push_back(std::move(logs));
  }
  for (std::size_t l = 1; l < logs_.size(); ++l) {
    for (std::size_t i = 0; i < layout_.size(); ++i) {
      const double lo = logs_[l - 1][i], hi = logs_[l][i];
      if (lo > hi + 1e-12 * std::max(1.0, std::abs(hi)))
        throw Error(ErrorKind::Validation, "ladder not monotone at level " + std::to_string(l) + ", index " +
                                               layout_.index(i).to_string());
    }
  }
}

std::size_t WeightMatrix::level_index(double level) const {
  for (std::size_t l = 0; l < levels_.size(); ++l)
    if (std::abs(levels_[l] - level) <= 1e-12 * std::max(1.0, std::abs(level))) return l;
  throw Error(ErrorKind::LevelNotFound, level_name("level", level) + " is not in the ladder");
}

WeightMatrix single_level(const SequenceGrid& g, double level) { return WeightMatrix({level}, {g}); }

// ---------------------------------------------------------------- relations

std::string_view to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::roumieu: return "roumieu";
    case RelationKind::beurling: return "beurling";
    case RelationKind::triangle: return "triangle";
  }
  return "roumieu";
}

RelationKind relation_from_string(std::string_view name) {
  if (name == "roumieu") return RelationKind::roumieu;
  if (name == "beurling") return RelationKind::beurling;
  if (name == "triangle") return RelationKind::triangle;
  throw Error(ErrorKind::InvalidArgument, "unknown relation kind '" + std::string(name) + "'");
}

VerifyReport verify_relation(const WeightMatrix& m, const WeightMatrix& n, const RelationWitness& witness, Exec exec) {
  if (!(m.layout() == n.layout())) throw Error(ErrorKind::DimensionMismatch, "matrices live on different boxes");
  const auto& layout = m.layout();
  VerifyReport report;
  report.verified_on.assign(layout.box().begin(), layout.box().end());

  for (std::size_t e = 0; e < witness.entries.size(); ++e) {
    const auto& w = witness.entries[e];
    if (!(w.c >= 1.0) || !std::isfinite(w.c)) throw Error(ErrorKind::InvalidArgument, "C must be >= 1");
    if (!(w.h > 0.0) || !std::isfinite(w.h)) throw Error(ErrorKind::InvalidArgument, "h must be > 0");
    // lhs sequence from M, rhs sequence from N.
    std::size_t lm = 0, rn = 0;
    switch (witness.kind) {
      case RelationKind::roumieu:
      case RelationKind::triangle:
        lm = m.level_index(w.lambda);
        rn = n.level_index(w.kappa);
        break;
      case RelationKind::beurling:
        lm = m.level_index(w.kappa);
        rn = n.level_index(w.lambda);
        break;
    }
    const double log_c = std::log(w.c), log_h = std::log(w.h);
    const bool triangle = witness.kind == RelationKind::triangle;
    auto locals = scan(layout.size(), exec, [&](std::size_t i) {
      Local l;
      const int order = layout.order(i);
      const double rhs = triangle ? log_c + order * log_h + n.log_value(rn, i) : order * log_c + n.log_value(rn, i);
      note(l, slack(m.log_value(lm, i), rhs), 0);
      return l;
    });
    merge(report, e, reduce(locals, layout, PartnerKind::none));
  }

  // Coverage of the quantifiers.
  auto has = [&](auto pred) { return std::any_of(witness.entries.begin(), witness.entries.end(), pred); };
  if (witness.kind == RelationKind::roumieu) {
    for (double lambda : m.levels())
      if (!has([&](const RelationEntry& w) { return m.level_index(w.lambda) == m.level_index(lambda); }))
        report.missing.push_back(level_name("lambda", lambda));
  } else if (witness.kind == RelationKind::beurling) {
    for (double lambda : n.levels())
      if (!has([&](const RelationEntry& w) { return n.level_index(w.lambda) == n.level_index(lambda); }))
        report.missing.push_back(level_name("lambda", lambda));
  } else {
    std::set<double> hs;
    for (const auto& w : witness.entries) hs.insert(w.h);
    if (hs.empty()) report.missing.push_back("h");
    for (double h : hs)
      for (double lambda : m.levels())
        for (double kappa : n.levels())
          if (!has([&](const RelationEntry& w) {
                return w.h == h && m.level_index(w.lambda) == m.level_index(lambda) &&
                       n.level_index(w.kappa) == n.level_index(kappa);
              }))
            report.missing.push_back(level_name("lambda", lambda) + "," + level_name("kappa", kappa) + "," +
                                     level_name("h", h));
  }
  if (!report.missing.empty()) report.holds = false;
  return report;
}

std::vector<double> SearchSpace::default_h_values() {
  std::vector<double> hs;
  for (int e = -10; e <= 0; ++e) hs.push_back(std::ldexp(1.0, e));
  return hs;
}

SearchResult search_relation(const WeightMatrix& m, const WeightMatrix& n, RelationKind kind,
                             const SearchSpace& space, Exec exec) {
  if (!(m.layout() == n.layout())) throw Error(ErrorKind::DimensionMismatch, "matrices live on different boxes");
  if (!(space.c_max >= 1.0)) throw Error(ErrorKind::InvalidArgument, "c_max must be >= 1");
  const auto& layout = m.layout();

  // Candidate list: (lambda, kappa, h); lambda indexes the quantified ladder.
  SearchResult result;
  const bool triangle = kind == RelationKind::triangle;
  const auto& outer = kind == RelationKind::beurling ? n : m;
  const auto& inner = kind == RelationKind::beurling ? m : n;
  const std::vector<double> hs = triangle ? space.h_values : std::vector<double>{1.0};
  for (double lambda : outer.levels())
    for (double kappa : inner.levels())
      for (double h : hs) result.candidates.push_back({lambda, kappa, h, 0.0, std::nullopt, false, false});

  const double log_c_max = std::log(space.c_max);
  for_each_index(result.candidates.size(), exec, [&](std::size_t c) {
    auto& cand = result.candidates[c];
    if (!(cand.h > 0.0)) throw Error(ErrorKind::InvalidArgument, "h must be > 0");
    const std::size_t lo = outer.level_index(cand.lambda), ki = inner.level_index(cand.kappa);
    const std::size_t lm = kind == RelationKind::beurling ? ki : lo;
    const std::size_t rn = kind == RelationKind::beurling ? lo : ki;
    const double log_h = std::log(cand.h);
    double best = -kInf;
    std::optional<std::size_t> arg;
    for (std::size_t i = 0; i < layout.size(); ++i) {
      const int order = layout.order(i);
      if (!triangle && order == 0) continue;
      const double rhs = n.log_value(rn, i) + (triangle ? order * log_h : 0.0);
      const double lhs = m.log_value(lm, i);
      if (rhs == kInf) continue;
      double r = lhs == kInf ? kInf : lhs - rhs;
      if (!triangle) r /= order;
      if (r > best) {
        best = r;
        arg = i;
      }
    }
    cand.min_log_c = std::max(0.0, best);
    if (arg) {
      cand.argmax = layout.index(*arg);
      cand.argmax_on_boundary = layout.on_outer_face(*arg);
    }
    cand.feasible = cand.min_log_c <= log_c_max + 1e-12;
  });

  RelationWitness witness{kind, {}};
  bool found = true;
  if (triangle) {
    for (const auto& cand : result.candidates) {
      if (!cand.feasible) found = false;
      witness.entries.push_back({cand.lambda, cand.kappa, std::exp(cand.min_log_c), cand.h});
    }
  } else {
    const std::size_t per = inner.size();
    for (std::size_t l = 0; l < outer.size(); ++l) {
      const CandidateEvidence* best = nullptr;
      for (std::size_t k = 0; k < per; ++k) {
        const auto& cand = result.candidates[l * per + k];
        if (cand.feasible && (!best || cand.min_log_c < best->min_log_c)) best = &cand;
      }
      if (!best) {
        found = false;
        continue;
      }
      witness.entries.push_back({best->lambda, best->kappa, std::exp(best->min_log_c), 1.0});
    }
  }
  if (found) result.witness = std::move(witness);
  return result;
}

// --------------------------------------------------------------- conditions

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::L12R: return "L12R";
    case Condition::L21R: return "L21R";
    case Condition::L37R: return "L37R";
    case Condition::L12B: return "L12B";
    case Condition::L21B: return "L21B";
    case Condition::C63B: return "63B";
  }
  return "L37R";
}

Condition condition_from_string(std::string_view name) {
  for (auto c : {Condition::L12R, Condition::L21R, Condition::L37R, Condition::L12B, Condition::L21B, Condition::C63B})
    if (to_string(c) == name) return c;
  throw Error(ErrorKind::InvalidArgument, "unknown condition '" + std::string(name) + "'");
}

double half_alpha_log_alpha(std::span<const int> alpha) {
  double s = 0.0;
  for (int a : alpha)
    if (a > 0) s += 0.5 * a * std::log(static_cast<double>(a));
  return s;
}

namespace {

/// Levels resolved to (small, big): the sequence on the left and the one on
/// the right of each condition.
struct Resolved {
  std::size_t small = 0;
  std::size_t big = 0;
  double log_a = 0.0, log_b = 0.0, log_c = 0.0, log_h = 0.0;
};

Resolved resolve(const WeightMatrix& m, Condition cond, const ConditionEntry& e) {
  const std::size_t li = m.level_index(e.lambda), ki = m.level_index(e.kappa);
  if (is_roumieu(cond) && ki < li) throw Error(ErrorKind::InvalidArgument, std::string(to_string(cond)) + " needs kappa >= lambda");
  if (!is_roumieu(cond) && ki > li) throw Error(ErrorKind::InvalidArgument, std::string(to_string(cond)) + " needs kappa <= lambda");
  const bool shift = cond == Condition::L21R || cond == Condition::L21B;
  const bool pair = cond == Condition::L37R || cond == Condition::C63B;
  if ((shift || pair) && !(e.a >= 1.0 && std::isfinite(e.a))) throw Error(ErrorKind::InvalidArgument, "A must be >= 1");
  if (!shift && !pair) {
    for (double v : {e.b, e.c, e.h})
      if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "B, C, H must be > 0");
  }
  Resolved r;
  r.small = is_roumieu(cond) ? li : ki;
  r.big = is_roumieu(cond) ? ki : li;
  r.log_a = std::log(e.a);
  r.log_b = std::log(e.b);
  r.log_c = std::log(e.c);
  r.log_h = std::log(e.h);
  return r;
}

/// Slack at (alpha, beta) for the pair conditions; ab is the flat index of
/// alpha + beta.
double pair_slack(const WeightMatrix& m, Condition cond, const Resolved& r, std::size_t a, std::size_t b,
                  std::size_t ab) {
  const auto& layout = m.layout();
  if (cond == Condition::L37R || cond == Condition::C63B) {
    const double lhs = m.log_value(r.small, a) + m.log_value(r.small, b);
    return slack(lhs, layout.order(ab) * r.log_a + m.log_value(r.big, ab));
  }
  const double lhs = half_alpha_log_alpha(layout.coords(a)) + m.log_value(r.small, b);
  const double rhs = r.log_b + layout.order(a) * r.log_c + layout.order(ab) * r.log_h + m.log_value(r.big, ab);
  return slack(lhs, rhs);
}

double shift_slack(const WeightMatrix& m, const Resolved& r, std::size_t a, std::size_t a_plus) {
  return slack(m.log_value(r.small, a_plus), (m.layout().order(a) + 1) * r.log_a + m.log_value(r.big, a));
}

}  // namespace

VerifyReport verify_condition(const WeightMatrix& m, const ConditionWitness& witness, Exec exec) {
  const auto& layout = m.layout();
  if (layout.size() <= 1) throw Error(ErrorKind::BoxTooSmall, "the box holds only the origin");
  const Condition cond = witness.condition;
  const bool shift = cond == Condition::L21R || cond == Condition::L21B;

  VerifyReport report;
  report.verified_on.assign(layout.box().begin(), layout.box().end());
  for (std::size_t e = 0; e < witness.entries.size(); ++e) {
    const Resolved r = resolve(m, cond, witness.entries[e]);
    if (shift) {
      auto locals = scan(layout.size(), exec, [&](std::size_t i) {
        Local l;
        for (int j = 0; j < layout.dim(); ++j)
          if (auto up = layout.shift(i, j, 1)) note(l, shift_slack(m, r, i, *up), j);
        return l;
      });
      merge(report, e, reduce(locals, layout, PartnerKind::axis));
    } else {
      auto locals = scan(layout.size(), exec, [&](std::size_t i) {
        Local l;
        std::vector<int> buf;
        for (std::size_t b = 0; b < layout.size(); ++b)
          if (auto ab = sum_index(layout, i, b, buf)) note(l, pair_slack(m, cond, r, i, b, *ab), static_cast<long>(b));
        return l;
      });
      merge(report, e, reduce(locals, layout, PartnerKind::beta));
    }
  }

  for (double lambda : m.levels()) {
    const auto li = m.level_index(lambda);
    if (!std::any_of(witness.entries.begin(), witness.entries.end(),
                     [&](const ConditionEntry& w) { return m.level_index(w.lambda) == li; }))
      report.missing.push_back(level_name("lambda", lambda));
  }
  if (!report.missing.empty()) report.holds = false;
  return report;
}

double condition_slack(const WeightMatrix& m, Condition cond, const ConditionEntry& entry, const MultiIndex& alpha,
                       const MultiIndex& beta, int axis) {
  const auto& layout = m.layout();
  if (!layout.contains(alpha)) throw Error(ErrorKind::OutOfRange, "alpha outside the box");
  const Resolved r = resolve(m, cond, entry);
  const std::size_t a = layout.flat(alpha);
  if (cond == Condition::L21R || cond == Condition::L21B) {
    auto up = layout.shift(a, axis, 1);
    if (!up) throw Error(ErrorKind::OutOfRange, "alpha + e_j outside the box");
    return shift_slack(m, r, a, *up);
  }
  if (!layout.contains(beta) || !layout.contains(alpha + beta))
    throw Error(ErrorKind::OutOfRange, "alpha + beta outside the box");
  return pair_slack(m, cond, r, a, layout.flat(beta), layout.flat(alpha + beta));
}

// ---------------------------------------------------------- counterexample

double counterexample_log_value(std::span<const int> alpha) {
  if (alpha.size() != 2) throw Error(ErrorKind::DimensionMismatch, "the counterexample is two-dimensional");
  const double a1 = alpha[0], a2 = alpha[1];
  return half_alpha_log_alpha(alpha) + std::max(a1 * a1, a2 * a2);
}

SequenceGrid counterexample_grid(std::vector<int> box) {
  if (box.size() != 2) throw Error(ErrorKind::DimensionMismatch, "the counterexample is two-dimensional");
  return SequenceGrid::from_function(std::move(box), Scale::log,
                                     [](const MultiIndex& a) { return counterexample_log_value(a.entries()); });
}

std::vector<std::pair<int, double>> l37r_counterexample_curve(int n_max) {
  if (n_max < 1 || n_max > 30) throw Error(ErrorKind::OutOfRange, "n_max must be in 1..30");
  std::vector<std::pair<int, double>> curve;
  for (int n = 1; n <= n_max; ++n) {
    const int a[2] = {n, 0}, b[2] = {0, n}, ab[2] = {n, n};
    const double margin = counterexample_log_value(a) + counterexample_log_value(b) - counterexample_log_value(ab);
    curve.emplace_back(n, margin);
  }
  return curve;
}

}  // namespace lcmin
