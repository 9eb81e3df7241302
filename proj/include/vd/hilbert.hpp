#pragma once

#include "formula.hpp"
#include "schema.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vd {

/// Why a proof line is justified. Line references are 0-based indices
/// into the derivation and must point strictly backwards.
struct Justification {
  enum class Kind { Hyp, Axiom, MP, Rule2, Defn };

  Kind kind = Kind::Hyp;
  int axiom_id = 0;             // Axiom
  int i = -1;                   // MP antecedent line / Rule2 premise / Defn premise
  int j = -1;                   // MP implication line
  std::optional<Formula> witness; // Defn: bot witness for the ~ rewrites

  static Justification hyp() { return {}; }
  static Justification axiom(int id) {
    Justification jst;
    jst.kind = Kind::Axiom;
    jst.axiom_id = id;
    return jst;
  }
  static Justification mp(int antecedent, int implication) {
    Justification jst;
    jst.kind = Kind::MP;
    jst.i = antecedent;
    jst.j = implication;
    return jst;
  }
  static Justification rule2(int premise) {
    Justification jst;
    jst.kind = Kind::Rule2;
    jst.i = premise;
    return jst;
  }
  static Justification defn(int premise, Formula witness) {
    Justification jst;
    jst.kind = Kind::Defn;
    jst.i = premise;
    jst.witness = std::move(witness);
    return jst;
  }
};

struct ProofLine {
  Formula formula;
  Justification just;
};

/// A finite sequence of justified lines; the conclusion is the last line.
struct Derivation {
  std::vector<Formula> hypotheses;
  std::vector<ProofLine> lines;

  const Formula& conclusion() const { return lines.back().formula; }
};

enum class LineStatus {
  Ok,
  NotAHypothesis,
  SchemaMismatch,
  MPShapeMismatch,
  Rule2OnNonTheorem,
  Rule2ShapeMismatch,
  DefnMismatch,
  BadLineRef,
};

inline const char* to_string(LineStatus s) {
  switch (s) {
  case LineStatus::Ok: return "Ok";
  case LineStatus::NotAHypothesis: return "NotAHypothesis";
  case LineStatus::SchemaMismatch: return "SchemaMismatch";
  case LineStatus::MPShapeMismatch: return "MPShapeMismatch";
  case LineStatus::Rule2OnNonTheorem: return "Rule2OnNonTheorem";
  case LineStatus::Rule2ShapeMismatch: return "Rule2ShapeMismatch";
  case LineStatus::DefnMismatch: return "DefnMismatch";
  case LineStatus::BadLineRef: return "BadLineRef";
  }
  return "?";
}

/// Result of checking a derivation. `theorem_flags[i]` is true iff line
/// i's justification ancestry contains no hypothesis line; it is the
/// checkable witness for Rule 2's "provided alpha is a theorem" side
/// condition.
struct CheckReport {
  bool accepted = false;
  std::vector<LineStatus> line_status;
  std::vector<bool> theorem_flags;
  std::optional<std::pair<int, LineStatus>> first_error; // 0-based line index
};

namespace detail {

inline bool is_hypothesis(const Formula& f, const std::vector<Formula>& hyps) {
  for (const Formula& h : hyps)
    if (h == f)
      return true;
  return false;
}

} // namespace detail

/// Checks every line of a derivation against the proof rules:
/// hypotheses must be listed, axiom lines must match their schema, MP
/// lines must have the right implication shape, Rule 2 may only be
/// applied to theorem-flagged lines, and Defn lines must equal their
/// premise modulo ~g <-> (g -> bot(w)) rewrites.
inline CheckReport check(const Derivation& d) {
  CheckReport report;
  const int n = static_cast<int>(d.lines.size());
  report.line_status.assign(static_cast<std::size_t>(n), LineStatus::Ok);
  report.theorem_flags.assign(static_cast<std::size_t>(n), false);

  auto ref_ok = [&](int idx, int line) { return idx >= 0 && idx < line; };

  for (int i = 0; i < n; ++i) {
    const ProofLine& line = d.lines[static_cast<std::size_t>(i)];
    LineStatus status = LineStatus::Ok;
    bool flag = false;

    switch (line.just.kind) {
    case Justification::Kind::Hyp:
      if (!detail::is_hypothesis(line.formula, d.hypotheses))
        status = LineStatus::NotAHypothesis;
      flag = false;
      break;

    case Justification::Kind::Axiom: {
      int id = line.just.axiom_id;
      if (id < 1 || id > 18 || !match_schema(line.formula, schema(id)))
        status = LineStatus::SchemaMismatch;
      flag = true;
      break;
    }

    case Justification::Kind::MP: {
      if (!ref_ok(line.just.i, i) || !ref_ok(line.just.j, i)) {
        status = LineStatus::BadLineRef;
        break;
      }
      const Formula& antecedent = d.lines[static_cast<std::size_t>(line.just.i)].formula;
      const Formula& implication = d.lines[static_cast<std::size_t>(line.just.j)].formula;
      if (!implication.is(Formula::Kind::Imp) || implication.left() != antecedent ||
          implication.right() != line.formula)
        status = LineStatus::MPShapeMismatch;
      flag = report.theorem_flags[static_cast<std::size_t>(line.just.i)] &&
             report.theorem_flags[static_cast<std::size_t>(line.just.j)];
      break;
    }

    case Justification::Kind::Rule2: {
      if (!ref_ok(line.just.i, i)) {
        status = LineStatus::BadLineRef;
        break;
      }
      const Formula& premise = d.lines[static_cast<std::size_t>(line.just.i)].formula;
      Formula expected = Formula::imp(Formula::neg(premise), Formula::cneg(premise));
      if (line.formula != expected)
        status = LineStatus::Rule2ShapeMismatch;
      else if (!report.theorem_flags[static_cast<std::size_t>(line.just.i)])
        status = LineStatus::Rule2OnNonTheorem;
      flag = report.theorem_flags[static_cast<std::size_t>(line.just.i)];
      break;
    }

    case Justification::Kind::Defn: {
      if (!ref_ok(line.just.i, i) || !line.just.witness) {
        status = LineStatus::BadLineRef;
        break;
      }
      const Formula& premise = d.lines[static_cast<std::size_t>(line.just.i)].formula;
      // Two formulas are inter-rewritable by ~g <-> (g -> bot(w)) steps
      // exactly when their fully expanded forms coincide.
      if (expand_defs(line.formula, *line.just.witness) !=
          expand_defs(premise, *line.just.witness))
        status = LineStatus::DefnMismatch;
      flag = report.theorem_flags[static_cast<std::size_t>(line.just.i)];
      break;
    }
    }

    report.line_status[static_cast<std::size_t>(i)] = status;
    report.theorem_flags[static_cast<std::size_t>(i)] = flag;
    if (status != LineStatus::Ok && !report.first_error)
      report.first_error = {i, status};
  }

  report.accepted = n > 0 && !report.first_error;
  return report;
}

struct NotAHypothesis : Error {
  explicit NotAHypothesis(const Formula& f)
      : Error("not a hypothesis: " + to_string(f)) {}
};

struct PreconditionViolated : Error {
  using Error::Error;
};

/// Constructive deduction theorem: from an accepted derivation of c from
/// hypotheses including `a`, builds a derivation of a -> c from the
/// remaining hypotheses. The output re-checks as accepted.
inline Derivation deduction_transform(const Derivation& d, const Formula& a) {
  CheckReport pre = check(d);
  if (!pre.accepted)
    throw PreconditionViolated("deduction_transform requires an accepted derivation");
  if (!detail::is_hypothesis(a, d.hypotheses))
    throw NotAHypothesis(a);

  Derivation out;
  for (const Formula& h : d.hypotheses)
    if (h != a)
      out.hypotheses.push_back(h);

  auto push = [&](Formula f, Justification j) {
    out.lines.push_back({std::move(f), std::move(j)});
    return static_cast<int>(out.lines.size()) - 1;
  };

  // new_impl[i]: line index in `out` proving a -> (old line i).
  std::vector<int> new_impl(d.lines.size(), -1);
  // verbatim[i]: re-emitted copy of theorem-flagged old line i, if any.
  std::vector<int> verbatim(d.lines.size(), -1);

  // Re-emits the (hypothesis-free) ancestry of a theorem-flagged line.
  std::function<int(int)> emit_verbatim = [&](int idx) -> int {
    if (verbatim[static_cast<std::size_t>(idx)] >= 0)
      return verbatim[static_cast<std::size_t>(idx)];
    const ProofLine& line = d.lines[static_cast<std::size_t>(idx)];
    Justification j = line.just;
    switch (j.kind) {
    case Justification::Kind::MP:
      j.i = emit_verbatim(j.i);
      j.j = emit_verbatim(j.j);
      break;
    case Justification::Kind::Rule2:
    case Justification::Kind::Defn:
      j.i = emit_verbatim(j.i);
      break;
    default:
      break;
    }
    int at = push(line.formula, j);
    verbatim[static_cast<std::size_t>(idx)] = at;
    return at;
  };

  // a -> f from a copy of f at line `src`, by Axiom 1 and MP.
  auto prefix = [&](int src, const Formula& f) {
    Formula ax1 = Formula::imp(f, Formula::imp(a, f));
    int k = push(ax1, Justification::axiom(1));
    return push(Formula::imp(a, f), Justification::mp(src, k));
  };

  for (std::size_t i = 0; i < d.lines.size(); ++i) {
    const ProofLine& line = d.lines[i];
    const Formula& f = line.formula;

    if (pre.theorem_flags[i]) {
      // Hypothesis-free ancestry: keep it verbatim, then prefix with a ->.
      int src = emit_verbatim(static_cast<int>(i));
      new_impl[i] = prefix(src, f);
      continue;
    }

    switch (line.just.kind) {
    case Justification::Kind::Hyp: {
      if (f == a) {
        if (a_to_a < 0) {
          // a -> a via Axioms 1, 2 and MP twice.
          Formula aa = Formula::imp(a, a);
          Formula ax1_long = Formula::imp(a, Formula::imp(aa, a));
          int l1 = push(ax1_long, Justification::axiom(1));
          Formula ax2 = Formula::imp(ax1_long, Formula::imp(Formula::imp(a, aa), aa));
          int l2 = push(ax2, Justification::axiom(2));
          int l3 = push(Formula::imp(Formula::imp(a, aa), aa), Justification::mp(l1, l2));
          int l4 = push(Formula::imp(a, aa), Justification::axiom(1));
          a_to_a = push(aa, Justification::mp(l4, l3));
        }
        new_impl[i] = a_to_a;
      } else {
        int src = push(f, Justification::hyp());
        new_impl[i] = prefix(src, f);
      }
      break;
    }

    case Justification::Kind::MP: {
      // From a -> g and a -> (g -> f), conclude a -> f via Axiom 2.
      const Formula& g = d.lines[static_cast<std::size_t>(line.just.i)].formula;
      Formula a_imp_g = Formula::imp(a, g);
      Formula a_imp_gf = Formula::imp(a, Formula::imp(g, f));
      Formula a_imp_f = Formula::imp(a, f);
      Formula ax2 = Formula::imp(a_imp_gf, Formula::imp(a_imp_g, a_imp_f));
      int l1 = push(ax2, Justification::axiom(2));
      int l2 = push(Formula::imp(a_imp_g, a_imp_f),
                    Justification::mp(new_impl[static_cast<std::size_t>(line.just.j)], l1));
      new_impl[i] =
          push(a_imp_f, Justification::mp(new_impl[static_cast<std::size_t>(line.just.i)], l2));
      break;
    }

    case Justification::Kind::Defn: {
      // a -> f and a -> premise differ only in the consequent, which the
      // same witness rewrites.
      int src = new_impl[static_cast<std::size_t>(line.just.i)];
      new_impl[i] =
          push(Formula::imp(a, f), Justification::defn(src, *line.just.witness));
      break;
    }

    case Justification::Kind::Rule2:
      // Unreachable: Rule 2 lines are theorem-flagged in accepted input.
      throw PreconditionViolated("Rule 2 line without theorem flag");

    case Justification::Kind::Axiom:
      // Unreachable: axiom lines are theorem-flagged.
      throw PreconditionViolated("axiom line without theorem flag");
    }
  }

  return out;
}

/// A bundled derivation with its expected verdict.
struct CorpusEntry {
  std::string name;
  Derivation derivation;
  bool expect_accept = true;
};

/// Machine-readable derivations used across demos and tests:
///  - "thm2.7.i":    {p, ~p} |- q, 15 lines (classical negation explodes);
///  - "thm2.7.ii":   |- ~p | p (excluded middle for ~);
///  - "remark2.4":   the illegal Rule 2 use on a hypothesis, expect-reject;
///  - "and-comm-lr": {p & q} |- q & p;
///  - "and-comm-rl": {q & p} |- p & q.
inline const std::map<std::string, CorpusEntry>& corpus() {
  static const std::map<std::string, CorpusEntry> entries = [] {
    std::map<std::string, CorpusEntry> m;
    using J = Justification;

    {
      // {p, ~p} |- q.
      Derivation d;
      d.hypotheses = {parse("p"), parse("~p")};
      Formula w = parse("p");
      d.lines = {
          {parse("p"), J::hyp()},                                   // 0
          {parse("~p"), J::hyp()},                                  // 1
          {parse("p -> bot(p)"), J::defn(1, w)},                    // 2
          {parse("bot(p)"), J::mp(0, 2)},                           // 3
          {parse("p & (!p & @p)"), J::defn(3, w)},                  // 4
          {parse("(p & (!p & @p)) -> (!p & @p)"), J::axiom(5)},     // 5
          {parse("!p & @p"), J::mp(4, 5)},                          // 6
          {parse("(!p & @p) -> !p"), J::axiom(4)},                  // 7
          {parse("!p"), J::mp(6, 7)},                               // 8
          {parse("(!p & @p) -> @p"), J::axiom(5)},                  // 9
          {parse("@p"), J::mp(6, 9)},                               // 10
          {parse("@p -> (p -> (!p -> q))"), J::axiom(12)},          // 11
          {parse("p -> (!p -> q)"), J::mp(10, 11)},                 // 12
          {parse("!p -> q"), J::mp(0, 12)},                         // 13
          {parse("q"), J::mp(8, 13)},                               // 14
      };
      m["thm2.7.i"] = {"thm2.7.i", std::move(d), true};
    }

    {
      // |- ~p | p, from Axiom 8 and the definition of ~.
      Derivation d;
      d.lines = {
          {parse("(p -> bot(p)) | p"), J::axiom(8)},
          {parse("~p | p"), J::defn(0, parse("p"))},
      };
      m["thm2.7.ii"] = {"thm2.7.ii", std::move(d), true};
    }

    {
      // The explosion that unrestricted Rule 2 would license from {p, !p}.
      Derivation d;
      d.hypotheses = {parse("p"), parse("!p")};
      Formula w = parse("q");
      d.lines = {
          {parse("p"), J::hyp()},                          // 0
          {parse("!p -> ~p"), J::rule2(0)},                // 1: premise is a hypothesis
          {parse("!p"), J::hyp()},                         // 2
          {parse("~p"), J::mp(2, 1)},                      // 3
          {parse("p -> bot(q)"), J::defn(3, w)},           // 4
          {parse("bot(q)"), J::mp(0, 4)},                  // 5
          {parse("q & (!q & @q)"), J::defn(5, w)},         // 6
          {parse("(q & (!q & @q)) -> q"), J::axiom(4)},    // 7
          {parse("q"), J::mp(6, 7)},                       // 8
      };
      m["remark2.4"] = {"remark2.4", std::move(d), false};
    }

    {
      // {p & q} |- q & p.
      Derivation d;
      d.hypotheses = {parse("p & q")};
      d.lines = {
          {parse("p & q"), J::hyp()},                    // 0
          {parse("(p & q) -> q"), J::axiom(5)},          // 1
          {parse("q"), J::mp(0, 1)},                     // 2
          {parse("(p & q) -> p"), J::axiom(4)},          // 3
          {parse("p"), J::mp(0, 3)},                     // 4
          {parse("q -> (p -> (q & p))"), J::axiom(3)},   // 5
          {parse("p -> (q & p)"), J::mp(2, 5)},          // 6
          {parse("q & p"), J::mp(4, 6)},                 // 7
      };
      m["and-comm-lr"] = {"and-comm-lr", std::move(d), true};
    }

    {
      // {q & p} |- p & q.
      Derivation d;
      d.hypotheses = {parse("q & p")};
      d.lines = {
          {parse("q & p"), J::hyp()},
          {parse("(q & p) -> p"), J::axiom(5)},
          {parse("p"), J::mp(0, 1)},
          {parse("(q & p) -> q"), J::axiom(4)},
          {parse("q"), J::mp(0, 3)},
          {parse("p -> (q -> (p & q))"), J::axiom(3)},
          {parse("q -> (p & q)"), J::mp(2, 5)},
          {parse("p & q"), J::mp(4, 6)},
      };
      m["and-comm-rl"] = {"and-comm-rl", std::move(d), true};
    }

    return m;
  }();
  return entries;
}

} // namespace vd
