#pragma once

#include "formula.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>

namespace vd {

/// A binding of schema metavariables to concrete formulas.
using MatchBinding = std::map<std::string, Formula>;

/// One axiom schema: a pattern over the metavariables alpha, beta, gamma.
/// Metavariables are represented as Var nodes with reserved names; they
/// match any formula during schema matching.
struct Schema {
  int id; // 1..18
  Formula pattern;
};

namespace detail {

inline std::array<Schema, 18> build_schemas() {
  const Formula a = Formula::var("alpha");
  const Formula b = Formula::var("beta");
  const Formula g = Formula::var("gamma");
  auto imp = [](Formula x, Formula y) { return Formula::imp(std::move(x), std::move(y)); };
  auto conj = [](Formula x, Formula y) { return Formula::conj(std::move(x), std::move(y)); };
  auto disj = [](Formula x, Formula y) { return Formula::disj(std::move(x), std::move(y)); };
  auto neg = [](Formula x) { return Formula::neg(std::move(x)); };
  auto circ = [](Formula x) { return Formula::circ(std::move(x)); };
  auto cneg = [](Formula x) { return Formula::cneg(std::move(x)); };

  return {{
      {1, imp(a, imp(b, a))},
      {2, imp(imp(a, imp(b, g)), imp(imp(a, b), imp(a, g)))},
      {3, imp(a, imp(b, conj(a, b)))},
      {4, imp(conj(a, b), a)},
      {5, imp(conj(a, b), b)},
      {6, imp(a, disj(a, b))},
      {7, imp(b, disj(a, b))},
      {8, disj(imp(a, b), a)},
      {9, disj(a, neg(a))},
      {10, imp(imp(a, g), imp(imp(neg(a), g), imp(disj(a, neg(a)), g)))},
      {11, imp(imp(imp(a, b), g), imp(imp(a, g), imp(disj(imp(a, b), a), g)))},
      // gentle explosion law
      {12, imp(circ(a), imp(a, imp(neg(a), b)))},
      {13, disj(circ(a), conj(a, neg(a)))},
      {14, imp(imp(circ(a), g),
               imp(imp(conj(a, neg(a)), g), imp(disj(circ(a), conj(a, neg(a))), g)))},
      {15, imp(cneg(neg(a)), cneg(neg(cneg(neg(a)))))},
      {16, imp(cneg(neg(cneg(neg(a)))), cneg(neg(a)))},
      {17, imp(cneg(neg(conj(a, b))), conj(cneg(neg(a)), cneg(neg(b))))},
      {18, imp(conj(cneg(neg(a)), cneg(neg(b))), cneg(neg(conj(a, b))))},
  }};
}

inline bool match_into(const Formula& pattern, const Formula& subject, MatchBinding& out) {
  if (pattern.is(Formula::Kind::Var)) {
    auto [it, inserted] = out.emplace(pattern.name(), subject);
    return inserted || it->second == subject;
  }
  if (pattern.kind() != subject.kind())
    return false;
  switch (pattern.kind()) {
  case Formula::Kind::Neg:
  case Formula::Kind::Circ:
  case Formula::Kind::ClassNeg:
    return match_into(pattern.child(), subject.child(), out);
  default:
    return match_into(pattern.left(), subject.left(), out) &&
           match_into(pattern.right(), subject.right(), out);
  }
}

} // namespace detail

/// The axiom schemas, in order, ids 1..18.
inline const std::array<Schema, 18>& schemas() {
  static const std::array<Schema, 18> table = detail::build_schemas();
  return table;
}

inline const Schema& schema(int id) { return schemas().at(static_cast<std::size_t>(id - 1)); }

/// First-order matching of a ground formula against a schema pattern.
/// The binding, when it exists, is unique; substituting it back into the
/// pattern reproduces `f` exactly.
inline std::optional<MatchBinding> match_schema(const Formula& f, const Schema& s) {
  MatchBinding binding;
  if (detail::match_into(s.pattern, f, binding))
    return binding;
  return std::nullopt;
}

/// Substitutes a binding into a schema pattern.
inline Formula instantiate(const Schema& s, const MatchBinding& binding) {
  return substitute(s.pattern, binding);
}

} // namespace vd
