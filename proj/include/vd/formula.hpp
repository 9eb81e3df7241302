#pragma once

#include "errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace vd {

/// Immutable propositional formula over the connectives
/// & (conjunction), | (disjunction), -> (implication), ! (paraconsistent
/// negation), @ (consistency) and ~ (classical negation).
///
/// Formulas are values: cheap to copy, safe to share across threads,
/// compared structurally. `~` is a first-class node; it is rewritten to
/// its `->`/bot form only by expand_defs.
class Formula {
public:
  enum class Kind : std::uint8_t { Var, And, Or, Imp, Neg, Circ, ClassNeg };

private:
  struct Node {
    Kind kind;
    std::string name;                        // Var only
    std::shared_ptr<const Node> left, right; // right empty for unary nodes
    std::size_t hash;
  };

  std::shared_ptr<const Node> node_;

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::size_t mix(std::size_t a, std::size_t b) {
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  }

  static Formula make(Kind k, std::string name, Formula l, Formula r) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->name = std::move(name);
    n->left = l.node_;
    n->right = r.node_;
    std::size_t h = static_cast<std::size_t>(k) * 0x9e3779b97f4a7c15ULL;
    if (k == Kind::Var)
      h = mix(h, std::hash<std::string>{}(n->name));
    if (n->left)
      h = mix(h, n->left->hash);
    if (n->right)
      h = mix(h, n->right->hash);
    n->hash = h;
    return Formula(std::move(n));
  }

  static bool eq(const Node* a, const Node* b) {
    if (a == b)
      return true;
    if (!a || !b || a->hash != b->hash || a->kind != b->kind)
      return false;
    if (a->kind == Kind::Var)
      return a->name == b->name;
    if (!eq(a->left.get(), b->left.get()))
      return false;
    return eq(a->right.get(), b->right.get());
  }

  static int cmp(const Node* a, const Node* b) {
    if (a == b)
      return 0;
    if (a->kind != b->kind)
      return a->kind < b->kind ? -1 : 1;
    if (a->kind == Kind::Var)
      return a->name.compare(b->name);
    if (int c = cmp(a->left.get(), b->left.get()); c != 0)
      return c;
    if (a->right == b->right)
      return 0;
    if (!a->right || !b->right)
      return a->right ? 1 : -1;
    return cmp(a->right.get(), b->right.get());
  }

public:
  Formula() : Formula(var("p")) {} // default-constructible for containers

  static Formula var(std::string name) {
    return make(Kind::Var, std::move(name), Formula(nullptr), Formula(nullptr));
  }
  static Formula conj(Formula a, Formula b) {
    return make(Kind::And, {}, std::move(a), std::move(b));
  }
  static Formula disj(Formula a, Formula b) {
    return make(Kind::Or, {}, std::move(a), std::move(b));
  }
  static Formula imp(Formula a, Formula b) {
    return make(Kind::Imp, {}, std::move(a), std::move(b));
  }
  static Formula neg(Formula a) {
    return make(Kind::Neg, {}, std::move(a), Formula(nullptr));
  }
  static Formula circ(Formula a) {
    return make(Kind::Circ, {}, std::move(a), Formula(nullptr));
  }
  static Formula cneg(Formula a) {
    return make(Kind::ClassNeg, {}, std::move(a), Formula(nullptr));
  }

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  const std::string& name() const { return node_->name; }
  Formula left() const { return Formula(node_->left); }
  Formula right() const { return Formula(node_->right); }
  /// Operand of a unary node.
  Formula child() const { return Formula(node_->left); }
  std::size_t hash() const { return node_->hash; }

  bool operator==(const Formula& o) const { return eq(node_.get(), o.node_.get()); }
  bool operator!=(const Formula& o) const { return !(*this == o); }
  bool operator<(const Formula& o) const { return cmp(node_.get(), o.node_.get()) < 0; }
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// bot(w) = w & (!w & @w), the parameterised bottom formula. It is a
/// macro over the core signature, never an AST node of its own.
inline Formula bot(const Formula& witness) {
  return Formula::conj(witness,
                       Formula::conj(Formula::neg(witness), Formula::circ(witness)));
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Raised on malformed input. `offset` is the byte position of the
/// offending token; `expected` lists the token classes that would have
/// been accepted there.
struct SyntaxError : Error {
  std::size_t offset;
  std::vector<std::string> expected;

  SyntaxError(std::size_t off, std::vector<std::string> exp)
      : Error(format(off, exp)), offset(off), expected(std::move(exp)) {}

private:
  static std::string format(std::size_t off, const std::vector<std::string>& exp) {
    std::string msg = "syntax error at byte " + std::to_string(off) + ": expected ";
    for (std::size_t i = 0; i < exp.size(); ++i) {
      if (i)
        msg += exp.size() == 2 ? " or " : (i + 1 == exp.size() ? ", or " : ", ");
      msg += exp[i];
    }
    return msg;
  }
};

namespace detail {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = imp();
    skip_ws();
    if (pos_ != text_.size())
      fail({"end of input", "'&'", "'|'", "'->'"});
    return f;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(std::vector<std::string> expected) {
    throw SyntaxError(pos_, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat_arrow() {
    skip_ws();
    if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
      pos_ += 2;
      return true;
    }
    return false;
  }

  // imp := or ("->" imp)?          right-associative
  Formula imp() {
    Formula lhs = disj();
    if (eat_arrow())
      return Formula::imp(std::move(lhs), imp());
    return lhs;
  }

  // or := and ("|" and)*           left-associative
  Formula disj() {
    Formula lhs = conj();
    while (eat('|'))
      lhs = Formula::disj(std::move(lhs), conj());
    return lhs;
  }

  // and := unary ("&" unary)*      left-associative
  Formula conj() {
    Formula lhs = unary();
    while (eat('&'))
      lhs = Formula::conj(std::move(lhs), unary());
    return lhs;
  }

  // unary := ("!" | "~" | "@")* atom
  Formula unary() {
    skip_ws();
    if (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '!') {
        ++pos_;
        return Formula::neg(unary());
      }
      if (c == '~') {
        ++pos_;
        return Formula::cneg(unary());
      }
      if (c == '@') {
        ++pos_;
        return Formula::circ(unary());
      }
    }
    return atom();
  }

  // atom := ident | "bot" "(" formula ")" | "(" formula ")"
  Formula atom() {
    skip_ws();
    if (eat('(')) {
      Formula f = imp();
      if (!eat(')'))
        fail({"')'"});
      return f;
    }
    if (pos_ >= text_.size() || text_[pos_] < 'a' || text_[pos_] > 'z')
      fail({"identifier", "'('", "'!'", "'~'", "'@'"});
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_'))
      ++pos_;
    std::string id(text_.substr(start, pos_ - start));
    if (id == "bot") {
      std::size_t after_ident = pos_;
      if (eat('(')) {
        Formula w = imp();
        if (!eat(')'))
          fail({"')'"});
        return bot(w);
      }
      pos_ = after_ident; // bare "bot" is an ordinary variable
    }
    return Formula::var(std::move(id));
  }
};

} // namespace detail

/// Parses the surface syntax. Grammar:
///   formula := imp
///   imp     := or ("->" imp)?
///   or      := and ("|" and)*
///   and     := unary ("&" unary)*
///   unary   := ("!" | "~" | "@")* atom
///   atom    := ident | "bot" "(" formula ")" | "(" formula ")"
///   ident   := [a-z][a-zA-Z0-9_]*
/// `bot(w)` desugars to w & (!w & @w).
inline Formula parse(std::string_view text) { return detail::Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace detail {

// Precedence levels: -> is 1, | is 2, & is 3, unary prefixes 4, atoms 5.
inline int precedence(Formula::Kind k) {
  switch (k) {
  case Formula::Kind::Imp: return 1;
  case Formula::Kind::Or: return 2;
  case Formula::Kind::And: return 3;
  case Formula::Kind::Neg:
  case Formula::Kind::Circ:
  case Formula::Kind::ClassNeg: return 4;
  case Formula::Kind::Var: return 5;
  }
  return 5;
}

inline void print_into(const Formula& f, int min_prec, std::string& out) {
  int prec = precedence(f.kind());
  bool parens = prec < min_prec;
  if (parens)
    out += '(';
  switch (f.kind()) {
  case Formula::Kind::Var:
    out += f.name();
    break;
  case Formula::Kind::Neg:
    out += '!';
    print_into(f.child(), 4, out);
    break;
  case Formula::Kind::ClassNeg:
    out += '~';
    print_into(f.child(), 4, out);
    break;
  case Formula::Kind::Circ:
    out += '@';
    print_into(f.child(), 4, out);
    break;
  case Formula::Kind::And:
    print_into(f.left(), 3, out);
    out += " & ";
    print_into(f.right(), 4, out);
    break;
  case Formula::Kind::Or:
    print_into(f.left(), 2, out);
    out += " | ";
    print_into(f.right(), 3, out);
    break;
  case Formula::Kind::Imp:
    print_into(f.left(), 2, out);
    out += " -> ";
    print_into(f.right(), 1, out);
    break;
  }
  if (parens)
    out += ')';
}

} // namespace detail

/// Canonical rendering with minimal parentheses; parse(to_string(f)) == f.
inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print_into(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Structural operations
// ---------------------------------------------------------------------------

/// All distinct subformulas of `f`, children before parents.
inline std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (seen.count(g))
      return;
    switch (g.kind()) {
    case Formula::Kind::Var:
      break;
    case Formula::Kind::Neg:
    case Formula::Kind::Circ:
    case Formula::Kind::ClassNeg:
      walk(g.child());
      break;
    default:
      walk(g.left());
      walk(g.right());
    }
    seen.insert(g);
    out.push_back(g);
  };
  walk(f);
  return out;
}

/// Free variable names of `f`, sorted.
inline std::vector<std::string> variables(const Formula& f) {
  std::vector<std::string> out;
  for (const Formula& g : subformulas(f))
    if (g.is(Formula::Kind::Var))
      out.push_back(g.name());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Replaces every variable named in `map` by its image, simultaneously.
inline Formula substitute(const Formula& f, const std::map<std::string, Formula>& map) {
  switch (f.kind()) {
  case Formula::Kind::Var: {
    auto it = map.find(f.name());
    return it == map.end() ? f : it->second;
  }
  case Formula::Kind::Neg:
    return Formula::neg(substitute(f.child(), map));
  case Formula::Kind::Circ:
    return Formula::circ(substitute(f.child(), map));
  case Formula::Kind::ClassNeg:
    return Formula::cneg(substitute(f.child(), map));
  case Formula::Kind::And:
    return Formula::conj(substitute(f.left(), map), substitute(f.right(), map));
  case Formula::Kind::Or:
    return Formula::disj(substitute(f.left(), map), substitute(f.right(), map));
  case Formula::Kind::Imp:
    return Formula::imp(substitute(f.left(), map), substitute(f.right(), map));
  }
  return f;
}

namespace detail {

inline Formula expand_with(const Formula& f, const Formula& expanded_bot) {
  switch (f.kind()) {
  case Formula::Kind::Var:
    return f;
  case Formula::Kind::Neg:
    return Formula::neg(expand_with(f.child(), expanded_bot));
  case Formula::Kind::Circ:
    return Formula::circ(expand_with(f.child(), expanded_bot));
  case Formula::Kind::ClassNeg:
    return Formula::imp(expand_with(f.child(), expanded_bot), expanded_bot);
  case Formula::Kind::And:
    return Formula::conj(expand_with(f.left(), expanded_bot),
                         expand_with(f.right(), expanded_bot));
  case Formula::Kind::Or:
    return Formula::disj(expand_with(f.left(), expanded_bot),
                         expand_with(f.right(), expanded_bot));
  case Formula::Kind::Imp:
    return Formula::imp(expand_with(f.left(), expanded_bot),
                        expand_with(f.right(), expanded_bot));
  }
  return f;
}

// A witness containing ~ is first made ~-free by expanding each of its
// ClassNeg nodes with the node's own operand as bot witness.
inline Formula self_expand(const Formula& f) {
  switch (f.kind()) {
  case Formula::Kind::Var:
    return f;
  case Formula::Kind::Neg:
    return Formula::neg(self_expand(f.child()));
  case Formula::Kind::Circ:
    return Formula::circ(self_expand(f.child()));
  case Formula::Kind::ClassNeg: {
    Formula inner = self_expand(f.child());
    return Formula::imp(inner, bot(inner));
  }
  case Formula::Kind::And:
    return Formula::conj(self_expand(f.left()), self_expand(f.right()));
  case Formula::Kind::Or:
    return Formula::disj(self_expand(f.left()), self_expand(f.right()));
  case Formula::Kind::Imp:
    return Formula::imp(self_expand(f.left()), self_expand(f.right()));
  }
  return f;
}

} // namespace detail

/// Rewrites every ~g node into g' -> bot(w), bottom-up, where g' is the
/// expansion of g and w the (ClassNeg-free form of the) witness. The
/// result contains no ClassNeg node, and the operation is idempotent.
inline Formula expand_defs(const Formula& f, const Formula& witness) {
  return detail::expand_with(f, bot(detail::self_expand(witness)));
}

} // namespace vd

template <> struct std::hash<vd::Formula> {
  std::size_t operator()(const vd::Formula& f) const { return f.hash(); }
};
