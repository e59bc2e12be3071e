#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mtk1/definable.hpp"

namespace mtk1 {

/// Formula files:
///
///   ambient 2; pp(x2 = 0) | !pp(E y : x1 - 2*y = 1 & x2 = y)
///
/// `|` binds loosest, then `&`, then `!`. Inside pp(...) the equations are
/// linear in x1..xn and the bound names, with rational literals p/q; pp()
/// is the whole space. `#` starts a comment.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct SourcePos {
  int line = 1;
  int column = 1;
};

/// sum coeffs[j] v_j = rhs over x1..xn followed by the bound variables.
struct LinearEq {
  RatVec coeffs;
  Rational rhs;
  friend bool operator==(const LinearEq&, const LinearEq&) = default;
};

struct PPAtom {
  std::vector<std::string> bound;
  std::vector<LinearEq> equations;
  friend bool operator==(const PPAtom&, const PPAtom&) = default;
};

struct Formula {
  enum class Op { PP, And, Or, Not };
  Op op = Op::PP;
  PPAtom pp;
  std::vector<Formula> children;
  SourcePos pos;

  /// Structural equality, ignoring positions.
  friend bool operator==(const Formula& a, const Formula& b) {
    return a.op == b.op && a.pp == b.pp && a.children == b.children;
  }
};

struct FormulaAST {
  int ambient = 0;
  Formula root;
  friend bool operator==(const FormulaAST&, const FormulaAST&) = default;
};

FormulaAST parse_formula(const std::string& text);
/// Normalized text; parse_formula(print_formula(a)) == a.
std::string print_formula(const FormulaAST& ast);

/// The solution coset of a pp atom projected to Q^n.
AffineCoset elaborate_atom(const PPAtom& atom, int n);
BoolExpr to_bool_expr(const FormulaAST& ast);
DefinableSet elaborate(const FormulaAST& ast);

}  // namespace mtk1
