#include "mtk1/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mtk1 {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  SourcePos pos;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&]() {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance();
      continue;
    }
    Token t;
    t.pos = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Token::Kind::Ident;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        t.text += text[i];
        advance();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Token::Kind::Number;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        t.text += text[i];
        advance();
      }
    } else if (std::string("();&|!=+-*/:").find(c) != std::string::npos) {
      t.kind = Token::Kind::Punct;
      t.text = std::string(1, c);
      advance();
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  FormulaAST parse() {
    FormulaAST ast;
    expect_ident("ambient");
    const Token& n = peek();
    if (n.kind != Token::Kind::Number) fail(n, "expected the ambient dimension");
    ast.ambient = std::stoi(n.text);
    if (ast.ambient < 1) fail(n, "ambient dimension must be at least 1");
    ++at_;
    expect(";");
    n_ = ast.ambient;
    ast.root = expr();
    if (peek().kind != Token::Kind::End) fail(peek(), "unexpected '" + peek().text + "'");
    return ast;
  }

 private:
  const Token& peek() const { return toks_[at_]; }
  bool is(const char* punct) const { return peek().kind == Token::Kind::Punct && peek().text == punct; }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.pos.line, t.pos.column, msg);
  }
  void expect(const char* punct) {
    if (!is(punct)) fail(peek(), std::string("expected '") + punct + "'");
    ++at_;
  }
  void expect_ident(const char* word) {
    if (peek().kind != Token::Kind::Ident || peek().text != word)
      fail(peek(), std::string("expected '") + word + "'");
    ++at_;
  }

  Formula nary(Formula::Op op, Formula first, SourcePos pos, Formula (Parser::*next)(), const char* sep) {
    if (!is(sep)) return first;
    Formula f;
    f.op = op;
    f.pos = pos;
    f.children.push_back(std::move(first));
    while (is(sep)) {
      ++at_;
      f.children.push_back((this->*next)());
    }
    return f;
  }

  Formula expr() {
    SourcePos pos = peek().pos;
    return nary(Formula::Op::Or, term(), pos, &Parser::term, "|");
  }

  Formula term() {
    SourcePos pos = peek().pos;
    return nary(Formula::Op::And, factor(), pos, &Parser::factor, "&");
  }

  Formula factor() {
    SourcePos pos = peek().pos;
    if (is("!")) {
      ++at_;
      Formula f;
      f.op = Formula::Op::Not;
      f.pos = pos;
      f.children.push_back(factor());
      return f;
    }
    if (is("(")) {
      ++at_;
      Formula f = expr();
      expect(")");
      return f;
    }
    if (peek().kind == Token::Kind::Ident && peek().text == "pp") return atom();
    fail(peek(), "expected pp(...), '!' or '('");
  }

  Formula atom() {
    Formula f;
    f.pos = peek().pos;
    ++at_;
    expect("(");
    bound_.clear();
    if (peek().kind == Token::Kind::Ident && peek().text == "E") {
      ++at_;
      while (peek().kind == Token::Kind::Ident) {
        const Token& t = peek();
        if (variable_index(t.text) >= 0 || t.text == "E" || t.text == "pp")
          fail(t, "'" + t.text + "' cannot be a bound variable here");
        bound_.push_back(t.text);
        ++at_;
      }
      if (bound_.empty()) fail(peek(), "expected bound variable names after E");
      expect(":");
    }
    f.pp.bound = bound_;
    if (!is(")")) {
      f.pp.equations.push_back(equation());
      while (is("&")) {
        ++at_;
        f.pp.equations.push_back(equation());
      }
    }
    expect(")");
    return f;
  }

  // -1 when the name is not a variable in scope
  int variable_index(const std::string& name) const {
    for (std::size_t i = 0; i < bound_.size(); ++i)
      if (bound_[i] == name) return n_ + static_cast<int>(i);
    if (name.size() >= 2 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      if (name.size() > 6) return -2;
      int k = std::stoi(name.substr(1));
      if (k >= 1 && k <= n_) return k - 1;
      return -2;
    }
    return -1;
  }

  struct Linear {
    RatVec coeffs;
    Rational constant;
  };

  Linear linear() {
    Linear l{RatVec(n_ + bound_.size()), 0};
    Rational sign = 1;
    if (is("+") || is("-")) {
      if (is("-")) sign = -1;
      ++at_;
    }
    product(l, sign);
    while (is("+") || is("-")) {
      sign = is("-") ? -1 : 1;
      ++at_;
      product(l, sign);
    }
    return l;
  }

  void product(Linear& l, Rational coef) {
    int var = -1;
    const Token* var_tok = nullptr;
    bool first = true;
    while (first || is("*")) {
      if (!first) ++at_;
      first = false;
      const Token& t = peek();
      if (t.kind == Token::Kind::Number) {
        coef *= literal();
      } else if (t.kind == Token::Kind::Ident) {
        int v = variable_index(t.text);
        if (v == -2) fail(t, "variable '" + t.text + "' out of range for ambient " + std::to_string(n_));
        if (v < 0) fail(t, "unknown variable '" + t.text + "'");
        if (var >= 0) fail(t, "nonlinear term: product of '" + var_tok->text + "' and '" + t.text + "'");
        var = v;
        var_tok = &t;
        ++at_;
      } else {
        fail(t, "expected a number or a variable");
      }
    }
    if (var >= 0) l.coeffs[var] += coef;
    else l.constant += coef;
  }

  Rational literal() {
    const Token& num = peek();
    ++at_;
    std::string text = num.text;
    if (is("/")) {
      ++at_;
      if (peek().kind != Token::Kind::Number) fail(peek(), "expected a denominator");
      text += "/" + peek().text;
      if (std::all_of(peek().text.begin(), peek().text.end(), [](char c) { return c == '0'; }))
        fail(peek(), "zero denominator");
      ++at_;
    }
    return parse_rational(text);
  }

  LinearEq equation() {
    Linear lhs = linear();
    expect("=");
    Linear rhs = linear();
    LinearEq eq{lhs.coeffs - rhs.coeffs, rhs.constant - lhs.constant};
    return eq;
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
  int n_ = 0;
  std::vector<std::string> bound_;
};

std::string var_name(int j, int n, const std::vector<std::string>& bound) {
  return j < n ? "x" + std::to_string(j + 1) : bound[j - n];
}

void print_eq(std::ostringstream& out, const LinearEq& eq, int n, const std::vector<std::string>& bound) {
  bool first = true;
  for (std::size_t j = 0; j < eq.coeffs.size(); ++j) {
    const Rational& a = eq.coeffs[j];
    if (a == 0) continue;
    Rational mag = abs(a);
    if (first) {
      if (a < 0) out << '-';
    } else {
      out << (a < 0 ? " - " : " + ");
    }
    if (mag != 1) out << to_string(mag) << '*';
    out << var_name(static_cast<int>(j), n, bound);
    first = false;
  }
  if (first) out << '0';
  out << " = " << to_string(eq.rhs);
}

// Precedence: Or 0, And 1, Not/PP 2.
int level(const Formula& f) {
  switch (f.op) {
    case Formula::Op::Or: return 0;
    case Formula::Op::And: return 1;
    default: return 2;
  }
}

void print_node(std::ostringstream& out, const Formula& f, int n) {
  auto child = [&](const Formula& c, int min_level) {
    if (level(c) < min_level) {
      out << '(';
      print_node(out, c, n);
      out << ')';
    } else {
      print_node(out, c, n);
    }
  };
  switch (f.op) {
    case Formula::Op::PP:
      out << "pp(";
      if (!f.pp.bound.empty()) {
        out << 'E';
        for (const auto& b : f.pp.bound) out << ' ' << b;
        out << " : ";
      }
      for (std::size_t i = 0; i < f.pp.equations.size(); ++i) {
        if (i) out << " & ";
        print_eq(out, f.pp.equations[i], n, f.pp.bound);
      }
      out << ')';
      return;
    case Formula::Op::Not:
      out << '!';
      child(f.children.front(), 2);
      return;
    case Formula::Op::And:
    case Formula::Op::Or: {
      const char* sep = f.op == Formula::Op::And ? " & " : " | ";
      // nested same-op chains get parentheses so the tree shape survives
      const int min_level = level(f) + 1;
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) out << sep;
        child(f.children[i], min_level);
      }
      return;
    }
  }
}

BoolExpr to_bool(const Formula& f, int n) {
  switch (f.op) {
    case Formula::Op::PP: return BoolExpr::atom(elaborate_atom(f.pp, n));
    case Formula::Op::Not: return BoolExpr::negate(to_bool(f.children.front(), n));
    case Formula::Op::And:
    case Formula::Op::Or: {
      BoolExpr e;
      e.op = f.op == Formula::Op::And ? BoolExpr::Op::And : BoolExpr::Op::Or;
      for (const auto& c : f.children) e.children.push_back(to_bool(c, n));
      return e;
    }
  }
  return {};
}

}  // namespace

FormulaAST parse_formula(const std::string& text) { return Parser(text).parse(); }

std::string print_formula(const FormulaAST& ast) {
  std::ostringstream out;
  out << "ambient " << ast.ambient << "; ";
  print_node(out, ast.root, ast.ambient);
  return out.str();
}

AffineCoset elaborate_atom(const PPAtom& atom, int n) {
  const int total = n + static_cast<int>(atom.bound.size());
  std::vector<RatVec> rows;
  for (const auto& eq : atom.equations) {
    RatVec row = eq.coeffs;
    row.resize(total);
    row.push_back(eq.rhs);
    rows.push_back(std::move(row));
  }
  return coset_project(AffineCoset::from_equations(total, rows), n);
}

BoolExpr to_bool_expr(const FormulaAST& ast) { return to_bool(ast.root, ast.ambient); }

DefinableSet elaborate(const FormulaAST& ast) { return boolean_normalize(to_bool_expr(ast), ast.ambient); }

}  // namespace mtk1
