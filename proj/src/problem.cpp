#include "qshift/problem.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace qshift {

ParseError::ParseError(ErrorKind kind, int line, int column, const std::string& what)
    : Error(kind, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

AlgebraSignature ProblemFile::signature() const {
  AlgebraSignature sig = AlgebraSignature::standard(static_cast<int>(vars.size()));
  sig.names = vars;
  return sig;
}

const std::string* ProblemFile::option(const std::string& key) const {
  for (const auto& [k, v] : options) {
    if (k == key) return &v;
  }
  return nullptr;
}

CritLocus crit_locus_of(const ProblemFile& problem) { return make_crit_locus(problem.f, problem.signature()); }

namespace {

enum class Tok { Ident, Number, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const unsigned char c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t j = i;
    if (std::isalpha(c) || c == '_') {
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
    } else if (std::isdigit(c)) {
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j + 1 < src.size() && src[j] == '/' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      t.kind = Tok::Number;
    } else if (std::string_view("+-*^();=").find(static_cast<char>(c)) != std::string_view::npos) {
      j = i + 1;
      t.kind = Tok::Symbol;
    } else {
      throw ParseError(ErrorKind::SyntaxError, line, col, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
    t.text = std::string(src.substr(i, j - i));
    advance(j - i);
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ProblemFile problem() {
    ProblemFile p;
    expect_word("vars");
    std::set<std::string> seen;
    while (peek().kind == Tok::Ident) {
      const Token& t = next();
      if (!seen.insert(t.text).second) fail(t, "duplicate variable '" + t.text + "'");
      p.vars.push_back(t.text);
    }
    if (p.vars.empty()) fail(peek(), "expected at least one variable name");
    expect_symbol(";");
    vars_ = p.vars;
    expect_word("f");
    expect_symbol("=");
    p.f = expr();
    expect_symbol(";");
    std::set<std::string> keys;
    while (peek().kind != Tok::End) {
      const Token& key = peek();
      if (key.kind != Tok::Ident) fail(key, "expected an option name");
      next();
      if (!keys.insert(key.text).second) fail(key, "duplicate option '" + key.text + "'");
      expect_symbol("=");
      const Token& value = peek();
      if (value.kind != Tok::Ident && value.kind != Tok::Number) fail(value, "expected an option value");
      next();
      p.options.emplace_back(key.text, value.text);
      expect_symbol(";");
    }
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg, ErrorKind kind = ErrorKind::SyntaxError) const {
    throw ParseError(kind, t.line, t.column, msg);
  }

  bool at_symbol(const char* s) const { return peek().kind == Tok::Symbol && peek().text == s; }

  void expect_symbol(const char* s) {
    if (!at_symbol(s)) fail(peek(), std::string("expected '") + s + "'" + found());
    next();
  }

  void expect_word(const char* w) {
    if (peek().kind != Tok::Ident || peek().text != w) fail(peek(), std::string("expected '") + w + "'" + found());
    next();
  }

  std::string found() const { return peek().kind == Tok::End ? " at end of input" : " before '" + peek().text + "'"; }

  int m() const { return static_cast<int>(vars_.size()); }

  Element expr() {
    Element acc(m());
    bool negate = false;
    if (at_symbol("-")) {
      next();
      negate = true;
    }
    Element t = term();
    acc += negate ? -t : t;
    while (at_symbol("+") || at_symbol("-")) {
      const bool minus = next().text == "-";
      Element u = term();
      acc += minus ? -u : u;
    }
    return acc;
  }

  Element term() {
    Element acc = factor();
    while (at_symbol("*")) {
      next();
      acc = acc * factor();
    }
    return acc;
  }

  Element factor() {
    Element b = base();
    if (at_symbol("^")) {
      next();
      const Token& e = peek();
      if (e.kind != Tok::Number || e.text.find('/') != std::string::npos) fail(e, "exponent must be a natural number");
      next();
      if (e.text.size() > 4) fail(e, "exponent too large");
      const int n = std::stoi(e.text);
      Element r = Element::constant(m(), HSeries(1));
      for (int k = 0; k < n; ++k) r = r * b;
      return r;
    }
    return b;
  }

  Element base() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      next();
      auto it = std::find(vars_.begin(), vars_.end(), t.text);
      if (it == vars_.end()) fail(t, "unknown variable '" + t.text + "'", ErrorKind::UnknownVariable);
      return Element::y(m(), static_cast<int>(it - vars_.begin()));
    }
    if (t.kind == Tok::Number) {
      next();
      Rational q;
      try {
        q = Rational(t.text);
      } catch (const std::invalid_argument&) {
        fail(t, "bad rational literal '" + t.text + "'");
      }
      if (q.get_den() == 0) fail(t, "zero denominator");
      q.canonicalize();
      return Element::constant(m(), HSeries(q));
    }
    if (at_symbol("(")) {
      next();
      Element e = expr();
      expect_symbol(")");
      return e;
    }
    fail(t, "expected a variable, number or '('" + found());
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> vars_;
};

std::string rational_text(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  Parser p(lex(text));
  return p.problem();
}

std::string polynomial_text(const Element& f, const std::vector<std::string>& vars) {
  if (f.is_zero()) return "0";
  // Highest total degree first, then lexicographically larger exponents first.
  std::vector<std::pair<Monomial, Rational>> terms;
  for (const auto& [mono, c] : f.terms()) terms.emplace_back(mono, c.coeff(0));
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const int da = a.first.y_degree();
    const int db = b.first.y_degree();
    if (da != db) return da > db;
    return a.first.y > b.first.y;
  });
  std::string out;
  bool first = true;
  for (const auto& [mono, c] : terms) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::vector<std::string> factors;
    if (mag != 1 || mono.y_degree() == 0) factors.push_back(rational_text(mag));
    for (std::size_t i = 0; i < mono.y.size(); ++i) {
      if (mono.y[i] == 0) continue;
      factors.push_back(mono.y[i] == 1 ? vars[i] : vars[i] + "^" + std::to_string(mono.y[i]));
    }
    for (std::size_t k = 0; k < factors.size(); ++k) out += (k ? "*" : "") + factors[k];
  }
  return out;
}

std::string print_problem(const ProblemFile& problem) {
  std::string out = "vars";
  for (const auto& v : problem.vars) out += " " + v;
  out += ";\nf = " + polynomial_text(problem.f, problem.vars) + ";\n";
  for (const auto& [k, v] : problem.options) out += k + " = " + v + ";\n";
  return out;
}

}  // namespace qshift
