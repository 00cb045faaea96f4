#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qshift/error.hpp"
#include "qshift/gca.hpp"

namespace qshift {

//   problem := "vars" ident+ ";" "f" "=" expr ";" (option ";")*
//   option  := ident "=" (ident | rational)
//   expr    := ["-"] term (("+" | "-") term)*
//   term    := factor ("*" factor)*
//   factor  := base ("^" nat)?
//   base    := ident | rational | "(" expr ")"
// '#' starts a comment running to the end of the line.
struct ProblemFile {
  std::vector<std::string> vars;
  Element f;
  std::vector<std::pair<std::string, std::string>> options;

  AlgebraSignature signature() const;
  const std::string* option(const std::string& key) const;

  friend bool operator==(const ProblemFile& a, const ProblemFile& b) {
    return a.vars == b.vars && a.f == b.f && a.options == b.options;
  }
};

class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

ProblemFile parse_problem(std::string_view text);
// Canonical text; parse_problem(print_problem(p)) == p.
std::string print_problem(const ProblemFile& problem);
// Canonical polynomial text in the expression grammar.
std::string polynomial_text(const Element& f, const std::vector<std::string>& vars);

CritLocus crit_locus_of(const ProblemFile& problem);

}  // namespace qshift
