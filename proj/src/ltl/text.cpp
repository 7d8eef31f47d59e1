#include "hardattn/ltl/text.hpp"

#include <cctype>
#include <sstream>

namespace hardattn::ltl {

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

std::vector<Token> lex(std::string_view text, int first_line) {
  std::vector<Token> out;
  int line = first_line, col = 1;
  std::size_t k = 0;
  while (k < text.size()) {
    char c = text[k];
    if (c == '\n') {
      ++line;
      col = 1;
      ++k;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++k;
      ++col;
      continue;
    }
    if (c == '(' || c == ')' || c == '!' || c == '&' || c == '|') {
      out.push_back({std::string(1, c), line, col});
      ++k;
      ++col;
      continue;
    }
    std::size_t start = k;
    int start_col = col;
    while (k < text.size()) {
      char d = text[k];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == '!' || d == '&' || d == '|')
        break;
      ++k;
      ++col;
    }
    out.push_back({std::string(text.substr(start, k - start)), line, start_col});
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse() {
    if (toks_.empty()) throw ParseError("empty formula", 0, 0);
    Formula f = parse_or();
    if (pos_ < toks_.size()) fail("unexpected '" + toks_[pos_].text + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    if (pos_ < toks_.size()) throw ParseError(msg, toks_[pos_].line, toks_[pos_].column);
    const Token& last = toks_.back();
    throw ParseError(msg, last.line, last.column + static_cast<int>(last.text.size()));
  }

  bool at(const char* text) const { return pos_ < toks_.size() && toks_[pos_].text == text; }

  Formula parse_or() {
    std::vector<Formula> parts{parse_and()};
    while (at("|")) {
      ++pos_;
      parts.push_back(parse_and());
    }
    return Formula::any(std::move(parts));
  }

  Formula parse_and() {
    std::vector<Formula> parts{parse_temporal()};
    while (at("&")) {
      ++pos_;
      parts.push_back(parse_temporal());
    }
    return Formula::all(std::move(parts));
  }

  Formula parse_temporal() {
    Formula lhs = parse_unary();
    if (at("S") || at("U") || at("S'") || at("U'")) {
      std::string op = toks_[pos_++].text;
      Formula rhs = parse_temporal();
      bool strict = op.size() == 1;
      return op[0] == 'S' ? Formula::since(lhs, rhs, strict) : Formula::until(lhs, rhs, strict);
    }
    return lhs;
  }

  Formula parse_unary() {
    if (pos_ >= toks_.size()) fail("unexpected end of formula");
    if (at("!")) {
      ++pos_;
      return Formula::negate(parse_unary());
    }
    if (at("(")) {
      ++pos_;
      Formula f = parse_or();
      if (!at(")")) fail("expected ')'");
      ++pos_;
      return f;
    }
    const std::string& t = toks_[pos_].text;
    if (t == "0" || t == "1") {
      ++pos_;
      return Formula::constant(t == "1");
    }
    if (t.rfind("PRED:", 0) == 0 && t.size() > 5) {
      ++pos_;
      return Formula::predicate(t.substr(5));
    }
    if (t.size() > 1 && t[0] == 'Q' && is_valid_symbol(std::string_view(t).substr(1))) {
      ++pos_;
      return Formula::symbol(t.substr(1));
    }
    fail("unexpected '" + t + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void print_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Const: out += f.value() ? "1" : "0"; return;
    case Formula::Kind::Symbol: out += "Q" + f.name(); return;
    case Formula::Kind::Predicate: out += "PRED:" + f.name(); return;
    case Formula::Kind::Not:
      out += "!";
      print_into(f.children()[0], out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      out += "(";
      for (std::size_t k = 0; k < f.children().size(); ++k) {
        if (k) out += f.kind() == Formula::Kind::And ? " & " : " | ";
        print_into(f.children()[k], out);
      }
      out += ")";
      return;
    }
    case Formula::Kind::Since:
    case Formula::Kind::Until: {
      out += "(";
      print_into(f.lhs(), out);
      out += f.kind() == Formula::Kind::Since ? " S" : " U";
      if (!f.strict()) out += "'";
      out += " ";
      print_into(f.rhs(), out);
      out += ")";
      return;
    }
  }
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(lex(text, 1)).parse(); }

std::string to_string(const Formula& f, std::uint64_t max_tree_size) {
  if (tree_size(f) > max_tree_size)
    throw Error("formula too large to print (tree size " + std::to_string(tree_size(f)) + ")");
  std::string out;
  print_into(f, out);
  return out;
}

FormulaFile parse_formula_file(std::string_view text) {
  FormulaFile file;
  std::istringstream in{std::string(text)};
  std::string line, body;
  int lineno = 0, body_line = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      body += "\n";
      continue;
    }
    std::string trimmed = line.substr(first);
    if (body_line == 0 && trimmed.rfind("alphabet:", 0) == 0) {
      try {
        file.alphabet = Alphabet(split_ws(trimmed.substr(9)));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), lineno, 1);
      }
      body += "\n";
      continue;
    }
    if (body_line == 0 && trimmed.rfind("predicates:", 0) == 0) {
      file.predicates = split_ws(trimmed.substr(11));
      body += "\n";
      continue;
    }
    if (body_line == 0) body_line = lineno;
    body += line + "\n";
  }
  if (body_line == 0) throw ParseError("missing formula", lineno, 0);
  file.formula = Parser(lex(body, 1)).parse();
  if (file.alphabet)
    for (const auto& s : symbols_of(file.formula))
      if (!file.alphabet->find(s)) throw ParseError("atom Q" + s + " is not in the alphabet", 0, 0);
  return file;
}

std::string print_formula_file(const FormulaFile& file) {
  std::string out;
  if (file.alphabet) {
    out += "alphabet:";
    for (const auto& s : file.alphabet->symbols()) out += " " + s;
    out += "\n";
  }
  if (!file.predicates.empty()) {
    out += "predicates:";
    for (const auto& p : file.predicates) out += " " + p;
    out += "\n";
  }
  return out + to_string(file.formula) + "\n";
}

}  // namespace hardattn::ltl
