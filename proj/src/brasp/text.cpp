#include "hardattn/brasp/text.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace hardattn::brasp {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

enum class Tok { Ident, Pred, Const, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int column;
};

class LineParser {
 public:
  LineParser(std::string_view line, int lineno, const std::map<std::string, std::size_t>& names,
             std::vector<std::string>& predicates, bool predicates_fixed)
      : line_(line), lineno_(lineno), names_(names), predicates_(predicates), fixed_(predicates_fixed) {
    advance();
  }

  Operation parse_op() {
    Token name = expect(Tok::Ident, "vector name");
    expect_punct("(");
    Token var = expect(Tok::Ident, "'i'");
    if (var.text != "i") fail("operation must be defined at position i", var.column);
    expect_punct(")");
    expect_punct(":=");
    Operation op{name.text, Positionwise{}};
    if (cur_.kind == Tok::Punct && cur_.text == "[") {
      Attention att;
      read_brackets(att);
      att.score = parse_or();
      expect_punct("?");
      att.value = parse_or();
      expect_punct(":");
      att.fallback = parse_or();
      op.body = att;
    } else {
      op.body = Positionwise{parse_or()};
    }
    if (cur_.kind != Tok::End) fail("unexpected '" + cur_.text + "'", cur_.column);
    return op;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, int column) { throw ParseError(msg, lineno_, column); }

  void skip_space() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }

  void advance() {
    skip_space();
    int col = static_cast<int>(pos_) + 1;
    if (pos_ >= line_.size() || line_[pos_] == '#') {
      cur_ = {Tok::End, "end of line", col};
      pos_ = line_.size();
      return;
    }
    char c = line_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < line_.size() && is_name_char(line_[pos_])) ++pos_;
      std::string word(line_.substr(start, pos_ - start));
      if (word == "PRED" && pos_ < line_.size() && line_[pos_] == ':') {
        ++pos_;
        std::size_t fs = pos_;
        while (pos_ < line_.size() && line_[pos_] != '(' && !std::isspace(static_cast<unsigned char>(line_[pos_])))
          ++pos_;
        if (pos_ == fs) fail("missing predicate family name", col);
        cur_ = {Tok::Pred, std::string(line_.substr(fs, pos_ - fs)), col};
        return;
      }
      cur_ = {Tok::Ident, word, col};
      return;
    }
    if (c == '0' || c == '1') {
      ++pos_;
      if (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_])))
        fail("constants are 0 or 1", col);
      cur_ = {Tok::Const, std::string(1, c), col};
      return;
    }
    if (line_.substr(pos_, 2) == ":=") {
      pos_ += 2;
      cur_ = {Tok::Punct, ":=", col};
      return;
    }
    if (std::string_view("()[]?:!&|,").find(c) != std::string_view::npos) {
      ++pos_;
      cur_ = {Tok::Punct, std::string(1, c), col};
      return;
    }
    fail(std::string("unexpected character '") + c + "'", col);
  }

  Token expect(Tok kind, const std::string& what) {
    if (cur_.kind != kind) fail("expected " + what + ", found '" + cur_.text + "'", cur_.column);
    Token t = cur_;
    advance();
    return t;
  }

  void expect_punct(const std::string& p) {
    if (cur_.kind != Tok::Punct || cur_.text != p)
      fail("expected '" + p + "', found '" + cur_.text + "'", cur_.column);
    advance();
  }

  void read_brackets(Attention& att) {
    // cur_ is '[' and pos_ is just past it.
    std::size_t close = line_.find(']', pos_);
    if (close == std::string_view::npos) fail("missing ']'", cur_.column);
    std::string inner(line_.substr(pos_, close - pos_));
    auto comma = inner.find(',');
    if (comma == std::string::npos) fail("expected '[direction, mask]'", cur_.column);
    std::string dir = trim(inner.substr(0, comma));
    std::string mask;
    for (char ch : inner.substr(comma + 1))
      if (!std::isspace(static_cast<unsigned char>(ch))) mask += ch;
    try {
      att.direction = parse_direction(dir);
      att.mask = parse_mask(mask);
    } catch (const Error& e) {
      fail(e.what(), cur_.column + 1);
    }
    pos_ = close + 1;
    advance();
  }

  BoolExpr parse_or() {
    std::vector<BoolExpr> parts{parse_and()};
    while (cur_.kind == Tok::Punct && cur_.text == "|") {
      advance();
      parts.push_back(parse_and());
    }
    return BoolExpr::any(std::move(parts));
  }

  BoolExpr parse_and() {
    std::vector<BoolExpr> parts{parse_unary()};
    while (cur_.kind == Tok::Punct && cur_.text == "&") {
      advance();
      parts.push_back(parse_unary());
    }
    return BoolExpr::all(std::move(parts));
  }

  BoolExpr parse_unary() {
    if (cur_.kind == Tok::Punct && cur_.text == "!") {
      advance();
      return BoolExpr::negate(parse_unary());
    }
    if (cur_.kind == Tok::Punct && cur_.text == "(") {
      advance();
      BoolExpr e = parse_or();
      expect_punct(")");
      return e;
    }
    if (cur_.kind == Tok::Const) {
      bool v = cur_.text == "1";
      advance();
      return BoolExpr::constant(v);
    }
    if (cur_.kind == Tok::Ident || cur_.kind == Tok::Pred) {
      Token t = cur_;
      advance();
      expect_punct("(");
      Token var = expect(Tok::Ident, "'i' or 'j'");
      if (var.text != "i" && var.text != "j") fail("position must be i or j", var.column);
      expect_punct(")");
      Var v = var.text == "i" ? Var::I : Var::J;
      if (t.kind == Tok::Pred) return BoolExpr::pred(predicate_index(t), v);
      auto it = names_.find(t.text);
      if (it == names_.end()) fail("reference to undefined vector '" + t.text + "'", t.column);
      return BoolExpr::vec(it->second, v);
    }
    fail("expected an expression, found '" + cur_.text + "'", cur_.column);
  }

  std::size_t predicate_index(const Token& t) {
    for (std::size_t k = 0; k < predicates_.size(); ++k)
      if (predicates_[k] == t.text) return k;
    if (fixed_) fail("predicate family '" + t.text + "' is not declared", t.column);
    predicates_.push_back(t.text);
    return predicates_.size() - 1;
  }

  std::string_view line_;
  int lineno_;
  const std::map<std::string, std::size_t>& names_;
  std::vector<std::string>& predicates_;
  bool fixed_;
  std::size_t pos_ = 0;
  Token cur_{Tok::End, "", 0};
};

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

Program parse_program(std::string_view text) {
  std::optional<Alphabet> alphabet;
  std::vector<std::string> predicates;
  bool predicates_fixed = false;
  std::vector<Operation> ops;
  std::map<std::string, std::size_t> names;
  std::optional<std::pair<std::string, int>> output;
  std::optional<std::pair<std::vector<std::string>, int>> transduce;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (starts_with(line, "alphabet:")) {
      if (alphabet) throw ParseError("duplicate alphabet header", lineno, 1);
      if (!ops.empty()) throw ParseError("alphabet header must precede operations", lineno, 1);
      try {
        alphabet = Alphabet(split_ws(line.substr(9)));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), lineno, 1);
      }
      for (std::size_t k = 0; k < alphabet->size(); ++k) names["Q_" + alphabet->symbol(k)] = k;
      continue;
    }
    if (starts_with(line, "predicates:")) {
      if (!ops.empty() || predicates_fixed) throw ParseError("predicates header must precede operations", lineno, 1);
      predicates = split_ws(line.substr(11));
      predicates_fixed = true;
      continue;
    }
    if (starts_with(line, "output:")) {
      auto toks = split_ws(line.substr(7));
      if (toks.size() != 1) throw ParseError("expected 'output: NAME'", lineno, 1);
      if (output || transduce) throw ParseError("duplicate output header", lineno, 1);
      output = {toks[0], lineno};
      continue;
    }
    if (starts_with(line, "transduce:")) {
      if (output || transduce) throw ParseError("duplicate output header", lineno, 1);
      transduce = {split_ws(line.substr(10)), lineno};
      continue;
    }
    if (!alphabet) throw ParseError("missing alphabet header before first operation", lineno, 1);
    LineParser parser(raw, lineno, names, predicates, predicates_fixed);
    Operation op = parser.parse_op();
    if (names.count(op.name)) throw ParseError("vector name '" + op.name + "' is already defined", lineno, 1);
    names[op.name] = alphabet->size() + ops.size();
    ops.push_back(std::move(op));
  }
  if (!alphabet) throw ParseError("missing alphabet header", 0, 0);
  Output out;
  if (output) {
    auto it = names.find(output->first);
    if (it == names.end()) throw ParseError("output vector '" + output->first + "' is not defined", output->second, 1);
    out = AcceptOutput{it->second};
  } else if (transduce) {
    TransduceOutput t;
    for (const auto& entry : transduce->first) {
      auto arrow = entry.find("->");
      if (arrow == std::string::npos) throw ParseError("expected 'symbol->VECTOR'", transduce->second, 1);
      std::string sym = entry.substr(0, arrow);
      std::string vec = entry.substr(arrow + 2);
      auto it = names.find(vec);
      if (it == names.end()) throw ParseError("output vector '" + vec + "' is not defined", transduce->second, 1);
      t.map.emplace_back(sym, it->second);
    }
    out = t;
  } else {
    throw ParseError("missing 'output:' or 'transduce:' header", 0, 0);
  }
  try {
    return Program(*alphabet, predicates, std::move(ops), std::move(out));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

namespace {

void print_into(const Program& prog, const BoolExpr& e, std::string& out) {
  switch (e.kind()) {
    case BoolExpr::Kind::Const:
      out += e.value() ? "1" : "0";
      return;
    case BoolExpr::Kind::Atom: {
      const Atom& a = e.atom();
      if (a.kind == Atom::Kind::Vector) out += prog.vector_name(a.index);
      else out += "PRED:" + prog.predicate_families().at(a.index);
      out += a.var == Var::I ? "(i)" : "(j)";
      return;
    }
    case BoolExpr::Kind::Not: {
      out += "!";
      const BoolExpr& c = e.children()[0];
      bool paren = c.kind() == BoolExpr::Kind::And || c.kind() == BoolExpr::Kind::Or;
      if (paren) out += "(";
      print_into(prog, c, out);
      if (paren) out += ")";
      return;
    }
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or: {
      bool is_and = e.kind() == BoolExpr::Kind::And;
      const auto& cs = e.children();
      for (std::size_t k = 0; k < cs.size(); ++k) {
        if (k) out += is_and ? " & " : " | ";
        bool paren = cs[k].kind() == e.kind() || (is_and && cs[k].kind() == BoolExpr::Kind::Or);
        if (paren) out += "(";
        print_into(prog, cs[k], out);
        if (paren) out += ")";
      }
      return;
    }
  }
}

}  // namespace

std::string print_expr(const Program& prog, const BoolExpr& e) {
  std::string out;
  print_into(prog, e, out);
  return out;
}

std::string print_program(const Program& prog) {
  std::string out = "alphabet:";
  for (const auto& s : prog.alphabet().symbols()) out += " " + s;
  out += "\n";
  if (!prog.predicate_families().empty()) {
    out += "predicates:";
    for (const auto& p : prog.predicate_families()) out += " " + p;
    out += "\n";
  }
  for (const auto& op : prog.ops()) {
    out += op.name + "(i) := ";
    if (op.is_attention()) {
      const Attention& att = op.attention();
      out += "[" + direction_text(att.direction) + ", " + mask_text(att.mask) + "] ";
      out += print_expr(prog, att.score) + " ? " + print_expr(prog, att.value) + " : " +
             print_expr(prog, att.fallback);
    } else {
      out += print_expr(prog, op.positionwise().expr);
    }
    out += "\n";
  }
  if (prog.is_acceptor()) {
    out += "output: " + prog.vector_name(prog.output_vector()) + "\n";
  } else {
    out += "transduce:";
    for (const auto& [sym, vec] : std::get<TransduceOutput>(prog.output()).map)
      out += " " + sym + "->" + prog.vector_name(vec);
    out += "\n";
  }
  return out;
}

}  // namespace hardattn::brasp
