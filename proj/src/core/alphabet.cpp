#include "hardattn/core/alphabet.hpp"

#include <cctype>
#include <set>

namespace hardattn {

bool is_name_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '_': case '?': case '#': case '\'': case '$': case '.':
    case '@': case '%': case '^': case '~': case '+': case '*':
      return true;
    default:
      return false;
  }
}

bool is_valid_symbol(std::string_view token) {
  if (token.empty()) return false;
  for (char c : token)
    if (!is_name_char(c)) return false;
  return true;
}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw Error("alphabet must not be empty");
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (!is_valid_symbol(s)) throw Error("invalid alphabet symbol '" + s + "'");
    if (!seen.insert(s).second) throw Error("duplicate alphabet symbol '" + s + "'");
  }
}

const std::string& Alphabet::symbol(Symbol s) const {
  if (s >= symbols_.size()) throw Error("symbol index out of range");
  return symbols_[s];
}

std::optional<Symbol> Alphabet::find(std::string_view token) const {
  for (std::size_t k = 0; k < symbols_.size(); ++k)
    if (symbols_[k] == token) return k;
  return std::nullopt;
}

Symbol Alphabet::index_of(std::string_view token) const {
  auto s = find(token);
  if (!s) throw Error("unknown symbol '" + std::string(token) + "'");
  return *s;
}

bool Alphabet::single_char() const {
  for (const auto& s : symbols_)
    if (s.size() != 1) return false;
  return true;
}

Word Alphabet::parse_word(std::string_view text) const {
  Word out;
  if (single_char()) {
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      out.push_back(index_of(std::string_view(&c, 1)));
    }
    return out;
  }
  std::size_t k = 0;
  while (k < text.size()) {
    while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
    std::size_t start = k;
    while (k < text.size() && !std::isspace(static_cast<unsigned char>(text[k]))) ++k;
    if (k > start) out.push_back(index_of(text.substr(start, k - start)));
  }
  return out;
}

std::string Alphabet::format_word(const Word& word) const {
  std::vector<std::string> tokens;
  tokens.reserve(word.size());
  for (Symbol s : word) tokens.push_back(symbol(s));
  return join_tokens(tokens);
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  bool single = true;
  for (const auto& t : tokens)
    if (t.size() != 1) single = false;
  std::string out;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (!single && k > 0) out += ' ';
    out += tokens[k];
  }
  return out;
}

}  // namespace hardattn
