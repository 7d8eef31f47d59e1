#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hardattn/core/error.hpp"

namespace hardattn {

/// Index of a symbol inside its alphabet.
using Symbol = std::size_t;
using Word = std::vector<Symbol>;

/// True for characters allowed inside symbols and vector names.
bool is_name_char(char c);

/// A symbol is a non-empty run of name characters.
bool is_valid_symbol(std::string_view token);

/// Ordered set of distinct symbols; the order fixes one-hot indices.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const std::string& symbol(Symbol s) const;
  const std::vector<std::string>& symbols() const { return symbols_; }

  std::optional<Symbol> find(std::string_view token) const;
  Symbol index_of(std::string_view token) const;

  /// True when every symbol is one character long.
  bool single_char() const;

  /// Splits text into symbols: per character when all symbols are single
  /// characters, otherwise on whitespace.
  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& word) const;

  bool operator==(const Alphabet& other) const = default;

 private:
  std::vector<std::string> symbols_;
};

/// Formats a sequence of output tokens the same way format_word does.
std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace hardattn
