#include "hardattn/testkit/oracles.hpp"

#include <algorithm>
#include <functional>

#include "hardattn/core/error.hpp"

namespace hardattn::testkit {

namespace {

/// Oracle reading symbol names, so it is independent of symbol order.
LanguageOracle oracle(std::string name, Alphabet alphabet,
                      std::function<bool(const std::vector<std::string>&)> fn) {
  return {std::move(name), [alphabet = std::move(alphabet), fn = std::move(fn)](const Word& w) {
            std::vector<std::string> s;
            s.reserve(w.size());
            for (Symbol x : w) s.push_back(alphabet.symbol(x));
            return fn(s);
          }};
}

const Alphabet kHash({"a", "b", "#"});
const Alphabet kAB({"a", "b"});

/// Matches # x* # y* ... # at positions [from, end) of s, for the given run
/// letters, exactly (no prefix).
bool exact_runs(const std::vector<std::string>& s, std::size_t from, const std::vector<std::string>& runs) {
  std::size_t p = from;
  if (p >= s.size() || s[p] != "#") return false;
  ++p;
  for (const auto& letter : runs) {
    while (p < s.size() && s[p] == letter) ++p;
    if (p >= s.size() || s[p] != "#") return false;
    ++p;
  }
  return p == s.size();
}

/// Some suffix of s is # x* # y* ... #.
bool suffix_runs(const std::vector<std::string>& s, const std::vector<std::string>& runs) {
  for (std::size_t from = 0; from < s.size(); ++from)
    if (exact_runs(s, from, runs)) return true;
  return false;
}

}  // namespace

LanguageOracle dyck12_oracle() {
  return oracle("dyck12", Alphabet({"l", "r"}), [](const auto& s) {
    int depth = 0;
    for (const auto& x : s) {
      depth += x == "l" ? 1 : -1;
      if (depth < 0 || depth > 2) return false;
    }
    return depth == 0;
  });
}

LanguageOracle ends_hash_oracle() {
  return oracle("ends-#", kHash, [](const auto& s) { return s.back() == "#"; });
}

LanguageOracle hash_b_hash_oracle() {
  return oracle("#b*#", kHash, [](const auto& s) { return suffix_runs(s, {"b"}); });
}

LanguageOracle hash_a_hash_b_hash_oracle() {
  return oracle("#a*#b*#", kHash, [](const auto& s) { return suffix_runs(s, {"a", "b"}); });
}

LanguageOracle exact_hash_a_hash_b_hash_oracle() {
  return oracle("exact #a*#b*#", kHash, [](const auto& s) { return exact_runs(s, 0, {"a", "b"}); });
}

LanguageOracle hash_am_hash_bm_hash_oracle() {
  return oracle("#a^m#b^m#", kHash, [](const auto& s) {
    if (!exact_runs(s, 0, {"a", "b"})) return false;
    std::size_t a = 0, b = 0;
    for (const auto& x : s) {
      if (x == "a") ++a;
      if (x == "b") ++b;
    }
    return a == b;
  });
}

LanguageOracle ab_star_oracle() {
  return oracle("(ab)*", kAB, [](const auto& s) {
    if (s.size() % 2 != 0) return false;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] != (i % 2 == 0 ? "a" : "b")) return false;
    return true;
  });
}

LanguageOracle a_plus_b_plus_star_oracle() {
  return oracle("(a+b+)*", kAB, [](const auto& s) { return s.front() == "a" && s.back() == "b"; });
}

LanguageOracle even_length_oracle() {
  return oracle("(aa)*", Alphabet({"a"}), [](const auto& s) { return s.size() % 2 == 0; });
}

LanguageOracle a3_oracle() {
  return oracle("A3", Alphabet({"L", "R"}), [](const auto& s) {
    int q = 0;
    for (const auto& x : s) q = x == "R" ? std::min(q + 1, 3) : std::max(q - 1, 0);
    return q == 0;
  });
}

Alphabet stair_alphabet() { return Alphabet({"a", "b", "c"}); }

LanguageOracle stair_oracle(std::size_t k) {
  return oracle("STAIR_" + std::to_string(k), stair_alphabet(), [k](const auto& s) {
    std::size_t run = 0;
    for (const auto& x : s) {
      if (x == "c") continue;
      run = x == "a" ? run + 1 : 0;
      if (run >= k) return true;
    }
    return false;
  });
}

ltl::Formula stair_formula(std::size_t k) {
  if (k == 0) throw Error("STAIR_k needs k >= 1");
  using ltl::Formula;
  Formula gamma = Formula::symbol("a");
  for (std::size_t m = 2; m <= k; ++m)
    gamma = Formula::symbol("a") && Formula::since(Formula::symbol("c"), gamma);
  return gamma || Formula::since(Formula::constant(true), gamma);
}

std::vector<std::string> recall_oracle(const std::vector<std::string>& tokens) {
  auto is_key = [](const std::string& t) { return t == "a" || t == "b" || t == "c"; };
  auto is_value = [](const std::string& t) { return t == "1" || t == "2" || t == "3"; };
  if (tokens.size() % 2 != 0) throw Error("recall input must be key-value pairs");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i % 2 == 0) {
      if (!is_key(tokens[i])) throw Error("recall input must be key-value pairs");
      out.push_back(tokens[i]);
      continue;
    }
    if (!is_value(tokens[i])) throw Error("recall input must be key-value pairs");
    std::string answer = "?";
    for (std::size_t j = i - 1; j >= 2; j -= 2)
      if (tokens[j - 2] == tokens[i - 1]) {
        answer = tokens[j - 1];
        break;
      }
    out.push_back(answer);
  }
  return out;
}

}  // namespace hardattn::testkit
