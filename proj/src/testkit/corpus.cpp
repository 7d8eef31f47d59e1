#include "hardattn/testkit/corpus.hpp"

#include <algorithm>

#include "hardattn/automata/io.hpp"
#include "hardattn/brasp/text.hpp"
#include "hardattn/core/error.hpp"
#include "hardattn/ltl/text.hpp"
#include "hardattn/ltl/translate.hpp"
#include "hardattn/testkit/oracles.hpp"

namespace hardattn::testkit {

namespace detail {
extern const std::vector<std::pair<std::string_view, std::string_view>> kCorpusFiles;
}  // namespace detail

std::vector<std::string> corpus_files() {
  std::vector<std::string> names;
  for (const auto& [name, text] : detail::kCorpusFiles) names.emplace_back(name);
  return names;
}

std::string corpus_file(std::string_view name) {
  for (const auto& [n, text] : detail::kCorpusFiles)
    if (n == name) return std::string(text);
  throw Error("no corpus file named '" + std::string(name) + "'");
}

namespace {

ltl::FormulaFile formula_file(std::string_view name) { return ltl::parse_formula_file(corpus_file(name)); }

CorpusEntry from_formula(std::string name, std::string description, std::string_view file, LanguageOracle oracle,
                         std::size_t bound, bool since_only) {
  auto f = formula_file(file);
  CorpusEntry e;
  e.name = std::move(name);
  e.description = std::move(description);
  e.alphabet = *f.alphabet;
  e.formula = f.formula;
  if (since_only) e.since_formula = f.formula;
  e.program = ltl::ltl_to_brasp(f.formula, e.alphabet);
  e.oracle = std::move(oracle);
  e.bound = bound;
  return e;
}

}  // namespace

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;

  {
    CorpusEntry e;
    e.name = "dyck";
    e.description = "Dyck-1 of depth at most 2 over l, r";
    e.program = brasp::parse_program(corpus_file("dyck.brasp"));
    e.alphabet = e.program->alphabet();
    e.formula = ltl::brasp_to_ltl(*e.program);
    e.since_formula = formula_file("dyck_since.ltl").formula;
    e.dfa = automata::parse_dfa(corpus_file("dyck.dfa.json"));
    e.oracle = dyck12_oracle();
    e.bound = 8;
    out.push_back(std::move(e));
  }
  out.push_back(from_formula("phi1", "strings ending in #", "phi1.ltl", ends_hash_oracle(), 7, true));
  out.push_back(from_formula("phi2", "strings ending in # b* #", "phi2.ltl", hash_b_hash_oracle(), 7, true));
  out.push_back(
      from_formula("phi3", "strings ending in # a* # b* #", "phi3.ltl", hash_a_hash_b_hash_oracle(), 7, true));
  out.push_back(
      from_formula("phi4", "exactly # a* # b* #", "phi4.ltl", exact_hash_a_hash_b_hash_oracle(), 7, true));
  out.push_back(from_formula("mid", "exactly # a^m # b^m #, with the Mid predicate", "mid.ltl",
                             hash_am_hash_bm_hash_oracle(), 9, true));
  {
    CorpusEntry e;
    e.name = "a3";
    e.description = "counter 0..3 over L, R, accepting at 0";
    e.dfa = automata::parse_dfa(corpus_file("a3.dfa.json"));
    e.cascade = automata::parse_cascade(corpus_file("a3.cascade.json"));
    e.alphabet = e.dfa->alphabet();
    e.program = automata::cascade_to_brasp(*e.cascade, *e.dfa);
    e.formula = ltl::brasp_to_ltl(*e.program);
    e.since_formula = e.formula;
    e.oracle = a3_oracle();
    e.bound = 10;
    out.push_back(std::move(e));
  }
  out.push_back(from_formula("ab_star", "(ab)*", "ab_star.ltl", ab_star_oracle(), 8, true));
  out.push_back(from_formula("apbp_star", "(a+b+)*", "apbp_star.ltl", a_plus_b_plus_star_oracle(), 8, true));
  {
    CorpusEntry e;
    e.name = "aa_star";
    e.description = "(aa)*, with the MOD[0,2] predicate";
    e.program = brasp::parse_program(corpus_file("aa_mod.brasp"));
    e.alphabet = e.program->alphabet();
    e.dfa = automata::parse_dfa(corpus_file("aa.dfa.json"));
    e.oracle = even_length_oracle();
    e.bound = 12;
    out.push_back(std::move(e));
  }
  for (std::size_t k = 1; k <= 4; ++k) {
    CorpusEntry e;
    e.name = "stair" + std::to_string(k);
    e.description = "a^" + std::to_string(k) + " after deleting c";
    e.alphabet = stair_alphabet();
    e.formula = stair_formula(k);
    e.since_formula = e.formula;
    e.program = ltl::ltl_to_brasp(*e.formula, e.alphabet);
    e.oracle = stair_oracle(k);
    e.bound = 7;
    out.push_back(std::move(e));
  }
  return out;
}

CorpusEntry corpus_entry(std::string_view name) {
  for (auto& e : corpus())
    if (e.name == name) return e;
  throw Error("no corpus entry named '" + std::string(name) + "'");
}

std::vector<std::pair<std::string, brasp::Program>> nonstrict_variants() {
  std::vector<std::pair<std::string, brasp::Program>> out;
  for (const auto& e : corpus())
    if (e.program && e.program->predicate_families().empty())
      out.emplace_back(e.name + "_nonstrict", brasp::to_nonstrict(*e.program));
  return out;
}

brasp::Program recall_program() { return brasp::parse_program(corpus_file("recall.brasp")); }

}  // namespace hardattn::testkit
