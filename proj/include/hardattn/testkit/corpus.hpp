#pragma once

#include <optional>
#include <utility>
#include <string>
#include <string_view>
#include <vector>

#include "hardattn/automata/cascade.hpp"
#include "hardattn/automata/dfa.hpp"
#include "hardattn/brasp/program.hpp"
#include "hardattn/core/alphabet.hpp"
#include "hardattn/ltl/formula.hpp"
#include "hardattn/testkit/recognizer.hpp"

namespace hardattn::testkit {

/// One language with every artifact the corpus has for it. Artifacts that
/// are present recognize the oracle's language.
struct CorpusEntry {
  std::string name;
  std::string description;
  Alphabet alphabet;
  std::optional<brasp::Program> program;
  std::optional<ltl::Formula> formula;
  /// A formula using since only (no until, strict), when one exists.
  std::optional<ltl::Formula> since_formula;
  std::optional<automata::Dfa> dfa;
  std::optional<automata::Cascade> cascade;
  LanguageOracle oracle;
  /// Diff bound used for exhaustive checks.
  std::size_t bound = 7;
};

/// Names of the embedded data files.
std::vector<std::string> corpus_files();
/// Contents of an embedded data file; throws for unknown names.
std::string corpus_file(std::string_view name);

/// The recognizer corpus: Dyck, phi1-phi4, Mid, A3, (ab)*, (aa)*,
/// (a+b+)*, STAIR_1..STAIR_4.
std::vector<CorpusEntry> corpus();
CorpusEntry corpus_entry(std::string_view name);

/// Programs of the corpus with strict masks replaced by non-strict ones,
/// keyed by entry name.
std::vector<std::pair<std::string, brasp::Program>> nonstrict_variants();

/// The associative recall program.
brasp::Program recall_program();

}  // namespace hardattn::testkit
