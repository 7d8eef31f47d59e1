#include "doctest.h"
#include "hardattn/brasp/eval.hpp"
#include "hardattn/brasp/normal_form.hpp"
#include "hardattn/brasp/text.hpp"
#include "hardattn/ltl/eval.hpp"
#include "hardattn/ltl/text.hpp"
#include "hardattn/ltl/translate.hpp"
#include "hardattn/testkit/corpus.hpp"
#include "hardattn/testkit/diff.hpp"
#include "hardattn/testkit/oracles.hpp"
#include "hardattn/testkit/random_program.hpp"
#include "support.hpp"

using namespace hardattn;
using namespace hardattn::testkit;

namespace {

bool in(const LanguageOracle& o, const Alphabet& sigma, const std::string& w) { return o.accepts(sigma.parse_word(w)); }

bool since_only(const ltl::Formula& f) {
  if (f.kind() == ltl::Formula::Kind::Until) return false;
  if (f.kind() == ltl::Formula::Kind::Since && !f.strict()) return false;
  for (const auto& c : f.children())
    if (!since_only(c)) return false;
  return true;
}

}  // namespace

TEST_CASE("word enumeration") {
  CHECK(count_words(2, 3) == 14);
  CHECK(count_words(3, 7) == 3279);
  std::vector<Word> seen;
  for_each_word(2, 2, [&](const Word& w) { seen.push_back(w); });
  CHECK(seen == std::vector<Word>{{0}, {1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(word_at(3, 3, 5) == Word{0, 1, 2});
}

TEST_CASE("diff_languages") {
  auto dyck = corpus_entry("dyck");
  auto report = diff_languages(recognizer(*dyck.program), recognizer(*dyck.dfa), dyck.alphabet, 8);
  CHECK(report.equal());
  CHECK(report.checked == 510);

  Alphabet ab({"a", "b"});
  Recognizer yes = [](const Word&) { return true; };
  Recognizer no = [](const Word&) { return false; };
  auto r = diff_languages(yes, no, ab, 1);
  CHECK(r.mismatch_count == 2);
  CHECK(r.mismatches[0].word == Word{0});
  CHECK(r.summary(ab).find("2 mismatches") == 0);

  auto phi2 = ltl::parse_formula_file(corpus_file("phi2.ltl"));
  CHECK(diff_languages(recognizer(phi2.formula, *phi2.alphabet),
                       recognizer(ltl::ltl_to_brasp(phi2.formula, *phi2.alphabet)), *phi2.alphabet, 7)
            .equal());

  // Parallel runs report the same shortest witnesses.
  Recognizer odd = [](const Word& w) { return w.size() % 2 == 1 && w[0] == 0; };
  DiffOptions serial;
  DiffOptions parallel;
  parallel.jobs = 4;
  auto s = diff_languages(odd, no, ab, 9, serial);
  auto p = diff_languages(odd, no, ab, 9, parallel);
  CHECK(s.mismatch_count == p.mismatch_count);
  REQUIRE(s.mismatches.size() == p.mismatches.size());
  for (std::size_t k = 0; k < s.mismatches.size(); ++k) CHECK(s.mismatches[k].word == p.mismatches[k].word);

  DiffOptions tight;
  tight.max_strings = 100;
  CHECK_THROWS_AS(diff_languages(yes, no, ab, 8, tight), Error);
}

TEST_CASE("stutter invariance") {
  Alphabet ab({"a", "b"});
  CHECK(stutter_invariant_up_to(a_plus_b_plus_star_oracle().accepts, ab, 8).invariant);

  auto r = stutter_invariant_up_to(ab_star_oracle().accepts, ab, 8);
  REQUIRE_FALSE(r.invariant);
  CHECK(r.witness->u.empty());
  CHECK(r.witness->a == 0);
  CHECK(r.witness->v == Word{1});
  CHECK(r.witness->short_in);
  CHECK_FALSE(r.witness->long_in);

  Alphabet lr({"l", "r"});
  auto d = stutter_invariant_up_to(dyck12_oracle().accepts, lr, 8);
  REQUIRE_FALSE(d.invariant);
  CHECK(describe(*d.witness, lr) == "u=ε a=l v=r: \"lr\" in L, \"llr\" not in L");
}

TEST_CASE("oracles") {
  Alphabet s = stair_alphabet();
  CHECK(in(stair_oracle(2), s, "acab"));
  CHECK_FALSE(in(stair_oracle(2), s, "abab"));
  CHECK(in(stair_oracle(1), s, "bcab"));
  CHECK_FALSE(in(stair_oracle(1), s, "bcb"));

  Alphabet h({"a", "b", "#"});
  CHECK(in(hash_am_hash_bm_hash_oracle(), h, "#aa#bb#"));
  CHECK(in(hash_am_hash_bm_hash_oracle(), h, "###"));
  CHECK_FALSE(in(hash_am_hash_bm_hash_oracle(), h, "#a#bb#"));
  CHECK(in(hash_b_hash_oracle(), h, "ab#bb#"));
  CHECK_FALSE(in(hash_b_hash_oracle(), h, "#ab#"));
  CHECK(in(exact_hash_a_hash_b_hash_oracle(), h, "#a##"));
  CHECK_FALSE(in(exact_hash_a_hash_b_hash_oracle(), h, "a#a##"));

  CHECK(recall_oracle({"a", "3", "b", "2", "b", "1", "a", "2", "c", "1", "a", "1", "c", "3"}) ==
        std::vector<std::string>{"a", "?", "b", "?", "b", "2", "a", "3", "c", "?", "a", "2", "c", "1"});
  CHECK_THROWS_AS(recall_oracle({"a"}), Error);
}

TEST_CASE("oracles agree with the DFAs") {
  for (const auto& e : corpus()) {
    if (!e.dfa) continue;
    CAPTURE(e.name);
    CHECK(diff_languages(e.oracle.accepts, recognizer(*e.dfa), e.alphabet, e.bound).equal());
  }
}

TEST_CASE("recall program matches the recall oracle") {
  auto prog = recall_program();
  Alphabet sigma = prog.alphabet();
  std::size_t checked = 0;
  // All key-value sequences of up to 4 pairs.
  for_each_word(9, 4, [&](const Word& pairs) {
    std::vector<std::string> tokens;
    for (Symbol p : pairs) {
      tokens.push_back(sigma.symbol(p / 3));
      tokens.push_back(sigma.symbol(3 + p % 3));
    }
    Word w;
    for (const auto& t : tokens) w.push_back(sigma.index_of(t));
    CHECK(brasp::transduce_tokens(prog, w) == recall_oracle(tokens));
    ++checked;
  });
  CHECK(checked == 9 + 81 + 729 + 6561);
}

TEST_CASE("stair formulas") {
  for (std::size_t k = 1; k <= 4; ++k) {
    CAPTURE(k);
    auto f = stair_formula(k);
    CHECK(ltl::temporal_depth(f) == k);
    CHECK(diff_languages(recognizer(f, stair_alphabet()), stair_oracle(k).accepts, stair_alphabet(), 7).equal());
  }
  CHECK(ltl::ltl_accepts(stair_formula(1), stair_alphabet(), stair_alphabet().parse_word("a")));
  CHECK_THROWS_AS(stair_formula(0), Error);
}

TEST_CASE("corpus artifacts agree pairwise") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    std::vector<std::pair<std::string, Recognizer>> artifacts;
    if (e.program) artifacts.emplace_back("program", recognizer(*e.program));
    if (e.formula) artifacts.emplace_back("formula", recognizer(*e.formula, e.alphabet));
    if (e.since_formula) artifacts.emplace_back("since", recognizer(*e.since_formula, e.alphabet));
    if (e.dfa) artifacts.emplace_back("dfa", recognizer(*e.dfa));
    std::size_t bound = std::min<std::size_t>(e.bound, e.alphabet.size() == 3 ? 7 : 8);
    if (e.alphabet.size() == 1) bound = e.bound;
    for (const auto& [name, r] : artifacts) {
      CAPTURE(name);
      auto report = diff_languages(r, e.oracle.accepts, e.alphabet, bound);
      CHECK_MESSAGE(report.equal(), report.summary(e.alphabet));
    }
  }
}

TEST_CASE("since-only formulas") {
  for (const auto& e : corpus()) {
    if (!e.since_formula) continue;
    CAPTURE(e.name);
    CHECK(since_only(*e.since_formula));
    auto prog = ltl::ltl_to_brasp(*e.since_formula, e.alphabet);
    for (const auto& op : prog.ops()) {
      if (!op.is_attention()) continue;
      CHECK(op.attention().direction == Direction::Rightmost);
      CHECK(op.attention().mask == MaskKind::FutureStrict);
    }
  }
}

TEST_CASE("corpus files are embedded") {
  auto names = corpus_files();
  CHECK(std::find(names.begin(), names.end(), "dyck.brasp") != names.end());
  CHECK(corpus_file("dyck.brasp") == test_support::read_data("dyck.brasp"));
  CHECK_THROWS_AS(corpus_file("missing"), Error);
  CHECK_THROWS_AS(corpus_entry("missing"), Error);
}

TEST_CASE("non-strict programs are stutter-invariant") {
  for (const auto& [name, prog] : nonstrict_variants()) {
    CAPTURE(name);
    CHECK(brasp::uses_only_nonstrict_masks(prog));
    CHECK(stutter_invariant_up_to(recognizer(prog), prog.alphabet(), 8).invariant);
  }
  Alphabet ab({"a", "b"});
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto prog = random_program(seed, ab);
    CAPTURE(brasp::print_program(prog));
    CHECK(prog.ops().size() <= 6);
    CHECK(brasp::uses_only_nonstrict_masks(prog));
    CHECK(stutter_invariant_up_to(recognizer(prog), ab, 8).invariant);
  }
  CHECK(random_program(7, ab) == random_program(7, ab));
}
