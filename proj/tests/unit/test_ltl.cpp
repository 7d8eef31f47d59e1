#include <random>
#include <regex>

#include "doctest.h"
#include "hardattn/brasp/eval.hpp"
#include "hardattn/brasp/normal_form.hpp"
#include "hardattn/brasp/text.hpp"
#include "hardattn/ltl/eval.hpp"
#include "hardattn/ltl/text.hpp"
#include "hardattn/ltl/translate.hpp"
#include "support.hpp"

using namespace hardattn;
using namespace hardattn::ltl;
using test_support::for_each_word;
using test_support::read_data;

namespace {

const Alphabet hash_sigma({"a", "b", "#"});

Formula phi(int k) { return parse_formula_file(read_data("phi" + std::to_string(k) + ".ltl")).formula; }

/// Definition-level semantics with explicit quantifiers over j.
bool holds(const Formula& f, const Alphabet& sigma, const Word& w, std::size_t i) {
  std::size_t n = w.size();
  switch (f.kind()) {
    case Formula::Kind::Const: return f.value();
    case Formula::Kind::Symbol: return sigma.symbol(w[i - 1]) == f.name();
    case Formula::Kind::Predicate: return false;
    case Formula::Kind::Not: return !holds(f.children()[0], sigma, w, i);
    case Formula::Kind::And:
      for (const auto& c : f.children())
        if (!holds(c, sigma, w, i)) return false;
      return true;
    case Formula::Kind::Or:
      for (const auto& c : f.children())
        if (holds(c, sigma, w, i)) return true;
      return false;
    case Formula::Kind::Since:
      for (std::size_t j = 1; j <= n; ++j) {
        if (f.strict() ? j >= i : j > i) continue;
        if (!holds(f.rhs(), sigma, w, j)) continue;
        bool gap = true;
        for (std::size_t k = j + 1; k < (f.strict() ? i : i + 1); ++k) gap = gap && holds(f.lhs(), sigma, w, k);
        if (gap) return true;
      }
      return false;
    case Formula::Kind::Until:
      for (std::size_t j = 1; j <= n; ++j) {
        if (f.strict() ? j <= i : j < i) continue;
        if (!holds(f.rhs(), sigma, w, j)) continue;
        bool gap = true;
        for (std::size_t k = (f.strict() ? i + 1 : i); k < j; ++k) gap = gap && holds(f.lhs(), sigma, w, k);
        if (gap) return true;
      }
      return false;
  }
  return false;
}

Formula random_formula(std::mt19937& rng, int depth = 0) {
  int choice = static_cast<int>(rng() % (depth >= 3 ? 3 : 9));
  switch (choice) {
    case 0: return Formula::constant(rng() % 2);
    case 1: return Formula::symbol("a");
    case 2: return Formula::symbol("b");
    case 3: return !random_formula(rng, depth + 1);
    case 4: return random_formula(rng, depth + 1) && random_formula(rng, depth + 1);
    case 5: return random_formula(rng, depth + 1) || random_formula(rng, depth + 1);
    case 6: return Formula::since(random_formula(rng, depth + 1), random_formula(rng, depth + 1), rng() % 2);
    default: return Formula::until(random_formula(rng, depth + 1), random_formula(rng, depth + 1), rng() % 2);
  }
}

bool program_matches_formula(const brasp::Program& p, const Formula& f, const Alphabet& sigma, std::size_t n) {
  bool ok = true;
  for_each_word(sigma.size(), n, [&](const Word& w) {
    if (brasp::accepts(p, w) != ltl_accepts(f, sigma, w)) ok = false;
  });
  return ok;
}

}  // namespace

TEST_CASE("parsing and printing") {
  Formula f = parse_formula("Q# & (Qb S' !Qa) | PRED:Mid U 1");
  CHECK(parse_formula(to_string(f)) == f);
  CHECK(to_string(parse_formula("Qa S Qb S Qa")) == "(Qa S (Qb S Qa))");
  CHECK(to_string(parse_formula("!Qa & Qb | Qa")) == "((!Qa & Qb) | Qa)");
  CHECK_THROWS_AS(parse_formula("Qa &"), ParseError);
  CHECK_THROWS_AS(parse_formula("(Qa"), ParseError);
  CHECK_THROWS_AS(parse_formula("Xa"), ParseError);
  CHECK_THROWS_AS(parse_formula_file("alphabet: a b\nQc\n"), ParseError);
  for (int k = 1; k <= 4; ++k) CHECK(parse_formula(to_string(phi(k))) == phi(k));
}

TEST_CASE("evaluation examples") {
  CHECK(ltl_eval(phi(1), hash_sigma, hash_sigma.parse_word("ab#"), 3));
  CHECK(ltl_accepts(phi(1), hash_sigma, hash_sigma.parse_word("ab#")));
  CHECK(ltl_eval(phi(4), hash_sigma, hash_sigma.parse_word("#a#b#"), 5));
  Alphabet ab({"a", "b"});
  CHECK(ltl_eval(parse_formula("Qa S Qb"), ab, ab.parse_word("ba"), 2));
  CHECK(ltl_accepts(phi(2), hash_sigma, hash_sigma.parse_word("a#bb#")));
  CHECK_FALSE(ltl_accepts(phi(2), hash_sigma, hash_sigma.parse_word("a#ba#")));
  CHECK(ltl_accepts(phi(1), hash_sigma, hash_sigma.parse_word("#")));
  CHECK_THROWS_AS(ltl_eval(phi(1), hash_sigma, hash_sigma.parse_word("ab"), 3), Error);
  CHECK_THROWS_AS(ltl_accepts(phi(1), hash_sigma, Word{}), Error);
}

TEST_CASE("formula languages match their regular expressions") {
  const char* patterns[] = {".*#", ".*#b*#", ".*#a*#b*#", "#a*#b*#"};
  for (int k = 1; k <= 4; ++k) {
    std::regex re(patterns[k - 1]);
    Formula f = phi(k);
    for_each_word(3, 7, [&](const Word& w) {
      REQUIRE(ltl_accepts(f, hash_sigma, w) == std::regex_match(hash_sigma.format_word(w), re));
    });
  }
}

TEST_CASE("evaluator agrees with the quantifier definition") {
  std::mt19937 rng(11);
  Alphabet ab({"a", "b"});
  for (int trial = 0; trial < 300; ++trial) {
    Formula f = random_formula(rng);
    for_each_word(2, 5, [&](const Word& w) {
      auto all = ltl_eval_all(f, ab, w);
      for (std::size_t i = 1; i <= w.size(); ++i) REQUIRE(all[i - 1] == holds(f, ab, w, i));
    });
  }
}

TEST_CASE("temporal depth") {
  CHECK(temporal_depth(parse_formula("Qa")) == 0);
  CHECK(temporal_depth(phi(3)) == 2);
  CHECK(temporal_depth(phi(4)) == 3);
  CHECK(temporal_depth(parse_formula("!(Qa U Qb) & (Qa S (1 S Qb))")) == 2);
}

TEST_CASE("ltl_to_brasp on since") {
  brasp::Program p = ltl_to_brasp(parse_formula("Qb S Q#"), hash_sigma);
  std::size_t attention = 0;
  for (const auto& op : p.ops()) {
    if (!op.is_attention()) continue;
    ++attention;
    const auto& att = op.attention();
    CHECK(att.direction == Direction::Rightmost);
    CHECK(att.mask == MaskKind::FutureStrict);
    std::size_t pb = *p.find_vector("P_b"), ph = *p.find_vector("P_#");
    using brasp::BoolExpr;
    using brasp::Var;
    CHECK(att.score == (!BoolExpr::vec(pb, Var::J) || BoolExpr::vec(ph, Var::J)));
    CHECK(att.value == BoolExpr::vec(ph, Var::J));
    CHECK(att.fallback == BoolExpr::constant(false));
  }
  CHECK(attention == 1);

  brasp::Program q = ltl_to_brasp(parse_formula("Qa"), hash_sigma);
  CHECK(q.ops().size() == 1);
  CHECK_FALSE(q.ops()[0].is_attention());
  CHECK(brasp::attention_depth(q) == 0);

  CHECK_THROWS_AS(ltl_to_brasp(parse_formula("Qa U Qb"), hash_sigma, {true}), Error);
  CHECK_NOTHROW(ltl_to_brasp(parse_formula("Qa S Qb"), hash_sigma, {true}));
}

TEST_CASE("ltl_to_brasp preserves language and depth") {
  for (int k = 1; k <= 4; ++k) {
    Formula f = phi(k);
    brasp::Program p = ltl_to_brasp(f, hash_sigma);
    CHECK(program_matches_formula(p, f, hash_sigma, 7));
    CHECK(brasp::attention_depth(p) == temporal_depth(f));
    for (const auto& op : p.ops())
      if (op.is_attention()) {
        CHECK(op.attention().direction == Direction::Rightmost);
        CHECK(op.attention().mask == MaskKind::FutureStrict);
      }
  }
  std::mt19937 rng(5);
  Alphabet ab({"a", "b"});
  for (int trial = 0; trial < 200; ++trial) {
    Formula f = random_formula(rng);
    brasp::Program p = ltl_to_brasp(f, ab);
    REQUIRE(program_matches_formula(p, f, ab, 6));
    REQUIRE(brasp::attention_depth(p) == temporal_depth(f));
  }
}

TEST_CASE("shared subformulas map to one vector") {
  brasp::Program p = ltl_to_brasp(parse_formula("(Qa S Qb) & !(Qa S Qb)"), Alphabet({"a", "b"}));
  std::size_t attention = 0;
  for (const auto& op : p.ops()) attention += op.is_attention();
  CHECK(attention == 1);
}

TEST_CASE("non-strict translation") {
  for (int k = 1; k <= 4; ++k) {
    Formula f = to_nonstrict(phi(k));
    brasp::Program p = ltl_to_brasp(f, hash_sigma);
    CHECK(brasp::uses_only_nonstrict_masks(p));
    CHECK(program_matches_formula(p, f, hash_sigma, 7));
  }
}

TEST_CASE("brasp_to_ltl") {
  Alphabet lr({"l", "r"});
  brasp::Program pred = brasp::parse_program("alphabet: l r\nP_l(i) := [rightmost, j<i] 1 ? Q_l(j) : 0\noutput: P_l\n");
  Formula f = brasp_to_ltl(pred);
  for_each_word(2, 6, [&](const Word& w) {
    bool previous_is_l = w.size() >= 2 && w[w.size() - 2] == 0;
    REQUIRE(ltl_accepts(f, lr, w) == previous_is_l);
  });

  brasp::Program copy = brasp::parse_program("alphabet: a b\nP(i) := Q_a(i)\noutput: P\n");
  CHECK(brasp_to_ltl(copy) == Formula::symbol("a"));

  brasp::Program dyck = brasp::parse_program(read_data("dyck.brasp"));
  Formula g = brasp_to_ltl(dyck);
  CHECK(program_matches_formula(dyck, g, lr, 8));
  brasp::Program back = ltl_to_brasp(g, lr);
  CHECK(program_matches_formula(back, g, lr, 8));

  brasp::Program recall = brasp::parse_program(read_data("recall.brasp"));
  CHECK_THROWS_AS(brasp_to_ltl(recall), Error);
}

TEST_CASE("brasp_to_ltl covers every mask and direction") {
  const char* masks[] = {"none", "j<i", "j>i", "j<=i", "j>=i"};
  Alphabet ab({"a", "b"});
  for (const char* m : masks)
    for (const char* d : {"leftmost", "rightmost"}) {
      std::string src = std::string("alphabet: a b\nX(i) := [") + d + ", " + m +
                        "] Q_a(j) & !Q_b(i) ? Q_b(j) | Q_a(i) : Q_a(i)\noutput: X\n";
      brasp::Program p = brasp::parse_program(src);
      Formula f = brasp_to_ltl(p);
      CHECK_MESSAGE(program_matches_formula(p, f, ab, 7), src);
    }
}

TEST_CASE("round trips preserve language") {
  for (int k = 1; k <= 4; ++k) {
    Formula f = phi(k);
    Formula back = brasp_to_ltl(ltl_to_brasp(f, hash_sigma));
    bool ok = true;
    for_each_word(3, 7, [&](const Word& w) {
      if (ltl_accepts(f, hash_sigma, w) != ltl_accepts(back, hash_sigma, w)) ok = false;
    });
    CHECK(ok);
  }
}

TEST_CASE("formula sizes") {
  Formula shared = Formula::symbol("a");
  for (int k = 0; k < 40; ++k) shared = shared && shared;
  CHECK(dag_size(shared) == 41);
  CHECK(tree_size(shared) > (std::uint64_t{1} << 40));
  CHECK_THROWS_AS(to_string(shared), Error);
}
