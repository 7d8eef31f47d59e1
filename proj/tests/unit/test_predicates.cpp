#include "doctest.h"
#include "hardattn/brasp/eval.hpp"
#include "hardattn/brasp/text.hpp"
#include "hardattn/core/error.hpp"
#include "hardattn/ltl/eval.hpp"
#include "hardattn/ltl/text.hpp"
#include "hardattn/predicates/family.hpp"
#include "hardattn/predicates/mod_gadget.hpp"
#include "hardattn/predicates/position_embedding.hpp"
#include "support.hpp"

using namespace hardattn;
using namespace hardattn::predicates;
using test_support::for_each_word;
using test_support::read_data;

namespace {

bool hash_am_hash_bm_hash(const std::string& w) {
  // # a^m # b^m #, m >= 0
  if (w.size() < 3 || w.front() != '#' || w.back() != '#') return false;
  auto mid = w.find('#', 1);
  if (mid == w.size() - 1) return false;
  std::string as = w.substr(1, mid - 1), bs = w.substr(mid + 1, w.size() - mid - 2);
  return as.size() == bs.size() && as.find_first_not_of('a') == std::string::npos &&
         bs.find_first_not_of('b') == std::string::npos;
}

}  // namespace

TEST_CASE("MOD predicates") {
  auto m12 = mod_predicate(1, 2);
  CHECK(m12(4, 1));
  CHECK_FALSE(m12(4, 2));
  CHECK(m12(4, 3));
  CHECK_FALSE(m12(4, 4));
  CHECK(mod_predicate(0, 3)(5, 3));
  CHECK(m12.name() == "MOD[1,2]");
  CHECK_THROWS_AS(mod_predicate(2, 2), Error);
  CHECK_THROWS_AS(mod_predicate(0, 0), Error);
  CHECK_THROWS_AS(m12(3, 4), Error);
  // independent of n
  for (std::size_t n = 5; n <= 9; ++n) CHECK(mod_predicate(2, 5)(n, 2));
}

TEST_CASE("Mid") {
  auto mid = mid_predicate();
  for (std::size_t i = 1; i <= 5; ++i) CHECK(mid(5, i) == (i == 3));
  for (std::size_t i = 1; i <= 4; ++i) CHECK_FALSE(mid(4, i));
  CHECK(mid(1, 1));
}

TEST_CASE("built-in registry and bindings") {
  CHECK(builtin_family("Mid").has_value());
  CHECK(builtin_family("MOD[3,4]")->name() == "MOD[3,4]");
  CHECK_FALSE(builtin_family("MOD[4,4]").has_value());
  CHECK_FALSE(builtin_family("Nope").has_value());
  PredicateBindings b;
  CHECK(b.can_resolve("Mid"));
  CHECK_FALSE(b.can_resolve("Even"));
  CHECK_THROWS_AS(b.resolve("Even"), Error);
  b.bind(PredicateFamily("Mid", [](std::size_t, std::size_t) { return false; }));
  CHECK_FALSE(b.resolve("Mid")(5, 3));
  auto table = predicate_table({"MOD[0,2]", "Mid"}, 3, PredicateBindings{});
  CHECK(table == std::vector<std::vector<bool>>{{false, true, false}, {false, true, false}});
}

TEST_CASE("table families") {
  auto f = load_table_family("T", "# n i bit\n2 1 1\n2 2 0\n");
  CHECK(f(2, 1));
  CHECK_FALSE(f(2, 2));
  CHECK_THROWS_AS(f(3, 1), Error);
  CHECK_THROWS_AS(load_table_family("T", "2 3 1\n"), ParseError);
  CHECK_THROWS_AS(load_table_family("T", "2 1 5\n"), ParseError);
}

TEST_CASE("LTL with Mid recognizes #a^m#b^m#") {
  auto f = ltl::parse_formula_file(read_data("mid.ltl"));
  const Alphabet& sigma = *f.alphabet;
  CHECK(ltl::ltl_accepts(f.formula, sigma, sigma.parse_word("#aa#bb#")));
  CHECK_FALSE(ltl::ltl_accepts(f.formula, sigma, sigma.parse_word("#a#bb#")));
  std::size_t bad = 0;
  for_each_word(sigma.size(), 9, [&](const Word& w) {
    if (ltl::ltl_accepts(f.formula, sigma, w) != hash_am_hash_bm_hash(sigma.format_word(w))) ++bad;
  });
  CHECK(bad == 0);
}

TEST_CASE("B-RASP with MOD recognizes (aa)*") {
  auto p = brasp::parse_program(read_data("aa_mod.brasp"));
  CHECK(brasp::accepts(p, p.alphabet().parse_word("aaaa")));
  CHECK_FALSE(brasp::accepts(p, p.alphabet().parse_word("aaa")));
  for (std::size_t n = 1; n <= 12; ++n) CHECK(brasp::accepts(p, Word(n, 0)) == (n % 2 == 0));
}

TEST_CASE("sinusoidal embeddings") {
  auto pe = sinusoidal_pe({Rational(1, 4)});
  CHECK(pe.dim() == 2);
  auto v = pe.rational_at(10, 1);
  CHECK(v == std::vector<Rational>{Rational(1), Rational(0)});
  CHECK(pe.image().size() == 4);
  for (std::size_t i = 1; i <= 12; ++i) CHECK(pe.at(20, i) == pe.at(20, i + 4));

  auto third = sinusoidal_pe({Rational(1, 3)});
  CHECK_THROWS_AS(third.rational_at(5, 1), Error);
  CHECK(third.image().size() == 3);
  // cos(2pi/12) > 1/2 and sin(2pi/3) = cos(2pi/12)
  CHECK(PeScalar::cos_turns(Rational(1, 12)) > PeScalar::rational(Rational(1, 2)));
  CHECK(PeScalar::sin_turns(Rational(1, 3)) == PeScalar::cos_turns(Rational(1, 12)));
  CHECK(PeScalar::cos_turns(Rational(1, 8)) < PeScalar::cos_turns(Rational(1, 12)));

  // Pigeonhole: more positions than image values forces a collision.
  auto seven = sinusoidal_pe({Rational(1, 7), Rational(2, 7)});
  std::size_t size = seven.image().size();
  bool collision = false;
  for (std::size_t i = 1; i <= size + 1 && !collision; ++i)
    for (std::size_t j = i + 1; j <= size + 1; ++j)
      if (seven.at(size + 1, i) == seven.at(size + 1, j)) collision = true;
  CHECK(collision);
}

TEST_CASE("MOD ReLU gadget") {
  auto half = sinusoidal_pe({Rational(1, 2)});
  auto g = mod_relu_gadget(0, 2);
  CHECK(g.evaluate(half, 5, 2));
  CHECK_FALSE(g.evaluate(half, 5, 3));
  CHECK(g.exact_output(PeScalar::rational(0), PeScalar::rational(1)) == Rational(1));

  auto one = sinusoidal_pe({Rational(1)});
  for (std::size_t i = 1; i <= 5; ++i) CHECK(mod_relu_gadget(0, 1).evaluate(one, 5, i));

  for (unsigned m : {2u, 3u, 4u}) {
    auto pe = sinusoidal_pe({Rational(1, static_cast<long>(m))});
    for (unsigned r = 0; r < m; ++r)
      for (std::size_t i = 1; i <= 24; ++i) {
        CAPTURE(m);
        CAPTURE(r);
        CAPTURE(i);
        CHECK(mod_relu_gadget(r, m).evaluate(pe, 24, i) == mod_predicate(r, m)(24, i));
      }
  }
  auto five = sinusoidal_pe({Rational(1, 5)});
  for (std::size_t i = 1; i <= 10; ++i) CHECK(mod_relu_gadget(2, 5).evaluate(five, 10, i) == (i % 5 == 2));
  CHECK_THROWS_AS(mod_relu_gadget(0, 3).evaluate(half, 4, 1), Error);
}

TEST_CASE("PE values bound as predicates") {
  auto constant = bind_pe_as_predicates(constant_pe({Rational(3), Rational(5)}));
  for (const auto& f : constant.families)
    for (std::size_t i = 1; i <= 6; ++i) CHECK(f(6, i) == f(6, 1));

  auto half = bind_pe_as_predicates(sinusoidal_pe({Rational(1, 2)}));
  // sin is 0 everywhere; cos alternates -1, 1.
  REQUIRE(half.families.size() == 2 * half.bits);
  std::vector<std::vector<bool>> rows;
  for (const auto& f : half.families) {
    std::vector<bool> row;
    for (std::size_t i = 1; i <= 16; ++i) row.push_back(f(16, i));
    rows.push_back(row);
  }
  bool some_parity = false;
  for (const auto& row : rows) {
    bool is_odd = true, is_even = true, is_const = true;
    for (std::size_t i = 1; i <= 16; ++i) {
      is_odd = is_odd && row[i - 1] == mod_predicate(1, 2)(16, i);
      is_even = is_even && row[i - 1] == mod_predicate(0, 2)(16, i);
      is_const = is_const && row[i - 1] == row[0];
    }
    CHECK((is_odd || is_even || is_const));
    some_parity = some_parity || is_odd || is_even;
  }
  CHECK(some_parity);
}
