#include <random>
#include <set>

#include "doctest.h"
#include "hardattn/automata/cascade.hpp"
#include "hardattn/automata/io.hpp"
#include "hardattn/brasp/eval.hpp"
#include "hardattn/brasp/text.hpp"
#include "hardattn/core/error.hpp"
#include "support.hpp"

using namespace hardattn;
using namespace hardattn::automata;
using test_support::for_each_word;
using test_support::read_data;

namespace {

Dfa a3() { return parse_dfa(read_data("a3.dfa.json")); }
Cascade a3_cascade() { return parse_cascade(read_data("a3.cascade.json")); }

std::vector<std::string> names(const Dfa& a, const std::vector<State>& qs) {
  std::vector<std::string> out;
  for (State q : qs) out.push_back(a.state_name(q));
  return out;
}

/// Searches word transformations for a subset of states that some word
/// permutes non-trivially.
bool counter_free_by_subsets(const Dfa& a) {
  std::size_t n = a.num_states();
  std::vector<State> id(n);
  for (State q = 0; q < n; ++q) id[q] = q;
  std::set<std::vector<State>> seen{id};
  std::vector<std::vector<State>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<State>> next;
    for (const auto& f : frontier)
      for (Symbol s = 0; s < a.alphabet().size(); ++s) {
        std::vector<State> g(n);
        for (State q = 0; q < n; ++q) g[q] = a.step(f[q], s);
        if (seen.insert(g).second) next.push_back(g);
      }
    frontier = std::move(next);
  }
  for (const auto& f : seen)
    for (unsigned subset = 1; subset < (1u << n); ++subset) {
      unsigned image = 0;
      bool moves = false;
      for (State q = 0; q < n; ++q)
        if (subset >> q & 1) {
          image |= 1u << f[q];
          moves = moves || f[q] != q;
        }
      if (image == subset && moves) return false;
    }
  return true;
}

Dfa random_dfa(std::mt19937& rng, std::size_t states, std::size_t symbols) {
  std::vector<std::string> sym_names, state_names;
  for (std::size_t a = 0; a < symbols; ++a) sym_names.push_back(std::string(1, static_cast<char>('a' + a)));
  for (std::size_t q = 0; q < states; ++q) state_names.push_back("q" + std::to_string(q));
  std::vector<std::vector<State>> delta(states, std::vector<State>(symbols));
  for (auto& row : delta)
    for (auto& r : row) r = rng() % states;
  return Dfa(Alphabet(sym_names), state_names, delta, 0, {State(rng() % states)});
}

}  // namespace

TEST_CASE("run_dfa") {
  Dfa a = a3();
  auto t = run_dfa(a, a.alphabet().parse_word("RRL"));
  CHECK(names(a, t.states) == std::vector<std::string>{"0", "1", "2", "1"});
  CHECK_FALSE(t.accepted);
  auto empty = run_dfa(a, Word{});
  CHECK(empty.states == std::vector<State>{a.start()});
  CHECK(empty.accepted);
  Dfa dyck = parse_dfa(read_data("dyck.dfa.json"));
  CHECK(dfa_accepts(dyck, dyck.alphabet().parse_word("llrr")));
  CHECK_FALSE(dfa_accepts(dyck, dyck.alphabet().parse_word("lllrrr")));
  CHECK_THROWS_AS(run_dfa(a, Word{0, 7}), Error);
  CHECK_THROWS_AS(a.alphabet().parse_word("RX"), Error);
}

TEST_CASE("counter-freeness") {
  CHECK(is_counter_free(a3()));
  CHECK_FALSE(is_counter_free(parse_dfa(read_data("aa.dfa.json"))));
  CHECK(is_counter_free(parse_dfa(read_data("dyck.dfa.json"))));
  Dfa one(Alphabet({"a", "b"}), {"s"}, {{0, 0}}, 0, {0});
  CHECK(is_counter_free(one));

  for (const char* file : {"a3.dfa.json", "aa.dfa.json", "dyck.dfa.json"}) {
    Dfa d = parse_dfa(read_data(file));
    CHECK_MESSAGE(is_counter_free(d) == counter_free_by_subsets(d), file);
  }
  CHECK(is_counter_free(cascade_to_global(a3_cascade())) == counter_free_by_subsets(cascade_to_global(a3_cascade())));

  std::mt19937 rng(3);
  int free_count = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Dfa d = random_dfa(rng, 2 + trial % 4, 1 + trial % 3);
    bool cf = is_counter_free(d);
    free_count += cf;
    REQUIRE(cf == counter_free_by_subsets(d));
  }
  CHECK(free_count > 0);
  CHECK(free_count < 400);
}

TEST_CASE("identity-reset automata") {
  CHECK(is_identity_reset(cascade_to_global(parse_cascade(read_data("a3.cascade.json")))) == false);
  CHECK_FALSE(is_identity_reset(a3()));
  CHECK_THROWS_AS(IdentityResetAutomaton{a3()}, Error);
  Dfa b(Alphabet({"a", "b"}), {"q0", "q1"}, {{1, 0}, {1, 1}}, 0, {});
  IdentityResetAutomaton ir(b);
  CHECK(ir.resets_to(1) == std::vector<Symbol>{0});
  CHECK(ir.resets_to(0).empty());
  CHECK(ir.reset_symbols() == std::vector<Symbol>{0});
}

TEST_CASE("global automaton of the cascade") {
  Cascade c = a3_cascade();
  Dfa g = cascade_to_global(c);
  CHECK(g.num_states() == 8);
  CHECK(g.state_name(g.start()) == "ACE");
  CHECK(g.state_name(g.step(g.start(), g.alphabet().index_of("R"))) == "BCE");
  auto t = run_dfa(g, g.alphabet().parse_word("RRRR"));
  CHECK(g.state_name(t.states.back()) == "BDF");
  CHECK(c.homomorphism()->at("BDF") == "3");

  Dfa b(Alphabet({"a", "b"}), {"q0", "q1"}, {{1, 0}, {1, 1}}, 0, {});
  Dfa single = cascade_to_global(identity_cascade(b));
  CHECK(single == b);
}

TEST_CASE("homomorphism check") {
  Cascade c = a3_cascade();
  CHECK(check_homomorphism(c, a3()));

  auto hom = *c.homomorphism();
  hom["ACE"] = "1";
  Cascade bad(c.alphabet(), c.factors(), hom);
  CHECK_FALSE(check_homomorphism(bad, a3()));

  hom.erase("ACE");
  Cascade partial(c.alphabet(), c.factors(), hom);
  CHECK_THROWS_AS(check_homomorphism(partial, a3()), Error);

  Dfa b(Alphabet({"a", "b"}), {"q0", "q1"}, {{1, 0}, {1, 1}}, 0, {1});
  CHECK(check_homomorphism(identity_cascade(b), b));
  CHECK_THROWS_AS(identity_cascade(a3()), Error);
}

TEST_CASE("identity_reset_to_brasp") {
  Dfa b(Alphabet({"a", "b"}), {"q0", "q1"}, {{1, 0}, {1, 1}}, 0, {});
  IdentityResetAutomaton ir(b);
  brasp::Program p = identity_reset_to_brasp(ir, 0);
  std::size_t b0 = *p.find_vector("B_q0"), b1 = *p.find_vector("B_q1");
  auto t = brasp::eval(p, b.alphabet().parse_word("ba"));
  CHECK(t.at(b0, 1));
  CHECK(t.at(b0, 2));
  CHECK_FALSE(t.at(b1, 2));
  auto u = brasp::eval(p, b.alphabet().parse_word("baa"));
  CHECK(u.at(b1, 3));
  CHECK_FALSE(u.at(b0, 3));

  for (State s = 0; s < 2; ++s) {
    brasp::Program q = identity_reset_to_brasp(ir, s);
    for_each_word(2, 8, [&](const Word& w) {
      auto trace = run_dfa(b, w, s);
      auto rows = brasp::eval(q, w);
      for (std::size_t i = 1; i <= w.size(); ++i)
        for (State r = 0; r < 2; ++r)
          REQUIRE(rows.at(*q.find_vector("B_" + b.state_name(r)), i) == (trace.states[i - 1] == r));
    });
  }

  Dfa idle(Alphabet({"a", "b"}), {"s", "t"}, {{0, 0}, {1, 1}}, 0, {});
  brasp::Program idle_prog = identity_reset_to_brasp(IdentityResetAutomaton(idle), 0);
  for_each_word(2, 5, [&](const Word& w) {
    auto rows = brasp::eval(idle_prog, w);
    for (std::size_t i = 1; i <= w.size(); ++i) {
      REQUIRE(rows.at(*idle_prog.find_vector("B_s"), i));
      REQUIRE_FALSE(rows.at(*idle_prog.find_vector("B_t"), i));
    }
  });

  Cascade c3 = a3_cascade();
  const IdentityResetAutomaton& first = c3.factors()[0];
  brasp::Program f = identity_reset_to_brasp(first, 0);
  Word rl = first.dfa().alphabet().parse_word("RL");
  CHECK(names(first.dfa(), run_dfa(first.dfa(), rl).states) == std::vector<std::string>{"A", "B", "A"});
  auto rows = brasp::eval(f, rl);
  CHECK(rows.at(*f.find_vector("B_A"), 1));
  CHECK(rows.at(*f.find_vector("B_B"), 2));
}

TEST_CASE("cascade_to_brasp simulates A3") {
  Dfa a = a3();
  Cascade c = a3_cascade();
  brasp::Program p = cascade_to_brasp(c, a);
  CHECK(p.vector_name(p.output_vector()) == "Y_0");
  std::size_t mismatches = 0, accepted = 0;
  for_each_word(2, 10, [&](const Word& w) {
    bool expect = dfa_accepts(a, w);
    accepted += expect;
    if (brasp::accepts(p, w) != expect) ++mismatches;
  });
  CHECK(mismatches == 0);
  CHECK(accepted > 0);

  auto t = brasp::eval(p, a.alphabet().parse_word("R"));
  for (const char* r : {"0", "1", "2", "3"})
    CHECK(t.at(*p.find_vector(std::string("Y_") + r), 1) == (std::string(r) == "1"));
  CHECK(t.at(*p.find_vector("A_0"), 1));

  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    Word w(1 + rng() % 50);
    for (auto& s : w) s = rng() % 2;
    auto trace = run_dfa(a, w);
    auto rows = brasp::eval(p, w);
    for (std::size_t i = 1; i <= w.size(); ++i)
      for (State r = 0; r < 4; ++r)
        REQUIRE(rows.at(*p.find_vector("A_" + a.state_name(r)), i) == (trace.states[i - 1] == r));
  }

  auto hom = *c.homomorphism();
  hom["ACE"] = "1";
  CHECK_THROWS_AS(cascade_to_brasp(Cascade(c.alphabet(), c.factors(), hom), a), Error);
}

TEST_CASE("global trace composed with the homomorphism follows the automaton") {
  Dfa a = a3();
  Cascade c = a3_cascade();
  Dfa g = cascade_to_global(c);
  std::mt19937 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    Word w(rng() % 51);
    for (auto& s : w) s = rng() % 2;
    auto tg = run_dfa(g, w), ta = run_dfa(a, w);
    for (std::size_t k = 0; k < tg.states.size(); ++k)
      REQUIRE(c.homomorphism()->at(g.state_name(tg.states[k])) == a.state_name(ta.states[k]));
  }
}

TEST_CASE("single-factor cascade") {
  Dfa b(Alphabet({"a", "b"}), {"q0", "q1"}, {{1, 0}, {1, 1}}, 0, {1});
  brasp::Program full = cascade_to_brasp(identity_cascade(b), b);
  brasp::Program frag = identity_reset_to_brasp(IdentityResetAutomaton(b), 0);
  for_each_word(2, 7, [&](const Word& w) {
    REQUIRE(brasp::accepts(full, w) == dfa_accepts(b, w));
    auto x = brasp::eval(full, w), y = brasp::eval(frag, w);
    for (const auto& q : b.states())
      REQUIRE(x.row_bits(*full.find_vector("B1_" + q)) == y.row_bits(*frag.find_vector("B_" + q)));
  });
}

TEST_CASE("Dyck program agrees with its automaton") {
  Dfa d = parse_dfa(read_data("dyck.dfa.json"));
  brasp::Program p = brasp::parse_program(read_data("dyck.brasp"));
  std::size_t mismatches = 0;
  for_each_word(2, 8, [&](const Word& w) { mismatches += brasp::accepts(p, w) != dfa_accepts(d, w); });
  CHECK(mismatches == 0);
}

TEST_CASE("file formats") {
  Dfa a = a3();
  CHECK(parse_dfa(print_dfa(a)) == a);
  Cascade c = a3_cascade();
  Cascade back = parse_cascade(print_cascade(c));
  CHECK(cascade_to_global(back) == cascade_to_global(c));
  CHECK(back.homomorphism() == c.homomorphism());

  CHECK_THROWS_AS(parse_dfa("{"), Error);
  CHECK_THROWS_AS(parse_dfa(R"({"alphabet":["a"],"states":["p"],"start":"p","finals":[],"transitions":[]})"), Error);
  CHECK_THROWS_AS(parse_dfa(R"({"alphabet":["a"],"states":["p"],"start":"x","finals":[],"transitions":[["p","a","p"]]})"),
                  Error);
  CHECK_THROWS_AS(parse_cascade(R"({"alphabet":["a","b"],"factors":[{"states":["p","q"],"start":"p",
      "transitions":[["p","a","q"],["q","a","p"]]}]})"),
                  Error);
  CHECK_THROWS_AS(parse_cascade(R"({"alphabet":["a"],"factors":[{"states":["p","q"],"start":"p",
      "transitions":[["p","a","q"]]},{"states":["r","s"],"start":"r","transitions":[["r","a","s"]]}]})"),
                  Error);
}
