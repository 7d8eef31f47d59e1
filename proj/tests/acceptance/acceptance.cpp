// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "hardattn/automata/cascade.hpp"
#include "hardattn/automata/io.hpp"
#include "hardattn/brasp/eval.hpp"
#include "hardattn/brasp/normal_form.hpp"
#include "hardattn/brasp/text.hpp"
#include "hardattn/compiler/compile.hpp"
#include "hardattn/compiler/decompile.hpp"
#include "hardattn/compiler/value_set.hpp"
#include "hardattn/core/error.hpp"
#include "hardattn/ltl/text.hpp"
#include "hardattn/ltl/translate.hpp"
#include "hardattn/predicates/family.hpp"
#include "hardattn/predicates/mod_gadget.hpp"
#include "hardattn/predicates/position_embedding.hpp"
#include "hardattn/transformer/layernorm.hpp"
#include "hardattn/transformer/runtime.hpp"
#include "hardattn/testkit/corpus.hpp"
#include "hardattn/testkit/diff.hpp"
#include "hardattn/testkit/oracles.hpp"
#include "hardattn/testkit/random_program.hpp"

using namespace hardattn;
using namespace hardattn::testkit;
using transformer::Transformer;

namespace {

/// Collects failures of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  void diff(const DiffReport& r, const Alphabet& sigma, const std::string& what) {
    expect(r.equal(), what + ": " + r.summary(sigma));
  }
  std::size_t checks() const { return checks_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
};

std::size_t bound_for(const Alphabet& sigma) { return sigma.size() <= 2 ? 8 : 7; }

/// Programs from the corpus that compile in both modes (no predicates).
std::vector<std::pair<std::string, brasp::Program>> compilable_programs() {
  std::vector<std::pair<std::string, brasp::Program>> out;
  for (const auto& e : corpus()) {
    if (!e.program || !e.program->predicate_families().empty()) continue;
    if (e.name == "stair4") continue;
    out.emplace_back(e.name, *e.program);
  }
  return out;
}

std::vector<std::string> grid_row(const std::string& line, std::string& label) {
  std::istringstream in(line);
  in >> label;
  std::vector<std::string> cells;
  std::string c;
  while (in >> c) cells.push_back(c);
  return cells;
}

/// Rows of an embedded trace grid compared against the interpreter.
void compare_grid(Check& c, const brasp::Program& p, const std::string& file, std::size_t expected_rows) {
  std::istringstream in(corpus_file(file));
  std::string line, label, input;
  std::size_t rows = 0;
  std::optional<brasp::Trace> tr;
  while (std::getline(in, line)) {
    auto cells = grid_row(line, label);
    if (label.empty()) continue;
    std::string joined;
    for (const auto& x : cells) joined += x;
    if (label == "input") {
      input = joined;
      tr = brasp::eval(p, p.alphabet().parse_word(input));
      continue;
    }
    if (label == "output") {
      c.expect(brasp::transduce(p, p.alphabet().parse_word(input)) == joined, file + ": output row");
      continue;
    }
    auto v = p.find_vector(label);
    c.expect(v.has_value() && tr && tr->row_bits(*v) == joined, file + ": row " + label);
    ++rows;
  }
  c.expect(rows == expected_rows, file + ": " + std::to_string(rows) + " rows");
}

void criterion1(Check& c) {
  auto dyck = brasp::parse_program(corpus_file("dyck.brasp"));
  compare_grid(c, dyck, "dyck_llrrllrlrr.trace", 9);
  compare_grid(c, dyck, "dyck_lrrlllrrrl.trace", 9);
  c.expect(brasp::accepts(dyck, dyck.alphabet().parse_word("llrrllrlrr")), "llrrllrlrr accepted");
  c.expect(!brasp::accepts(dyck, dyck.alphabet().parse_word("lrrlllrrrl")), "lrrlllrrrl rejected");
}

void criterion2(Check& c) {
  auto recall = recall_program();
  c.expect(brasp::transduce(recall, recall.alphabet().parse_word("a3b2b1a2c1a1c3")) == "a?b?b2a3c?a2c1",
           "recall output");
  compare_grid(c, recall, "recall_a3b2b1a2c1a1c3.trace", 13);
}

void criterion3(Check& c) {
  for (const char* name : {"phi1", "phi2", "phi3", "phi4"}) {
    auto e = corpus_entry(name);
    std::size_t n = bound_for(e.alphabet);
    auto prog = ltl::ltl_to_brasp(*e.formula, e.alphabet);
    c.diff(diff_languages(recognizer(prog), e.oracle.accepts, e.alphabet, n), e.alphabet,
           std::string(name) + " ltl_to_brasp");
    c.diff(diff_languages(recognizer(ltl::brasp_to_ltl(prog), e.alphabet), e.oracle.accepts, e.alphabet, n),
           e.alphabet, std::string(name) + " brasp_to_ltl(ltl_to_brasp)");
  }
  auto dyck = corpus_entry("dyck");
  auto f = ltl::brasp_to_ltl(*dyck.program);
  c.diff(diff_languages(recognizer(f, dyck.alphabet), dyck.oracle.accepts, dyck.alphabet, 8), dyck.alphabet,
         "dyck brasp_to_ltl");
  c.diff(diff_languages(recognizer(ltl::ltl_to_brasp(f, dyck.alphabet)), dyck.oracle.accepts, dyck.alphabet, 8),
         dyck.alphabet, "dyck ltl_to_brasp(brasp_to_ltl)");
  c.diff(diff_languages(recognizer(*dyck.since_formula, dyck.alphabet), dyck.oracle.accepts, dyck.alphabet, 8),
         dyck.alphabet, "dyck since-only formula");
  for (std::size_t k = 1; k <= 3; ++k) {
    auto sf = stair_formula(k);
    auto prog = ltl::ltl_to_brasp(sf, stair_alphabet());
    c.diff(diff_languages(recognizer(prog), stair_oracle(k).accepts, stair_alphabet(), 7), stair_alphabet(),
           "stair" + std::to_string(k) + " ltl_to_brasp");
    c.diff(diff_languages(recognizer(ltl::brasp_to_ltl(prog), stair_alphabet()), stair_oracle(k).accepts,
                          stair_alphabet(), 7),
           stair_alphabet(), "stair" + std::to_string(k) + " brasp_to_ltl(ltl_to_brasp)");
  }
}

/// Language and per-coordinate simulation in one pass.
void simulation(Check& c, const std::string& name, const brasp::Program& p, const Transformer& t) {
  std::size_t bad_lang = 0, bad_coord = 0;
  for_each_word(p.alphabet().size(), bound_for(p.alphabet()), [&](const Word& w) {
    auto trace = brasp::eval(p, w);
    auto run = transformer::run_transformer(t, w);
    for (std::size_t v = 0; v < p.num_vectors(); ++v)
      for (std::size_t i = 1; i <= w.size(); ++i)
        if (run.final_layer()[i - 1][v] != Rational(trace.at(v, i) ? 1 : 0)) ++bad_coord;
    if ((run.output->sign() >= 0) != trace.at(p.output_vector(), w.size())) ++bad_lang;
  });
  c.expect(bad_lang == 0, name + ": " + std::to_string(bad_lang) + " language mismatches");
  c.expect(bad_coord == 0, name + ": " + std::to_string(bad_coord) + " coordinate mismatches");
}

void criterion4(Check& c) {
  for (const auto& [name, p] : compilable_programs()) {
    simulation(c, name + " naive", p, compiler::compile_naive(p));
    simulation(c, name + " depth", p, compiler::compile_depth_preserving(p));
  }
}

void criterion5(Check& c) {
  for (const auto& [name, p] : compilable_programs()) {
    auto t = compiler::compile_naive(p);
    for (auto v : {compiler::DecompileVariant::Shallower, compiler::DecompileVariant::Smaller}) {
      auto d = compiler::decompile(t, v);
      std::string label = name + (v == compiler::DecompileVariant::Shallower ? " shallower" : " smaller");
      c.diff(diff_languages(recognizer(d.program, d.bindings), recognizer(p), p.alphabet(), bound_for(p.alphabet())),
             p.alphabet(), label);
    }
  }
}

void criterion6(Check& c) {
  for (const auto& e : corpus()) {
    for (const auto* f : {e.formula ? &*e.formula : nullptr, e.since_formula ? &*e.since_formula : nullptr}) {
      if (!f) continue;
      std::size_t td = ltl::temporal_depth(*f);
      std::size_t ad = brasp::attention_depth(ltl::ltl_to_brasp(*f, e.alphabet));
      c.expect(td == ad, e.name + ": temporal depth " + std::to_string(td) + " vs attention depth " +
                             std::to_string(ad));
    }
  }
  for (std::size_t k = 1; k <= 4; ++k) {
    auto sf = stair_formula(k);
    c.expect(ltl::temporal_depth(sf) == k, "stair" + std::to_string(k) + " temporal depth");
    c.expect(brasp::attention_depth(ltl::ltl_to_brasp(sf, stair_alphabet())) == k,
             "stair" + std::to_string(k) + " attention depth");
  }
  for (const auto& [name, p] : compilable_programs()) {
    auto t = compiler::compile_depth_preserving(p);
    c.expect(t.depth() == brasp::attention_depth(p), name + ": layer depth " + std::to_string(t.depth()) +
                                                         " vs attention depth " +
                                                         std::to_string(brasp::attention_depth(p)));
  }
}

void criterion7(Check& c) {
  for (const auto& [name, p] : compilable_programs()) {
    for (bool naive : {true, false}) {
      Transformer t = naive ? compiler::compile_naive(p) : compiler::compile_depth_preserving(p);
      std::string label = name + (naive ? " naive" : " depth");
      auto vs = compiler::enumerate_value_set(t);
      bool single_head = true;
      for (const auto& l : t.layers()) single_head = single_head && l.heads.size() <= 1;
      auto multi = compiler::multihead_image_bounds(t);
      for (std::size_t l = 0; l < vs.activations.size(); ++l) {
        std::size_t size = vs.activations[l].size();
        if (single_head)
          c.expect(size <= compiler::finite_image_bound(p.alphabet().size(), l),
                   label + ": layer " + std::to_string(l) + " has " + std::to_string(size) + " activations");
        c.expect(size <= multi[l], label + ": layer " + std::to_string(l) + " exceeds the multi-head bound");
      }
      std::size_t missing = 0;
      for_each_word(p.alphabet().size(), bound_for(p.alphabet()), [&](const Word& w) {
        auto run = transformer::run_transformer(t, w);
        for (std::size_t l = 0; l < run.layers.size(); ++l)
          for (const auto& x : run.layers[l])
            if (!vs.contains(l, x)) ++missing;
      });
      c.expect(missing == 0, label + ": " + std::to_string(missing) + " observed activations not enumerated");
    }
  }
}

void criterion8(Check& c) {
  auto a3 = automata::parse_dfa(corpus_file("a3.dfa.json"));
  auto aa = automata::parse_dfa(corpus_file("aa.dfa.json"));
  auto cascade = automata::parse_cascade(corpus_file("a3.cascade.json"));
  c.expect(automata::is_counter_free(a3), "A3 counter-free");
  c.expect(!automata::is_counter_free(aa), "(aa)* not counter-free");
  c.expect(automata::check_homomorphism(cascade, a3), "cascade homomorphism");
  auto prog = automata::cascade_to_brasp(cascade, a3);
  c.diff(diff_languages(recognizer(prog), recognizer(a3), a3.alphabet(), 10), a3.alphabet(), "cascade_to_brasp(A3)");
}

void criterion9(Check& c) {
  Alphabet ab({"a", "b"});
  c.expect(stutter_invariant_up_to(a_plus_b_plus_star_oracle().accepts, ab, 8).invariant, "(a+b+)* invariant");
  auto r = stutter_invariant_up_to(ab_star_oracle().accepts, ab, 8);
  c.expect(!r.invariant && r.witness->u.empty() && r.witness->a == 0 && r.witness->v == Word{1},
           "(ab)* witness u=ε a=a v=b");
  Alphabet lr({"l", "r"});
  auto d = stutter_invariant_up_to(dyck12_oracle().accepts, lr, 8);
  c.expect(!d.invariant && lr.format_word(d.witness->u) + lr.symbol(d.witness->a) + lr.format_word(d.witness->v) ==
                               "lr",
           "Dyck witness lr / llr");
  for (const auto& [name, p] : nonstrict_variants())
    c.expect(stutter_invariant_up_to(recognizer(p), p.alphabet(), 8).invariant, name + " non-strict invariant");
  std::size_t failures = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto p = random_program(seed, ab);
    if (!brasp::uses_only_nonstrict_masks(p) || !stutter_invariant_up_to(recognizer(p), ab, 8).invariant)
      ++failures;
  }
  c.expect(failures == 0, std::to_string(failures) + " of 200 random non-strict programs failed");
}

void criterion10(Check& c) {
  auto dyck = brasp::parse_program(corpus_file("dyck.brasp"));
  auto t = compiler::compile_naive(dyck);
  auto enc = transformer::apply_layernorm_encoding(t);
  c.diff(diff_languages(recognizer(enc), recognizer(t), dyck.alphabet(), 8), dyck.alphabet(), "encoded vs plain");
  std::size_t bad = 0, sums = 0;
  for_each_word(2, 8, [&](const Word& w) {
    auto run = transformer::run_transformer(enc, w);
    for (const auto* group : {&run.pre_attention_norm, &run.pre_ffn_norm})
      for (const auto& layer : *group)
        for (const auto& x : layer) {
          ++sums;
          Rational mean, var;
          for (const auto& v : x) mean += v;
          mean /= Rational(static_cast<long>(x.size()));
          for (const auto& v : x) var += (v - mean) * (v - mean);
          var /= Rational(static_cast<long>(x.size()));
          if (mean != Rational(1, 2) || var != Rational(1, 4)) ++bad;
        }
  });
  c.expect(sums > 0, "no layernorm inputs observed");
  c.expect(bad == 0, std::to_string(bad) + " of " + std::to_string(sums) + " layernorm inputs off mean 1/2, variance 1/4");
}

void criterion11(Check& c) {
  auto mid = corpus_entry("mid");
  c.diff(diff_languages(recognizer(*mid.formula, mid.alphabet), hash_am_hash_bm_hash_oracle().accepts, mid.alphabet, 9),
         mid.alphabet, "LTL[Mid]");
  auto aa = brasp::parse_program(corpus_file("aa_mod.brasp"));
  c.diff(diff_languages(recognizer(aa), even_length_oracle().accepts, aa.alphabet(), 12), aa.alphabet(),
         "B-RASP[MOD] (aa)*");
  std::size_t bad = 0;
  for (unsigned m : {2u, 3u, 4u}) {
    auto pe = predicates::sinusoidal_pe({Rational(1, static_cast<long>(m))});
    for (unsigned r = 0; r < m; ++r)
      for (std::size_t i = 1; i <= 24; ++i)
        if (predicates::mod_relu_gadget(r, m).evaluate(pe, 24, i) != predicates::mod_predicate(r, m)(24, i)) ++bad;
  }
  c.expect(bad == 0, std::to_string(bad) + " gadget mismatches");
}

struct Criterion {
  int number;
  const char* title;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "Dyck traces on llrrllrlrr and lrrlllrrrl match the 9-row tables", criterion1},
      {2, "recall transduction and its 13-row table", criterion2},
      {3, "LTL <-> B-RASP translations equal their oracles", criterion3},
      {4, "naive and depth-preserving compilation simulate the program", criterion4},
      {5, "shallower and smaller decompilation recover the language", criterion5},
      {6, "temporal depth = attention depth = layer depth", criterion6},
      {7, "finite-image bound and observed activations enumerated", criterion7},
      {8, "counter-freeness, cascade homomorphism, cascade_to_brasp", criterion8},
      {9, "stutter invariance and witnesses", criterion9},
      {10, "layernorm encoding of the Dyck transformer", criterion10},
      {11, "Mid, MOD and the ReLU gadget", criterion11},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = error.empty() && c.failures().empty();
    if (!ok) ++failed;
    std::printf("criterion %2d: %s  %s (%zu checks, %.1f s)\n", cr.number, ok ? "PASS" : "FAIL", cr.title,
                c.checks(), secs);
    if (!error.empty()) std::printf("    error: %s\n", error.c_str());
    for (std::size_t k = 0; k < c.failures().size() && k < 10; ++k)
      std::printf("    %s\n", c.failures()[k].c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
