#include <random>

#include "doctest.h"
#include "hardattn/brasp/eval.hpp"
#include "hardattn/brasp/text.hpp"
#include "hardattn/compiler/compile.hpp"
#include "hardattn/transformer/compose.hpp"
#include "hardattn/transformer/layernorm.hpp"
#include "hardattn/transformer/runtime.hpp"
#include "hardattn/transformer/serialize.hpp"
#include "support.hpp"

using namespace hardattn;
using namespace hardattn::transformer;
using test_support::for_each_word;
using test_support::read_data;

namespace {

const Alphabet ab({"a", "b"});

brasp::Program dyck() { return brasp::parse_program(read_data("dyck.brasp")); }

Vector vec(std::initializer_list<int> xs) {
  Vector v;
  for (int x : xs) v.push_back(Rational(x));
  return v;
}

/// One layer whose single head attends with the given mask and copies
/// coordinate 0 into coordinate 1.
Transformer copy_layer(MaskKind mask, const Alphabet& sigma = ab) {
  AttentionHead h{Matrix(2, 2), mask, Direction::Rightmost, Matrix(2, 2), {}};
  h.value.set(1, 0, Rational(1));
  Layer layer;
  layer.heads.push_back(h);
  layer.ffn = FeedForward{Matrix(0, 2), {}, Matrix(2, 0), zeros(2)};
  return Transformer(sigma, 2, {vec({1, 0}), vec({2, 0})}, {}, {layer}, OutputLayer{vec({0, 1}), Rational(-1)});
}

}  // namespace

TEST_CASE("empty attention outputs the zero vector") {
  Transformer t = copy_layer(MaskKind::FutureStrict);
  auto run = run_transformer(t, ab.parse_word("a"));
  CHECK_FALSE(run.attended[0][0][0].has_value());
  CHECK(run.mid[0][0] == vec({1, 0}));

  auto run2 = run_transformer(t, ab.parse_word("ba"));
  CHECK(run2.attended[0][0][1] == std::optional<std::size_t>(1));
  CHECK(run2.final_layer()[1] == vec({1, 2}));
  CHECK(accepts_transformer(t, ab.parse_word("ba")));
  CHECK_FALSE(accepts_transformer(t, ab.parse_word("a")));
}

TEST_CASE("tie-breaking picks the extreme maximal position") {
  for (Direction dir : {Direction::Leftmost, Direction::Rightmost}) {
    AttentionHead h{Matrix(2, 2), MaskKind::None, dir, Matrix(2, 2), {}};
    h.value.set(1, 0, Rational(1));
    Layer layer{{h}, FeedForward{Matrix(0, 2), {}, Matrix(2, 0), zeros(2)}, std::nullopt, std::nullopt};
    Transformer t(ab, 2, {vec({1, 0}), vec({2, 0})}, {}, {layer}, std::nullopt);
    auto run = run_transformer(t, ab.parse_word("abab"));
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(run.attended[0][0][i] == std::optional<std::size_t>(dir == Direction::Rightmost ? 4 : 1));
  }
}

TEST_CASE("FFN AND gadget") {
  FeedForward f{Matrix(1, 3), vec({-1}), Matrix(3, 1), zeros(3)};
  f.w1.set(0, 0, Rational(1));
  f.w1.set(0, 1, Rational(1));
  f.w2.set(2, 0, Rational(1));
  CHECK(apply_ffn(f, vec({1, 1, 0}))[2] == Rational(1));
  CHECK(apply_ffn(f, vec({1, 0, 0}))[2] == Rational(0));
  CHECK(apply_ffn(f, vec({0, 0, 0}))[2] == Rational(0));
}

TEST_CASE("acceptance threshold") {
  Transformer half(ab, 1, {vec({0}), vec({0})}, {}, {}, OutputLayer{vec({0}), Rational(1, 2)});
  for_each_word(2, 4, [&](const Word& w) { CHECK(accepts_transformer(half, w)); });
  Transformer zero(ab, 1, {vec({0}), vec({0})}, {}, {}, OutputLayer{vec({0}), Rational(0)});
  CHECK(accepts_transformer(zero, ab.parse_word("ab")));
  Transformer none(ab, 1, {vec({0}), vec({0})}, {}, {}, std::nullopt);
  CHECK_THROWS_AS(accepts_transformer(none, ab.parse_word("a")), Error);
  CHECK_THROWS_AS(run_transformer(half, {}), Error);
  CHECK_THROWS_AS(run_transformer(half, {2}), Error);
}

TEST_CASE("sinusoidal position embedding") {
  PositionSpec pe;
  pe.kind = PositionSpec::Kind::Sinusoidal;
  pe.frequencies = {Rational(1, 4)};
  Transformer t(Alphabet({"a"}), 2, {zeros(2)}, {pe}, {identity_layer(2)}, OutputLayer{vec({1, 0}), Rational(0)});
  auto x = embed(t, Word(4, 0));
  CHECK(x[0] == vec({1, 0}));
  CHECK(x[2] == vec({-1, 0}));
  CHECK(accepts_transformer(t, Word(1, 0)));
  CHECK_FALSE(accepts_transformer(t, Word(3, 0)));
  pe.frequencies = {Rational(1, 3)};
  Transformer irrational(Alphabet({"a"}), 2, {zeros(2)}, {pe}, {}, std::nullopt);
  CHECK_THROWS_AS(embed(irrational, Word(1, 0)), Error);
}

TEST_CASE("identity layer") {
  Transformer t = compiler::compile_naive(dyck());
  std::vector<Layer> layers = t.layers();
  layers.push_back(identity_layer(t.width()));
  Transformer padded(t.alphabet(), t.width(), t.embedding(), t.positions(), layers, t.output());
  for_each_word(2, 5, [&](const Word& w) {
    CHECK(run_transformer(padded, w).final_layer() == run_transformer(t, w).final_layer());
  });
}

TEST_CASE("multi-head layer equals the sum of its heads") {
  Transformer t = compiler::compile_depth_preserving(dyck());
  const Layer& layer = t.layers()[0];
  REQUIRE(layer.heads.size() >= 2);
  auto one_layer = [&](std::vector<AttentionHead> heads) {
    Layer l{std::move(heads), FeedForward{Matrix(0, t.width()), {}, Matrix(t.width(), 0), zeros(t.width())},
            std::nullopt, std::nullopt};
    return Transformer(t.alphabet(), t.width(), t.embedding(), {}, {l}, std::nullopt);
  };
  Transformer fused = one_layer(layer.heads);
  for_each_word(2, 6, [&](const Word& w) {
    auto x = embed(t, w);
    std::vector<Vector> sum = x;
    for (const auto& h : layer.heads) {
      auto single = run_transformer(one_layer({h}), w).mid[0];
      for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t c = 0; c < t.width(); ++c) sum[i][c] += single[i][c] - x[i][c];
    }
    CHECK(run_transformer(fused, w).mid[0] == sum);
  });
}

TEST_CASE("parallel composition") {
  Transformer t = compiler::compile_naive(dyck());
  Transformer tt = parallel_compose(t, t);
  CHECK(tt.width() == 2 * t.width());
  CHECK(tt.depth() == t.depth());
  for_each_word(2, 6, [&](const Word& w) {
    auto a = run_transformer(t, w).final_layer();
    auto b = run_transformer(tt, w).final_layer();
    for (std::size_t i = 0; i < w.size(); ++i) {
      Vector doubled = a[i];
      doubled.insert(doubled.end(), a[i].begin(), a[i].end());
      CHECK(b[i] == doubled);
    }
    CHECK(accepts_transformer(tt, w) == accepts_transformer(t, w));
  });

  Transformer empty(t.alphabet(), 0, {Vector{}, Vector{}}, {}, {}, std::nullopt);
  Transformer same = parallel_compose(t, empty);
  CHECK(same.width() == t.width());
  CHECK(same.depth() == t.depth());
  for_each_word(2, 6, [&](const Word& w) {
    CHECK(run_transformer(same, w).final_layer() == run_transformer(t, w).final_layer());
    CHECK(accepts_transformer(same, w) == accepts_transformer(t, w));
  });

  Transformer one = copy_layer(MaskKind::None, t.alphabet());
  Transformer deep = compiler::compile_depth_preserving(dyck());
  REQUIRE(deep.depth() == 3);
  CHECK(parallel_compose(one, deep).depth() == 3);
  CHECK(parallel_compose(deep, one).depth() == 3);

  Transformer other(Alphabet({"x"}), 1, {vec({0})}, {}, {}, std::nullopt);
  CHECK_THROWS_AS(parallel_compose(t, other), Error);
}

TEST_CASE("layernorm encoding") {
  auto always = brasp::parse_program("alphabet: a b\nX(i) := 1\noutput: X\n");
  Transformer enc = apply_layernorm_encoding(compiler::compile_depth_preserving(always));
  for_each_word(2, 4, [&](const Word& w) {
    auto run = run_transformer(enc, w);
    for (const auto& x : run.final_layer()) {
      CHECK(x[4] == Rational(1));
      CHECK(x[5] == Rational(0));
    }
    CHECK(accepts_transformer(enc, w));
  });

  Transformer not_boolean(ab, 1, {vec({2}), vec({0})}, {}, {}, std::nullopt);
  CHECK_THROWS_AS(apply_layernorm_encoding(not_boolean), Error);

  LayerNorm ln{vec({1, 1}), vec({0, 0})};
  CHECK(apply_layernorm(ln, vec({1, 3})) == vec({-1, 1}));
  CHECK_THROWS_AS(apply_layernorm(ln, vec({1, 1})), Error);
}

TEST_CASE("weight files round-trip exactly") {
  PositionSpec pe;
  pe.kind = PositionSpec::Kind::Sinusoidal;
  pe.frequencies = {Rational(1, 4)};
  std::vector<Transformer> models{compiler::compile_naive(dyck()), compiler::compile_depth_preserving(dyck()),
                                  apply_layernorm_encoding(compiler::compile_naive(dyck())),
                                  Transformer(Alphabet({"a"}), 2, {vec({1, -1})}, {pe}, {identity_layer(2)},
                                              OutputLayer{vec({1, 0}), Rational(-3, 7)})};
  for (const auto& t : models) {
    std::string text = print_transformer(t);
    Transformer back = parse_transformer(text);
    CHECK(back == t);
    CHECK(print_transformer(back) == text);
  }
  CHECK_THROWS_AS(parse_transformer("{}"), Error);
  CHECK_THROWS_AS(parse_transformer("not json"), Error);
}
