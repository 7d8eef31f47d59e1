#include "hardattn/testkit/random_program.hpp"

#include <random>
#include <string>
#include <vector>

namespace hardattn::testkit {

using brasp::BoolExpr;
using brasp::Var;

namespace {

class Generator {
 public:
  Generator(std::uint64_t seed, const RandomProgramOptions& options) : rng_(seed), options_(options) {}

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  /// Expression over at most max_atoms atoms drawn from vectors [0, n).
  BoolExpr expr(std::size_t n, bool allow_j) {
    if (pick(8) == 0) return BoolExpr::constant(pick(2) == 0);
    std::size_t atoms = 1 + pick(options_.max_atoms);
    std::vector<BoolExpr> parts;
    for (std::size_t k = 0; k < atoms; ++k) {
      Var v = allow_j && pick(2) == 0 ? Var::J : Var::I;
      BoolExpr a = BoolExpr::vec(pick(n), v);
      parts.push_back(pick(3) == 0 ? !a : a);
    }
    while (parts.size() > 1) {
      std::size_t x = pick(parts.size());
      BoolExpr lhs = parts[x];
      parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(x));
      std::size_t y = pick(parts.size());
      BoolExpr combined = pick(2) == 0 ? (lhs && parts[y]) : (lhs || parts[y]);
      parts[y] = pick(4) == 0 ? !combined : combined;
    }
    return parts[0];
  }

  MaskKind mask() {
    if (options_.nonstrict) {
      const MaskKind masks[] = {MaskKind::None, MaskKind::FutureNonStrict, MaskKind::PastNonStrict};
      return masks[pick(3)];
    }
    const MaskKind masks[] = {MaskKind::None, MaskKind::FutureStrict, MaskKind::PastStrict,
                              MaskKind::FutureNonStrict, MaskKind::PastNonStrict};
    return masks[pick(5)];
  }

 private:
  std::mt19937_64 rng_;
  RandomProgramOptions options_;
};

}  // namespace

brasp::Program random_program(std::uint64_t seed, const Alphabet& alphabet, const RandomProgramOptions& options) {
  Generator g(seed, options);
  brasp::ProgramBuilder b(alphabet);
  std::size_t ops = 1 + g.pick(options.max_ops);
  for (std::size_t k = 0; k < ops; ++k) {
    std::size_t n = b.num_vectors();
    std::string name = "P" + std::to_string(k + 1);
    if (g.pick(3) == 0) {
      b.positionwise(name, g.expr(n, false));
      continue;
    }
    Direction dir = g.pick(2) == 0 ? Direction::Leftmost : Direction::Rightmost;
    MaskKind mask = g.mask();
    BoolExpr score = g.expr(n, true);
    BoolExpr value = g.expr(n, true);
    BoolExpr fallback = g.expr(n, false);
    b.attention(name, dir, mask, score, value, fallback);
  }
  std::size_t out = b.num_vectors() - 1;
  return std::move(b).accept(out);
}

}  // namespace hardattn::testkit
