#include <algorithm>

#include "hardattn/brasp/normal_form.hpp"

namespace hardattn::brasp {

namespace {

std::vector<std::size_t> all_depths(const Program& prog) {
  std::vector<std::size_t> depth(prog.num_vectors(), 0);
  for (std::size_t t = prog.alphabet().size(); t < prog.num_vectors(); ++t) {
    const Operation* op = prog.op_of(t);
    auto deepest = [&](const BoolExpr& e) {
      std::size_t d = 0;
      for (const Atom& a : atoms_of(e))
        if (a.kind == Atom::Kind::Vector) d = std::max(d, depth[a.index]);
      return d;
    };
    if (!op->is_attention()) {
      depth[t] = deepest(op->positionwise().expr);
    } else {
      const Attention& att = op->attention();
      depth[t] = std::max({deepest(att.score), deepest(att.value), deepest(att.fallback)}) + 1;
    }
  }
  return depth;
}

}  // namespace

std::size_t vector_depth(const Program& prog, std::size_t vector) { return all_depths(prog).at(vector); }

std::size_t attention_depth(const Program& prog) {
  auto d = all_depths(prog);
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

}  // namespace hardattn::brasp
