#include "hardattn/brasp/eval.hpp"

#include <algorithm>

namespace hardattn::brasp {

namespace {

std::vector<std::vector<char>> eval_rows(const Program& prog, const Word& input,
                                         const predicates::PredicateBindings& preds) {
  if (input.empty()) throw Error("input string must not be empty");
  const std::size_t n = input.size();
  const std::size_t sigma = prog.alphabet().size();
  for (Symbol s : input)
    if (s >= sigma) throw Error("input symbol outside the program alphabet");

  std::vector<std::vector<bool>> ptable = predicates::predicate_table(prog.predicate_families(), n, preds);
  std::vector<std::vector<char>> rows(prog.num_vectors(), std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) rows[input[i]][i] = 1;

  std::size_t t = sigma;
  for (const Operation& op : prog.ops()) {
    std::vector<char>& row = rows[t];
    if (!op.is_attention()) {
      const BoolExpr& e = op.positionwise().expr;
      for (std::size_t i = 0; i < n; ++i)
        row[i] = e.evaluate([&](const Atom& a) {
          return a.kind == Atom::Kind::Vector ? rows[a.index][i] != 0 : ptable[a.index][i];
        });
    } else {
      const Attention& att = op.attention();
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = 0;
        auto atom = [&](const Atom& a) {
          std::size_t p = a.var == Var::I ? i : j;
          return a.kind == Atom::Kind::Vector ? rows[a.index][p] != 0 : ptable[a.index][p];
        };
        std::size_t lo = 0, hi = n;  // half-open range of visible j
        switch (att.mask) {
          case MaskKind::None: break;
          case MaskKind::FutureStrict: hi = i; break;
          case MaskKind::PastStrict: lo = i + 1; break;
          case MaskKind::FutureNonStrict: hi = i + 1; break;
          case MaskKind::PastNonStrict: lo = i; break;
        }
        bool found = false;
        bool result = false;
        if (att.direction == Direction::Rightmost) {
          for (std::size_t k = hi; k > lo && !found; --k) {
            j = k - 1;
            if (att.score.evaluate(atom)) {
              found = true;
              result = att.value.evaluate(atom);
            }
          }
        } else {
          for (std::size_t k = lo; k < hi && !found; ++k) {
            j = k;
            if (att.score.evaluate(atom)) {
              found = true;
              result = att.value.evaluate(atom);
            }
          }
        }
        if (!found) result = att.fallback.evaluate(atom);
        row[i] = result;
      }
    }
    ++t;
  }
  return rows;
}

}  // namespace

std::string Trace::row_bits(std::size_t vector) const {
  std::string out;
  for (bool b : rows.at(vector)) out += b ? '1' : '0';
  return out;
}

Trace eval(const Program& prog, const Word& input, const predicates::PredicateBindings& preds) {
  auto rows = eval_rows(prog, input, preds);
  Trace tr;
  tr.length = input.size();
  for (std::size_t t = 0; t < prog.num_vectors(); ++t) {
    tr.names.push_back(prog.vector_name(t));
    tr.rows.emplace_back(rows[t].begin(), rows[t].end());
  }
  return tr;
}

bool accepts(const Program& prog, const Word& input, const predicates::PredicateBindings& preds) {
  std::size_t y = prog.output_vector();
  auto rows = eval_rows(prog, input, preds);
  return rows[y][input.size() - 1] != 0;
}

std::vector<std::string> transduce_tokens(const Program& prog, const Word& input,
                                          const predicates::PredicateBindings& preds) {
  if (prog.is_acceptor()) throw Error("program is an acceptor, not a transducer");
  const auto& map = std::get<TransduceOutput>(prog.output()).map;
  auto rows = eval_rows(prog, input, preds);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < input.size(); ++i) {
    const std::string* chosen = nullptr;
    for (const auto& [sym, vec] : map) {
      if (!rows[vec][i]) continue;
      if (chosen)
        throw Error("output vectors for '" + *chosen + "' and '" + sym + "' are both true at position " +
                    std::to_string(i + 1));
      chosen = &sym;
    }
    if (!chosen) throw Error("no output vector is true at position " + std::to_string(i + 1));
    out.push_back(*chosen);
  }
  return out;
}

std::string transduce(const Program& prog, const Word& input, const predicates::PredicateBindings& preds) {
  return join_tokens(transduce_tokens(prog, input, preds));
}

std::string format_trace(const Program& prog, const Word& input, const Trace& trace) {
  std::size_t name_w = 0;
  for (const auto& n : trace.names) name_w = std::max(name_w, n.size());
  std::size_t cell_w = 1;
  for (Symbol s : input) cell_w = std::max(cell_w, prog.alphabet().symbol(s).size());
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  std::string out = pad("", name_w);
  for (Symbol s : input) out += " " + pad(prog.alphabet().symbol(s), cell_w);
  while (!out.empty() && out.back() == ' ') out.pop_back();
  out += "\n";
  for (std::size_t t = 0; t < trace.names.size(); ++t) {
    std::string line = pad(trace.names[t], name_w);
    for (bool b : trace.rows[t]) line += " " + pad(b ? "1" : "0", cell_w);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

}  // namespace hardattn::brasp
