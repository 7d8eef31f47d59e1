#include "hardattn/testkit/recognizer.hpp"

#include <memory>

#include "hardattn/brasp/eval.hpp"
#include "hardattn/ltl/eval.hpp"
#include "hardattn/transformer/runtime.hpp"

namespace hardattn::testkit {

Recognizer recognizer(const brasp::Program& prog, predicates::PredicateBindings bindings) {
  auto p = std::make_shared<const brasp::Program>(prog);
  return [p, bindings = std::move(bindings)](const Word& w) { return brasp::accepts(*p, w, bindings); };
}

Recognizer recognizer(const ltl::Formula& f, const Alphabet& alphabet, predicates::PredicateBindings bindings) {
  return [f, alphabet, bindings = std::move(bindings)](const Word& w) {
    return ltl::ltl_accepts(f, alphabet, w, bindings);
  };
}

Recognizer recognizer(const automata::Dfa& a) {
  auto d = std::make_shared<const automata::Dfa>(a);
  return [d](const Word& w) { return automata::dfa_accepts(*d, w); };
}

Recognizer recognizer(const transformer::Transformer& t, predicates::PredicateBindings bindings) {
  auto m = std::make_shared<const transformer::Transformer>(t);
  return [m, bindings = std::move(bindings)](const Word& w) {
    return transformer::accepts_transformer(*m, w, bindings);
  };
}

}  // namespace hardattn::testkit
