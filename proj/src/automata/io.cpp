#include "hardattn/automata/io.hpp"

#include <algorithm>
#include <optional>

#include <json.hpp>

#include "hardattn/core/error.hpp"

namespace hardattn::automata {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::string> string_list(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) throw Error(std::string("field '") + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw Error(std::string("field '") + key + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw Error(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}


/// Reads [q, a, r] triples; symbol_of maps the middle entry to a symbol.
template <class SymbolOf>
std::vector<std::vector<std::optional<State>>> read_transitions(const json& j, const std::vector<std::string>& states,
                                                                std::size_t num_symbols, SymbolOf symbol_of) {
  auto state_of = [&](const json& e) {
    if (!e.is_string()) throw Error("state names must be strings");
    auto it = std::find(states.begin(), states.end(), e.get<std::string>());
    if (it == states.end()) throw Error("unknown state '" + e.get<std::string>() + "'");
    return static_cast<State>(it - states.begin());
  };
  std::vector<std::vector<std::optional<State>>> delta(states.size(),
                                                       std::vector<std::optional<State>>(num_symbols));
  const json& t = field(j, "transitions");
  if (!t.is_array()) throw Error("field 'transitions' must be a list");
  for (const auto& triple : t) {
    if (!triple.is_array() || triple.size() != 3 || !triple[1].is_string())
      throw Error("transitions must be [state, symbol, state] triples");
    State q = state_of(triple[0]);
    Symbol a = symbol_of(triple[1].get<std::string>());
    State r = state_of(triple[2]);
    if (delta[q][a] && *delta[q][a] != r)
      throw Error("conflicting transitions from '" + states[q] + "' on '" + triple[1].get<std::string>() + "'");
    delta[q][a] = r;
  }
  return delta;
}

}  // namespace

Dfa parse_dfa(const std::string& json_text) {
  json j = parse_json(json_text);
  Alphabet sigma(string_list(j, "alphabet"));
  auto states = string_list(j, "states");
  auto partial = read_transitions(j, states, sigma.size(), [&](const std::string& s) { return sigma.index_of(s); });
  std::vector<std::vector<State>> delta(states.size());
  for (std::size_t q = 0; q < states.size(); ++q)
    for (Symbol a = 0; a < sigma.size(); ++a) {
      if (!partial[q][a])
        throw Error("transition function is not total: no move from '" + states[q] + "' on '" +
                    sigma.symbol(a) + "'");
      delta[q].push_back(*partial[q][a]);
    }
  auto find = [&](const std::string& name) {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) throw Error("unknown state '" + name + "'");
    return static_cast<State>(it - states.begin());
  };
  State start = find(string_field(j, "start"));
  std::vector<State> finals;
  for (const auto& f : string_list(j, "finals")) finals.push_back(find(f));
  return Dfa(sigma, states, std::move(delta), start, std::move(finals));
}

std::string print_dfa(const Dfa& a) {
  json j;
  j["alphabet"] = a.alphabet().symbols();
  j["states"] = a.states();
  j["start"] = a.state_name(a.start());
  std::vector<std::string> finals;
  for (State f : a.finals()) finals.push_back(a.state_name(f));
  j["finals"] = finals;
  json t = json::array();
  for (State q = 0; q < a.num_states(); ++q)
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      t.push_back({a.state_name(q), a.alphabet().symbol(s), a.state_name(a.step(q, s))});
  j["transitions"] = t;
  return j.dump(2) + "\n";
}

Cascade parse_cascade(const std::string& json_text) {
  json j = parse_json(json_text);
  Alphabet sigma(string_list(j, "alphabet"));
  const json& fs = field(j, "factors");
  if (!fs.is_array()) throw Error("field 'factors' must be a list");
  std::vector<IdentityResetAutomaton> factors;
  std::vector<std::string> prefixes{""};
  for (const auto& fj : fs) {
    auto states = string_list(fj, "states");
    std::vector<std::string> symbols;
    for (const auto& t : prefixes)
      for (const auto& a : sigma.symbols()) symbols.push_back(factor_symbol(t, a));
    std::string where = "factor " + std::to_string(factors.size() + 1);
    auto symbol_of = [&](const std::string& text) -> Symbol {
      std::string tuple, sym = text;
      if (auto comma = text.rfind(','); comma != std::string::npos) {
        tuple = text.substr(0, comma);
        sym = text.substr(comma + 1);
      }
      if (tuple.empty() != prefixes[0].empty())
        throw Error(where + ": input '" + text + "' must name a state tuple and a symbol");
      auto it = std::find(symbols.begin(), symbols.end(), factor_symbol(tuple, sym));
      if (it == symbols.end()) throw Error(where + ": unknown input '" + text + "'");
      return static_cast<Symbol>(it - symbols.begin());
    };
    auto partial = read_transitions(fj, states, symbols.size(), symbol_of);
    std::vector<std::vector<State>> delta(states.size());
    for (State q = 0; q < states.size(); ++q)
      for (Symbol a = 0; a < symbols.size(); ++a) delta[q].push_back(partial[q][a].value_or(q));
    auto it = std::find(states.begin(), states.end(), string_field(fj, "start"));
    if (it == states.end()) throw Error(where + ": unknown start state");
    Dfa dfa(Alphabet(symbols), states, std::move(delta), static_cast<State>(it - states.begin()), {});
    if (!is_identity_reset(dfa)) throw Error(where + " is not an identity-reset automaton");
    factors.emplace_back(std::move(dfa));
    std::vector<std::string> next;
    for (const auto& t : prefixes)
      for (const auto& s : states) next.push_back(t + s);
    prefixes = std::move(next);
  }
  std::optional<std::map<std::string, std::string>> hom;
  if (j.contains("homomorphism")) {
    const json& h = j.at("homomorphism");
    if (!h.is_object()) throw Error("field 'homomorphism' must be an object");
    hom.emplace();
    for (const auto& [k, v] : h.items()) {
      if (!v.is_string()) throw Error("homomorphism images must be state names");
      (*hom)[k] = v.get<std::string>();
    }
  }
  return Cascade(sigma, std::move(factors), std::move(hom));
}

std::string print_cascade(const Cascade& c) {
  json j;
  j["alphabet"] = c.alphabet().symbols();
  json fs = json::array();
  for (std::size_t k = 0; k < c.factors().size(); ++k) {
    const Dfa& d = c.factors()[k].dfa();
    json f;
    f["states"] = d.states();
    f["start"] = d.state_name(d.start());
    json t = json::array();
    const auto& prefixes = c.tuples(k);
    for (State q = 0; q < d.num_states(); ++q)
      for (std::size_t p = 0; p < prefixes.size(); ++p)
        for (Symbol a = 0; a < c.alphabet().size(); ++a) {
          State r = d.step(q, c.factor_input(k, p, a));
          if (r == q) continue;
          std::string tuple = c.tuple_name(prefixes[p]);
          std::string input = tuple.empty() ? c.alphabet().symbol(a) : tuple + "," + c.alphabet().symbol(a);
          t.push_back({d.state_name(q), input, d.state_name(r)});
        }
    f["transitions"] = t;
    fs.push_back(f);
  }
  j["factors"] = fs;
  if (c.homomorphism()) j["homomorphism"] = *c.homomorphism();
  return j.dump(2) + "\n";
}

}  // namespace hardattn::automata
