// hardattn: command-line front end for the B-RASP / LTL / automata /
// transformer toolkit.
//
// Exit codes: 0 success or accept, 1 reject or mismatch, 2 error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "hardattn/automata/cascade.hpp"
#include "hardattn/automata/io.hpp"
#include "hardattn/brasp/eval.hpp"
#include "hardattn/brasp/normal_form.hpp"
#include "hardattn/brasp/text.hpp"
#include "hardattn/compiler/compile.hpp"
#include "hardattn/compiler/decompile.hpp"
#include "hardattn/core/error.hpp"
#include "hardattn/ltl/eval.hpp"
#include "hardattn/ltl/text.hpp"
#include "hardattn/ltl/translate.hpp"
#include "hardattn/transformer/layernorm.hpp"
#include "hardattn/transformer/runtime.hpp"
#include "hardattn/transformer/serialize.hpp"
#include "hardattn/testkit/corpus.hpp"
#include "hardattn/testkit/diff.hpp"
#include "hardattn/testkit/recognizer.hpp"

using namespace hardattn;
using json = nlohmann::json;

namespace {

enum class Format { Text, JsonLines };

struct Options {
  std::string input;
  bool has_input = false;
  bool trace = false;
  std::size_t bound = 8;
  std::string mode = "naive";
  std::string variant = "shallower";
  std::string mask = "strict";
  Format format = Format::Text;
  unsigned jobs = 1;
  std::string output;
};

Options opts;

void emit(const json& record, const std::string& text) {
  if (opts.format == Format::JsonLines)
    std::cout << record.dump() << "\n";
  else
    std::cout << text;
}

void write_output(const std::string& text) {
  if (opts.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(opts.output);
  if (!out) throw Error("cannot write '" + opts.output + "'");
  out << text;
}

// --- artifact loading ------------------------------------------------------

struct Formula {
  ltl::FormulaFile file;
};

using Artifact = std::variant<brasp::Program, Formula, automata::Dfa, automata::Cascade, transformer::Transformer>;

/// Reads a file, falling back to the embedded corpus for bare names.
std::string read_source(const std::string& path) {
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  auto names = testkit::corpus_files();
  std::string base = std::filesystem::path(path).filename().string();
  if (std::find(names.begin(), names.end(), base) != names.end()) return testkit::corpus_file(base);
  throw Error("no such file '" + path + "'");
}

/// The format is detected from the content: JSON objects are DFAs, cascades
/// or transformers; text with ":=" is B-RASP; anything else is a formula.
Artifact load(const std::string& path) {
  std::string text = read_source(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw Error(path + ": " + e.what());
    }
    if (j.contains("factors")) return automata::parse_cascade(text);
    if (j.contains("layers") || j.contains("embedding")) return transformer::parse_transformer(text);
    return automata::parse_dfa(text);
  }
  if (text.find(":=") != std::string::npos) return brasp::parse_program(text);
  auto f = ltl::parse_formula_file(text);
  if (!f.alphabet) throw Error(path + ": formula files need an 'alphabet:' line");
  return Formula{std::move(f)};
}

template <class T>
T load_as(const std::string& path, const char* what) {
  Artifact a = load(path);
  if (auto* p = std::get_if<T>(&a)) return std::move(*p);
  throw Error(path + " is not " + what);
}

const Alphabet& alphabet_of(const Artifact& a) {
  return std::visit(
      [](const auto& x) -> const Alphabet& {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Formula>)
          return *x.file.alphabet;
        else
          return x.alphabet();
      },
      a);
}

testkit::Recognizer recognizer_of(const Artifact& a) {
  return std::visit(
      [](const auto& x) -> testkit::Recognizer {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Formula>)
          return testkit::recognizer(x.file.formula, *x.file.alphabet);
        else if constexpr (std::is_same_v<T, automata::Cascade>)
          throw Error("a cascade is not a recognizer; compile it with 'automata cascade-compile'");
        else
          return testkit::recognizer(x);
      },
      a);
}

/// An artifact path or "oracle:<corpus entry>".
struct Side {
  std::string name;
  Alphabet alphabet;
  testkit::Recognizer accepts;
};

Side side(const std::string& spec) {
  if (spec.rfind("oracle:", 0) == 0) {
    auto e = testkit::corpus_entry(spec.substr(7));
    return {spec, e.alphabet, e.oracle.accepts};
  }
  Artifact a = load(spec);
  return {spec, alphabet_of(a), recognizer_of(a)};
}

Word input_word(const Alphabet& sigma) {
  if (!opts.has_input) throw Error("--input is required");
  if (opts.input.empty()) throw Error("input must be non-empty");
  return sigma.parse_word(opts.input);
}

std::string verdict(bool accepted) { return accepted ? "accept" : "reject"; }

// --- subcommands -----------------------------------------------------------

int cmd_run(const std::string& path) {
  Artifact a = load(path);
  Word w = input_word(alphabet_of(a));
  json rec{{"input", opts.input}};
  std::string text;
  bool ok = false;
  if (auto* p = std::get_if<brasp::Program>(&a)) {
    auto tr = brasp::eval(*p, w);
    ok = brasp::accepts(*p, w);
    if (opts.trace) {
      text += brasp::format_trace(*p, w, tr);
      json rows = json::object();
      for (std::size_t t = 0; t < tr.names.size(); ++t) rows[tr.names[t]] = tr.row_bits(t);
      rec["trace"] = rows;
    }
  } else if (auto* f = std::get_if<Formula>(&a)) {
    auto vals = ltl::ltl_eval_all(f->file.formula, *f->file.alphabet, w);
    ok = vals.back();
    if (opts.trace) {
      std::string bits;
      for (bool b : vals) bits += b ? '1' : '0';
      text += "formula " + bits + "\n";
      rec["trace"] = bits;
    }
  } else if (auto* d = std::get_if<automata::Dfa>(&a)) {
    auto st = automata::run_dfa(*d, w);
    ok = st.accepted;
    if (opts.trace) {
      json states = json::array();
      for (auto q : st.states) {
        text += (states.empty() ? "" : " ") + d->state_name(q);
        states.push_back(d->state_name(q));
      }
      text += "\n";
      rec["trace"] = states;
    }
  } else if (auto* t = std::get_if<transformer::Transformer>(&a)) {
    ok = transformer::accepts_transformer(*t, w);
  } else {
    throw Error("cannot run a cascade directly; compile it with 'automata cascade-compile'");
  }
  rec["result"] = verdict(ok);
  emit(rec, text + verdict(ok) + "\n");
  return ok ? 0 : 1;
}

int cmd_transduce(const std::string& path) {
  auto prog = load_as<brasp::Program>(path, "a B-RASP program");
  Word w = input_word(prog.alphabet());
  std::string out = brasp::transduce(prog, w);
  std::string text;
  json rec{{"input", opts.input}, {"output", out}};
  if (opts.trace) {
    auto tr = brasp::eval(prog, w);
    text += brasp::format_trace(prog, w, tr);
    json rows = json::object();
    for (std::size_t t = 0; t < tr.names.size(); ++t) rows[tr.names[t]] = tr.row_bits(t);
    rec["trace"] = rows;
  }
  emit(rec, text + out + "\n");
  return 0;
}

int cmd_translate(const std::string& from, const std::string& to, const std::string& path) {
  bool nonstrict = opts.mask == "nonstrict";
  if (from == "ltl" && to == "brasp") {
    auto f = load_as<Formula>(path, "a formula file").file;
    auto formula = nonstrict ? ltl::to_nonstrict(f.formula) : f.formula;
    write_output(brasp::print_program(ltl::ltl_to_brasp(formula, *f.alphabet)));
  } else if (from == "brasp" && to == "ltl") {
    auto prog = load_as<brasp::Program>(path, "a B-RASP program");
    if (nonstrict) prog = brasp::to_nonstrict(prog);
    ltl::FormulaFile out{prog.alphabet(), {}, ltl::brasp_to_ltl(prog)};
    for (std::size_t k = 0; k < prog.predicate_families().size(); ++k)
      out.predicates.push_back(prog.predicate_families()[k]);
    write_output(ltl::print_formula_file(out));
  } else if (from == to && from == "brasp" && nonstrict) {
    write_output(brasp::print_program(brasp::to_nonstrict(load_as<brasp::Program>(path, "a B-RASP program"))));
  } else {
    throw Error("unsupported translation " + from + " -> " + to);
  }
  return 0;
}

int cmd_compile(const std::string& path, bool layernorm) {
  Artifact a = load(path);
  brasp::Program prog = [&] {
    if (auto* f = std::get_if<Formula>(&a)) return ltl::ltl_to_brasp(f->file.formula, *f->file.alphabet);
    if (auto* p = std::get_if<brasp::Program>(&a)) return *p;
    throw Error(path + " is not a B-RASP program or formula");
  }();
  transformer::Transformer t = [&] {
    if (opts.mode == "naive") return compiler::compile_naive(prog);
    if (opts.mode == "depth") return compiler::compile_depth_preserving(prog);
    throw Error("unknown --mode '" + opts.mode + "' (expected naive or depth)");
  }();
  if (layernorm) t = transformer::apply_layernorm_encoding(t);
  write_output(transformer::print_transformer(t));
  return 0;
}

int cmd_decompile(const std::string& path) {
  auto t = load_as<transformer::Transformer>(path, "a transformer weight file");
  auto d = compiler::decompile(t, compiler::parse_variant(opts.variant));
  write_output(brasp::print_program(d.program));
  std::cerr << "value set: " << d.values.values.size() << " values, " << d.values.bits << " bits\n";
  return 0;
}

int cmd_run_transformer(const std::string& path) {
  auto t = load_as<transformer::Transformer>(path, "a transformer weight file");
  Word w = input_word(t.alphabet());
  auto tr = transformer::run_transformer(t, w);
  json rec{{"input", opts.input}};
  std::string text;
  if (opts.trace) {
    json layers = json::array();
    for (std::size_t l = 0; l < tr.layers.size(); ++l) {
      json positions = json::array();
      for (std::size_t i = 0; i < tr.layers[l].size(); ++i) {
        std::string row;
        json cells = json::array();
        for (const auto& x : tr.layers[l][i]) {
          row += (row.empty() ? "" : " ") + x.str();
          cells.push_back(x.str());
        }
        text += "layer " + std::to_string(l) + " pos " + std::to_string(i + 1) + ": " + row + "\n";
        positions.push_back(cells);
      }
      layers.push_back(positions);
    }
    rec["layers"] = layers;
  }
  if (!tr.output) {
    rec["result"] = "no output layer";
    emit(rec, text + "no output layer\n");
    return 0;
  }
  bool ok = tr.output->sign() >= 0;
  rec["output"] = tr.output->str();
  rec["result"] = verdict(ok);
  emit(rec, text + "output " + tr.output->str() + "\n" + verdict(ok) + "\n");
  return ok ? 0 : 1;
}

int cmd_check_cf(const std::string& path) {
  auto d = load_as<automata::Dfa>(path, "a DFA");
  bool cf = automata::is_counter_free(d);
  json rec{{"counter_free", cf}, {"identity_reset", automata::is_identity_reset(d)},
           {"monoid_size", automata::transition_monoid(d).size()}};
  emit(rec, std::string(cf ? "counter-free" : "not counter-free") + " (transition monoid of " +
                std::to_string(automata::transition_monoid(d).size()) + " elements)\n");
  return cf ? 0 : 1;
}

int cmd_verify_hom(const std::string& cascade, const std::string& dfa) {
  auto c = load_as<automata::Cascade>(cascade, "a cascade");
  auto d = load_as<automata::Dfa>(dfa, "a DFA");
  bool ok = automata::check_homomorphism(c, d);
  emit(json{{"homomorphism", ok}}, std::string(ok ? "homomorphism holds" : "homomorphism fails") + "\n");
  return ok ? 0 : 1;
}

int cmd_cascade_compile(const std::string& cascade, const std::string& dfa) {
  auto c = load_as<automata::Cascade>(cascade, "a cascade");
  auto d = load_as<automata::Dfa>(dfa, "a DFA");
  write_output(brasp::print_program(automata::cascade_to_brasp(c, d)));
  return 0;
}

int cmd_diff(const std::string& lhs, const std::string& rhs) {
  Side a = side(lhs), b = side(rhs);
  if (!(a.alphabet == b.alphabet)) throw Error("the two sides have different alphabets");
  testkit::DiffOptions o;
  o.jobs = opts.jobs;
  o.lhs_name = a.name;
  o.rhs_name = b.name;
  auto r = testkit::diff_languages(a.accepts, b.accepts, a.alphabet, opts.bound, o);
  json mism = json::array();
  for (const auto& m : r.mismatches) mism.push_back(a.alphabet.format_word(m.word));
  emit(json{{"lhs", a.name},
            {"rhs", b.name},
            {"bound", r.bound},
            {"checked", r.checked},
            {"mismatches", r.mismatch_count},
            {"examples", mism}},
       r.summary(a.alphabet) + "\n");
  return r.equal() ? 0 : 1;
}

int cmd_stutter(const std::string& spec) {
  Side s = side(spec);
  auto r = testkit::stutter_invariant_up_to(s.accepts, s.alphabet, opts.bound);
  json rec{{"name", s.name}, {"bound", opts.bound}, {"checked", r.checked}, {"invariant", r.invariant}};
  std::string text;
  if (r.invariant) {
    text = "stutter-invariant up to length " + std::to_string(opts.bound) + " (" + std::to_string(r.checked) +
           " words)\n";
  } else {
    text = "not stutter-invariant: " + testkit::describe(*r.witness, s.alphabet) + "\n";
    rec["u"] = s.alphabet.format_word(r.witness->u);
    rec["a"] = s.alphabet.symbol(r.witness->a);
    rec["v"] = s.alphabet.format_word(r.witness->v);
  }
  emit(rec, text);
  return r.invariant ? 0 : 1;
}

int cmd_corpus(const std::string& action, const std::string& name) {
  if (action == "list") {
    for (const auto& e : testkit::corpus()) {
      std::string arts;
      if (e.program) arts += " program";
      if (e.formula) arts += " formula";
      if (e.since_formula) arts += " since";
      if (e.dfa) arts += " dfa";
      if (e.cascade) arts += " cascade";
      emit(json{{"name", e.name}, {"description", e.description}, {"bound", e.bound}},
           e.name + ": " + e.description + " [" + arts.substr(1) + "]\n");
    }
    return 0;
  }
  if (action == "files") {
    for (const auto& f : testkit::corpus_files()) emit(json{{"file", f}}, f + "\n");
    return 0;
  }
  if (action == "show") {
    if (name.empty()) throw Error("corpus show needs a file name");
    std::cout << testkit::corpus_file(name);
    return 0;
  }
  if (action == "check") {
    bool all = true;
    for (const auto& e : testkit::corpus()) {
      if (!name.empty() && e.name != name) continue;
      std::vector<std::pair<std::string, testkit::Recognizer>> arts;
      if (e.program) arts.emplace_back("program", testkit::recognizer(*e.program));
      if (e.formula) arts.emplace_back("formula", testkit::recognizer(*e.formula, e.alphabet));
      if (e.since_formula) arts.emplace_back("since", testkit::recognizer(*e.since_formula, e.alphabet));
      if (e.dfa) arts.emplace_back("dfa", testkit::recognizer(*e.dfa));
      for (const auto& [kind, r] : arts) {
        testkit::DiffOptions o;
        o.jobs = opts.jobs;
        o.lhs_name = e.name + "." + kind;
        o.rhs_name = e.oracle.name;
        auto rep = testkit::diff_languages(r, e.oracle.accepts, e.alphabet, e.bound, o);
        all = all && rep.equal();
        emit(json{{"entry", e.name}, {"artifact", kind}, {"bound", e.bound}, {"mismatches", rep.mismatch_count}},
             rep.summary(e.alphabet) + "\n");
      }
    }
    return all ? 0 : 1;
  }
  throw Error("unknown corpus action '" + action + "' (expected list, files, show or check)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hardattn: B-RASP, LTL, counter-free automata and masked hard-attention transformers"};
  app.require_subcommand(1);

  std::string format = "text";
  auto add_input = [&](CLI::App* c) {
    c->add_option("--input", opts.input, "input string")->each([](const std::string&) { opts.has_input = true; });
    c->add_flag("--trace", opts.trace, "print the full trace");
  };
  app.add_option("--format", format, "text or json-lines")->check(CLI::IsMember({"text", "json-lines"}));

  std::string file, file2, from = "ltl", to = "brasp", action = "list", name;
  bool layernorm = false;

  auto run = app.add_subcommand("run", "run a program, formula, DFA or transformer on --input");
  run->add_option("file", file)->required();
  add_input(run);

  auto transduce = app.add_subcommand("transduce", "output tokens of a transducer program");
  transduce->add_option("file", file)->required();
  add_input(transduce);

  auto translate = app.add_subcommand("translate", "translate between LTL and B-RASP");
  translate->add_option("--from", from)->check(CLI::IsMember({"ltl", "brasp"}));
  translate->add_option("--to", to)->check(CLI::IsMember({"ltl", "brasp"}));
  translate->add_option("--mask", opts.mask, "strict or nonstrict")->check(CLI::IsMember({"strict", "nonstrict"}));
  translate->add_option("-o,--output", opts.output);
  translate->add_option("file", file)->required();

  auto compile = app.add_subcommand("compile", "compile a program or formula to a transformer");
  compile->add_option("--mode", opts.mode, "naive or depth")->check(CLI::IsMember({"naive", "depth"}));
  compile->add_flag("--layernorm", layernorm, "apply the layernorm pair encoding");
  compile->add_option("-o,--output", opts.output);
  compile->add_option("file", file)->required();

  auto decompile = app.add_subcommand("decompile", "decompile a transformer to B-RASP");
  decompile->add_option("--variant", opts.variant, "shallower or smaller")
      ->check(CLI::IsMember({"shallower", "smaller"}));
  decompile->add_option("-o,--output", opts.output);
  decompile->add_option("file", file)->required();

  auto run_t = app.add_subcommand("run-transformer", "run a transformer weight file");
  run_t->add_option("file", file)->required();
  add_input(run_t);

  auto automata_cmd = app.add_subcommand("automata", "counter-free automata and cascades");
  automata_cmd->require_subcommand(1);
  auto check_cf = automata_cmd->add_subcommand("check-cf", "is the DFA counter-free");
  check_cf->add_option("dfa", file)->required();
  auto cascade_compile = automata_cmd->add_subcommand("cascade-compile", "B-RASP program from a cascade");
  cascade_compile->add_option("cascade", file)->required();
  cascade_compile->add_option("dfa", file2)->required();
  cascade_compile->add_option("-o,--output", opts.output);
  auto verify_hom = automata_cmd->add_subcommand("verify-hom", "check the cascade homomorphism");
  verify_hom->add_option("cascade", file)->required();
  verify_hom->add_option("dfa", file2)->required();

  auto diff = app.add_subcommand("diff", "compare two recognizers on all strings up to --bound");
  diff->add_option("lhs", file, "artifact file or oracle:<entry>")->required();
  diff->add_option("rhs", file2, "artifact file or oracle:<entry>")->required();
  diff->add_option("--bound", opts.bound);
  diff->add_option("--jobs", opts.jobs)->check(CLI::PositiveNumber);

  auto stutter = app.add_subcommand("stutter-check", "search for a stuttering witness up to --bound");
  stutter->add_option("file", file, "artifact file or oracle:<entry>")->required();
  stutter->add_option("--bound", opts.bound);

  auto corpus = app.add_subcommand("corpus", "list, show or check the built-in corpus");
  corpus->add_option("action", action, "list, files, show or check");
  corpus->add_option("name", name);
  corpus->add_option("--jobs", opts.jobs)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opts.format = format == "json-lines" ? Format::JsonLines : Format::Text;

  try {
    if (*run) return cmd_run(file);
    if (*transduce) return cmd_transduce(file);
    if (*translate) return cmd_translate(from, to, file);
    if (*compile) return cmd_compile(file, layernorm);
    if (*decompile) return cmd_decompile(file);
    if (*run_t) return cmd_run_transformer(file);
    if (*check_cf) return cmd_check_cf(file);
    if (*cascade_compile) return cmd_cascade_compile(file, file2);
    if (*verify_hom) return cmd_verify_hom(file, file2);
    if (*diff) return cmd_diff(file, file2);
    if (*stutter) return cmd_stutter(file);
    if (*corpus) return cmd_corpus(action, name);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
