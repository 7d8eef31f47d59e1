#include "hardattn/transformer/serialize.hpp"

#include <json.hpp>

#include "hardattn/core/error.hpp"

namespace hardattn::transformer {

using nlohmann::json;

namespace {

json vector_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

json matrix_json(const Matrix& m) {
  json entries = json::array();
  for (const auto& e : m.entries()) entries.push_back({e.row, e.col, e.value.str()});
  return {{"shape", {m.rows(), m.cols()}}, {"entries", entries}};
}

json norm_json(const LayerNorm& n) { return {{"gamma", vector_json(n.gamma)}, {"beta", vector_json(n.beta)}}; }

Rational scalar(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error("scalars must be \"p/q\" strings or integers");
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t count(const json& j) {
  if (!j.is_number_unsigned()) throw Error("expected a non-negative integer");
  return j.get<std::size_t>();
}

Vector vector_of(const json& j) {
  if (!j.is_array()) throw Error("expected a vector");
  Vector v;
  for (const auto& x : j) v.push_back(scalar(x));
  return v;
}

Matrix matrix_of(const json& j) {
  if (j.is_array()) {
    std::size_t rows = j.size(), cols = rows ? j[0].size() : 0;
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (!j[r].is_array() || j[r].size() != cols) throw Error("ragged matrix");
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c, scalar(j[r][c]));
    }
    return m;
  }
  const json& shape = field(j, "shape");
  if (!shape.is_array() || shape.size() != 2) throw Error("matrix shape must be [rows, cols]");
  Matrix m(count(shape[0]), count(shape[1]));
  for (const auto& e : field(j, "entries")) {
    if (!e.is_array() || e.size() != 3) throw Error("matrix entries must be [row, col, value]");
    std::size_t r = count(e[0]), c = count(e[1]);
    if (r >= m.rows() || c >= m.cols()) throw Error("matrix entry outside the shape");
    if (!m.at(r, c).is_zero()) throw Error("duplicate matrix entry");
    m.set(r, c, scalar(e[2]));
  }
  return m;
}

LayerNorm norm_of(const json& j) { return LayerNorm{vector_of(field(j, "gamma")), vector_of(field(j, "beta"))}; }

}  // namespace

std::string print_transformer(const Transformer& t) {
  json j;
  j["format"] = "hardattn-transformer";
  j["width"] = t.width();
  j["alphabet"] = t.alphabet().symbols();
  if (!t.coordinate_names().empty()) j["coordinates"] = t.coordinate_names();
  json emb = json::object();
  for (std::size_t a = 0; a < t.alphabet().size(); ++a) emb[t.alphabet().symbol(a)] = vector_json(t.embedding()[a]);
  j["embedding"] = emb;
  json pos = json::array();
  for (const auto& p : t.positions()) {
    json pj;
    if (p.kind == PositionSpec::Kind::Sinusoidal) {
      pj["kind"] = "sinusoidal";
      pj["frequencies"] = vector_json(p.frequencies);
    } else {
      pj["kind"] = "predicates";
      pj["families"] = p.families;
    }
    pj["offset"] = p.offset;
    if (p.paired) pj["paired"] = true;
    pos.push_back(pj);
  }
  if (!pos.empty()) j["positions"] = pos;
  json layers = json::array();
  for (const auto& l : t.layers()) {
    json lj;
    json heads = json::array();
    for (const auto& h : l.heads) {
      json hj{{"mask", mask_text(h.mask)},
              {"tiebreak", direction_text(h.tiebreak)},
              {"score", matrix_json(h.score)},
              {"value", matrix_json(h.value)}};
      if (!h.value_bias.empty()) hj["value_bias"] = vector_json(h.value_bias);
      heads.push_back(hj);
    }
    lj["heads"] = heads;
    lj["ffn"] = {{"w1", matrix_json(l.ffn.w1)},
                 {"b1", vector_json(l.ffn.b1)},
                 {"w2", matrix_json(l.ffn.w2)},
                 {"b2", vector_json(l.ffn.b2)}};
    if (l.attention_norm) lj["attention_norm"] = norm_json(*l.attention_norm);
    if (l.ffn_norm) lj["ffn_norm"] = norm_json(*l.ffn_norm);
    layers.push_back(lj);
  }
  j["layers"] = layers;
  if (t.output()) j["output"] = {{"weights", vector_json(t.output()->weights)}, {"bias", t.output()->bias.str()}};
  return j.dump(1) + "\n";
}

Transformer parse_transformer(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  try {
    std::size_t width = count(field(j, "width"));
    std::vector<std::string> symbols;
    for (const auto& s : field(j, "alphabet")) symbols.push_back(s.get<std::string>());
    Alphabet sigma(symbols);
    std::vector<Vector> emb;
    const json& ej = field(j, "embedding");
    for (const auto& s : symbols) {
      if (!ej.contains(s)) throw Error("no embedding for symbol '" + s + "'");
      emb.push_back(vector_of(ej.at(s)));
    }
    std::vector<PositionSpec> positions;
    if (j.contains("positions"))
      for (const auto& pj : j.at("positions")) {
        PositionSpec p;
        std::string kind = field(pj, "kind").get<std::string>();
        if (kind == "sinusoidal") {
          p.kind = PositionSpec::Kind::Sinusoidal;
          p.frequencies = vector_of(field(pj, "frequencies"));
        } else if (kind == "predicates") {
          p.kind = PositionSpec::Kind::Predicates;
          for (const auto& f : field(pj, "families")) p.families.push_back(f.get<std::string>());
        } else {
          throw Error("unknown position embedding kind '" + kind + "'");
        }
        p.offset = count(field(pj, "offset"));
        p.paired = pj.value("paired", false);
        positions.push_back(std::move(p));
      }
    std::vector<Layer> layers;
    for (const auto& lj : field(j, "layers")) {
      Layer l;
      for (const auto& hj : field(lj, "heads")) {
        AttentionHead h;
        h.mask = parse_mask(field(hj, "mask").get<std::string>());
        h.tiebreak = parse_direction(field(hj, "tiebreak").get<std::string>());
        h.score = matrix_of(field(hj, "score"));
        h.value = matrix_of(field(hj, "value"));
        if (hj.contains("value_bias")) h.value_bias = vector_of(hj.at("value_bias"));
        l.heads.push_back(std::move(h));
      }
      const json& fj = field(lj, "ffn");
      l.ffn = FeedForward{matrix_of(field(fj, "w1")), vector_of(field(fj, "b1")), matrix_of(field(fj, "w2")),
                          vector_of(field(fj, "b2"))};
      if (lj.contains("attention_norm")) l.attention_norm = norm_of(lj.at("attention_norm"));
      if (lj.contains("ffn_norm")) l.ffn_norm = norm_of(lj.at("ffn_norm"));
      layers.push_back(std::move(l));
    }
    std::optional<OutputLayer> out;
    if (j.contains("output"))
      out = OutputLayer{vector_of(field(j.at("output"), "weights")), scalar(field(j.at("output"), "bias"))};
    std::vector<std::string> names;
    if (j.contains("coordinates"))
      for (const auto& n : j.at("coordinates")) names.push_back(n.get<std::string>());
    return Transformer(sigma, width, std::move(emb), std::move(positions), std::move(layers), std::move(out),
                       std::move(names));
  } catch (const json::exception& e) {
    throw Error(std::string("malformed transformer file: ") + e.what());
  }
}

}  // namespace hardattn::transformer
