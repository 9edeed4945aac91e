#include "wiresafe/serialize.hpp"

namespace wiresafe {

namespace {

Word hex_element(const Json& j) {
  if (!j.is_string()) throw Error("field elements must be hex strings, got " + j.dump());
  return parse_hex(j.get<std::string>());
}

std::string node_name(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw Error("node names must be strings or integers, got " + j.dump());
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json field_to_json(const FieldSpec& spec) { return {{"m", spec.m()}, {"modulus", to_hex(spec.modulus())}}; }

FieldSpec field_from_json(const Json& j) {
  const int m = require(j, "m").get<int>();
  if (!j.contains("modulus") || j.at("modulus").is_null()) return FieldSpec::standard(m);
  return FieldSpec(m, hex_element(j.at("modulus")));
}

Json vector_to_json(const ExtVector& v) {
  Json out = Json::array();
  for (auto w : v.values()) out.push_back(to_hex(w));
  return out;
}

ExtVector vector_from_json(const Json& j, const FieldSpec& spec) {
  if (!j.is_array()) throw Error("expected an array of hex field elements");
  std::vector<Word> values;
  for (const auto& e : j) values.push_back(hex_element(e));
  return ExtVector(spec, std::move(values));
}

Json matrix_to_json(const ExtMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (auto w : m.row(r)) row.push_back(to_hex(w));
    out.push_back(std::move(row));
  }
  return out;
}

Json matrix_to_json(const BaseMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.get(r, c) ? 1 : 0);
    out.push_back(std::move(row));
  }
  return out;
}

BaseMatrix base_matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected a binary matrix as an array of rows");
  std::vector<std::vector<int>> rows;
  for (const auto& r : j) rows.push_back(r.get<std::vector<int>>());
  return BaseMatrix::from_rows(rows);
}

ExtMatrix ext_matrix_from_json(const Json& j, const FieldSpec& spec) {
  if (!j.is_array()) throw Error("expected a matrix as an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  ExtMatrix out(spec, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j.at(r).is_array() || j.at(r).size() != cols) throw Error("matrix rows have different lengths");
    for (std::size_t c = 0; c < cols; ++c) {
      const Word w = hex_element(j.at(r).at(c));
      if (!spec.contains(w)) throw Error("matrix entry " + to_hex(w) + " is not in the field");
      out(r, c) = w;
    }
  }
  return out;
}

Json code_to_json(const GabidulinCode& code) {
  return {{"field", field_to_json(code.spec())},
          {"n", code.n()},
          {"k", code.k()},
          {"generators", vector_to_json(code.generators())},
          {"H", matrix_to_json(code.parity_check())}};
}

GabidulinCode code_from_json(const Json& j) {
  const FieldSpec spec = field_from_json(require(j, "field"));
  const auto n = require(j, "n").get<std::size_t>();
  const auto k = require(j, "k").get<std::size_t>();
  std::optional<std::vector<Word>> gens;
  if (j.contains("generators")) {
    gens.emplace();
    for (const auto& g : j.at("generators")) gens->push_back(hex_element(g));
  }
  return build_gabidulin(spec, n, k, std::move(gens));
}

Json scheme_to_json(const GabidulinCode& code) {
  Json out = code_to_json(code);
  out["scheme"] = "gabidulin";
  out["mu"] = code.dimension();
  return out;
}

Json scheme_to_json(const std::string& kind, const ExtMatrix& h) {
  return {{"scheme", kind},
          {"field", field_to_json(h.spec())},
          {"n", h.cols()},
          {"k", h.rows()},
          {"mu", h.cols() - h.rows()},
          {"H", matrix_to_json(h)}};
}

CosetScheme scheme_from_json(const Json& j) {
  const std::string kind = j.value("scheme", std::string("gabidulin"));
  if (kind == "gabidulin") return CosetScheme(code_from_json(j));
  const FieldSpec spec = field_from_json(require(j, "field"));
  const ExtMatrix h = ext_matrix_from_json(require(j, "H"), spec);
  if (j.contains("n") && j.at("n").get<std::size_t>() != h.cols()) throw Error("scheme 'n' does not match H");
  return CosetScheme::from_parity_check(h);
}

Json network_to_json(const Network& net) {
  Json edges = Json::array();
  for (const auto& e : net.edges())
    edges.push_back({{"id", e.id}, {"from", net.nodes()[e.tail]}, {"to", net.nodes()[e.head]}});
  Json sinks = Json::array();
  for (auto t : net.sinks()) sinks.push_back(net.nodes()[t]);
  return {{"nodes", net.nodes()}, {"edges", std::move(edges)}, {"source", net.nodes()[net.source()]}, {"sinks", std::move(sinks)}};
}

Network network_from_json(const Json& j) {
  std::vector<std::string> nodes;
  for (const auto& n : require(j, "nodes")) nodes.push_back(node_name(n));
  std::vector<EdgeSpec> edges;
  for (const auto& e : require(j, "edges"))
    edges.push_back({require(e, "id").get<int>(), node_name(require(e, "from")), node_name(require(e, "to"))});
  std::vector<std::string> sinks;
  for (const auto& t : require(j, "sinks")) sinks.push_back(node_name(t));
  return Network(std::move(nodes), std::move(edges), node_name(require(j, "source")), sinks);
}

Json entropy_to_json(const Entropy& h) {
  Json out = {{"exact", h.exact}, {"value", h.approx}};
  if (h.exact) out["bits"] = h.bits.to_string();
  return out;
}

Json entry_to_json(const SecrecyEntry& e) {
  Json out = {{"B", matrix_to_json(e.b)},
              {"rank_B", e.rank_b},
              {"stack_nonsingular", e.stack_nonsingular},
              {"H_S", entropy_to_json(e.h_s)},
              {"H_S_given_W", entropy_to_json(e.h_s_given_w)},
              {"H_X", entropy_to_json(e.h_x)},
              {"H_S_given_X", entropy_to_json(e.h_s_given_x)},
              {"independent", e.independent},
              {"pairs", e.pairs}};
  if (!e.edges.empty()) out["edges"] = e.edges;
  if (e.rank_b < e.b.rows()) out["B_reduced"] = matrix_to_json(e.b_reduced);
  return out;
}

Json report_to_json(const SecrecyReport& report) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    Json e = entry_to_json(report.entries[i]);
    e["set_id"] = i;
    entries.push_back(std::move(e));
  }
  return {{"entries", std::move(entries)},
          {"summary",
           {{"sets_audited", report.sets_audited},
            {"secure", report.secure},
            {"verdict", report.secure ? "SECURE" : "INSECURE"},
            {"failures", report.failures},
            {"singular_stacks", report.singular_stacks}}}};
}

}  // namespace wiresafe
