#pragma once
// JSON and DOT serialization plus file helpers. Schema violations raise
// io_error; payloads that parse but describe a broken graph raise
// structural_error, matching the in-memory checks.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mps/operators.hpp"
#include "mps/structure.hpp"
#include "mps/synthesis.hpp"
#include "mps/ttree.hpp"

namespace mps {

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw io_error(std::string("missing field: ") + key);
  return j.at(key);
}

inline std::int64_t require_int(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = require_field(j, key);
  if (!v.is_number_integer()) throw io_error(std::string("field must be an integer: ") + key);
  return v.get<std::int64_t>();
}

inline std::string require_string(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = require_field(j, key);
  if (!v.is_string()) throw io_error(std::string("field must be a string: ") + key);
  return v.get<std::string>();
}

inline const nlohmann::json& require_array(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = require_field(j, key);
  if (!v.is_array()) throw io_error(std::string("field must be an array: ") + key);
  return v;
}

inline void require_format(const nlohmann::json& j, const char* tag) {
  const std::string got = require_string(j, "format");
  if (got != tag) throw io_error("unsupported format: " + got);
}

}  // namespace detail

inline nlohmann::json structure_to_json(const structure& s) {
  check_well_formed(s);
  nlohmann::json nodes = nlohmann::json::array();
  for (node_id v = 0; v < static_cast<node_id>(s.nodes.size()); ++v) {
    const node& nd = s.nodes[v];
    nlohmann::json item;
    item["id"] = v;
    if (nd.kind == node_kind::input) {
      item["kind"] = "input";
      item["index"] = nd.index;
    } else {
      item["kind"] = "comp";
      item["operands"] = {nd.lhs, nd.rhs};
    }
    if (nd.output_index > 0) item["output_index"] = nd.output_index;
    nodes.push_back(std::move(item));
  }
  nlohmann::json j;
  j["format"] = "mps-structure/v1";
  j["n"] = s.n;
  j["nodes"] = std::move(nodes);
  return j;
}

// Accepts nodes under arbitrary unique ids in any order; operands may refer
// forward. Ids are rebased to positions in listed order.
inline structure structure_from_json(const nlohmann::json& j) {
  detail::require_format(j, "mps-structure/v1");
  const std::int64_t n = detail::require_int(j, "n");
  if (n < 0 || n > 1000000) throw structural_error("structure: n out of range");
  const nlohmann::json& nodes = detail::require_array(j, "nodes");
  if (nodes.size() > 100000) throw structural_error("structure: node count cap exceeded");

  std::map<std::int64_t, node_id> position;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::int64_t id = detail::require_int(nodes[i], "id");
    if (!position.emplace(id, static_cast<node_id>(i)).second)
      throw structural_error("structure: duplicate node id " + std::to_string(id));
  }

  structure s;
  s.n = static_cast<int>(n);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const nlohmann::json& item = nodes[i];
    const std::string kind = detail::require_string(item, "kind");
    node nd;
    if (kind == "input") {
      if (item.contains("operands")) throw io_error("input nodes carry no operands");
      nd.kind = node_kind::input;
      const std::int64_t index = detail::require_int(item, "index");
      if (index < 0 || index > 1000000) throw structural_error("structure: input index out of range");
      nd.index = static_cast<int>(index);
    } else if (kind == "comp") {
      if (item.contains("index")) throw io_error("comp nodes carry no input index");
      nd.kind = node_kind::comp;
      const nlohmann::json& ops = detail::require_array(item, "operands");
      if (ops.size() != 2 || !ops[0].is_number_integer() || !ops[1].is_number_integer())
        throw io_error("operands must be an array of two node ids");
      const std::int64_t a = ops[0].get<std::int64_t>(), b = ops[1].get<std::int64_t>();
      auto ita = position.find(a), itb = position.find(b);
      if (ita == position.end() || itb == position.end())
        throw structural_error("structure: operand references unknown node id");
      if (ita->second == itb->second)
        throw structural_error("structure: comp operands must be distinct nodes");
      nd.lhs = std::min(ita->second, itb->second);
      nd.rhs = std::max(ita->second, itb->second);
    } else {
      throw io_error("unknown node kind: " + kind);
    }
    if (item.contains("output_index")) {
      const std::int64_t oi = detail::require_int(item, "output_index");
      if (oi < 0 || oi > 1000000) throw structural_error("structure: output index out of range");
      nd.output_index = static_cast<int>(oi);
    }
    s.nodes.push_back(nd);
  }

  check_well_formed(s);
  topological_order(s);
  return s;
}

inline std::string ttree_vertex_name(const ttree& t, int v) {
  return v < t.n ? "x" + std::to_string(v + 1) : "v" + std::to_string(v - t.n + 1);
}

inline nlohmann::json ttree_to_json(const ttree& t) {
  ttree_adjacency(t);
  std::vector<std::pair<std::string, std::string>> named;
  for (const auto& [a, b] : t.edges) {
    std::string na = ttree_vertex_name(t, a), nb = ttree_vertex_name(t, b);
    if (nb < na) std::swap(na, nb);
    named.emplace_back(std::move(na), std::move(nb));
  }
  std::sort(named.begin(), named.end());
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : named) edges.push_back({a, b});
  nlohmann::json j;
  j["format"] = "mps-ttree/v1";
  j["n"] = t.n;
  j["edges"] = std::move(edges);
  return j;
}

inline ttree ttree_from_json(const nlohmann::json& j) {
  detail::require_format(j, "mps-ttree/v1");
  const std::int64_t n = detail::require_int(j, "n");
  if (n < 0 || n > 1000000) throw structural_error("ttree: n out of range");
  const nlohmann::json& edges = detail::require_array(j, "edges");
  if (edges.size() > 100000) throw structural_error("ttree: edge count cap exceeded");

  auto parse_vertex = [&](const std::string& name) -> int {
    if (name.size() < 2 || (name[0] != 'x' && name[0] != 'v'))
      throw io_error("unknown vertex name: " + name);
    std::int64_t k = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') throw io_error("unknown vertex name: " + name);
      k = k * 10 + (name[i] - '0');
      if (k > 1000000) throw io_error("unknown vertex name: " + name);
    }
    if (name[0] == 'x') {
      if (k < 1 || k > n) throw io_error("leaf name out of range: " + name);
      return static_cast<int>(k - 1);
    }
    if (k < 1) throw io_error("unknown vertex name: " + name);
    return static_cast<int>(n + k - 1);
  };

  ttree t;
  t.n = static_cast<int>(n);
  int max_vertex = static_cast<int>(n) - 1;
  for (const nlohmann::json& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw io_error("edges must be arrays of two vertex names");
    const int a = parse_vertex(e[0].get<std::string>());
    const int b = parse_vertex(e[1].get<std::string>());
    max_vertex = std::max({max_vertex, a, b});
    t.edges.emplace_back(a, b);
  }
  t.vertex_count = max_vertex + 1;
  ttree_adjacency(t);
  return t;
}

inline nlohmann::json lut_to_json(const lut_table& lut) {
  nlohmann::json j;
  j["format"] = "mps-lut/v1";
  j["name"] = lut.name;
  j["m"] = lut.m;
  j["table"] = lut.table;
  return j;
}

inline lut_table lut_from_json(const nlohmann::json& j) {
  detail::require_format(j, "mps-lut/v1");
  lut_table lut;
  lut.name = detail::require_string(j, "name");
  const std::int64_t m = detail::require_int(j, "m");
  if (m < 1 || m > 64) throw operator_error("lut: m out of range");
  lut.m = static_cast<int>(m);
  const nlohmann::json& table = detail::require_array(j, "table");
  if (static_cast<std::int64_t>(table.size()) != m) throw io_error("lut: table must have m rows");
  for (const nlohmann::json& row : table) {
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != m)
      throw io_error("lut: rows must be arrays of m entries");
    std::vector<std::int64_t> out;
    for (const nlohmann::json& cell : row) {
      if (!cell.is_number_integer()) throw io_error("lut entries must be integers");
      out.push_back(cell.get<std::int64_t>());
    }
    lut.table.push_back(std::move(out));
  }
  return lut;
}

inline std::string structure_to_dot(const structure& s) {
  check_well_formed(s);
  std::string out = "digraph structure {\n  rankdir=BT;\n";
  for (node_id v = 0; v < static_cast<node_id>(s.nodes.size()); ++v) {
    const node& nd = s.nodes[v];
    std::string label =
        nd.kind == node_kind::input ? "x" + std::to_string(nd.index) : std::string();
    if (nd.output_index > 0) {
      if (!label.empty()) label += ' ';
      label += "y" + std::to_string(nd.output_index);
    }
    out += "  n" + std::to_string(v);
    out += nd.kind == node_kind::input ? " [shape=box" : " [shape=circle";
    out += ",label=\"" + label + "\"";
    if (nd.output_index > 0) out += ",style=dotted";
    out += "];\n";
  }
  for (node_id v = 0; v < static_cast<node_id>(s.nodes.size()); ++v) {
    const node& nd = s.nodes[v];
    if (nd.kind != node_kind::comp) continue;
    out += "  n" + std::to_string(nd.lhs) + " -> n" + std::to_string(v) + ";\n";
    out += "  n" + std::to_string(nd.rhs) + " -> n" + std::to_string(v) + ";\n";
  }
  out += "}\n";
  return out;
}

inline std::string ttree_to_dot(const ttree& t) {
  ttree_adjacency(t);
  std::string out = "graph ttree {\n";
  for (int v = 0; v < t.vertex_count; ++v) {
    const std::string name = ttree_vertex_name(t, v);
    out += "  " + name;
    out += v < t.n ? " [shape=box];\n" : " [shape=circle,label=\"\"];\n";
  }
  std::vector<std::pair<std::string, std::string>> named;
  for (const auto& [a, b] : t.edges) {
    std::string na = ttree_vertex_name(t, a), nb = ttree_vertex_name(t, b);
    if (nb < na) std::swap(na, nb);
    named.emplace_back(std::move(na), std::move(nb));
  }
  std::sort(named.begin(), named.end());
  for (const auto& [a, b] : named) out += "  " + a + " -- " + b + ";\n";
  out += "}\n";
  return out;
}

// Plan summary: which construction each level used and its children, base
// structure first.
inline nlohmann::json manifest_json(const synthesis_step& step) {
  const char* label = "";
  switch (step.dispatch) {
    case phi_case::trivial: label = "E1"; break;
    case phi_case::complexity_optimal: label = "E2"; break;
    case phi_case::infeasible: label = "E3"; break;
    case phi_case::power_window: label = "E4"; break;
    case phi_case::decompose: label = "E5"; break;
  }
  nlohmann::json j;
  j["case"] = label;
  j["n"] = step.n;
  j["tau"] = step.tau;
  j["parts"] = nlohmann::json::array();
  for (const synthesis_step& child : step.children) j["parts"].push_back(manifest_json(child));
  return j;
}

inline std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw io_error(std::string("invalid JSON: ") + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw io_error("cannot read " + path);
  return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot create " + path);
  out << content;
  out.flush();
  if (!out) throw io_error("cannot write " + path);
}

inline structure load_structure(const std::string& path) {
  return structure_from_json(parse_json_text(read_text_file(path)));
}

inline void save_structure(const std::string& path, const structure& s) {
  write_text_file(path, dump_json(structure_to_json(s)));
}

inline ttree load_ttree(const std::string& path) {
  return ttree_from_json(parse_json_text(read_text_file(path)));
}

inline void save_ttree(const std::string& path, const ttree& t) {
  write_text_file(path, dump_json(ttree_to_json(t)));
}

inline lut_table load_lut(const std::string& path) {
  return lut_from_json(parse_json_text(read_text_file(path)));
}

}  // namespace mps
