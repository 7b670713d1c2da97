#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mixedcut/multigraph.hpp"

namespace mixedcut {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

// Text format: `mg <n>` header, then `e <u> <v> <mult>` lines; `#` comments.
inline MultiGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  int n = 0;
  std::vector<EdgeSpec> spec;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (!have_header) {
      if (tag != "mg") throw ParseError(line_no, "expected 'mg <n>' header");
      if (!(ls >> n) || n < 0) throw ParseError(line_no, "bad vertex count");
      have_header = true;
      continue;
    }
    if (tag != "e") throw ParseError(line_no, "unknown directive '" + tag + "'");
    int u, v, mult;
    if (!(ls >> u >> v >> mult)) throw ParseError(line_no, "expected 'e <u> <v> <mult>'");
    if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError(line_no, "vertex out of range");
    if (u == v) throw ParseError(line_no, "loop edges are not allowed");
    if (mult < 1) throw ParseError(line_no, "multiplicity must be >= 1");
    spec.push_back({u, v, mult});
  }
  if (!have_header) throw ParseError(line_no, "missing 'mg <n>' header");
  return build_graph(n, spec);
}

// Canonical form: edges grouped by endpoint pair, endpoints ascending.
inline std::string serialize_graph(const MultiGraph& g) {
  std::map<std::pair<VertexId, VertexId>, int> mult;
  for (const auto& [u, v] : g.edge_list()) mult[{std::min(u, v), std::max(u, v)}]++;
  std::ostringstream out;
  out << "mg " << g.vertex_count() << "\n";
  for (const auto& [pair, m] : mult)
    out << "e " << pair.first << " " << pair.second << " " << m << "\n";
  return out.str();
}

// FNV-1a over the canonical serialization; stable input digest for reports.
inline std::string graph_digest(const MultiGraph& g) {
  std::string text = serialize_graph(g);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

}  // namespace mixedcut
