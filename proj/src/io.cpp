#include "subrank/io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace subrank::io {

using json = nlohmann::json;

hg::KGraph read_edge_list_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("edge list: empty input");
  std::istringstream head(line);
  int k = 0;
  if (!(head >> k) || k <= 0) throw std::invalid_argument("edge list: bad order");
  std::vector<int> sizes(k);
  for (int i = 0; i < k; ++i) {
    if (!(head >> sizes[i])) throw std::invalid_argument("edge list: bad sizes line");
  }
  std::vector<hg::Edge> edges;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    hg::Edge e;
    int v = 0;
    while (row >> v) e.push_back(v);
    if (e.empty()) continue;
    if (static_cast<int>(e.size()) != k) throw std::invalid_argument("edge list: arity mismatch");
    edges.push_back(std::move(e));
  }
  return hg::KGraph::make(k, std::move(sizes), std::move(edges));
}

void write_edge_list_text(std::ostream& out, const hg::KGraph& g) {
  out << g.order;
  for (int s : g.sizes) out << " " << s;
  out << "\n";
  for (const hg::Edge& e : g.edges) {
    for (size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << "\n";
  }
}

hg::KGraph read_edge_list_json(std::istream& in) {
  json j = json::parse(in);
  return hg::KGraph::make(j.at("order").get<int>(), j.at("sizes").get<std::vector<int>>(),
                          j.at("edges").get<std::vector<hg::Edge>>());
}

void write_edge_list_json(std::ostream& out, const hg::KGraph& g) {
  json j{{"order", g.order}, {"sizes", g.sizes}, {"edges", g.edges}};
  out << j.dump(2) << "\n";
}

hg::KGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open edge file: " + path);
  int c = in.peek();
  while (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
    in.get();
    c = in.peek();
  }
  return c == '{' ? read_edge_list_json(in) : read_edge_list_text(in);
}

gf2::Subspace read_subspace_text(std::istream& in) {
  int n = 0, d = 0;
  if (!(in >> n >> d) || n < 0 || d < 0) throw std::invalid_argument("subspace: bad header");
  std::vector<BitVec> rows;
  std::string s;
  for (int i = 0; i < d; ++i) {
    if (!(in >> s) || static_cast<int>(s.size()) != n) {
      throw std::invalid_argument("subspace: bad basis row");
    }
    rows.push_back(BitVec::from_string(s));
  }
  return gf2::Subspace::span(n, rows);
}

void write_subspace_text(std::ostream& out, const gf2::Subspace& v) {
  out << v.ambient() << " " << v.dim() << "\n";
  for (const BitVec& b : v.basis()) out << b.to_string() << "\n";
}

gf2::Subspace load_subspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open subspace file: " + path);
  return read_subspace_text(in);
}

cw::AlphaMaps read_alpha_maps(std::istream& in) {
  // Lines "i: v->a v->a ..." (also accepts the arrow spelled as UTF-8).
  std::map<int, std::map<int, long long>> parsed;
  std::string line;
  while (std::getline(in, line)) {
    for (size_t pos; (pos = line.find("\xe2\x86\x92")) != std::string::npos;) {
      line.replace(pos, 3, "->");
    }
    std::istringstream row(line);
    std::string head;
    if (!(row >> head)) continue;
    if (head.back() == ':') head.pop_back();
    int coord = std::stoi(head);
    std::string pair;
    while (row >> pair) {
      size_t arrow = pair.find("->");
      if (arrow == std::string::npos) throw std::invalid_argument("alpha: expected v->a pair");
      int v = std::stoi(pair.substr(0, arrow));
      long long a = std::stoll(pair.substr(arrow + 2));
      parsed[coord][v] = a;
    }
  }
  if (parsed.empty()) throw std::invalid_argument("alpha: empty file");
  cw::AlphaMaps alpha;
  int k = parsed.rbegin()->first;
  alpha.maps.assign(k, {});
  for (auto& [coord, entries] : parsed) {
    if (coord < 1 || coord > k) throw std::invalid_argument("alpha: bad coordinate index");
    int max_v = entries.rbegin()->first;
    std::vector<long long>& m = alpha.maps[coord - 1];
    m.assign(max_v, 0);
    for (int v = 1; v <= max_v; ++v) {
      auto it = entries.find(v);
      if (it == entries.end()) throw std::invalid_argument("alpha: missing vertex value");
      m[v - 1] = it->second;
    }
  }
  return alpha;
}

void write_alpha_maps(std::ostream& out, const cw::AlphaMaps& alpha) {
  for (size_t i = 0; i < alpha.maps.size(); ++i) {
    out << (i + 1) << ":";
    for (size_t v = 0; v < alpha.maps[i].size(); ++v) {
      out << " " << (v + 1) << "->" << alpha.maps[i][v];
    }
    out << "\n";
  }
}

cw::AlphaMaps load_alpha_maps(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open alpha file: " + path);
  return read_alpha_maps(in);
}

}  // namespace subrank::io
