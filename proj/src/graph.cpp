#include "tdsp/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "tdsp/errors.hpp"

namespace tdsp {

std::ostream& operator<<(std::ostream& os, VertexId v) { return os << v.value; }
std::ostream& operator<<(std::ostream& os, EdgeKey e) { return os << 'e' << e.value; }

Graph::Graph(std::size_t n, VertexId source, VertexId target) {
  for (std::uint32_t i = 1; i <= n; ++i) add_vertex(VertexId{i});
  set_terminals(source, target);
}

void Graph::add_vertex(VertexId v) {
  vertices_.insert(v);
  incidence_[v];
}

EdgeKey Graph::add_edge(VertexId u, VertexId v, PwlFunction forward, PwlFunction backward) {
  if (!has_vertex(u) || !has_vertex(v)) {
    throw PreconditionError("edge endpoint is not a vertex of the graph");
  }
  const EdgeKey key{next_key_++};
  edges_.emplace(key, EdgeRecord{key, u, v, std::move(forward), std::move(backward)});
  incidence_[u].insert(key);
  incidence_[v].insert(key);
  return key;
}

void Graph::remove_edge(EdgeKey key) {
  auto it = edges_.find(key);
  if (it == edges_.end()) throw PreconditionError("no such edge");
  incidence_[it->second.u].erase(key);
  incidence_[it->second.v].erase(key);
  edges_.erase(it);
}

void Graph::remove_vertex(VertexId v) {
  if (!has_vertex(v)) throw PreconditionError("no such vertex");
  const std::set<EdgeKey> incident_edges = incidence_.at(v);
  for (EdgeKey key : incident_edges) remove_edge(key);
  incidence_.erase(v);
  vertices_.erase(v);
}

void Graph::set_terminals(std::optional<VertexId> source, std::optional<VertexId> target) {
  if ((source && !has_vertex(*source)) || (target && !has_vertex(*target))) {
    throw PreconditionError("terminal is not a vertex of the graph");
  }
  source_ = source;
  target_ = target;
}

const EdgeRecord& Graph::edge(EdgeKey key) const {
  auto it = edges_.find(key);
  if (it == edges_.end()) throw PreconditionError("no such edge");
  return it->second;
}

const std::set<EdgeKey>& Graph::incident(VertexId v) const {
  auto it = incidence_.find(v);
  if (it == incidence_.end()) {
    throw PreconditionError("unknown vertex " + std::to_string(v.value));
  }
  return it->second;
}

std::vector<VertexId> Graph::neighbors(VertexId v) const {
  std::set<VertexId> out;
  for (EdgeKey key : incident(v)) {
    const EdgeRecord& e = edges_.at(key);
    if (!e.is_self_loop()) out.insert(e.other(v));
  }
  return {out.begin(), out.end()};
}

std::size_t degree_distinct(const Graph& g, VertexId v) { return g.neighbors(v).size(); }

std::vector<std::vector<EdgeKey>> parallel_groups(const Graph& g) {
  std::map<std::pair<VertexId, VertexId>, std::vector<EdgeKey>> by_endpoints;
  for (const auto& [key, e] : g.edges()) {
    if (e.is_self_loop()) continue;
    by_endpoints[std::minmax(e.u, e.v)].push_back(key);
  }
  std::vector<std::vector<EdgeKey>> groups;
  for (auto& [_, keys] : by_endpoints) {
    if (keys.size() >= 2) groups.push_back(std::move(keys));
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

Graph induced_subgraph(const Graph& g, const std::set<VertexId>& keep) {
  for (VertexId v : keep) {
    if (!g.has_vertex(v)) {
      throw PreconditionError("induced_subgraph: vertex " + std::to_string(v.value) +
                              " is not in the graph");
    }
  }
  // Copy and prune so edge keys and the key counter carry over.
  Graph out = g;
  for (VertexId v : g.vertices()) {
    if (!keep.contains(v)) out.remove_vertex(v);
  }
  auto retained = [&](std::optional<VertexId> t) -> std::optional<VertexId> {
    return t && keep.contains(*t) ? t : std::nullopt;
  };
  out.set_terminals(retained(g.source()), retained(g.target()));
  return out;
}

std::size_t total_pieces(const Graph& g) {
  std::size_t total = 0;
  for (const auto& [_, e] : g.edges()) total += e.forward.piece_count() + e.backward.piece_count();
  return total;
}

std::string GraphViolation::describe() const {
  std::ostringstream os;
  os << "edge " << edge << " (" << from << "->" << to << "): " << fifo.describe();
  return os.str();
}

std::vector<GraphViolation> validate(const Graph& g) {
  std::vector<GraphViolation> out;
  for (const auto& [key, e] : g.edges()) {
    for (const FifoViolation& v : validate_fifo(e.forward)) out.push_back({key, e.u, e.v, v});
    for (const FifoViolation& v : validate_fifo(e.backward)) out.push_back({key, e.v, e.u, v});
  }
  return out;
}

bool is_connected(const Graph& g, VertexId a, VertexId b) {
  std::set<VertexId> seen{a};
  std::deque<VertexId> queue{a};
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    if (v == b) return true;
    for (VertexId w : g.neighbors(v)) {
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  return false;
}

Graph read_graph(std::istream& in) {
  Graph g;
  bool have_header = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c" || tag.front() == '#') continue;
    if (tag == "p") {
      std::string kind;
      long n = -1, s = -1, d = -1;
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (!(ls >> kind >> n >> s >> d) || kind != "tdsp") {
        throw ParseError(line_no, "expected 'p tdsp <n> <s> <d>'");
      }
      if (n < 2 || s < 1 || d < 1 || s > n || d > n || s == d) {
        throw ParseError(line_no, "need n >= 2 and distinct terminals in 1..n");
      }
      g = Graph(static_cast<std::size_t>(n), VertexId{static_cast<std::uint32_t>(s)},
                VertexId{static_cast<std::uint32_t>(d)});
      have_header = true;
    } else if (tag == "e") {
      if (!have_header) throw ParseError(line_no, "edge before header");
      long u = -1, v = -1;
      std::string fwd, bwd, extra;
      if (!(ls >> u >> v >> fwd >> bwd) || (ls >> extra)) {
        throw ParseError(line_no, "expected 'e <u> <v> <forward> <backward>'");
      }
      const VertexId a{static_cast<std::uint32_t>(u)};
      const VertexId b{static_cast<std::uint32_t>(v)};
      if (u < 1 || v < 1 || !g.has_vertex(a) || !g.has_vertex(b)) {
        throw ParseError(line_no, "edge endpoint out of range");
      }
      try {
        g.add_edge(a, b, parse_function(fwd), parse_function(bwd));
      } catch (const ParseError& e) {
        throw ParseError(line_no, e.what());
      }
    } else {
      throw ParseError(line_no, "unknown record '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'p tdsp' header");
  return g;
}

Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  if (!g.source() || !g.target()) throw PreconditionError("graph has no terminals");
  const std::uint32_t n = g.vertices().empty() ? 0 : g.vertices().rbegin()->value;
  out << "p tdsp " << n << ' ' << *g.source() << ' ' << *g.target() << '\n';
  for (const auto& [_, e] : g.edges()) {
    out << "e " << e.u << ' ' << e.v << ' ' << to_string(e.forward) << ' '
        << to_string(e.backward) << '\n';
  }
}

std::string format_graph(const Graph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

}  // namespace tdsp
