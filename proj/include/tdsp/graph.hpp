#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tdsp/pwl.hpp"

namespace tdsp {

struct VertexId {
  std::uint32_t value = 0;
  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

// Keys come from a per-graph monotone counter and are never reused, so a
// trace can name edges that no longer exist.
struct EdgeKey {
  std::uint64_t value = 0;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

std::ostream& operator<<(std::ostream& os, VertexId v);
std::ostream& operator<<(std::ostream& os, EdgeKey e);

struct EdgeRecord {
  EdgeKey key;
  VertexId u;
  VertexId v;
  PwlFunction forward = PwlFunction::infinity();   // u -> v
  PwlFunction backward = PwlFunction::infinity();  // v -> u

  bool is_self_loop() const { return u == v; }
  VertexId other(VertexId x) const { return x == u ? v : u; }
  // Arrival function for travel that departs from `from`.
  const PwlFunction& departing(VertexId from) const { return from == u ? forward : backward; }
  const PwlFunction& arriving(VertexId to) const { return to == v ? forward : backward; }
};

// Two-terminal undirected multigraph. Self-loops and parallel edges are
// allowed since they show up mid-reduction.
class Graph {
 public:
  Graph() = default;
  // Vertices 1..n.
  Graph(std::size_t n, VertexId source, VertexId target);

  void add_vertex(VertexId v);
  EdgeKey add_edge(VertexId u, VertexId v, PwlFunction forward, PwlFunction backward);
  void remove_edge(EdgeKey key);
  // Removes v together with every incident edge.
  void remove_vertex(VertexId v);
  void set_terminals(std::optional<VertexId> source, std::optional<VertexId> target);

  bool has_vertex(VertexId v) const { return vertices_.contains(v); }
  bool has_edge(EdgeKey key) const { return edges_.contains(key); }
  const EdgeRecord& edge(EdgeKey key) const;

  const std::set<VertexId>& vertices() const { return vertices_; }
  const std::map<EdgeKey, EdgeRecord>& edges() const { return edges_; }
  const std::set<EdgeKey>& incident(VertexId v) const;
  // Distinct neighbours, self excluded, ascending.
  std::vector<VertexId> neighbors(VertexId v) const;

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::optional<VertexId> source() const { return source_; }
  std::optional<VertexId> target() const { return target_; }
  bool is_terminal(VertexId v) const { return v == source_ || v == target_; }

  EdgeKey next_key() const { return EdgeKey{next_key_}; }

 private:
  std::set<VertexId> vertices_;
  std::map<EdgeKey, EdgeRecord> edges_;
  std::map<VertexId, std::set<EdgeKey>> incidence_;
  std::optional<VertexId> source_;
  std::optional<VertexId> target_;
  std::uint64_t next_key_ = 0;
};

std::size_t degree_distinct(const Graph& g, VertexId v);

// Maximal classes of >= 2 edges sharing both endpoints, ordered by their
// smallest key. Self-loops are not parallel edges.
std::vector<std::vector<EdgeKey>> parallel_groups(const Graph& g);

// Keeps edge keys and functions; terminals survive only if they are in `keep`.
Graph induced_subgraph(const Graph& g, const std::set<VertexId>& keep);

// Sum of piece counts over both directions of every edge; infinite
// directions count 0.
std::size_t total_pieces(const Graph& g);

struct GraphViolation {
  EdgeKey edge;
  VertexId from;
  VertexId to;
  FifoViolation fifo;

  std::string describe() const;
};

std::vector<GraphViolation> validate(const Graph& g);

bool is_connected(const Graph& g, VertexId a, VertexId b);

// Line format:
//   c <comment>
//   p tdsp <n> <s> <d>
//   e <u> <v> <forward> <backward>
// Vertices are 1..n; functions use the pwl text form.
Graph read_graph(std::istream& in);
Graph parse_graph(std::string_view text);
void write_graph(std::ostream& out, const Graph& g);
std::string format_graph(const Graph& g);

}  // namespace tdsp
