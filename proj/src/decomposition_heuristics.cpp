#include <algorithm>
#include <deque>
#include <map>

#include "tdsp/errors.hpp"
#include "tdsp/tree_decomposition.hpp"

namespace tdsp {

namespace {

using Adjacency = std::map<VertexId, std::set<VertexId>>;

Adjacency simple_adjacency(const Graph& g) {
  Adjacency adj;
  for (VertexId v : g.vertices()) adj[v];
  for (const auto& [_, e] : g.edges()) {
    if (e.is_self_loop()) continue;
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  return adj;
}

std::size_t fill_in(const Adjacency& adj, VertexId v) {
  const auto& n = adj.at(v);
  std::size_t missing = 0;
  for (auto a = n.begin(); a != n.end(); ++a) {
    for (auto b = std::next(a); b != n.end(); ++b) {
      if (!adj.at(*a).contains(*b)) ++missing;
    }
  }
  return missing;
}

// Connected components of g - removed, as vertex sets.
std::vector<std::set<VertexId>> components_without(const Graph& g,
                                                   const std::set<VertexId>& removed) {
  std::vector<std::set<VertexId>> out;
  std::set<VertexId> seen = removed;
  for (VertexId start : g.vertices()) {
    if (seen.contains(start)) continue;
    std::set<VertexId> comp{start};
    seen.insert(start);
    std::deque<VertexId> queue{start};
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (VertexId w : g.neighbors(v)) {
        if (seen.insert(w).second) {
          comp.insert(w);
          queue.push_back(w);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

struct Split {
  std::set<VertexId> side1;
  std::set<VertexId> side2;
  std::size_t larger = 0;
};

// Subset-sum over component sizes for the most even two-way split.
Split best_split(const std::vector<std::set<VertexId>>& comps) {
  std::size_t total = 0;
  for (const auto& c : comps) total += c.size();
  // reach[i][s]: some subset of the first i components sums to s.
  std::vector<std::vector<char>> reach(comps.size() + 1, std::vector<char>(total + 1, 0));
  reach[0][0] = 1;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t s = 0; s <= total; ++s) {
      if (!reach[i][s]) continue;
      reach[i + 1][s] = 1;
      reach[i + 1][s + comps[i].size()] = 1;
    }
  }
  std::size_t target = 0;
  for (std::size_t s = 0; s <= total; ++s) {
    if (reach[comps.size()][s] && std::max(s, total - s) < std::max(target, total - target)) {
      target = s;
    }
  }
  Split split;
  split.larger = std::max(target, total - target);
  std::size_t s = target;
  for (std::size_t i = comps.size(); i > 0; --i) {
    const std::size_t sz = comps[i - 1].size();
    if (s >= sz && reach[i - 1][s - sz]) {
      split.side1.insert(comps[i - 1].begin(), comps[i - 1].end());
      s -= sz;
    } else {
      split.side2.insert(comps[i - 1].begin(), comps[i - 1].end());
    }
  }
  return split;
}

}  // namespace

TreeDecomposition heuristic_decomposition(const Graph& g) {
  Adjacency adj = simple_adjacency(g);
  std::vector<VertexId> order;
  std::map<VertexId, Bag> bag_of;

  while (!adj.empty()) {
    std::optional<VertexId> pick;
    std::size_t pick_fill = 0;
    std::size_t pick_degree = 0;
    for (const auto& [v, n] : adj) {
      const std::size_t f = fill_in(adj, v);
      if (!pick || f < pick_fill || (f == pick_fill && n.size() < pick_degree)) {
        pick = v;
        pick_fill = f;
        pick_degree = n.size();
      }
    }
    const VertexId v = *pick;
    const std::set<VertexId> n = adj.at(v);
    for (VertexId a : n) {
      for (VertexId b : n) {
        if (a != b) adj[a].insert(b);
      }
      adj[a].erase(v);
    }
    adj.erase(v);
    Bag bag = n;
    bag.insert(v);
    bag_of.emplace(v, std::move(bag));
    order.push_back(v);
  }

  TreeDecomposition t;
  std::map<VertexId, std::size_t> position;
  std::map<VertexId, BagId> id_of;
  for (std::size_t i = 0; i < order.size(); ++i) {
    position[order[i]] = i;
    id_of[order[i]] = t.add_bag(bag_of.at(order[i]));
  }
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const VertexId v = order[i];
    // Parent: the neighbour eliminated next, or simply the next bag.
    std::optional<VertexId> parent;
    for (VertexId u : bag_of.at(v)) {
      if (u == v) continue;
      if (!parent || position.at(u) < position.at(*parent)) parent = u;
    }
    t.add_tree_edge(id_of.at(v), id_of.at(parent ? *parent : order[i + 1]));
  }
  if (!order.empty()) t.set_root(id_of.at(order.back()));
  return t;
}

Separator balanced_separator(const Graph& g, const TreeDecomposition& t) {
  const std::size_t n = g.vertex_count();
  const std::size_t w = width(t);
  if (n <= 2 * w + 2) {
    throw PreconditionError("balanced_separator needs more than 2w+2 = " +
                            std::to_string(2 * w + 2) + " vertices, graph has " +
                            std::to_string(n));
  }
  auto balanced = [n](const Split& s) { return 3 * s.larger <= 2 * n; };

  std::optional<std::set<VertexId>> best_bag;
  std::size_t best_larger = 0;
  for (const auto& [_, bag] : t.bags()) {
    const Split s = best_split(components_without(g, bag));
    if (!best_bag || s.larger < best_larger) {
      best_bag = bag;
      best_larger = s.larger;
    }
  }
  std::set<VertexId> sep = *best_bag;

  // Shrink the bag while the split stays balanced.
  for (VertexId v : std::set<VertexId>(sep)) {
    std::set<VertexId> smaller = sep;
    smaller.erase(v);
    if (balanced(best_split(components_without(g, smaller)))) sep = std::move(smaller);
  }

  Split s = best_split(components_without(g, sep));
  if (!balanced(s)) throw StructuralError("no bag yields a balanced separator");
  return Separator{std::move(sep), std::move(s.side1), std::move(s.side2)};
}

}  // namespace tdsp
