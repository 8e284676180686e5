#include "tdsp/tree_decomposition.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "tdsp/errors.hpp"

namespace tdsp {

namespace {

std::string bag_name(BagId id) { return "bag " + std::to_string(id.value); }

std::string format_set(const Bag& bag) {
  std::string out = "{";
  for (VertexId v : bag) {
    if (out.size() > 1) out += ',';
    out += std::to_string(v.value);
  }
  return out + "}";
}

bool is_subset(const Bag& a, const Bag& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Bag difference(const Bag& a, const Bag& b) {
  Bag out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool differ_by_at_most_one(const Bag& a, const Bag& b) {
  const Bag ab = difference(a, b);
  const Bag ba = difference(b, a);
  return ab.size() + ba.size() <= 1;
}

// Bags of a path-shaped tree, from `start` to the other end.
std::vector<BagId> walk_path(const TreeDecomposition& t, BagId start) {
  std::vector<BagId> order{start};
  std::optional<BagId> prev;
  BagId cur = start;
  while (true) {
    std::optional<BagId> next;
    for (BagId n : t.tree_neighbors(cur)) {
      if (n != prev) next = n;
    }
    if (!next) break;
    prev = cur;
    cur = *next;
    order.push_back(cur);
  }
  return order;
}

}  // namespace

BagId TreeDecomposition::add_bag(Bag bag) {
  const BagId id{next_id_++};
  bags_.emplace(id, std::move(bag));
  adjacency_[id];
  return id;
}

void TreeDecomposition::add_tree_edge(BagId a, BagId b) {
  if (!bags_.contains(a) || !bags_.contains(b) || a == b) {
    throw PreconditionError("tree edge between unknown or identical bags");
  }
  adjacency_[a].insert(b);
  adjacency_[b].insert(a);
}

void TreeDecomposition::remove_tree_edge(BagId a, BagId b) {
  adjacency_[a].erase(b);
  adjacency_[b].erase(a);
}

void TreeDecomposition::remove_bag(BagId id) {
  if (!bags_.contains(id)) throw PreconditionError("no such " + bag_name(id));
  for (BagId n : adjacency_.at(id)) adjacency_[n].erase(id);
  adjacency_.erase(id);
  bags_.erase(id);
  if (root_ == id) root_.reset();
}

void TreeDecomposition::set_bag(BagId id, Bag bag) {
  auto it = bags_.find(id);
  if (it == bags_.end()) throw PreconditionError("no such " + bag_name(id));
  it->second = std::move(bag);
}

const Bag& TreeDecomposition::bag(BagId id) const {
  auto it = bags_.find(id);
  if (it == bags_.end()) throw PreconditionError("no such " + bag_name(id));
  return it->second;
}

const std::set<BagId>& TreeDecomposition::tree_neighbors(BagId id) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end()) throw PreconditionError("no such " + bag_name(id));
  return it->second;
}

std::size_t TreeDecomposition::tree_edge_count() const {
  std::size_t twice = 0;
  for (const auto& [_, n] : adjacency_) twice += n.size();
  return twice / 2;
}

std::vector<BagId> TreeDecomposition::leaves() const {
  std::vector<BagId> out;
  for (const auto& [id, n] : adjacency_) {
    if (n.size() == 1) out.push_back(id);
  }
  return out;
}

std::string DecompositionViolation::describe() const {
  switch (kind) {
    case Kind::empty: return "decomposition has no bags";
    case Kind::not_a_tree: return "bags do not form a tree: " + witness;
    case Kind::missing_vertex: return "vertex " + witness + " is in no bag";
    case Kind::unknown_vertex: return "bag mentions vertex " + witness + " not in the graph";
    case Kind::uncovered_edge: return "edge " + witness + " is in no bag";
    case Kind::disconnected_occurrence:
      return "bags containing vertex " + witness + " are not connected";
  }
  return witness;
}

std::vector<DecompositionViolation> validate_structure(const TreeDecomposition& t) {
  using Kind = DecompositionViolation::Kind;
  std::vector<DecompositionViolation> out;
  if (t.bag_count() == 0) {
    out.push_back({Kind::empty, ""});
    return out;
  }

  // Connected with |bags| - 1 edges.
  std::set<BagId> seen{t.bags().begin()->first};
  std::deque<BagId> queue{t.bags().begin()->first};
  while (!queue.empty()) {
    const BagId b = queue.front();
    queue.pop_front();
    for (BagId n : t.tree_neighbors(b)) {
      if (seen.insert(n).second) queue.push_back(n);
    }
  }
  if (seen.size() != t.bag_count()) {
    out.push_back({Kind::not_a_tree, "disconnected"});
    return out;
  }
  if (t.tree_edge_count() != t.bag_count() - 1) {
    out.push_back({Kind::not_a_tree, "contains a cycle"});
    return out;
  }

  std::map<VertexId, std::vector<BagId>> occurrences;
  for (const auto& [id, bag] : t.bags()) {
    for (VertexId v : bag) occurrences[v].push_back(id);
  }
  for (const auto& [v, where] : occurrences) {
    // In a tree, a vertex's bags are connected iff their induced edges
    // number one less than the bags.
    const std::set<BagId> members(where.begin(), where.end());
    std::size_t inner_edges = 0;
    for (BagId b : members) {
      for (BagId n : t.tree_neighbors(b)) {
        if (members.contains(n)) ++inner_edges;
      }
    }
    if (inner_edges / 2 != members.size() - 1) {
      out.push_back({Kind::disconnected_occurrence, std::to_string(v.value)});
    }
  }
  return out;
}

std::vector<DecompositionViolation> validate_decomposition(const Graph& g,
                                                           const TreeDecomposition& t) {
  using Kind = DecompositionViolation::Kind;
  std::vector<DecompositionViolation> out = validate_structure(t);
  if (!out.empty() && (out.front().kind == Kind::empty || out.front().kind == Kind::not_a_tree)) {
    return out;
  }

  Bag covered;
  for (const auto& [_, bag] : t.bags()) covered.insert(bag.begin(), bag.end());
  for (VertexId v : g.vertices()) {
    if (!covered.contains(v)) out.push_back({Kind::missing_vertex, std::to_string(v.value)});
  }
  for (VertexId v : covered) {
    if (!g.has_vertex(v)) out.push_back({Kind::unknown_vertex, std::to_string(v.value)});
  }

  std::set<std::pair<VertexId, VertexId>> checked;
  for (const auto& [key, e] : g.edges()) {
    const auto ends = std::minmax(e.u, e.v);
    if (!checked.insert(ends).second) continue;
    const bool found = std::any_of(t.bags().begin(), t.bags().end(), [&](const auto& kv) {
      return kv.second.contains(e.u) && kv.second.contains(e.v);
    });
    if (!found) {
      out.push_back({Kind::uncovered_edge,
                     std::to_string(ends.first.value) + "-" + std::to_string(ends.second.value)});
    }
  }
  return out;
}

std::size_t width(const TreeDecomposition& t) {
  if (t.bag_count() == 0) throw PreconditionError("width of an empty decomposition");
  std::size_t widest = 0;
  for (const auto& [_, bag] : t.bags()) widest = std::max(widest, bag.size());
  return widest == 0 ? 0 : widest - 1;
}

bool is_nice(const TreeDecomposition& t) {
  for (const auto& [id, bag] : t.bags()) {
    for (BagId n : t.tree_neighbors(id)) {
      if (!differ_by_at_most_one(bag, t.bag(n))) return false;
    }
  }
  return true;
}

NiceTreeDecomposition NiceTreeDecomposition::certify(TreeDecomposition t) {
  const auto violations = validate_structure(t);
  if (!violations.empty()) {
    throw StructuralError("invalid tree decomposition: " + violations.front().describe());
  }
  if (!is_nice(t)) throw StructuralError("tree decomposition is not nice");
  return NiceTreeDecomposition(std::move(t));
}

NiceTreeDecomposition make_nice(const TreeDecomposition& input) {
  const auto violations = validate_structure(input);
  if (!violations.empty()) {
    throw StructuralError("make_nice: " + violations.front().describe());
  }
  TreeDecomposition t = input;
  std::vector<std::pair<BagId, BagId>> edges;
  for (const auto& [id, _] : t.bags()) {
    for (BagId n : t.tree_neighbors(id)) {
      if (id < n) edges.emplace_back(id, n);
    }
  }
  for (const auto& [a, b] : edges) {
    const Bag& from = t.bag(a);
    const Bag& to = t.bag(b);
    if (differ_by_at_most_one(from, to)) continue;

    // Drop from's extra vertices one at a time (largest first), then add
    // to's extra vertices one at a time.
    std::vector<Bag> chain;
    Bag cur = from;
    const Bag drop = difference(from, to);
    const Bag add = difference(to, from);
    for (auto it = drop.rbegin(); it != drop.rend(); ++it) {
      cur.erase(*it);
      chain.push_back(cur);
    }
    for (VertexId v : add) {
      cur.insert(v);
      chain.push_back(cur);
    }
    chain.pop_back();  // equals `to`

    t.remove_tree_edge(a, b);
    BagId prev = a;
    for (Bag& bag : chain) {
      const BagId id = t.add_bag(std::move(bag));
      t.add_tree_edge(prev, id);
      prev = id;
    }
    t.add_tree_edge(prev, b);
  }
  return NiceTreeDecomposition::certify(std::move(t));
}

NiceTreeDecomposition prune_subset_leaves(const NiceTreeDecomposition& nice) {
  TreeDecomposition t = nice.tree();
  bool changed = true;
  while (changed && t.bag_count() > 1) {
    changed = false;
    for (BagId leaf : t.leaves()) {
      const BagId parent = *t.tree_neighbors(leaf).begin();
      if (is_subset(t.bag(leaf), t.bag(parent))) {
        if (t.root() == leaf) t.set_root(parent);
        t.remove_bag(leaf);
        changed = true;
        break;
      }
    }
  }
  return NiceTreeDecomposition::certify(std::move(t));
}

std::string to_string(RemovalPlan::Case c) {
  switch (c) {
    case RemovalPlan::Case::leaf_bag: return "leaf_bag";
    case RemovalPlan::Case::path_interior: return "path_interior";
    case RemovalPlan::Case::path_root: return "path_root";
  }
  return "?";
}

std::optional<RemovalPlan> find_removal_plan(const NiceTreeDecomposition& nice, const Graph& g) {
  const TreeDecomposition& t = nice.tree();
  if (t.bag_count() < 2) {
    throw StructuralError("removal plan needs more than one bag (single-bag case is handled "
                          "by eliminating the bag's vertices directly)");
  }
  if (!parallel_groups(g).empty()) {
    throw StructuralError("removal plan needs a graph without parallel edges");
  }

  const std::size_t w = width(t);
  bool only_terminals = true;
  for (const auto& [_, bag] : t.bags()) {
    for (VertexId v : bag) only_terminals = only_terminals && g.is_terminal(v);
  }
  for (VertexId v : g.vertices()) only_terminals = only_terminals && g.is_terminal(v);
  if (only_terminals) return std::nullopt;

  auto degree = [&](VertexId v) { return g.has_vertex(v) ? degree_distinct(g, v) : 0; };

  // Exclusive vertex of each leaf.
  std::map<BagId, VertexId> exclusive;
  for (BagId leaf : t.leaves()) {
    const BagId parent = *t.tree_neighbors(leaf).begin();
    const Bag extra = difference(t.bag(leaf), t.bag(parent));
    if (extra.size() != 1) {
      throw StructuralError("leaf " + bag_name(leaf) + " " + format_set(t.bag(leaf)) +
                            " is not a strict superset of its neighbour");
    }
    exclusive.emplace(leaf, *extra.begin());
  }

  std::optional<RemovalPlan> best;
  std::size_t best_degree = 0;
  for (const auto& [leaf, v] : exclusive) {
    if (g.is_terminal(v)) continue;
    const std::size_t d = degree(v);
    if (!best || d < best_degree || (d == best_degree && v < best->vertex)) {
      best = RemovalPlan{v, leaf, RemovalPlan::Case::leaf_bag, w, {}, std::nullopt};
      best_degree = d;
    }
  }
  if (best) return best;

  // Every leaf's exclusive vertex is a terminal, so there are two leaves
  // and the tree is a path. X_1 is the lower-numbered end.
  if (exclusive.size() != 2) {
    throw StructuralError("more than two leaves with terminal exclusive vertices");
  }
  const std::vector<BagId> path = walk_path(t, exclusive.begin()->first);
  if (path.size() != t.bag_count()) throw StructuralError("tree with two leaves is not a path");

  for (std::size_t j = 1; j + 1 < path.size(); ++j) {
    const Bag& here = t.bag(path[j]);
    const Bag& next = t.bag(path[j + 1]);
    if (next.size() < here.size() && is_subset(next, here)) {
      const Bag gone = difference(here, next);
      RemovalPlan plan{*gone.begin(), path[j], RemovalPlan::Case::path_interior, w + 1,
                       std::vector<BagId>(path.begin(), path.begin() + j + 1), path[j + 1]};
      if (g.is_terminal(plan.vertex)) {
        throw StructuralError("path case selected terminal " + std::to_string(plan.vertex.value));
      }
      return plan;
    }
  }

  // No shrinking step before the root: every vertex but X_1's terminal
  // lives in the root bag.
  const BagId root = path.back();
  for (VertexId v : t.bag(root)) {
    if (g.is_terminal(v)) continue;
    const std::size_t d = degree(v);
    if (!best || d < best_degree || (d == best_degree && v < best->vertex)) {
      best = RemovalPlan{v, root, RemovalPlan::Case::path_root, w + 1, path, std::nullopt};
      best_degree = d;
    }
  }
  if (!best) throw StructuralError("root bag holds no non-terminal vertex");
  return best;
}

NiceTreeDecomposition update_after_removal(const NiceTreeDecomposition& nice,
                                           const RemovalPlan& plan) {
  TreeDecomposition t = nice.tree();
  if (!t.bags().contains(plan.bag) || !t.bag(plan.bag).contains(plan.vertex)) {
    throw PreconditionError("inconsistent removal plan: vertex " +
                            std::to_string(plan.vertex.value) + " is not in " +
                            bag_name(plan.bag));
  }

  switch (plan.case_tag) {
    case RemovalPlan::Case::leaf_bag: {
      Bag bag = t.bag(plan.bag);
      bag.erase(plan.vertex);
      t.set_bag(plan.bag, std::move(bag));
      break;
    }
    case RemovalPlan::Case::path_interior:
    case RemovalPlan::Case::path_root: {
      Bag merged;
      for (BagId b : plan.merged_bags) {
        const Bag& bag = t.bag(b);
        merged.insert(bag.begin(), bag.end());
      }
      merged.erase(plan.vertex);
      for (BagId b : plan.merged_bags) t.remove_bag(b);
      const BagId id = t.add_bag(std::move(merged));
      if (plan.attach_to) t.add_tree_edge(id, *plan.attach_to);
      if (!t.root() && nice.tree().root()) t.set_root(id);
      break;
    }
  }
  for (const auto& [id, bag] : t.bags()) {
    if (bag.contains(plan.vertex)) {
      throw PreconditionError("inconsistent removal plan: vertex " +
                              std::to_string(plan.vertex.value) + " still in " + bag_name(id));
    }
  }
  return prune_subset_leaves(NiceTreeDecomposition::certify(std::move(t)));
}

}  // namespace tdsp
