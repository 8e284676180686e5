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

#include "tdsp/graph.hpp"

namespace tdsp {

struct BagId {
  std::uint32_t value = 0;
  friend auto operator<=>(const BagId&, const BagId&) = default;
};

using Bag = std::set<VertexId>;

class TreeDecomposition {
 public:
  BagId add_bag(Bag bag);
  void add_tree_edge(BagId a, BagId b);
  void remove_tree_edge(BagId a, BagId b);
  // Drops the bag and its tree edges.
  void remove_bag(BagId id);
  void set_bag(BagId id, Bag bag);
  void set_root(std::optional<BagId> root) { root_ = root; }

  const std::map<BagId, Bag>& bags() const { return bags_; }
  const Bag& bag(BagId id) const;
  const std::set<BagId>& tree_neighbors(BagId id) const;
  std::optional<BagId> root() const { return root_; }
  std::size_t bag_count() const { return bags_.size(); }
  std::size_t tree_edge_count() const;
  // Bags of tree degree one (none for a single bag).
  std::vector<BagId> leaves() const;

 private:
  std::map<BagId, Bag> bags_;
  std::map<BagId, std::set<BagId>> adjacency_;
  std::optional<BagId> root_;
  std::uint32_t next_id_ = 0;
};

struct DecompositionViolation {
  enum class Kind {
    empty,
    not_a_tree,
    missing_vertex,
    unknown_vertex,
    uncovered_edge,
    disconnected_occurrence,
  };
  Kind kind;
  std::string witness;

  std::string describe() const;
};

// The three covering conditions plus tree shape. Empty iff valid for g.
std::vector<DecompositionViolation> validate_decomposition(const Graph& g,
                                                           const TreeDecomposition& t);
// Tree shape and the connected-occurrence condition only.
std::vector<DecompositionViolation> validate_structure(const TreeDecomposition& t);

// Max bag size minus one. Throws PreconditionError on an empty decomposition.
std::size_t width(const TreeDecomposition& t);

// Adjacent bags are equal or differ by exactly one vertex.
bool is_nice(const TreeDecomposition& t);

class NiceTreeDecomposition {
 public:
  // Throws StructuralError unless t is structurally valid and nice.
  static NiceTreeDecomposition certify(TreeDecomposition t);

  const TreeDecomposition& tree() const { return tree_; }
  std::size_t bag_count() const { return tree_.bag_count(); }

 private:
  explicit NiceTreeDecomposition(TreeDecomposition t) : tree_(std::move(t)) {}
  TreeDecomposition tree_;
};

NiceTreeDecomposition make_nice(const TreeDecomposition& t);

// Removes leaf bags contained in their neighbour until none is left.
NiceTreeDecomposition prune_subset_leaves(const NiceTreeDecomposition& t);

struct RemovalPlan {
  enum class Case { leaf_bag, path_interior, path_root };

  VertexId vertex;
  BagId bag;
  Case case_tag = Case::leaf_bag;
  std::size_t expected_degree_bound = 0;
  // Bags folded into one by update_after_removal (path cases).
  std::vector<BagId> merged_bags;
  std::optional<BagId> attach_to;
};

std::string to_string(RemovalPlan::Case c);

// Picks the next non-terminal vertex to star-mesh, preferring the smallest
// current degree, then the smallest id. Terminals come from g. Requires
// more than one bag, no parallel edges in g and no subset leaves; throws
// StructuralError naming the broken assumption otherwise. Returns nullopt
// iff only terminals remain.
std::optional<RemovalPlan> find_removal_plan(const NiceTreeDecomposition& t, const Graph& g);

// Decomposition of the graph after the planned vertex was star-meshed away.
NiceTreeDecomposition update_after_removal(const NiceTreeDecomposition& t,
                                           const RemovalPlan& plan);

// Min-fill elimination ordering; an upper bound on treewidth.
TreeDecomposition heuristic_decomposition(const Graph& g);

struct Separator {
  std::set<VertexId> separator;
  std::set<VertexId> side1;
  std::set<VertexId> side2;
};

// A subset of one bag whose removal splits the rest into two sides of at
// most 2n/3 vertices each, with no edge between the sides. Needs
// |V| > 2w + 2.
Separator balanced_separator(const Graph& g, const TreeDecomposition& t);

// PACE .td format: "s td <bags> <max bag size> <n>", "b <i> <v...>", "<i> <j>".
TreeDecomposition read_decomposition(std::istream& in);
TreeDecomposition parse_decomposition(std::string_view text);
void write_decomposition(std::ostream& out, const TreeDecomposition& t, std::size_t vertex_count);
std::string format_decomposition(const TreeDecomposition& t, std::size_t vertex_count);

}  // namespace tdsp
