#include <gtest/gtest.h>

#include <algorithm>
#include <queue>

#include "support.hpp"
#include "tdsp/errors.hpp"
#include "tdsp/generators.hpp"
#include "tdsp/tree_decomposition.hpp"

namespace tdsp {
namespace {

using testing::V;

Graph unit_graph(std::size_t n, VertexId s, VertexId d,
                 std::initializer_list<std::pair<int, int>> edges) {
  Graph g(n, s, d);
  for (auto [u, v] : edges) {
    g.add_edge(V(u), V(v), PwlFunction::shift(1), PwlFunction::shift(1));
  }
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g(n, V(1), V(static_cast<std::uint32_t>(n)));
  for (std::uint32_t i = 1; i < n; ++i) {
    g.add_edge(V(i), V(i + 1), PwlFunction::shift(1), PwlFunction::shift(1));
  }
  return g;
}

Graph cycle_graph(std::size_t n) {
  Graph g = path_graph(n);
  g.add_edge(V(static_cast<std::uint32_t>(n)), V(1), PwlFunction::shift(1),
             PwlFunction::shift(1));
  return g;
}

Graph clique(std::size_t k) {
  Graph g(k, V(1), V(2));
  for (std::uint32_t i = 1; i <= k; ++i) {
    for (std::uint32_t j = i + 1; j <= k; ++j) {
      g.add_edge(V(i), V(j), PwlFunction::shift(1), PwlFunction::shift(1));
    }
  }
  return g;
}

// Breadth-first walk of a path decomposition from one leaf.
std::vector<Bag> path_bags(const TreeDecomposition& t) {
  const auto leaves = t.leaves();
  std::vector<Bag> out;
  std::optional<BagId> prev;
  BagId cur = leaves.front();
  while (true) {
    out.push_back(t.bag(cur));
    std::optional<BagId> next;
    for (BagId n : t.tree_neighbors(cur)) {
      if (!prev || n != *prev) next = n;
    }
    if (!next) break;
    prev = cur;
    cur = *next;
  }
  return out;
}

// Components of g minus `cut`, restricted to vertices of g.
bool separates(const Graph& g, const Separator& sep) {
  for (const auto& [key, e] : g.edges()) {
    const bool across = (sep.side1.contains(e.u) && sep.side2.contains(e.v)) ||
                        (sep.side2.contains(e.u) && sep.side1.contains(e.v));
    if (across) return false;
  }
  return true;
}

TEST(Validate, SingleBagAlwaysValid) {
  const Graph g = clique(5);
  TreeDecomposition t;
  t.add_bag(g.vertices());
  EXPECT_TRUE(validate_decomposition(g, t).empty());
  EXPECT_EQ(width(t), 4u);
}

TEST(Validate, UncoveredEdge) {
  const Graph g = unit_graph(3, V(1), V(3), {{1, 2}, {2, 3}, {1, 3}});
  TreeDecomposition t;
  const BagId a = t.add_bag({V(1), V(2)});
  const BagId b = t.add_bag({V(2), V(3)});
  t.add_tree_edge(a, b);
  const auto v = validate_decomposition(g, t);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, DecompositionViolation::Kind::uncovered_edge);
}

TEST(Validate, DisconnectedOccurrence) {
  const Graph g = unit_graph(2, V(1), V(2), {{1, 2}});
  TreeDecomposition t;
  const BagId a = t.add_bag({V(1), V(2)});
  const BagId b = t.add_bag({V(2)});
  const BagId c = t.add_bag({V(1), V(2)});
  t.add_tree_edge(a, b);
  t.add_tree_edge(b, c);
  const auto v = validate_decomposition(g, t);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, DecompositionViolation::Kind::disconnected_occurrence);
}

TEST(Validate, NotATree) {
  const Graph g = unit_graph(3, V(1), V(3), {{1, 2}});
  TreeDecomposition t;
  t.add_bag({V(1), V(2)});
  t.add_bag({V(2), V(3)});
  const auto v = validate_decomposition(g, t);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, DecompositionViolation::Kind::not_a_tree);
}

TEST(Validate, MissingAndUnknownVertex) {
  const Graph g = unit_graph(3, V(1), V(3), {{1, 2}});
  TreeDecomposition t;
  const BagId a = t.add_bag({V(1), V(2)});
  const BagId b = t.add_bag({V(2), V(7)});
  t.add_tree_edge(a, b);
  const auto v = validate_decomposition(g, t);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].kind, DecompositionViolation::Kind::missing_vertex);
  EXPECT_EQ(v[0].witness, "3");
  EXPECT_EQ(v[1].kind, DecompositionViolation::Kind::unknown_vertex);
}

TEST(Width, Examples) {
  TreeDecomposition t;
  const BagId a = t.add_bag({V(1), V(2)});
  const BagId b = t.add_bag({V(2), V(3)});
  t.add_tree_edge(a, b);
  EXPECT_EQ(width(t), 1u);
  EXPECT_THROW(width(TreeDecomposition{}), PreconditionError);
}

TEST(MakeNice, InsertsIntermediateBags) {
  const VertexId a = V(1), b = V(2), c = V(3), d = V(4);
  const Graph g = unit_graph(4, a, d, {{1, 2}, {2, 3}, {1, 3}, {1, 4}});
  TreeDecomposition t;
  const BagId x = t.add_bag({a, b, c});
  const BagId y = t.add_bag({a, d});
  t.add_tree_edge(x, y);
  const NiceTreeDecomposition nice = make_nice(t);
  EXPECT_TRUE(is_nice(nice.tree()));
  EXPECT_TRUE(validate_decomposition(g, nice.tree()).empty());
  EXPECT_EQ(width(nice.tree()), 2u);

  std::vector<Bag> bags = path_bags(nice.tree());
  if (bags.front().size() == 2) std::reverse(bags.begin(), bags.end());
  const std::vector<Bag> want{{a, b, c}, {a, b}, {a}, {a, d}};
  EXPECT_EQ(bags, want);
}

TEST(MakeNice, AlreadyNiceAndSingleBag) {
  TreeDecomposition t;
  const BagId x = t.add_bag({V(1), V(2)});
  const BagId y = t.add_bag({V(2)});
  t.add_tree_edge(x, y);
  EXPECT_EQ(make_nice(t).bag_count(), 2u);

  TreeDecomposition single;
  single.add_bag({V(1), V(2), V(3)});
  EXPECT_EQ(make_nice(single).bag_count(), 1u);
}

TEST(Certify, RejectsNonNice) {
  TreeDecomposition t;
  const BagId x = t.add_bag({V(1), V(2)});
  const BagId y = t.add_bag({V(3), V(4)});
  t.add_tree_edge(x, y);
  EXPECT_THROW(NiceTreeDecomposition::certify(t), StructuralError);
}

TEST(Prune, SubsetLeaves) {
  TreeDecomposition t;
  const BagId ab = t.add_bag({V(1), V(2)});
  const BagId a = t.add_bag({V(1)});
  t.add_tree_edge(ab, a);
  EXPECT_EQ(prune_subset_leaves(NiceTreeDecomposition::certify(t)).bag_count(), 1u);

  // A leaf that is a strict superset stays.
  TreeDecomposition u;
  const BagId root = u.add_bag({V(1)});
  const BagId leaf = u.add_bag({V(1), V(2)});
  const BagId other = u.add_bag({V(1), V(3)});
  u.add_tree_edge(root, leaf);
  u.add_tree_edge(root, other);
  EXPECT_EQ(prune_subset_leaves(NiceTreeDecomposition::certify(u)).bag_count(), 3u);

  TreeDecomposition chain;
  BagId prev = chain.add_bag({V(1), V(2)});
  for (int i = 0; i < 4; ++i) {
    const BagId next = chain.add_bag({V(1), V(2)});
    chain.add_tree_edge(prev, next);
    prev = next;
  }
  EXPECT_EQ(prune_subset_leaves(NiceTreeDecomposition::certify(chain)).bag_count(), 1u);
}

TEST(RemovalPlan, PathCaseSelectsInteriorVertex) {
  // Terminals s = 1 and d = 3 sit at both ends of the path.
  const VertexId s = V(1), a = V(2), b = V(3);
  const Graph g = unit_graph(3, s, b, {{1, 2}, {2, 3}});
  TreeDecomposition t;
  const BagId x = t.add_bag({s, a});
  const BagId y = t.add_bag({a, b});
  const BagId z = t.add_bag({b});
  t.add_tree_edge(x, y);
  t.add_tree_edge(y, z);
  // make_nice puts {a} between the first two bags; pruning drops {b}.
  const NiceTreeDecomposition nice = prune_subset_leaves(make_nice(t));
  ASSERT_EQ(nice.bag_count(), 3u);
  const auto plan = find_removal_plan(nice, g);
  ASSERT_TRUE(plan.has_value());
  EXPECT_EQ(plan->vertex, a);
  EXPECT_NE(plan->case_tag, RemovalPlan::Case::leaf_bag);
  EXPECT_LE(degree_distinct(g, a), plan->expected_degree_bound);
}

TEST(RemovalPlan, ThreeLeavesGiveNonTerminalLeafVertex) {
  // Star decomposition around {1}: leaves {1,2}, {1,3}, {1,4}; terminals 2, 3.
  const Graph g = unit_graph(4, V(2), V(3), {{1, 2}, {1, 3}, {1, 4}});
  TreeDecomposition t;
  const BagId c = t.add_bag({V(1)});
  for (int leaf = 2; leaf <= 4; ++leaf) t.add_tree_edge(c, t.add_bag({V(1), V(leaf)}));
  const auto plan = find_removal_plan(NiceTreeDecomposition::certify(t), g);
  ASSERT_TRUE(plan.has_value());
  EXPECT_EQ(plan->case_tag, RemovalPlan::Case::leaf_bag);
  EXPECT_EQ(plan->vertex, V(4));
  EXPECT_EQ(plan->expected_degree_bound, 1u);
}

TEST(RemovalPlan, OnlyTerminalsLeft) {
  const Graph g = unit_graph(2, V(1), V(2), {{1, 2}});
  TreeDecomposition t;
  const BagId x = t.add_bag({V(1), V(2)});
  const BagId y = t.add_bag({V(2)});
  t.add_tree_edge(x, y);
  t.set_root(x);
  // Two bags so the precondition holds; {2} is a subset leaf, but with
  // only terminals in the graph there is nothing to plan.
  const auto nice = NiceTreeDecomposition::certify(t);
  EXPECT_FALSE(find_removal_plan(nice, g).has_value());
}

TEST(RemovalPlan, RejectsParallelEdges) {
  Graph g = unit_graph(3, V(1), V(3), {{1, 2}, {1, 2}, {2, 3}});
  TreeDecomposition t;
  const BagId x = t.add_bag({V(1), V(2)});
  const BagId y = t.add_bag({V(2), V(3)});
  t.add_tree_edge(x, y);
  EXPECT_THROW(find_removal_plan(make_nice(t), g), StructuralError);
}

// Runs the plan/update loop by hand on random partial k-trees, deleting
// the chosen vertex and connecting its neighbours like a star-mesh would.
TEST(RemovalPlan, LoopTerminatesInNMinusTwoSteps) {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + trial % 7;
    const std::size_t k = 1 + trial % 3;
    Instance inst = random_partial_ktree(rng, n, k, 1);
    Graph g = inst.graph;
    NiceTreeDecomposition nice = prune_subset_leaves(make_nice(inst.decomposition));
    const std::size_t w = width(inst.decomposition);
    std::size_t steps = 0;
    while (true) {
      std::vector<VertexId> nonterminal;
      for (VertexId v : g.vertices()) {
        if (!g.is_terminal(v)) nonterminal.push_back(v);
      }
      if (nonterminal.empty()) break;
      std::optional<RemovalPlan> plan;
      VertexId v;
      if (nice.bag_count() == 1) {
        v = nonterminal.front();
      } else {
        plan = find_removal_plan(nice, g);
        ASSERT_TRUE(plan.has_value());
        v = plan->vertex;
        EXPECT_LE(degree_distinct(g, v), plan->expected_degree_bound);
        EXPECT_LE(plan->expected_degree_bound, w + 1);
      }
      const auto nbrs = g.neighbors(v);
      g.remove_vertex(v);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
          bool present = false;
          for (EdgeKey e : g.incident(nbrs[i])) present |= g.edge(e).other(nbrs[i]) == nbrs[j];
          if (!present) g.add_edge(nbrs[i], nbrs[j], identity(), identity());
        }
      }
      if (plan) {
        nice = update_after_removal(nice, *plan);
      } else {
        TreeDecomposition t = nice.tree();
        const BagId only = t.bags().begin()->first;
        Bag bag = t.bag(only);
        bag.erase(v);
        t.set_bag(only, bag);
        nice = NiceTreeDecomposition::certify(t);
      }
      ASSERT_TRUE(validate_decomposition(g, nice.tree()).empty()) << "trial " << trial;
      EXPECT_LE(width(nice.tree()), w);
      ++steps;
    }
    EXPECT_EQ(steps, n - 2);
  }
}

TEST(Heuristic, TreeCliqueCycle) {
  const Graph tree = unit_graph(6, V(1), V(6), {{1, 2}, {1, 3}, {3, 4}, {3, 5}, {5, 6}});
  TreeDecomposition t = heuristic_decomposition(tree);
  EXPECT_TRUE(validate_decomposition(tree, t).empty());
  EXPECT_EQ(width(t), 1u);

  for (std::size_t k = 2; k <= 6; ++k) {
    const Graph c = clique(k);
    t = heuristic_decomposition(c);
    EXPECT_TRUE(validate_decomposition(c, t).empty());
    EXPECT_EQ(width(t), k - 1);
  }

  for (std::size_t n = 3; n <= 12; ++n) {
    const Graph c = cycle_graph(n);
    t = heuristic_decomposition(c);
    EXPECT_TRUE(validate_decomposition(c, t).empty());
    EXPECT_EQ(width(t), 2u) << n;
  }
}

TEST(Heuristic, ValidOnRandomGraphs) {
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    const Instance inst = random_partial_ktree(rng, 5 + i % 9, 1 + i % 4, 1);
    const TreeDecomposition t = heuristic_decomposition(inst.graph);
    EXPECT_TRUE(validate_decomposition(inst.graph, t).empty());
  }
}

TEST(Separator, PathOfNine) {
  const Graph g = path_graph(9);
  TreeDecomposition t;
  std::optional<BagId> prev;
  for (std::uint32_t i = 1; i < 9; ++i) {
    const BagId id = t.add_bag({V(i), V(i + 1)});
    if (prev) t.add_tree_edge(*prev, id);
    prev = id;
  }
  const Separator sep = balanced_separator(g, t);
  EXPECT_TRUE(separates(g, sep));
  EXPECT_LE(sep.side1.size(), 6u);
  EXPECT_LE(sep.side2.size(), 6u);
  EXPECT_EQ(sep.separator.size() + sep.side1.size() + sep.side2.size(), 9u);
  EXPECT_LE(sep.separator.size(), 2u);
}

TEST(Separator, CliquesSharingABag) {
  // Two cliques alone never exceed 2w + 2 vertices.
  Graph two(6, V(1), V(6));
  TreeDecomposition t2;
  const BagId x = t2.add_bag({V(1), V(2), V(3), V(4)});
  const BagId y = t2.add_bag({V(3), V(4), V(5), V(6)});
  t2.add_tree_edge(x, y);
  EXPECT_THROW(balanced_separator(two, t2), PreconditionError);

  // Four 4-cliques glued along B = {1, 2}.
  Graph g(10, V(3), V(9));
  g.add_edge(V(1), V(2), PwlFunction::shift(1), PwlFunction::shift(1));
  TreeDecomposition t;
  const BagId hub = t.add_bag({V(1), V(2)});
  for (std::uint32_t c = 0; c < 4; ++c) {
    const VertexId a = V(3 + 2 * c), b = V(4 + 2 * c);
    for (VertexId u : {a, b}) {
      g.add_edge(V(1), u, PwlFunction::shift(1), PwlFunction::shift(1));
      g.add_edge(V(2), u, PwlFunction::shift(1), PwlFunction::shift(1));
    }
    g.add_edge(a, b, PwlFunction::shift(1), PwlFunction::shift(1));
    t.add_tree_edge(hub, t.add_bag({V(1), V(2), a, b}));
  }
  ASSERT_TRUE(validate_decomposition(g, t).empty());
  const Separator sep = balanced_separator(g, t);
  EXPECT_EQ(sep.separator, (std::set<VertexId>{V(1), V(2)}));
  EXPECT_TRUE(separates(g, sep));
  EXPECT_EQ(sep.side1.size() + sep.side2.size(), 8u);
}

TEST(Separator, Star) {
  Graph g(9, V(2), V(3));
  for (std::uint32_t leaf = 2; leaf <= 9; ++leaf) {
    g.add_edge(V(1), V(leaf), PwlFunction::shift(1), PwlFunction::shift(1));
  }
  const TreeDecomposition t = heuristic_decomposition(g);
  const Separator sep = balanced_separator(g, t);
  EXPECT_EQ(sep.separator, (std::set<VertexId>{V(1)}));
  EXPECT_TRUE(separates(g, sep));
}

TEST(Separator, BalancedOnRandomInstances) {
  Rng rng(3);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    const Instance inst = random_partial_ktree(rng, 8 + i % 20, 1 + i % 3, 1);
    const std::size_t n = inst.graph.vertex_count();
    const std::size_t w = width(inst.decomposition);
    if (n <= 2 * w + 2) continue;
    const Separator sep = balanced_separator(inst.graph, inst.decomposition);
    EXPECT_TRUE(separates(inst.graph, sep));
    EXPECT_LE(3 * std::max(sep.side1.size(), sep.side2.size()), 2 * n);
    EXPECT_LE(sep.separator.size(), w + 1);
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(PaceFormat, RoundTrip) {
  const Graph g = cycle_graph(6);
  const TreeDecomposition t = heuristic_decomposition(g);
  const std::string text = format_decomposition(t, g.vertex_count());
  const TreeDecomposition back = parse_decomposition(text);
  EXPECT_EQ(back.bag_count(), t.bag_count());
  EXPECT_TRUE(validate_decomposition(g, back).empty());
  EXPECT_EQ(format_decomposition(back, g.vertex_count()), text);
  EXPECT_EQ(text.substr(0, 5), "s td ");
}

TEST(PaceFormat, Errors) {
  EXPECT_THROW(parse_decomposition("b 1 1 2\n"), ParseError);
  EXPECT_THROW(parse_decomposition("s td 1 2 2\nb 2 1 2\n"), ParseError);
  EXPECT_THROW(parse_decomposition("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 5\n"), ParseError);
}

}  // namespace
}  // namespace tdsp
