#include <gtest/gtest.h>

#include "support.hpp"
#include "tdsp/errors.hpp"
#include "tdsp/graph.hpp"

namespace tdsp {
namespace {

using testing::fn;
using testing::V;

Graph triangle() {
  return testing::graph(
      "p tdsp 3 1 3\n"
      "e 1 2 (0,1):1 (0,1):1\n"
      "e 2 3 (0,1):1 (0,1):1\n"
      "e 1 3 (0,5):1 (0,5):1\n");
}

TEST(Graph, DegreeDistinct) {
  Graph g(4, V(1), V(2));
  const VertexId v = V(1), a = V(2), b = V(3);
  g.add_edge(v, a, identity(), identity());
  g.add_edge(v, a, identity(), identity());
  g.add_edge(v, b, identity(), identity());
  EXPECT_EQ(degree_distinct(g, v), 2u);
  EXPECT_EQ(degree_distinct(g, V(4)), 0u);
  g.add_edge(V(4), V(4), identity(), identity());
  EXPECT_EQ(degree_distinct(g, V(4)), 0u);
}

TEST(Graph, ParallelGroups) {
  EXPECT_TRUE(parallel_groups(triangle()).empty());

  Graph g(4, V(1), V(4));
  g.add_edge(V(1), V(2), identity(), identity());
  g.add_edge(V(2), V(1), identity(), identity());
  g.add_edge(V(1), V(2), identity(), identity());
  auto groups = parallel_groups(g);
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].size(), 3u);

  Graph h(4, V(1), V(4));
  h.add_edge(V(1), V(2), identity(), identity());
  h.add_edge(V(1), V(2), identity(), identity());
  h.add_edge(V(3), V(4), identity(), identity());
  h.add_edge(V(4), V(3), identity(), identity());
  h.add_edge(V(3), V(3), identity(), identity());
  groups = parallel_groups(h);
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0].size(), 2u);
  EXPECT_EQ(groups[1].size(), 2u);
}

TEST(Graph, InducedSubgraph) {
  const Graph g = triangle();
  const Graph all = induced_subgraph(g, g.vertices());
  EXPECT_EQ(all.vertices(), g.vertices());
  ASSERT_EQ(all.edge_count(), g.edge_count());
  for (const auto& [key, e] : g.edges()) {
    EXPECT_EQ(all.edge(key).forward, e.forward);
    EXPECT_EQ(all.edge(key).backward, e.backward);
  }

  const Graph one = induced_subgraph(g, {V(1)});
  EXPECT_EQ(one.vertex_count(), 1u);
  EXPECT_EQ(one.edge_count(), 0u);

  const Graph path = testing::graph("p tdsp 3 1 3\ne 1 2 (0,1):1 inf\ne 2 3 (0,1):1 inf\n");
  const Graph ends = induced_subgraph(path, {V(1), V(3)});
  EXPECT_EQ(ends.vertex_count(), 2u);
  EXPECT_EQ(ends.edge_count(), 0u);
}

TEST(Graph, TotalPieces) {
  Graph g(2, V(1), V(2));
  g.add_edge(V(1), V(2), PwlFunction::shift(1), PwlFunction::shift(1));
  EXPECT_EQ(total_pieces(g), 2u);

  Graph one_way(2, V(1), V(2));
  one_way.add_edge(V(1), V(2), PwlFunction::shift(1), infinity());
  EXPECT_EQ(total_pieces(one_way), 1u);

  Graph bent(3, V(1), V(3));
  bent.add_edge(V(1), V(2), fn("(0,2)(2,4):2"), fn("(0,2)(2,4):2"));
  bent.add_edge(V(2), V(3), fn("(0,1)(1,2):3"), fn("(0,1)(1,2):3"));
  EXPECT_EQ(total_pieces(bent), 8u);
}

TEST(Graph, Validate) {
  EXPECT_TRUE(validate(triangle()).empty());

  Graph bad(2, V(1), V(2));
  const EdgeKey key = bad.add_edge(V(1), V(2), PwlFunction::shift(1), PwlFunction::shift(-1));
  const auto violations = validate(bad);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].edge, key);
  EXPECT_EQ(violations[0].from, V(2));
  EXPECT_EQ(violations[0].to, V(1));

  Graph unreachable(2, V(1), V(2));
  unreachable.add_edge(V(1), V(2), infinity(), infinity());
  EXPECT_TRUE(validate(unreachable).empty());
}

TEST(Graph, RemoveVertexDropsIncidentEdges) {
  Graph g = triangle();
  g.remove_vertex(V(2));
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_TRUE(g.incident(V(1)).size() == 1);
  EXPECT_THROW(g.edge(EdgeKey{0}), Error);
}

TEST(Graph, KeysAreNeverReused) {
  Graph g(2, V(1), V(2));
  const EdgeKey a = g.add_edge(V(1), V(2), identity(), identity());
  g.remove_edge(a);
  const EdgeKey b = g.add_edge(V(1), V(2), identity(), identity());
  EXPECT_LT(a, b);
}

TEST(Graph, Connectivity) {
  Graph g = testing::graph("p tdsp 4 1 4\ne 1 2 (0,1):1 (0,1):1\ne 3 4 (0,1):1 (0,1):1\n");
  EXPECT_TRUE(is_connected(g, V(1), V(2)));
  EXPECT_FALSE(is_connected(g, V(1), V(4)));
}

TEST(GraphFormat, RoundTrip) {
  const Graph g = triangle();
  const Graph back = parse_graph(format_graph(g));
  EXPECT_EQ(back.source(), g.source());
  EXPECT_EQ(back.target(), g.target());
  EXPECT_EQ(format_graph(back), format_graph(g));
}

TEST(GraphFormat, ErrorsCarryLineNumbers) {
  try {
    parse_graph("p tdsp 3 1 3\ne 1 2 (0,1):1 (0,1):1\ne 1 9 (0,1):1 (0,1):1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_graph("e 1 2 (0,1):1 (0,1):1\n"), ParseError);
  EXPECT_THROW(parse_graph("p tdsp 3 1 1\n"), ParseError);
  EXPECT_THROW(parse_graph("p tdsp 3 1 3\ne 1 2 (0,1 inf\n"), ParseError);
}

}  // namespace
}  // namespace tdsp
