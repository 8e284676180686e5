#include "tdsp/generators.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "tdsp/errors.hpp"

namespace tdsp {

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

VertexId vid(std::size_t i) { return VertexId{static_cast<std::uint32_t>(i)}; }

void add_random_edge(Rng& rng, Graph& g, VertexId u, VertexId v, std::size_t pieces) {
  PwlFunction forward = random_fifo_function(rng, pieces);
  PwlFunction backward = random_fifo_function(rng, pieces);
  g.add_edge(u, v, std::move(forward), std::move(backward));
}

}  // namespace

PwlFunction random_fifo_function(Rng& rng, std::size_t pieces) {
  if (pieces == 0) throw PreconditionError("random_fifo_function needs at least one piece");
  std::vector<std::pair<Rational, Rational>> points;
  Rational t = 0;
  Rational v = Rational(uniform(rng, 0, 8), uniform(rng, 1, 2));
  points.emplace_back(t, v);
  for (std::size_t i = 1; i < pieces; ++i) {
    t += Rational(uniform(rng, 1, 6), uniform(rng, 1, 2));
    v = std::max(v, t) + Rational(uniform(rng, 0, 6), uniform(rng, 1, 3));
    points.emplace_back(t, v);
  }
  static const long kSlopes[][2] = {{1, 1}, {1, 1}, {3, 2}, {2, 1}, {5, 4}};
  const auto& s = kSlopes[uniform(rng, 0, 4)];
  return PwlFunction::from_points(points, Rational(s[0], s[1]));
}

Instance random_partial_ktree(Rng& rng, std::size_t n, std::size_t k, std::size_t pieces,
                              double keep_probability) {
  if (n < 2 || k < 1) throw PreconditionError("random_partial_ktree needs n >= 2 and k >= 1");
  Instance out;
  Graph& g = out.graph;
  for (std::size_t i = 1; i <= n; ++i) g.add_vertex(vid(i));

  const std::size_t base = std::min(n, k + 1);
  Bag first;
  for (std::size_t i = 1; i <= base; ++i) first.insert(vid(i));
  const BagId root = out.decomposition.add_bag(first);
  for (std::size_t i = 1; i <= base; ++i) {
    for (std::size_t j = i + 1; j <= base; ++j) {
      if (j == i + 1 || coin(rng, keep_probability)) add_random_edge(rng, g, vid(i), vid(j), pieces);
    }
  }

  // Every k-clique of the k-tree with a bag containing it.
  std::vector<std::pair<std::vector<VertexId>, BagId>> cliques;
  if (base == k + 1) {
    for (VertexId skip : first) {
      std::vector<VertexId> c;
      for (VertexId v : first) {
        if (v != skip) c.push_back(v);
      }
      cliques.emplace_back(std::move(c), root);
    }
  }
  for (std::size_t i = base + 1; i <= n; ++i) {
    const auto [clique, parent] = cliques[static_cast<std::size_t>(
        uniform(rng, 0, static_cast<long>(cliques.size()) - 1))];
    const VertexId v = vid(i);
    Bag bag(clique.begin(), clique.end());
    bag.insert(v);
    const BagId id = out.decomposition.add_bag(bag);
    out.decomposition.add_tree_edge(parent, id);

    const std::size_t anchor = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(k) - 1));
    for (std::size_t j = 0; j < clique.size(); ++j) {
      if (j == anchor || coin(rng, keep_probability)) add_random_edge(rng, g, clique[j], v, pieces);
    }
    for (std::size_t j = 0; j < clique.size(); ++j) {
      std::vector<VertexId> c = clique;
      c[j] = v;
      std::sort(c.begin(), c.end());
      cliques.emplace_back(std::move(c), id);
    }
  }

  const std::size_t s = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(n)));
  std::size_t d = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(n) - 1));
  if (d >= s) ++d;
  g.set_terminals(vid(s), vid(d));
  return out;
}

Instance random_series_parallel(Rng& rng, std::size_t n, std::size_t pieces) {
  if (n < 2) throw PreconditionError("random_series_parallel needs n >= 2");
  Instance out;
  Graph& g = out.graph;
  for (std::size_t i = 1; i <= n; ++i) g.add_vertex(vid(i));
  g.set_terminals(vid(1), vid(2));

  // A bag holding each edge that ever existed.
  std::map<std::pair<VertexId, VertexId>, BagId> bag_of;
  add_random_edge(rng, g, vid(1), vid(2), pieces);
  bag_of[{vid(1), vid(2)}] = out.decomposition.add_bag({vid(1), vid(2)});

  for (std::size_t i = 3; i <= n; ++i) {
    std::vector<EdgeKey> keys;
    for (const auto& [key, _] : g.edges()) keys.push_back(key);
    const EdgeKey pick = keys[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(keys.size()) - 1))];
    const EdgeRecord e = g.edge(pick);
    const auto ends = std::minmax(e.u, e.v);
    const VertexId v = vid(i);
    if (coin(rng, 0.5)) g.remove_edge(pick);  // series: subdivide; otherwise parallel path
    add_random_edge(rng, g, ends.first, v, pieces);
    add_random_edge(rng, g, v, ends.second, pieces);

    const BagId id = out.decomposition.add_bag({ends.first, ends.second, v});
    out.decomposition.add_tree_edge(bag_of.at(ends), id);
    bag_of[std::minmax(ends.first, v)] = id;
    bag_of[std::minmax(v, ends.second)] = id;
  }
  return out;
}

Instance layered(Rng& rng, std::size_t n, std::size_t w, std::size_t pieces) {
  if (n < 2 || w < 1) throw PreconditionError("layered needs n >= 2 and w >= 1");
  const std::size_t wide = (w + 2) / 2;
  const std::size_t narrow = std::max<std::size_t>(1, (w + 1) / 2);

  std::vector<std::vector<VertexId>> layers{{vid(1)}};
  std::size_t next = 2;
  bool use_wide = true;
  while (next < n) {
    std::vector<VertexId> layer;
    const std::size_t size = use_wide ? wide : narrow;
    for (std::size_t i = 0; i < size && next < n; ++i) layer.push_back(vid(next++));
    layers.push_back(std::move(layer));
    use_wide = !use_wide;
  }
  layers.push_back({vid(n)});

  Instance out;
  Graph& g = out.graph;
  for (std::size_t i = 1; i <= n; ++i) g.add_vertex(vid(i));
  g.set_terminals(vid(1), vid(n));
  std::optional<BagId> prev;
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    Bag bag;
    for (VertexId a : layers[l]) {
      bag.insert(a);
      for (VertexId b : layers[l + 1]) add_random_edge(rng, g, a, b, pieces);
    }
    bag.insert(layers[l + 1].begin(), layers[l + 1].end());
    const BagId id = out.decomposition.add_bag(std::move(bag));
    if (prev) out.decomposition.add_tree_edge(*prev, id);
    prev = id;
  }
  return out;
}

Instance ladder(Rng& rng, std::size_t rungs, std::size_t pieces) {
  if (rungs < 1) throw PreconditionError("ladder needs at least one rung");
  Instance out;
  Graph& g = out.graph;
  auto top = [](std::size_t i) { return vid(i + 1); };
  auto bottom = [rungs](std::size_t i) { return vid(rungs + i + 1); };
  for (std::size_t i = 1; i <= 2 * rungs; ++i) g.add_vertex(vid(i));
  g.set_terminals(top(0), bottom(rungs - 1));

  for (std::size_t i = 0; i < rungs; ++i) {
    add_random_edge(rng, g, top(i), bottom(i), pieces);
    if (i + 1 < rungs) {
      add_random_edge(rng, g, top(i), top(i + 1), pieces);
      add_random_edge(rng, g, bottom(i), bottom(i + 1), pieces);
    }
  }
  if (rungs == 1) {
    out.decomposition.add_bag({top(0), bottom(0)});
    return out;
  }
  std::optional<BagId> prev;
  for (std::size_t i = 0; i + 1 < rungs; ++i) {
    const BagId a = out.decomposition.add_bag({top(i), bottom(i), top(i + 1)});
    const BagId b = out.decomposition.add_bag({bottom(i), top(i + 1), bottom(i + 1)});
    if (prev) out.decomposition.add_tree_edge(*prev, a);
    out.decomposition.add_tree_edge(a, b);
    prev = b;
  }
  return out;
}

}  // namespace tdsp
