#pragma once

// Random FIFO instances together with the decomposition their construction
// certifies.

#include <cstddef>
#include <cstdint>
#include <random>

#include "tdsp/graph.hpp"
#include "tdsp/pwl.hpp"
#include "tdsp/tree_decomposition.hpp"

namespace tdsp {

using Rng = std::mt19937_64;

struct Instance {
  Graph graph;
  TreeDecomposition decomposition;
};

// FIFO by construction: nondecreasing values at breakpoints that stay on or
// above the identity, final slope >= 1. At most `pieces` pieces (collinear
// neighbours merge).
PwlFunction random_fifo_function(Rng& rng, std::size_t pieces);

// Subgraph of a random k-tree on n vertices, connected, with the k-tree's
// own decomposition (width min(k, n - 1)). Terminals are random.
Instance random_partial_ktree(Rng& rng, std::size_t n, std::size_t k, std::size_t pieces_per_edge,
                              double keep_probability = 0.6);

// Two-terminal series-parallel graph grown by random series and parallel
// expansions of edges from the single edge s = 1, d = 2. Width <= 2.
Instance random_series_parallel(Rng& rng, std::size_t n, std::size_t pieces_per_edge);

// s, then layers alternating between ceil((w+1)/2) and floor((w+1)/2)
// vertices, then d; complete bipartite between consecutive layers. The
// decomposition's bags are consecutive layer pairs, so its width is <= w.
// w = 1 gives a path.
Instance layered(Rng& rng, std::size_t n, std::size_t w, std::size_t pieces_per_edge);

// 2 x rungs grid; s and d at opposite corners. Width 2 decomposition.
Instance ladder(Rng& rng, std::size_t rungs, std::size_t pieces_per_edge);

}  // namespace tdsp
