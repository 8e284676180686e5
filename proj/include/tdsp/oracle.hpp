#pragma once

// Slow, independent reference computations used to check the reduction
// engine. Nothing here calls into the reduction code.

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "tdsp/graph.hpp"
#include "tdsp/kernels.hpp"
#include "tdsp/pwl.hpp"

namespace tdsp {

// Label-setting earliest arrival from `source` departing at t0. Unreachable
// vertices map to infinity. Throws StructuralError naming the edge when a
// non-FIFO edge is relaxed.
std::map<VertexId, ArrivalTime> td_dijkstra(const Graph& g, VertexId source, const Rational& t0);

inline constexpr std::size_t kEnumerationVertexLimit = 12;

// Minimum over every simple path of the composed edge functions. Throws
// SizeLimitError above `max_vertices`.
PwlFunction enumerate_paths_arrival(const Graph& g, VertexId from, VertexId to,
                                    std::size_t max_vertices = kEnumerationVertexLimit);

// t = 0, every breakpoint, midpoints between consecutive breakpoints, and
// one point past the last breakpoint.
std::vector<Rational> breakpoint_grid(const PwlFunction& f);

struct Mismatch {
  Rational t;
  ArrivalTime expected;  // td_dijkstra
  ArrivalTime actual;    // f(t)
};

struct CrosscheckReport {
  std::vector<Rational> times;
  std::vector<Mismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
};

CrosscheckReport crosscheck(const PwlFunction& f, const Graph& g, VertexId source,
                            VertexId target, std::span<const Rational> extra_times = {},
                            Execution exec = Execution::parallel);

}  // namespace tdsp
