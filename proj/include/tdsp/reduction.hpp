#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tdsp/graph.hpp"
#include "tdsp/kernels.hpp"
#include "tdsp/pwl.hpp"
#include "tdsp/tree_decomposition.hpp"

namespace tdsp {

struct ReductionStep {
  enum class Kind { self_loop, pendant, series, parallel, star_mesh, separator_contraction };

  Kind kind = Kind::star_mesh;
  std::optional<VertexId> removed_vertex;
  std::vector<EdgeKey> removed_edges;
  std::vector<EdgeKey> created_edges;
  // Neighbour count of the eliminated vertex (star_mesh, series, pendant).
  std::size_t degree = 0;
  // Total breakpoints over the removed / created edge functions.
  std::size_t breakpoints_before = 0;
  std::size_t breakpoints_after = 0;
};

std::string to_string(ReductionStep::Kind kind);
std::string to_string(const ReductionStep& step);

class ReductionTrace {
 public:
  void record(ReductionStep step);
  const std::vector<ReductionStep>& steps() const { return steps_; }

  // A k-edge parallel fold counts as k - 1 parallel reductions.
  std::size_t count(ReductionStep::Kind kind) const;
  std::size_t max_star_degree() const { return max_star_degree_; }
  // Largest breakpoint count seen on any edge function created so far.
  std::size_t max_breakpoints() const { return max_breakpoints_; }
  void observe_breakpoints(std::size_t breakpoints);

 private:
  std::vector<ReductionStep> steps_;
  std::size_t parallel_reductions_ = 0;
  std::size_t max_star_degree_ = 0;
  std::size_t max_breakpoints_ = 0;
};

void write_trace(std::ostream& out, const ReductionTrace& trace);
// key=value lines: counts per kind, max_star_degree, max_breakpoints.
void write_trace_summary(std::ostream& out, const ReductionTrace& trace);

// Each transformation below keeps every arrival function between the
// surviving vertices unchanged. A non-null trace receives the step.

void delete_self_loop(Graph& g, EdgeKey key, ReductionTrace* trace = nullptr);

// v must be a non-terminal with exactly one distinct neighbour.
void pendant_reduce(Graph& g, VertexId v, ReductionTrace* trace = nullptr);

// Replaces a parallel class by one edge carrying the per-direction minimum.
EdgeKey parallel_reduce(Graph& g, std::span<const EdgeKey> group, ReductionTrace* trace = nullptr,
                        Execution exec = Execution::parallel);

// Deletes non-terminal c and joins every neighbour pair (v_i, v_j), i < j,
// with forward A_{c v_j} o A_{v_i c} and backward A_{c v_i} o A_{v_j c}.
// Existing v_i v_j edges stay, so the result may hold parallel pairs.
std::vector<EdgeKey> star_mesh(Graph& g, VertexId c, ReductionTrace* trace = nullptr,
                               Execution exec = Execution::parallel);

struct ReduceOptions {
  Execution exec = Execution::parallel;
  // Called after every individual transformation with the current graph.
  std::function<void(const Graph&, const ReductionStep&)> on_step;
};

struct ReductionResult {
  PwlFunction forward = PwlFunction::infinity();   // A_(s,d)
  PwlFunction backward = PwlFunction::infinity();  // A_(d,s)
  ReductionTrace trace;
  std::size_t width = 0;
  std::size_t initial_vertices = 0;
};

// Reduces g to the single edge between its terminals, choosing star-mesh
// vertices from the nice decomposition. Throws StructuralError when the
// decomposition does not fit g.
ReductionResult reduce_to_terminals(Graph g, const NiceTreeDecomposition& t,
                                    const ReduceOptions& options = {});

// Convenience: heuristic decomposition, made nice.
ReductionResult reduce_with_heuristic(const Graph& g, const ReduceOptions& options = {});

// Budget checks for a finished reduction of an n-vertex instance over a
// width-w decomposition: n - 2 star-meshes, degrees <= w + 1, at most
// (n - 2) * C(w + 1, 2) parallel reductions. Empty when all hold.
std::vector<std::string> budget_violations(const ReductionResult& result);

// The separator graph on S plus the terminals: for each side i and each
// pair u, v in S + ({s, d} n V_i), one edge carrying A_(u,v) and A_(v,u)
// of G[V_i + S].
Graph contract_to_separator_graph(const Graph& g, const Separator& sep,
                                  Execution exec = Execution::parallel);

}  // namespace tdsp
