#pragma once

// Step-by-step checking of a reduction against the time-dependent Dijkstra
// oracle on the original graph.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdsp/graph.hpp"
#include "tdsp/reduction.hpp"
#include "tdsp/tree_decomposition.hpp"

namespace tdsp {

struct StepFailure {
  std::size_t step = 0;  // 1-based index into the trace
  std::string step_text;
  std::string reason;

  std::string describe() const { return "step " + std::to_string(step) + " (" + step_text + "): " + reason; }
};

struct StepCheckReport {
  ReductionResult result;
  std::size_t steps_checked = 0;
  std::size_t probes = 0;
  std::optional<StepFailure> failure;  // first mismatch, if any

  bool ok() const { return !failure.has_value(); }
};

// Minimum over the current s -> d edges; infinity when there are none.
PwlFunction running_estimate(const Graph& g);

// After every transformation compares the s -> d earliest arrival in the
// current graph with the original at each breakpoint and midpoint of the
// running estimate plus `random_times` fixed random departures. Also
// checks that every edge function stays FIFO.
StepCheckReport reduce_with_step_checks(const Graph& g, const NiceTreeDecomposition& t,
                                        std::uint64_t seed, std::size_t random_times = 5,
                                        Execution exec = Execution::serial);

}  // namespace tdsp
