#pragma once

// Data-parallel kernels. Each has a serial reference and an OpenMP variant;
// both must produce identical results, which the kernel tests check.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tdsp/graph.hpp"
#include "tdsp/pwl.hpp"

namespace tdsp {

enum class Execution { serial, parallel };

namespace kernels {

// outer o inner
struct CompositionJob {
  const PwlFunction* outer;
  const PwlFunction* inner;
};

std::vector<PwlFunction> compose_batch_serial(std::span<const CompositionJob> jobs);
std::vector<PwlFunction> compose_batch_parallel(std::span<const CompositionJob> jobs);
std::vector<PwlFunction> compose_batch(std::span<const CompositionJob> jobs, Execution exec);

// Pointwise minimum of each group (an empty group yields infinity).
std::vector<PwlFunction> minimum_fold_serial(std::span<const std::vector<PwlFunction>> groups);
std::vector<PwlFunction> minimum_fold_parallel(std::span<const std::vector<PwlFunction>> groups);
std::vector<PwlFunction> minimum_fold(std::span<const std::vector<PwlFunction>> groups,
                                      Execution exec);

// Earliest arrival at `target` when leaving `source` at each time.
std::vector<ArrivalTime> arrival_grid_serial(const Graph& g, VertexId source, VertexId target,
                                             std::span<const Rational> times);
std::vector<ArrivalTime> arrival_grid_parallel(const Graph& g, VertexId source, VertexId target,
                                               std::span<const Rational> times);
std::vector<ArrivalTime> arrival_grid(const Graph& g, VertexId source, VertexId target,
                                      std::span<const Rational> times, Execution exec);

// Runs body(0..count-1). The parallel variant rethrows the first exception
// raised by any iteration.
void for_each_index(std::size_t count, Execution exec,
                    const std::function<void(std::size_t)>& body);

}  // namespace kernels
}  // namespace tdsp
