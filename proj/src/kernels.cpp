#include "tdsp/kernels.hpp"

#include <exception>

#include <omp.h>

#include "tdsp/oracle.hpp"

namespace tdsp::kernels {

std::vector<PwlFunction> compose_batch_serial(std::span<const CompositionJob> jobs) {
  std::vector<PwlFunction> out;
  out.reserve(jobs.size());
  for (const CompositionJob& job : jobs) out.push_back(compose(*job.outer, *job.inner));
  return out;
}

std::vector<PwlFunction> compose_batch_parallel(std::span<const CompositionJob> jobs) {
  std::vector<PwlFunction> out(jobs.size(), PwlFunction::infinity());
  for_each_index(jobs.size(), Execution::parallel,
                 [&](std::size_t i) { out[i] = compose(*jobs[i].outer, *jobs[i].inner); });
  return out;
}

std::vector<PwlFunction> compose_batch(std::span<const CompositionJob> jobs, Execution exec) {
  return exec == Execution::parallel ? compose_batch_parallel(jobs) : compose_batch_serial(jobs);
}

namespace {

PwlFunction fold(const std::vector<PwlFunction>& group) {
  PwlFunction acc = PwlFunction::infinity();
  for (const PwlFunction& f : group) acc = minimum(acc, f);
  return acc;
}

}  // namespace

std::vector<PwlFunction> minimum_fold_serial(std::span<const std::vector<PwlFunction>> groups) {
  std::vector<PwlFunction> out;
  out.reserve(groups.size());
  for (const auto& group : groups) out.push_back(fold(group));
  return out;
}

std::vector<PwlFunction> minimum_fold_parallel(std::span<const std::vector<PwlFunction>> groups) {
  std::vector<PwlFunction> out(groups.size(), PwlFunction::infinity());
  for_each_index(groups.size(), Execution::parallel,
                 [&](std::size_t i) { out[i] = fold(groups[i]); });
  return out;
}

std::vector<PwlFunction> minimum_fold(std::span<const std::vector<PwlFunction>> groups,
                                      Execution exec) {
  return exec == Execution::parallel ? minimum_fold_parallel(groups) : minimum_fold_serial(groups);
}

std::vector<ArrivalTime> arrival_grid_serial(const Graph& g, VertexId source, VertexId target,
                                             std::span<const Rational> times) {
  std::vector<ArrivalTime> out;
  out.reserve(times.size());
  for (const Rational& t : times) out.push_back(td_dijkstra(g, source, t).at(target));
  return out;
}

std::vector<ArrivalTime> arrival_grid_parallel(const Graph& g, VertexId source, VertexId target,
                                               std::span<const Rational> times) {
  std::vector<ArrivalTime> out(times.size(), ArrivalTime::infinity());
  for_each_index(times.size(), Execution::parallel,
                 [&](std::size_t i) { out[i] = td_dijkstra(g, source, times[i]).at(target); });
  return out;
}

std::vector<ArrivalTime> arrival_grid(const Graph& g, VertexId source, VertexId target,
                                      std::span<const Rational> times, Execution exec) {
  return exec == Execution::parallel ? arrival_grid_parallel(g, source, target, times)
                                     : arrival_grid_serial(g, source, target, times);
}

void for_each_index(std::size_t count, Execution exec,
                    const std::function<void(std::size_t)>& body) {
  if (exec == Execution::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(tdsp_kernel_error)
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace tdsp::kernels
