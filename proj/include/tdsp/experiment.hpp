#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tdsp/generators.hpp"
#include "tdsp/kernels.hpp"

namespace tdsp {

enum class GeneratorKind { layered, series_parallel, random_partial_ktree };

std::string to_string(GeneratorKind kind);
// Throws PreconditionError for unknown names.
GeneratorKind parse_generator(std::string_view name);

struct ExperimentConfig {
  GeneratorKind generator = GeneratorKind::layered;
  std::size_t n = 10;
  std::size_t w = 2;
  std::uint64_t seed = 0;
  std::size_t pieces_per_edge = 2;

  // Throws PreconditionError unless n >= 2, w >= 1, pieces_per_edge >= 1.
  void validate() const;
};

struct ExperimentRow {
  std::size_t n = 0;
  std::size_t w = 0;
  std::size_t total_pieces = 0;  // K
  std::size_t breakpoints = 0;   // of A_(s,d)
  std::size_t star_mesh_count = 0;
  std::size_t parallel_count = 0;
  std::size_t max_degree = 0;
  double wall_time = 0.0;  // seconds
  // Not part of the CSV; kept for budget checks.
  std::size_t width = 0;
  std::vector<std::string> budget_violations;
};

// The instance depends only on the config, never on run order.
Instance make_instance(const ExperimentConfig& config);
ExperimentRow run_experiment(const ExperimentConfig& config);

// Rows come back sorted by (n, w, seed) regardless of execution.
std::vector<ExperimentRow> run_experiments(std::span<const ExperimentConfig> configs,
                                           Execution exec = Execution::parallel);

inline constexpr std::string_view kExperimentCsvHeader =
    "n,w,K,breakpoints,star_mesh_count,parallel_count,max_degree,wall_time";

// With include_timing = false the wall_time column is written as 0 so the
// output is byte-identical across runs.
void write_csv(std::ostream& out, std::span<const ExperimentRow> rows, bool include_timing = true);
void write_json(std::ostream& out, std::span<const ExperimentRow> rows, bool include_timing = true);

}  // namespace tdsp
