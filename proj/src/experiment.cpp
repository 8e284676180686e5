#include "tdsp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <tuple>

#include "json.hpp"

#include "tdsp/errors.hpp"
#include "tdsp/generators.hpp"
#include "tdsp/reduction.hpp"

namespace tdsp {

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::layered: return "layered";
    case GeneratorKind::series_parallel: return "series_parallel";
    case GeneratorKind::random_partial_ktree: return "random_partial_ktree";
  }
  return "?";
}

GeneratorKind parse_generator(std::string_view name) {
  for (GeneratorKind k : {GeneratorKind::layered, GeneratorKind::series_parallel,
                          GeneratorKind::random_partial_ktree}) {
    if (to_string(k) == name) return k;
  }
  throw PreconditionError("unknown generator '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (n < 2) throw PreconditionError("experiment needs n >= 2");
  if (w < 1) throw PreconditionError("experiment needs w >= 1");
  if (pieces_per_edge < 1) throw PreconditionError("experiment needs pieces_per_edge >= 1");
}

Instance make_instance(const ExperimentConfig& config) {
  config.validate();
  std::seed_seq seq{static_cast<std::uint64_t>(config.generator), config.seed,
                    static_cast<std::uint64_t>(config.n), static_cast<std::uint64_t>(config.w),
                    static_cast<std::uint64_t>(config.pieces_per_edge)};
  Rng rng(seq);
  Instance instance;
  switch (config.generator) {
    case GeneratorKind::layered:
      instance = layered(rng, config.n, config.w, config.pieces_per_edge);
      break;
    case GeneratorKind::series_parallel:
      instance = random_series_parallel(rng, config.n, config.pieces_per_edge);
      break;
    case GeneratorKind::random_partial_ktree:
      instance = random_partial_ktree(rng, config.n, config.w, config.pieces_per_edge);
      break;
  }
  return instance;
}

ExperimentRow run_experiment(const ExperimentConfig& config) {
  const Instance instance = make_instance(config);
  ExperimentRow row;
  row.n = config.n;
  row.w = config.w;
  row.total_pieces = total_pieces(instance.graph);

  const auto start = std::chrono::steady_clock::now();
  ReduceOptions options;
  options.exec = Execution::serial;
  const ReductionResult result =
      reduce_to_terminals(instance.graph, make_nice(instance.decomposition), options);
  row.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  row.breakpoints = result.forward.breakpoint_count();
  row.star_mesh_count = result.trace.count(ReductionStep::Kind::star_mesh);
  row.parallel_count = result.trace.count(ReductionStep::Kind::parallel);
  row.max_degree = result.trace.max_star_degree();
  row.width = result.width;
  row.budget_violations = budget_violations(result);
  return row;
}

std::vector<ExperimentRow> run_experiments(std::span<const ExperimentConfig> configs,
                                           Execution exec) {
  std::vector<std::size_t> order(configs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = configs[a];
    const auto& y = configs[b];
    return std::tie(x.n, x.w, x.seed) < std::tie(y.n, y.w, y.seed);
  });
  std::vector<ExperimentRow> rows(configs.size());
  kernels::for_each_index(configs.size(), exec,
                          [&](std::size_t i) { rows[i] = run_experiment(configs[order[i]]); });
  return rows;
}

void write_csv(std::ostream& out, std::span<const ExperimentRow> rows, bool include_timing) {
  out << kExperimentCsvHeader << '\n';
  for (const ExperimentRow& r : rows) {
    out << r.n << ',' << r.w << ',' << r.total_pieces << ',' << r.breakpoints << ','
        << r.star_mesh_count << ',' << r.parallel_count << ',' << r.max_degree << ','
        << (include_timing ? r.wall_time : 0.0) << '\n';
  }
}

void write_json(std::ostream& out, std::span<const ExperimentRow> rows, bool include_timing) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const ExperimentRow& r : rows) {
    doc.push_back({{"n", r.n},
                   {"w", r.w},
                   {"K", r.total_pieces},
                   {"breakpoints", r.breakpoints},
                   {"star_mesh_count", r.star_mesh_count},
                   {"parallel_count", r.parallel_count},
                   {"max_degree", r.max_degree},
                   {"wall_time", include_timing ? r.wall_time : 0.0}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace tdsp
