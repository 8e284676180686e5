// tdsp: validate, reduce and cross-check time-dependent shortest path
// instances.

#include <iostream>

#include "CLI11.hpp"

#include "tdsp/cli.hpp"

namespace {

const std::map<std::string, tdsp::cli::Format> kFormats{{"text", tdsp::cli::Format::text},
                                                        {"json", tdsp::cli::Format::json}};

}  // namespace

int main(int argc, char** argv) {
  using namespace tdsp::cli;
  CLI::App app{"Exact end-to-end arrival functions on low-treewidth FIFO networks"};
  app.require_subcommand(1);

  std::string graph_file;
  std::optional<std::string> td_file;

  auto* validate = app.add_subcommand("validate", "check a graph (and decomposition)");
  validate->add_option("graph", graph_file, "graph file")->required();
  validate->add_option("--td", td_file, "tree decomposition (PACE .td)");

  ReduceFlags reduce_flags;
  auto* reduce = app.add_subcommand("reduce", "compute A_sd and A_ds by reduction");
  reduce->add_option("graph", graph_file, "graph file")->required();
  reduce->add_option("--td", reduce_flags.td_file, "tree decomposition; min-fill if absent");
  reduce->add_flag("--emit-trace", reduce_flags.emit_trace, "print every transformation");
  reduce->add_flag("--check-steps", reduce_flags.check_steps,
                   "verify every step against the Dijkstra oracle");
  reduce->add_option("--seed", reduce_flags.seed, "seed for the random probe times");
  reduce->add_option("--format", reduce_flags.format, "text or json")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  OracleFlags oracle_flags;
  auto* oracle = app.add_subcommand("oracle", "reference arrivals by Dijkstra or enumeration");
  oracle->add_option("graph", graph_file, "graph file")->required();
  oracle->add_option("--time", oracle_flags.times, "departure time (repeatable, p or p/q)");
  oracle->add_flag("--full", oracle_flags.full, "enumerate simple paths for the full function");
  oracle->add_option("--format", oracle_flags.format, "text or json")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  ExperimentFlags exp_flags;
  bool no_timing = false;
  auto* experiment = app.add_subcommand("experiment", "breakpoint growth on generated families");
  experiment->add_option("--generator", exp_flags.generator,
                         "layered, series_parallel or random_partial_ktree");
  experiment->add_option("--n", exp_flags.n, "vertex counts")->delimiter(',');
  experiment->add_option("--w", exp_flags.w, "width parameters")->delimiter(',');
  experiment->add_option("--seed", exp_flags.seed, "first seed");
  experiment->add_option("--seeds", exp_flags.seeds, "instances per (n, w)");
  experiment->add_option("--pieces", exp_flags.pieces_per_edge, "pieces per edge function");
  experiment->add_option("--format", exp_flags.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  experiment->add_flag("--no-timing", no_timing, "write wall_time as 0");
  experiment->add_flag("--serial", exp_flags.serial, "run instances on one thread");

  Claim1Flags claim_flags;
  auto* claim1 = app.add_subcommand("claim1", "compare G with its separator graph");
  claim1->add_option("graph", graph_file, "graph file")->required();
  claim1->add_option("--td", claim_flags.td_file, "tree decomposition; min-fill if absent");
  claim1->add_flag("--inject-fault", claim_flags.inject_fault,
                   "perturb one edge of the separator graph");
  claim1->add_option("--format", claim_flags.format, "text or json")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*validate) return cmd_validate(graph_file, td_file, std::cout, std::cerr);
  if (*reduce) return cmd_reduce(graph_file, reduce_flags, std::cout, std::cerr);
  if (*oracle) return cmd_oracle(graph_file, oracle_flags, std::cout, std::cerr);
  if (*experiment) {
    exp_flags.timing = !no_timing;
    return cmd_experiment(exp_flags, std::cout, std::cerr);
  }
  return cmd_claim1(graph_file, claim_flags, std::cout, std::cerr);
}
