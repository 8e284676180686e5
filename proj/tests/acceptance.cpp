// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tdsp/experiment.hpp"
#include "tdsp/generators.hpp"
#include "tdsp/oracle.hpp"
#include "tdsp/reduction.hpp"
#include "tdsp/tree_decomposition.hpp"
#include "tdsp/verification.hpp"

namespace {

using namespace tdsp;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::size_t cases = 0;
  std::string note;  // first failure or extra detail

  void fail(const std::string& why) {
    if (pass) note = why;
    pass = false;
  }
};

// Every reduction the suite performs goes through here so the budget
// criterion sees all of them.
struct BudgetLedger {
  std::size_t reductions = 0;
  std::vector<std::string> violations;

  void check(const ReductionResult& r, const Graph& g, const std::string& label) {
    ++reductions;
    if (!is_connected(g, *g.source(), *g.target())) return;
    for (const std::string& v : budget_violations(r)) violations.push_back(label + ": " + v);
  }
} budgets;

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Outcome oracle_equivalence(double& seconds) {
  const auto start = Clock::now();
  Outcome out;
  Rng rng(1001);
  for (int i = 0; i < 240; ++i) {
    const std::size_t n = pick(rng, 2, 10);
    const std::size_t k = pick(rng, 1, 4);
    const std::size_t pieces = pick(rng, 1, 3);
    const Instance inst = random_partial_ktree(rng, n, k, pieces);
    const Graph& g = inst.graph;
    // Alternate between the generator's decomposition and min-fill.
    const TreeDecomposition t = i % 2 ? heuristic_decomposition(g) : inst.decomposition;
    if (width(t) > 4) continue;
    const ReductionResult r = reduce_to_terminals(g, make_nice(t));
    budgets.check(r, g, "oracle instance " + std::to_string(i));
    ++out.cases;
    if (r.forward != enumerate_paths_arrival(g, *g.source(), *g.target()) ||
        r.backward != enumerate_paths_arrival(g, *g.target(), *g.source())) {
      out.fail("instance " + std::to_string(i) + " differs from enumeration");
    }
  }
  seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (out.cases < 200) out.fail("only " + std::to_string(out.cases) + " instances");
  if (seconds >= 120) out.fail("took " + std::to_string(seconds) + " s");
  return out;
}

Outcome step_preservation() {
  Outcome out;
  Rng rng(2002);
  std::size_t steps = 0;
  for (int i = 0; i < 60; ++i) {
    const Instance inst = random_partial_ktree(rng, pick(rng, 3, 8), pick(rng, 1, 3), pick(rng, 1, 3));
    const StepCheckReport report =
        reduce_with_step_checks(inst.graph, make_nice(inst.decomposition), 5000 + i);
    budgets.check(report.result, inst.graph, "step instance " + std::to_string(i));
    ++out.cases;
    steps += report.steps_checked;
    if (!report.ok()) out.fail("instance " + std::to_string(i) + ": " + report.failure->describe());
  }
  if (out.pass) out.note = std::to_string(steps) + " transformations checked";
  return out;
}

Outcome claim1() {
  Outcome out;
  Rng rng(3003);
  for (int i = 0; i < 40 && out.cases < 30; ++i) {
    Instance inst = i % 4 == 0 ? ladder(rng, pick(rng, 4, 6), pick(rng, 1, 3))
                               : random_partial_ktree(rng, pick(rng, 8, 12), pick(rng, 1, 3),
                                                      pick(rng, 1, 3));
    const Graph& g = inst.graph;
    const std::size_t w = width(inst.decomposition);
    if (g.vertex_count() <= 2 * w + 2) continue;
    const Separator sep = balanced_separator(g, inst.decomposition);
    const Graph contracted = contract_to_separator_graph(g, sep);
    const ReductionResult on_g = reduce_to_terminals(g, make_nice(inst.decomposition));
    const ReductionResult on_c = reduce_with_heuristic(contracted);
    budgets.check(on_g, g, "claim1 instance " + std::to_string(i));
    budgets.check(on_c, contracted, "claim1 separator graph " + std::to_string(i));
    ++out.cases;
    const PwlFunction oracle = enumerate_paths_arrival(g, *g.source(), *g.target());
    if (on_c.forward != on_g.forward || on_g.forward != oracle) {
      out.fail("instance " + std::to_string(i) + ": functions differ");
    } else if (on_c.forward.breakpoint_count() != oracle.breakpoint_count()) {
      out.fail("instance " + std::to_string(i) + ": breakpoint counts differ");
    }
  }
  if (out.cases < 20) out.fail("only " + std::to_string(out.cases) + " instances");
  return out;
}

std::vector<Rational> grid(std::initializer_list<const PwlFunction*> fs) {
  std::vector<Rational> ts{Rational(0)};
  for (const PwlFunction* f : fs) {
    if (f->is_infinite()) continue;
    const auto pieces = f->pieces();
    for (std::size_t i = 1; i < pieces.size(); ++i) {
      ts.push_back(pieces[i].start);
      ts.push_back((pieces[i - 1].start + pieces[i].start) / Rational(2));
    }
    ts.push_back(pieces.back().start + Rational(1));
  }
  return ts;
}

Outcome pwl_properties() {
  Outcome out;
  Rng rng(4004);
  for (int i = 0; i < 1200; ++i) {
    const PwlFunction f = random_fifo_function(rng, pick(rng, 1, 6));
    const PwlFunction g = random_fifo_function(rng, pick(rng, 1, 6));
    const PwlFunction h = random_fifo_function(rng, pick(rng, 1, 4));
    ++out.cases;
    const std::string tag = "pair " + std::to_string(i);

    const PwlFunction m = minimum(f, g);
    const PwlFunction c = compose(g, f);
    for (const Rational& t : grid({&m, &f, &g})) {
      if (eval(m, t) != std::min(eval(f, t), eval(g, t))) out.fail(tag + ": minimum pointwise");
    }
    for (const Rational& t : grid({&c, &f})) {
      if (eval(c, t) != eval(g, eval(f, t).value())) out.fail(tag + ": compose pointwise");
    }
    if (!is_fifo(m) || !is_fifo(c)) out.fail(tag + ": FIFO closure");
    if (compose(h, m) != minimum(compose(h, f), compose(h, g))) out.fail(tag + ": distributivity");
    if (compose(h, c) != compose(compose(h, g), f)) out.fail(tag + ": associativity");
    if (c.breakpoint_count() > f.breakpoint_count() + g.breakpoint_count()) {
      out.fail(tag + ": compose budget");
    }
    if (m.breakpoint_count() > 2 * (f.breakpoint_count() + g.breakpoint_count()) + 1) {
      out.fail(tag + ": minimum budget");
    }
  }
  return out;
}

Outcome series_parallel() {
  Outcome out;
  Rng rng(5005);
  std::size_t worst = 0;
  for (int i = 0; i < 60; ++i) {
    const Instance inst = random_series_parallel(rng, pick(rng, 3, 30), pick(rng, 1, 3));
    const ReductionResult r = reduce_to_terminals(inst.graph, make_nice(inst.decomposition));
    budgets.check(r, inst.graph, "series-parallel instance " + std::to_string(i));
    ++out.cases;
    worst = std::max(worst, r.trace.max_star_degree());
    if (r.trace.max_star_degree() > 3) out.fail("instance " + std::to_string(i) + " used degree " +
                                                std::to_string(r.trace.max_star_degree()));
    if (inst.graph.vertex_count() <= 10 &&
        r.forward != enumerate_paths_arrival(inst.graph, *inst.graph.source(), *inst.graph.target())) {
      out.fail("instance " + std::to_string(i) + " differs from enumeration");
    }
  }
  if (out.pass) out.note = "max degree " + std::to_string(worst);
  return out;
}

Outcome growth() {
  Outcome out;
  std::vector<ExperimentConfig> configs;
  for (std::size_t w : {2u, 3u}) {
    for (std::size_t n = 10; n <= 60; n += 10) {
      for (std::uint64_t seed = 0; seed < 2; ++seed) {
        configs.push_back({GeneratorKind::layered, n, w, seed, 2});
      }
    }
  }
  std::vector<ExperimentConfig> chain;
  for (std::size_t n = 2; n <= 60; n += 6) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) chain.push_back({GeneratorKind::layered, n, 1, seed, 3});
  }

  const auto rows = run_experiments(configs);
  std::ostringstream csv;
  write_csv(csv, rows, false);

  // Rows come back in nondecreasing (n, w) order.
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::tie(rows[i - 1].n, rows[i - 1].w) > std::tie(rows[i].n, rows[i].w)) {
      out.fail("rows out of order");
    }
  }
  std::size_t largest = 0;
  for (const ExperimentRow& r : rows) {
    ++out.cases;
    largest = std::max(largest, r.breakpoints);
    if (r.star_mesh_count != r.n - 2) out.fail("star-mesh count off at n=" + std::to_string(r.n));
    for (const std::string& v : r.budget_violations) out.fail(v);
  }
  for (const ExperimentConfig& c : configs) {
    if (c.n > 10) continue;
    const Instance inst = make_instance(c);
    const ReductionResult r = reduce_to_terminals(inst.graph, make_nice(inst.decomposition));
    const PwlFunction oracle =
        enumerate_paths_arrival(inst.graph, *inst.graph.source(), *inst.graph.target());
    if (r.forward != oracle || r.forward.breakpoint_count() > oracle.breakpoint_count()) {
      out.fail("n=10 cross-check failed");
    }
  }
  for (const ExperimentRow& r : run_experiments(chain)) {
    ++out.cases;
    if (r.breakpoints > r.total_pieces) {
      out.fail("chain n=" + std::to_string(r.n) + ": " + std::to_string(r.breakpoints) + " > K=" +
               std::to_string(r.total_pieces));
    }
    for (const std::string& v : r.budget_violations) out.fail(v);
  }
  if (out.pass) out.note = "largest A_sd has " + std::to_string(largest) + " breakpoints";
  return out;
}

void report(const std::string& name, const Outcome& o, bool& all) {
  all = all && o.pass;
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << "  (" << o.cases << " cases";
  if (!o.note.empty()) std::cout << "; " << o.note;
  std::cout << ")" << std::endl;
}

}  // namespace

int main() {
  bool all = true;
  double seconds = 0;
  Outcome eq = oracle_equivalence(seconds);
  {
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << seconds << " s";
    eq.note = eq.pass ? os.str() : eq.note + ", " + os.str();
  }
  report("oracle equivalence: reduction equals path enumeration", eq, all);
  report("step preservation: every transformation keeps s->d arrivals", step_preservation(), all);
  report("separator graph preserves A_sd and its breakpoint count", claim1(), all);
  report("pwl algebra properties over random FIFO pairs", pwl_properties(), all);
  report("series-parallel instances need star-mesh degree <= 3", series_parallel(), all);
  report("layered growth experiment and chain bound", growth(), all);

  Outcome budget;
  budget.cases = budgets.reductions;
  for (const std::string& v : budgets.violations) budget.fail(v);
  report("reduction budgets: n-2 star-meshes, degree <= w+1, parallel bound", budget, all);

  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << std::endl;
  return all ? 0 : 1;
}
