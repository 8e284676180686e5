#include "tdsp/reduction.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tdsp/errors.hpp"

namespace tdsp {

namespace {

std::size_t breakpoints_of(const EdgeRecord& e) {
  return e.forward.breakpoint_count() + e.backward.breakpoint_count();
}

std::size_t max_breakpoints_of(const EdgeRecord& e) {
  return std::max(e.forward.breakpoint_count(), e.backward.breakpoint_count());
}

std::string join_keys(const std::vector<EdgeKey>& keys) {
  std::string out;
  for (EdgeKey k : keys) {
    if (!out.empty()) out += ',';
    out += 'e' + std::to_string(k.value);
  }
  return out.empty() ? "-" : out;
}

void record(ReductionTrace* trace, ReductionStep step) {
  if (trace) trace->record(std::move(step));
}

}  // namespace

std::string to_string(ReductionStep::Kind kind) {
  switch (kind) {
    case ReductionStep::Kind::self_loop: return "self_loop";
    case ReductionStep::Kind::pendant: return "pendant";
    case ReductionStep::Kind::series: return "series";
    case ReductionStep::Kind::parallel: return "parallel";
    case ReductionStep::Kind::star_mesh: return "star_mesh";
    case ReductionStep::Kind::separator_contraction: return "separator_contraction";
  }
  return "?";
}

std::string to_string(const ReductionStep& step) {
  std::ostringstream os;
  os << to_string(step.kind);
  os << " vertex=";
  if (step.removed_vertex) {
    os << *step.removed_vertex;
  } else {
    os << '-';
  }
  os << " removed=" << join_keys(step.removed_edges) << " created=" << join_keys(step.created_edges)
     << " degree=" << step.degree << " bp_before=" << step.breakpoints_before
     << " bp_after=" << step.breakpoints_after;
  return os.str();
}

void ReductionTrace::record(ReductionStep step) {
  if (step.kind == ReductionStep::Kind::parallel && !step.removed_edges.empty()) {
    parallel_reductions_ += step.removed_edges.size() - 1;
  }
  if (step.kind == ReductionStep::Kind::star_mesh) {
    max_star_degree_ = std::max(max_star_degree_, step.degree);
  }
  steps_.push_back(std::move(step));
}

std::size_t ReductionTrace::count(ReductionStep::Kind kind) const {
  if (kind == ReductionStep::Kind::parallel) return parallel_reductions_;
  return static_cast<std::size_t>(
      std::count_if(steps_.begin(), steps_.end(), [&](const auto& s) { return s.kind == kind; }));
}

void ReductionTrace::observe_breakpoints(std::size_t breakpoints) {
  max_breakpoints_ = std::max(max_breakpoints_, breakpoints);
}

void write_trace(std::ostream& out, const ReductionTrace& trace) {
  for (std::size_t i = 0; i < trace.steps().size(); ++i) {
    out << "step " << i << ' ' << to_string(trace.steps()[i]) << '\n';
  }
}

void write_trace_summary(std::ostream& out, const ReductionTrace& trace) {
  using Kind = ReductionStep::Kind;
  for (Kind k : {Kind::self_loop, Kind::pendant, Kind::series, Kind::parallel, Kind::star_mesh,
                 Kind::separator_contraction}) {
    out << to_string(k) << '=' << trace.count(k) << '\n';
  }
  out << "max_star_degree=" << trace.max_star_degree() << '\n';
  out << "max_breakpoints=" << trace.max_breakpoints() << '\n';
}

void delete_self_loop(Graph& g, EdgeKey key, ReductionTrace* trace) {
  const EdgeRecord& e = g.edge(key);
  if (!e.is_self_loop()) throw PreconditionError("edge " + std::to_string(key.value) + " is not a self-loop");
  ReductionStep step;
  step.kind = ReductionStep::Kind::self_loop;
  step.removed_edges = {key};
  step.breakpoints_before = breakpoints_of(e);
  g.remove_edge(key);
  record(trace, std::move(step));
}

void pendant_reduce(Graph& g, VertexId v, ReductionTrace* trace) {
  if (g.is_terminal(v)) throw PreconditionError("pendant_reduce: vertex is a terminal");
  if (degree_distinct(g, v) != 1) throw PreconditionError("pendant_reduce: degree is not one");
  ReductionStep step;
  step.kind = ReductionStep::Kind::pendant;
  step.removed_vertex = v;
  step.degree = 1;
  for (EdgeKey key : g.incident(v)) {
    step.removed_edges.push_back(key);
    step.breakpoints_before += breakpoints_of(g.edge(key));
  }
  g.remove_vertex(v);
  record(trace, std::move(step));
}

EdgeKey parallel_reduce(Graph& g, std::span<const EdgeKey> group, ReductionTrace* trace,
                        Execution exec) {
  if (group.size() < 2) throw PreconditionError("parallel_reduce needs at least two edges");
  const EdgeRecord& first = g.edge(group.front());
  const auto ends = std::minmax(first.u, first.v);
  if (first.is_self_loop()) throw PreconditionError("parallel_reduce: self-loop in group");

  ReductionStep step;
  step.kind = ReductionStep::Kind::parallel;
  std::vector<std::vector<PwlFunction>> folds(2);
  for (EdgeKey key : group) {
    const EdgeRecord& e = g.edge(key);
    if (std::minmax(e.u, e.v) != ends) throw PreconditionError("parallel_reduce: edges are not parallel");
    folds[0].push_back(e.departing(ends.first));
    folds[1].push_back(e.departing(ends.second));
    step.removed_edges.push_back(key);
    step.breakpoints_before += breakpoints_of(e);
  }
  std::vector<PwlFunction> merged = kernels::minimum_fold(folds, exec);
  for (EdgeKey key : group) g.remove_edge(key);
  const EdgeKey key = g.add_edge(ends.first, ends.second, std::move(merged[0]), std::move(merged[1]));
  const EdgeRecord& created = g.edge(key);
  step.created_edges = {key};
  step.breakpoints_after = breakpoints_of(created);
  if (trace) trace->observe_breakpoints(max_breakpoints_of(created));
  record(trace, std::move(step));
  return key;
}

std::vector<EdgeKey> star_mesh(Graph& g, VertexId c, ReductionTrace* trace, Execution exec) {
  if (!g.has_vertex(c)) throw PreconditionError("star_mesh: unknown vertex");
  if (g.is_terminal(c)) throw PreconditionError("star_mesh: cannot remove a terminal");

  std::map<VertexId, EdgeKey> spoke;
  for (EdgeKey key : g.incident(c)) {
    const EdgeRecord& e = g.edge(key);
    if (e.is_self_loop()) throw StructuralError("star_mesh: self-loop at the centre");
    if (!spoke.emplace(e.other(c), key).second) {
      throw StructuralError("star_mesh: parallel edges at the centre");
    }
  }

  std::vector<VertexId> around;
  for (const auto& [v, _] : spoke) around.push_back(v);
  const std::size_t k = around.size();

  std::vector<kernels::CompositionJob> jobs;
  jobs.reserve(k * (k - 1));
  for (std::size_t i = 0; i < k; ++i) {
    const EdgeRecord& ei = g.edge(spoke.at(around[i]));
    for (std::size_t j = i + 1; j < k; ++j) {
      const EdgeRecord& ej = g.edge(spoke.at(around[j]));
      jobs.push_back({&ej.departing(c), &ei.arriving(c)});  // v_i -> c -> v_j
      jobs.push_back({&ei.departing(c), &ej.arriving(c)});  // v_j -> c -> v_i
    }
  }
  std::vector<PwlFunction> composed = kernels::compose_batch(jobs, exec);

  ReductionStep step;
  step.kind = ReductionStep::Kind::star_mesh;
  step.removed_vertex = c;
  step.degree = k;
  for (const auto& [_, key] : spoke) {
    step.removed_edges.push_back(key);
    step.breakpoints_before += breakpoints_of(g.edge(key));
  }
  g.remove_vertex(c);

  std::size_t next = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const EdgeKey key = g.add_edge(around[i], around[j], std::move(composed[next]),
                                     std::move(composed[next + 1]));
      next += 2;
      const EdgeRecord& e = g.edge(key);
      step.created_edges.push_back(key);
      step.breakpoints_after += breakpoints_of(e);
      if (trace) trace->observe_breakpoints(max_breakpoints_of(e));
    }
  }
  std::vector<EdgeKey> created = step.created_edges;
  record(trace, std::move(step));
  return created;
}

namespace {

class Reducer {
 public:
  Reducer(Graph& g, const ReduceOptions& options, ReductionTrace& trace)
      : g_(g), options_(options), trace_(trace) {}

  void notify() {
    if (options_.on_step) options_.on_step(g_, trace_.steps().back());
  }

  void clean_up() {
    std::vector<EdgeKey> loops;
    for (const auto& [key, e] : g_.edges()) {
      if (e.is_self_loop()) loops.push_back(key);
    }
    for (EdgeKey key : loops) {
      delete_self_loop(g_, key, &trace_);
      notify();
    }
    for (const auto& group : parallel_groups(g_)) {
      parallel_reduce(g_, group, &trace_, options_.exec);
      notify();
    }
  }

  void eliminate(VertexId v, std::size_t degree_bound) {
    const std::size_t degree = degree_distinct(g_, v);
    if (degree > degree_bound) {
      throw StructuralError("vertex " + std::to_string(v.value) + " has degree " +
                            std::to_string(degree) + ", above the bound " +
                            std::to_string(degree_bound));
    }
    star_mesh(g_, v, &trace_, options_.exec);
    notify();
  }

  bool only_terminals() const {
    return std::all_of(g_.vertices().begin(), g_.vertices().end(),
                       [&](VertexId v) { return g_.is_terminal(v); });
  }

 private:
  Graph& g_;
  const ReduceOptions& options_;
  ReductionTrace& trace_;
};

}  // namespace

ReductionResult reduce_to_terminals(Graph g, const NiceTreeDecomposition& t,
                                    const ReduceOptions& options) {
  if (!g.source() || !g.target() || *g.source() == *g.target()) {
    throw PreconditionError("reduce_to_terminals needs two distinct terminals");
  }
  const auto violations = validate_decomposition(g, t.tree());
  if (!violations.empty()) {
    throw StructuralError("decomposition does not fit the graph: " + violations.front().describe());
  }

  ReductionResult result;
  result.width = width(t.tree());
  result.initial_vertices = g.vertex_count();
  const VertexId s = *g.source();
  const VertexId d = *g.target();

  Reducer reducer(g, options, result.trace);
  NiceTreeDecomposition current = prune_subset_leaves(t);
  while (true) {
    reducer.clean_up();
    current = prune_subset_leaves(current);
    if (reducer.only_terminals()) break;

    if (current.bag_count() == 1) {
      // One bag left: eliminate its non-terminals, smallest degree first.
      std::optional<VertexId> pick;
      for (VertexId v : g.vertices()) {
        if (g.is_terminal(v)) continue;
        if (!pick || degree_distinct(g, v) < degree_distinct(g, *pick)) pick = v;
      }
      const auto& [id, bag] = *current.tree().bags().begin();
      reducer.eliminate(*pick, bag.size() - 1);
      TreeDecomposition next = current.tree();
      Bag smaller = bag;
      smaller.erase(*pick);
      next.set_bag(id, std::move(smaller));
      current = NiceTreeDecomposition::certify(std::move(next));
      continue;
    }

    const std::optional<RemovalPlan> plan = find_removal_plan(current, g);
    if (!plan) break;
    reducer.eliminate(plan->vertex, plan->expected_degree_bound);
    current = update_after_removal(current, *plan);
  }

  for (const auto& [_, e] : g.edges()) {
    if (e.is_self_loop()) continue;
    result.forward = e.departing(s);
    result.backward = e.departing(d);
  }
  return result;
}

ReductionResult reduce_with_heuristic(const Graph& g, const ReduceOptions& options) {
  return reduce_to_terminals(g, make_nice(heuristic_decomposition(g)), options);
}

std::vector<std::string> budget_violations(const ReductionResult& result) {
  std::vector<std::string> out;
  const std::size_t n = result.initial_vertices;
  const std::size_t w = result.width;
  const ReductionTrace& trace = result.trace;
  const std::size_t eliminations = n >= 2 ? n - 2 : 0;
  const std::size_t stars = trace.count(ReductionStep::Kind::star_mesh);
  if (stars != eliminations) {
    out.push_back("star_mesh count " + std::to_string(stars) + " != n - 2 = " +
                  std::to_string(eliminations));
  }
  if (trace.max_star_degree() > w + 1) {
    out.push_back("star degree " + std::to_string(trace.max_star_degree()) + " > w + 1 = " +
                  std::to_string(w + 1));
  }
  const std::size_t parallel_budget = eliminations * ((w + 1) * w / 2);
  const std::size_t parallels = trace.count(ReductionStep::Kind::parallel);
  if (parallels > parallel_budget) {
    out.push_back("parallel count " + std::to_string(parallels) + " > (n - 2) * C(w + 1, 2) = " +
                  std::to_string(parallel_budget));
  }
  return out;
}

Graph contract_to_separator_graph(const Graph& g, const Separator& sep, Execution exec) {
  if (!g.source() || !g.target()) throw PreconditionError("separator graph needs terminals");
  const VertexId s = *g.source();
  const VertexId d = *g.target();

  std::set<VertexId> all;
  for (const auto* part : {&sep.separator, &sep.side1, &sep.side2}) {
    for (VertexId v : *part) {
      if (!all.insert(v).second) throw PreconditionError("separator parts overlap");
    }
  }
  if (all != g.vertices()) throw PreconditionError("separator parts do not cover the graph");
  for (const auto& [_, e] : g.edges()) {
    if ((sep.side1.contains(e.u) && sep.side2.contains(e.v)) ||
        (sep.side2.contains(e.u) && sep.side1.contains(e.v))) {
      throw PreconditionError("not a separator: an edge joins the two sides");
    }
  }

  struct Job {
    const Graph* side;
    VertexId u;
    VertexId v;
    PwlFunction forward = PwlFunction::infinity();
    PwlFunction backward = PwlFunction::infinity();
  };
  std::vector<Graph> sides;
  std::vector<std::set<VertexId>> portals;
  for (const auto* part : {&sep.side1, &sep.side2}) {
    std::set<VertexId> keep = *part;
    keep.insert(sep.separator.begin(), sep.separator.end());
    sides.push_back(induced_subgraph(g, keep));
    std::set<VertexId> ends = sep.separator;
    for (VertexId t : {s, d}) {
      if (part->contains(t)) ends.insert(t);
    }
    portals.push_back(std::move(ends));
  }
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    for (auto a = portals[i].begin(); a != portals[i].end(); ++a) {
      for (auto b = std::next(a); b != portals[i].end(); ++b) jobs.push_back({&sides[i], *a, *b});
    }
  }

  kernels::for_each_index(jobs.size(), exec, [&](std::size_t i) {
    Job& job = jobs[i];
    Graph h = *job.side;
    h.set_terminals(job.u, job.v);
    ReduceOptions inner;
    inner.exec = Execution::serial;
    ReductionResult r = reduce_with_heuristic(h, inner);
    job.forward = std::move(r.forward);
    job.backward = std::move(r.backward);
  });

  Graph out;
  std::set<VertexId> kept = sep.separator;
  kept.insert(s);
  kept.insert(d);
  for (VertexId v : kept) out.add_vertex(v);
  out.set_terminals(s, d);
  for (Job& job : jobs) out.add_edge(job.u, job.v, std::move(job.forward), std::move(job.backward));
  return out;
}

}  // namespace tdsp
