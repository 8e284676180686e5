#include "tdsp/oracle.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "tdsp/errors.hpp"

namespace tdsp {

std::map<VertexId, ArrivalTime> td_dijkstra(const Graph& g, VertexId source, const Rational& t0) {
  if (!g.has_vertex(source)) throw PreconditionError("td_dijkstra: unknown source vertex");
  if (t0.sign() < 0) throw DomainError("td_dijkstra: negative departure time");

  std::map<VertexId, ArrivalTime> best;
  for (VertexId v : g.vertices()) best.emplace(v, ArrivalTime::infinity());
  best.at(source) = t0;

  using Label = std::pair<ArrivalTime, VertexId>;
  std::priority_queue<Label, std::vector<Label>, std::greater<>> queue;
  queue.emplace(t0, source);
  std::set<VertexId> settled;
  std::set<std::pair<EdgeKey, bool>> fifo_checked;

  while (!queue.empty()) {
    const auto [at, v] = queue.top();
    queue.pop();
    if (!settled.insert(v).second) continue;
    for (EdgeKey key : g.incident(v)) {
      const EdgeRecord& e = g.edge(key);
      if (e.is_self_loop()) continue;
      const VertexId w = e.other(v);
      if (settled.contains(w)) continue;
      const PwlFunction& f = e.departing(v);
      if (fifo_checked.insert({key, v == e.u}).second && !is_fifo(f)) {
        throw StructuralError("td_dijkstra: edge e" + std::to_string(key.value) + " (" +
                              std::to_string(v.value) + "->" + std::to_string(w.value) +
                              ") is not FIFO");
      }
      ArrivalTime arrive = eval(f, at.value());
      if (arrive < best.at(w)) {
        best.at(w) = arrive;
        queue.emplace(std::move(arrive), w);
      }
    }
  }
  return best;
}

namespace {

struct PathSearch {
  const Graph& g;
  VertexId target;
  std::set<VertexId> on_path;
  PwlFunction best = PwlFunction::infinity();

  void extend(VertexId at, const PwlFunction& so_far) {
    if (at == target) {
      best = minimum(best, so_far);
      return;
    }
    for (EdgeKey key : g.incident(at)) {
      const EdgeRecord& e = g.edge(key);
      if (e.is_self_loop()) continue;
      const VertexId next = e.other(at);
      if (on_path.contains(next)) continue;
      PwlFunction longer = compose(e.departing(at), so_far);
      if (longer.is_infinite()) continue;
      on_path.insert(next);
      extend(next, longer);
      on_path.erase(next);
    }
  }
};

}  // namespace

PwlFunction enumerate_paths_arrival(const Graph& g, VertexId from, VertexId to,
                                    std::size_t max_vertices) {
  if (g.vertex_count() > max_vertices) {
    throw SizeLimitError("path enumeration is limited to " + std::to_string(max_vertices) +
                         " vertices, graph has " + std::to_string(g.vertex_count()));
  }
  if (!g.has_vertex(from) || !g.has_vertex(to)) {
    throw PreconditionError("enumerate_paths_arrival: unknown vertex");
  }
  if (from == to) return PwlFunction::identity();
  PathSearch search{g, to, {from}};
  search.extend(from, PwlFunction::identity());
  return search.best;
}

std::vector<Rational> breakpoint_grid(const PwlFunction& f) {
  std::vector<Rational> grid{Rational(0)};
  if (f.is_infinite()) {
    grid.emplace_back(1);
    return grid;
  }
  const auto pieces = f.pieces();
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    grid.push_back((pieces[i - 1].start + pieces[i].start) / Rational(2));
    grid.push_back(pieces[i].start);
  }
  grid.push_back(pieces.back().start + Rational(1));
  return grid;
}

CrosscheckReport crosscheck(const PwlFunction& f, const Graph& g, VertexId source,
                            VertexId target, std::span<const Rational> extra_times,
                            Execution exec) {
  CrosscheckReport report;
  report.times = breakpoint_grid(f);
  report.times.insert(report.times.end(), extra_times.begin(), extra_times.end());
  std::sort(report.times.begin(), report.times.end());
  report.times.erase(std::unique(report.times.begin(), report.times.end()), report.times.end());

  const std::vector<ArrivalTime> expected =
      kernels::arrival_grid(g, source, target, report.times, exec);
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    ArrivalTime actual = eval(f, report.times[i]);
    if (actual != expected[i]) report.mismatches.push_back({report.times[i], expected[i], actual});
  }
  return report;
}

}  // namespace tdsp
