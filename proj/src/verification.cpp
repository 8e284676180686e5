#include "tdsp/verification.hpp"

#include <map>
#include <random>
#include <sstream>

#include "tdsp/errors.hpp"
#include "tdsp/oracle.hpp"

namespace tdsp {

PwlFunction running_estimate(const Graph& g) {
  PwlFunction best = PwlFunction::infinity();
  const auto s = g.source();
  const auto d = g.target();
  if (!s || !d) return best;
  for (EdgeKey key : g.incident(*s)) {
    const EdgeRecord& e = g.edge(key);
    if (e.is_self_loop() || e.other(*s) != *d) continue;
    best = minimum(best, e.departing(*s));
  }
  return best;
}

StepCheckReport reduce_with_step_checks(const Graph& g, const NiceTreeDecomposition& t,
                                        std::uint64_t seed, std::size_t random_times,
                                        Execution exec) {
  const auto s = g.source();
  const auto d = g.target();
  if (!s || !d) throw PreconditionError("step checks need both terminals");

  std::mt19937_64 rng(seed);
  std::vector<Rational> fixed;
  for (std::size_t i = 0; i < random_times; ++i) {
    fixed.emplace_back(std::uniform_int_distribution<long>(0, 60)(rng),
                       std::uniform_int_distribution<long>(1, 4)(rng));
  }

  // Reference arrivals on the original graph, memoised per departure time.
  std::map<Rational, ArrivalTime> reference;
  auto expected_at = [&](const Rational& time) {
    auto it = reference.find(time);
    if (it == reference.end()) it = reference.emplace(time, td_dijkstra(g, *s, time).at(*d)).first;
    return it->second;
  };

  StepCheckReport report;
  std::size_t index = 0;
  ReduceOptions options;
  options.exec = exec;
  options.on_step = [&](const Graph& current, const ReductionStep& step) {
    ++index;
    if (report.failure) return;
    ++report.steps_checked;
    if (const auto bad = validate(current); !bad.empty()) {
      report.failure = StepFailure{index, to_string(step), bad.front().describe()};
      return;
    }
    std::vector<Rational> times = breakpoint_grid(running_estimate(current));
    times.insert(times.end(), fixed.begin(), fixed.end());
    for (const Rational& time : times) {
      ++report.probes;
      const ArrivalTime want = expected_at(time);
      const ArrivalTime got = td_dijkstra(current, *s, time).at(*d);
      if (want != got) {
        std::ostringstream os;
        os << "arrival at t=" << time << " changed from " << want << " to " << got;
        report.failure = StepFailure{index, to_string(step), os.str()};
        return;
      }
    }
  };
  report.result = reduce_to_terminals(g, t, options);
  return report;
}

}  // namespace tdsp
