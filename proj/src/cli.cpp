#include "tdsp/cli.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "tdsp/errors.hpp"
#include "tdsp/experiment.hpp"
#include "tdsp/graph.hpp"
#include "tdsp/oracle.hpp"
#include "tdsp/reduction.hpp"
#include "tdsp/tree_decomposition.hpp"
#include "tdsp/verification.hpp"

namespace tdsp::cli {

namespace {

using nlohmann::json;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return in;
}

Graph load_graph(const std::string& path) {
  auto in = open_input(path);
  return read_graph(in);
}

TreeDecomposition load_decomposition(const std::string& path) {
  auto in = open_input(path);
  return read_decomposition(in);
}

// Integers that fit in a long become JSON numbers, everything else "p/q".
json to_json(const Rational& r) {
  if (r.is_integer() && r.raw().get_num().fits_slong_p()) return r.raw().get_num().get_si();
  return r.to_string();
}

json to_json(const ArrivalTime& a) {
  if (a.is_infinite()) return "inf";
  return to_json(a.value());
}

json to_json(const PwlFunction& f) {
  if (f.is_infinite()) return "inf";
  json points = json::array();
  for (const Piece& p : f.pieces()) points.push_back({to_json(p.start), to_json(p.value_at(p.start))});
  return {{"points", points},
          {"final_slope", to_json(f.pieces().back().slope)},
          {"text", to_string(f)}};
}

// Maps library exceptions onto exit codes.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

// Prints graph and decomposition problems; true when there are none.
bool report_violations(const Graph& g, const TreeDecomposition* t, std::ostream& out) {
  bool clean = true;
  for (const GraphViolation& v : validate(g)) {
    out << "graph: " << v.describe() << '\n';
    clean = false;
  }
  if (t) {
    for (const DecompositionViolation& v : validate_decomposition(g, *t)) {
      out << "decomposition: " << v.describe() << '\n';
      clean = false;
    }
  }
  return clean;
}

void summary_json(json& doc, const ReductionTrace& trace) {
  std::ostringstream os;
  write_trace_summary(os, trace);
  std::istringstream lines(os.str());
  std::string line;
  json summary = json::object();
  while (std::getline(lines, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string value = line.substr(eq + 1);
    try {
      summary[line.substr(0, eq)] = std::stoull(value);
    } catch (const std::exception&) {
      summary[line.substr(0, eq)] = value;
    }
  }
  doc["summary"] = summary;
}

}  // namespace

int cmd_validate(const std::string& graph_file, const std::optional<std::string>& td_file,
                 std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Graph g = load_graph(graph_file);
    std::optional<TreeDecomposition> t;
    if (td_file) t = load_decomposition(*td_file);
    if (!report_violations(g, t ? &*t : nullptr, out)) return kExitFailure;
    out << "ok: " << g.vertex_count() << " vertices, " << g.edge_count() << " edges";
    if (t) out << ", decomposition width " << width(*t);
    out << '\n';
    return kExitOk;
  });
}

int cmd_reduce(const std::string& graph_file, const ReduceFlags& flags, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const Graph g = load_graph(graph_file);
    TreeDecomposition t;
    if (flags.td_file) {
      t = load_decomposition(*flags.td_file);
    } else {
      t = heuristic_decomposition(g);
    }
    if (!report_violations(g, &t, err)) return kExitFailure;
    const NiceTreeDecomposition nice = make_nice(t);

    ReductionResult result;
    std::size_t probes = 0;
    if (flags.check_steps) {
      StepCheckReport report = reduce_with_step_checks(g, nice, flags.seed);
      if (!report.ok()) {
        err << "step check failed: " << report.failure->describe() << '\n';
        return kExitFailure;
      }
      const CrosscheckReport final_check =
          crosscheck(report.result.forward, g, *g.source(), *g.target());
      if (!final_check.ok()) {
        const Mismatch& m = final_check.mismatches.front();
        err << "end-to-end check failed at t=" << m.t << ": expected " << m.expected << ", got "
            << m.actual << '\n';
        return kExitFailure;
      }
      probes = report.probes + final_check.times.size();
      result = std::move(report.result);
    } else {
      result = reduce_to_terminals(g, nice);
    }

    if (flags.format == Format::json) {
      json doc;
      doc["A_sd"] = to_json(result.forward);
      doc["A_ds"] = to_json(result.backward);
      doc["breakpoints_sd"] = result.forward.breakpoint_count();
      doc["breakpoints_ds"] = result.backward.breakpoint_count();
      doc["width"] = result.width;
      summary_json(doc, result.trace);
      if (flags.check_steps) doc["step_check"] = {{"status", "ok"}, {"probes", probes}};
      if (flags.emit_trace) {
        json steps = json::array();
        for (const ReductionStep& s : result.trace.steps()) steps.push_back(to_string(s));
        doc["trace"] = steps;
      }
      out << doc.dump(2) << '\n';
      return kExitOk;
    }
    out << "A_sd " << result.forward << '\n';
    out << "A_ds " << result.backward << '\n';
    out << "breakpoints_sd=" << result.forward.breakpoint_count() << '\n';
    out << "breakpoints_ds=" << result.backward.breakpoint_count() << '\n';
    out << "width=" << result.width << '\n';
    write_trace_summary(out, result.trace);
    if (flags.check_steps) out << "step_check=ok probes=" << probes << '\n';
    if (flags.emit_trace) write_trace(out, result.trace);
    return kExitOk;
  });
}

int cmd_oracle(const std::string& graph_file, const OracleFlags& flags, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const Graph g = load_graph(graph_file);
    if (!report_violations(g, nullptr, err)) return kExitFailure;
    const VertexId s = *g.source();
    const VertexId d = *g.target();

    if (flags.full) {
      const PwlFunction forward = enumerate_paths_arrival(g, s, d);
      const PwlFunction backward = enumerate_paths_arrival(g, d, s);
      if (flags.format == Format::json) {
        out << json{{"A_sd", to_json(forward)}, {"A_ds", to_json(backward)}}.dump(2) << '\n';
      } else {
        out << "A_sd " << forward << '\n' << "A_ds " << backward << '\n';
      }
      return kExitOk;
    }

    std::vector<Rational> times;
    for (const std::string& text : flags.times) {
      Rational t = Rational::parse(text);
      if (t.sign() < 0) throw PreconditionError("departure time must be >= 0, got " + text);
      times.push_back(std::move(t));
    }
    if (times.empty()) times.emplace_back(0);

    json doc = json::array();
    for (const Rational& t : times) {
      const auto arrivals = td_dijkstra(g, s, t);
      if (flags.format == Format::json) {
        json row = json::object();
        for (const auto& [v, a] : arrivals) row[std::to_string(v.value)] = to_json(a);
        doc.push_back({{"t", to_json(t)}, {"arrivals", row}});
        continue;
      }
      out << "t=" << t << '\n';
      for (const auto& [v, a] : arrivals) out << v << ' ' << a << '\n';
    }
    if (flags.format == Format::json) out << doc.dump(2) << '\n';
    return kExitOk;
  });
}

int cmd_experiment(const ExperimentFlags& flags, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (flags.format != "csv" && flags.format != "json") {
      throw PreconditionError("--format must be csv or json");
    }
    if (flags.seeds == 0) throw PreconditionError("--seeds must be at least 1");
    const GeneratorKind kind = parse_generator(flags.generator);
    std::vector<ExperimentConfig> configs;
    for (std::size_t n : flags.n) {
      for (std::size_t w : flags.w) {
        for (std::size_t i = 0; i < flags.seeds; ++i) {
          ExperimentConfig c{kind, n, w, flags.seed + i, flags.pieces_per_edge};
          c.validate();
          configs.push_back(c);
        }
      }
    }
    const auto rows =
        run_experiments(configs, flags.serial ? Execution::serial : Execution::parallel);
    if (flags.format == "json") {
      write_json(out, rows, flags.timing);
    } else {
      write_csv(out, rows, flags.timing);
    }
    bool clean = true;
    for (const ExperimentRow& r : rows) {
      for (const std::string& v : r.budget_violations) {
        err << "budget violation (n=" << r.n << ", w=" << r.w << "): " << v << '\n';
        clean = false;
      }
    }
    return clean ? kExitOk : kExitFailure;
  });
}

int cmd_claim1(const std::string& graph_file, const Claim1Flags& flags, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const Graph g = load_graph(graph_file);
    TreeDecomposition t;
    if (flags.td_file) {
      t = load_decomposition(*flags.td_file);
    } else {
      t = heuristic_decomposition(g);
    }
    if (!report_violations(g, &t, err)) return kExitFailure;

    const Separator sep = balanced_separator(g, t);
    Graph contracted = contract_to_separator_graph(g, sep);
    if (flags.inject_fault) {
      // Delay every edge leaving s by one; every s-d route starts with one.
      const VertexId s = *contracted.source();
      const std::set<EdgeKey> at_s = contracted.incident(s);
      for (EdgeKey key : at_s) {
        const EdgeRecord e = contracted.edge(key);
        if (e.is_self_loop()) continue;
        PwlFunction forward = e.forward;
        PwlFunction backward = e.backward;
        PwlFunction& out = e.u == s ? forward : backward;
        out = compose(PwlFunction::shift(1), out);
        contracted.remove_edge(key);
        contracted.add_edge(e.u, e.v, std::move(forward), std::move(backward));
      }
    }

    const ReductionResult on_g = reduce_to_terminals(g, make_nice(t));
    const ReductionResult on_contracted = reduce_with_heuristic(contracted);
    const bool equal = on_g.forward == on_contracted.forward;

    std::string oracle = "skipped";
    if (g.vertex_count() <= kEnumerationVertexLimit) {
      oracle = enumerate_paths_arrival(g, *g.source(), *g.target()) == on_g.forward ? "agree"
                                                                                   : "disagree";
    }

    std::vector<std::uint32_t> separator;
    for (VertexId v : sep.separator) separator.push_back(v.value);
    if (flags.format == Format::json) {
      out << json{{"separator", separator},
                  {"side1", sep.side1.size()},
                  {"side2", sep.side2.size()},
                  {"contracted_vertices", contracted.vertex_count()},
                  {"contracted_edges", contracted.edge_count()},
                  {"A_sd_G", to_json(on_g.forward)},
                  {"A_sd_contracted", to_json(on_contracted.forward)},
                  {"breakpoints_G", on_g.forward.breakpoint_count()},
                  {"breakpoints_contracted", on_contracted.forward.breakpoint_count()},
                  {"equal", equal},
                  {"oracle", oracle}}
                 .dump(2)
          << '\n';
    } else {
      out << "separator";
      for (std::uint32_t v : separator) out << ' ' << v;
      out << '\n';
      out << "sides " << sep.side1.size() << ' ' << sep.side2.size() << '\n';
      out << "contracted " << contracted.vertex_count() << " vertices, "
          << contracted.edge_count() << " edges\n";
      out << "A_sd_G " << on_g.forward << '\n';
      out << "A_sd_contracted " << on_contracted.forward << '\n';
      out << "breakpoints_G=" << on_g.forward.breakpoint_count() << '\n';
      out << "breakpoints_contracted=" << on_contracted.forward.breakpoint_count() << '\n';
      out << "oracle=" << oracle << '\n';
      out << (equal ? "equal" : "NOT equal") << '\n';
    }
    return equal && oracle != "disagree" ? kExitOk : kExitFailure;
  });
}

}  // namespace tdsp::cli
