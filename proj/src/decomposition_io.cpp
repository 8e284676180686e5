#include <sstream>

#include "tdsp/errors.hpp"
#include "tdsp/tree_decomposition.hpp"

namespace tdsp {

TreeDecomposition read_decomposition(std::istream& in) {
  TreeDecomposition t;
  std::map<long, BagId> by_file_id;
  long declared_bags = -1;
  long declared_size = -1;
  long declared_vertices = -1;
  std::vector<std::pair<std::size_t, std::pair<long, long>>> tree_edges;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "s") {
      std::string kind;
      if (declared_bags >= 0) throw ParseError(line_no, "duplicate solution line");
      if (!(ls >> kind >> declared_bags >> declared_size >> declared_vertices) || kind != "td" ||
          declared_bags < 0 || declared_size < 0 || declared_vertices < 0) {
        throw ParseError(line_no, "expected 's td <bags> <max bag size> <vertices>'");
      }
    } else if (tag == "b") {
      if (declared_bags < 0) throw ParseError(line_no, "bag before solution line");
      long id = 0;
      if (!(ls >> id) || id < 1 || id > declared_bags) {
        throw ParseError(line_no, "bag id out of range");
      }
      if (by_file_id.contains(id)) throw ParseError(line_no, "duplicate bag " + std::to_string(id));
      Bag bag;
      long v = 0;
      while (ls >> v) {
        if (v < 1 || v > declared_vertices) throw ParseError(line_no, "vertex out of range");
        bag.insert(VertexId{static_cast<std::uint32_t>(v)});
      }
      if (!ls.eof()) throw ParseError(line_no, "malformed bag line");
      if (static_cast<long>(bag.size()) > declared_size) {
        throw ParseError(line_no, "bag larger than declared maximum");
      }
      by_file_id.emplace(id, t.add_bag(std::move(bag)));
    } else {
      long a = 0, b = 0;
      std::string extra;
      std::istringstream es(line);
      if (!(es >> a >> b) || (es >> extra)) throw ParseError(line_no, "expected '<bag> <bag>'");
      tree_edges.push_back({line_no, {a, b}});
    }
  }
  if (declared_bags < 0) throw ParseError(line_no, "missing solution line");
  if (static_cast<long>(by_file_id.size()) != declared_bags) {
    throw ParseError(line_no, "expected " + std::to_string(declared_bags) + " bags, found " +
                                  std::to_string(by_file_id.size()));
  }
  for (const auto& [at, ends] : tree_edges) {
    auto a = by_file_id.find(ends.first);
    auto b = by_file_id.find(ends.second);
    if (a == by_file_id.end() || b == by_file_id.end() || a == b) {
      throw ParseError(at, "tree edge names an unknown bag");
    }
    t.add_tree_edge(a->second, b->second);
  }
  return t;
}

TreeDecomposition parse_decomposition(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_decomposition(in);
}

void write_decomposition(std::ostream& out, const TreeDecomposition& t, std::size_t vertex_count) {
  std::map<BagId, std::size_t> file_id;
  std::size_t max_size = 0;
  for (const auto& [id, bag] : t.bags()) {
    file_id.emplace(id, file_id.size() + 1);
    max_size = std::max(max_size, bag.size());
  }
  out << "s td " << t.bag_count() << ' ' << max_size << ' ' << vertex_count << '\n';
  for (const auto& [id, bag] : t.bags()) {
    out << "b " << file_id.at(id);
    for (VertexId v : bag) out << ' ' << v;
    out << '\n';
  }
  for (const auto& [id, _] : t.bags()) {
    for (BagId n : t.tree_neighbors(id)) {
      if (id < n) out << file_id.at(id) << ' ' << file_id.at(n) << '\n';
    }
  }
}

std::string format_decomposition(const TreeDecomposition& t, std::size_t vertex_count) {
  std::ostringstream os;
  write_decomposition(os, t, vertex_count);
  return os.str();
}

}  // namespace tdsp
