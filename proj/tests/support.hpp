#pragma once

#include <string_view>
#include <vector>

#include "tdsp/graph.hpp"
#include "tdsp/pwl.hpp"

namespace tdsp::testing {

inline PwlFunction fn(std::string_view text) { return parse_function(text); }

inline VertexId V(std::uint32_t v) { return VertexId{v}; }

// Every k/den in [0, hi].
inline std::vector<Rational> dense_grid(long hi, long den = 4) {
  std::vector<Rational> out;
  for (long k = 0; k <= hi * den; ++k) out.emplace_back(k, den);
  return out;
}

// Breakpoints and midpoints of every function given, plus a point past the end.
inline std::vector<Rational> grid_for(std::initializer_list<const PwlFunction*> fs) {
  std::vector<Rational> ts{Rational(0)};
  for (const PwlFunction* f : fs) {
    if (f->is_infinite()) continue;
    const auto pieces = f->pieces();
    for (std::size_t i = 1; i < pieces.size(); ++i) {
      ts.push_back(pieces[i].start);
      ts.push_back((pieces[i - 1].start + pieces[i].start) / Rational(2));
    }
    ts.push_back(pieces.back().start + Rational(3, 2));
  }
  return ts;
}

inline Graph graph(std::string_view text) { return parse_graph(text); }

}  // namespace tdsp::testing
