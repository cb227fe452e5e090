#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "poset.hpp"

namespace ordim {

// Cover graph as DOT text, drawn bottom-up with one rank per height.
// Output is deterministic: ids ascend inside every section.
inline std::string to_dot(const Poset& p) {
  std::ostringstream out;
  out << "digraph poset {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=plaintext];\n";
  std::map<int, std::vector<int>> by_height;
  for (int v = 0; v < p.size(); ++v) by_height[p.height_of(v)].push_back(v);
  for (const auto& [h, ids] : by_height) {
    out << "  { rank=same;";
    for (int v : ids) out << " v" << v << ";";
    out << " }\n";
  }
  for (int v = 0; v < p.size(); ++v)
    out << "  v" << v << " [label=\"" << to_string(p.label(v)) << "\"];\n";
  for (auto [x, y] : p.covers()) out << "  v" << x << " -> v" << y << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace ordim
