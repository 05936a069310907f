#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cubemill/complex.hpp"
#include "cubemill/folding.hpp"

namespace cubemill {

// Bipartite incidence graph between the mirrors of one colour and the
// components of the top cells once adjacency through those mirrors is cut.
// Graph vertices: mirrors first (0..mirrors-1), then components.
struct TreeOfSpaces {
  int coordinate = 0;
  std::vector<int> mirror_ids;
  std::vector<std::vector<CellId>> components;  // sorted top cells, ordered by least member
  std::vector<std::pair<int, int>> edges;       // (mirror vertex, component vertex), sorted, no repeats
  std::vector<std::vector<int>> adjacency;

  bool connected = false;
  bool acyclic = false;
  bool leafless = false;
  std::vector<int> cycle;  // graph vertices of a cycle, empty when acyclic
  std::vector<int> leaves;

  std::size_t vertex_count() const { return adjacency.size(); }
  bool is_tree() const { return connected && acyclic; }
  std::string vertex_name(int v) const;
};

// coordinate is 0-based; throws InvalidArgument outside 0..dim-1.
TreeOfSpaces build_tree(const CellComplex& y, const Folding& f, int coordinate);
std::vector<TreeOfSpaces> build_trees(const CellComplex& y, const Folding& f);

}  // namespace cubemill
