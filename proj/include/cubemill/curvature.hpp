#pragma once

#include <optional>
#include <vector>

#include "cubemill/complex.hpp"
#include "cubemill/folding.hpp"

namespace cubemill {

struct FlagCheck {
  bool flag = true;
  std::vector<VertexId> witness;  // least clique (by size, then lexicographically) spanning no simplex
};

FlagCheck is_flag(const CellComplex& l);

struct NpcCheck {
  bool ok = true;
  std::optional<VertexId> vertex;
  std::vector<VertexId> clique;  // in the link, whose vertices are cell ids of the complex
};

// Gromov link condition at every vertex.
NpcCheck check_npc(const CellComplex& x);

struct Hyperplane {
  int id = 0;
  std::vector<CellId> edges;
  std::vector<CellId> carrier;
};

std::vector<Hyperplane> hyperplanes(const CellComplex& x);

struct SelfIntersection {
  int hyperplane = 0;
  CellId square = 0;
};

struct SelfOsculation {
  int hyperplane = 0;
  VertexId vertex = 0;
  CellId first = 0;
  CellId second = 0;
};

struct InterOsculation {
  int first = 0;
  int second = 0;
  VertexId vertex = 0;
  CellId first_edge = 0;
  CellId second_edge = 0;
  CellId crossing_square = 0;
};

struct PathologyReport {
  std::vector<SelfIntersection> self_intersections;
  std::vector<SelfOsculation> self_osculations;
  std::vector<InterOsculation> inter_osculations;

  bool clean() const {
    return self_intersections.empty() && self_osculations.empty() && inter_osculations.empty();
  }
};

PathologyReport check_special(const CellComplex& x);

// Recheck a single witness against the complex.
bool confirm(const CellComplex& x, const SelfIntersection& w);
bool confirm(const CellComplex& x, const SelfOsculation& w);
bool confirm(const CellComplex& x, const InterOsculation& w);

// Each side of H (the faces of its carrier cubes perpendicular to H, split by
// the folded value of H's coordinate) lies in M entirely or not at all.
bool mirror_carries_hyperplane_side(const CellComplex& x, const Folding& f, const Mirror& m,
                                    const Hyperplane& h);

}  // namespace cubemill
