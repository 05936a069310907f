#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cubemill/complex.hpp"
#include "cubemill/folding.hpp"

namespace cubemill {

// The dual cube complex of a finite admissible foldable cube complex. Dual
// vertex v is source cell v; the cube on the interval [λ, μ] has corners the
// cells between λ and μ, so the whole thing is the cubical subdivision of the
// source.
class DualComplex {
 public:
  // Throws NotAdmissible, or NotFoldable when f is not a folding.
  static DualComplex build(const CellComplex& y, const Folding& f);
  // Same source data with an explicit cube list, for corrupted controls.
  static DualComplex with_cubes(const DualComplex& d, std::vector<std::vector<VertexId>> cubes);

  const CellComplex& source() const { return *source_; }
  const Folding& folding() const { return folding_; }
  const std::vector<Mirror>& mirrors() const { return mirrors_; }
  const CellComplex& cubes() const { return cubes_; }

  int dimension() const { return cubes_.dimension(); }
  std::size_t vertex_count() const { return source_->cell_count(); }
  int height(VertexId v) const { return source_->dim(static_cast<CellId>(v)); }
  bool adjacent(VertexId a, VertexId b) const;
  std::vector<VertexId> neighbours(VertexId v) const;
  // (lower, upper) source cells of a dual cell
  std::pair<VertexId, VertexId> interval(CellId dual_cell) const;

  // Top cells of the source containing cell c.
  std::vector<CellId> tiles_containing(CellId c) const;
  // Mirror ids whose cell set contains c.
  const std::vector<int>& mirrors_containing(CellId c) const { return mirrors_of_cell_[c]; }
  // Per source cell: component of the dual 1-skeleton minus the dual mirror,
  // or -1 on the mirror.
  const std::vector<int>& mirror_components(int m) const { return mirror_component_[m]; }
  int mirror_component_count(int m) const { return mirror_component_count_[m]; }
  // Every framing of the mirror is separated in the source.
  bool mirror_separating(int m) const { return mirror_separating_[m] != 0; }
  bool all_mirrors_separating() const;

 private:
  std::shared_ptr<const CellComplex> source_;
  Folding folding_;
  std::vector<Mirror> mirrors_;
  CellComplex cubes_;
  std::vector<std::vector<int>> mirrors_of_cell_;
  std::vector<std::vector<int>> mirror_component_;
  std::vector<int> mirror_component_count_;
  std::vector<char> mirror_separating_;
};

struct DualCheck {
  std::string name;
  bool ok = true;
  std::size_t checked = 0;
  std::string witness;
};

struct DualReport {
  std::vector<DualCheck> checks;
  bool ok() const;
};

DualReport verify_dual_axioms(const DualComplex& d);

struct DualMirror {
  int mirror = 0;
  std::vector<VertexId> vertices;  // dual vertices of the mirror cells
  CellComplex subcomplex;          // full subcomplex on them
  std::vector<int> component;      // per dual vertex, -1 on the mirror
  int component_count = 0;
  int source_component_count = 0;  // from mirror_separates
  bool agrees = false;             // same partition of the top cells
};

DualMirror dual_mirror(const DualComplex& d, int mirror);

struct DualTile {
  CellId tile = 0;
  std::vector<VertexId> vertices;  // faces of the tile
  std::vector<CellId> cubes;       // dual cells inside the tile
  std::size_t top_cubes = 0;
  bool valid = false;              // one vertex of height n, 3^n vertices, 2^n top cubes
};

// Throws NotTopCell unless dim tile == dim source.
DualTile dual_tile(const DualComplex& d, CellId tile);

}  // namespace cubemill
