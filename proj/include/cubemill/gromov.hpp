#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubemill/complex.hpp"
#include "cubemill/folding.hpp"

namespace cubemill {

struct HyperbolizedComplex;

// G(Δ^n) with its face labels. Labels are bitmasks over the simplex vertices
// 0..n; the full mask stands for "interior". Vertex ids are 0..V-1.
struct GromovCell {
  int n = 0;
  CellComplex complex;
  std::vector<std::uint32_t> vertex_label;
  std::vector<std::uint32_t> cell_label;  // per cell id
  Folding folding;

  // inductive stage data (n >= 2): the boundary G(∂Δ^n) built from the
  // subdivided boundary, the reflection on its vertices, and the halves
  std::shared_ptr<const HyperbolizedComplex> boundary;
  std::vector<VertexId> reflection;   // indexed by boundary vertex id
  std::vector<CellId> half_u;         // boundary cells in U, sorted
  std::vector<CellId> fixed;          // boundary cells fixed pointwise, sorted
  int interval_edges = 0;             // edges of the cylinder factor

  std::uint32_t interior_label() const { return (1u << (n + 1)) - 1; }
  // Subcomplex of cells whose label lies inside `face`.
  CellComplex face_subcomplex(std::uint32_t face) const;
};

// Cached; the reference stays valid for the life of the program.
const GromovCell& gromov_cell(int n);

struct TileEntry {
  CellId simplex = 0;  // maximal simplex of the source
  CellId cell = 0;     // cell of G(Δ^n)
};

struct HyperbolizedComplex {
  int n = 0;
  std::shared_ptr<const CellComplex> source;  // the complex actually hyperbolized
  Folding source_folding;
  CellComplex complex;
  // vertex id -> (source cell, vertex of G(Δ^n))
  std::vector<std::pair<CellId, VertexId>> vertex_origin;
  // cell id -> every (maximal simplex, G(Δ^n) cell) it comes from
  std::vector<std::vector<TileEntry>> tiles;
  Folding folding;
  // the vertex over a source vertex: the one of G(Δ^n) labelled by its folding value
  std::optional<VertexId> vertex_over(VertexId source_vertex) const;
};

// With no folding the input is subdivided and folded by dimension first.
HyperbolizedComplex gromov_hyperbolize(const CellComplex& k, const std::optional<Folding>& f = std::nullopt);

struct PropertyEntry {
  enum class Status { Pass, Fail, NotApplicable };
  std::string name;
  Status status = Status::Pass;
  std::string detail;
};

struct GromovReport {
  std::vector<PropertyEntry> entries;
  bool all_applicable_pass() const;
};

const char* to_string(PropertyEntry::Status s);

// `k` is the complex that was passed to gromov_hyperbolize.
GromovReport verify_gromov_properties(const CellComplex& k, const HyperbolizedComplex& g);

// Homeomorphism of links of dimension at most one: graphs are compared after
// suppressing vertices of degree two. Returns nullopt for higher dimensions.
std::optional<bool> homeomorphic_low_dim(const CellComplex& a, const CellComplex& b);

}  // namespace cubemill
