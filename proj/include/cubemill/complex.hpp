#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cubemill/errors.hpp"

namespace cubemill {

using VertexId = std::int64_t;
using CellId = std::int32_t;

enum class ComplexKind { Simplicial, Cubical };

const char* to_string(ComplexKind kind);

// Corner-array helpers. A k-cube is an array of 2^k vertex ids; corner b and
// corner b ^ (1 << j) are joined by an edge in direction j.
namespace cube {

// k with 2^k == corner_count, or -1.
int dimension_of(std::size_t corner_count);

// Least corner array over the 2^k * k! symmetries of the cube.
std::vector<VertexId> canonical(std::span<const VertexId> corners);

// The face with the given free directions, all other directions fixed to the
// bits of `base`. Corners are listed in the order of the compressed bitmask.
std::vector<VertexId> face(std::span<const VertexId> corners, unsigned free_mask, unsigned base);

// If `vertices` is the corner set of a face, return (free_mask, base).
std::optional<std::pair<unsigned, unsigned>> locate_face(std::span<const VertexId> corners,
                                                         std::span<const VertexId> vertices);

// Smallest face containing all the given corner indices.
std::pair<unsigned, unsigned> span_of_indices(std::span<const unsigned> indices, int k);

}  // namespace cube

struct ClosureOptions {
  // When false the input must already be downward closed; a missing face
  // raises MissingFace instead of being added.
  bool compute_closure = true;
};

// A finite simplicial or cubical complex with its face poset.
//
// Cells are kept in canonical form and numbered in (dimension, corners)
// order, so ids are stable for a given cell set whatever order the input came in.
class CellComplex {
 public:
  CellComplex() = default;

  static CellComplex from_cells(ComplexKind kind, std::vector<std::vector<VertexId>> cells,
                                ClosureOptions options = {});

  ComplexKind kind() const { return kind_; }
  bool cubical() const { return kind_ == ComplexKind::Cubical; }
  int dimension() const { return static_cast<int>(first_of_dim_.size()) - 2; }
  bool empty() const { return corners_.empty(); }

  std::size_t cell_count() const { return corners_.size(); }
  std::size_t count_of_dim(int d) const;
  std::vector<CellId> cells_of_dim(int d) const;
  CellId first_of_dim(int d) const;

  std::span<const VertexId> corners(CellId c) const { return corners_[c]; }
  // Corner set in increasing order.
  std::span<const VertexId> vertex_set(CellId c) const { return sorted_[c]; }
  int dim(CellId c) const { return dims_[c]; }
  std::span<const CellId> faces(CellId c) const { return faces_[c]; }
  std::span<const CellId> cofaces(CellId c) const { return cofaces_[c]; }

  std::span<const VertexId> vertices() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::optional<CellId> vertex_cell(VertexId v) const;
  CellId vertex_cell_or_throw(VertexId v) const;
  // Cells having v as a corner, sorted.
  std::span<const CellId> star(VertexId v) const;

  std::optional<CellId> find(std::span<const VertexId> corners) const;
  // The cell with exactly this vertex set, if any.
  std::optional<CellId> find_by_vertices(std::span<const VertexId> sorted_vertices) const;

  bool is_face_of(CellId a, CellId b) const;
  std::vector<CellId> down_set(CellId c) const;  // all faces, c included, sorted
  std::vector<CellId> up_set(CellId c) const;    // all cells containing c, sorted
  std::vector<CellId> maximal_cells() const;
  std::vector<CellId> top_cells() const { return cells_of_dim(dimension()); }

  // Smallest face of `c` containing the given vertices (which must be corners of c).
  CellId span_in(CellId c, std::span<const VertexId> vertices) const;

  bool homogeneous() const;
  bool boundaryless() const;
  long euler_characteristic() const;
  bool connected() const;

  // Maximal cells listed as corner arrays, in id order.
  std::vector<std::vector<VertexId>> maximal_corner_lists() const;

  friend bool operator==(const CellComplex& a, const CellComplex& b) {
    return a.kind_ == b.kind_ && a.corners_ == b.corners_;
  }

 private:
  ComplexKind kind_ = ComplexKind::Simplicial;
  std::vector<std::vector<VertexId>> corners_;
  std::vector<std::vector<VertexId>> sorted_;
  std::vector<int> dims_;
  std::vector<CellId> first_of_dim_{0};  // size dimension()+2
  std::vector<std::vector<CellId>> faces_;
  std::vector<std::vector<CellId>> cofaces_;
  std::vector<VertexId> vertices_;
  std::map<VertexId, CellId> vertex_cell_;
  std::map<VertexId, std::vector<CellId>> star_;
  std::map<std::vector<VertexId>, CellId> index_;
  std::map<std::vector<VertexId>, CellId> by_vertices_;
};

struct ValidationReport {
  bool ok = true;
  std::optional<ErrorCode> violation;
  std::string message;
  std::vector<std::vector<VertexId>> offending;  // the offending cube pair (or single cube)
};

struct ValidationResult {
  std::optional<CellComplex> complex;
  ValidationReport report;
};

// Structural checks plus admissibility: two cubes meet in nothing or in one
// common face.
ValidationResult validate_cubical(const std::vector<std::vector<VertexId>>& raw,
                                  ClosureOptions options = {});
ValidationReport check_admissible(const CellComplex& x);

// Vertices of the subdivision are the cell ids of the input, so the vertex id
// itself is the provenance; origin_dim[v] is the dimension of cell v.
struct Subdivision {
  CellComplex complex;
  std::vector<int> origin_dim;
};

Subdivision barycentric_subdivision(const CellComplex& k);

// Vertex v of the result is the centre of cell v of the input.
CellComplex cubical_subdivision(const CellComplex& x);

// The link of a cell. Vertices are the ids of the cells covering `base`.
struct LinkComplex {
  CellId base = 0;
  CellComplex complex;
};

LinkComplex link(const CellComplex& k, CellId base);
LinkComplex link_of_vertex(const CellComplex& k, VertexId v);

// Lower cell: the cell whose vertex set is the intersection. Upper cell: the
// unique minimal cell containing all of them.
std::optional<CellId> lower_cell(const CellComplex& k, std::span<const CellId> cells);
std::optional<CellId> upper_cell(const CellComplex& k, std::span<const CellId> cells);

// Full subcomplex spanned by a vertex set (simplicial only).
CellComplex full_subcomplex(const CellComplex& k, std::span<const VertexId> vertices);

CellComplex relabel(const CellComplex& k, const std::map<VertexId, VertexId>& mapping);

// Combinatorial isomorphism by backtracking over vertex maps.
bool isomorphic(const CellComplex& a, const CellComplex& b);

// Standard complexes.
CellComplex standard_simplex(int n);
CellComplex simplex_boundary(int n);
CellComplex standard_cube(int n);

}  // namespace cubemill
