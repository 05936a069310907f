#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cubemill/complex.hpp"

namespace cubemill {

// Cubical: bit i of a label is coordinate x_i of the corner of the n-cube.
// Simplicial: the label is a vertex 0..n of the n-simplex.
struct Folding {
  ComplexKind kind = ComplexKind::Cubical;
  int target_dim = 0;
  std::map<VertexId, std::uint32_t> labels;

  std::uint32_t label(VertexId v) const;
};

struct FoldingCheck {
  bool ok = true;
  std::optional<CellId> witness;
  std::string reason;
};

// Throws UnlabeledVertex if some vertex has no label.
FoldingCheck verify_folding(const CellComplex& k, const Folding& f);

struct NotFoldable {
  enum class Kind { OddCycle, DeadEnd, SelfCrossing };
  Kind kind = Kind::DeadEnd;
  std::vector<VertexId> cycle;     // closed vertex walk, first == last (OddCycle)
  std::vector<std::string> trace;  // deepest failed branch (DeadEnd / SelfCrossing)
  std::string describe() const;
};

using FoldingSearch = std::variant<Folding, NotFoldable>;

FoldingSearch find_folding(const CellComplex& k);

// Label each subdivision vertex by the dimension of the cell it came from.
Folding canonical_barsub_folding(const Subdivision& s);
Folding canonical_barsub_folding(const CellComplex& k, const std::vector<int>& origin_dim);

// Face of the target cube a cell folds onto: directions in `free`, the other
// coordinates equal to the bits of `base`.
struct FoldedFace {
  unsigned free = 0;
  unsigned base = 0;
};
FoldedFace folded_face(const CellComplex& k, const Folding& f, CellId c);

// Parallelism classes of edges (the hyperplanes of a cube complex). Class ids
// are ordered by their least edge id.
struct EdgeClasses {
  std::vector<int> class_of;                // indexed by cell id, -1 off edges
  std::vector<std::vector<CellId>> edges;   // per class, sorted
};
EdgeClasses parallelism_classes(const CellComplex& x);

struct Mirror {
  int id = 0;
  int coordinate = 0;
  int side = 0;
  std::vector<CellId> cells;  // sorted

  bool contains(CellId c) const;
};

std::vector<Mirror> mirrors(const CellComplex& x, const Folding& f);

// Checks the Mirror invariants for a proposed cell set; returns the reason it
// fails or nullopt when it is one of the mirrors of f.
std::optional<std::string> reject_mirror(const CellComplex& x, const Folding& f,
                                         const std::vector<CellId>& cells);

struct Framing {
  CellId cell = 0;
  CellId first = 0;
  CellId second = 0;
};

struct FramingVerdict {
  Framing framing;
  bool separated = false;
};

struct MirrorSeparation {
  int mirror = 0;
  std::vector<CellId> top_cells;
  std::vector<int> component;  // parallel to top_cells
  int component_count = 0;
  std::vector<FramingVerdict> framings;

  bool all_separated() const;
  int component_of(CellId top) const;
};

MirrorSeparation mirror_separates(const CellComplex& x, const Mirror& m);

}  // namespace cubemill
