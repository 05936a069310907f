#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cubemill/complex.hpp"
#include "cubemill/dual.hpp"
#include "cubemill/folding.hpp"
#include "cubemill/paths.hpp"

namespace cubemill {

// Raw contents of a complex file before any validation.
struct ComplexFile {
  ComplexKind kind = ComplexKind::Cubical;
  std::vector<std::vector<VertexId>> cells;
};

// {"kind":"cubical"|"simplicial","cells":[[v,...],...]}. Unknown keys are
// ignored. Throws ParseError naming the line or field.
ComplexFile parse_complex_file(const std::string& text);
CellComplex parse_complex(const std::string& text);
// Maximal cells only, each in canonical corner order, sorted.
std::string serialize_complex(const CellComplex& k);

// {"labels":{"v":[x1,...,xn]}} for cubical, {"labels":{"v":i}} for simplicial.
// The cubical loader also accepts a packed integer label.
Folding parse_folding(const std::string& text, ComplexKind kind, int target_dim);
std::string serialize_folding(const Folding& f);

// Dual complex in the complex format plus a "heights" table keyed by vertex.
std::string serialize_dual(const DualComplex& d);

EdgePath parse_loop(const std::string& text);  // "v0,v1,..."
std::string format_path(const EdgePath& p);

// Line-oriented contraction tree:
//   node v0,v1,...      opens a node on that loop
//   rotate K | backtrack I | slide I W c0,c1,c2,c3 | insert I w0,...,wm
//   split K             the node splits after its moves
//   end                 closes the node (children sit between split and end)
std::string serialize_contraction(const ContractionNode& node);
ContractionNode parse_contraction(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace cubemill
