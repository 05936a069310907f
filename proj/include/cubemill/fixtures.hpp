#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubemill/complex.hpp"
#include "cubemill/folding.hpp"

namespace cubemill {

struct Fixture {
  std::string name;
  CellComplex complex;
  std::optional<Folding> folding;
  bool simply_connected = false;
};

std::vector<std::string> fixture_names();
// Throws InvalidArgument for an unknown name.
Fixture fixture(const std::string& name);

// w x h squares; vertex (i, j) has id i * (h + 1) + j.
CellComplex square_grid(int w, int h);
Folding grid_folding(int w, int h);
// w x h squares with opposite sides identified; vertex (i, j) has id i * h + j.
CellComplex torus_grid(int w, int h);
Folding torus_folding(int w, int h);
// Pages (a, b, c_i, d_i) on the spine a-b; a = 0, b = 1, c_i = 2 + 2i, d_i = 3 + 2i.
CellComplex book(int pages);
Folding book_folding(int pages);
// m squares around a centre 0: square i is (0, s_i, s_{i+1}, t_i), s_i = 1 + i, t_i = 1 + m + i.
CellComplex rose(int m);
Folding standard_cube_folding(int n);
// Cone over a cycle of length m: apex 0, rim 1..m.
CellComplex cone_over_cycle(int m);
// Two triangles (0,1,2) and (1,2,3).
CellComplex two_triangles();

}  // namespace cubemill
