#include "cubemill/fixtures.hpp"

#include "cubemill/errors.hpp"
#include "cubemill/gromov.hpp"

namespace cubemill {

CellComplex square_grid(int w, int h) {
  auto id = [h](int i, int j) { return static_cast<VertexId>(i * (h + 1) + j); };
  std::vector<std::vector<VertexId>> cells;
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < h; ++j) cells.push_back({id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1)});
  return CellComplex::from_cells(ComplexKind::Cubical, std::move(cells));
}

Folding grid_folding(int w, int h) {
  Folding f;
  f.target_dim = 2;
  for (int i = 0; i <= w; ++i)
    for (int j = 0; j <= h; ++j)
      f.labels[static_cast<VertexId>(i * (h + 1) + j)] = static_cast<std::uint32_t>((i % 2) | ((j % 2) << 1));
  return f;
}

CellComplex torus_grid(int w, int h) {
  auto id = [w, h](int i, int j) { return static_cast<VertexId>((i % w) * h + (j % h)); };
  std::vector<std::vector<VertexId>> cells;
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < h; ++j) cells.push_back({id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1)});
  return CellComplex::from_cells(ComplexKind::Cubical, std::move(cells));
}

Folding torus_folding(int w, int h) {
  if (w % 2 || h % 2) fail(ErrorCode::InvalidArgument, "parity folding needs even sides");
  Folding f;
  f.target_dim = 2;
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < h; ++j)
      f.labels[static_cast<VertexId>(i * h + j)] = static_cast<std::uint32_t>((i % 2) | ((j % 2) << 1));
  return f;
}

CellComplex book(int pages) {
  std::vector<std::vector<VertexId>> cells;
  for (int i = 0; i < pages; ++i) cells.push_back({0, 1, 2 + 2 * i, 3 + 2 * i});
  return CellComplex::from_cells(ComplexKind::Cubical, std::move(cells));
}

Folding book_folding(int pages) {
  Folding f;
  f.target_dim = 2;
  f.labels = {{0, 0}, {1, 1}};
  for (int i = 0; i < pages; ++i) {
    f.labels[2 + 2 * i] = 2;
    f.labels[3 + 2 * i] = 3;
  }
  return f;
}

CellComplex rose(int m) {
  std::vector<std::vector<VertexId>> cells;
  for (int i = 0; i < m; ++i)
    cells.push_back({0, 1 + i, 1 + (i + 1) % m, 1 + m + i});
  return CellComplex::from_cells(ComplexKind::Cubical, std::move(cells));
}

Folding standard_cube_folding(int n) {
  Folding f;
  f.target_dim = n;
  for (std::uint32_t v = 0; v < (1u << n); ++v) f.labels[v] = v;
  return f;
}

CellComplex cone_over_cycle(int m) {
  std::vector<std::vector<VertexId>> cells;
  for (int i = 0; i < m; ++i) cells.push_back({0, 1 + i, 1 + (i + 1) % m});
  return CellComplex::from_cells(ComplexKind::Simplicial, std::move(cells));
}

CellComplex two_triangles() {
  return CellComplex::from_cells(ComplexKind::Simplicial, {{0, 1, 2}, {1, 2, 3}});
}

std::vector<std::string> fixture_names() {
  return {"sq1", "grid2", "book3", "cube1", "torus4", "gdelta2", "sphere"};
}

Fixture fixture(const std::string& name) {
  Fixture fx;
  fx.name = name;
  if (name == "sq1") {
    fx.complex = standard_cube(2);
    fx.folding = standard_cube_folding(2);
    fx.simply_connected = true;
  } else if (name == "grid2") {
    fx.complex = square_grid(2, 2);
    fx.folding = grid_folding(2, 2);
    fx.simply_connected = true;
  } else if (name == "book3") {
    fx.complex = book(3);
    fx.folding = book_folding(3);
    fx.simply_connected = true;
  } else if (name == "cube1") {
    fx.complex = standard_cube(3);
    fx.folding = standard_cube_folding(3);
    fx.simply_connected = true;
  } else if (name == "torus4") {
    fx.complex = torus_grid(4, 4);
    fx.folding = torus_folding(4, 4);
  } else if (name == "gdelta2") {
    const GromovCell& g = gromov_cell(2);
    fx.complex = g.complex;
    fx.folding = g.folding;
  } else if (name == "sphere") {
    auto h = gromov_hyperbolize(simplex_boundary(3));
    fx.complex = std::move(h.complex);
    fx.folding = std::move(h.folding);
  } else {
    fail(ErrorCode::InvalidArgument, "unknown fixture '" + name + "'");
  }
  return fx;
}

}  // namespace cubemill
