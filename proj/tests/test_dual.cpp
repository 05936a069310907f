#include "doctest.h"

#include "cubemill/dual.hpp"
#include "cubemill/errors.hpp"
#include "cubemill/fixtures.hpp"

using namespace cubemill;

namespace {

DualComplex dual_of(const std::string& name) {
  auto fx = fixture(name);
  return DualComplex::build(fx.complex, *fx.folding);
}

}  // namespace

TEST_CASE("dual axioms hold on the fixtures") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    auto d = dual_of(name);
    auto r = verify_dual_axioms(d);
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CAPTURE(c.witness);
      CHECK(c.ok);
    }
    CHECK(d.dimension() == d.source().dimension());
  }
}

TEST_CASE("sizes and heights") {
  for (const auto& name : {"sq1", "grid2", "book3", "cube1", "gdelta2"}) {
    auto d = dual_of(name);
    const auto& y = d.source();
    CHECK(d.vertex_count() == y.cell_count());
    std::size_t tops = 0;
    for (CellId c : y.top_cells()) tops += std::size_t{1} << y.dim(c);
    CHECK(d.cubes().count_of_dim(d.dimension()) == tops);
    std::map<int, std::size_t> by_height;
    for (std::size_t v = 0; v < d.vertex_count(); ++v) ++by_height[d.height(static_cast<VertexId>(v))];
    for (int k = 0; k <= y.dimension(); ++k) CHECK(by_height[k] == y.count_of_dim(k));
    // edges are codimension-one inclusions
    std::size_t incidences = 0;
    for (CellId c = 0; c < static_cast<CellId>(y.cell_count()); ++c) incidences += y.faces(c).size();
    CHECK(d.cubes().count_of_dim(1) == incidences);
  }
}

TEST_CASE("adjacency is codimension-one inclusion") {
  auto d = dual_of("cube1");
  const auto& y = d.source();
  for (CellId a = 0; a < static_cast<CellId>(y.cell_count()); ++a)
    for (CellId b = 0; b < static_cast<CellId>(y.cell_count()); ++b) {
      const bool inc = (y.is_face_of(a, b) && y.dim(b) == y.dim(a) + 1) || (y.is_face_of(b, a) && y.dim(a) == y.dim(b) + 1);
      CHECK(d.adjacent(a, b) == inc);
    }
}

TEST_CASE("removing a square breaks the axioms") {
  auto d = dual_of("sq1");
  // keep the edges of the last square but not the square itself
  auto cubes = d.cubes().maximal_corner_lists();
  auto last = cubes.back();
  cubes.pop_back();
  cubes.push_back({last[0], last[1]});
  cubes.push_back({last[0], last[2]});
  cubes.push_back({last[1], last[3]});
  cubes.push_back({last[2], last[3]});
  auto broken = DualComplex::with_cubes(d, cubes);
  CHECK_FALSE(verify_dual_axioms(broken).ok());
}

TEST_CASE("dual mirrors agree with source separation") {
  for (const auto& name : {"sq1", "grid2", "book3", "cube1"}) {
    auto d = dual_of(name);
    for (std::size_t m = 0; m < d.mirrors().size(); ++m) {
      auto dm = dual_mirror(d, static_cast<int>(m));
      CHECK(dm.agrees);
      CHECK(d.mirror_separating(static_cast<int>(m)));
      for (VertexId v : dm.vertices) CHECK(dm.component[static_cast<std::size_t>(v)] == -1);
    }
  }
  auto b = dual_of("book3");
  int spine = 0;
  for (std::size_t m = 0; m < b.mirrors().size(); ++m) {
    auto dm = dual_mirror(b, static_cast<int>(m));
    if (dm.component_count == 3) {
      ++spine;
      CHECK(dm.source_component_count == 3);
      CHECK(b.mirrors()[m].cells.size() == 3);  // the spine edge and its ends
    }
  }
  CHECK(spine == 1);
  CHECK_FALSE(dual_of("torus4").all_mirrors_separating());
}

TEST_CASE("dual tiles") {
  for (const auto& name : {"sq1", "grid2", "cube1", "gdelta2"}) {
    auto d = dual_of(name);
    const auto& y = d.source();
    const int n = y.dimension();
    int pow3 = 1;
    for (int i = 0; i < n; ++i) pow3 *= 3;
    for (CellId t : y.top_cells()) {
      auto dt = dual_tile(d, t);
      CHECK(dt.valid);
      CHECK(static_cast<int>(dt.vertices.size()) == pow3);
      CHECK(dt.top_cubes == (std::size_t{1} << n));
      auto tiles = d.tiles_containing(t);
      CHECK(tiles == std::vector<CellId>{t});
    }
    CHECK_THROWS_AS(dual_tile(d, 0), Error);
  }
}

TEST_CASE("non-admissible or unfolded sources are refused") {
  auto grid = square_grid(2, 1);
  auto bad = grid_folding(2, 1);
  bad.labels[0] = 1;
  CHECK_THROWS_AS(DualComplex::build(grid, bad), Error);
  auto twin = CellComplex::from_cells(ComplexKind::Cubical, {{0, 1, 2, 3}, {0, 1, 3, 2}});
  CHECK_THROWS_AS(DualComplex::build(twin, standard_cube_folding(2)), Error);
}
