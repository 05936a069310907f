#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"

#include "cubemill/curvature.hpp"
#include "cubemill/fixtures.hpp"

using namespace cubemill;

namespace {

// Hyperplanes by union-find over opposite edges of squares.
std::size_t hyperplane_count_oracle(const CellComplex& x) {
  auto edges = x.cells_of_dim(1);
  std::map<CellId, std::size_t> idx;
  for (std::size_t i = 0; i < edges.size(); ++i) idx[edges[i]] = i;
  std::vector<std::size_t> parent(edges.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    return parent[a] == a ? a : parent[a] = find(parent[a]);
  };
  for (CellId sq : x.cells_of_dim(2)) {
    auto c = x.corners(sq);
    auto e = [&](VertexId a, VertexId b) { return idx.at(*x.find(std::vector<VertexId>{a, b})); };
    parent[find(e(c[0], c[1]))] = find(e(c[2], c[3]));
    parent[find(e(c[0], c[2]))] = find(e(c[1], c[3]));
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < edges.size(); ++i) roots.insert(find(i));
  return roots.size();
}

}  // namespace

TEST_CASE("flag complexes") {
  auto hollow = simplex_boundary(2);
  auto r = is_flag(hollow);
  CHECK_FALSE(r.flag);
  CHECK(r.witness == std::vector<VertexId>{0, 1, 2});
  CHECK(is_flag(standard_simplex(3)).flag);
  CHECK(is_flag(CellComplex::from_cells(ComplexKind::Simplicial, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})).flag);
  // hollow tetrahedron: every triangle is there but the 4-clique is not
  auto t = is_flag(simplex_boundary(3));
  CHECK_FALSE(t.flag);
  CHECK(t.witness.size() == 4);
}

TEST_CASE("Gromov link condition") {
  CHECK(check_npc(torus_grid(4, 4)).ok);
  CHECK(check_npc(standard_cube(3)).ok);
  CHECK(check_npc(book(3)).ok);
  // three squares of a cube around a corner: the link is an empty triangle
  auto corner = CellComplex::from_cells(ComplexKind::Cubical, {{0, 1, 2, 3}, {0, 1, 4, 5}, {0, 2, 4, 6}});
  auto r = check_npc(corner);
  CHECK_FALSE(r.ok);
  REQUIRE(r.vertex);
  CHECK(*r.vertex == 0);
  CHECK(r.clique.size() == 3);
}

TEST_CASE("hyperplane partition matches a direct union-find") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    auto x = fixture(name).complex;
    auto hs = hyperplanes(x);
    CHECK(hs.size() == hyperplane_count_oracle(x));
    std::size_t total = 0;
    for (const auto& h : hs) total += h.edges.size();
    CHECK(total == x.count_of_dim(1));
  }
  CHECK(hyperplanes(square_grid(3, 2)).size() == 5);
}

TEST_CASE("hyperplane edges share one folding coordinate") {
  for (const auto& name : fixture_names()) {
    auto fx = fixture(name);
    for (const auto& h : hyperplanes(fx.complex)) {
      std::set<unsigned> dirs;
      for (CellId e : h.edges) dirs.insert(folded_face(fx.complex, *fx.folding, e).free);
      CHECK(dirs.size() == 1);
    }
  }
}

TEST_CASE("simply connected fixtures are special; reported witnesses are genuine") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    auto fx = fixture(name);
    auto r = check_special(fx.complex);
    if (fx.simply_connected) CHECK(r.clean());
    for (const auto& w : r.self_intersections) CHECK(confirm(fx.complex, w));
    for (const auto& w : r.self_osculations) CHECK(confirm(fx.complex, w));
    for (const auto& w : r.inter_osculations) CHECK(confirm(fx.complex, w));
  }
}

TEST_CASE("a strip whose end edges share a vertex self-osculates") {
  // bottom b0 b1 b2, top t0..t3, and b3 identified with b0
  auto x = CellComplex::from_cells(ComplexKind::Cubical, {{0, 1, 3, 4}, {1, 2, 4, 5}, {2, 0, 5, 6}});
  CHECK(check_admissible(x).ok);
  auto r = check_special(x);
  CHECK_FALSE(r.clean());
  CHECK_FALSE(r.self_osculations.empty());
  for (const auto& w : r.self_osculations) {
    CHECK(confirm(x, w));
    CHECK(w.vertex == 0);
  }
}

TEST_CASE("mirrors carry whole hyperplane sides") {
  for (const auto& name : fixture_names()) {
    auto fx = fixture(name);
    auto hs = hyperplanes(fx.complex);
    for (const auto& m : mirrors(fx.complex, *fx.folding))
      for (const auto& h : hs) CHECK(mirror_carries_hyperplane_side(fx.complex, *fx.folding, m, h));
  }
}
