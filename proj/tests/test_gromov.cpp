#include "doctest.h"

#include "cubemill/curvature.hpp"
#include "cubemill/errors.hpp"
#include "cubemill/fixtures.hpp"
#include "cubemill/gromov.hpp"

using namespace cubemill;

namespace {

// Closed surface test: every edge lies in two squares and each vertex link
// is one cycle.
bool closed_surface(const CellComplex& x) {
  for (CellId e : x.cells_of_dim(1))
    if (x.cofaces(e).size() != 2) return false;
  for (VertexId v : x.vertices()) {
    auto l = link_of_vertex(x, v).complex;
    if (!l.connected() || l.count_of_dim(1) != l.vertex_count()) return false;
    for (VertexId w : l.vertices())
      if (l.cofaces(*l.vertex_cell(w)).size() != 2) return false;
  }
  return true;
}

void all_pass(const CellComplex& k, const HyperbolizedComplex& h) {
  auto r = verify_gromov_properties(k, h);
  for (const auto& e : r.entries) {
    CAPTURE(e.name);
    CAPTURE(e.detail);
    CHECK(e.status != PropertyEntry::Status::Fail);
  }
  CHECK(r.all_applicable_pass());
}

}  // namespace

TEST_CASE("low-dimensional cells") {
  const auto& g0 = gromov_cell(0);
  CHECK(g0.complex.vertex_count() == 1);
  const auto& g1 = gromov_cell(1);
  CHECK(g1.complex.dimension() == 1);
  CHECK(g1.complex.count_of_dim(1) == 1);
  CHECK(g1.complex.vertex_count() == 2);
  CHECK_THROWS_AS(gromov_cell(4), Error);
}

TEST_CASE("the hyperbolized triangle") {
  const auto& g = gromov_cell(2);
  const auto& x = g.complex;
  CHECK(x.cubical());
  CHECK(x.dimension() == 2);
  // a four-edge interval in the cylinder: twenty-four squares
  CHECK(x.count_of_dim(2) == 24);
  CHECK(g.interval_edges == 4);
  CHECK(check_admissible(x).ok);
  CHECK(verify_folding(x, g.folding).ok);
  CHECK(check_npc(x).ok);
  CHECK(x.homogeneous());
  // each side of the triangle is G(edge) subdivided once: two edges
  for (std::uint32_t face : {3u, 5u, 6u}) {
    auto s = g.face_subcomplex(face);
    CHECK(s.dimension() == 1);
    CHECK(s.count_of_dim(1) == 2);
    CHECK(s.connected());
  }
  for (std::uint32_t corner : {1u, 2u, 4u}) CHECK(g.face_subcomplex(corner).vertex_count() == 1);
}

TEST_CASE("reflection data of the inductive step") {
  const auto& g = gromov_cell(2);
  REQUIRE(g.boundary);
  const auto& b = g.boundary->complex;
  CHECK(g.reflection.size() == b.vertex_count());
  for (VertexId v : b.vertices()) {
    const auto r = g.reflection[static_cast<std::size_t>(v)];
    CHECK(g.reflection[static_cast<std::size_t>(r)] == v);
  }
  CHECK(std::includes(g.half_u.begin(), g.half_u.end(), g.fixed.begin(), g.fixed.end()));
}

TEST_CASE("three-dimensional cell") {
  const auto& g = gromov_cell(3);
  CHECK(g.complex.dimension() == 3);
  CHECK(check_admissible(g.complex).ok);
  CHECK(verify_folding(g.complex, g.folding).ok);
  CHECK(check_npc(g.complex).ok);
}

TEST_CASE("two glued triangles") {
  auto k = two_triangles();
  Folding f;
  f.kind = ComplexKind::Simplicial;
  f.target_dim = 2;
  f.labels = {{0, 0}, {1, 1}, {2, 2}, {3, 0}};
  auto h = gromov_hyperbolize(k, f);
  CHECK(h.complex.count_of_dim(2) == 48);
  CHECK(check_npc(h.complex).ok);
  all_pass(k, h);
}

TEST_CASE("the hyperbolized tetrahedron boundary is a closed surface") {
  auto k = simplex_boundary(3);
  auto h = gromov_hyperbolize(k);
  CHECK(closed_surface(h.complex));
  CHECK(h.complex.count_of_dim(2) == 576);
  CHECK(h.complex.euler_characteristic() < 0);
  all_pass(k, h);
}

TEST_CASE("cone over a square") {
  auto k = cone_over_cycle(4);
  auto f = find_folding(k);
  REQUIRE(std::holds_alternative<Folding>(f));
  auto h = gromov_hyperbolize(k, std::get<Folding>(f));
  CHECK(check_npc(h.complex).ok);
  all_pass(k, h);
}

TEST_CASE("bad inputs") {
  auto k = two_triangles();
  Folding bad;
  bad.kind = ComplexKind::Simplicial;
  bad.target_dim = 2;
  bad.labels = {{0, 0}, {1, 0}, {2, 2}, {3, 1}};
  CHECK_THROWS_AS(gromov_hyperbolize(k, bad), Error);
  CHECK_THROWS_AS(gromov_hyperbolize(standard_simplex(4)), Error);
}

TEST_CASE("low-dimensional homeomorphism") {
  auto circle4 = CellComplex::from_cells(ComplexKind::Simplicial, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto circle3 = simplex_boundary(2);
  auto path = CellComplex::from_cells(ComplexKind::Simplicial, {{0, 1}, {1, 2}});
  CHECK(homeomorphic_low_dim(circle4, circle3) == std::optional<bool>(true));
  CHECK(homeomorphic_low_dim(circle4, path) == std::optional<bool>(false));
  CHECK_FALSE(homeomorphic_low_dim(standard_simplex(2), standard_simplex(2)).has_value());
}
