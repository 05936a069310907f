#include <algorithm>
#include <random>

#include "doctest.h"

#include "cubemill/complex.hpp"
#include "cubemill/errors.hpp"
#include "cubemill/fixtures.hpp"

using namespace cubemill;

namespace {

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("face counts of cubes and simplices match the binomial formulas") {
  for (int n = 0; n <= 4; ++n) {
    auto c = standard_cube(n);
    auto s = standard_simplex(n);
    for (int k = 0; k <= n; ++k) {
      CHECK(static_cast<long long>(c.count_of_dim(k)) == binomial(n, k) * (1LL << (n - k)));
      CHECK(static_cast<long long>(s.count_of_dim(k)) == binomial(n + 1, k + 1));
    }
    CHECK(c.euler_characteristic() == 1);
    CHECK(s.euler_characteristic() == 1);
  }
  CHECK(simplex_boundary(3).euler_characteristic() == 2);
  CHECK(simplex_boundary(3).boundaryless());
}

TEST_CASE("cells are sorted by dimension, then corners") {
  auto x = square_grid(2, 1);
  for (CellId c = 1; c < static_cast<CellId>(x.cell_count()); ++c) {
    CHECK(x.dim(c - 1) <= x.dim(c));
    if (x.dim(c - 1) == x.dim(c)) {
      auto a = x.corners(c - 1), b = x.corners(c);
      CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
    }
  }
}

TEST_CASE("a cube is found from any of its symmetric corner orders") {
  auto x = standard_cube(3);
  const CellId top = x.top_cells().front();
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<int, 3> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    const unsigned flip = rng() % 8;
    std::vector<VertexId> corners(8);
    for (unsigned i = 0; i < 8; ++i) {
      unsigned j = 0;
      for (int b = 0; b < 3; ++b) j |= ((i >> b) & 1u) << perm[static_cast<std::size_t>(b)];
      corners[i] = static_cast<VertexId>(j ^ flip);
    }
    auto found = x.find(corners);
    REQUIRE(found);
    CHECK(*found == top);
  }
  CHECK_FALSE(x.find(std::vector<VertexId>{0, 1, 3, 2}));  // a diagonal, not a square
}

TEST_CASE("structural errors") {
  CHECK(code_of([] { CellComplex::from_cells(ComplexKind::Cubical, {{0, 1, 1, 2}}); }) == ErrorCode::RepeatedCorner);
  CHECK(code_of([] { CellComplex::from_cells(ComplexKind::Cubical, {{0, 1, 2}}); }) == ErrorCode::BadCornerCount);
  CHECK(code_of([] {
          CellComplex::from_cells(ComplexKind::Simplicial, {{0, 1, 2}}, ClosureOptions{false});
        }) == ErrorCode::MissingFace);
  auto x = standard_cube(2);
  CHECK(code_of([&] { link(x, 99); }) == ErrorCode::CellNotFound);
}

TEST_CASE("validate_cubical rejects a non-face intersection") {
  // two squares meeting in two opposite corners of the first
  auto r = validate_cubical({{0, 1, 2, 3}, {0, 4, 5, 3}});
  CHECK_FALSE(r.report.ok);
  REQUIRE(r.report.violation);
  CHECK(*r.report.violation == ErrorCode::NonFaceIntersection);
  CHECK(r.report.offending.size() == 2);

  auto ok = validate_cubical({{0, 1, 2, 3}, {2, 3, 4, 5}});
  CHECK(ok.report.ok);
  REQUIRE(ok.complex);
  CHECK(ok.complex->count_of_dim(2) == 2);
  CHECK(ok.complex->count_of_dim(1) == 7);
}

TEST_CASE("cubes with equal vertex sets are not admissible") {
  // a square glued to itself along a twisted pair of edges, as two squares on the same four vertices
  auto x = CellComplex::from_cells(ComplexKind::Cubical, {{0, 1, 2, 3}, {0, 1, 3, 2}});
  CHECK_FALSE(check_admissible(x).ok);
}

TEST_CASE("barycentric subdivision has one top simplex per maximal chain") {
  for (int n = 1; n <= 3; ++n) {
    auto s = barycentric_subdivision(standard_simplex(n));
    long long fact = 1;
    for (int i = 2; i <= n + 1; ++i) fact *= i;
    CHECK(static_cast<long long>(s.complex.count_of_dim(n)) == fact);
    CHECK(s.complex.vertex_count() == standard_simplex(n).cell_count());
    CHECK(s.complex.euler_characteristic() == 1);
  }
  auto c = barycentric_subdivision(standard_cube(2));
  CHECK(c.complex.count_of_dim(2) == 8);
  // provenance: vertex v is cell v, origin_dim its dimension
  for (VertexId v : c.complex.vertices()) CHECK(c.origin_dim[static_cast<std::size_t>(v)] == standard_cube(2).dim(static_cast<CellId>(v)));
  auto t = barycentric_subdivision(torus_grid(4, 4));
  CHECK(t.complex.euler_characteristic() == 0);
}

TEST_CASE("cubical subdivision splits each n-cube into 2^n cubes") {
  auto x = square_grid(2, 2);
  auto q = cubical_subdivision(x);
  CHECK(q.count_of_dim(2) == 16);
  CHECK(q.vertex_count() == x.cell_count());
  CHECK(q.euler_characteristic() == x.euler_characteristic());
  auto c = cubical_subdivision(standard_cube(3));
  CHECK(c.count_of_dim(3) == 8);
  CHECK(c.vertex_count() == 27);
}

TEST_CASE("links") {
  auto t = torus_grid(4, 4);
  for (VertexId v : t.vertices()) {
    auto l = link_of_vertex(t, v).complex;
    CHECK(l.vertex_count() == 4);
    CHECK(l.count_of_dim(1) == 4);
    CHECK(l.boundaryless());
  }
  auto c = link_of_vertex(standard_cube(3), 0).complex;
  CHECK(c.dimension() == 2);
  CHECK(c.count_of_dim(2) == 1);
  auto e = link(standard_simplex(2), standard_simplex(2).cells_of_dim(1).front()).complex;
  CHECK(e.vertex_count() == 1);
}

TEST_CASE("lower and upper cells") {
  auto x = standard_cube(2);
  auto e = x.cells_of_dim(1);
  std::vector<CellId> two{e[0], e[1]};
  auto lo = lower_cell(x, two);
  auto up = upper_cell(x, two);
  REQUIRE(up);
  CHECK(x.dim(*up) == 2);
  if (lo) CHECK(x.dim(*lo) == 0);
}

TEST_CASE("isomorphism survives relabelling and separates different complexes") {
  std::mt19937 rng(3);
  auto x = torus_grid(4, 4);
  std::vector<VertexId> perm(16);
  std::iota(perm.begin(), perm.end(), 100);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::map<VertexId, VertexId> m;
  for (VertexId v = 0; v < 16; ++v) m[v] = perm[static_cast<std::size_t>(v)];
  CHECK(isomorphic(x, relabel(x, m)));
  CHECK_FALSE(isomorphic(x, square_grid(4, 4)));
  CHECK_FALSE(isomorphic(book(3), book(2)));
}

TEST_CASE("full subcomplex keeps exactly the cells on the chosen vertices") {
  auto x = square_grid(2, 2);
  std::vector<VertexId> keep{0, 1, 3, 4};
  auto s = full_subcomplex(x, keep);
  CHECK(s.count_of_dim(2) == 1);
  CHECK(s.vertex_count() == 4);
}
