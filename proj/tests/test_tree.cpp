#include "doctest.h"

#include "oracles.hpp"

#include "cubemill/errors.hpp"
#include "cubemill/fixtures.hpp"
#include "cubemill/tree.hpp"

using namespace cubemill;

TEST_CASE("trees on simply connected fixtures") {
  for (const auto& name : fixture_names()) {
    auto fx = fixture(name);
    if (!fx.simply_connected) continue;
    CAPTURE(name);
    for (const auto& t : build_trees(fx.complex, *fx.folding)) {
      CHECK(t.is_tree());
      CHECK(oracle::is_tree(static_cast<int>(t.vertex_count()), t.edges));
      CHECK(t.cycle.empty());
    }
  }
}

TEST_CASE("grid2 gives a path M-C-M-C-M") {
  auto fx = fixture("grid2");
  for (int i = 0; i < 2; ++i) {
    auto t = build_tree(fx.complex, *fx.folding, i);
    CHECK(t.mirror_ids.size() == 3);
    CHECK(t.components.size() == 2);
    CHECK(t.edges.size() == 4);
    CHECK(t.leaves.size() == 2);
    for (int leaf : t.leaves) CHECK(leaf < 3);  // both ends are mirrors
  }
}

TEST_CASE("book3 along the spine colour is a star") {
  auto fx = fixture("book3");
  auto trees = build_trees(fx.complex, *fx.folding);
  const TreeOfSpaces* spine = nullptr;
  for (const auto& t : trees)
    if (t.components.size() == 3) spine = &t;
  REQUIRE(spine);
  CHECK(spine->mirror_ids.size() == 4);
  CHECK(spine->is_tree());
  int centre = 0;
  for (const auto& nb : spine->adjacency) centre += nb.size() == 3;
  CHECK(centre == 1);
}

TEST_CASE("partition and incidence invariants") {
  for (const auto& name : fixture_names()) {
    auto fx = fixture(name);
    const auto& y = fx.complex;
    const auto ms = mirrors(y, *fx.folding);
    for (const auto& t : build_trees(y, *fx.folding)) {
      std::vector<CellId> all;
      for (const auto& c : t.components) all.insert(all.end(), c.begin(), c.end());
      std::sort(all.begin(), all.end());
      CHECK(all == y.top_cells());
      std::size_t colour = 0;
      for (const auto& m : ms) colour += m.coordinate == t.coordinate;
      CHECK(t.mirror_ids.size() == colour);
      // edges are exactly the incidences, checked by vertex containment
      const int mc = static_cast<int>(t.mirror_ids.size());
      for (int a = 0; a < mc; ++a)
        for (std::size_t k = 0; k < t.components.size(); ++k) {
          bool touches = false;
          for (CellId c : ms[static_cast<std::size_t>(t.mirror_ids[static_cast<std::size_t>(a)])].cells)
            for (CellId top : t.components[k])
              touches = touches || oracle::subset(y.vertex_set(c), y.vertex_set(top));
          const bool listed = std::binary_search(t.edges.begin(), t.edges.end(), std::pair{a, mc + static_cast<int>(k)});
          CHECK(touches == listed);
        }
    }
  }
}

TEST_CASE("torus trees have cycles") {
  auto fx = fixture("torus4");
  for (const auto& t : build_trees(fx.complex, *fx.folding)) {
    CHECK_FALSE(t.acyclic);
    CHECK(t.connected);
    REQUIRE(t.cycle.size() >= 4);
    for (std::size_t i = 0; i < t.cycle.size(); ++i) {
      const auto& nb = t.adjacency[static_cast<std::size_t>(t.cycle[i])];
      CHECK(std::binary_search(nb.begin(), nb.end(), t.cycle[(i + 1) % t.cycle.size()]));
    }
  }
}

TEST_CASE("closed sphere fixture has no leaves") {
  auto fx = fixture("sphere");
  for (const auto& t : build_trees(fx.complex, *fx.folding)) CHECK(t.leafless);
}

TEST_CASE("coordinate out of range") {
  auto fx = fixture("sq1");
  CHECK_THROWS_AS(build_tree(fx.complex, *fx.folding, 2), Error);
}
