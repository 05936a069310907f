// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failing criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"

#include "cubemill/curvature.hpp"
#include "cubemill/dual.hpp"
#include "cubemill/errors.hpp"
#include "cubemill/fixtures.hpp"
#include "cubemill/folding.hpp"
#include "cubemill/gromov.hpp"
#include "cubemill/io.hpp"
#include "cubemill/paths.hpp"
#include "cubemill/tree.hpp"

using namespace cubemill;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail << "first failure: " << what << "; ";
    pass = false;
  }
};

int failures = 0;

void report(int n, Verdict& v, Clock::time_point start, double budget) {
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (budget > 0) v.require(secs < budget, "runtime over budget");
  std::printf("criterion %d: %s (%.2fs) %s\n", n, v.pass ? "PASS" : "FAIL", secs, v.detail.str().c_str());
  std::fflush(stdout);
  failures += !v.pass;
}

std::vector<std::string> simply_connected() {
  std::vector<std::string> out;
  for (const auto& n : fixture_names())
    if (fixture(n).simply_connected) out.push_back(n);
  return out;
}

DualComplex dual_of(const Fixture& fx) { return DualComplex::build(fx.complex, *fx.folding); }

void criterion1() {
  const auto start = Clock::now();
  Verdict v;
  std::mt19937_64 rng(1);
  int agree = 0, bip = 0;
  for (int g = 0; g < 200; ++g) {
    const int n = 2 + static_cast<int>(rng() % 29);
    std::set<std::pair<int, int>> es;
    const int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(2 * n));
    while (es.empty())
      for (int i = 0; i < m; ++i) {
        int a = static_cast<int>(rng() % static_cast<unsigned>(n)), b = static_cast<int>(rng() % static_cast<unsigned>(n));
        if (a != b) es.insert(std::minmax(a, b));
      }
    std::vector<std::pair<int, int>> edges(es.begin(), es.end());
    std::vector<std::vector<VertexId>> cells;
    for (auto [a, b] : edges) cells.push_back({a, b});
    auto k = CellComplex::from_cells(ComplexKind::Simplicial, cells);
    const bool found = std::holds_alternative<Folding>(find_folding(k));
    const bool oracle = oracle::bipartite(edges, n);
    bip += oracle;
    if (found == oracle) ++agree;
    else v.require(false, "graph " + std::to_string(g) + " disagrees with two-colouring");
  }
  for (int m = 2; m <= 8; ++m) {
    const bool folds = std::holds_alternative<Folding>(find_folding(rose(m)));
    v.require(folds == (m % 2 == 0), "rose R_" + std::to_string(m));
  }
  v.detail << agree << "/200 graphs agree (" << bip << " bipartite); roses R_2..R_8 foldable iff m even";
  report(1, v, start, 5);
}

void criterion2() {
  const auto start = Clock::now();
  Verdict v;
  const auto& g1 = gromov_cell(1);
  v.require(g1.complex.dimension() == 1 && g1.complex.count_of_dim(1) == 1 && g1.complex.vertex_count() == 2,
            "G(edge) is not one edge");
  const auto& g2 = gromov_cell(2);
  const auto squares = g2.complex.count_of_dim(2);
  v.require(squares == 12, "G(triangle) has " + std::to_string(squares) + " squares, expected 12");
  v.require(verify_folding(g2.complex, g2.folding).ok, "G(triangle) folding");
  v.require(check_npc(g2.complex).ok, "G(triangle) not NPC");

  Folding tf;
  tf.kind = ComplexKind::Simplicial;
  tf.target_dim = 2;
  tf.labels = {{0, 0}, {1, 1}, {2, 2}, {3, 0}};
  auto cone = cone_over_cycle(4);
  struct Input {
    std::string name;
    CellComplex k;
    std::optional<Folding> f;
  };
  std::vector<Input> inputs{{"two-triangles", two_triangles(), tf},
                            {"tetrahedron-boundary", simplex_boundary(3), std::nullopt},
                            {"cone", cone, std::get<Folding>(find_folding(cone))}};
  int links = 0;
  for (const auto& in : inputs) {
    auto h = gromov_hyperbolize(in.k, in.f);
    auto r = verify_gromov_properties(in.k, h);
    for (const auto& e : r.entries) {
      v.require(e.status != PropertyEntry::Status::Fail, in.name + " " + e.name + " " + e.detail);
      links += e.name == "link-preservation" && e.status == PropertyEntry::Status::Pass;
    }
    v.require(check_npc(h.complex).ok, in.name + " not NPC");
  }
  v.detail << "G(triangle): " << squares << " squares, foldable, NPC; property reports pass on 3 inputs ("
           << links << " with link preservation)";
  report(2, v, start, 30);
}

void criterion3() {
  const auto start = Clock::now();
  Verdict v;
  std::size_t checked = 0;
  for (const auto& name : {"sq1", "grid2", "book3", "cube1", "gdelta2"}) {
    auto fx = fixture(name);
    auto d = dual_of(fx);
    auto r = verify_dual_axioms(d);
    for (const auto& c : r.checks) {
      v.require(c.ok, std::string(name) + " " + c.name + " " + c.witness);
      checked += c.checked;
    }
    v.require(d.dimension() == fx.complex.dimension(), std::string(name) + " dimension");
  }
  v.detail << "5 fixtures, " << checked << " cell and link checks";
  report(3, v, start, 60);
}

void criterion4() {
  const auto start = Clock::now();
  Verdict v;
  int mirrors_seen = 0;
  for (const auto& name : simply_connected()) {
    auto fx = fixture(name);
    auto d = dual_of(fx);
    for (const auto& m : d.mirrors()) {
      ++mirrors_seen;
      auto sep = mirror_separates(fx.complex, m);
      v.require(sep.all_separated(), name + " mirror " + std::to_string(m.id) + " fails a framing");
      auto dm = dual_mirror(d, m.id);
      v.require(dm.component_count == sep.component_count && dm.agrees,
                name + " mirror " + std::to_string(m.id) + " component counts differ");
    }
  }
  auto fx = fixture("book3");
  auto d = dual_of(fx);
  const CellId spine = *fx.complex.find_by_vertices(std::vector<VertexId>{0, 1});
  int spine_components = -1;
  for (const auto& m : d.mirrors())
    if (m.contains(spine)) spine_components = dual_mirror(d, m.id).component_count;
  v.require(spine_components == 3, "book3 spine gives " + std::to_string(spine_components) + " components");
  v.detail << mirrors_seen << " mirrors separate with matching counts; book3 spine components " << spine_components;
  report(4, v, start, 0);
}

// Random walk, avoiding immediate reversal when it can, closed up by a BFS
// path back to the start.
EdgePath fuzz_loop(const DualComplex& d, std::mt19937_64& rng, std::size_t max_length) {
  EdgePath p{{static_cast<VertexId>(rng() % d.vertex_count())}};
  const std::size_t steps = 1 + rng() % (max_length / 2);
  for (std::size_t i = 0; i < steps; ++i) {
    auto nb = d.neighbours(p.v.back());
    if (p.v.size() > 1 && nb.size() > 1) nb.erase(std::find(nb.begin(), nb.end(), p.v[p.v.size() - 2]));
    p.v.push_back(nb[rng() % nb.size()]);
  }
  std::map<VertexId, VertexId> parent{{p.v.front(), p.v.front()}};
  std::deque<VertexId> q{p.v.front()};
  while (!q.empty()) {
    auto x = q.front();
    q.pop_front();
    for (auto w : d.neighbours(x))
      if (parent.emplace(w, x).second) q.push_back(w);
  }
  for (VertexId x = p.v.back(); x != p.v.front();) p.v.push_back(x = parent.at(x));
  return p;
}

void check_tree(const DualComplex& d, const ContractionNode& node, Verdict& v, int& surgeries) {
  if (!node.split) return;
  ++surgeries;
  for (const auto& c : node.children)
    v.require(c.loop.length() < node.loop.length(), "surgery half not shorter on " + format_path(node.loop));
  auto s = surgery_step(d, node.loop);
  v.require(s.projection.v.front() == s.bridge.path.v.front() && s.projection.v.back() == s.bridge.path.v.back(),
            "projection moved an endpoint");
  v.require(s.projection.length() + 2 <= s.bridge.path.length(), "projection dropped less than 2");
  for (const auto& c : node.children) check_tree(d, c, v, surgeries);
}

void criterion5() {
  const auto start = Clock::now();
  Verdict v;
  std::mt19937_64 rng(20241019);
  int loops = 0, short_loops = 0, short_bad = 0, short_reduced_bad = 0, surgeries = 0;
  std::string short_example;
  for (const auto& name : simply_connected()) {
    auto fx = fixture(name);
    auto d = dual_of(fx);
    oracle::NullHomotopy nh(d);
    for (int i = 0; i < 1000; ++i) {
      auto loop = fuzz_loop(d, rng, 12);
      ++loops;
      v.require(loop.length() <= 12 && loop.length() % 2 == 0, "odd or long loop");
      if (loop.length() <= 4) {
        ++short_loops;
        const bool ok = crossing_profile(d, loop).total == 0 && oracle::in_some_tile(d, loop);
        if (!ok) {
          ++short_bad;
          if (short_example.empty()) short_example = name + " " + format_path(loop);
          const std::size_t s = loop.length();
          bool reduced = true;
          for (std::size_t j = 0; j < s; ++j) reduced = reduced && loop.v[(j + s - 1) % s] != loop.v[(j + 1) % s];
          short_reduced_bad += reduced;
        }
      }
      try {
        auto tree = contract_loop(d, loop);
        v.require(verify_contraction(d, tree), "certificate does not replay");
        v.require(tree.depth() <= loop.length() + 1, "recursion deeper than the length");
        check_tree(d, tree, v, surgeries);
      } catch (const Error& e) {
        v.require(false, std::string("contract_loop threw ") + e.what());
      }
      v.require(nh.null_homotopic(loop), "oracle cannot contract " + format_path(loop));
    }
  }
  const bool rest = v.pass;
  v.require(short_bad == 0, std::to_string(short_bad) + " loops of length <= 4 cross a mirror and leave every tile");
  v.detail << loops << " loops, " << surgeries << " surgeries, all contracted and verified"
           << (rest ? "" : " NOT") << "; " << short_loops << " of length <= 4, " << short_bad
           << " cross a mirror (" << short_reduced_bad << " without backtracking)";
  if (!short_example.empty()) v.detail << ", e.g. " << short_example;
  report(5, v, start, 120);
}

void criterion6() {
  const auto start = Clock::now();
  Verdict v;
  auto fx = fixture("torus4");
  auto d = dual_of(fx);
  const auto& y = fx.complex;
  EdgePath meridian;
  for (int i = 0; i < 4; ++i) {
    const VertexId a = 4 * i, b = 4 * ((i + 1) % 4);
    meridian.v.push_back(*y.vertex_cell(a));
    meridian.v.push_back(*y.find_by_vertices(std::vector<VertexId>{std::min(a, b), std::max(a, b)}));
  }
  meridian.v.push_back(meridian.v.front());
  v.require(valid_path(d, meridian) && meridian.is_loop(), "meridian is not a loop");
  std::string message;
  try {
    contract_loop(d, meridian);
    v.require(false, "contract_loop accepted the torus");
  } catch (const Error& e) {
    message = e.what();
    v.require(e.code() == ErrorCode::Unsupported, std::string("wrong refusal ") + e.what());
  }
  int mirror = -1;
  for (VertexId x : meridian.v)
    for (int m : d.mirrors_containing(static_cast<CellId>(x)))
      if (mirror < 0 && !d.mirror_separating(m)) mirror = m;
  v.require(mirror >= 0, "the meridian touches no non-separating mirror");
  try {
    crossings(d, meridian, std::max(mirror, 0));
    v.require(false, "crossings accepted a non-separating mirror");
  } catch (const Error& e) {
    v.require(e.code() == ErrorCode::NonSeparatingMirror, std::string("wrong error ") + e.what());
  }
  v.detail << "\"" << message << "\"; crossings on mirror " << mirror << " raise NonSeparatingMirror";
  report(6, v, start, 0);
}

void criterion7() {
  const auto start = Clock::now();
  Verdict v;
  int trees = 0;
  for (const auto& name : simply_connected()) {
    auto fx = fixture(name);
    for (const auto& t : build_trees(fx.complex, *fx.folding)) {
      ++trees;
      v.require(t.connected && t.acyclic, name + " coordinate " + std::to_string(t.coordinate) + " is not a tree");
      v.require(oracle::is_tree(static_cast<int>(t.vertex_count()), t.edges) == (t.connected && t.acyclic),
                "tree verdict disagrees with |E| = |V| - 1");
    }
  }
  auto torus = fixture("torus4");
  bool torus_cycle = false;
  for (const auto& t : build_trees(torus.complex, *torus.folding)) torus_cycle = torus_cycle || !t.acyclic;
  v.require(torus_cycle, "torus4 has no cycle");
  auto sphere = fixture("sphere");
  std::size_t leaves = 0;
  for (const auto& t : build_trees(sphere.complex, *sphere.folding)) leaves += t.leaves.size();
  v.require(leaves == 0, "sphere has " + std::to_string(leaves) + " leaves");
  v.detail << trees << " trees on simply connected fixtures; torus4 cycle found; sphere leaves " << leaves;
  report(7, v, start, 0);
}

void criterion8() {
  const auto start = Clock::now();
  Verdict v;
  std::size_t pathologies = 0, hyperplanes_seen = 0;
  for (const auto& name : simply_connected()) {
    auto fx = fixture(name);
    if (!check_admissible(fx.complex).ok) continue;
    auto r = check_special(fx.complex);
    pathologies += r.self_intersections.size() + r.self_osculations.size() + r.inter_osculations.size();
    v.require(r.clean(), name + " has pathologies");
  }
  for (const auto& name : fixture_names()) {
    auto fx = fixture(name);
    for (const auto& h : hyperplanes(fx.complex)) {
      ++hyperplanes_seen;
      std::set<unsigned> dirs;
      for (CellId e : h.edges) {
        auto c = fx.complex.corners(e);
        dirs.insert(fx.folding->label(c[0]) ^ fx.folding->label(c[1]));
      }
      v.require(dirs.size() == 1, name + " hyperplane " + std::to_string(h.id) + " mixes coordinates");
    }
  }
  v.detail << pathologies << " pathologies; " << hyperplanes_seen << " hyperplanes each on one coordinate";
  report(8, v, start, 0);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  return failures;
}
