#include "cubemill/curvature.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "cubemill/parallel.hpp"

namespace cubemill {

FlagCheck is_flag(const CellComplex& l) {
  FlagCheck out;
  const int top = l.dimension();
  // a smallest non-spanning clique is a minimal non-face: all its facets are
  // simplices. It has at most dim + 2 vertices.
  for (int size = 3; size <= top + 2; ++size) {
    for (CellId a : l.cells_of_dim(size - 2)) {
      auto base = l.vertex_set(a);
      for (VertexId v : l.vertices()) {
        if (v <= base.back()) continue;
        std::vector<VertexId> s(base.begin(), base.end());
        s.push_back(v);
        bool facets = true;
        for (std::size_t drop = 0; drop + 1 < s.size() && facets; ++drop) {
          std::vector<VertexId> f = s;
          f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
          facets = l.find_by_vertices(f).has_value();
        }
        if (facets && !l.find_by_vertices(s)) {
          out.flag = false;
          out.witness = std::move(s);
          return out;
        }
      }
    }
  }
  return out;
}

NpcCheck check_npc(const CellComplex& x) {
  const auto verts = x.vertices();
  std::vector<FlagCheck> results(verts.size());
  parallel_for(verts.size(), [&](std::size_t i) { results[i] = is_flag(link_of_vertex(x, verts[i]).complex); });
  NpcCheck out;
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (!results[i].flag) {
      out.ok = false;
      out.vertex = verts[i];
      out.clique = results[i].witness;
      break;
    }
  return out;
}

std::vector<Hyperplane> hyperplanes(const CellComplex& x) {
  const EdgeClasses classes = parallelism_classes(x);
  std::vector<Hyperplane> out;
  for (std::size_t i = 0; i < classes.edges.size(); ++i) {
    Hyperplane h;
    h.id = static_cast<int>(i);
    h.edges = classes.edges[i];
    std::set<CellId> carrier;
    for (CellId e : h.edges)
      for (CellId c : x.up_set(e)) carrier.insert(c);
    h.carrier.assign(carrier.begin(), carrier.end());
    out.push_back(std::move(h));
  }
  return out;
}

namespace {

CellId edge_between(const CellComplex& x, VertexId a, VertexId b) {
  return *x.find(std::vector<VertexId>{a, b});
}

std::optional<CellId> common_square(const CellComplex& x, CellId e1, CellId e2) {
  for (CellId s : x.cofaces(e1))
    if (x.dim(s) == 2) {
      auto f = x.faces(s);
      if (std::find(f.begin(), f.end(), e2) != f.end()) return s;
    }
  return std::nullopt;
}

struct SquareClasses {
  int a, b;  // classes of the two opposition pairs
};

SquareClasses square_classes(const CellComplex& x, const EdgeClasses& classes, CellId s) {
  auto c = x.corners(s);
  return {classes.class_of[edge_between(x, c[0], c[1])], classes.class_of[edge_between(x, c[0], c[2])]};
}

}  // namespace

PathologyReport check_special(const CellComplex& x) {
  PathologyReport r;
  const EdgeClasses classes = parallelism_classes(x);
  // least square where two classes cross
  std::map<std::pair<int, int>, CellId> crossing;
  for (CellId s : x.cells_of_dim(2)) {
    auto [a, b] = square_classes(x, classes, s);
    if (a == b) {
      r.self_intersections.push_back({a, s});
      continue;
    }
    crossing.try_emplace({std::min(a, b), std::max(a, b)}, s);
  }
  for (VertexId v : x.vertices()) {
    std::vector<CellId> incident;
    for (CellId c : x.star(v))
      if (x.dim(c) == 1) incident.push_back(c);
    for (std::size_t i = 0; i < incident.size(); ++i)
      for (std::size_t j = i + 1; j < incident.size(); ++j) {
        const CellId e1 = incident[i], e2 = incident[j];
        if (common_square(x, e1, e2)) continue;
        const int h1 = classes.class_of[e1], h2 = classes.class_of[e2];
        if (h1 == h2) {
          r.self_osculations.push_back({h1, v, e1, e2});
          continue;
        }
        auto it = crossing.find({std::min(h1, h2), std::max(h1, h2)});
        if (it == crossing.end()) continue;
        InterOsculation w;
        w.first = h1;
        w.second = h2;
        w.vertex = v;
        w.first_edge = e1;
        w.second_edge = e2;
        w.crossing_square = it->second;
        r.inter_osculations.push_back(w);
      }
  }
  return r;
}

bool confirm(const CellComplex& x, const SelfIntersection& w) {
  const EdgeClasses classes = parallelism_classes(x);
  if (x.dim(w.square) != 2) return false;
  auto [a, b] = square_classes(x, classes, w.square);
  return a == b && a == w.hyperplane;
}

namespace {

bool osculating_pair(const CellComplex& x, VertexId v, CellId e1, CellId e2) {
  if (e1 == e2 || x.dim(e1) != 1 || x.dim(e2) != 1) return false;
  auto has = [&](CellId e) {
    auto vs = x.vertex_set(e);
    return std::find(vs.begin(), vs.end(), v) != vs.end();
  };
  return has(e1) && has(e2) && !common_square(x, e1, e2);
}

}  // namespace

bool confirm(const CellComplex& x, const SelfOsculation& w) {
  const EdgeClasses classes = parallelism_classes(x);
  return osculating_pair(x, w.vertex, w.first, w.second) && classes.class_of[w.first] == w.hyperplane &&
         classes.class_of[w.second] == w.hyperplane;
}

bool confirm(const CellComplex& x, const InterOsculation& w) {
  const EdgeClasses classes = parallelism_classes(x);
  if (!osculating_pair(x, w.vertex, w.first_edge, w.second_edge)) return false;
  if (classes.class_of[w.first_edge] != w.first || classes.class_of[w.second_edge] != w.second) return false;
  if (x.dim(w.crossing_square) != 2) return false;
  auto [a, b] = square_classes(x, classes, w.crossing_square);
  return (a == w.first && b == w.second) || (a == w.second && b == w.first);
}

bool mirror_carries_hyperplane_side(const CellComplex& x, const Folding& f, const Mirror& m,
                                    const Hyperplane& h) {
  if (h.edges.empty()) return true;
  const auto e0 = x.corners(h.edges.front());
  const std::uint32_t coord = f.label(e0[0]) ^ f.label(e0[1]);
  const int i = std::countr_zero(coord);
  // sides are the codimension-one faces of the top carrier cubes
  std::set<CellId> side[2];
  for (CellId c : h.carrier) {
    auto cs = x.corners(c);
    const int d = x.dim(c);
    if (d != x.dimension()) continue;
    for (int j = 0; j < d; ++j) {
      const auto a = cs[0], b = cs[std::size_t{1} << j];
      if ((f.label(a) ^ f.label(b)) != coord) continue;
      if (!std::binary_search(h.edges.begin(), h.edges.end(), edge_between(x, a, b))) continue;
      const unsigned all = (1u << d) - 1;
      for (unsigned eps = 0; eps < 2; ++eps) {
        auto face = x.find(cube::face(cs, all ^ (1u << j), eps << j));
        const int value = static_cast<int>(f.label(x.corners(*face)[0]) >> i & 1);
        side[value].insert(*face);
      }
    }
  }
  for (auto& s : side) {
    std::size_t inside = 0;
    for (CellId c : s) inside += m.contains(c) ? 1 : 0;
    if (inside != 0 && inside != s.size()) return false;
  }
  return true;
}

}  // namespace cubemill
