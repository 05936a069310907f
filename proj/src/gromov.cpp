#include "cubemill/gromov.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <map>
#include <mutex>
#include <set>

#include "cubemill/curvature.hpp"

namespace cubemill {

namespace {

// Number of edges in the cylinder factor. With two edges the cubes over U on
// either side of the slit would share their vertex sets, so the interval is
// cut into four.
constexpr int kIntervalEdges = 4;

std::uint32_t swap01(std::uint32_t m) {
  const std::uint32_t b0 = m & 1u, b1 = (m >> 1) & 1u;
  return (m & ~3u) | (b0 << 1) | b1;
}

GromovCell build_point() {
  GromovCell g;
  g.n = 0;
  g.complex = CellComplex::from_cells(ComplexKind::Cubical, {{0}});
  g.vertex_label = {1};
  g.cell_label = {1};
  g.folding.kind = ComplexKind::Cubical;
  g.folding.target_dim = 0;
  g.folding.labels[0] = 0;
  return g;
}

GromovCell build_edge() {
  GromovCell g;
  g.n = 1;
  g.complex = CellComplex::from_cells(ComplexKind::Cubical, {{0, 1}});
  g.vertex_label = {1, 2};
  g.cell_label.resize(g.complex.cell_count());
  for (CellId c = 0; c < static_cast<CellId>(g.complex.cell_count()); ++c) {
    std::uint32_t m = 0;
    for (VertexId v : g.complex.corners(c)) m |= g.vertex_label[static_cast<std::size_t>(v)];
    g.cell_label[c] = m;
  }
  g.folding.kind = ComplexKind::Cubical;
  g.folding.target_dim = 1;
  g.folding.labels = {{0, 0}, {1, 1}};
  return g;
}

GromovCell build_cylinder(int n) {
  GromovCell g;
  g.n = n;
  g.interval_edges = kIntervalEdges;
  const CellComplex bd = simplex_boundary(n);
  const Subdivision sd = barycentric_subdivision(bd);
  const Folding fb = canonical_barsub_folding(sd);
  auto boundary = std::make_shared<HyperbolizedComplex>(gromov_hyperbolize(sd.complex, fb));
  const HyperbolizedComplex& b = *boundary;
  const CellComplex& sdc = *b.source;
  const auto vb = b.complex.vertex_count();

  std::vector<std::uint32_t> face_mask(bd.cell_count());
  for (CellId c = 0; c < static_cast<CellId>(bd.cell_count()); ++c)
    for (VertexId v : bd.vertex_set(c)) face_mask[c] |= 1u << v;
  auto face_of_mask = [&](std::uint32_t m) {
    std::vector<VertexId> vs;
    for (int v = 0; v <= n; ++v)
      if (m >> v & 1) vs.push_back(v);
    return *bd.find_by_vertices(vs);
  };
  // V-open faces contain 1 but not 0; their mirror images are U-open
  auto v_open = [](std::uint32_t m) { return (m >> 1 & 1) && !(m & 1); };
  auto u_open = [](std::uint32_t m) { return (m & 1) && !(m >> 1 & 1); };

  // reflection on subdivision cells (chains of faces)
  auto reflect_chain = [&](CellId tau) {
    std::vector<VertexId> image;
    for (VertexId f : sdc.vertex_set(tau)) image.push_back(face_of_mask(swap01(face_mask[static_cast<std::size_t>(f)])));
    std::sort(image.begin(), image.end());
    return *sdc.find_by_vertices(image);
  };
  std::map<std::pair<CellId, VertexId>, VertexId> id_of;
  for (VertexId v = 0; v < static_cast<VertexId>(vb); ++v) id_of[b.vertex_origin[static_cast<std::size_t>(v)]] = v;

  std::vector<std::uint32_t> carrier(vb);
  std::vector<char> u_closed(vb), v_closed(vb);
  g.reflection.resize(vb);
  for (std::size_t v = 0; v < vb; ++v) {
    auto [tau, w] = b.vertex_origin[v];
    bool has_v_open = false, has_u_open = false;
    for (VertexId f : sdc.vertex_set(tau)) {
      const auto m = face_mask[static_cast<std::size_t>(f)];
      carrier[v] |= m;
      has_v_open |= v_open(m);
      has_u_open |= u_open(m);
    }
    u_closed[v] = !has_v_open;
    v_closed[v] = !has_u_open;
    g.reflection[v] = id_of.at({reflect_chain(tau), w});
  }

  const auto& bc = b.complex;
  auto all_vertices = [&](CellId c, auto pred) {
    auto vs = bc.vertex_set(c);
    return std::all_of(vs.begin(), vs.end(), [&](VertexId v) { return pred(static_cast<std::size_t>(v)); });
  };
  std::vector<CellId> half_v;
  for (CellId c = 0; c < static_cast<CellId>(bc.cell_count()); ++c) {
    const bool in_u = all_vertices(c, [&](std::size_t v) { return u_closed[v] != 0; });
    const bool in_v = all_vertices(c, [&](std::size_t v) { return v_closed[v] != 0; });
    const bool fixed = all_vertices(c, [&](std::size_t v) { return g.reflection[v] == static_cast<VertexId>(v); });
    if (in_u) g.half_u.push_back(c);
    if (in_v) half_v.push_back(c);
    if (fixed) g.fixed.push_back(c);
    if (!in_u && !in_v) fail(ErrorCode::Internal, "cell outside both halves");
    if ((in_u && in_v) != fixed) fail(ErrorCode::Internal, "halves do not meet in the fixed subcomplex");
    // σ(U) = V
    std::vector<VertexId> image;
    for (VertexId v : bc.corners(c)) image.push_back(g.reflection[static_cast<std::size_t>(v)]);
    auto ic = bc.find(image);
    if (!ic) fail(ErrorCode::Internal, "reflection is not a cellular map");
    const bool image_in_v = all_vertices(*ic, [&](std::size_t v) { return v_closed[v] != 0; });
    if (in_u != image_in_v) fail(ErrorCode::Internal, "reflection does not exchange the halves");
  }

  // cylinder vertices (v, t), t in [-h, h], with (u, h) ~ (u, -h) for u in U
  const int h = kIntervalEdges / 2;
  std::vector<std::vector<VertexId>> vid(vb, std::vector<VertexId>(kIntervalEdges + 1));
  VertexId next = 0;
  for (std::size_t v = 0; v < vb; ++v)
    for (int t = h; t >= -h; --t) {
      if (t == -h && u_closed[v]) {
        vid[v][0] = vid[v][kIntervalEdges];
        continue;
      }
      vid[v][static_cast<std::size_t>(t + h)] = next++;
    }
  g.vertex_label.assign(static_cast<std::size_t>(next), (1u << (n + 1)) - 1);
  g.folding.kind = ComplexKind::Cubical;
  g.folding.target_dim = n;
  for (std::size_t v = 0; v < vb; ++v)
    for (int t = -h; t <= h; ++t) {
      const VertexId id = vid[v][static_cast<std::size_t>(t + h)];
      const std::uint32_t parity = static_cast<std::uint32_t>(((t % 2) + 2) % 2);
      g.folding.labels[id] = b.folding.label(static_cast<VertexId>(v)) | (parity << (n - 1));
      if (!v_closed[v]) continue;
      if (t == h) g.vertex_label[static_cast<std::size_t>(id)] = carrier[v];
      if (t == -h && !u_closed[v]) g.vertex_label[static_cast<std::size_t>(id)] = swap01(carrier[v]);
    }

  std::vector<std::vector<VertexId>> cubes;
  for (CellId c : bc.maximal_cells()) {
    auto cs = bc.corners(c);
    for (int t = 0; t < kIntervalEdges; ++t) {
      std::vector<VertexId> cube;
      for (VertexId v : cs) cube.push_back(vid[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)]);
      for (VertexId v : cs) cube.push_back(vid[static_cast<std::size_t>(v)][static_cast<std::size_t>(t + 1)]);
      cubes.push_back(std::move(cube));
    }
  }
  g.complex = CellComplex::from_cells(ComplexKind::Cubical, std::move(cubes));
  const std::uint32_t interior = g.interior_label();
  g.cell_label.resize(g.complex.cell_count());
  for (CellId c = 0; c < static_cast<CellId>(g.complex.cell_count()); ++c) {
    std::uint32_t m = 0;
    bool boundary_cell = true;
    for (VertexId v : g.complex.corners(c)) {
      const auto l = g.vertex_label[static_cast<std::size_t>(v)];
      if (l == interior) boundary_cell = false;
      m |= l;
    }
    g.cell_label[c] = boundary_cell ? m : interior;
  }
  g.boundary = std::move(boundary);
  return g;
}

}  // namespace

CellComplex GromovCell::face_subcomplex(std::uint32_t face) const {
  std::vector<std::vector<VertexId>> cells;
  for (CellId c = 0; c < static_cast<CellId>(complex.cell_count()); ++c)
    if ((cell_label[c] & ~face) == 0) cells.emplace_back(complex.corners(c).begin(), complex.corners(c).end());
  return CellComplex::from_cells(ComplexKind::Cubical, std::move(cells));
}

const GromovCell& gromov_cell(int n) {
  if (n < 0 || n > 3) fail(ErrorCode::UnsupportedDimension, "G(Δ^" + std::to_string(n) + ") is outside 0..3");
  static std::array<std::once_flag, 4> once;
  static std::array<std::unique_ptr<GromovCell>, 4> cache;
  std::call_once(once[static_cast<std::size_t>(n)], [n] {
    GromovCell g = n == 0 ? build_point() : n == 1 ? build_edge() : build_cylinder(n);
    cache[static_cast<std::size_t>(n)] = std::make_unique<GromovCell>(std::move(g));
  });
  return *cache[static_cast<std::size_t>(n)];
}

std::optional<VertexId> HyperbolizedComplex::vertex_over(VertexId source_vertex) const {
  auto cell = source->vertex_cell(source_vertex);
  if (!cell) return std::nullopt;
  const std::uint32_t want = 1u << source_folding.label(source_vertex);
  const GromovCell& g = gromov_cell(n);
  for (std::size_t v = 0; v < vertex_origin.size(); ++v)
    if (vertex_origin[v].first == *cell && g.vertex_label[static_cast<std::size_t>(vertex_origin[v].second)] == want)
      return static_cast<VertexId>(v);
  return std::nullopt;
}

HyperbolizedComplex gromov_hyperbolize(const CellComplex& k, const std::optional<Folding>& f) {
  if (k.cubical()) fail(ErrorCode::InvalidArgument, "hyperbolization takes a simplicial complex");
  HyperbolizedComplex out;
  if (f) {
    if (f->kind != ComplexKind::Simplicial || !verify_folding(k, *f).ok)
      fail(ErrorCode::NotFoldable, "the supplied folding is not a folding of the input");
    out.source = std::make_shared<CellComplex>(k);
    out.source_folding = *f;
  } else {
    Subdivision sd = barycentric_subdivision(k);
    out.source_folding = canonical_barsub_folding(sd);
    out.source = std::make_shared<CellComplex>(std::move(sd.complex));
  }
  const CellComplex& src = *out.source;
  const Folding& fold = out.source_folding;
  out.n = std::max(src.dimension(), 0);
  if (out.n > 3) fail(ErrorCode::UnsupportedDimension, "input dimension above 3");
  out.folding.kind = ComplexKind::Cubical;
  out.folding.target_dim = out.n;
  if (src.empty()) {
    out.complex = CellComplex::from_cells(ComplexKind::Cubical, {});
    return out;
  }
  const GromovCell& g = gromov_cell(out.n);

  auto label_mask = [&](CellId c) {
    std::uint32_t m = 0;
    for (VertexId v : src.vertex_set(c)) m |= 1u << fold.label(v);
    return m;
  };
  auto face_with_labels = [&](CellId sigma, std::uint32_t labels) {
    std::vector<VertexId> vs;
    for (VertexId v : src.vertex_set(sigma))
      if (labels >> fold.label(v) & 1) vs.push_back(v);
    return *src.find_by_vertices(vs);
  };

  const auto maximal = src.maximal_cells();
  std::map<std::pair<CellId, VertexId>, VertexId> ids;
  for (CellId sigma : maximal) {
    const auto m = label_mask(sigma);
    for (CellId c = 0; c < static_cast<CellId>(g.complex.cell_count()); ++c) {
      if ((g.cell_label[c] & ~m) != 0 || g.complex.dim(c) != 0) continue;
      const VertexId w = g.complex.corners(c)[0];
      ids.emplace(std::make_pair(face_with_labels(sigma, g.vertex_label[static_cast<std::size_t>(w)]), w), 0);
    }
  }
  VertexId next = 0;
  for (auto& [key, id] : ids) {
    id = next++;
    out.vertex_origin.push_back(key);
  }

  std::map<std::vector<VertexId>, std::vector<TileEntry>> entries;
  for (CellId sigma : maximal) {
    const auto m = label_mask(sigma);
    for (CellId c = 0; c < static_cast<CellId>(g.complex.cell_count()); ++c) {
      if ((g.cell_label[c] & ~m) != 0) continue;
      std::vector<VertexId> corners;
      for (VertexId w : g.complex.corners(c))
        corners.push_back(ids.at({face_with_labels(sigma, g.vertex_label[static_cast<std::size_t>(w)]), w}));
      entries[cube::canonical(corners)].push_back({sigma, c});
    }
  }
  std::vector<std::vector<VertexId>> cells;
  for (auto& [corners, e] : entries) cells.push_back(corners);
  out.complex = CellComplex::from_cells(ComplexKind::Cubical, std::move(cells));
  out.tiles.resize(out.complex.cell_count());
  for (auto& [corners, e] : entries) out.tiles[*out.complex.find(corners)] = e;
  for (std::size_t v = 0; v < out.vertex_origin.size(); ++v)
    out.folding.labels[static_cast<VertexId>(v)] = g.folding.label(out.vertex_origin[v].second);
  return out;
}

const char* to_string(PropertyEntry::Status s) {
  switch (s) {
    case PropertyEntry::Status::Pass: return "pass";
    case PropertyEntry::Status::Fail: return "FAIL";
    case PropertyEntry::Status::NotApplicable: return "n/a";
  }
  return "?";
}

bool GromovReport::all_applicable_pass() const {
  return std::none_of(entries.begin(), entries.end(),
                      [](const PropertyEntry& e) { return e.status == PropertyEntry::Status::Fail; });
}

namespace {

struct Multigraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  int circles = 0;
};

Multigraph reduce(const CellComplex& k) {
  std::map<VertexId, int> index;
  for (VertexId v : k.vertices()) index.emplace(v, static_cast<int>(index.size()));
  std::vector<std::pair<int, int>> edges;
  for (CellId e : k.cells_of_dim(1)) edges.emplace_back(index[k.corners(e)[0]], index[k.corners(e)[1]]);
  std::vector<char> alive(index.size(), 1);
  Multigraph g;
  for (bool changed = true; changed;) {
    changed = false;
    for (int v = 0; v < static_cast<int>(alive.size()); ++v) {
      if (!alive[v]) continue;
      std::vector<std::size_t> at;
      int degree = 0;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].first == v) ++degree;
        if (edges[i].second == v) ++degree;
        if (edges[i].first == v || edges[i].second == v) at.push_back(i);
      }
      if (degree != 2) continue;
      if (at.size() == 1) {  // a loop on its own: a circle component
        ++g.circles;
      } else {
        const auto e1 = edges[at[0]], e2 = edges[at[1]];
        const int a = e1.first == v ? e1.second : e1.first;
        const int b = e2.first == v ? e2.second : e2.first;
        edges.emplace_back(a, b);
      }
      for (auto it = at.rbegin(); it != at.rend(); ++it) edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(*it));
      alive[v] = 0;
      changed = true;
    }
  }
  std::map<int, int> compact;
  for (int v = 0; v < static_cast<int>(alive.size()); ++v)
    if (alive[v]) compact.emplace(v, static_cast<int>(compact.size()));
  g.vertices = static_cast<int>(compact.size());
  for (auto [a, b] : edges) g.edges.emplace_back(compact[a], compact[b]);
  return g;
}

bool multigraph_isomorphic(const Multigraph& a, const Multigraph& b) {
  if (a.vertices != b.vertices || a.edges.size() != b.edges.size() || a.circles != b.circles) return false;
  const int n = a.vertices;
  auto matrix = [n](const Multigraph& g) {
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (auto [x, y] : g.edges) {
      ++m[x][y];
      if (x != y) ++m[y][x];
    }
    return m;
  };
  const auto ma = matrix(a), mb = matrix(b);
  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(int)> go = [&](int i) {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      bool ok = true;
      for (int p = 0; p < i && ok; ++p) ok = ma[i][p] == mb[j][image[p]];
      ok = ok && ma[i][i] == mb[j][j];
      if (!ok) continue;
      image[i] = j;
      used[j] = 1;
      if (go(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  return go(0);
}

}  // namespace

std::optional<bool> homeomorphic_low_dim(const CellComplex& a, const CellComplex& b) {
  if (a.dimension() > 1 || b.dimension() > 1) return std::nullopt;
  if (a.dimension() <= 0 && b.dimension() <= 0) return a.vertex_count() == b.vertex_count();
  return multigraph_isomorphic(reduce(a), reduce(b));
}

GromovReport verify_gromov_properties(const CellComplex& k, const HyperbolizedComplex& h) {
  using S = PropertyEntry::Status;
  GromovReport r;
  auto add = [&](std::string name, S s, std::string detail) { r.entries.push_back({std::move(name), s, std::move(detail)}); };
  const CellComplex& g = h.complex;

  auto adm = check_admissible(g);
  add("admissible", adm.ok ? S::Pass : S::Fail, adm.ok ? "" : adm.message);
  auto fold = verify_folding(g, h.folding);
  add("foldable", fold.ok ? S::Pass : S::Fail, fold.ok ? "" : "cell " + std::to_string(*fold.witness) + ": " + fold.reason);
  auto npc = check_npc(g);
  add("flag-links", npc.ok ? S::Pass : S::Fail, npc.ok ? "" : "vertex " + std::to_string(*npc.vertex));
  if (k.homogeneous())
    add("homogeneous", g.homogeneous() ? S::Pass : S::Fail, "");
  else
    add("homogeneous", S::NotApplicable, "input is not homogeneous");
  if (k.homogeneous() && k.boundaryless())
    add("boundaryless", g.boundaryless() ? S::Pass : S::Fail, "");
  else
    add("boundaryless", S::NotApplicable, "input has boundary");

  // each tile maps bijectively and cell-by-cell onto G(Δ^n)
  const CellComplex& src = *h.source;
  const GromovCell& cell = gromov_cell(h.n);
  std::string tile_problem;
  std::size_t tiles_checked = 0;
  for (CellId sigma : src.maximal_cells()) {
    if (src.dim(sigma) != h.n) continue;
    ++tiles_checked;
    std::vector<int> hits(cell.complex.cell_count(), 0);
    for (CellId c = 0; c < static_cast<CellId>(g.cell_count()); ++c)
      for (const TileEntry& e : h.tiles[c]) {
        if (e.simplex != sigma) continue;
        ++hits[e.cell];
        std::vector<VertexId> img;
        for (VertexId v : g.corners(c)) img.push_back(h.vertex_origin[static_cast<std::size_t>(v)].second);
        if (cube::canonical(img) != std::vector<VertexId>(cell.complex.corners(e.cell).begin(), cell.complex.corners(e.cell).end()))
          tile_problem = "tile " + std::to_string(sigma) + " does not preserve corners";
      }
    if (std::any_of(hits.begin(), hits.end(), [](int x) { return x != 1; }))
      tile_problem = "tile " + std::to_string(sigma) + " is not a bijection";
    if (!tile_problem.empty()) break;
  }
  add("tile-isomorphism", tile_problem.empty() ? S::Pass : S::Fail,
      tile_problem.empty() ? std::to_string(tiles_checked) + " tiles" : tile_problem);

  // links of corresponding vertices agree up to subdivision
  std::string link_problem;
  std::size_t compared = 0;
  bool higher = false;
  for (VertexId v : src.vertices()) {
    auto over = h.vertex_over(v);
    if (!over) {
      link_problem = "no vertex over " + std::to_string(v);
      break;
    }
    auto lk = link_of_vertex(src, v).complex;
    auto lg = link_of_vertex(g, *over).complex;
    auto same = homeomorphic_low_dim(lk, lg);
    if (!same) {
      higher = true;
      continue;
    }
    ++compared;
    if (!*same) {
      link_problem = "link of source vertex " + std::to_string(v) + " differs";
      break;
    }
  }
  if (!link_problem.empty())
    add("link-preservation", S::Fail, link_problem);
  else if (compared == 0 && higher)
    add("link-preservation", S::NotApplicable, "links of dimension above one");
  else
    add("link-preservation", S::Pass, std::to_string(compared) + " vertex links");
  return r;
}

}  // namespace cubemill
