#include "cubemill/dual.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "cubemill/curvature.hpp"
#include "cubemill/parallel.hpp"

namespace cubemill {

namespace {

std::vector<int> components_without(const CellComplex& dual, std::size_t vertex_count,
                                    const std::vector<char>& removed, int& count) {
  std::vector<int> comp(vertex_count, -1);
  count = 0;
  for (std::size_t s = 0; s < vertex_count; ++s) {
    if (removed[s] || comp[s] >= 0) continue;
    std::deque<VertexId> q{static_cast<VertexId>(s)};
    comp[s] = count;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      for (CellId e : dual.star(v)) {
        if (dual.dim(e) != 1) continue;
        for (VertexId w : dual.corners(e)) {
          auto wi = static_cast<std::size_t>(w);
          if (removed[wi] || comp[wi] >= 0) continue;
          comp[wi] = count;
          q.push_back(w);
        }
      }
    }
    ++count;
  }
  return comp;
}

std::string list(std::span<const VertexId> v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

DualComplex DualComplex::build(const CellComplex& y, const Folding& f) {
  if (!y.cubical()) fail(ErrorCode::NotAdmissible, "the dual complex needs a cubical source");
  auto adm = check_admissible(y);
  if (!adm.ok) fail(ErrorCode::NotAdmissible, adm.message);
  if (!verify_folding(y, f).ok) fail(ErrorCode::NotFoldable, "the folding does not fold the source");
  DualComplex d;
  d.source_ = std::make_shared<CellComplex>(y);
  d.folding_ = f;
  d.mirrors_ = cubemill::mirrors(y, f);
  return with_cubes(d, cubical_subdivision(y).maximal_corner_lists());
}

DualComplex DualComplex::with_cubes(const DualComplex& base, std::vector<std::vector<VertexId>> cubes) {
  DualComplex d;
  d.source_ = base.source_;
  d.folding_ = base.folding_;
  d.mirrors_ = base.mirrors_;
  d.cubes_ = CellComplex::from_cells(ComplexKind::Cubical, std::move(cubes));
  const CellComplex& y = *d.source_;
  const std::size_t n = y.cell_count();
  d.mirrors_of_cell_.assign(n, {});
  for (const Mirror& m : d.mirrors_)
    for (CellId c : m.cells) d.mirrors_of_cell_[c].push_back(m.id);
  for (const Mirror& m : d.mirrors_) {
    std::vector<char> removed(n, 0);
    for (CellId c : m.cells) removed[c] = 1;
    int count = 0;
    d.mirror_component_.push_back(components_without(d.cubes_, n, removed, count));
    d.mirror_component_count_.push_back(count);
    d.mirror_separating_.push_back(mirror_separates(y, m).all_separated() ? 1 : 0);
  }
  return d;
}

bool DualComplex::adjacent(VertexId a, VertexId b) const {
  auto s = std::vector<VertexId>{a, b};
  std::sort(s.begin(), s.end());
  auto e = cubes_.find_by_vertices(s);
  return e && cubes_.dim(*e) == 1;
}

std::vector<VertexId> DualComplex::neighbours(VertexId v) const {
  std::vector<VertexId> out;
  for (CellId e : cubes_.star(v))
    if (cubes_.dim(e) == 1)
      for (VertexId w : cubes_.corners(e))
        if (w != v) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<VertexId, VertexId> DualComplex::interval(CellId dual_cell) const {
  auto cs = cubes_.corners(dual_cell);
  auto lo = *std::min_element(cs.begin(), cs.end(), [&](VertexId a, VertexId b) { return height(a) < height(b); });
  auto hi = *std::max_element(cs.begin(), cs.end(), [&](VertexId a, VertexId b) { return height(a) < height(b); });
  return {lo, hi};
}

std::vector<CellId> DualComplex::tiles_containing(CellId c) const {
  std::vector<CellId> out;
  const int n = source_->dimension();
  for (CellId u : source_->up_set(c))
    if (source_->dim(u) == n) out.push_back(u);
  return out;
}

bool DualComplex::all_mirrors_separating() const {
  return std::all_of(mirror_separating_.begin(), mirror_separating_.end(), [](char s) { return s != 0; });
}

bool DualReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const DualCheck& c) { return c.ok; });
}

DualReport verify_dual_axioms(const DualComplex& d) {
  DualReport r;
  const CellComplex& q = d.cubes();
  const CellComplex& y = d.source();
  auto h = [&](VertexId v) { return d.height(v); };

  {
    DualCheck c{"dimension"};
    c.checked = 1;
    c.ok = q.dimension() == y.dimension();
    if (!c.ok) c.witness = std::to_string(q.dimension()) + " vs " + std::to_string(y.dimension());
    r.checks.push_back(c);
  }
  {
    DualCheck c{"edge-heights"};
    for (CellId e : q.cells_of_dim(1)) {
      ++c.checked;
      auto cs = q.corners(e);
      if (std::abs(h(cs[0]) - h(cs[1])) != 1 && c.ok) {
        c.ok = false;
        c.witness = "edge " + list(cs);
      }
    }
    r.checks.push_back(c);
  }
  {
    DualCheck c{"square-heights"};
    for (CellId s : q.cells_of_dim(2)) {
      ++c.checked;
      auto cs = q.corners(s);
      // one diagonal is flat, the other spans a height difference of two
      const int d1 = std::abs(h(cs[0]) - h(cs[3])), d2 = std::abs(h(cs[1]) - h(cs[2]));
      const bool good = (d1 == 0 && d2 == 2) || (d1 == 2 && d2 == 0);
      if (!good && c.ok) {
        c.ok = false;
        c.witness = "square " + list(cs);
      }
    }
    r.checks.push_back(c);
  }
  {
    DualCheck minmax{"cube-minmax"}, distance{"distance-identity"};
    for (CellId k = 0; k < static_cast<CellId>(q.cell_count()); ++k) {
      if (q.dim(k) < 1) continue;
      ++minmax.checked;
      ++distance.checked;
      auto cs = q.corners(k);
      int lo = h(cs[0]), hi = h(cs[0]);
      for (VertexId v : cs) {
        lo = std::min(lo, h(v));
        hi = std::max(hi, h(v));
      }
      std::vector<std::size_t> lows, highs;
      for (std::size_t b = 0; b < cs.size(); ++b) {
        if (h(cs[b]) == lo) lows.push_back(b);
        if (h(cs[b]) == hi) highs.push_back(b);
      }
      bool good = lows.size() == 1 && highs.size() == 1;
      if (good) {
        const auto vmin = static_cast<CellId>(cs[lows[0]]), vmax = static_cast<CellId>(cs[highs[0]]);
        for (VertexId v : cs)
          good = good && y.is_face_of(vmin, static_cast<CellId>(v)) && y.is_face_of(static_cast<CellId>(v), vmax);
        for (std::size_t b = 0; b < cs.size(); ++b)
          if (h(cs[b]) != lo + std::popcount(b ^ lows[0]) && distance.ok) {
            distance.ok = false;
            distance.witness = "cube " + list(cs);
          }
      }
      if (!good && minmax.ok) {
        minmax.ok = false;
        minmax.witness = "cube " + list(cs);
      }
    }
    r.checks.push_back(minmax);
    r.checks.push_back(distance);
  }
  {
    // every 4-cycle of the 1-skeleton spans a stored square, and every
    // 1-skeleton of a 3-cube spans a stored 3-cube
    DualCheck c{"one-skeleton"};
    std::vector<std::vector<VertexId>> nb(d.vertex_count());
    for (std::size_t v = 0; v < nb.size(); ++v) nb[v] = d.neighbours(static_cast<VertexId>(v));
    auto common = [&](VertexId a, VertexId b, VertexId skip) {
      std::vector<VertexId> out;
      std::set_intersection(nb[a].begin(), nb[a].end(), nb[b].begin(), nb[b].end(), std::back_inserter(out));
      out.erase(std::remove(out.begin(), out.end(), skip), out.end());
      return out;
    };
    for (VertexId a = 0; a < static_cast<VertexId>(nb.size()) && c.ok; ++a) {
      const auto& na = nb[a];
      for (std::size_t i = 0; i < na.size() && c.ok; ++i)
        for (std::size_t j = i + 1; j < na.size() && c.ok; ++j)
          for (VertexId x : common(na[i], na[j], a)) {
            ++c.checked;
            if (!q.find(std::vector<VertexId>{a, na[i], na[j], x})) {
              c.ok = false;
              c.witness = "4-cycle " + list(std::vector<VertexId>{a, na[i], x, na[j]});
              break;
            }
          }
      if (q.dimension() < 2) continue;
      for (std::size_t i = 0; i < na.size() && c.ok; ++i)
        for (std::size_t j = i + 1; j < na.size() && c.ok; ++j)
          for (std::size_t k = j + 1; k < na.size() && c.ok; ++k) {
            const VertexId b1 = na[i], b2 = na[j], b3 = na[k];
            for (VertexId d12 : common(b1, b2, a))
              for (VertexId d13 : common(b1, b3, a))
                for (VertexId d23 : common(b2, b3, a)) {
                  std::set<VertexId> seen{a, b1, b2, b3, d12, d13, d23};
                  if (seen.size() != 7) continue;
                  auto tops = common(d12, d13, b1);
                  for (VertexId e : tops) {
                    if (seen.count(e) || !std::binary_search(nb[d23].begin(), nb[d23].end(), e)) continue;
                    ++c.checked;
                    if (!q.find(std::vector<VertexId>{a, b1, b2, d12, b3, d13, d23, e}) && c.ok) {
                      c.ok = false;
                      c.witness = "3-cube skeleton at " + std::to_string(a);
                    }
                  }
                }
          }
    }
    r.checks.push_back(c);
  }
  {
    DualCheck full{"link-flag"}, down{"descending-link-flag"}, up{"ascending-link-flag"};
    const std::size_t nv = q.vertex_count();
    std::vector<std::array<bool, 3>> flags(nv);
    parallel_for(nv, [&](std::size_t i) {
      const VertexId v = q.vertices()[i];
      auto l = link_of_vertex(q, v).complex;
      std::vector<VertexId> lower, upper;
      for (VertexId e : l.vertices()) {
        auto cs = q.corners(static_cast<CellId>(e));
        const VertexId other = cs[0] == v ? cs[1] : cs[0];
        (h(other) < h(v) ? lower : upper).push_back(e);
      }
      flags[i] = {is_flag(l).flag, is_flag(full_subcomplex(l, lower)).flag, is_flag(full_subcomplex(l, upper)).flag};
    });
    for (std::size_t i = 0; i < nv; ++i) {
      DualCheck* checks[3] = {&full, &down, &up};
      for (int t = 0; t < 3; ++t) {
        ++checks[t]->checked;
        if (!flags[i][t] && checks[t]->ok) {
          checks[t]->ok = false;
          checks[t]->witness = "vertex " + std::to_string(q.vertices()[i]);
        }
      }
    }
    r.checks.push_back(full);
    r.checks.push_back(down);
    r.checks.push_back(up);
  }
  return r;
}

DualMirror dual_mirror(const DualComplex& d, int mirror) {
  const Mirror& m = d.mirrors().at(static_cast<std::size_t>(mirror));
  DualMirror out;
  out.mirror = mirror;
  out.vertices.assign(m.cells.begin(), m.cells.end());
  out.subcomplex = full_subcomplex(d.cubes(), out.vertices);
  out.component = d.mirror_components(mirror);
  out.component_count = d.mirror_component_count(mirror);
  auto sep = mirror_separates(d.source(), m);
  out.source_component_count = sep.component_count;
  // same partition of the top cells, read through both labellings
  std::map<int, int> forward, backward;
  bool same = out.component_count == sep.component_count;
  for (std::size_t i = 0; i < sep.top_cells.size() && same; ++i) {
    const int a = sep.component[i], b = out.component[static_cast<std::size_t>(sep.top_cells[i])];
    auto [f, fresh_f] = forward.emplace(a, b);
    auto [g, fresh_g] = backward.emplace(b, a);
    same = f->second == b && g->second == a;
  }
  out.agrees = same;
  return out;
}

DualTile dual_tile(const DualComplex& d, CellId tile) {
  const CellComplex& y = d.source();
  const int n = y.dimension();
  if (tile < 0 || tile >= static_cast<CellId>(y.cell_count()) || y.dim(tile) != n)
    fail(ErrorCode::NotTopCell, "cell " + std::to_string(tile) + " is not a top cell");
  DualTile t;
  t.tile = tile;
  for (CellId c : y.down_set(tile)) t.vertices.push_back(c);
  const CellComplex& q = d.cubes();
  std::size_t peaks = 0;
  for (VertexId v : t.vertices)
    if (d.height(v) == n) ++peaks;
  for (CellId k = 0; k < static_cast<CellId>(q.cell_count()); ++k) {
    auto vs = q.vertex_set(k);
    if (std::includes(t.vertices.begin(), t.vertices.end(), vs.begin(), vs.end())) {
      t.cubes.push_back(k);
      if (q.dim(k) == n) ++t.top_cubes;
    }
  }
  std::size_t three = 1;
  for (int i = 0; i < n; ++i) three *= 3;
  t.valid = peaks == 1 && t.vertices.size() == three && t.top_cubes == (std::size_t{1} << n);
  return t;
}

}  // namespace cubemill
