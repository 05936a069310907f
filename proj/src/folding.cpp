#include "cubemill/folding.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace cubemill {

std::uint32_t Folding::label(VertexId v) const {
  auto it = labels.find(v);
  if (it == labels.end()) fail(ErrorCode::UnlabeledVertex, "vertex " + std::to_string(v) + " has no label");
  return it->second;
}

FoldingCheck verify_folding(const CellComplex& k, const Folding& f) {
  for (VertexId v : k.vertices()) (void)f.label(v);
  FoldingCheck out;
  auto reject = [&](CellId c, std::string why) {
    out.ok = false;
    out.witness = c;
    out.reason = std::move(why);
    return out;
  };
  const auto n = static_cast<CellId>(k.cell_count());
  if (k.kind() == ComplexKind::Simplicial) {
    for (CellId c = 0; c < n; ++c) {
      std::set<std::uint32_t> seen;
      for (VertexId v : k.corners(c)) {
        auto l = f.label(v);
        if (static_cast<int>(l) > f.target_dim) return reject(c, "label out of range");
        if (!seen.insert(l).second) return reject(c, "repeated label on a simplex");
      }
    }
    return out;
  }
  const std::uint32_t limit = f.target_dim >= 32 ? ~0u : (1u << f.target_dim);
  for (CellId c = 0; c < n; ++c) {
    auto cs = k.corners(c);
    const int d = k.dim(c);
    const std::uint32_t base = f.label(cs[0]);
    if (base >= limit) return reject(c, "label out of range");
    std::uint32_t used = 0;
    std::vector<std::uint32_t> dir(d);
    for (int j = 0; j < d; ++j) {
      dir[j] = f.label(cs[std::size_t{1} << j]) ^ base;
      if (std::popcount(dir[j]) != 1) return reject(c, "edge does not change exactly one coordinate");
      if (used & dir[j]) return reject(c, "two directions fold to the same coordinate");
      used |= dir[j];
    }
    for (std::size_t b = 0; b < cs.size(); ++b) {
      std::uint32_t expect = base;
      for (int j = 0; j < d; ++j)
        if (b >> j & 1) expect ^= dir[j];
      if (f.label(cs[b]) != expect) return reject(c, "corners are not a face of the target cube");
    }
  }
  return out;
}

std::string NotFoldable::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::OddCycle:
      os << "odd cycle";
      for (VertexId v : cycle) os << ' ' << v;
      break;
    case Kind::SelfCrossing:
      os << "self-crossing";
      for (auto& t : trace) os << "; " << t;
      break;
    case Kind::DeadEnd:
      os << "dead end";
      for (auto& t : trace) os << "; " << t;
      break;
  }
  return os.str();
}

namespace {

// Union-find with parities and an undo log.
class ParityDsu {
 public:
  std::size_t add() {
    parent_.push_back(parent_.size());
    parity_.push_back(0);
    size_.push_back(1);
    return parent_.size() - 1;
  }
  std::pair<std::size_t, int> root(std::size_t v) const {
    int p = 0;
    while (parent_[v] != v) {
      p ^= parity_[v];
      v = parent_[v];
    }
    return {v, p};
  }
  // false when the constraint parity(a) ^ parity(b) == want contradicts
  bool unite(std::size_t a, std::size_t b, int want) {
    auto [ra, pa] = root(a);
    auto [rb, pb] = root(b);
    if (ra == rb) return (pa ^ pb) == want;
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    parity_[rb] = pa ^ pb ^ want;
    size_[ra] += size_[rb];
    log_.push_back(rb);
    return true;
  }
  std::size_t mark() const { return log_.size(); }
  void undo(std::size_t to) {
    while (log_.size() > to) {
      std::size_t rb = log_.back();
      log_.pop_back();
      std::size_t ra = parent_[rb];
      size_[ra] -= size_[rb];
      parent_[rb] = rb;
      parity_[rb] = 0;
    }
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> parity_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> log_;
};

std::vector<VertexId> neighbours_of(const CellComplex& k, VertexId v) {
  std::vector<VertexId> out;
  for (CellId e : k.star(v))
    if (k.dim(e) == 1)
      for (VertexId w : k.corners(e))
        if (w != v) out.push_back(w);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Connected components of the 1-skeleton, each in BFS order from its least vertex.
std::vector<std::vector<VertexId>> bfs_components(const CellComplex& k) {
  std::vector<std::vector<VertexId>> comps;
  std::set<VertexId> seen;
  for (VertexId root : k.vertices()) {
    if (!seen.insert(root).second) continue;
    comps.emplace_back();
    std::deque<VertexId> q{root};
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      comps.back().push_back(v);
      for (VertexId w : neighbours_of(k, v))
        if (seen.insert(w).second) q.push_back(w);
    }
  }
  return comps;
}

// An odd closed walk in the 1-skeleton, if the graph is not bipartite.
std::optional<std::vector<VertexId>> odd_cycle(const CellComplex& k) {
  std::map<VertexId, int> colour;
  std::map<VertexId, VertexId> parent;
  for (VertexId root : k.vertices()) {
    if (colour.count(root)) continue;
    colour[root] = 0;
    std::deque<VertexId> q{root};
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      for (VertexId w : neighbours_of(k, v)) {
        if (!colour.count(w)) {
          colour[w] = colour[v] ^ 1;
          parent[w] = v;
          q.push_back(w);
        } else if (colour[w] == colour[v]) {
          // tree paths to the common ancestor plus the edge v-w
          std::vector<VertexId> pv{v}, pw{w};
          while (parent.count(pv.back())) pv.push_back(parent[pv.back()]);
          while (parent.count(pw.back())) pw.push_back(parent[pw.back()]);
          while (pv.size() > 1 && pw.size() > 1 && pv[pv.size() - 2] == pw[pw.size() - 2]) {
            pv.pop_back();
            pw.pop_back();
          }
          std::vector<VertexId> cyc(pv.begin(), pv.end());
          for (auto it = pw.rbegin() + 1; it != pw.rend(); ++it) cyc.push_back(*it);
          cyc.push_back(v);
          return cyc;
        }
      }
    }
  }
  return std::nullopt;
}

FoldingSearch find_simplicial(const CellComplex& k) {
  Folding f;
  f.kind = ComplexKind::Simplicial;
  f.target_dim = std::max(k.dimension(), 0);
  const std::uint32_t colours = static_cast<std::uint32_t>(f.target_dim) + 1;
  NotFoldable failure;
  std::size_t deepest = 0;
  for (auto& comp : bfs_components(k)) {
    std::map<VertexId, std::uint32_t> label;
    std::function<bool(std::size_t, std::uint32_t)> go = [&](std::size_t i, std::uint32_t max_used) {
      if (i == comp.size()) return true;
      const VertexId v = comp[i];
      const std::uint32_t limit = std::min(colours, max_used + 1);
      for (std::uint32_t c = 0; c < limit; ++c) {
        bool clash = false;
        for (VertexId w : neighbours_of(k, v))
          if (auto it = label.find(w); it != label.end() && it->second == c) clash = true;
        if (clash) continue;
        label[v] = c;
        if (go(i + 1, std::max(max_used, c + 1))) return true;
        label.erase(v);
      }
      if (i >= deepest) {
        deepest = i;
        failure.trace.clear();
        for (std::size_t j = 0; j < i; ++j)
          failure.trace.push_back("vertex " + std::to_string(comp[j]) + " -> " + std::to_string(label[comp[j]]));
        failure.trace.push_back("vertex " + std::to_string(v) + " has no free label");
      }
      return false;
    };
    if (!go(0, 0)) {
      if (colours == 2)
        if (auto cyc = odd_cycle(k)) {
          NotFoldable odd;
          odd.kind = NotFoldable::Kind::OddCycle;
          odd.cycle = *cyc;
          return odd;
        }
      return failure;
    }
    for (auto& [v, c] : label) f.labels[v] = c;
  }
  return f;
}

FoldingSearch find_cubical(const CellComplex& x) {
  Folding f;
  f.kind = ComplexKind::Cubical;
  const int n = std::max(x.dimension(), 0);
  f.target_dim = n;
  if (n == 0) {
    for (VertexId v : x.vertices()) f.labels[v] = 0;
    return f;
  }
  const EdgeClasses classes = parallelism_classes(x);
  const auto m = classes.edges.size();

  // classes meeting in a square need distinct coordinates
  std::vector<std::set<int>> crossing(m);
  for (CellId s : x.cells_of_dim(2)) {
    auto cs = x.corners(s);
    int a = classes.class_of[*x.find(std::vector<VertexId>{cs[0], cs[1]})];
    int b = classes.class_of[*x.find(std::vector<VertexId>{cs[0], cs[2]})];
    if (a == b) {
      NotFoldable bad;
      bad.kind = NotFoldable::Kind::SelfCrossing;
      bad.trace.push_back("class " + std::to_string(a) + " crosses itself in cell " + std::to_string(s));
      return bad;
    }
    crossing[a].insert(b);
    crossing[b].insert(a);
  }

  std::map<VertexId, std::size_t> slot;
  std::vector<ParityDsu> dsu(n);
  for (VertexId v : x.vertices()) {
    slot[v] = slot.size();
    for (auto& d : dsu) d.add();
  }

  std::vector<int> coord(m, -1);
  NotFoldable failure;
  std::size_t deepest = 0;
  std::function<bool(std::size_t, int)> go = [&](std::size_t i, int max_used) {
    if (i == m) return true;
    const int limit = std::min(n, max_used + 1);
    std::vector<std::string> tried;
    for (int j = 0; j < limit; ++j) {
      bool clash = false;
      for (int o : crossing[i])
        if (coord[o] == j) clash = true;
      if (clash) {
        tried.push_back("coordinate " + std::to_string(j) + " taken by a crossing class");
        continue;
      }
      std::vector<std::size_t> marks;
      for (auto& d : dsu) marks.push_back(d.mark());
      bool ok = true;
      for (CellId e : classes.edges[i]) {
        auto cs = x.corners(e);
        const std::size_t a = slot[cs[0]], b = slot[cs[1]];
        for (int t = 0; t < n && ok; ++t) ok = dsu[t].unite(a, b, t == j ? 1 : 0);
        if (!ok) break;
      }
      if (ok) {
        coord[i] = j;
        if (go(i + 1, std::max(max_used, j + 1))) return true;
        coord[i] = -1;
        tried.push_back("coordinate " + std::to_string(j) + " fails deeper");
      } else {
        tried.push_back("coordinate " + std::to_string(j) + " breaks parity");
      }
      for (int t = 0; t < n; ++t) dsu[t].undo(marks[t]);
    }
    if (i >= deepest) {
      deepest = i;
      failure.trace.clear();
      for (std::size_t c = 0; c < i; ++c)
        failure.trace.push_back("class " + std::to_string(c) + " -> " + std::to_string(coord[c]));
      for (auto& t : tried) failure.trace.push_back("class " + std::to_string(i) + ": " + t);
    }
    return false;
  };
  if (!go(0, 0)) {
    if (n == 1)
      if (auto cyc = odd_cycle(x)) {
        NotFoldable odd;
        odd.kind = NotFoldable::Kind::OddCycle;
        odd.cycle = *cyc;
        return odd;
      }
    return failure;
  }

  // coordinate t of v is its parity relative to the least vertex of its component
  std::vector<std::map<std::size_t, int>> anchor(n);
  for (VertexId v : x.vertices()) {
    std::uint32_t l = 0;
    for (int t = 0; t < n; ++t) {
      auto [r, p] = dsu[t].root(slot[v]);
      auto [it, fresh] = anchor[t].emplace(r, p);
      if ((p ^ it->second) != 0) l |= 1u << t;
    }
    f.labels[v] = l;
  }
  return f;
}

}  // namespace

FoldingSearch find_folding(const CellComplex& k) {
  if (k.kind() == ComplexKind::Simplicial) return find_simplicial(k);
  return find_cubical(k);
}

Folding canonical_barsub_folding(const CellComplex& k, const std::vector<int>& origin_dim) {
  if (k.kind() != ComplexKind::Simplicial)
    fail(ErrorCode::NotASubdivision, "a barycentric subdivision is simplicial");
  Folding f;
  f.kind = ComplexKind::Simplicial;
  f.target_dim = std::max(k.dimension(), 0);
  for (VertexId v : k.vertices()) {
    if (v < 0 || v >= static_cast<VertexId>(origin_dim.size()))
      fail(ErrorCode::NotASubdivision, "vertex " + std::to_string(v) + " has no originating cell");
    f.labels[v] = static_cast<std::uint32_t>(origin_dim[static_cast<std::size_t>(v)]);
  }
  if (!verify_folding(k, f).ok)
    fail(ErrorCode::NotASubdivision, "provenance does not come from a subdivision");
  return f;
}

Folding canonical_barsub_folding(const Subdivision& s) {
  return canonical_barsub_folding(s.complex, s.origin_dim);
}

FoldedFace folded_face(const CellComplex& k, const Folding& f, CellId c) {
  auto cs = k.corners(c);
  const std::uint32_t base = f.label(cs[0]);
  std::uint32_t all_and = base, all_or = base;
  for (VertexId v : cs) {
    all_and &= f.label(v);
    all_or |= f.label(v);
  }
  return {all_or & ~all_and, all_and};
}

EdgeClasses parallelism_classes(const CellComplex& x) {
  EdgeClasses out;
  out.class_of.assign(x.cell_count(), -1);
  const auto edges = x.cells_of_dim(1);
  if (edges.empty()) return out;
  const CellId first = edges.front();
  std::vector<std::size_t> parent(edges.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto edge = [&](VertexId a, VertexId b) {
    return static_cast<std::size_t>(*x.find(std::vector<VertexId>{a, b}) - first);
  };
  for (CellId s : x.cells_of_dim(2)) {
    auto c = x.corners(s);
    auto unite = [&](std::size_t a, std::size_t b) {
      a = find(a);
      b = find(b);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    unite(edge(c[0], c[1]), edge(c[2], c[3]));
    unite(edge(c[0], c[2]), edge(c[1], c[3]));
  }
  std::map<std::size_t, int> id;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [it, fresh] = id.emplace(find(e), static_cast<int>(id.size()));
    if (fresh) out.edges.emplace_back();
    out.class_of[first + static_cast<CellId>(e)] = it->second;
    out.edges[it->second].push_back(first + static_cast<CellId>(e));
  }
  return out;
}

bool Mirror::contains(CellId c) const { return std::binary_search(cells.begin(), cells.end(), c); }

std::vector<Mirror> mirrors(const CellComplex& x, const Folding& f) {
  if (!x.cubical()) fail(ErrorCode::InvalidArgument, "mirrors are defined for cubical complexes");
  std::vector<Mirror> out;
  std::vector<FoldedFace> face(x.cell_count());
  for (CellId c = 0; c < static_cast<CellId>(x.cell_count()); ++c) face[c] = folded_face(x, f, c);
  for (int i = 0; i < f.target_dim; ++i) {
    for (int eps = 0; eps < 2; ++eps) {
      auto inside = [&](CellId c) {
        return !(face[c].free >> i & 1) && static_cast<int>(face[c].base >> i & 1) == eps;
      };
      // components through shared vertices; every cell in the preimage brings its vertices along
      std::map<VertexId, VertexId> parent;
      std::function<VertexId(VertexId)> find = [&](VertexId v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
      };
      std::vector<CellId> members;
      for (CellId c = 0; c < static_cast<CellId>(x.cell_count()); ++c) {
        if (!inside(c)) continue;
        members.push_back(c);
        auto cs = x.vertex_set(c);
        for (VertexId v : cs) parent.try_emplace(v, v);
        for (VertexId v : cs) {
          VertexId a = find(cs[0]), b = find(v);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
      }
      std::map<VertexId, std::vector<CellId>> groups;
      for (CellId c : members) groups[find(x.vertex_set(c)[0])].push_back(c);
      std::vector<std::vector<CellId>> comps;
      for (auto& [root, cells] : groups) comps.push_back(std::move(cells));
      std::sort(comps.begin(), comps.end(),
                [](const auto& a, const auto& b) { return a.front() < b.front(); });
      for (auto& cells : comps) {
        Mirror m;
        m.id = static_cast<int>(out.size());
        m.coordinate = i;
        m.side = eps;
        m.cells = std::move(cells);
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

std::optional<std::string> reject_mirror(const CellComplex& x, const Folding& f,
                                         const std::vector<CellId>& cells) {
  if (cells.empty()) return "empty cell set";
  std::vector<CellId> sorted = cells;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  // a common folded codimension-1 face
  std::optional<std::pair<int, int>> side;
  for (CellId c : sorted) {
    auto ff = folded_face(x, f, c);
    std::vector<std::pair<int, int>> options;
    for (int i = 0; i < f.target_dim; ++i)
      if (!(ff.free >> i & 1)) options.emplace_back(i, static_cast<int>(ff.base >> i & 1));
    if (!side) {
      if (options.empty()) return "cell " + std::to_string(c) + " folds onto the whole cube";
    }
    if (side && std::find(options.begin(), options.end(), *side) == options.end())
      return "cell " + std::to_string(c) + " leaves the codimension-1 face";
    if (!side) side = options.front();
  }
  for (const Mirror& m : mirrors(x, f)) {
    if (m.cells == sorted) return std::nullopt;
    std::vector<CellId> common;
    std::set_intersection(m.cells.begin(), m.cells.end(), sorted.begin(), sorted.end(),
                          std::back_inserter(common));
    if (!common.empty()) {
      if (std::includes(m.cells.begin(), m.cells.end(), sorted.begin(), sorted.end()))
        return "not a full component: mirror " + std::to_string(m.id) + " has " +
               std::to_string(m.cells.size()) + " cells, the set has " + std::to_string(sorted.size());
      return "cells from more than one component";
    }
  }
  return "not a component of a folding preimage";
}

bool MirrorSeparation::all_separated() const {
  return std::all_of(framings.begin(), framings.end(), [](const FramingVerdict& v) { return v.separated; });
}

int MirrorSeparation::component_of(CellId top) const {
  auto it = std::lower_bound(top_cells.begin(), top_cells.end(), top);
  if (it == top_cells.end() || *it != top) return -1;
  return component[static_cast<std::size_t>(it - top_cells.begin())];
}

MirrorSeparation mirror_separates(const CellComplex& x, const Mirror& m) {
  MirrorSeparation out;
  out.mirror = m.id;
  const int n = x.dimension();
  out.top_cells = x.top_cells();
  const auto count = out.top_cells.size();
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto index = [&](CellId top) {
    return static_cast<std::size_t>(
        std::lower_bound(out.top_cells.begin(), out.top_cells.end(), top) - out.top_cells.begin());
  };
  for (CellId face : x.cells_of_dim(n - 1)) {
    if (m.contains(face)) continue;
    std::vector<std::size_t> around;
    for (CellId t : x.cofaces(face))
      if (x.dim(t) == n) around.push_back(index(t));
    for (std::size_t i = 1; i < around.size(); ++i) {
      auto a = find(around[0]), b = find(around[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::size_t, int> label;
  out.component.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto [it, fresh] = label.emplace(find(i), static_cast<int>(label.size()));
    out.component[i] = it->second;
  }
  out.component_count = static_cast<int>(label.size());

  for (CellId sigma : m.cells) {
    std::vector<CellId> tops;
    for (CellId u : x.up_set(sigma))
      if (x.dim(u) == n) tops.push_back(u);
    for (std::size_t a = 0; a < tops.size(); ++a)
      for (std::size_t b = a + 1; b < tops.size(); ++b) {
        const CellId pair[2] = {tops[a], tops[b]};
        auto low = lower_cell(x, pair);
        if (!low || !m.contains(*low)) continue;
        FramingVerdict v;
        v.framing = {sigma, tops[a], tops[b]};
        v.separated = out.component[index(tops[a])] != out.component[index(tops[b])];
        out.framings.push_back(v);
      }
  }
  return out;
}

}  // namespace cubemill
