#include "cubemill/complex.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace cubemill {

const char* to_string(ComplexKind kind) {
  return kind == ComplexKind::Cubical ? "cubical" : "simplicial";
}

namespace {

std::string show(std::span<const VertexId> v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

// Scatter the low bits of `s` into the set bits of `mask`.
unsigned deposit(unsigned s, unsigned mask) {
  unsigned out = 0;
  for (unsigned bit = 1; mask; bit <<= 1) {
    unsigned low = mask & -mask;
    if (s & bit) out |= low;
    mask ^= low;
  }
  return out;
}

std::vector<VertexId> sorted_copy(std::span<const VertexId> v) {
  std::vector<VertexId> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

namespace cube {

int dimension_of(std::size_t n) {
  if (n == 0 || (n & (n - 1)) != 0) return -1;
  return std::countr_zero(n);
}

std::vector<VertexId> canonical(std::span<const VertexId> corners) {
  const int k = dimension_of(corners.size());
  if (k <= 0) return {corners.begin(), corners.end()};
  // the least array starts with the least vertex, which fixes the flip
  const unsigned flip = static_cast<unsigned>(
      std::min_element(corners.begin(), corners.end()) - corners.begin());
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<VertexId> best, cur(corners.size());
  do {
    for (unsigned b = 0; b < corners.size(); ++b) {
      unsigned t = 0;
      for (int j = 0; j < k; ++j)
        if (b >> j & 1) t |= 1u << perm[j];
      cur[b] = corners[t ^ flip];
    }
    if (best.empty() || cur < best) best = cur;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<VertexId> face(std::span<const VertexId> corners, unsigned free_mask, unsigned base) {
  const unsigned count = 1u << std::popcount(free_mask);
  std::vector<VertexId> out(count);
  for (unsigned s = 0; s < count; ++s) out[s] = corners[(base & ~free_mask) | deposit(s, free_mask)];
  return out;
}

std::optional<std::pair<unsigned, unsigned>> locate_face(std::span<const VertexId> corners,
                                                         std::span<const VertexId> vertices) {
  if (vertices.empty()) return std::nullopt;
  std::vector<unsigned> idx;
  for (VertexId v : vertices) {
    auto it = std::find(corners.begin(), corners.end(), v);
    if (it == corners.end()) return std::nullopt;
    idx.push_back(static_cast<unsigned>(it - corners.begin()));
  }
  auto [free, base] = span_of_indices(idx, dimension_of(corners.size()));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (idx.size() != (1u << std::popcount(free))) return std::nullopt;
  return std::make_pair(free, base);
}

std::pair<unsigned, unsigned> span_of_indices(std::span<const unsigned> indices, int k) {
  unsigned all_and = (1u << k) - 1, all_or = 0;
  for (unsigned i : indices) {
    all_and &= i;
    all_or |= i;
  }
  return {all_or & ~all_and, all_and};
}

}  // namespace cube

CellComplex CellComplex::from_cells(ComplexKind kind, std::vector<std::vector<VertexId>> cells,
                                    ClosureOptions options) {
  const bool cubical = kind == ComplexKind::Cubical;
  std::set<std::vector<VertexId>> given;
  for (auto& c : cells) {
    if (c.empty()) fail(ErrorCode::BadCornerCount, "empty cell");
    auto s = sorted_copy(c);
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      fail(ErrorCode::RepeatedCorner, "cell " + show(c) + " repeats a vertex");
    if (cubical && cube::dimension_of(c.size()) < 0)
      fail(ErrorCode::BadCornerCount, "cube " + show(c) + " has " + std::to_string(c.size()) +
                                          " corners, not a power of two");
    given.insert(cubical ? cube::canonical(c) : s);
  }

  auto codim_one_faces = [&](const std::vector<VertexId>& c) {
    std::vector<std::vector<VertexId>> out;
    if (cubical) {
      const int k = cube::dimension_of(c.size());
      const unsigned all = (1u << k) - 1;
      for (int j = 0; j < k; ++j)
        for (unsigned eps = 0; eps < 2; ++eps)
          out.push_back(cube::canonical(cube::face(c, all ^ (1u << j), eps << j)));
    } else if (c.size() > 1) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        auto f = c;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        out.push_back(std::move(f));
      }
    }
    return out;
  };

  std::set<std::vector<VertexId>> all;
  if (options.compute_closure) {
    std::deque<std::vector<VertexId>> queue(given.begin(), given.end());
    while (!queue.empty()) {
      auto c = std::move(queue.front());
      queue.pop_front();
      if (!all.insert(c).second) continue;
      for (auto& f : codim_one_faces(c))
        if (!all.count(f)) queue.push_back(std::move(f));
    }
  } else {
    for (auto& c : given)
      for (auto& f : codim_one_faces(c))
        if (!given.count(f))
          fail(ErrorCode::MissingFace, "face " + show(f) + " of " + show(c) + " is not listed");
    all = std::move(given);
  }

  auto dim_of = [&](const std::vector<VertexId>& c) {
    return cubical ? cube::dimension_of(c.size()) : static_cast<int>(c.size()) - 1;
  };

  std::vector<std::pair<int, std::vector<VertexId>>> order;
  order.reserve(all.size());
  for (auto& c : all) order.emplace_back(dim_of(c), c);
  std::sort(order.begin(), order.end());

  CellComplex x;
  x.kind_ = kind;
  const int top = order.empty() ? -1 : order.back().first;
  x.first_of_dim_.assign(top + 2, 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    x.corners_.push_back(std::move(order[i].second));
    x.dims_.push_back(order[i].first);
  }
  for (int d = 0; d <= top + 1; ++d)
    x.first_of_dim_[d] = static_cast<CellId>(
        std::lower_bound(x.dims_.begin(), x.dims_.end(), d) - x.dims_.begin());

  const auto n = static_cast<CellId>(x.corners_.size());
  x.sorted_.resize(n);
  x.faces_.resize(n);
  x.cofaces_.resize(n);
  for (CellId c = 0; c < n; ++c) {
    x.index_.emplace(x.corners_[c], c);
    x.sorted_[c] = sorted_copy(x.corners_[c]);
    x.by_vertices_.emplace(x.sorted_[c], c);
    for (VertexId v : x.corners_[c]) x.star_[v].push_back(c);
    if (x.dims_[c] == 0) {
      x.vertices_.push_back(x.corners_[c][0]);
      x.vertex_cell_.emplace(x.corners_[c][0], c);
    }
  }
  std::sort(x.vertices_.begin(), x.vertices_.end());
  for (CellId c = 0; c < n; ++c) {
    for (auto& f : codim_one_faces(x.corners_[c])) {
      CellId fid = x.index_.at(f);
      x.faces_[c].push_back(fid);
      x.cofaces_[fid].push_back(c);
    }
    std::sort(x.faces_[c].begin(), x.faces_[c].end());
  }
  for (auto& cf : x.cofaces_) std::sort(cf.begin(), cf.end());
  return x;
}

std::size_t CellComplex::count_of_dim(int d) const {
  if (d < 0 || d > dimension()) return 0;
  return static_cast<std::size_t>(first_of_dim_[d + 1] - first_of_dim_[d]);
}

CellId CellComplex::first_of_dim(int d) const {
  if (d < 0) return 0;
  if (d > dimension()) return static_cast<CellId>(cell_count());
  return first_of_dim_[d];
}

std::vector<CellId> CellComplex::cells_of_dim(int d) const {
  std::vector<CellId> out;
  if (d < 0 || d > dimension()) return out;
  for (CellId c = first_of_dim_[d]; c < first_of_dim_[d + 1]; ++c) out.push_back(c);
  return out;
}

std::optional<CellId> CellComplex::vertex_cell(VertexId v) const {
  auto it = vertex_cell_.find(v);
  if (it == vertex_cell_.end()) return std::nullopt;
  return it->second;
}

CellId CellComplex::vertex_cell_or_throw(VertexId v) const {
  auto c = vertex_cell(v);
  if (!c) fail(ErrorCode::CellNotFound, "no vertex " + std::to_string(v));
  return *c;
}

std::span<const CellId> CellComplex::star(VertexId v) const {
  auto it = star_.find(v);
  if (it == star_.end()) return {};
  return it->second;
}

std::optional<CellId> CellComplex::find(std::span<const VertexId> corners) const {
  std::vector<VertexId> key = cubical() ? cube::canonical(corners) : sorted_copy(corners);
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<CellId> CellComplex::find_by_vertices(std::span<const VertexId> sorted_vertices) const {
  auto it = by_vertices_.find(std::vector<VertexId>(sorted_vertices.begin(), sorted_vertices.end()));
  if (it == by_vertices_.end()) return std::nullopt;
  return it->second;
}

bool CellComplex::is_face_of(CellId a, CellId b) const {
  if (a == b) return true;
  if (dims_[a] >= dims_[b]) return false;
  if (!std::includes(sorted_[b].begin(), sorted_[b].end(), sorted_[a].begin(), sorted_[a].end()))
    return false;
  if (!cubical()) return true;
  auto pos = cube::locate_face(corners_[b], corners_[a]);
  if (!pos) return false;
  return cube::canonical(cube::face(corners_[b], pos->first, pos->second)) == corners_[a];
}

std::vector<CellId> CellComplex::down_set(CellId c) const {
  std::set<CellId> seen{c};
  std::vector<CellId> stack{c};
  while (!stack.empty()) {
    CellId x = stack.back();
    stack.pop_back();
    for (CellId f : faces_[x])
      if (seen.insert(f).second) stack.push_back(f);
  }
  return {seen.begin(), seen.end()};
}

std::vector<CellId> CellComplex::up_set(CellId c) const {
  std::set<CellId> seen{c};
  std::vector<CellId> stack{c};
  while (!stack.empty()) {
    CellId x = stack.back();
    stack.pop_back();
    for (CellId f : cofaces_[x])
      if (seen.insert(f).second) stack.push_back(f);
  }
  return {seen.begin(), seen.end()};
}

std::vector<CellId> CellComplex::maximal_cells() const {
  std::vector<CellId> out;
  for (CellId c = 0; c < static_cast<CellId>(cell_count()); ++c)
    if (cofaces_[c].empty()) out.push_back(c);
  return out;
}

CellId CellComplex::span_in(CellId c, std::span<const VertexId> vertices) const {
  if (!cubical()) {
    auto key = sorted_copy(vertices);
    key.erase(std::unique(key.begin(), key.end()), key.end());
    auto f = find_by_vertices(key);
    if (!f) fail(ErrorCode::CellNotFound, "no simplex on " + show(key));
    return *f;
  }
  const auto& cs = corners_[c];
  std::vector<unsigned> idx;
  for (VertexId v : vertices) {
    auto it = std::find(cs.begin(), cs.end(), v);
    if (it == cs.end()) fail(ErrorCode::CellNotFound, "vertex " + std::to_string(v) + " not in cell");
    idx.push_back(static_cast<unsigned>(it - cs.begin()));
  }
  auto [free, base] = cube::span_of_indices(idx, dims_[c]);
  auto f = find(cube::face(cs, free, base));
  if (!f) fail(ErrorCode::Internal, "face of a stored cube is missing");
  return *f;
}

bool CellComplex::homogeneous() const {
  const int n = dimension();
  for (CellId c : maximal_cells())
    if (dims_[c] != n) return false;
  return true;
}

bool CellComplex::boundaryless() const {
  const int n = dimension();
  for (CellId c : cells_of_dim(n - 1)) {
    std::size_t tops = 0;
    for (CellId u : cofaces_[c])
      if (dims_[u] == n) ++tops;
    if (tops < 2) return false;
  }
  return true;
}

long CellComplex::euler_characteristic() const {
  long chi = 0;
  for (int d : dims_) chi += (d % 2 == 0) ? 1 : -1;
  return chi;
}

bool CellComplex::connected() const {
  if (vertices_.empty()) return true;
  std::set<VertexId> seen{vertices_.front()};
  std::vector<VertexId> stack{vertices_.front()};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (CellId e : star(v)) {
      if (dims_[e] != 1) continue;
      for (VertexId w : corners_[e])
        if (seen.insert(w).second) stack.push_back(w);
    }
  }
  return seen.size() == vertices_.size();
}

std::vector<std::vector<VertexId>> CellComplex::maximal_corner_lists() const {
  std::vector<std::vector<VertexId>> out;
  for (CellId c : maximal_cells()) out.push_back(corners_[c]);
  return out;
}

ValidationReport check_admissible(const CellComplex& x) {
  ValidationReport r;
  if (!x.cubical()) return r;
  const auto n = static_cast<CellId>(x.cell_count());
  for (CellId c = 0; c < n; ++c) {
    auto first = x.find_by_vertices(x.vertex_set(c));
    if (*first != c) {
      r.ok = false;
      r.violation = ErrorCode::NonFaceIntersection;
      r.message = "two distinct cubes share the vertex set " + show(x.vertex_set(c));
      auto a = x.corners(*first), b = x.corners(c);
      r.offending = {{a.begin(), a.end()}, {b.begin(), b.end()}};
      return r;
    }
  }
  const auto maximal = x.maximal_cells();
  for (CellId a : maximal) {
    std::set<CellId> partners;
    for (VertexId v : x.vertex_set(a))
      for (CellId b : x.star(v))
        if (b > a && x.cofaces(b).empty()) partners.insert(b);
    for (CellId b : partners) {
      std::vector<VertexId> common;
      auto sa = x.vertex_set(a), sb = x.vertex_set(b);
      std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
      if (!cube::locate_face(x.corners(a), common) || !cube::locate_face(x.corners(b), common)) {
        r.ok = false;
        r.violation = ErrorCode::NonFaceIntersection;
        r.message = "cubes meet in " + show(common) + ", which is not a common face";
        auto ca = x.corners(a), cb = x.corners(b);
        r.offending = {{ca.begin(), ca.end()}, {cb.begin(), cb.end()}};
        return r;
      }
    }
  }
  return r;
}

ValidationResult validate_cubical(const std::vector<std::vector<VertexId>>& raw,
                                  ClosureOptions options) {
  ValidationResult out;
  try {
    auto x = CellComplex::from_cells(ComplexKind::Cubical, raw, options);
    out.report = check_admissible(x);
    if (out.report.ok) out.complex = std::move(x);
  } catch (const Error& e) {
    out.report.ok = false;
    out.report.violation = e.code();
    out.report.message = e.what();
  }
  return out;
}

Subdivision barycentric_subdivision(const CellComplex& k) {
  std::vector<std::vector<VertexId>> chains;
  std::vector<VertexId> chain;
  std::function<void(CellId)> walk = [&](CellId c) {
    chain.push_back(c);
    if (k.faces(c).empty())
      chains.push_back(chain);
    else
      for (CellId f : k.faces(c)) walk(f);
    chain.pop_back();
  };
  for (CellId m : k.maximal_cells()) walk(m);
  Subdivision s;
  s.complex = CellComplex::from_cells(ComplexKind::Simplicial, std::move(chains));
  s.origin_dim.resize(k.cell_count());
  for (CellId c = 0; c < static_cast<CellId>(k.cell_count()); ++c) s.origin_dim[c] = k.dim(c);
  return s;
}

CellComplex cubical_subdivision(const CellComplex& x) {
  if (!x.cubical()) fail(ErrorCode::InvalidArgument, "cubical subdivision needs a cubical complex");
  std::vector<std::vector<VertexId>> cubes;
  for (CellId c : x.maximal_cells()) {
    const auto cs = x.corners(c);
    const unsigned count = static_cast<unsigned>(cs.size());
    for (unsigned b = 0; b < count; ++b) {
      std::vector<VertexId> small(count);
      for (unsigned s = 0; s < count; ++s) {
        auto f = x.find(cube::face(cs, s, b & ~s));
        small[s] = *f;
      }
      cubes.push_back(std::move(small));
    }
  }
  return CellComplex::from_cells(ComplexKind::Cubical, std::move(cubes));
}

LinkComplex link(const CellComplex& k, CellId base) {
  if (base < 0 || base >= static_cast<CellId>(k.cell_count()))
    fail(ErrorCode::CellNotFound, "cell " + std::to_string(base) + " is not in the complex");
  LinkComplex l;
  l.base = base;
  const auto covers = k.cofaces(base);
  std::vector<std::vector<VertexId>> simplices;
  for (CellId mu : k.up_set(base)) {
    if (mu == base) continue;
    std::vector<VertexId> s;
    for (CellId c : covers)
      if (k.is_face_of(c, mu)) s.push_back(c);
    simplices.push_back(std::move(s));
  }
  l.complex = CellComplex::from_cells(ComplexKind::Simplicial, std::move(simplices));
  return l;
}

LinkComplex link_of_vertex(const CellComplex& k, VertexId v) {
  return link(k, k.vertex_cell_or_throw(v));
}

std::optional<CellId> lower_cell(const CellComplex& k, std::span<const CellId> cells) {
  if (cells.empty()) return std::nullopt;
  auto s = k.vertex_set(cells[0]);
  std::vector<VertexId> common(s.begin(), s.end());
  for (CellId c : cells.subspan(1)) {
    std::vector<VertexId> next;
    auto t = k.vertex_set(c);
    std::set_intersection(common.begin(), common.end(), t.begin(), t.end(), std::back_inserter(next));
    common = std::move(next);
  }
  auto f = k.find_by_vertices(common);
  if (!f) return std::nullopt;
  for (CellId c : cells)
    if (!k.is_face_of(*f, c)) return std::nullopt;
  return f;
}

std::optional<CellId> upper_cell(const CellComplex& k, std::span<const CellId> cells) {
  if (cells.empty()) return std::nullopt;
  auto common = k.up_set(cells[0]);
  for (CellId c : cells.subspan(1)) {
    auto up = k.up_set(c);
    std::vector<CellId> next;
    std::set_intersection(common.begin(), common.end(), up.begin(), up.end(), std::back_inserter(next));
    common = std::move(next);
  }
  if (common.empty()) return std::nullopt;
  // ids are sorted by dimension, so the first candidate has least dimension
  CellId least = common.front();
  for (CellId c : common)
    if (!k.is_face_of(least, c)) return std::nullopt;
  return least;
}

CellComplex full_subcomplex(const CellComplex& k, std::span<const VertexId> vertices) {
  std::set<VertexId> keep(vertices.begin(), vertices.end());
  std::vector<std::vector<VertexId>> cells;
  for (CellId c = 0; c < static_cast<CellId>(k.cell_count()); ++c) {
    auto vs = k.vertex_set(c);
    if (std::all_of(vs.begin(), vs.end(), [&](VertexId v) { return keep.count(v) > 0; }))
      cells.emplace_back(k.corners(c).begin(), k.corners(c).end());
  }
  return CellComplex::from_cells(k.kind(), std::move(cells));
}

CellComplex relabel(const CellComplex& k, const std::map<VertexId, VertexId>& mapping) {
  std::vector<std::vector<VertexId>> cells;
  for (CellId c = 0; c < static_cast<CellId>(k.cell_count()); ++c) {
    std::vector<VertexId> m;
    for (VertexId v : k.corners(c)) m.push_back(mapping.at(v));
    cells.push_back(std::move(m));
  }
  return CellComplex::from_cells(k.kind(), std::move(cells));
}

namespace {

std::vector<std::size_t> signature(const CellComplex& k, VertexId v) {
  std::vector<std::size_t> sig(static_cast<std::size_t>(std::max(k.dimension(), 0)) + 1, 0);
  for (CellId c : k.star(v)) ++sig[k.dim(c)];
  return sig;
}

std::vector<VertexId> neighbours(const CellComplex& k, VertexId v) {
  std::vector<VertexId> out;
  for (CellId e : k.star(v))
    if (k.dim(e) == 1)
      for (VertexId w : k.corners(e))
        if (w != v) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool isomorphic(const CellComplex& a, const CellComplex& b) {
  if (a.kind() != b.kind() || a.dimension() != b.dimension()) return false;
  for (int d = 0; d <= a.dimension(); ++d)
    if (a.count_of_dim(d) != b.count_of_dim(d)) return false;
  if (a.empty()) return true;

  std::map<VertexId, std::vector<std::size_t>> sig_a, sig_b;
  std::multiset<std::vector<std::size_t>> ms_a, ms_b;
  for (VertexId v : a.vertices()) ms_a.insert(sig_a[v] = signature(a, v));
  for (VertexId v : b.vertices()) ms_b.insert(sig_b[v] = signature(b, v));
  if (ms_a != ms_b) return false;

  // BFS order so every vertex after a component root has an earlier neighbour
  std::vector<VertexId> order;
  std::map<VertexId, VertexId> parent;
  std::set<VertexId> seen;
  for (VertexId root : a.vertices()) {
    if (!seen.insert(root).second) continue;
    std::deque<VertexId> q{root};
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      order.push_back(v);
      for (VertexId w : neighbours(a, v))
        if (seen.insert(w).second) {
          parent[w] = v;
          q.push_back(w);
        }
    }
  }

  std::map<VertexId, VertexId> image;
  std::set<VertexId> used;
  std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
    if (i == order.size()) return true;
    const VertexId v = order[i];
    std::vector<VertexId> candidates;
    if (auto p = parent.find(v); p != parent.end())
      candidates = neighbours(b, image.at(p->second));
    else
      candidates.assign(b.vertices().begin(), b.vertices().end());
    for (VertexId w : candidates) {
      if (used.count(w) || sig_b[w] != sig_a[v]) continue;
      image[v] = w;
      bool ok = true;
      for (CellId c : a.star(v)) {
        std::vector<VertexId> img;
        for (VertexId u : a.corners(c)) {
          auto it = image.find(u);
          if (it == image.end()) break;
          img.push_back(it->second);
        }
        if (img.size() == a.corners(c).size() && !b.find(img)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used.insert(w);
        if (extend(i + 1)) return true;
        used.erase(w);
      }
      image.erase(v);
    }
    return false;
  };
  return extend(0);
}

CellComplex standard_simplex(int n) {
  std::vector<VertexId> s(static_cast<std::size_t>(n) + 1);
  std::iota(s.begin(), s.end(), 0);
  return CellComplex::from_cells(ComplexKind::Simplicial, {s});
}

CellComplex simplex_boundary(int n) {
  std::vector<std::vector<VertexId>> facets;
  for (int drop = 0; drop <= n; ++drop) {
    std::vector<VertexId> f;
    for (int v = 0; v <= n; ++v)
      if (v != drop) f.push_back(v);
    facets.push_back(std::move(f));
  }
  return CellComplex::from_cells(ComplexKind::Simplicial, std::move(facets));
}

CellComplex standard_cube(int n) {
  std::vector<VertexId> c(std::size_t{1} << n);
  std::iota(c.begin(), c.end(), 0);
  return CellComplex::from_cells(ComplexKind::Cubical, {c});
}

}  // namespace cubemill
