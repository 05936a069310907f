#include "cubemill/paths.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

namespace cubemill {

namespace {

constexpr std::size_t kIterationCap = 100000;

std::string show(const EdgePath& p) {
  std::string s;
  for (std::size_t i = 0; i < p.v.size(); ++i) s += (i ? "," : "") + std::to_string(p.v[i]);
  return s;
}

bool on_mirror(const DualComplex& d, VertexId v, int m) {
  const auto& ms = d.mirrors_containing(static_cast<CellId>(v));
  return std::find(ms.begin(), ms.end(), m) != ms.end();
}

}  // namespace

bool valid_path(const DualComplex& d, const EdgePath& p) {
  if (p.v.empty()) return false;
  for (VertexId v : p.v)
    if (v < 0 || v >= static_cast<VertexId>(d.vertex_count())) return false;
  for (std::size_t i = 0; i + 1 < p.v.size(); ++i)
    if (!d.adjacent(p.v[i], p.v[i + 1])) return false;
  return true;
}

int path_height(const DualComplex& d, const EdgePath& p) {
  int h = -1;
  for (VertexId v : p.v) h = std::max(h, d.height(v));
  return h;
}

EdgePath reversed(const EdgePath& p) { return {{p.v.rbegin(), p.v.rend()}}; }

const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::Rotate: return "rotate";
    case MoveKind::BacktrackRemoval: return "backtrack";
    case MoveKind::SquareSlide: return "slide";
    case MoveKind::InsertDetour: return "insert";
  }
  return "?";
}

std::optional<EdgePath> apply_move(const DualComplex& d, const EdgePath& p, const Move& m) {
  const std::size_t s = p.length();
  EdgePath out = p;
  switch (m.kind) {
    case MoveKind::Rotate: {
      if (!p.is_loop() || m.index == 0 || m.index >= s) return std::nullopt;
      out.v.assign(p.v.begin() + static_cast<std::ptrdiff_t>(m.index), p.v.end());
      out.v.insert(out.v.end(), p.v.begin() + 1, p.v.begin() + static_cast<std::ptrdiff_t>(m.index) + 1);
      return out;
    }
    case MoveKind::BacktrackRemoval: {
      if (m.index == 0 || m.index >= s || p.v[m.index - 1] != p.v[m.index + 1]) return std::nullopt;
      out.v.erase(out.v.begin() + static_cast<std::ptrdiff_t>(m.index),
                  out.v.begin() + static_cast<std::ptrdiff_t>(m.index) + 2);
      return out;
    }
    case MoveKind::SquareSlide: {
      if (m.index == 0 || m.index >= s || m.square.size() != 4) return std::nullopt;
      const auto& q = d.cubes();
      auto sq = q.find(m.square);
      if (!sq || q.dim(*sq) != 2) return std::nullopt;
      const VertexId a = p.v[m.index - 1], b = p.v[m.index], c = p.v[m.index + 1], w = m.replacement;
      std::vector<VertexId> mine{a, b, c, w}, theirs = m.square;
      std::sort(mine.begin(), mine.end());
      std::sort(theirs.begin(), theirs.end());
      if (mine != theirs || std::adjacent_find(mine.begin(), mine.end()) != mine.end()) return std::nullopt;
      // the witness must be the stored square corner for corner, with b and w
      // diagonally opposite
      auto stored = q.corners(*sq);
      if (std::vector<VertexId>(stored.begin(), stored.end()) != cube::canonical(m.square)) return std::nullopt;
      auto corner = [&](VertexId x) {
        return static_cast<unsigned>(std::find(stored.begin(), stored.end(), x) - stored.begin());
      };
      if ((corner(b) ^ corner(w)) != 3) return std::nullopt;
      out.v[m.index] = w;
      return out;
    }
    case MoveKind::InsertDetour: {
      if (m.index > s || m.detour.empty() || m.detour.front() != p.v[m.index]) return std::nullopt;
      for (std::size_t i = 0; i + 1 < m.detour.size(); ++i)
        if (!d.adjacent(m.detour[i], m.detour[i + 1])) return std::nullopt;
      std::vector<VertexId> ins(m.detour.begin() + 1, m.detour.end());
      for (std::size_t i = m.detour.size() - 1; i-- > 0;) ins.push_back(m.detour[i]);
      out.v.insert(out.v.begin() + static_cast<std::ptrdiff_t>(m.index) + 1, ins.begin(), ins.end());
      return out;
    }
  }
  return std::nullopt;
}

std::optional<EdgePath> replay(const DualComplex& d, const EdgePath& initial, const std::vector<Move>& moves) {
  if (!valid_path(d, initial)) return std::nullopt;
  EdgePath p = initial;
  for (const Move& m : moves) {
    auto next = apply_move(d, p, m);
    if (!next) return std::nullopt;
    p = std::move(*next);
  }
  return p;
}

bool verify_certificate(const DualComplex& d, const EdgePath& initial, const HomotopyCertificate& c,
                        const EdgePath& claimed_final) {
  auto out = replay(d, initial, c.moves);
  return out && *out == claimed_final;
}

MirrorCrossings crossings(const DualComplex& d, const EdgePath& p, int mirror) {
  if (mirror < 0 || mirror >= static_cast<int>(d.mirrors().size()))
    fail(ErrorCode::InvalidArgument, "no mirror " + std::to_string(mirror));
  if (!d.mirror_separating(mirror))
    fail(ErrorCode::NonSeparatingMirror, "mirror " + std::to_string(mirror) + " does not separate its framings");
  MirrorCrossings out;
  const auto& comp = d.mirror_components(mirror);
  const bool loop = p.is_loop() && p.length() > 0;
  const std::size_t n = loop ? p.length() : p.v.size();
  std::vector<char> in(n);
  std::size_t outside = n;
  for (std::size_t i = 0; i < n; ++i) {
    in[i] = on_mirror(d, p.v[i], mirror) ? 1 : 0;
    if (!in[i] && outside == n) outside = i;
  }
  if (outside == n) return out;  // never leaves the mirror
  auto component = [&](std::size_t i) { return comp[static_cast<std::size_t>(p.v[i])]; };
  if (loop) {
    // walk once around, starting just after a vertex off the mirror
    std::size_t i = 0;
    while (i < n) {
      const std::size_t at = (outside + 1 + i) % n;
      if (!in[at]) {
        ++i;
        continue;
      }
      std::size_t len = 0;
      while (in[(at + len) % n]) ++len;
      const std::size_t before = (at + n - 1) % n, after = (at + len) % n;
      if (component(before) != component(after)) out.subpaths.push_back({mirror, at, len});
      i += len;
    }
    std::sort(out.subpaths.begin(), out.subpaths.end(),
              [](const Crossing& a, const Crossing& b) { return a.start < b.start; });
  } else {
    for (std::size_t i = 0; i < n;) {
      if (!in[i]) {
        ++i;
        continue;
      }
      std::size_t len = 0;
      while (i + len < n && in[i + len]) ++len;
      if (i > 0 && i + len < n && component(i - 1) != component(i + len))
        out.subpaths.push_back({mirror, i, len});
      i += len;
    }
  }
  out.count = static_cast<int>(out.subpaths.size());
  return out;
}

CrossingProfile crossing_profile(const DualComplex& d, const EdgePath& p) {
  CrossingProfile out;
  std::set<int> touched;
  for (VertexId v : p.v)
    for (int m : d.mirrors_containing(static_cast<CellId>(v))) touched.insert(m);
  out.per_mirror.assign(d.mirrors().size(), 0);
  for (int m : touched) {
    auto c = crossings(d, p, m);
    out.per_mirror[static_cast<std::size_t>(m)] = c.count;
    out.total += c.count;
    out.crossings.insert(out.crossings.end(), c.subpaths.begin(), c.subpaths.end());
  }
  return out;
}

std::optional<CellId> containing_tile(const DualComplex& d, const EdgePath& p) {
  if (p.v.empty()) return std::nullopt;
  auto common = d.tiles_containing(static_cast<CellId>(p.v[0]));
  for (VertexId v : p.v) {
    auto t = d.tiles_containing(static_cast<CellId>(v));
    std::vector<CellId> next;
    std::set_intersection(common.begin(), common.end(), t.begin(), t.end(), std::back_inserter(next));
    common = std::move(next);
  }
  if (common.empty()) return std::nullopt;
  return common.front();
}

bool is_efficient(const DualComplex& d, const EdgePath& p) {
  std::size_t i = 0;
  const std::size_t s = p.length();
  while (i < s && d.height(p.v[i + 1]) > d.height(p.v[i])) ++i;
  while (i < s && d.height(p.v[i + 1]) < d.height(p.v[i])) ++i;
  return i == s;
}

namespace {

void strip_backtracks(EdgePath& p, std::vector<Move>& moves) {
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 1; i < p.length(); ++i)
      if (p.v[i - 1] == p.v[i + 1]) {
        Move m;
        m.kind = MoveKind::BacktrackRemoval;
        m.index = i;
        moves.push_back(m);
        p.v.erase(p.v.begin() + static_cast<std::ptrdiff_t>(i), p.v.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        again = true;
        break;
      }
  }
}

// Raise every interior local minimum across the square it spans with its
// neighbours inside the tile; returns false if there was none.
bool raise_minima(const DualComplex& d, CellId tile, EdgePath& p, std::vector<Move>& moves) {
  const CellComplex& y = d.source();
  bool raised = false;
  for (std::size_t i = 1; i < p.length(); ++i) {
    const int hi = d.height(p.v[i]);
    if (d.height(p.v[i - 1]) <= hi || d.height(p.v[i + 1]) <= hi) continue;
    const VertexId a = p.v[i - 1], b = p.v[i], c = p.v[i + 1];
    if (a == c) continue;  // a backtrack, stripped separately
    std::vector<VertexId> corners;
    for (VertexId cell : {a, c})
      for (VertexId x : y.vertex_set(static_cast<CellId>(cell))) corners.push_back(x);
    const CellId w = y.span_in(tile, corners);
    if (y.dim(w) != hi + 2) fail(ErrorCode::Internal, "neighbours of a minimum do not span a square");
    Move m;
    m.kind = MoveKind::SquareSlide;
    m.index = i;
    m.replacement = w;
    m.square = cube::canonical(std::vector<VertexId>{b, a, c, w});
    moves.push_back(m);
    p.v[i] = w;
    raised = true;
  }
  return raised;
}

CellId require_tile(const DualComplex& d, const EdgePath& p) {
  auto t = containing_tile(d, p);
  if (!t) fail(ErrorCode::NotInTile, "path " + show(p) + " leaves every dual tile");
  return *t;
}

}  // namespace

EfficientResult make_efficient(const DualComplex& d, const EdgePath& p) {
  if (!valid_path(d, p)) fail(ErrorCode::InvalidArgument, "not an edge path");
  const CellId tile = require_tile(d, p);
  EfficientResult r;
  r.path = p;
  for (std::size_t round = 0;; ++round) {
    if (round > kIterationCap) fail(ErrorCode::Internal, "efficiency did not converge");
    strip_backtracks(r.path, r.certificate.moves);
    if (!raise_minima(d, tile, r.path, r.certificate.moves)) break;
  }
  return r;
}

HomotopyCertificate contract_in_tile(const DualComplex& d, const EdgePath& loop) {
  if (!valid_path(d, loop) || !loop.is_loop()) fail(ErrorCode::InvalidArgument, "not an edge loop");
  const CellId tile = require_tile(d, loop);
  HomotopyCertificate c;
  EdgePath p = loop;
  for (std::size_t round = 0; p.length() > 0; ++round) {
    if (round > kIterationCap) fail(ErrorCode::Internal, "contraction did not converge");
    // base the loop at its first highest vertex
    std::size_t top = 0;
    for (std::size_t i = 0; i < p.length(); ++i)
      if (d.height(p.v[i]) > d.height(p.v[top])) top = i;
    if (top != 0) {
      Move m;
      m.kind = MoveKind::Rotate;
      m.index = top;
      p = *apply_move(d, p, m);
      c.moves.push_back(m);
    }
    strip_backtracks(p, c.moves);
    raise_minima(d, tile, p, c.moves);
  }
  return c;
}

bool is_bridge(const DualComplex& d, const EdgePath& p) {
  if (p.length() == 0) return false;
  for (int m : d.mirrors_containing(static_cast<CellId>(p.v.front()))) {
    if (!on_mirror(d, p.v.back(), m)) continue;
    for (VertexId v : p.v)
      if (!on_mirror(d, v, m)) return true;
  }
  return false;
}

Bridge minimal_bridge(const DualComplex& d, const EdgePath& p) {
  if (!is_bridge(d, p)) fail(ErrorCode::NotABridge, "path " + show(p) + " is not a bridge");
  const std::size_t s = p.length();
  auto sub = [&](std::size_t i, std::size_t j) {
    return EdgePath{{p.v.begin() + static_cast<std::ptrdiff_t>(i), p.v.begin() + static_cast<std::ptrdiff_t>(j) + 1}};
  };
  std::vector<std::vector<char>> bridge(s + 1, std::vector<char>(s + 1, 0));
  for (std::size_t i = 0; i <= s; ++i)
    for (std::size_t j = i + 1; j <= s; ++j) bridge[i][j] = is_bridge(d, sub(i, j)) ? 1 : 0;
  // contains[i][j]: some proper subpath of [i, j] is a bridge
  std::vector<std::vector<char>> contains(s + 1, std::vector<char>(s + 1, 0));
  for (std::size_t len = 1; len <= s; ++len)
    for (std::size_t i = 0; i + len <= s; ++i) {
      const std::size_t j = i + len;
      if (len > 1)
        contains[i][j] = bridge[i + 1][j] || bridge[i][j - 1] || contains[i + 1][j] || contains[i][j - 1];
    }
  for (std::size_t i = 0; i <= s; ++i)
    for (std::size_t j = i + 1; j <= s; ++j)
      if (bridge[i][j] && !contains[i][j]) {
        Bridge b;
        b.path = sub(i, j);
        b.start = i;
        for (int m : d.mirrors_containing(static_cast<CellId>(b.path.v.front()))) {
          if (!on_mirror(d, b.path.v.back(), m)) continue;
          bool leaves = false;
          for (VertexId v : b.path.v) leaves = leaves || !on_mirror(d, v, m);
          if (leaves) {
            b.mirror = m;
            break;
          }
        }
        return b;
      }
  fail(ErrorCode::Internal, "a bridge without a minimal sub-bridge");
}

namespace {

// The cell τ ∩ M ∩ N1 ∩ ... ∩ Nr for one tile, or nullopt if that set is not
// the closure of a single cell.
std::optional<CellId> project_in_tile(const DualComplex& d, CellId sigma, CellId tile, int mirror,
                                      const std::vector<int>& others) {
  const CellComplex& y = d.source();
  std::vector<CellId> cells;
  for (CellId c : y.down_set(tile)) {
    if (!on_mirror(d, c, mirror)) continue;
    bool all = true;
    for (int n : others) all = all && on_mirror(d, c, n);
    if (all) cells.push_back(c);
  }
  (void)sigma;
  if (cells.empty()) return std::nullopt;
  const CellId top = cells.back();  // ids grow with dimension
  auto closure = y.down_set(top);
  if (closure != cells) return std::nullopt;
  return top;
}

bool meets(const Mirror& a, const Mirror& b) {
  std::vector<CellId> common;
  std::set_intersection(a.cells.begin(), a.cells.end(), b.cells.begin(), b.cells.end(), std::back_inserter(common));
  return !common.empty();
}

}  // namespace

EdgePath project_bridge(const DualComplex& d, const EdgePath& q, int mirror) {
  const CellComplex& y = d.source();
  const int n = y.dimension();
  const Mirror& m = d.mirrors().at(static_cast<std::size_t>(mirror));
  if (q.length() == 0 || !on_mirror(d, q.v.front(), mirror) || !on_mirror(d, q.v.back(), mirror))
    fail(ErrorCode::NotABridge, "endpoints are not on the mirror");
  EdgePath image;
  for (VertexId v : q.v) {
    const auto sigma = static_cast<CellId>(v);
    std::vector<int> others;
    for (int k : d.mirrors_containing(sigma))
      if (k != mirror && meets(d.mirrors()[static_cast<std::size_t>(k)], m)) others.push_back(k);
    std::optional<CellId> agreed;
    bool any = false;
    for (CellId tile : d.tiles_containing(sigma)) {
      bool touches = false;
      for (CellId c : y.down_set(tile)) touches = touches || m.contains(c);
      if (!touches) continue;
      any = true;
      auto p = project_in_tile(d, sigma, tile, mirror, others);
      if (!p || y.dim(*p) != n - 1 - static_cast<int>(others.size()) || (agreed && *agreed != *p))
        fail(ErrorCode::CarrierViolation, "projection of cell " + std::to_string(sigma) + " is not well defined");
      agreed = p;
    }
    if (!any) fail(ErrorCode::CarrierViolation, "cell " + std::to_string(sigma) + " has no tile meeting the mirror");
    if (!image.v.empty() && image.v.back() == *agreed) continue;
    if (!image.v.empty() && !d.adjacent(image.v.back(), *agreed))
      fail(ErrorCode::CarrierViolation, "consecutive projections are not adjacent");
    image.v.push_back(*agreed);
  }
  std::vector<Move> unused;
  strip_backtracks(image, unused);
  if (image.v.front() != q.v.front() || image.v.back() != q.v.back())
    fail(ErrorCode::Internal, "projection moved an endpoint");
  for (VertexId v : image.v)
    if (!on_mirror(d, v, mirror)) fail(ErrorCode::Internal, "projection left the mirror");
  if (image.length() + 2 > q.length()) fail(ErrorCode::Internal, "projection did not shorten the bridge");
  return image;
}

SurgeryResult surgery_step(const DualComplex& d, const EdgePath& loop) {
  if (!valid_path(d, loop) || !loop.is_loop()) fail(ErrorCode::InvalidArgument, "not an edge loop");
  const auto profile = crossing_profile(d, loop);
  if (profile.total == 0) fail(ErrorCode::NoCrossing, "the loop crosses no mirror");
  const std::size_t s = loop.length();
  int m0 = 0;
  while (profile.per_mirror[static_cast<std::size_t>(m0)] == 0) ++m0;
  const auto cr = crossings(d, loop, m0);
  if (cr.count < 2) fail(ErrorCode::Internal, "a loop crosses a mirror once");
  const Crossing& first = cr.subpaths[0];
  const Crossing& second = cr.subpaths[1];
  // q from the last vertex of the first crossing to the first of the second
  std::size_t q_start = (first.start + first.length - 1) % s;
  std::size_t q_len = (second.start + s - q_start) % s;
  if (q_len > s - q_len) {
    q_start = second.start;
    q_len = s - q_len;
  }
  auto cyclic = [&](std::size_t from, std::size_t len) {
    EdgePath out;
    for (std::size_t i = 0; i <= len; ++i) out.v.push_back(loop.v[(from + i) % s]);
    return out;
  };
  const EdgePath q = cyclic(q_start, q_len);
  SurgeryResult r;
  r.mirror = m0;
  r.bridge = minimal_bridge(d, q);
  const std::size_t shift = (q_start + r.bridge.start) % s;
  EdgePath p = loop;
  if (shift != 0) {
    Move rot;
    rot.kind = MoveKind::Rotate;
    rot.index = shift;
    p = *apply_move(d, p, rot);
    r.moves.push_back(rot);
  }
  r.projection = project_bridge(d, r.bridge.path, r.bridge.mirror);
  const std::size_t e = r.bridge.path.length();
  const std::size_t pm = r.projection.length();
  if (pm > 0) {
    Move ins;
    ins.kind = MoveKind::InsertDetour;
    ins.index = e;
    ins.detour = reversed(r.projection).v;
    p = *apply_move(d, p, ins);
    r.moves.push_back(ins);
  }
  r.split = e + pm;
  r.p1.v.assign(p.v.begin(), p.v.begin() + static_cast<std::ptrdiff_t>(r.split) + 1);
  r.p2.v.assign(p.v.begin() + static_cast<std::ptrdiff_t>(r.split), p.v.end());
  if (r.p1.length() >= s || r.p2.length() >= s) fail(ErrorCode::Internal, "surgery did not shorten the loop");
  return r;
}

std::size_t ContractionNode::depth() const {
  std::size_t d = 0;
  for (const auto& c : children) d = std::max(d, c.depth());
  return d + 1;
}

std::size_t ContractionNode::move_count() const {
  std::size_t n = moves.size();
  for (const auto& c : children) n += c.move_count();
  return n;
}

namespace {

ContractionNode contract(const DualComplex& d, const EdgePath& loop) {
  ContractionNode node;
  node.loop = loop;
  if (loop.length() == 0) return node;
  if (crossing_profile(d, loop).total == 0) {
    node.moves = contract_in_tile(d, loop).moves;
    return node;
  }
  auto step = surgery_step(d, loop);
  node.moves = std::move(step.moves);
  node.split = step.split;
  node.children.push_back(contract(d, step.p1));
  node.children.push_back(contract(d, step.p2));
  return node;
}

}  // namespace

ContractionNode contract_loop(const DualComplex& d, const EdgePath& loop) {
  for (std::size_t m = 0; m < d.mirrors().size(); ++m)
    if (!d.mirror_separating(static_cast<int>(m)))
      fail(ErrorCode::Unsupported, "non-separating mirror " + std::to_string(m));
  if (!valid_path(d, loop) || !loop.is_loop()) fail(ErrorCode::InvalidArgument, "not an edge loop");
  return contract(d, loop);
}

bool verify_contraction(const DualComplex& d, const ContractionNode& node) {
  auto out = replay(d, node.loop, node.moves);
  if (!out) return false;
  if (!node.split) return node.children.empty() && out->length() == 0;
  const std::size_t k = *node.split;
  if (node.children.size() != 2 || k > out->length() || out->v[k] != out->v[0]) return false;
  EdgePath a{{out->v.begin(), out->v.begin() + static_cast<std::ptrdiff_t>(k) + 1}};
  EdgePath b{{out->v.begin() + static_cast<std::ptrdiff_t>(k), out->v.end()}};
  return node.children[0].loop == a && node.children[1].loop == b && verify_contraction(d, node.children[0]) &&
         verify_contraction(d, node.children[1]);
}

EdgePath random_loop(const DualComplex& d, std::mt19937_64& rng, std::size_t max_length) {
  const auto n = d.vertex_count();
  EdgePath p;
  p.v.push_back(static_cast<VertexId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)));
  const std::size_t steps = std::uniform_int_distribution<std::size_t>(0, max_length / 2)(rng);
  for (std::size_t i = 0; i < steps; ++i) {
    auto nb = d.neighbours(p.v.back());
    if (nb.empty()) break;
    p.v.push_back(nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)]);
  }
  // BFS from the start; walk the tree back from the end
  std::vector<VertexId> parent(n, -1);
  std::deque<VertexId> queue{p.v.front()};
  parent[static_cast<std::size_t>(p.v.front())] = p.v.front();
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (VertexId w : d.neighbours(v))
      if (parent[static_cast<std::size_t>(w)] < 0) {
        parent[static_cast<std::size_t>(w)] = v;
        queue.push_back(w);
      }
  }
  for (VertexId v = p.v.back(); v != p.v.front();) {
    v = parent[static_cast<std::size_t>(v)];
    p.v.push_back(v);
  }
  return p;
}

}  // namespace cubemill
