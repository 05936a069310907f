#include "cubemill/tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "cubemill/errors.hpp"
#include "cubemill/parallel.hpp"

namespace cubemill {

std::string TreeOfSpaces::vertex_name(int v) const {
  const int m = static_cast<int>(mirror_ids.size());
  return v < m ? "M" + std::to_string(mirror_ids[static_cast<std::size_t>(v)]) : "C" + std::to_string(v - m);
}

namespace {

int find(std::vector<int>& parent, int a) {
  while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
  return a;
}

// Iterative DFS; fills t.cycle with the first cycle met.
void find_cycle(TreeOfSpaces& t) {
  const int n = static_cast<int>(t.adjacency.size());
  std::vector<int> parent(static_cast<std::size_t>(n), -2), depth(static_cast<std::size_t>(n), 0);
  for (int root = 0; root < n && t.cycle.empty(); ++root) {
    if (parent[static_cast<std::size_t>(root)] != -2) continue;
    parent[static_cast<std::size_t>(root)] = -1;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    while (!stack.empty() && t.cycle.empty()) {
      auto& [v, next] = stack.back();
      const auto& nb = t.adjacency[static_cast<std::size_t>(v)];
      if (next == nb.size()) {
        stack.pop_back();
        continue;
      }
      const int w = nb[next++];
      if (w == parent[static_cast<std::size_t>(v)]) continue;
      if (parent[static_cast<std::size_t>(w)] == -2) {
        parent[static_cast<std::size_t>(w)] = v;
        depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
        stack.push_back({w, 0});
        continue;
      }
      if (depth[static_cast<std::size_t>(w)] < depth[static_cast<std::size_t>(v)]) {
        for (int x = v; x != w; x = parent[static_cast<std::size_t>(x)]) t.cycle.push_back(x);
        t.cycle.push_back(w);
        std::reverse(t.cycle.begin(), t.cycle.end());
      }
    }
  }
}

}  // namespace

TreeOfSpaces build_tree(const CellComplex& y, const Folding& f, int coordinate) {
  const int n = y.dimension();
  if (coordinate < 0 || coordinate >= n)
    fail(ErrorCode::InvalidArgument, "coordinate " + std::to_string(coordinate) + " outside 0.." + std::to_string(n - 1));
  TreeOfSpaces t;
  t.coordinate = coordinate;
  const auto all = mirrors(y, f);
  std::vector<const Mirror*> mine;
  std::set<CellId> cut;
  for (const Mirror& m : all)
    if (m.coordinate == coordinate) {
      mine.push_back(&m);
      t.mirror_ids.push_back(m.id);
      cut.insert(m.cells.begin(), m.cells.end());
    }

  const auto tops = y.top_cells();
  std::map<CellId, int> index;
  for (std::size_t i = 0; i < tops.size(); ++i) index[tops[i]] = static_cast<int>(i);
  std::vector<int> parent(tops.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (CellId c : y.cells_of_dim(n - 1)) {
    if (cut.count(c)) continue;
    int first = -1;
    for (CellId up : y.cofaces(c)) {
      auto it = index.find(up);
      if (it == index.end()) continue;
      if (first < 0) first = it->second;
      else parent[static_cast<std::size_t>(find(parent, it->second))] = find(parent, first);
    }
  }
  std::map<int, std::vector<CellId>> groups;
  for (std::size_t i = 0; i < tops.size(); ++i) groups[find(parent, static_cast<int>(i))].push_back(tops[i]);
  for (auto& [root, cells] : groups) t.components.push_back(cells);
  std::sort(t.components.begin(), t.components.end());
  std::map<CellId, int> component_of;
  for (std::size_t k = 0; k < t.components.size(); ++k)
    for (CellId c : t.components[k]) component_of[c] = static_cast<int>(k);

  const int mcount = static_cast<int>(mine.size());
  std::set<std::pair<int, int>> edges;
  for (int k = 0; k < mcount; ++k)
    for (CellId c : mine[static_cast<std::size_t>(k)]->cells)
      for (CellId up : y.up_set(c)) {
        auto it = component_of.find(up);
        if (it != component_of.end()) edges.insert({k, mcount + it->second});
      }
  t.edges.assign(edges.begin(), edges.end());
  t.adjacency.assign(static_cast<std::size_t>(mcount) + t.components.size(), {});
  for (auto [a, b] : t.edges) {
    t.adjacency[static_cast<std::size_t>(a)].push_back(b);
    t.adjacency[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& nb : t.adjacency) std::sort(nb.begin(), nb.end());

  const int vcount = static_cast<int>(t.adjacency.size());
  std::vector<int> uf(static_cast<std::size_t>(vcount));
  std::iota(uf.begin(), uf.end(), 0);
  int pieces = vcount;
  for (auto [a, b] : t.edges) {
    const int ra = find(uf, a), rb = find(uf, b);
    if (ra != rb) {
      uf[static_cast<std::size_t>(ra)] = rb;
      --pieces;
    }
  }
  t.connected = pieces <= 1;
  find_cycle(t);
  t.acyclic = t.cycle.empty();
  for (int v = 0; v < vcount; ++v)
    if (t.adjacency[static_cast<std::size_t>(v)].size() == 1) t.leaves.push_back(v);
  t.leafless = t.leaves.empty();
  return t;
}

std::vector<TreeOfSpaces> build_trees(const CellComplex& y, const Folding& f) {
  const int n = std::max(y.dimension(), 0);
  std::vector<TreeOfSpaces> out(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) { out[i] = build_tree(y, f, static_cast<int>(i)); });
  return out;
}

}  // namespace cubemill
