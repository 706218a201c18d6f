#include "district/decomp.hpp"

#include <algorithm>
#include <deque>
#include <tuple>
#include <map>
#include <set>

namespace district {

namespace {

std::vector<VertexId> boundary_of(const EmbeddedGraph& g, const std::vector<EdgeId>& edge_set) {
  std::map<VertexId, std::size_t> inside;
  for (EdgeId e : edge_set) {
    const EdgeRec& er = g.edge(e);
    inside[er.u]++;
    inside[er.v]++;
  }
  std::vector<VertexId> out;
  for (const auto& [v, cnt] : inside)
    if (cnt < g.degree(v)) out.push_back(v);
  return out;
}

// Caterpillar (left-deep) decomposition over a fixed edge order.
SphereCutDecomposition caterpillar(const std::vector<EdgeId>& order) {
  SphereCutDecomposition d;
  int prev = -1;
  for (EdgeId e : order) {
    Cluster leaf;
    leaf.id = static_cast<int>(d.clusters.size());
    leaf.leaf_edge = e;
    d.clusters.push_back(leaf);
    if (prev < 0) {
      prev = leaf.id;
    } else {
      Cluster node;
      node.id = static_cast<int>(d.clusters.size());
      node.children = {prev, leaf.id};
      d.clusters.push_back(node);
      prev = node.id;
    }
  }
  d.root = prev;
  return d;
}

// Face index on each side of every edge.
std::map<EdgeId, std::vector<std::size_t>> edge_face_map(const std::vector<FaceWalk>& fs) {
  std::map<EdgeId, std::vector<std::size_t>> m;
  for (std::size_t f = 0; f < fs.size(); ++f)
    for (const Dart& d : fs[f]) m[d.e].push_back(f);
  return m;
}

}  // namespace

void recompute_derived(SphereCutDecomposition& d, const EmbeddedGraph& g) {
  // Bottom-up edge sets via iterative post-order.
  std::vector<int> order;
  std::vector<int> stack{d.root};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    order.push_back(x);
    const Cluster& c = d.clusters.at(static_cast<std::size_t>(x));
    if (!c.is_leaf()) {
      stack.push_back(c.children[0]);
      stack.push_back(c.children[1]);
    }
  }
  std::reverse(order.begin(), order.end());
  d.width = 0;
  for (int x : order) {
    Cluster& c = d.clusters.at(static_cast<std::size_t>(x));
    if (c.is_leaf()) {
      c.edge_set = {c.leaf_edge};
    } else {
      const auto& a = d.clusters.at(static_cast<std::size_t>(c.children[0])).edge_set;
      const auto& b = d.clusters.at(static_cast<std::size_t>(c.children[1])).edge_set;
      c.edge_set.clear();
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c.edge_set));
    }
    c.boundary = boundary_of(g, c.edge_set);
    d.width = std::max(d.width, c.boundary.size());
  }
}

namespace {

// Grows a disc of faces.  Each absorbed face contributes its unplaced edges
// contiguously along its walk, in whichever direction keeps the running
// boundary smaller; every prefix of the resulting order is a face-connected
// disc.
struct DiscGrowth {
  const EmbeddedGraph& g;
  const std::vector<FaceWalk>& fs;
  std::vector<EdgeId> order;
  std::set<EdgeId> placed;
  // Count of placed incident edges per vertex; a vertex is on the sweep
  // boundary while 0 < count < degree.
  std::map<VertexId, std::size_t> placed_at;

  std::size_t max_boundary_along(const std::vector<EdgeId>& seq) const {
    std::map<VertexId, std::size_t> cnt = placed_at;
    std::size_t worst = 0;
    for (EdgeId e : seq) {
      const EdgeRec& er = g.edge(e);
      cnt[er.u]++;
      cnt[er.v]++;
      std::size_t b = 0;
      for (const auto& [v, c] : cnt)
        if (c < g.degree(v)) ++b;
      worst = std::max(worst, b);
    }
    return worst;
  }

  // The sequence absorb(f, entry) would append, and the max boundary along
  // the way: walk order from the entry edge, better of the two directions.
  std::pair<std::vector<EdgeId>, std::size_t> plan(std::size_t f, EdgeId entry) const {
    const FaceWalk& walk = fs[f];
    std::size_t start = 0;
    for (std::size_t i = 0; i < walk.size(); ++i)
      if (walk[i].e == entry) {
        start = i;
        break;
      }
    std::vector<EdgeId> fwd, rev;
    std::set<EdgeId> seen_f, seen_r;
    for (std::size_t i = 0; i < walk.size(); ++i) {
      EdgeId ef = walk[(start + i) % walk.size()].e;
      if (!placed.count(ef) && seen_f.insert(ef).second) fwd.push_back(ef);
      EdgeId er = walk[(start + walk.size() - i) % walk.size()].e;
      if (!placed.count(er) && seen_r.insert(er).second) rev.push_back(er);
    }
    std::size_t bf = max_boundary_along(fwd), br = max_boundary_along(rev);
    return br < bf ? std::pair{rev, br} : std::pair{fwd, bf};
  }

  void absorb(std::size_t f, EdgeId entry) {
    for (EdgeId e : plan(f, entry).first) {
      placed.insert(e);
      order.push_back(e);
      placed_at[g.edge(e).u]++;
      placed_at[g.edge(e).v]++;
    }
  }

  std::vector<EdgeId> finish() {
    for (EdgeId e : g.edge_ids())
      if (placed.insert(e).second) order.push_back(e);
    return order;
  }
};

}  // namespace

SphereCutDecomposition sweep_decomposition(const EmbeddedGraph& g) {
  auto fs = faces(g);
  auto efm = edge_face_map(fs);
  std::size_t outer = outer_face_index(fs);

  // Dual adjacency, neighbor order by smallest shared edge id.
  std::vector<std::vector<std::pair<EdgeId, std::size_t>>> nbrs(fs.size());
  for (const auto& [e, sides] : efm) {
    if (sides.size() == 2 && sides[0] != sides[1]) {
      nbrs[sides[0]].push_back({e, sides[1]});
      nbrs[sides[1]].push_back({e, sides[0]});
    }
  }
  for (auto& n : nbrs) std::sort(n.begin(), n.end());

  DiscGrowth grow{g, fs};
  std::vector<bool> visited(fs.size(), false);
  // DFS from the outer face; the outer face contributes no edges itself so
  // the sweep starts inside.
  std::vector<std::size_t> dfs{outer};
  visited[outer] = true;
  while (!dfs.empty()) {
    std::size_t f = dfs.back();
    bool descended = false;
    for (const auto& [e, nf] : nbrs[f]) {
      if (!visited[nf]) {
        visited[nf] = true;
        grow.absorb(nf, e);
        dfs.push_back(nf);
        descended = true;
        break;
      }
    }
    if (!descended) dfs.pop_back();
  }

  SphereCutDecomposition d = caterpillar(grow.finish());
  recompute_derived(d, g);
  return d;
}

SphereCutDecomposition radial_bfs_decomposition(const EmbeddedGraph& g, std::size_t root_node) {
  auto fs = faces(g);
  auto efm = edge_face_map(fs);
  RadialGraph rg = radial_graph(g);
  if (root_node == SIZE_MAX) root_node = rg.face_node(outer_face_index(fs));
  auto dist = radial_bfs_distances(rg, root_node);

  // Greedy disc growth seeded at the root: absorb the edge-adjacent face
  // whose absorption keeps the running boundary smallest, breaking ties by
  // smaller radial-BFS depth, then face index.
  std::vector<bool> visited(fs.size(), false);
  if (root_node >= rg.num_vertex_nodes) visited[root_node - rg.num_vertex_nodes] = true;
  DiscGrowth grow{g, fs};
  std::size_t remaining = fs.size() - (root_node >= rg.num_vertex_nodes ? 1 : 0);
  while (remaining > 0) {
    std::size_t best = SIZE_MAX;
    EdgeId entry = 0;
    std::tuple<bool, std::size_t, std::size_t, std::size_t> best_key{true, SIZE_MAX, SIZE_MAX,
                                                                     SIZE_MAX};
    for (std::size_t f = 0; f < fs.size(); ++f) {
      if (visited[f]) continue;
      // Smallest edge shared with the disc, if any.
      EdgeId shared = 0;
      bool adjacent = false;
      for (const Dart& dart : fs[f]) {
        if (grow.placed.count(dart.e) && (!adjacent || dart.e < shared)) {
          shared = dart.e;
          adjacent = true;
        }
      }
      // A face bordering the (edge-less) root face counts as adjacent too.
      if (!adjacent && grow.order.empty()) adjacent = true;
      EdgeId e0 = adjacent && !grow.order.empty() ? shared : fs[f].front().e;
      std::tuple<bool, std::size_t, std::size_t, std::size_t> key{
          !adjacent, grow.plan(f, e0).second, dist[rg.face_node(f)], f};
      if (key < best_key) {
        best_key = key;
        best = f;
        entry = e0;
      }
    }
    visited[best] = true;
    grow.absorb(best, entry);
    --remaining;
  }

  SphereCutDecomposition d = caterpillar(grow.finish());
  recompute_derived(d, g);
  return d;
}

SphereCutDecomposition certify_theta(SphereCutDecomposition d, const EmbeddedGraph& g) {
  for (Cluster& c : d.clusters) {
    c.theta.reset();
    if (c.boundary.empty()) {
      c.theta = std::vector<VertexId>{};
      continue;
    }
    // Sub-embedding: rotation restricted to the cluster's edges.
    std::set<EdgeId> in(c.edge_set.begin(), c.edge_set.end());
    EmbeddedGraph sub;
    std::set<VertexId> vs;
    for (EdgeId e : c.edge_set) {
      const EdgeRec& er = g.edge(e);
      sub.edges.push_back(er);
      vs.insert(er.u);
      vs.insert(er.v);
    }
    for (VertexId v : vs) {
      sub.vertices.push_back(g.vertex(v));
      std::vector<EdgeId> rot;
      for (EdgeId e : g.rotation.at(v))
        if (in.count(e)) rot.push_back(e);
      sub.rotation[v] = rot;
    }
    std::sort(sub.vertices.begin(), sub.vertices.end(),
              [](const Vertex& a, const Vertex& bb) { return a.id < bb.id; });
    std::sort(sub.edges.begin(), sub.edges.end(),
              [](const EdgeRec& a, const EdgeRec& bb) { return a.id < bb.id; });

    std::set<VertexId> bnd(c.boundary.begin(), c.boundary.end());
    for (const FaceWalk& walk : faces(sub)) {
      std::map<VertexId, std::size_t> seen;
      std::vector<VertexId> order;
      for (const Dart& dart : walk) {
        if (bnd.count(dart.tail)) {
          seen[dart.tail]++;
          order.push_back(dart.tail);
        }
      }
      if (seen.size() != bnd.size()) continue;
      bool once = true;
      for (const auto& [_, cnt] : seen)
        if (cnt != 1) once = false;
      if (!once) continue;
      c.theta = order;
      break;
    }
  }
  return d;
}

std::vector<std::string> validate(const SphereCutDecomposition& d, const EmbeddedGraph& g) {
  std::vector<std::string> report;
  if (d.root < 0 || static_cast<std::size_t>(d.root) >= d.clusters.size()) {
    report.push_back("root index out of range");
    return report;
  }
  for (std::size_t i = 0; i < d.clusters.size(); ++i) {
    const Cluster& c = d.clusters[i];
    if (c.id != static_cast<int>(i)) report.push_back("cluster id mismatch at index " + std::to_string(i));
    bool lm = c.children[0] < 0, rm = c.children[1] < 0;
    if (lm != rm) report.push_back("non-binary node " + std::to_string(i));
  }
  // Leaf bijection with E.
  std::multiset<EdgeId> leaf_edges;
  for (const Cluster& c : d.clusters)
    if (c.is_leaf()) leaf_edges.insert(c.leaf_edge);
  const std::vector<EdgeId> ids = g.edge_ids();
  std::multiset<EdgeId> all(ids.begin(), ids.end());
  if (leaf_edges != all) report.push_back("leaf bijection violated");
  // Disjoint union, boundary, width.
  std::size_t width = 0;
  for (const Cluster& c : d.clusters) {
    if (c.is_leaf()) {
      if (c.edge_set != std::vector<EdgeId>{c.leaf_edge})
        report.push_back("leaf edge set mismatch at " + std::to_string(c.id));
    } else {
      const auto& a = d.clusters.at(static_cast<std::size_t>(c.children[0])).edge_set;
      const auto& b = d.clusters.at(static_cast<std::size_t>(c.children[1])).edge_set;
      std::vector<EdgeId> u;
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
      std::vector<EdgeId> inter;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
      if (!inter.empty()) report.push_back("children not disjoint at " + std::to_string(c.id));
      if (u != c.edge_set) report.push_back("edge set not union of children at " + std::to_string(c.id));
    }
    auto expect = boundary_of(g, c.edge_set);
    if (expect != c.boundary) report.push_back("boundary mismatch at " + std::to_string(c.id));
    width = std::max(width, c.boundary.size());
    if (c.theta) {
      std::vector<VertexId> t = *c.theta;
      std::sort(t.begin(), t.end());
      if (t != c.boundary) report.push_back("theta does not match boundary at " + std::to_string(c.id));
    }
  }
  if (width != d.width) report.push_back("width inconsistent");
  const auto& root_set = d.clusters.at(static_cast<std::size_t>(d.root)).edge_set;
  if (root_set != g.edge_ids()) report.push_back("root does not cover all edges");
  return report;
}

double theta_certification_rate(const SphereCutDecomposition& d) {
  if (d.clusters.empty()) return 1.0;
  std::size_t n = 0;
  for (const Cluster& c : d.clusters)
    if (c.theta) ++n;
  return static_cast<double>(n) / static_cast<double>(d.clusters.size());
}

}  // namespace district
