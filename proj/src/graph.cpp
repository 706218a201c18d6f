#include "district/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace district {

const Vertex& EmbeddedGraph::vertex(VertexId id) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), id,
                             [](const Vertex& a, VertexId b) { return a.id < b; });
  if (it == vertices.end() || it->id != id) throw GraphError("unknown vertex id");
  return *it;
}

const EdgeRec& EmbeddedGraph::edge(EdgeId id) const {
  auto it = std::lower_bound(edges.begin(), edges.end(), id,
                             [](const EdgeRec& a, EdgeId b) { return a.id < b; });
  if (it == edges.end() || it->id != id) throw GraphError("unknown edge id");
  return *it;
}

bool EmbeddedGraph::has_vertex(VertexId id) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), id,
                             [](const Vertex& a, VertexId b) { return a.id < b; });
  return it != vertices.end() && it->id == id;
}

VertexId EmbeddedGraph::other_endpoint(EdgeId e, VertexId v) const {
  const EdgeRec& er = edge(e);
  if (er.u == v) return er.v;
  if (er.v == v) return er.u;
  throw GraphError("vertex not an endpoint");
}

Weight EmbeddedGraph::total_weight() const {
  Weight w = 0;
  for (const auto& v : vertices) w += v.weight;
  return w;
}

Cost EmbeddedGraph::total_cost() const {
  Cost c = 0;
  for (const auto& e : edges) c += e.cost;
  return c;
}

std::vector<VertexId> EmbeddedGraph::vertex_ids() const {
  std::vector<VertexId> ids;
  ids.reserve(vertices.size());
  for (const auto& v : vertices) ids.push_back(v.id);
  return ids;
}

std::vector<EdgeId> EmbeddedGraph::edge_ids() const {
  std::vector<EdgeId> ids;
  ids.reserve(edges.size());
  for (const auto& e : edges) ids.push_back(e.id);
  return ids;
}

EmbeddedGraph build_graph(const GraphData& raw) {
  EmbeddedGraph g;
  g.vertices = raw.vertices;
  g.edges = raw.edges;
  g.rotation = raw.rotation;
  std::sort(g.vertices.begin(), g.vertices.end(),
            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  std::sort(g.edges.begin(), g.edges.end(),
            [](const EdgeRec& a, const EdgeRec& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < g.vertices.size(); ++i)
    if (g.vertices[i].id == g.vertices[i - 1].id) throw GraphError("duplicate vertex id");
  for (std::size_t i = 1; i < g.edges.size(); ++i)
    if (g.edges[i].id == g.edges[i - 1].id) throw GraphError("duplicate edge id");
  if (g.vertices.empty()) throw GraphError("empty graph");

  std::map<VertexId, std::multiset<EdgeId>> incident;
  for (const auto& e : g.edges) {
    if (!g.has_vertex(e.u) || !g.has_vertex(e.v)) throw GraphError("edge endpoint missing");
    if (e.u == e.v) throw GraphError("self-loop rejected");
    incident[e.u].insert(e.id);
    incident[e.v].insert(e.id);
  }
  for (const auto& v : g.vertices) {
    auto rit = g.rotation.find(v.id);
    std::multiset<EdgeId> rot;
    if (rit != g.rotation.end()) rot = {rit->second.begin(), rit->second.end()};
    auto iit = incident.find(v.id);
    std::multiset<EdgeId> inc;
    if (iit != incident.end()) inc = iit->second;
    if (rot != inc) throw GraphError("rotation does not list incident edges exactly once");
    if (rit == g.rotation.end()) g.rotation[v.id] = {};
  }

  // Connectivity over edges.
  if (!g.edges.empty() || g.vertices.size() > 1) {
    std::set<VertexId> seen;
    std::deque<VertexId> queue{g.vertices.front().id};
    seen.insert(g.vertices.front().id);
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      for (EdgeId e : g.rotation.at(v)) {
        VertexId w = g.other_endpoint(e, v);
        if (seen.insert(w).second) queue.push_back(w);
      }
    }
    if (seen.size() != g.vertices.size()) throw GraphError("graph is disconnected");
  }

  if (!g.edges.empty()) {
    auto fs = faces(g);
    long long euler = static_cast<long long>(g.vertices.size()) -
                      static_cast<long long>(g.edges.size()) + static_cast<long long>(fs.size());
    if (euler != 2) throw GraphError("non-planar rotation system (Euler check fails)");
  }
  return g;
}

std::vector<FaceWalk> faces(const EmbeddedGraph& g) {
  // Next dart of (e, tail): arrive at head, leave along the rotation
  // successor of e at head.
  std::set<Dart> visited;
  std::vector<FaceWalk> out;
  for (const auto& er : g.edges) {
    for (VertexId tail : {er.u, er.v}) {
      Dart start{er.id, tail};
      if (visited.count(start)) continue;
      FaceWalk walk;
      Dart d = start;
      do {
        visited.insert(d);
        walk.push_back(d);
        VertexId head = g.other_endpoint(d.e, d.tail);
        const auto& rot = g.rotation.at(head);
        auto it = std::find(rot.begin(), rot.end(), d.e);
        std::size_t pos = static_cast<std::size_t>(it - rot.begin());
        EdgeId next = rot[(pos + 1) % rot.size()];
        d = Dart{next, head};
      } while (!(d == start));
      out.push_back(std::move(walk));
    }
  }
  return out;
}

std::size_t outer_face_index(const std::vector<FaceWalk>& fs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < fs.size(); ++i)
    if (fs[i].size() > fs[best].size()) best = i;
  return best;
}

std::size_t RadialGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& a : adjacency) total += a.size();
  return total / 2;
}

RadialGraph radial_graph(const EmbeddedGraph& g) {
  RadialGraph rg;
  auto fs = faces(g);
  rg.num_vertex_nodes = g.vertices.size();
  rg.num_face_nodes = fs.size();
  rg.adjacency.assign(rg.node_count(), {});
  rg.vertex_of_node.reserve(rg.num_vertex_nodes);
  std::map<VertexId, std::size_t> node_of_vertex;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    rg.vertex_of_node.push_back(g.vertices[i].id);
    node_of_vertex[g.vertices[i].id] = i;
  }
  for (std::size_t f = 0; f < fs.size(); ++f) {
    std::set<VertexId> on_walk;
    for (const Dart& d : fs[f]) on_walk.insert(d.tail);
    for (VertexId v : on_walk) {
      std::size_t vn = node_of_vertex.at(v);
      rg.adjacency[vn].push_back(rg.face_node(f));
      rg.adjacency[rg.face_node(f)].push_back(vn);
    }
  }
  return rg;
}

std::vector<std::size_t> radial_bfs_distances(const RadialGraph& rg, std::size_t root) {
  std::vector<std::size_t> dist(rg.node_count(), SIZE_MAX);
  std::deque<std::size_t> queue{root};
  dist[root] = 0;
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t y : rg.adjacency[x]) {
      if (dist[y] == SIZE_MAX) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

std::size_t radial_eccentricity(const RadialGraph& rg, std::size_t root) {
  auto dist = radial_bfs_distances(rg, root);
  std::size_t ecc = 0;
  for (std::size_t f = 0; f < rg.num_face_nodes; ++f)
    ecc = std::max(ecc, dist[rg.face_node(f)]);
  return ecc;
}

PreprocessResult preprocess(const EmbeddedGraph& g) {
  PreprocessResult res;
  std::map<VertexId, Weight> weight;
  std::map<VertexId, std::vector<EdgeId>> rotation = g.rotation;
  std::map<EdgeId, EdgeRec> edges;
  std::map<VertexId, VertexId> absorbed;  // removed vertex -> neighbor it merged into
  for (const auto& v : g.vertices) weight[v.id] = v.weight;
  for (const auto& e : g.edges) edges[e.id] = e;

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = rotation.begin(); it != rotation.end(); ++it) {
      if (it->second.size() != 1) continue;
      if (rotation.size() == 1) break;  // single vertex left
      VertexId v = it->first;
      EdgeId e = it->second.front();
      const EdgeRec& er = edges.at(e);
      VertexId u = (er.u == v) ? er.v : er.u;
      weight[u] += weight[v];
      absorbed[v] = u;
      res.forced_uncut.push_back(e);
      auto& urot = rotation[u];
      urot.erase(std::find(urot.begin(), urot.end(), e));
      edges.erase(e);
      weight.erase(v);
      rotation.erase(it);
      changed = true;
      break;
    }
  }

  for (const auto& v : g.vertices) {
    VertexId cur = v.id;
    while (absorbed.count(cur)) cur = absorbed.at(cur);
    res.merged_into[v.id] = cur;
  }

  if (rotation.size() == 1) {
    res.trivial = true;
    VertexId v = rotation.begin()->first;
    res.trivial_vertex = Vertex{v, weight.at(v)};
    GraphData raw;
    raw.vertices = {*res.trivial_vertex};
    raw.rotation[v] = {};
    res.graph = build_graph(raw);
    return res;
  }

  GraphData raw;
  for (const auto& [vid, w] : weight) raw.vertices.push_back({vid, w});
  for (const auto& [eid, er] : edges) raw.edges.push_back(er);
  raw.rotation = rotation;
  res.graph = build_graph(raw);
  return res;
}

EmbeddedGraph coarsen_weights(const EmbeddedGraph& g, Weight divisor) {
  if (divisor == 0) throw GraphError("divisor must be positive");
  EmbeddedGraph out = g;
  for (auto& v : out.vertices) v.weight = (v.weight + divisor - 1) / divisor;
  return out;
}

void validate_spec(const ProblemSpec& spec, const EmbeddedGraph& g) {
  if (spec.k < 1) throw GraphError("k must be >= 1");
  if (spec.min_weight >= spec.max_weight) throw GraphError("require L < U");
  if (spec.max_cost == 0) throw GraphError("require S >= 1");
  Weight total = g.total_weight();
  Weight k = static_cast<Weight>(spec.k);
  if (k * spec.min_weight > total || total >= k * spec.max_weight)
    throw InfeasibleError("total weight outside [k*L, k*U): instance infeasible");
}

}  // namespace district
