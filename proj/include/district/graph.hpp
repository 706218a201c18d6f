#pragma once
// Planar embedded graphs with vertex weights and edge costs, plus the
// structures derived from the rotation system: faces, dual, radial graph.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace district {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Weight = std::uint64_t;
using Cost = std::uint64_t;

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instance is well-formed but provably has no solution.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Vertex {
  VertexId id;
  Weight weight;
};

struct EdgeRec {
  EdgeId id;
  VertexId u, v;
  Cost cost;
};

// A directed edge side: edge e traversed from `tail` to the other endpoint.
struct Dart {
  EdgeId e;
  VertexId tail;
  bool operator==(const Dart&) const = default;
  auto operator<=>(const Dart&) const = default;
};

struct EmbeddedGraph {
  std::vector<Vertex> vertices;  // ascending by id
  std::vector<EdgeRec> edges;    // ascending by id
  // Per-vertex cyclic order of incident edge ids (combinatorial embedding).
  std::map<VertexId, std::vector<EdgeId>> rotation;

  const Vertex& vertex(VertexId id) const;
  const EdgeRec& edge(EdgeId id) const;
  bool has_vertex(VertexId id) const;
  VertexId other_endpoint(EdgeId e, VertexId v) const;
  std::size_t degree(VertexId v) const { return rotation.at(v).size(); }
  Weight total_weight() const;
  Cost total_cost() const;
  std::vector<VertexId> vertex_ids() const;
  std::vector<EdgeId> edge_ids() const;
};

// Raw description prior to validation; mirrors the graph file format.
struct GraphData {
  std::vector<Vertex> vertices;
  std::vector<EdgeRec> edges;
  std::map<VertexId, std::vector<EdgeId>> rotation;
  std::map<std::string, std::string> meta;
};

// Validates ids, rotation coverage, connectivity, no self-loops, and the
// Euler relation |V| - |E| + |F| = 2 for the face set traced from the
// rotation system.  Throws GraphError on violation.
EmbeddedGraph build_graph(const GraphData& raw);

using FaceWalk = std::vector<Dart>;

// Boundary walks traced from the rotation system; every dart appears in
// exactly one walk.
std::vector<FaceWalk> faces(const EmbeddedGraph& g);

// Index into faces(g) of the face with the longest walk (smallest index on
// ties).  Used as the conventional outer face for generated instances.
std::size_t outer_face_index(const std::vector<FaceWalk>& fs);

// Bipartite vertex/face incidence graph.  Node indices: vertex-nodes first
// (in ascending vertex-id order), then face-nodes in faces(g) order.
struct RadialGraph {
  std::size_t num_vertex_nodes = 0;
  std::size_t num_face_nodes = 0;
  std::vector<std::vector<std::size_t>> adjacency;
  std::vector<VertexId> vertex_of_node;  // first num_vertex_nodes entries

  std::size_t node_count() const { return num_vertex_nodes + num_face_nodes; }
  std::size_t face_node(std::size_t face_index) const { return num_vertex_nodes + face_index; }
  std::size_t edge_count() const;
};

RadialGraph radial_graph(const EmbeddedGraph& g);

// BFS hop distances from `root`; unreachable nodes get SIZE_MAX.
std::vector<std::size_t> radial_bfs_distances(const RadialGraph& rg, std::size_t root);

// Max BFS distance from root to any face-node (hops needed to reach every
// face; vertex-nodes are always en route).
std::size_t radial_eccentricity(const RadialGraph& rg, std::size_t root);

struct PreprocessResult {
  EmbeddedGraph graph;
  // Original vertex id -> surviving vertex id (identity for survivors).
  std::map<VertexId, VertexId> merged_into;
  std::vector<EdgeId> forced_uncut;  // pendant edges, never cut in any plan
  bool trivial = false;              // graph reduced to a single vertex
  std::optional<Vertex> trivial_vertex;
};

// Repeatedly contracts degree-one vertices into their neighbors (weights
// add).  Resulting graph has min degree >= 2 unless trivial.
PreprocessResult preprocess(const EmbeddedGraph& g);

// Each weight p becomes ceil(p / divisor).
EmbeddedGraph coarsen_weights(const EmbeddedGraph& g, Weight divisor);

struct ProblemSpec {
  int k = 1;
  Weight min_weight = 0;       // L, inclusive
  Weight max_weight = 0;       // U, exclusive
  Cost max_cost = 0;           // S, exclusive upper bound on solution cost
};

// k >= 1, L < U, and k*L <= total weight < k*U; throws GraphError otherwise.
void validate_spec(const ProblemSpec& spec, const EmbeddedGraph& g);

}  // namespace district
