#pragma once
// Branch decompositions with sphere-cut structure: builders, validation,
// width measurement, and per-cluster boundary cyclic orders (theta).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "district/graph.hpp"

namespace district {

struct Cluster {
  int id = -1;
  std::array<int, 2> children{-1, -1};  // leaf iff children[0] < 0
  EdgeId leaf_edge = 0;                 // meaningful for leaves only
  std::vector<EdgeId> edge_set;         // ascending
  std::vector<VertexId> boundary;       // ascending
  // Cyclic order of the boundary vertices along a single closed curve;
  // present iff sphere-cut certified for this cluster.
  std::optional<std::vector<VertexId>> theta;

  bool is_leaf() const { return children[0] < 0; }
};

struct SphereCutDecomposition {
  std::vector<Cluster> clusters;
  int root = -1;
  std::size_t width = 0;
};

// Recomputes edge sets (bottom-up), boundaries, and width from the tree
// structure and leaf edges.
void recompute_derived(SphereCutDecomposition& d, const EmbeddedGraph& g);

// Caterpillar decomposition over the edge order given by a depth-first
// traversal of the dual graph (faces adjacent iff they share an edge),
// starting at the outer face, neighbor priority by smallest shared edge id.
// Every prefix of the order is face-connected.
SphereCutDecomposition sweep_decomposition(const EmbeddedGraph& g);

// Recursive bisection guided by BFS distances in the radial graph from
// `root_node` (a RadialGraph node index; pass SIZE_MAX for the outer face).
// Widths are certified by measurement, not by a theoretical bound.
SphereCutDecomposition radial_bfs_decomposition(const EmbeddedGraph& g,
                                                std::size_t root_node = SIZE_MAX);

// For each cluster, walks the boundary of the embedded edge subgraph and
// records theta when every boundary vertex lies on one closed walk exactly
// once.  Never changes edge sets, children, or width.
SphereCutDecomposition certify_theta(SphereCutDecomposition d, const EmbeddedGraph& g);

// Checks all structural invariants; returns human-readable violations
// (empty means valid).
std::vector<std::string> validate(const SphereCutDecomposition& d, const EmbeddedGraph& g);

// Fraction of clusters with theta present.
double theta_certification_rate(const SphereCutDecomposition& d);

}  // namespace district
