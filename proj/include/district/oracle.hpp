#pragma once
// Brute-force ground truth.  Deliberately naive and kept independent of the
// dp/solve implementations so it can cross-check them.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>

#include "district/graph.hpp"
#include "district/partition.hpp"

namespace district {

using OracleCount = boost::multiprecision::cpp_int;

struct OracleResult {
  // Canonical partitions: blocks by smallest member, members ascending.
  std::vector<std::vector<std::vector<VertexId>>> plans;
  std::vector<Cost> costs;  // aligned with plans
  std::map<std::pair<std::vector<Weight>, Cost>, OracleCount> histogram;
};

// Every connected k-partition with district weights in [L, U) and total cut
// cost < S, found by filtering all set partitions into exactly k blocks.
// Guard: |V| <= 14.
OracleResult enumerate_all(const EmbeddedGraph& g, const ProblemSpec& spec);

// One table entry shape, mirroring the dp slot discipline but built here
// from first principles.
struct OracleClusterEntry {
  std::vector<Weight> active;    // per block of join(pi_in, pi_out), block order
  std::vector<Weight> finished;  // sorted ascending
  Cost cost = 0;
  auto operator<=>(const OracleClusterEntry&) const = default;
};

// Brute-force cluster table for one topological configuration: enumerate
// partitions of the incident vertex set with parts connected inside the
// cluster's edge-subgraph, keep those inducing pi_in on the boundary and
// compatible with pi_out (no cut edge inside a merged block), and aggregate
// home weights per block of the join with pi_out.  Guard: <= 10 edges.
std::map<OracleClusterEntry, OracleCount> cluster_table_oracle(
    const EmbeddedGraph& g, const std::vector<EdgeId>& cluster_edges,
    const std::vector<VertexId>& boundary, const BoundaryPartition& pi_in,
    const BoundaryPartition& pi_out, const ProblemSpec& spec,
    const std::map<VertexId, EdgeId>& homes);

// Count for one fully specified configuration.
OracleCount cluster_count_oracle(const EmbeddedGraph& g, const std::vector<EdgeId>& cluster_edges,
                                 const std::vector<VertexId>& boundary,
                                 const BoundaryPartition& pi_in, const BoundaryPartition& pi_out,
                                 const OracleClusterEntry& entry, const ProblemSpec& spec,
                                 const std::map<VertexId, EdgeId>& homes);

}  // namespace district
