#include "district/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace district {

namespace {

bool block_connected(const EmbeddedGraph& g, const std::vector<VertexId>& block,
                     const std::vector<EdgeId>& allowed_edges) {
  if (block.empty()) return false;
  std::set<VertexId> members(block.begin(), block.end());
  std::set<VertexId> seen{block.front()};
  std::vector<VertexId> stack{block.front()};
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    for (EdgeId e : g.rotation.at(x)) {
      if (!std::binary_search(allowed_edges.begin(), allowed_edges.end(), e)) continue;
      VertexId y = g.other_endpoint(e, x);
      if (!members.count(y)) continue;
      if (seen.insert(y).second) stack.push_back(y);
    }
  }
  return seen.size() == members.size();
}

// All set partitions of `elems` into exactly k blocks, restricted-growth
// order, blocks in first-occurrence (= smallest member) order.
void rgs_exactly_k(const std::vector<VertexId>& elems, int k,
                   const std::function<void(const std::vector<std::vector<VertexId>>&)>& emit) {
  std::vector<std::vector<VertexId>> blocks;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == elems.size()) {
      if (static_cast<int>(blocks.size()) == k) emit(blocks);
      return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(elems[i]);
      rec(i + 1);
      blocks[b].pop_back();
    }
    if (static_cast<int>(blocks.size()) < k) {
      blocks.push_back({elems[i]});
      rec(i + 1);
      blocks.pop_back();
    }
  };
  rec(0);
}

}  // namespace

OracleResult enumerate_all(const EmbeddedGraph& g, const ProblemSpec& spec) {
  if (g.vertices.size() > 14) throw GraphError("oracle refuses instances with more than 14 vertices");
  OracleResult res;
  std::vector<VertexId> elems = g.vertex_ids();
  std::vector<EdgeId> all_edges = g.edge_ids();
  rgs_exactly_k(elems, spec.k, [&](const std::vector<std::vector<VertexId>>& blocks) {
    std::vector<Weight> weights;
    for (const auto& b : blocks) {
      Weight w = 0;
      for (VertexId v : b) w += g.vertex(v).weight;
      if (w < spec.min_weight || w >= spec.max_weight) return;
      weights.push_back(w);
    }
    for (const auto& b : blocks)
      if (!block_connected(g, b, all_edges)) return;
    std::map<VertexId, std::size_t> owner;
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (VertexId v : blocks[i]) owner[v] = i;
    Cost cost = 0;
    for (const auto& e : g.edges)
      if (owner.at(e.u) != owner.at(e.v)) cost += e.cost;
    if (cost >= spec.max_cost) return;
    res.plans.push_back(blocks);
    res.costs.push_back(cost);
    std::vector<Weight> sorted = weights;
    std::sort(sorted.begin(), sorted.end());
    res.histogram[{sorted, cost}] += 1;
  });
  // Lexicographic normal-form order, independent of enumeration order.
  std::vector<std::size_t> idx(res.plans.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return res.plans[a] < res.plans[b]; });
  OracleResult ordered;
  ordered.histogram = std::move(res.histogram);
  for (std::size_t i : idx) {
    ordered.plans.push_back(std::move(res.plans[i]));
    ordered.costs.push_back(res.costs[i]);
  }
  return ordered;
}

std::map<OracleClusterEntry, OracleCount> cluster_table_oracle(
    const EmbeddedGraph& g, const std::vector<EdgeId>& cluster_edges,
    const std::vector<VertexId>& boundary, const BoundaryPartition& pi_in,
    const BoundaryPartition& pi_out, const ProblemSpec& spec,
    const std::map<VertexId, EdgeId>& homes) {
  if (cluster_edges.size() > 10) throw GraphError("cluster oracle refuses more than 10 edges");
  std::vector<EdgeId> edges = cluster_edges;
  std::sort(edges.begin(), edges.end());
  std::set<VertexId> incident_set;
  for (EdgeId e : edges) {
    incident_set.insert(g.edge(e).u);
    incident_set.insert(g.edge(e).v);
  }
  std::vector<VertexId> incident(incident_set.begin(), incident_set.end());
  BoundaryPartition j = join(pi_in, pi_out);

  std::map<OracleClusterEntry, OracleCount> out;
  for (const auto& rho : enumerate_partitions(incident)) {
    bool ok = true;
    for (const auto& b : rho.blocks)
      if (!block_connected(g, b, edges)) ok = false;
    if (!ok) continue;
    if (restrict_to(rho, boundary) != pi_in) continue;

    // Merge the connected parts through the outside promise, then require
    // every cut edge to separate two genuinely different districts.
    BoundaryPartition merged = join(rho, pi_out);
    Cost cost = 0;
    for (EdgeId eid : edges) {
      const EdgeRec& e = g.edge(eid);
      if (rho.same_block(e.u, e.v)) continue;
      if (merged.same_block(e.u, e.v)) {
        ok = false;
        break;
      }
      cost += e.cost;
    }
    if (!ok || cost >= spec.max_cost) continue;

    OracleClusterEntry entry;
    entry.active.assign(j.block_count(), 0);
    entry.cost = cost;
    for (const auto& b : merged.blocks) {
      Weight w = 0;
      int slot = -1;
      for (VertexId v : b) {
        auto it = homes.find(v);
        if (it != homes.end() &&
            std::binary_search(edges.begin(), edges.end(), it->second))
          w += g.vertex(v).weight;
        if (slot < 0 && std::binary_search(boundary.begin(), boundary.end(), v))
          slot = j.block_of(v);
      }
      if (slot >= 0) {
        entry.active[static_cast<std::size_t>(slot)] += w;
      } else {
        if (w < spec.min_weight || w >= spec.max_weight) {
          ok = false;
          break;
        }
        entry.finished.push_back(w);
      }
    }
    if (!ok) continue;
    for (Weight w : entry.active)
      if (w >= spec.max_weight) ok = false;
    if (!ok) continue;
    std::sort(entry.finished.begin(), entry.finished.end());
    if (j.block_count() + entry.finished.size() > static_cast<std::size_t>(spec.k)) continue;
    out[entry] += 1;
  }
  return out;
}

OracleCount cluster_count_oracle(const EmbeddedGraph& g, const std::vector<EdgeId>& cluster_edges,
                                 const std::vector<VertexId>& boundary,
                                 const BoundaryPartition& pi_in, const BoundaryPartition& pi_out,
                                 const OracleClusterEntry& entry, const ProblemSpec& spec,
                                 const std::map<VertexId, EdgeId>& homes) {
  auto table = cluster_table_oracle(g, cluster_edges, boundary, pi_in, pi_out, spec, homes);
  auto it = table.find(entry);
  return it == table.end() ? OracleCount(0) : it->second;
}

}  // namespace district
