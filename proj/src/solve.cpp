#include "district/solve.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace district {

Plan plan_from_cut(const EmbeddedGraph& g, const std::vector<EdgeId>& cut) {
  Plan plan;
  plan.cut_edges = cut;
  std::sort(plan.cut_edges.begin(), plan.cut_edges.end());

  std::map<VertexId, VertexId> parent;
  for (const auto& v : g.vertices) parent[v.id] = v.id;
  auto find = [&](VertexId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& e : g.edges) {
    if (std::binary_search(plan.cut_edges.begin(), plan.cut_edges.end(), e.id)) {
      plan.cost += e.cost;
      continue;
    }
    parent[find(e.u)] = find(e.v);
  }
  std::map<VertexId, std::vector<VertexId>> comps;
  for (const auto& v : g.vertices) comps[find(v.id)].push_back(v.id);
  std::vector<std::vector<VertexId>> districts;
  for (auto& [_, members] : comps) {
    std::sort(members.begin(), members.end());
    districts.push_back(std::move(members));
  }
  std::sort(districts.begin(), districts.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (const auto& d : districts) {
    Weight w = 0;
    for (VertexId v : d) w += g.vertex(v).weight;
    plan.weights.push_back(w);
  }
  plan.districts = std::move(districts);
  return plan;
}

std::vector<std::string> validate_plan(const EmbeddedGraph& g, const ProblemSpec& spec,
                                       const Plan& plan) {
  std::vector<std::string> bad;
  auto complain = [&](const std::string& s) { bad.push_back(s); };

  if (plan.districts.size() != static_cast<std::size_t>(spec.k))
    complain("plan has " + std::to_string(plan.districts.size()) + " districts, expected " +
             std::to_string(spec.k));

  std::map<VertexId, int> owner;
  for (std::size_t i = 0; i < plan.districts.size(); ++i) {
    if (plan.districts[i].empty()) complain("district " + std::to_string(i) + " is empty");
    for (VertexId v : plan.districts[i]) {
      if (!g.has_vertex(v)) {
        complain("district lists unknown vertex " + std::to_string(v));
      } else if (!owner.emplace(v, static_cast<int>(i)).second) {
        complain("vertex " + std::to_string(v) + " appears in two districts");
      }
    }
  }
  for (const auto& v : g.vertices)
    if (!owner.count(v.id)) complain("vertex " + std::to_string(v.id) + " unassigned");
  if (!bad.empty()) return bad;

  if (plan.weights.size() != plan.districts.size()) {
    complain("weights not aligned with districts");
    return bad;
  }
  for (std::size_t i = 0; i < plan.districts.size(); ++i) {
    Weight w = 0;
    for (VertexId v : plan.districts[i]) w += g.vertex(v).weight;
    if (w != plan.weights[i])
      complain("district " + std::to_string(i) + " weight mismatch");
    if (w < spec.min_weight || w >= spec.max_weight)
      complain("district " + std::to_string(i) + " weight " + std::to_string(w) +
               " outside [" + std::to_string(spec.min_weight) + ", " +
               std::to_string(spec.max_weight) + ")");
    // Connectivity within the district over kept edges.
    std::set<VertexId> seen{plan.districts[i].front()};
    std::vector<VertexId> stack{plan.districts[i].front()};
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (EdgeId e : g.rotation.at(x)) {
        VertexId y = g.other_endpoint(e, x);
        if (owner.at(y) != static_cast<int>(i)) continue;
        if (seen.insert(y).second) stack.push_back(y);
      }
    }
    if (seen.size() != plan.districts[i].size())
      complain("district " + std::to_string(i) + " is disconnected");
  }

  std::vector<EdgeId> expected_cut;
  Cost cost = 0;
  for (const auto& e : g.edges) {
    if (owner.at(e.u) != owner.at(e.v)) {
      expected_cut.push_back(e.id);
      cost += e.cost;
    }
  }
  if (expected_cut != plan.cut_edges) complain("cut_edges inconsistent with the partition");
  if (cost != plan.cost) complain("cost inconsistent with the cut set");
  if (cost >= spec.max_cost) complain("cost " + std::to_string(cost) + " >= S");
  return bad;
}

std::vector<RootEntry> root_entries(const DpContext& ctx, const DpResult& dp) {
  std::vector<RootEntry> out;
  const ClusterTable& t = dp.tables[static_cast<std::size_t>(ctx.d.root)];
  for (const auto& [topo, wc] : t.groups) {
    for (const auto& [key, val] : wc) {
      if (val.is_zero()) continue;
      if (key.finished.size() != static_cast<std::size_t>(ctx.spec.k)) continue;
      out.push_back({key, val});
    }
  }
  std::sort(out.begin(), out.end(), [](const RootEntry& a, const RootEntry& b) {
    if (a.key.cost != b.key.cost) return a.key.cost < b.key.cost;
    return a.key.finished < b.key.finished;
  });
  return out;
}

BigCount count_plans(const DpContext& ctx, const DpResult& dp, std::optional<Cost> exact_cost) {
  if (ctx.tag != SemiringTag::Count) throw GraphError("count_plans requires the count semiring");
  BigCount total = 0;
  for (const auto& e : root_entries(ctx, dp)) {
    if (exact_cost && e.key.cost != *exact_cost) continue;
    total += e.value.count;
  }
  return total;
}

BigCount count_plans_up_to(const DpContext& ctx, const DpResult& dp, Cost bound) {
  if (ctx.tag != SemiringTag::Count) throw GraphError("count_plans requires the count semiring");
  BigCount total = 0;
  for (const auto& e : root_entries(ctx, dp))
    if (e.key.cost <= bound) total += e.value.count;
  return total;
}

std::optional<Cost> min_cost(const DpContext& ctx, const DpResult& dp) {
  std::optional<Cost> best;
  for (const auto& e : root_entries(ctx, dp)) {
    Cost c = cost_in_key(ctx.tag) ? e.key.cost : e.value.cost;
    if (!best || c < *best) best = c;
  }
  return best;
}

namespace {

std::vector<BoundaryPartition> distinct_pi_in(const ClusterTable& t,
                                              const std::vector<VertexId>& boundary) {
  std::vector<BoundaryPartition> out;
  const std::vector<std::uint8_t>* prev = nullptr;
  for (const auto& [topo, _] : t.groups) {
    if (prev && *prev == topo.in_rgs) continue;
    out.push_back(decode_rgs(boundary, topo.in_rgs));
    prev = &topo.in_rgs;
  }
  return out;
}

// Recreates the leaf enumeration to decide whether the leaf edge is cut in
// the configuration (topo, wc).  The two cases never produce the same key.
bool leaf_edge_cut(const DpContext& ctx, const Cluster& c, const TopoKey& topo,
                   const WcKey& wc) {
  ClusterTable t = leaf_table(ctx, c);
  auto git = t.groups.find(topo);
  if (git == t.groups.end() || !git->second.count(wc))
    throw GraphError("descend reached a configuration missing from its leaf table");
  // The kept case pays no cost and finishes at most one district (the whole
  // edge); reconstruct it and compare.
  auto hw = [&](VertexId x) -> Weight {
    return ctx.homes.at(x) == c.leaf_edge ? ctx.g.vertex(x).weight : 0;
  };
  const EdgeRec& e = ctx.g.edge(c.leaf_edge);
  BoundaryPartition pi_in =
      restrict_to(BoundaryPartition::from_blocks({{e.u, e.v}}), c.boundary);
  if (encode_rgs(pi_in) != topo.in_rgs) return true;
  BoundaryPartition pout = decode_rgs(c.boundary, topo.out_rgs);
  BoundaryPartition j = join(pi_in, pout);
  WcKey kept;
  Weight w = hw(e.u) + hw(e.v);
  int slot = j.block_of(std::binary_search(c.boundary.begin(), c.boundary.end(), e.u) ? e.u
                                                                                      : e.v);
  if (c.boundary.empty() || slot < 0) {
    kept.finished.push_back(w);
  } else {
    kept.active.assign(j.block_count(), 0);
    kept.active[static_cast<std::size_t>(slot)] = w;
  }
  kept.cost = 0;
  return !(kept == wc);
}

void descend(const DpContext& ctx, const DpResult& dp, int cluster, const TopoKey& topo,
             const WcKey& wc, BigCount rank, std::set<EdgeId>& cut) {
  const Cluster& c = ctx.d.clusters[static_cast<std::size_t>(cluster)];
  if (c.is_leaf()) {
    if (rank != 1) throw GraphError("descend rank exceeds leaf count");
    if (leaf_edge_cut(ctx, c, topo, wc)) cut.insert(c.leaf_edge);
    return;
  }
  const Cluster& c1 = ctx.d.clusters[static_cast<std::size_t>(c.children[0])];
  const Cluster& c2 = ctx.d.clusters[static_cast<std::size_t>(c.children[1])];
  const ClusterTable& t1 = dp.tables[static_cast<std::size_t>(c.children[0])];
  const ClusterTable& t2 = dp.tables[static_cast<std::size_t>(c.children[1])];
  BoundaryPartition pout0 = decode_rgs(c.boundary, topo.out_rgs);

  for (const auto& pi_in1 : distinct_pi_in(t1, c1.boundary)) {
    for (const auto& pi_in2 : distinct_pi_in(t2, c2.boundary)) {
      TripleAlignment al = align_triple(c, c1, c2, pout0, pi_in1, pi_in2, ctx.spec.k);
      if (!al.valid) continue;
      if (encode_rgs(al.pi_in0) != topo.in_rgs) continue;
      auto g1 = t1.groups.find(TopoKey{encode_rgs(pi_in1), encode_rgs(al.pi_out1)});
      if (g1 == t1.groups.end()) continue;
      auto g2 = t2.groups.find(TopoKey{encode_rgs(pi_in2), encode_rgs(al.pi_out2)});
      if (g2 == t2.groups.end()) continue;
      for (const auto& [wc1, v1] : g1->second) {
        for (const auto& [wc2, v2] : g2->second) {
          auto wc0 = recombine(al, wc1, wc2, ctx.spec, ctx.tag);
          if (!wc0 || !(*wc0 == wc)) continue;
          BigCount local = v1.count * v2.count;
          if (rank > local) {
            rank -= local;
            continue;
          }
          // rank in [1, T1*T2]: row-major split over the child ranks.
          BigCount t2count = v2.count;
          BigCount q = (rank - 1) / t2count + 1;
          BigCount r = (rank - 1) % t2count + 1;
          descend(ctx, dp, c.children[0], TopoKey{encode_rgs(pi_in1), encode_rgs(al.pi_out1)},
                  wc1, q, cut);
          descend(ctx, dp, c.children[1], TopoKey{encode_rgs(pi_in2), encode_rgs(al.pi_out2)},
                  wc2, r, cut);
          return;
        }
      }
    }
  }
  throw GraphError("descend rank exceeds configuration count");
}

}  // namespace

Plan unrank_plan(const DpContext& ctx, const DpResult& dp, const BigCount& p) {
  if (ctx.tag != SemiringTag::Count) throw GraphError("unranking requires the count semiring");
  if (p < 1) throw GraphError("rank must be >= 1");
  BigCount rank = p;
  for (const auto& entry : root_entries(ctx, dp)) {
    if (rank > entry.value.count) {
      rank -= entry.value.count;
      continue;
    }
    std::set<EdgeId> cut;
    TopoKey topo{{}, {}};  // the root boundary is empty
    descend(ctx, dp, ctx.d.root, topo, entry.key, rank, cut);
    Plan plan = plan_from_cut(ctx.g, {cut.begin(), cut.end()});
    plan.rank = p;
    return plan;
  }
  throw GraphError("rank exceeds plan count");
}

std::optional<Plan> optimize(const DpContext& ctx, const DpResult& dp) {
  auto entries = root_entries(ctx, dp);
  if (entries.empty()) return std::nullopt;
  return unrank_plan(ctx, dp, 1);
}

std::optional<Plan> sample_uniform(const DpContext& ctx, const DpResult& dp,
                                   std::uint64_t seed) {
  BigCount n = count_plans(ctx, dp);
  if (n == 0) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::size_t nbits = boost::multiprecision::msb(n) + 1;
  std::size_t chunks = (nbits + 63) / 64;
  BigCount r;
  do {
    r = 0;
    for (std::size_t i = 0; i < chunks; ++i) {
      r <<= 64;
      r |= rng();
    }
    r >>= (chunks * 64 - nbits);
  } while (r >= n);
  Plan plan = unrank_plan(ctx, dp, r + 1);
  plan.seed = seed;
  return plan;
}

}  // namespace district
