#include "district/dp.hpp"

#include <algorithm>
#include <cassert>
#include <future>
#include <ostream>

namespace district {

Value Value::zero(SemiringTag t) {
  Value v;
  v.tag = t;
  return v;
}

Value Value::one(SemiringTag t) {
  Value v;
  v.tag = t;
  v.count = 1;
  v.feasible = true;
  v.cost = 0;
  v.infinite = false;
  return v;
}

Value Value::from_cost(SemiringTag t, Cost c) {
  Value v = one(t);
  if (t == SemiringTag::MinCost) v.cost = c;
  return v;
}

Value Value::plus(const Value& o) const {
  assert(tag == o.tag);
  Value v = *this;
  switch (tag) {
    case SemiringTag::Count:
      v.count += o.count;
      break;
    case SemiringTag::Feasibility:
      v.feasible = feasible || o.feasible;
      break;
    case SemiringTag::MinCost:
      if (infinite || (!o.infinite && o.cost < cost)) v = o;
      break;
  }
  return v;
}

Value Value::times(const Value& o) const {
  assert(tag == o.tag);
  Value v = *this;
  switch (tag) {
    case SemiringTag::Count:
      v.count *= o.count;
      break;
    case SemiringTag::Feasibility:
      v.feasible = feasible && o.feasible;
      break;
    case SemiringTag::MinCost:
      if (infinite || o.infinite) {
        v.infinite = true;
      } else {
        v.cost = cost + o.cost;
      }
      break;
  }
  return v;
}

bool Value::is_zero() const {
  switch (tag) {
    case SemiringTag::Count:
      return count == 0;
    case SemiringTag::Feasibility:
      return !feasible;
    case SemiringTag::MinCost:
      return infinite;
  }
  return true;
}

bool Value::operator==(const Value& o) const {
  if (tag != o.tag) return false;
  switch (tag) {
    case SemiringTag::Count:
      return count == o.count;
    case SemiringTag::Feasibility:
      return feasible == o.feasible;
    case SemiringTag::MinCost:
      return infinite == o.infinite && (infinite || cost == o.cost);
  }
  return false;
}

std::size_t ClusterTable::entry_count() const {
  std::size_t n = 0;
  for (const auto& [_, wc] : groups) n += wc.size();
  return n;
}

HomeAssignment assign_homes(const EmbeddedGraph& g) {
  HomeAssignment homes;
  for (const auto& v : g.vertices) {
    const auto& rot = g.rotation.at(v.id);
    if (rot.empty()) continue;  // isolated vertex; only in trivial graphs
    homes[v.id] = *std::min_element(rot.begin(), rot.end());
  }
  return homes;
}

std::vector<BoundaryPartition> cluster_partitions(const DpContext& ctx, const Cluster& c) {
  switch (ctx.mode) {
    case DpMode::General:
      return enumerate_partitions(c.boundary);
    case DpMode::Noncrossing:
      if (!c.theta) throw GraphError("noncrossing mode requires a certified theta for every cluster");
      return enumerate_noncrossing(*c.theta);
    case DpMode::Auto:
      return c.theta ? enumerate_noncrossing(*c.theta) : enumerate_partitions(c.boundary);
  }
  return {};
}

TripleAlignment align_triple(const Cluster& c0, const Cluster& c1, const Cluster& c2,
                             const BoundaryPartition& pi_out0, const BoundaryPartition& pi_in1,
                             const BoundaryPartition& pi_in2, int k) {
  TripleAlignment al;
  BoundaryPartition in12 = join(pi_in1, pi_in2);
  BoundaryPartition mu = join(in12, pi_out0);
  al.pi_in0 = restrict_to(in12, c0.boundary);
  al.pi_out1 = restrict_to(join(pi_out0, pi_in2), c1.boundary);
  al.pi_out2 = restrict_to(join(pi_out0, pi_in1), c2.boundary);

  BoundaryPartition j0 = join(al.pi_in0, pi_out0);
  al.p0 = j0.block_count();
  if (al.p0 > static_cast<std::size_t>(k)) return al;  // valid stays false
  al.valid = true;

  al.mu_to_parent.assign(mu.block_count(), -1);
  for (std::size_t s = 0; s < j0.block_count(); ++s)
    al.mu_to_parent[static_cast<std::size_t>(mu.block_of(j0.blocks[s].front()))] =
        static_cast<int>(s);

  BoundaryPartition j1 = join(pi_in1, al.pi_out1);
  for (const auto& b : j1.blocks) al.slot1.push_back(mu.block_of(b.front()));
  BoundaryPartition j2 = join(pi_in2, al.pi_out2);
  for (const auto& b : j2.blocks) al.slot2.push_back(mu.block_of(b.front()));
  return al;
}

std::optional<WcKey> recombine(const TripleAlignment& al, const WcKey& a, const WcKey& b,
                               const ProblemSpec& spec, SemiringTag tag) {
  assert(al.valid);
  assert(a.active.size() == al.slot1.size());
  assert(b.active.size() == al.slot2.size());
  Cost cost = a.cost + b.cost;
  if (cost_in_key(tag) && cost >= spec.max_cost) return std::nullopt;

  std::vector<Weight> mu_total(al.mu_to_parent.size(), 0);
  for (std::size_t j = 0; j < a.active.size(); ++j)
    mu_total[static_cast<std::size_t>(al.slot1[j])] += a.active[j];
  for (std::size_t j = 0; j < b.active.size(); ++j)
    mu_total[static_cast<std::size_t>(al.slot2[j])] += b.active[j];

  WcKey out;
  out.active.assign(al.p0, 0);
  out.finished = a.finished;
  out.finished.insert(out.finished.end(), b.finished.begin(), b.finished.end());
  for (std::size_t m = 0; m < mu_total.size(); ++m) {
    int s = al.mu_to_parent[m];
    if (s >= 0) {
      if (mu_total[m] >= spec.max_weight) return std::nullopt;
      out.active[static_cast<std::size_t>(s)] = mu_total[m];
    } else {
      // District loses its last boundary vertex here: it is complete.
      if (mu_total[m] < spec.min_weight || mu_total[m] >= spec.max_weight) return std::nullopt;
      out.finished.push_back(mu_total[m]);
    }
  }
  std::sort(out.finished.begin(), out.finished.end());
  if (al.p0 + out.finished.size() > static_cast<std::size_t>(spec.k)) return std::nullopt;
  out.cost = cost_in_key(tag) ? cost : 0;
  return out;
}

namespace {

void accumulate(ClusterTable& t, const TopoKey& topo, const WcKey& wc, const Value& v) {
  auto& slot = t.groups[topo];
  auto it = slot.find(wc);
  if (it == slot.end()) {
    slot.emplace(wc, v);
  } else {
    it->second = it->second.plus(v);
  }
}

}  // namespace

ClusterTable leaf_table(const DpContext& ctx, const Cluster& c) {
  ClusterTable t;
  t.tag = ctx.tag;
  const EdgeRec& er = ctx.g.edge(c.leaf_edge);
  auto hw = [&](VertexId x) -> Weight {
    return ctx.homes.at(x) == er.id ? ctx.g.vertex(x).weight : 0;
  };
  bool u_on_b = std::binary_search(c.boundary.begin(), c.boundary.end(), er.u);
  bool v_on_b = std::binary_search(c.boundary.begin(), c.boundary.end(), er.v);
  auto pouts = cluster_partitions(ctx, c);

  // rho = the induced partition of {u, v}: endpoints together (edge kept,
  // cost 0) or apart (edge cut, pay its cost).
  for (bool split : {false, true}) {
    Cost cc = split ? er.cost : 0;
    std::vector<std::pair<std::vector<VertexId>, Weight>> districts;
    if (split) {
      districts.push_back({{er.u}, hw(er.u)});
      districts.push_back({{er.v}, hw(er.v)});
    } else {
      districts.push_back({{er.u, er.v}, hw(er.u) + hw(er.v)});
    }
    BoundaryPartition rho =
        split ? BoundaryPartition::from_blocks({{er.u}, {er.v}})
              : BoundaryPartition::from_blocks({{er.u, er.v}});
    BoundaryPartition pi_in = restrict_to(rho, c.boundary);

    for (const auto& pout : pouts) {
      // A cut edge whose endpoints the outside merges back together would
      // pay for a cut that separates nothing; that shape never occurs in a
      // real plan, so it must not enter the table.
      if (split && u_on_b && v_on_b && pout.same_block(er.u, er.v)) continue;

      BoundaryPartition j = join(pi_in, pout);
      WcKey wc;
      wc.active.assign(j.block_count(), 0);
      bool ok = true;
      for (const auto& [members, w] : districts) {
        int slot = -1;
        for (VertexId x : members) {
          int bx = j.block_of(x);
          if (bx >= 0) slot = bx;
        }
        if (slot < 0) {
          // No boundary vertex: the district is already complete.
          if (w < ctx.spec.min_weight || w >= ctx.spec.max_weight) {
            ok = false;
            break;
          }
          wc.finished.push_back(w);
        } else {
          wc.active[static_cast<std::size_t>(slot)] += w;
        }
      }
      if (!ok) continue;
      for (Weight w : wc.active)
        if (w >= ctx.spec.max_weight) ok = false;
      if (!ok) continue;
      std::sort(wc.finished.begin(), wc.finished.end());
      if (j.block_count() + wc.finished.size() > static_cast<std::size_t>(ctx.spec.k)) continue;

      Value val = Value::one(ctx.tag);
      if (cost_in_key(ctx.tag)) {
        if (cc >= ctx.spec.max_cost) continue;
        wc.cost = cc;
      } else {
        if (cc >= ctx.spec.max_cost) continue;
        val = Value::from_cost(ctx.tag, cc);
      }
      accumulate(t, TopoKey{encode_rgs(pi_in), encode_rgs(pout)}, wc, val);
    }
  }
  return t;
}

namespace {

// Distinct pi_in values present in a table, decoded over the cluster's
// sorted boundary.  Group keys sort by in_rgs first, so runs are contiguous.
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

}  // namespace

ClusterTable combine(const DpContext& ctx, const Cluster& c0, const ClusterTable& t1,
                     const ClusterTable& t2) {
  ClusterTable t;
  t.tag = ctx.tag;
  const Cluster& c1 = ctx.d.clusters[static_cast<std::size_t>(c0.children[0])];
  const Cluster& c2 = ctx.d.clusters[static_cast<std::size_t>(c0.children[1])];
  auto pouts = cluster_partitions(ctx, c0);
  auto ins1 = distinct_pi_in(t1, c1.boundary);
  auto ins2 = distinct_pi_in(t2, c2.boundary);

  for (const auto& pout0 : pouts) {
    for (const auto& pi_in1 : ins1) {
      for (const auto& pi_in2 : ins2) {
        TripleAlignment al = align_triple(c0, c1, c2, pout0, pi_in1, pi_in2, ctx.spec.k);
        if (!al.valid) continue;
        auto g1 = t1.groups.find(TopoKey{encode_rgs(pi_in1), encode_rgs(al.pi_out1)});
        if (g1 == t1.groups.end()) continue;
        auto g2 = t2.groups.find(TopoKey{encode_rgs(pi_in2), encode_rgs(al.pi_out2)});
        if (g2 == t2.groups.end()) continue;
        TopoKey topo0{encode_rgs(al.pi_in0), encode_rgs(pout0)};
        for (const auto& [wc1, v1] : g1->second) {
          for (const auto& [wc2, v2] : g2->second) {
            auto wc0 = recombine(al, wc1, wc2, ctx.spec, ctx.tag);
            if (!wc0) continue;
            Value v = v1.times(v2);
            if (ctx.tag == SemiringTag::MinCost && !v.infinite && v.cost >= ctx.spec.max_cost)
              continue;
            accumulate(t, topo0, *wc0, v);
          }
        }
      }
    }
  }
  return t;
}

WcMap convolve_weight_cost(const WcMap& a, const WcMap& b, const ProblemSpec& spec,
                           SemiringTag tag) {
  WcMap out;
  for (const auto& [wa, va] : a) {
    for (const auto& [wb, vb] : b) {
      if (wa.active.size() != wb.active.size())
        throw GraphError("convolution requires matching active slot counts");
      WcKey wc;
      wc.active.resize(wa.active.size());
      bool ok = true;
      for (std::size_t i = 0; i < wa.active.size(); ++i) {
        wc.active[i] = wa.active[i] + wb.active[i];
        if (wc.active[i] >= spec.max_weight) ok = false;
      }
      if (!ok) continue;
      wc.finished = wa.finished;
      wc.finished.insert(wc.finished.end(), wb.finished.begin(), wb.finished.end());
      std::sort(wc.finished.begin(), wc.finished.end());
      if (wc.active.size() + wc.finished.size() > static_cast<std::size_t>(spec.k)) continue;
      Cost cost = wa.cost + wb.cost;
      if (cost_in_key(tag) && cost >= spec.max_cost) continue;
      wc.cost = cost_in_key(tag) ? cost : 0;
      Value v = va.times(vb);
      if (tag == SemiringTag::MinCost && !v.infinite && v.cost >= spec.max_cost) continue;
      auto it = out.find(wc);
      if (it == out.end()) {
        out.emplace(wc, v);
      } else {
        it->second = it->second.plus(v);
      }
    }
  }
  return out;
}

namespace {

void compute_tables(const DpContext& ctx, int id, int threads,
                    std::vector<ClusterTable>& tables) {
  const Cluster& c = ctx.d.clusters[static_cast<std::size_t>(id)];
  if (c.is_leaf()) {
    tables[static_cast<std::size_t>(id)] = leaf_table(ctx, c);
    return;
  }
  if (threads > 1) {
    auto left = std::async(std::launch::async, [&] {
      compute_tables(ctx, c.children[0], threads / 2, tables);
    });
    compute_tables(ctx, c.children[1], threads - threads / 2, tables);
    left.get();
  } else {
    compute_tables(ctx, c.children[0], 1, tables);
    compute_tables(ctx, c.children[1], 1, tables);
  }
  tables[static_cast<std::size_t>(id)] =
      combine(ctx, c, tables[static_cast<std::size_t>(c.children[0])],
              tables[static_cast<std::size_t>(c.children[1])]);
}

}  // namespace

DpResult run_dp(const DpContext& ctx) {
  DpResult res;
  res.tables.resize(ctx.d.clusters.size());
  compute_tables(ctx, ctx.d.root, std::max(1, ctx.threads), res.tables);
  return res;
}

void dump_table(std::ostream& os, const ClusterTable& t) {
  auto digits = [](const std::vector<std::uint8_t>& rgs) {
    std::string s;
    for (auto d : rgs) s += static_cast<char>('0' + d);
    return s.empty() ? std::string("-") : s;
  };
  for (const auto& [topo, wc] : t.groups) {
    for (const auto& [key, val] : wc) {
      os << "in=" << digits(topo.in_rgs) << " out=" << digits(topo.out_rgs) << " act=[";
      for (std::size_t i = 0; i < key.active.size(); ++i)
        os << (i ? "," : "") << key.active[i];
      os << "] fin=[";
      for (std::size_t i = 0; i < key.finished.size(); ++i)
        os << (i ? "," : "") << key.finished[i];
      os << "] cost=" << key.cost << " val=";
      switch (val.tag) {
        case SemiringTag::Count:
          os << val.count;
          break;
        case SemiringTag::Feasibility:
          os << (val.feasible ? "T" : "F");
          break;
        case SemiringTag::MinCost:
          if (val.infinite) {
            os << "inf";
          } else {
            os << val.cost;
          }
          break;
      }
      os << "\n";
    }
  }
}

}  // namespace district
