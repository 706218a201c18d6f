#pragma once
// Configuration-indexed cluster tables and the combine procedure that
// populates them leaf-to-root, parameterized by semiring.

#include <boost/multiprecision/cpp_int.hpp>
#include <iosfwd>
#include <map>
#include <optional>

#include "district/decomp.hpp"
#include "district/partition.hpp"

namespace district {

using BigCount = boost::multiprecision::cpp_int;

enum class SemiringTag { Feasibility, Count, MinCost };
enum class DpMode { Auto, Noncrossing, General };

// In the feasibility and count semirings the cost s lives in the key and
// values are booleans / big integers; in the min-cost semiring the key cost
// stays zero and the value carries the accumulated cost.
constexpr bool cost_in_key(SemiringTag t) { return t != SemiringTag::MinCost; }

class Value {
 public:
  static Value zero(SemiringTag t);
  static Value one(SemiringTag t);
  // Leaf contribution for an edge with the given cut-cost.
  static Value from_cost(SemiringTag t, Cost c);

  Value plus(const Value& o) const;
  Value times(const Value& o) const;
  bool is_zero() const;

  SemiringTag tag = SemiringTag::Count;
  BigCount count{0};       // Count
  bool feasible = false;   // Feasibility
  Cost cost = 0;           // MinCost (meaningful iff !infinite)
  bool infinite = true;

  bool operator==(const Value& o) const;
};

struct TopoKey {
  std::vector<std::uint8_t> in_rgs, out_rgs;  // over the sorted boundary
  auto operator<=>(const TopoKey&) const = default;
};

// Slot discipline: `active` has one entry per part of join(pi_in, pi_out)
// in block (representative) order, each < U; `finished` holds completed
// district weights sorted ascending, each in [L, U).
struct WcKey {
  std::vector<Weight> active;
  std::vector<Weight> finished;
  Cost cost = 0;
  auto operator<=>(const WcKey&) const = default;
};

using WcMap = std::map<WcKey, Value>;

struct ClusterTable {
  SemiringTag tag = SemiringTag::Count;
  std::map<TopoKey, WcMap> groups;

  std::size_t entry_count() const;
};

// vertex id -> designated incident edge (smallest incident edge id).
using HomeAssignment = std::map<VertexId, EdgeId>;
HomeAssignment assign_homes(const EmbeddedGraph& g);

struct DpContext {
  const EmbeddedGraph& g;
  const SphereCutDecomposition& d;
  ProblemSpec spec;
  HomeAssignment homes;
  SemiringTag tag = SemiringTag::Count;
  DpMode mode = DpMode::Auto;
  int threads = 1;
};

// Boundary partitions enumerated for a cluster under the context mode:
// noncrossing w.r.t. theta where applicable, all partitions otherwise.
std::vector<BoundaryPartition> cluster_partitions(const DpContext& ctx, const Cluster& c);

// Slot alignment for one topological triple (parent pi_out, children pi_in).
// mu is the join of the three partitions over the union of boundaries; its
// blocks are the alignment keys.
struct TripleAlignment {
  BoundaryPartition pi_in0, pi_out1, pi_out2;  // derived
  std::size_t p0 = 0;                          // parent active slot count
  std::vector<int> slot1, slot2;               // child active slot -> mu block
  std::vector<int> mu_to_parent;               // mu block -> parent slot, -1 = finishing
  bool valid = false;                          // false iff p0 > k
};

TripleAlignment align_triple(const Cluster& c0, const Cluster& c1, const Cluster& c2,
                             const BoundaryPartition& pi_out0, const BoundaryPartition& pi_in1,
                             const BoundaryPartition& pi_in2, int k);

// Recombines one weight/cost pair through an alignment.  nullopt when the
// contribution is pruned (active >= U, finished outside [L,U), cost >= S,
// or more than k districts).
std::optional<WcKey> recombine(const TripleAlignment& al, const WcKey& a, const WcKey& b,
                               const ProblemSpec& spec, SemiringTag tag);

ClusterTable leaf_table(const DpContext& ctx, const Cluster& c);
ClusterTable combine(const DpContext& ctx, const Cluster& c0, const ClusterTable& t1,
                     const ClusterTable& t2);

// Truncated weight/cost convolution with identity slot alignment (both maps
// belong to one topological configuration of the same cluster).
WcMap convolve_weight_cost(const WcMap& a, const WcMap& b, const ProblemSpec& spec,
                           SemiringTag tag);

struct DpResult {
  std::vector<ClusterTable> tables;  // indexed by cluster id; retained for Descend
};

DpResult run_dp(const DpContext& ctx);

// One line per entry: encoded pi_in, encoded pi_out, active weights,
// finished weights, cost, value.
void dump_table(std::ostream& os, const ClusterTable& t);

}  // namespace district
