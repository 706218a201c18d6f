#pragma once
// Instance generators: grid graphs, the Bin Packing hardness gadget, and
// unit-weight expansion, plus the gadget's solution-to-bins verifier.

#include <functional>
#include <map>

#include "district/solve.hpp"

namespace district {

// Unit weights and costs unless rules are supplied.  Vertex ids are
// row-major (row * c + col); horizontal edges are numbered before vertical
// ones, both row-major.
EmbeddedGraph grid(std::size_t r, std::size_t c,
                   std::function<Weight(std::size_t, std::size_t)> weight_rule = nullptr,
                   std::function<Cost(EdgeId)> cost_rule = nullptr);

struct BinPackingInstance {
  std::vector<Weight> values;
  int bins = 1;         // k
  Weight capacity = 0;  // B
};

// Appends unit elements until the values sum to k*B.  Throws GraphError
// when the sum already exceeds k*B.  Values larger than B are allowed and
// simply make the instance infeasible.
BinPackingInstance pad_binpacking(BinPackingInstance bp);

struct GadgetInstance {
  EmbeddedGraph graph;
  ProblemSpec spec;
  // (row i in [1, 2n+1], column j) -> vertex id.
  std::map<std::pair<int, int>, VertexId> label;
  Weight scale = 1;  // 2(n-1); every weight and the target are scaled by it
  BinPackingInstance bp;  // the padded instance the gadget encodes
};

// The (2n+1)-row hardness gadget for a padded instance (sum of values must
// equal k*B).  All edge costs are zero with S = 1, so feasibility is purely
// the exact-balance constraint: each district weighs scale * (T + B).
// Requires n >= 2; a single-value instance is feasible iff k == 1 and needs
// no gadget.
GadgetInstance binpacking_gadget(const BinPackingInstance& bp);

// Reads the bin assignment back out of a feasible plan: for each even row,
// the district holding two of its vertices receives that row's value.
// Throws GraphError when the plan violates the gadget structure (each
// district must hold exactly one vertex of the first and last rows) or when
// some bin does not sum to B.  Result is aligned with plan.districts.
std::vector<std::vector<Weight>> plan_to_bins(const GadgetInstance& gi, const Plan& plan);

struct ExpandResult {
  EmbeddedGraph graph;                    // all weights 1
  std::map<VertexId, VertexId> dummy_of;  // dummy id -> original vertex
};

// Replaces each weight-w vertex by the vertex (weight 1) plus w-1 pendant
// unit dummies, spliced into the rotation so planarity is preserved.
// Running preprocess on the result merges the dummies back.
ExpandResult expand_unit_weights(const EmbeddedGraph& g, Weight total_cap = 100000);

}  // namespace district
