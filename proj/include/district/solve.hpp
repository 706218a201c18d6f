#pragma once
// Queries on top of the cluster tables: exact counting, minimum-cost
// witnesses, rank-based plan extraction, and provably uniform sampling.

#include <optional>

#include "district/dp.hpp"

namespace district {

struct Plan {
  // Canonical: districts ordered by smallest member, members ascending.
  std::vector<std::vector<VertexId>> districts;
  std::vector<Weight> weights;      // aligned with districts
  Cost cost = 0;                    // sum of cut edge costs
  std::vector<EdgeId> cut_edges;    // ascending
  std::uint64_t seed = 0;           // sampling seed, when applicable
  BigCount rank = 0;                // 1-based rank within the fixed plan order
};

// Reconstructs the plan whose cut set is `cut`: districts are the connected
// components of the kept edges.  Independent of the DP tables.
Plan plan_from_cut(const EmbeddedGraph& g, const std::vector<EdgeId>& cut);

// Independent checker: k connected districts covering every vertex, weights
// in [L, U), cut set consistent with the partition, cost < S.  Returns
// human-readable violations (empty means valid).
std::vector<std::string> validate_plan(const EmbeddedGraph& g, const ProblemSpec& spec,
                                       const Plan& plan);

// Root-table entries describing complete k-partitions, sorted by
// (cost, district weights).  This order fixes the global plan ranking.
struct RootEntry {
  WcKey key;
  Value value;
};
std::vector<RootEntry> root_entries(const DpContext& ctx, const DpResult& dp);

// Total number of plans (count semiring required), optionally restricted to
// one exact cost.
BigCount count_plans(const DpContext& ctx, const DpResult& dp,
                     std::optional<Cost> exact_cost = std::nullopt);

// Plans with cost <= bound.
BigCount count_plans_up_to(const DpContext& ctx, const DpResult& dp, Cost bound);

// Smallest cost among complete plans; nullopt when none exists.  Works for
// the count and min-cost semirings.
std::optional<Cost> min_cost(const DpContext& ctx, const DpResult& dp);

// The p-th plan (1-based) in the fixed order; count semiring required.
// Throws GraphError when p is out of range.
Plan unrank_plan(const DpContext& ctx, const DpResult& dp, const BigCount& p);

// Minimum-cost witness: rank-1 plan among the cheapest root entries.
std::optional<Plan> optimize(const DpContext& ctx, const DpResult& dp);

// Exactly uniform over all plans: draws a rank in [1, N] by rejection from
// a seeded mt19937_64 bit stream, then unranks it.
std::optional<Plan> sample_uniform(const DpContext& ctx, const DpResult& dp,
                                   std::uint64_t seed);

}  // namespace district
