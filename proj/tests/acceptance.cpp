// Acceptance gate: one pass/fail line per criterion, all oracle-backed.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <chrono>
#include <cstdio>
#include <set>

#include "district/gadgets.hpp"
#include "district/oracle.hpp"
#include "district/solve.hpp"
#include "doctest.h"

using namespace district;

namespace {

struct Instance {
  EmbeddedGraph g;
  ProblemSpec spec;
  std::string name;
};

// Grids {2x2, 2x3, 3x3, 3x4} x k in {2,3} with tight balance
// [floor(n/k), ceil(n/k)+1).
std::vector<Instance> family() {
  std::vector<Instance> out;
  for (auto [r, c] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 3}, {3, 4}}) {
    for (int k : {2, 3}) {
      auto g = grid(r, c);
      Weight n = g.total_weight();
      ProblemSpec spec{k, n / (Weight)k, (n + (Weight)k - 1) / (Weight)k + 1,
                       g.total_cost() + 1};
      out.push_back({std::move(g),
                     spec,
                     std::to_string(r) + "x" + std::to_string(c) + " k=" + std::to_string(k)});
    }
  }
  return out;
}

struct Pipeline {
  SphereCutDecomposition d;
  HomeAssignment homes;
  DpContext ctx;
  DpResult dp;

  Pipeline(const EmbeddedGraph& g, const ProblemSpec& spec, DpMode mode,
           SemiringTag tag = SemiringTag::Count)
      : d(certify_theta(sweep_decomposition(g), g)),
        homes(assign_homes(g)),
        ctx{g, d, spec, homes, tag, mode, 1},
        dp(run_dp(ctx)) {}
};

std::map<std::pair<std::vector<Weight>, Cost>, BigCount> dp_histogram(const DpContext& ctx,
                                                                      const DpResult& dp) {
  std::map<std::pair<std::vector<Weight>, Cost>, BigCount> h;
  for (const auto& e : root_entries(ctx, dp)) h[{e.key.finished, e.key.cost}] += e.value.count;
  return h;
}

void report(int n, const char* what, bool ok) {
  std::printf("criterion %d (%s): %s\n", n, what, ok ? "PASS" : "FAIL");
  std::fflush(stdout);
  CHECK(ok);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TEST_CASE("criterion 1: counting histograms match the oracle") {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (const auto& inst : family()) {
    Pipeline p(inst.g, inst.spec, DpMode::Auto);
    auto mine = dp_histogram(p.ctx, p.dp);
    auto truth = enumerate_all(inst.g, inst.spec).histogram;
    if (std::map<std::pair<std::vector<Weight>, Cost>, OracleCount>(mine.begin(), mine.end()) !=
        truth) {
      std::printf("  histogram mismatch on %s\n", inst.name.c_str());
      ok = false;
    }
  }
  double t = seconds_since(t0);
  if (t >= 60.0) {
    std::printf("  over budget: %.1fs\n", t);
    ok = false;
  }
  report(1, "oracle equivalence, counting", ok);
}

TEST_CASE("criterion 2: optimize returns the oracle minimum with a valid witness") {
  bool ok = true;
  for (const auto& inst : family()) {
    Pipeline p(inst.g, inst.spec, DpMode::Auto);
    auto plan = optimize(p.ctx, p.dp);
    auto truth = enumerate_all(inst.g, inst.spec);
    if (truth.plans.empty()) {
      ok = ok && !plan.has_value();
      continue;
    }
    Cost best = *std::min_element(truth.costs.begin(), truth.costs.end());
    if (!plan || plan->cost != best || !validate_plan(inst.g, inst.spec, *plan).empty()) {
      std::printf("  optimize mismatch on %s\n", inst.name.c_str());
      ok = false;
    }
  }
  // Pinned value: 2x2 grid, k=2, [2,3) has optimum cost 2.
  {
    auto g = grid(2, 2);
    Pipeline p(g, ProblemSpec{2, 2, 3, 5}, DpMode::Auto);
    auto plan = optimize(p.ctx, p.dp);
    ok = ok && plan && plan->cost == 2;
  }
  report(2, "optimization correctness", ok);
}

TEST_CASE("criterion 3: unranking is a bijection onto the oracle solution set") {
  bool ok = true;
  for (const auto& inst : family()) {
    Pipeline p(inst.g, inst.spec, DpMode::Auto);
    BigCount n = count_plans(p.ctx, p.dp);
    if (n > 5000) continue;
    std::set<std::vector<std::vector<VertexId>>> seen;
    bool inst_ok = true;
    for (BigCount q = 1; q <= n; ++q) {
      Plan plan = unrank_plan(p.ctx, p.dp, q);
      inst_ok = inst_ok && validate_plan(inst.g, inst.spec, plan).empty() &&
                seen.insert(plan.districts).second;
    }
    auto truth = enumerate_all(inst.g, inst.spec);
    std::set<std::vector<std::vector<VertexId>>> expect(truth.plans.begin(),
                                                        truth.plans.end());
    if (!inst_ok || seen != expect) {
      std::printf("  unranking mismatch on %s\n", inst.name.c_str());
      ok = false;
    }
  }
  report(3, "unranking bijection, exact uniformity", ok);
}

TEST_CASE("criterion 4: noncrossing and general modes produce identical root tables") {
  bool ok = true;
  for (const auto& inst : family()) {
    Pipeline a(inst.g, inst.spec, DpMode::Auto);
    Pipeline g(inst.g, inst.spec, DpMode::General);
    if (a.dp.tables[a.d.root].groups != g.dp.tables[g.d.root].groups) {
      std::printf("  mode mismatch on %s\n", inst.name.c_str());
      ok = false;
    }
    // Where every cluster certifies, the strict noncrossing mode must agree
    // as well; clusters without theta fall back per cluster in auto mode.
    if (theta_certification_rate(a.d) == 1.0) {
      Pipeline n(inst.g, inst.spec, DpMode::Noncrossing);
      ok = ok && n.dp.tables[n.d.root].groups == g.dp.tables[g.d.root].groups;
    }
  }
  report(4, "mode equivalence", ok);
}

TEST_CASE("criterion 5: noncrossing census equals Catalan numbers") {
  std::vector<BigCount> catalan{1};
  for (std::size_t n = 0; n < 10; ++n) {
    BigCount c = 0;
    for (std::size_t i = 0; i <= n; ++i) c += catalan[i] * catalan[n - i];
    catalan.push_back(c);
  }
  bool ok = true;
  for (std::size_t m = 0; m <= 10; ++m) {
    std::vector<VertexId> order;
    for (std::size_t i = 0; i < m; ++i) order.push_back((VertexId)(i + 1));
    ok = ok && BigCount(enumerate_noncrossing(order).size()) == catalan[m];
  }
  report(5, "noncrossing census", ok);
}

TEST_CASE("criterion 6: gadget feasibility mirrors bin packing feasibility") {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  // All padded instances with k=2, B <= 3, and n <= 3 values.
  std::vector<BinPackingInstance> instances;
  for (Weight B = 1; B <= 3; ++B) {
    Weight total = 2 * B;
    for (Weight a = 1; a <= total; ++a)
      for (Weight b = a; b <= total; ++b) {
        if (a + b == total) instances.push_back({{b, a}, 2, B});
        for (Weight c = b; c <= total; ++c)
          if (a + b + c == total) instances.push_back({{c, b, a}, 2, B});
      }
  }
  for (const auto& bp : instances) {
    // Ground truth by direct enumeration of bin assignments.
    bool feasible = false;
    for (std::size_t mask = 0; mask < (std::size_t(1) << bp.values.size()); ++mask) {
      Weight first = 0;
      for (std::size_t i = 0; i < bp.values.size(); ++i)
        if (mask & (std::size_t(1) << i)) first += bp.values[i];
      if (first == bp.capacity) feasible = true;
    }
    auto gi = binpacking_gadget(bp);
    Pipeline p(gi.graph, gi.spec, DpMode::Auto);
    auto plan = optimize(p.ctx, p.dp);
    if (plan.has_value() != feasible) {
      std::printf("  feasibility mismatch, B=%llu n=%zu\n",
                  (unsigned long long)bp.capacity, bp.values.size());
      ok = false;
      continue;
    }
    if (plan) {
      auto bins = plan_to_bins(gi, *plan);
      for (const auto& bin : bins) {
        Weight s = 0;
        for (Weight v : bin) s += v;
        ok = ok && s == bp.capacity;
      }
    }
  }
  double t = seconds_since(t0);
  if (t >= 120.0) {
    std::printf("  over budget: %.1fs\n", t);
    ok = false;
  }
  report(6, "gadget reduction round-trip", ok);
}

TEST_CASE("criterion 7: builders stay valid and within their width bounds") {
  bool ok = true;
  for (std::size_t r = 2; r <= 6; ++r)
    for (std::size_t c = r; c <= 6; ++c) {
      auto g = grid(r, c);
      auto sw = sweep_decomposition(g);
      ok = ok && validate(sw, g).empty() && sw.width <= r + 1;

      auto fs = faces(g);
      auto rg = radial_graph(g);
      std::size_t ecc = radial_eccentricity(rg, rg.face_node(outer_face_index(fs)));
      auto ra = radial_bfs_decomposition(g);
      ok = ok && validate(ra, g).empty() && ra.width <= 2 * ecc;
      if (!ok) std::printf("  width failure on %zux%zu\n", r, c);
    }
  report(7, "decomposition validity and width", ok);
}

TEST_CASE("criterion 8: 4x8 grid halves at minimum cost 4") {
  auto t0 = std::chrono::steady_clock::now();
  auto g = grid(4, 8);
  ProblemSpec spec{2, 16, 17, g.total_cost() + 1};
  Pipeline mc(g, spec, DpMode::Auto, SemiringTag::MinCost);
  auto cost = min_cost(mc.ctx, mc.dp);
  // The straight cut between columns 3 and 4 crosses exactly 4 unit edges,
  // so 4 is achievable; the DP must confirm nothing cheaper exists, in both
  // partition modes.
  bool ok = cost.has_value() && *cost >= 4 && *cost == 4;
  Pipeline ge(g, spec, DpMode::General, SemiringTag::MinCost);
  auto cost2 = min_cost(ge.ctx, ge.dp);
  ok = ok && cost2.has_value() && *cost2 == 4;
  double t = seconds_since(t0);
  if (t >= 600.0) {
    std::printf("  over budget: %.1fs\n", t);
    ok = false;
  }
  report(8, "scalability smoke", ok);
}
