// districter: decompose, solve, sample, and generate planar districting
// instances.  Exit codes: 0 success, 1 input error, 2 infeasible.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "district/gadgets.hpp"
#include "district/io.hpp"
#include "district/oracle.hpp"

using namespace district;

namespace {

struct CommonOpts {
  std::string graph_path;
  int k = 1;
  Weight min_weight = 0;
  Weight max_weight = 0;
  std::int64_t max_cost = -1;  // -1 = auto: total edge cost + 1
  std::string mode = "auto";
  std::string semiring = "count";
  std::string builder = "sweep";
  std::string decomposition_path;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string output;
};

void add_spec_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--k", o.k, "number of districts")->required();
  cmd->add_option("--min-weight", o.min_weight, "lower weight bound L (inclusive)")->required();
  cmd->add_option("--max-weight", o.max_weight, "upper weight bound U (exclusive)")->required();
  cmd->add_option("--max-cost", o.max_cost,
                  "upper cost bound S (exclusive); default: total edge cost + 1");
  cmd->add_option("--mode", o.mode, "auto | noncrossing | general")
      ->check(CLI::IsMember({"auto", "noncrossing", "general"}));
  cmd->add_option("--threads", o.threads, "worker bound (never changes results)");
}

void add_decomp_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--builder", o.builder, "sweep | radial | import")
      ->check(CLI::IsMember({"sweep", "radial", "import"}));
  cmd->add_option("--decomposition", o.decomposition_path,
                  "decomposition file (required with --builder import)");
}

DpMode parse_mode(const std::string& s) {
  if (s == "noncrossing") return DpMode::Noncrossing;
  if (s == "general") return DpMode::General;
  return DpMode::Auto;
}

SemiringTag parse_semiring(const std::string& s) {
  if (s == "feasibility") return SemiringTag::Feasibility;
  if (s == "mincost") return SemiringTag::MinCost;
  return SemiringTag::Count;
}

EmbeddedGraph load_graph(const std::string& path) { return build_graph(read_graph_file(path)); }

SphereCutDecomposition make_decomposition(const EmbeddedGraph& g, const CommonOpts& o) {
  if (o.builder == "import") {
    if (o.decomposition_path.empty())
      throw GraphError("--builder import requires --decomposition");
    return read_decomposition_file(o.decomposition_path, g);
  }
  SphereCutDecomposition d =
      o.builder == "radial" ? radial_bfs_decomposition(g) : sweep_decomposition(g);
  return certify_theta(std::move(d), g);
}

ProblemSpec make_spec(const EmbeddedGraph& g, const CommonOpts& o) {
  ProblemSpec spec;
  spec.k = o.k;
  spec.min_weight = o.min_weight;
  spec.max_weight = o.max_weight;
  spec.max_cost = o.max_cost < 0 ? g.total_cost() + 1 : static_cast<Cost>(o.max_cost);
  validate_spec(spec, g);
  return spec;
}

void emit_plan(const Plan& plan, const std::string& output) {
  if (output.empty()) {
    write_plan(std::cout, plan);
  } else {
    write_plan_file(output, plan);
  }
}

struct Pipeline {
  EmbeddedGraph g;
  SphereCutDecomposition d;
  std::optional<DpContext> ctx;
  DpResult dp;
};

std::unique_ptr<Pipeline> run_pipeline(const CommonOpts& o, SemiringTag tag) {
  auto p = std::make_unique<Pipeline>();
  p->g = load_graph(o.graph_path);
  ProblemSpec spec = make_spec(p->g, o);
  p->d = make_decomposition(p->g, o);
  p->ctx.emplace(p->g, p->d, spec, assign_homes(p->g), tag, parse_mode(o.mode), o.threads);
  p->dp = run_dp(*p->ctx);
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solver and uniform sampler for balanced connected districting"};
  app.require_subcommand(1);
  CommonOpts o;

  auto* decompose = app.add_subcommand("decompose", "build or import a branch decomposition");
  decompose->add_option("graph", o.graph_path, "graph file")->required();
  add_decomp_flags(decompose, o);
  decompose->add_option("-o,--output", o.output, "decomposition output file");

  auto* optimize = app.add_subcommand("optimize", "minimum-cost plan");
  auto* count = app.add_subcommand("count", "count plans");
  auto* sample = app.add_subcommand("sample", "uniform random plan");
  std::int64_t count_cost = -1;
  for (CLI::App* cmd : {optimize, count, sample}) {
    cmd->add_option("graph", o.graph_path, "graph file")->required();
    add_spec_flags(cmd, o);
    add_decomp_flags(cmd, o);
    cmd->add_option("-o,--output", o.output, "output file (default: stdout)");
  }
  optimize->add_option("--semiring", o.semiring, "count | mincost | feasibility")
      ->check(CLI::IsMember({"count", "mincost", "feasibility"}));
  count->add_option("--cost", count_cost, "restrict to plans of exactly this cost");
  sample->add_option("--seed", o.seed, "sampling seed");

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force histogram (|V| <= 14)");
  oracle_cmd->add_option("graph", o.graph_path, "graph file")->required();
  add_spec_flags(oracle_cmd, o);
  oracle_cmd->add_option("-o,--output", o.output, "histogram output file");

  auto* gadget = app.add_subcommand("gadget", "hardness gadget generators");
  auto* binpacking = gadget->add_subcommand("binpacking", "Bin Packing gadget");
  std::vector<Weight> bp_values;
  int bp_bins = 1;
  Weight bp_capacity = 0;
  std::string labels_path;
  binpacking->add_option("--values", bp_values, "bin packing values")->required();
  binpacking->add_option("--bins", bp_bins, "number of bins k")->required();
  binpacking->add_option("--capacity", bp_capacity, "bin capacity B")->required();
  binpacking->add_option("-o,--output", o.output, "graph output file")->required();
  binpacking->add_option("--labels", labels_path, "sidecar labels file");
  gadget->require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "instance generators");
  auto* gen_grid = gen->add_subcommand("grid", "r x c grid, unit weights and costs");
  std::size_t grid_r = 0, grid_c = 0;
  gen_grid->add_option("r", grid_r, "rows")->required();
  gen_grid->add_option("c", grid_c, "columns")->required();
  gen_grid->add_option("-o,--output", o.output, "graph output file")->required();
  gen->require_subcommand(1);

  auto* validate_cmd = app.add_subcommand("validate", "validate graph / decomposition / plan");
  std::string plan_path;
  validate_cmd->add_option("graph", o.graph_path, "graph file")->required();
  validate_cmd->add_option("--decomposition", o.decomposition_path, "decomposition file");
  validate_cmd->add_option("--plan", plan_path, "plan file (requires spec flags)");
  validate_cmd->add_option("--k", o.k, "number of districts");
  validate_cmd->add_option("--min-weight", o.min_weight, "L");
  validate_cmd->add_option("--max-weight", o.max_weight, "U");
  validate_cmd->add_option("--max-cost", o.max_cost, "S");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*decompose) {
      EmbeddedGraph g = load_graph(o.graph_path);
      SphereCutDecomposition d = make_decomposition(g, o);
      std::cout << "width " << d.width << "\n";
      std::cout << "theta_certified " << theta_certification_rate(d) << "\n";
      if (!o.output.empty()) write_decomposition_file(o.output, d);
      return 0;
    }
    if (*optimize) {
      SemiringTag tag = parse_semiring(o.semiring);
      auto p = run_pipeline(o, tag);
      if (tag == SemiringTag::Count) {
        auto plan = district::optimize(*p->ctx, p->dp);
        if (!plan) {
          std::cerr << "infeasible\n";
          return 2;
        }
        auto bad = validate_plan(p->g, p->ctx->spec, *plan);
        if (!bad.empty()) throw GraphError("internal: emitted plan failed validation");
        std::cout << "cost " << plan->cost << "\n";
        emit_plan(*plan, o.output);
      } else {
        auto c = min_cost(*p->ctx, p->dp);
        if (!c) {
          std::cerr << "infeasible\n";
          return 2;
        }
        if (tag == SemiringTag::MinCost) {
          std::cout << "cost " << *c << "\n";
        } else {
          std::cout << "feasible\n";
        }
      }
      return 0;
    }
    if (*count) {
      auto p = run_pipeline(o, SemiringTag::Count);
      BigCount all = count_plans(*p->ctx, p->dp);
      BigCount n = count_cost < 0
                       ? all
                       : count_plans(*p->ctx, p->dp, static_cast<Cost>(count_cost));
      std::cout << n.str() << "\n";
      return all == 0 ? 2 : 0;
    }
    if (*sample) {
      auto p = run_pipeline(o, SemiringTag::Count);
      auto plan = sample_uniform(*p->ctx, p->dp, o.seed);
      if (!plan) {
        std::cerr << "infeasible\n";
        return 2;
      }
      auto bad = validate_plan(p->g, p->ctx->spec, *plan);
      if (!bad.empty()) throw GraphError("internal: emitted plan failed validation");
      emit_plan(*plan, o.output);
      return 0;
    }
    if (*oracle_cmd) {
      EmbeddedGraph g = load_graph(o.graph_path);
      ProblemSpec spec = make_spec(g, o);
      OracleResult res = enumerate_all(g, spec);
      if (o.output.empty()) {
        write_histogram(std::cout, res);
      } else {
        auto f = std::ofstream(o.output);
        if (!f) throw GraphError("cannot write " + o.output);
        write_histogram(f, res);
      }
      return 0;
    }
    if (*binpacking) {
      BinPackingInstance bp{bp_values, bp_bins, bp_capacity};
      GadgetInstance gi = binpacking_gadget(pad_binpacking(bp));
      std::map<std::string, std::string> meta{
          {"k", std::to_string(gi.spec.k)},
          {"min_weight", std::to_string(gi.spec.min_weight)},
          {"max_weight", std::to_string(gi.spec.max_weight)},
          {"max_cost", std::to_string(gi.spec.max_cost)}};
      write_graph_file(o.output, gi.graph, meta);
      if (!labels_path.empty()) {
        std::ofstream f(labels_path);
        if (!f) throw GraphError("cannot write " + labels_path);
        for (const auto& [ij, v] : gi.label)
          f << "s_" << ij.first << "^" << ij.second << " " << v << "\n";
      }
      std::cout << "vertices " << gi.graph.vertices.size() << " target "
                << gi.spec.min_weight << "\n";
      return 0;
    }
    if (*gen_grid) {
      write_graph_file(o.output, grid(grid_r, grid_c));
      return 0;
    }
    if (*validate_cmd) {
      EmbeddedGraph g = load_graph(o.graph_path);
      bool ok = true;
      if (!o.decomposition_path.empty()) {
        try {
          read_decomposition_file(o.decomposition_path, g);
          std::cout << "decomposition ok\n";
        } catch (const GraphError& e) {
          std::cout << e.what() << "\n";
          ok = false;
        }
      }
      if (!plan_path.empty()) {
        ProblemSpec spec = make_spec(g, o);
        Plan plan = read_plan_file(plan_path, g);
        auto bad = validate_plan(g, spec, plan);
        for (const auto& b : bad) std::cout << b << "\n";
        if (bad.empty()) std::cout << "plan ok\n";
        ok = ok && bad.empty();
      }
      if (o.decomposition_path.empty() && plan_path.empty()) std::cout << "graph ok\n";
      return ok ? 0 : 1;
    }
  } catch (const InfeasibleError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
