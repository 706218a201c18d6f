#include "district/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace district {

EmbeddedGraph grid(std::size_t r, std::size_t c,
                   std::function<Weight(std::size_t, std::size_t)> weight_rule,
                   std::function<Cost(EdgeId)> cost_rule) {
  if (r < 2 || c < 2) throw GraphError("grid requires r, c >= 2");
  GraphData raw;
  auto vid = [c](std::size_t i, std::size_t j) { return static_cast<VertexId>(i * c + j); };
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      raw.vertices.push_back({vid(i, j), weight_rule ? weight_rule(i, j) : 1});

  // Horizontal edges first, then vertical, both row-major.
  auto hedge = [c](std::size_t i, std::size_t j) { return static_cast<EdgeId>(i * (c - 1) + j); };
  auto vedge = [r, c](std::size_t i, std::size_t j) {
    return static_cast<EdgeId>(r * (c - 1) + i * c + j);
  };
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j + 1 < c; ++j)
      raw.edges.push_back({hedge(i, j), vid(i, j), vid(i, j + 1), 0});
  for (std::size_t i = 0; i + 1 < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      raw.edges.push_back({vedge(i, j), vid(i, j), vid(i + 1, j), 0});
  for (auto& e : raw.edges) e.cost = cost_rule ? cost_rule(e.id) : 1;

  // Counterclockwise rotation (rows grow downward): east, north, west, south.
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<EdgeId>& rot = raw.rotation[vid(i, j)];
      if (j + 1 < c) rot.push_back(hedge(i, j));
      if (i > 0) rot.push_back(vedge(i - 1, j));
      if (j > 0) rot.push_back(hedge(i, j - 1));
      if (i + 1 < r) rot.push_back(vedge(i, j));
    }
  }
  return build_graph(raw);
}

BinPackingInstance pad_binpacking(BinPackingInstance bp) {
  if (bp.bins < 1) throw GraphError("bin count must be >= 1");
  for (Weight v : bp.values)
    if (v == 0) throw GraphError("bin packing values must be positive");
  Weight sum = std::accumulate(bp.values.begin(), bp.values.end(), Weight{0});
  Weight target = static_cast<Weight>(bp.bins) * bp.capacity;
  if (sum > target) throw GraphError("values already exceed k*B; cannot pad");
  bp.values.insert(bp.values.end(), static_cast<std::size_t>(target - sum), Weight{1});
  return bp;
}

GadgetInstance binpacking_gadget(const BinPackingInstance& bp) {
  std::size_t n = bp.values.size();
  int k = bp.bins;
  Weight B = bp.capacity;
  Weight sum = std::accumulate(bp.values.begin(), bp.values.end(), Weight{0});
  if (sum != static_cast<Weight>(k) * B)
    throw GraphError("gadget requires a padded instance (sum of values = k*B)");
  if (n < 2)
    throw GraphError("gadget requires n >= 2; a single-value instance is feasible iff k == 1");

  GadgetInstance gi;
  gi.bp = bp;
  gi.scale = 2 * (static_cast<Weight>(n) - 1);
  Weight kB = static_cast<Weight>(k) * B;
  Weight kB2 = kB * kB;
  Weight kB4 = kB2 * kB2;
  int rows = 2 * static_cast<int>(n) + 1;
  auto ell = [k](int i) { return i % 2 == 1 ? k : k + 1; };

  GraphData raw;
  VertexId next = 0;
  for (int i = 1; i <= rows; ++i) {
    for (int j = 1; j <= ell(i); ++j) {
      Weight w;
      if (i == 1) {
        w = gi.scale * kB2;
      } else if (i == rows) {
        w = gi.scale * kB4;
      } else if (i % 2 == 1) {
        w = 1;  // scaled from 1/(2n-2)
      } else {
        w = gi.scale * bp.values[static_cast<std::size_t>(i / 2 - 1)];
      }
      gi.label[{i, j}] = next;
      raw.vertices.push_back({next, w});
      ++next;
    }
  }

  EdgeId eid = 0;
  for (int i = 1; i <= rows; i += 2) {
    for (int j = 1; j <= k; ++j) {
      for (int r : {i - 1, i + 1}) {
        if (r < 1 || r > rows) continue;
        raw.edges.push_back({eid++, gi.label.at({i, j}), gi.label.at({r, j}), 0});
        raw.edges.push_back({eid++, gi.label.at({i, j}), gi.label.at({r, j + 1}), 0});
      }
    }
  }

  // Rotation from the natural drawing: row i at height i, odd-row vertex j
  // at x = j, even-row vertex j at x = j - 1/2; sort incident edges by angle.
  std::map<VertexId, std::pair<double, double>> xy;
  for (const auto& [ij, v] : gi.label) {
    double x = ij.first % 2 == 1 ? ij.second : ij.second - 0.5;
    xy[v] = {x, static_cast<double>(ij.first)};
  }
  std::map<VertexId, std::vector<EdgeId>> incident;
  for (const auto& e : raw.edges) {
    incident[e.u].push_back(e.id);
    incident[e.v].push_back(e.id);
  }
  for (auto& [v, inc] : incident) {
    std::sort(inc.begin(), inc.end(), [&](EdgeId a, EdgeId b) {
      auto angle = [&](EdgeId e) {
        const EdgeRec& er = raw.edges[e];
        VertexId o = er.u == v ? er.v : er.u;
        return std::atan2(xy.at(o).second - xy.at(v).second, xy.at(o).first - xy.at(v).first);
      };
      return angle(a) < angle(b);
    });
    raw.rotation[v] = inc;
  }

  gi.graph = build_graph(raw);  // Euler check doubles as the planarity proof
  gi.spec.k = k;
  gi.spec.min_weight = gi.scale * (kB2 + kB4 + kB + B) + (static_cast<Weight>(n) - 1);
  gi.spec.max_weight = gi.spec.min_weight + 1;
  gi.spec.max_cost = 1;  // all edge costs are zero
  return gi;
}

std::vector<std::vector<Weight>> plan_to_bins(const GadgetInstance& gi, const Plan& plan) {
  std::size_t n = gi.bp.values.size();
  int rows = 2 * static_cast<int>(n) + 1;
  std::map<VertexId, int> row_of;
  for (const auto& [ij, v] : gi.label) row_of[v] = ij.first;

  std::vector<std::map<int, int>> row_counts(plan.districts.size());
  for (std::size_t d = 0; d < plan.districts.size(); ++d)
    for (VertexId v : plan.districts[d]) row_counts[d][row_of.at(v)] += 1;
  for (std::size_t d = 0; d < plan.districts.size(); ++d) {
    if (row_counts[d][1] != 1 || row_counts[d][rows] != 1)
      throw GraphError("plan violates the gadget structure: a district does not hold "
                       "exactly one vertex of the first and last rows");
  }

  std::vector<std::vector<Weight>> bins(plan.districts.size());
  for (std::size_t m = 1; m <= n; ++m) {
    int doubled = -1;
    for (std::size_t d = 0; d < plan.districts.size(); ++d) {
      int c = row_counts[d][2 * static_cast<int>(m)];
      if (c == 2 && doubled < 0) {
        doubled = static_cast<int>(d);
      } else if (c > 1) {
        doubled = -2;
      }
    }
    if (doubled < 0)
      throw GraphError("plan violates the gadget structure: even row without a doubled district");
    bins[static_cast<std::size_t>(doubled)].push_back(gi.bp.values[m - 1]);
  }
  for (const auto& bin : bins) {
    Weight s = std::accumulate(bin.begin(), bin.end(), Weight{0});
    if (s != gi.bp.capacity) throw GraphError("recovered bin does not sum to B");
  }
  return bins;
}

ExpandResult expand_unit_weights(const EmbeddedGraph& g, Weight total_cap) {
  if (g.total_weight() > total_cap) throw GraphError("expansion exceeds the size cap");
  ExpandResult res;
  GraphData raw;
  raw.rotation = g.rotation;
  raw.edges = g.edges;
  VertexId next_v = 0;
  for (const auto& v : g.vertices) next_v = std::max(next_v, v.id + 1);
  EdgeId next_e = 0;
  for (const auto& e : g.edges) next_e = std::max(next_e, e.id + 1);

  for (const auto& v : g.vertices) {
    if (v.weight == 0) throw GraphError("cannot expand a weight-0 vertex");
    raw.vertices.push_back({v.id, 1});
    for (Weight d = 1; d < v.weight; ++d) {
      VertexId nv = next_v++;
      EdgeId ne = next_e++;
      raw.vertices.push_back({nv, 1});
      raw.edges.push_back({ne, nv, v.id, 0});
      raw.rotation[nv] = {ne};
      auto& rot = raw.rotation[v.id];
      // Splice pendants into one corner of v's rotation.
      rot.insert(rot.empty() ? rot.begin() : rot.begin() + 1, ne);
      res.dummy_of[nv] = v.id;
    }
  }
  res.graph = build_graph(raw);
  return res;
}

}  // namespace district
