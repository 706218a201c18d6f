#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>
#include <sstream>

#include "district/decomp.hpp"
#include "district/gadgets.hpp"
#include "district/io.hpp"
#include "doctest.h"

using namespace district;

namespace {

EmbeddedGraph cycle(std::size_t n) {
  GraphData raw;
  for (std::size_t i = 0; i < n; ++i) {
    raw.vertices.push_back({(VertexId)i, 1});
    raw.edges.push_back({(EdgeId)i, (VertexId)i, (VertexId)((i + 1) % n), 1});
    raw.rotation[(VertexId)i] = {(EdgeId)((i + n - 1) % n), (EdgeId)i};
  }
  return build_graph(raw);
}

EmbeddedGraph triangle() { return cycle(3); }

bool any_violation(const std::vector<std::string>& report, const std::string& needle) {
  return std::any_of(report.begin(), report.end(), [&](const std::string& s) {
    return s.find(needle) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("sweep width stays within r+1 on grids") {
  for (std::size_t r = 2; r <= 6; ++r)
    for (std::size_t c = r; c <= 6; ++c) {
      auto g = grid(r, c);
      auto d = sweep_decomposition(g);
      CAPTURE(r);
      CAPTURE(c);
      CHECK(validate(d, g).empty());
      CHECK(d.width <= r + 1);
      CHECK(d.clusters.size() == 2 * g.edges.size() - 1);
    }
}

TEST_CASE("radial width stays within twice the eccentricity on grids") {
  for (std::size_t r = 2; r <= 6; ++r)
    for (std::size_t c = r; c <= 6; ++c) {
      auto g = grid(r, c);
      auto fs = faces(g);
      auto rg = radial_graph(g);
      std::size_t ecc = radial_eccentricity(rg, rg.face_node(outer_face_index(fs)));
      auto d = radial_bfs_decomposition(g);
      CAPTURE(r);
      CAPTURE(c);
      CHECK(validate(d, g).empty());
      CHECK(d.width <= 2 * ecc);
    }
}

TEST_CASE("cycles and triangle have width 2") {
  for (std::size_t n : {3, 4, 5, 8}) {
    auto g = cycle(n);
    for (auto d : {sweep_decomposition(g), radial_bfs_decomposition(g)}) {
      CAPTURE(n);
      CHECK(validate(d, g).empty());
      CHECK(d.width == 2);
    }
  }
}

TEST_CASE("boundary of a parent is contained in the union of its children") {
  for (const EmbeddedGraph& g : {grid(3, 4), grid(4, 4), triangle(), cycle(6)}) {
    for (auto d : {sweep_decomposition(g), radial_bfs_decomposition(g)}) {
      for (const Cluster& c0 : d.clusters) {
        if (c0.is_leaf()) continue;
        const Cluster& c1 = d.clusters[c0.children[0]];
        const Cluster& c2 = d.clusters[c0.children[1]];
        std::set<VertexId> b1(c1.boundary.begin(), c1.boundary.end());
        std::set<VertexId> b2(c2.boundary.begin(), c2.boundary.end());
        std::set<VertexId> b0(c0.boundary.begin(), c0.boundary.end());
        for (VertexId v : b0) CHECK((b1.count(v) || b2.count(v)));
        // Anything on a child boundary but not the parent's is shared.
        for (VertexId v : b1)
          if (!b0.count(v)) CHECK(b2.count(v));
        for (VertexId v : b2)
          if (!b0.count(v)) CHECK(b1.count(v));
      }
    }
  }
}

TEST_CASE("certify_theta marks boundaries without touching the structure") {
  auto g = grid(4, 4);
  auto d = sweep_decomposition(g);
  auto before = d;
  d = certify_theta(std::move(d), g);
  CHECK(d.width == before.width);
  CHECK(d.root == before.root);
  std::size_t certified = 0;
  for (std::size_t i = 0; i < d.clusters.size(); ++i) {
    CHECK(d.clusters[i].edge_set == before.clusters[i].edge_set);
    CHECK(d.clusters[i].children == before.clusters[i].children);
    CHECK(d.clusters[i].boundary == before.clusters[i].boundary);
    if (d.clusters[i].theta) {
      ++certified;
      auto sorted = *d.clusters[i].theta;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == d.clusters[i].boundary);
    }
    // Small boundaries certify unconditionally.
    if (d.clusters[i].boundary.size() <= 2) CHECK(d.clusters[i].theta.has_value());
  }
  // Face-connected sweep prefixes rarely pinch; most clusters certify.
  CHECK(certified >= d.clusters.size() * 9 / 10);
  CHECK(validate(d, g).empty());
}

TEST_CASE("cycle decompositions certify everywhere") {
  auto g = cycle(6);
  auto d = certify_theta(sweep_decomposition(g), g);
  CHECK(theta_certification_rate(d) == 1.0);
}

TEST_CASE("validate reports tampering") {
  auto g = grid(3, 3);
  auto d = sweep_decomposition(g);
  CHECK(validate(d, g).empty());

  auto bad = d;
  bad.clusters[bad.root].boundary.push_back(0);
  CHECK(any_violation(validate(bad, g), "boundary mismatch"));

  bad = d;
  for (auto& c : bad.clusters)
    if (c.is_leaf() && c.leaf_edge == 0) c.leaf_edge = 1;  // duplicates leaf 1
  CHECK(any_violation(validate(bad, g), "leaf bijection"));

  bad = d;
  bad.width += 1;
  CHECK(any_violation(validate(bad, g), "width"));
}

TEST_CASE("decomposition files round-trip") {
  auto g = grid(3, 3);
  auto d = certify_theta(sweep_decomposition(g), g);
  std::stringstream ss;
  write_decomposition(ss, d);
  auto back = parse_decomposition(ss, g);
  CHECK(back.root == d.root);
  CHECK(back.width == d.width);
  REQUIRE(back.clusters.size() == d.clusters.size());
  for (std::size_t i = 0; i < d.clusters.size(); ++i) {
    CHECK(back.clusters[i].children == d.clusters[i].children);
    CHECK(back.clusters[i].edge_set == d.clusters[i].edge_set);
    CHECK(back.clusters[i].theta == d.clusters[i].theta);
  }
}

TEST_CASE("import rejects malformed trees") {
  auto g = triangle();
  // Non-binary internal node.
  std::stringstream one_child(R"({"nodes": [
    {"id": 0, "children": null, "edges": [0]},
    {"id": 1, "children": null, "edges": [1]},
    {"id": 2, "children": null, "edges": [2]},
    {"id": 3, "children": [0]}], "root": 3})");
  CHECK_THROWS_AS(parse_decomposition(one_child, g), GraphError);

  // Root covers only two of the three edges.
  std::stringstream missing(R"({"nodes": [
    {"id": 0, "children": null, "edges": [0]},
    {"id": 1, "children": null, "edges": [1]},
    {"id": 2, "children": [0, 1]}], "root": 2})");
  try {
    parse_decomposition(missing, g);
    FAIL("expected rejection");
  } catch (const GraphError& e) {
    CHECK(std::string(e.what()).find("leaf bijection") != std::string::npos);
  }

  // Leaf carrying two edges.
  std::stringstream fat_leaf(R"({"nodes": [
    {"id": 0, "children": null, "edges": [0, 1]},
    {"id": 1, "children": null, "edges": [2]},
    {"id": 2, "children": [0, 1]}], "root": 2})");
  CHECK_THROWS_AS(parse_decomposition(fat_leaf, g), GraphError);
}
