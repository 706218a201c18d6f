#pragma once
// JSON interchange: graphs, decompositions, plans, histograms.

#include <iosfwd>
#include <string>

#include "district/decomp.hpp"
#include "district/oracle.hpp"
#include "district/solve.hpp"

namespace district {

// Graph format: {vertices: [{id, weight}], edges: [{id, u, v, cost}],
// rotation: {"<vertex-id>": [edge-id, ...]}, meta: {...}}.
GraphData parse_graph(std::istream& in);
GraphData read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const EmbeddedGraph& g,
                 const std::map<std::string, std::string>& meta = {});
void write_graph_file(const std::string& path, const EmbeddedGraph& g,
                      const std::map<std::string, std::string>& meta = {});

// Decomposition format: {nodes: [{id, children: [a, b] | null,
// edges: [...] (leaves only), theta: [...] (optional)}], root}.
// Import recomputes edge sets, boundaries, and width, then validates
// against the graph; throws GraphError listing the violations.
SphereCutDecomposition parse_decomposition(std::istream& in, const EmbeddedGraph& g);
SphereCutDecomposition read_decomposition_file(const std::string& path, const EmbeddedGraph& g);
void write_decomposition(std::ostream& out, const SphereCutDecomposition& d);
void write_decomposition_file(const std::string& path, const SphereCutDecomposition& d);

// Plan format: {assignment: {"<vertex-id>": district}, weights: [...],
// cost, cut_edges: [...], seed, rank_p}.
Plan parse_plan(std::istream& in, const EmbeddedGraph& g);
Plan read_plan_file(const std::string& path, const EmbeddedGraph& g);
void write_plan(std::ostream& out, const Plan& plan);
void write_plan_file(const std::string& path, const Plan& plan);

// Histogram dump: {total, entries: [{weights: [...], cost, count}]}.
void write_histogram(std::ostream& out, const OracleResult& res);

}  // namespace district
