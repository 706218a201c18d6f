#include "district/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace district {

using nlohmann::json;

namespace {

json parse_json(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw GraphError(std::string("parse error: ") + e.what());
  }
  return j;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw GraphError("cannot open " + path);
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw GraphError("cannot write " + path);
  return f;
}

}  // namespace

GraphData parse_graph(std::istream& in) {
  json j = parse_json(in);
  GraphData raw;
  try {
    for (const auto& v : j.at("vertices"))
      raw.vertices.push_back({v.at("id").get<VertexId>(), v.at("weight").get<Weight>()});
    for (const auto& e : j.at("edges"))
      raw.edges.push_back({e.at("id").get<EdgeId>(), e.at("u").get<VertexId>(),
                           e.at("v").get<VertexId>(), e.at("cost").get<Cost>()});
    for (const auto& [key, val] : j.at("rotation").items()) {
      VertexId vid = static_cast<VertexId>(std::stoul(key));
      raw.rotation[vid] = val.get<std::vector<EdgeId>>();
    }
    if (j.contains("meta"))
      for (const auto& [key, val] : j.at("meta").items())
        raw.meta[key] = val.is_string() ? val.get<std::string>() : val.dump();
  } catch (const json::exception& e) {
    throw GraphError(std::string("malformed graph file: ") + e.what());
  } catch (const std::logic_error& e) {
    throw GraphError(std::string("malformed graph file: ") + e.what());
  }
  return raw;
}

GraphData read_graph_file(const std::string& path) {
  auto f = open_in(path);
  return parse_graph(f);
}

void write_graph(std::ostream& out, const EmbeddedGraph& g,
                 const std::map<std::string, std::string>& meta) {
  json j;
  j["vertices"] = json::array();
  for (const auto& v : g.vertices) j["vertices"].push_back({{"id", v.id}, {"weight", v.weight}});
  j["edges"] = json::array();
  for (const auto& e : g.edges)
    j["edges"].push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}, {"cost", e.cost}});
  j["rotation"] = json::object();
  for (const auto& [vid, rot] : g.rotation) j["rotation"][std::to_string(vid)] = rot;
  j["meta"] = json::object();
  for (const auto& [k, v] : meta) j["meta"][k] = v;
  out << j.dump(2) << "\n";
}

void write_graph_file(const std::string& path, const EmbeddedGraph& g,
                      const std::map<std::string, std::string>& meta) {
  auto f = open_out(path);
  write_graph(f, g, meta);
}

SphereCutDecomposition parse_decomposition(std::istream& in, const EmbeddedGraph& g) {
  json j = parse_json(in);
  SphereCutDecomposition d;
  try {
    for (const auto& nj : j.at("nodes")) {
      Cluster c;
      c.id = nj.at("id").get<int>();
      if (nj.at("children").is_null()) {
        auto edges = nj.at("edges").get<std::vector<EdgeId>>();
        if (edges.size() != 1) throw GraphError("leaf node must carry exactly one edge");
        c.leaf_edge = edges.front();
      } else {
        auto ch = nj.at("children").get<std::vector<int>>();
        if (ch.size() != 2) throw GraphError("internal node must have exactly two children");
        c.children = {ch[0], ch[1]};
      }
      if (nj.contains("theta")) c.theta = nj.at("theta").get<std::vector<VertexId>>();
      d.clusters.push_back(std::move(c));
    }
    d.root = j.at("root").get<int>();
  } catch (const json::exception& e) {
    throw GraphError(std::string("malformed decomposition file: ") + e.what());
  }
  std::sort(d.clusters.begin(), d.clusters.end(),
            [](const Cluster& a, const Cluster& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < d.clusters.size(); ++i)
    if (d.clusters[i].id != static_cast<int>(i))
      throw GraphError("node ids must be 0..n-1");
  recompute_derived(d, g);
  auto bad = validate(d, g);
  if (!bad.empty()) {
    std::string msg = "invalid decomposition:";
    for (const auto& b : bad) msg += "\n  " + b;
    throw GraphError(msg);
  }
  return d;
}

SphereCutDecomposition read_decomposition_file(const std::string& path, const EmbeddedGraph& g) {
  auto f = open_in(path);
  return parse_decomposition(f, g);
}

void write_decomposition(std::ostream& out, const SphereCutDecomposition& d) {
  json j;
  j["nodes"] = json::array();
  for (const auto& c : d.clusters) {
    json nj;
    nj["id"] = c.id;
    if (c.is_leaf()) {
      nj["children"] = nullptr;
      nj["edges"] = std::vector<EdgeId>{c.leaf_edge};
    } else {
      nj["children"] = std::vector<int>{c.children[0], c.children[1]};
    }
    if (c.theta) nj["theta"] = *c.theta;
    j["nodes"].push_back(std::move(nj));
  }
  j["root"] = d.root;
  out << j.dump(2) << "\n";
}

void write_decomposition_file(const std::string& path, const SphereCutDecomposition& d) {
  auto f = open_out(path);
  write_decomposition(f, d);
}

Plan parse_plan(std::istream& in, const EmbeddedGraph& g) {
  json j = parse_json(in);
  Plan plan;
  try {
    std::map<int, std::vector<VertexId>> by_district;
    for (const auto& [key, val] : j.at("assignment").items())
      by_district[val.get<int>()].push_back(static_cast<VertexId>(std::stoul(key)));
    for (auto& [_, members] : by_district) {
      std::sort(members.begin(), members.end());
      plan.districts.push_back(std::move(members));
    }
    std::sort(plan.districts.begin(), plan.districts.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    plan.cost = j.at("cost").get<Cost>();
    plan.cut_edges = j.at("cut_edges").get<std::vector<EdgeId>>();
    std::sort(plan.cut_edges.begin(), plan.cut_edges.end());
    if (j.contains("seed")) plan.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("rank_p")) plan.rank = BigCount(j.at("rank_p").get<std::string>());
  } catch (const json::exception& e) {
    throw GraphError(std::string("malformed plan file: ") + e.what());
  } catch (const std::logic_error& e) {
    throw GraphError(std::string("malformed plan file: ") + e.what());
  }
  // Weights are derived, not trusted from the file.
  for (const auto& d : plan.districts) {
    Weight w = 0;
    for (VertexId v : d)
      if (g.has_vertex(v)) w += g.vertex(v).weight;
    plan.weights.push_back(w);
  }
  return plan;
}

Plan read_plan_file(const std::string& path, const EmbeddedGraph& g) {
  auto f = open_in(path);
  return parse_plan(f, g);
}

void write_plan(std::ostream& out, const Plan& plan) {
  json j;
  j["assignment"] = json::object();
  for (std::size_t d = 0; d < plan.districts.size(); ++d)
    for (VertexId v : plan.districts[d]) j["assignment"][std::to_string(v)] = d;
  j["weights"] = plan.weights;
  j["cost"] = plan.cost;
  j["cut_edges"] = plan.cut_edges;
  j["seed"] = plan.seed;
  j["rank_p"] = plan.rank.str();
  out << j.dump(2) << "\n";
}

void write_plan_file(const std::string& path, const Plan& plan) {
  auto f = open_out(path);
  write_plan(f, plan);
}

void write_histogram(std::ostream& out, const OracleResult& res) {
  json j;
  OracleCount total = 0;
  j["entries"] = json::array();
  for (const auto& [key, count] : res.histogram) {
    j["entries"].push_back(
        {{"weights", key.first}, {"cost", key.second}, {"count", count.str()}});
    total += count;
  }
  j["total"] = total.str();
  out << j.dump(2) << "\n";
}

}  // namespace district
