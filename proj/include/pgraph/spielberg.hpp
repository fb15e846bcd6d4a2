#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "pgraph/algebra.hpp"
#include "pgraph/graph.hpp"

namespace pgraph {

// Plain directed graph; an edge goes from source to range.
struct DirectedGraph {
  struct Edge {
    std::string name;
    std::uint32_t range;
    std::uint32_t source;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  std::uint32_t vertex_index(const std::string& name) const;
  std::uint32_t add_vertex(const std::string& name);
  void add_edge(const std::string& name, const std::string& range, const std::string& source);
};

// Default connecting graph: u0, u1 and two middle vertices m0, m1 carrying two loops each.
DirectedGraph default_dgraph();

struct HybridSpec {
  DirectedGraph d = default_dgraph();
  std::array<DirectedGraph, 2> e;
  std::array<DirectedGraph, 2> f;
  std::array<std::string, 2> u{"u0", "u1"};
  // Attachment vertices: (v_i, w_i) in E_i x F_i is glued to u_i.
  std::array<std::string, 2> v;
  std::array<std::string, 2> w;
};

// HYB1: E_i and F_i are 2-vertex 2-cycles, D is the default graph.
HybridSpec hyb1_spec();

enum class HybridEdgeKind { D, E, F };

struct HybridGraph {
  struct EdgeInfo {
    HybridEdgeKind kind;
    int slice;               // -1 for D edges
    std::uint32_t component;  // edge index in D, E_i or F_i
    std::uint32_t other;      // E-edges: the F_i vertex; F-edges: the E_i vertex
  };
  struct VertexInfo {
    bool in_d;
    int slice;  // -1 for vertices of D that are not glued
    std::uint32_t x, y;
  };

  HybridSpec spec;
  std::shared_ptr<const SkeletonGraph> graph;
  std::vector<EdgeInfo> edge_info;
  std::vector<VertexInfo> vertex_info;
  std::map<std::tuple<int, int, std::uint32_t, std::uint32_t>, std::uint32_t> edge_lookup;
  std::array<VertexId, 2> u{};

  VertexId product_vertex(int slice, std::uint32_t x, std::uint32_t y) const;
  std::uint32_t product_edge(HybridEdgeKind kind, int slice, std::uint32_t component, std::uint32_t other) const;
};

// Skeleton data of the hybrid graph before the squares are checked; lets callers tamper with it.
struct HybridSkeleton {
  std::vector<std::string> vertex_names;
  std::vector<SkeletonGraph::Edge> edges;
  std::vector<SkeletonGraph::Square> squares;
  std::vector<HybridGraph::EdgeInfo> edge_info;
  std::vector<HybridGraph::VertexInfo> vertex_info;
  std::array<VertexId, 2> u{};
};

HybridSkeleton hybrid_skeleton(const HybridSpec& spec);
HybridGraph build_hybrid(const HybridSpec& spec, const DegreeBound& bound);

// The closed form: {nu} when mu is a segment prefix of nu, (mu_1..mu_{m-1}) MCE(mu_m, nu_m)
// for equal segment counts, and empty otherwise.
PathSet mce_hybrid(const HybridGraph& h, const Path& mu, const Path& nu);

// Eventually periodic boundary paths used as the Omega basis: every enumerated
// path followed by one of the chosen cycles at its source.
std::vector<FilterKey> hybrid_tails(const HybridGraph& h, std::size_t max_stem_blocks);
std::vector<Path> hybrid_cycles(const HybridGraph& h, VertexId v);

std::vector<CheckRecord> check_spielberg_relations(const HybridGraph& h, const Representation& r);
CheckRecord verify_t4_hybrid(const HybridGraph& h, const std::vector<std::pair<Path, Path>>& sample,
                             const Representation& r);
// All same-range pairs of enumerated paths with at most max_blocks segments.
std::vector<std::pair<Path, Path>> hybrid_pairs(const HybridGraph& h, std::size_t max_blocks);

}  // namespace pgraph
