#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pgraph/qlo.hpp"

namespace pgraph {

using VertexId = std::uint32_t;

// A morphism of the category. The word is a graph-specific canonical encoding;
// two paths are equal iff all fields agree.
struct Path {
  VertexId range = 0;
  VertexId source = 0;
  GroupElement degree;
  std::vector<std::uint32_t> word;

  bool is_vertex() const { return degree.is_identity(); }

  friend bool operator==(const Path&, const Path&) = default;
  friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
    if (auto c = a.degree <=> b.degree; c != 0) return c;
    if (auto c = a.range <=> b.range; c != 0) return c;
    if (auto c = a.source <=> b.source; c != 0) return c;
    return a.word <=> b.word;
  }
};

using PathSet = std::vector<Path>;  // sorted, duplicate free

void normalize(PathSet& s);
bool set_contains(const PathSet& s, const Path& p);

class PGraph {
 public:
  PGraph(Group group, std::vector<std::string> vertex_names, DegreeBound bound, bool truncated);
  virtual ~PGraph() = default;
  PGraph(const PGraph&) = delete;
  PGraph& operator=(const PGraph&) = delete;

  const Group& group() const { return group_; }
  std::size_t vertex_count() const { return vertex_names_.size(); }
  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
  std::optional<VertexId> find_vertex(std::string_view name) const;

  // True when the graph is infinite and only paths with degree in bound() are enumerated.
  bool truncated() const { return truncated_; }
  const DegreeBound& bound() const { return bound_; }
  bool in_bound(const GroupElement& p) const { return bound_.contains(p); }
  bool in_bound(const Path& p) const { return bound_.contains(p.degree); }

  // Structure maps. They are exact whatever the bound; callers that need to stay
  // inside the enumerated part use the checked free functions below.
  virtual Path vertex(VertexId v) const = 0;
  // Requires s(mu) = r(nu).
  virtual Path concat(const Path& mu, const Path& nu) const = 0;
  // Requires p <= d(lambda).
  virtual std::pair<Path, Path> split(const Path& lambda, const GroupElement& p) const = 0;
  // All paths with the given range and degree (always a finite set).
  virtual PathSet paths_from(VertexId range, const GroupElement& degree) const = 0;
  virtual std::string name(const Path& p) const = 0;
  virtual std::optional<Path> parse_path(std::string_view token) const = 0;

  // Every path with degree in bound(), canonical order.
  const PathSet& paths() const;
  PathSet paths_with_range(VertexId v) const;
  PathSet paths_of_degree(const GroupElement& p) const;

  // alpha is a prefix of lambda (lambda in alpha Lambda).
  bool is_prefix(const Path& alpha, const Path& lambda) const;
  std::string names(const PathSet& s) const;

 private:
  Group group_;
  std::vector<std::string> vertex_names_;
  std::map<std::string, VertexId, std::less<>> vertex_index_;
  DegreeBound bound_;
  bool truncated_;
  mutable std::once_flag paths_once_;
  mutable PathSet paths_;
};

using GraphPtr = std::shared_ptr<const PGraph>;

// Checked operations.
Path compose(const PGraph& g, const Path& mu, const Path& nu);
std::pair<Path, Path> factorize(const PGraph& g, const Path& lambda, const GroupElement& p);
PathSet mce(const PGraph& g, const Path& mu, const Path& nu);
PathSet mce_of_set(const PGraph& g, const PathSet& paths);
PathSet vee_paths(const PGraph& g, const PathSet& f);
PathSet ext(const PGraph& g, const PathSet& u, const PathSet& v);

// Minimal common extensions without the bound check.
PathSet mce_unbounded(const PGraph& g, const Path& mu, const Path& nu);

struct Exhaustiveness {
  enum class Verdict { Yes, No, UnknownUpTo };
  Verdict verdict = Verdict::Yes;
  std::optional<Path> witness;
  std::string bound;
};
Exhaustiveness is_exhaustive(const PGraph& g, VertexId v, const PathSet& e);

struct Violation {
  std::string kind;
  std::vector<std::string> paths;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::size_t paths_checked = 0;
  std::size_t pairs_checked = 0;
  std::size_t triples_checked = 0;
  std::size_t factorizations_checked = 0;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const PGraph& g);

// Graph presented by a coloured skeleton plus factorisation squares. Covers
// k-graphs (Nk), free monoid graphs and the N^2*N hybrid graphs.
class SkeletonGraph : public PGraph {
 public:
  struct Edge {
    std::string name;
    VertexId range;
    VertexId source;
    int colour;
  };
  // e f' = f e'' with colour(e) = colour(e'') and colour(f') = colour(f).
  struct Square {
    std::uint32_t e, f_prime, f, e_second;
  };

  // Throws SpecError when the squares are incomplete or inconsistent.
  static std::shared_ptr<SkeletonGraph> make(Group group, std::vector<std::string> vertex_names,
                                             std::vector<Edge> edges, const std::vector<Square>& squares,
                                             std::optional<DegreeBound> bound = std::nullopt);

  const std::vector<Edge>& edges() const { return edges_; }
  Path edge_path(std::uint32_t e) const;
  std::optional<std::uint32_t> find_edge(std::string_view name) const;
  // The colour sequence every canonical path of degree p follows.
  std::vector<int> colour_word(const GroupElement& p) const;
  // Canonical path from an arbitrary composable edge sequence.
  Path path_from_edges(const std::vector<std::uint32_t>& edges) const;

  Path vertex(VertexId v) const override;
  Path concat(const Path& mu, const Path& nu) const override;
  std::pair<Path, Path> split(const Path& lambda, const GroupElement& p) const override;
  PathSet paths_from(VertexId range, const GroupElement& degree) const override;
  std::string name(const Path& p) const override;
  std::optional<Path> parse_path(std::string_view token) const override;

 protected:
  SkeletonGraph(Group group, std::vector<std::string> vertex_names, std::vector<Edge> edges,
                std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<std::uint32_t, std::uint32_t>> swaps,
                DegreeBound bound, bool truncated);

 private:
  void canonicalize(std::vector<std::uint32_t>& w) const;
  std::pair<std::uint32_t, std::uint32_t> swap(std::uint32_t x, std::uint32_t y) const;

  std::vector<Edge> edges_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<std::uint32_t, std::uint32_t>> swaps_;
  std::map<std::string, std::uint32_t, std::less<>> edge_index_;
  // by_range_colour_[v][c] lists the edges with range v and colour c.
  std::vector<std::vector<std::vector<std::uint32_t>>> by_range_colour_;
};

}  // namespace pgraph
