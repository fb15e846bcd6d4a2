#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgraph/error.hpp"
#include "pgraph/graph.hpp"
#include "pgraph/spielberg.hpp"

namespace pgraph {

// Lattice points of [0,dims_1] x ... x [0,dims_k]; the path (v,p) has range v and source v+p.
// Vertices are named "(i,j)", edges by colour letter and range, e.g. "x(0,1)".
std::shared_ptr<SkeletonGraph> build_grid(int k, const std::vector<std::int64_t>& dims);

// Two-vertex graph over the lexicographic pair: f_s loops at f0; g_s loops at g0
// for s in S = {0} x N and runs from g0 to f0 otherwise.
class SyGraph : public PGraph {
 public:
  SyGraph(std::int64_t max_a, std::int64_t max_abs_b);

  static constexpr VertexId f0 = 0;
  static constexpr VertexId g0 = 1;
  static bool in_s(const GroupElement& p);

  Path f(const GroupElement& s) const;
  Path g(const GroupElement& s) const;

  Path vertex(VertexId v) const override;
  Path concat(const Path& mu, const Path& nu) const override;
  std::pair<Path, Path> split(const Path& lambda, const GroupElement& p) const override;
  PathSet paths_from(VertexId range, const GroupElement& degree) const override;
  std::string name(const Path& p) const override;
  std::optional<Path> parse_path(std::string_view token) const override;
};

std::shared_ptr<SyGraph> build_sy(std::int64_t max_a, std::int64_t max_abs_b);

// An order embedding iota : (H,Q) -> (G,P) together with a partial inverse on P.
struct Embedding {
  Group source;
  Group target;
  std::function<GroupElement(const GroupElement&)> map;
  std::function<std::optional<GroupElement>(const GroupElement&)> preimage;
  std::string description;

  static Embedding nat_to_letter(int letters, int letter);   // N -> F_n^+, 1 -> letter
  static Embedding nat_to_diagonal(int k);                   // N -> N^k, 1 -> (1,...,1)
};

class HereditaryViolation : public Error {
 public:
  HereditaryViolation(std::string p, std::string q, const std::string& what)
      : Error(what), p_(std::move(p)), q_(std::move(q)) {}
  const std::string& p() const { return p_; }
  const std::string& q() const { return q_; }

 private:
  std::string p_, q_;
};

// Searches the target bound for p, q with pq in iota(Q) but p or q outside it, and
// checks on the source bound that iota preserves order and joins. Throws HereditaryViolation.
void check_hereditary(const Embedding& iota, const DegreeBound& source_bound, const DegreeBound& target_bound);

// The same paths with degree iota(d(lambda)).
class EmbeddedGraph : public PGraph {
 public:
  EmbeddedGraph(GraphPtr base, Embedding iota, DegreeBound target_bound);

  const PGraph& base() const { return *base_; }
  Path lift(const Path& p) const;     // base path -> embedded path
  Path lower(const Path& p) const;    // embedded path -> base path

  Path vertex(VertexId v) const override;
  Path concat(const Path& mu, const Path& nu) const override;
  std::pair<Path, Path> split(const Path& lambda, const GroupElement& p) const override;
  PathSet paths_from(VertexId range, const GroupElement& degree) const override;
  std::string name(const Path& p) const override;
  std::optional<Path> parse_path(std::string_view token) const override;

 private:
  GroupElement pre(const GroupElement& p) const;
  GraphPtr base_;
  Embedding iota_;
};

std::shared_ptr<EmbeddedGraph> build_hereditary_embedding(GraphPtr base, const Embedding& iota,
                                                          const DegreeBound& target_bound);

// The N-graph with one vertex and one path e_n of each degree n <= max_n.
std::shared_ptr<SkeletonGraph> single_loop_graph(std::int64_t max_n);

// --- spec files -----------------------------------------------------------------

struct GraphSpecDoc {
  struct EdgeDecl {
    std::string name, range, source, generator;
    int line = 0;
  };
  struct SquareDecl {
    std::string e, f_prime, f, e_second;
    int line = 0;
  };
  std::string group;  // nk | freemonoid | freeprod-n2n | lex-z2
  std::int64_t group_param = 0;
  std::vector<std::int64_t> bound;
  std::vector<std::string> vertices;
  std::vector<EdgeDecl> edges;
  std::vector<SquareDecl> squares;
  std::optional<HybridSpec> hybrid;
};

struct LoadedSpec {
  GraphSpecDoc doc;
  GraphPtr graph;
  std::optional<HybridGraph> hybrid;
};

Group group_of(const GraphSpecDoc& doc);
// Bound numbers: nk takes k box extents, freemonoid a word length, freeprod-n2n
// a block count and an entry cap, lex-z2 the caps A and B.
DegreeBound make_bound(const Group& g, const std::vector<std::int64_t>& numbers);
std::vector<std::int64_t> parse_bound_numbers(std::string_view text);

GraphSpecDoc parse_spec_doc(std::string_view text);
// bound_override replaces the document's bound line.
LoadedSpec parse_spec(std::string_view text, const std::optional<std::vector<std::int64_t>>& bound_override = {});
LoadedSpec load_spec(const std::string& path, const std::optional<std::vector<std::int64_t>>& bound_override = {});

}  // namespace pgraph
