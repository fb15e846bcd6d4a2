#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "pgraph/catalog.hpp"
#include "pgraph/graph.hpp"
#include "pgraph/spielberg.hpp"

using namespace pgraph;

namespace {

std::shared_ptr<SkeletonGraph> grid() { return build_grid(2, {2, 2}); }

Path P(const PGraph& g, const std::string& tok) {
  auto p = g.parse_path(tok);
  if (!p) throw std::runtime_error("bad token " + tok);
  return *p;
}

// Every common extension among the enumerated paths, then the ones of minimal degree.
PathSet oracle_mce(const PGraph& g, const Path& mu, const Path& nu) {
  auto extends = [&](const Path& lambda, const Path& prefix) {
    if (prefix.range != lambda.range) return false;
    for (const Path& a : g.paths_with_range(prefix.source))
      if (g.concat(prefix, a) == lambda) return true;
    return false;
  };
  PathSet common;
  for (const Path& l : g.paths())
    if (extends(l, mu) && extends(l, nu)) common.push_back(l);
  PathSet out;
  for (const Path& l : common)
    if (std::none_of(common.begin(), common.end(), [&](const Path& m) {
          return m.degree != l.degree && leq(m.degree, l.degree);
        }))
      out.push_back(l);
  normalize(out);
  return out;
}

std::shared_ptr<SkeletonGraph> one_graph_two_edges() {
  // e, f : w -> v, both of degree 1.
  return SkeletonGraph::make(Group::nk(1), {"v", "w"}, {{"e", 0, 1, 0}, {"f", 0, 1, 0}}, {});
}

// GRID3 with one composition entry redirected.
class FaultyGraph : public PGraph {
 public:
  explicit FaultyGraph(std::shared_ptr<SkeletonGraph> base)
      : PGraph(base->group(), names(*base), base->bound(), base->truncated()), base_(std::move(base)) {
    mu_ = *base_->parse_path("x(0,0)");
    nu_ = *base_->parse_path("y(1,0)");
    wrong_ = *base_->parse_path("y(0,0).x(0,1)");
    wrong_.word.back() = base_->parse_path("x(0,0)")->word.front();  // scrambled word
  }
  Path vertex(VertexId v) const override { return base_->vertex(v); }
  Path concat(const Path& a, const Path& b) const override {
    if (a == mu_ && b == nu_) return wrong_;
    return base_->concat(a, b);
  }
  std::pair<Path, Path> split(const Path& l, const GroupElement& p) const override { return base_->split(l, p); }
  PathSet paths_from(VertexId r, const GroupElement& d) const override { return base_->paths_from(r, d); }
  std::string name(const Path& p) const override {
    if (p == wrong_) return "corrupt";
    return base_->name(p);
  }
  std::optional<Path> parse_path(std::string_view t) const override { return base_->parse_path(t); }

 private:
  static std::vector<std::string> names(const PGraph& g) {
    std::vector<std::string> out;
    for (VertexId v = 0; v < g.vertex_count(); ++v) out.push_back(g.vertex_name(v));
    return out;
  }
  std::shared_ptr<SkeletonGraph> base_;
  Path mu_, nu_, wrong_;
};

}  // namespace

TEST(Graph, GridCounts) {
  auto g = grid();
  EXPECT_EQ(g->vertex_count(), 9u);
  EXPECT_EQ(g->paths().size(), 36u);
  // |Lambda^(1,1)| by counting lattice points v with v + (1,1) inside the 3x3 grid.
  std::size_t squares = 0;
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) squares += (i + 1 <= 2 && j + 1 <= 2);
  EXPECT_EQ(g->paths_of_degree(GroupElement::nk({1, 1})).size(), squares);
  EXPECT_EQ(squares, 4u);
}

TEST(Graph, ComposeExamples) {
  auto g = grid();
  Path a = P(*g, "x(0,0)"), b = P(*g, "y(1,0)");
  Path ab = compose(*g, a, b);
  EXPECT_EQ(ab.range, *g->find_vertex("(0,0)"));
  EXPECT_EQ(ab.source, *g->find_vertex("(1,1)"));
  EXPECT_EQ(ab.degree, GroupElement::nk({1, 1}));
  EXPECT_EQ(compose(*g, g->vertex(a.range), a), a);
  EXPECT_EQ(compose(*g, a, g->vertex(a.source)), a);
  EXPECT_THROW(compose(*g, b, a), PreconditionError);
}

TEST(Graph, FactorizeExamples) {
  auto g = grid();
  Path sq = P(*g, "x(0,0).y(1,0)");
  auto [m, n] = factorize(*g, sq, GroupElement::nk({0, 1}));
  EXPECT_EQ(m, P(*g, "y(0,0)"));
  EXPECT_EQ(n, P(*g, "x(0,1)"));
  auto [v, l] = factorize(*g, sq, g->group().identity());
  EXPECT_EQ(v, g->vertex(sq.range));
  EXPECT_EQ(l, sq);
  auto [l2, s] = factorize(*g, sq, sq.degree);
  EXPECT_EQ(l2, sq);
  EXPECT_EQ(s, g->vertex(sq.source));
}

TEST(Graph, FactorisationIsUniqueOnGrid) {
  auto g = grid();
  for (const Path& l : g->paths())
    for (const GroupElement& p : g->bound().elements()) {
      if (!leq(p, l.degree)) continue;
      GroupElement q = left_quotient(p, l.degree);
      std::size_t count = 0;
      for (const Path& m : g->paths_of_degree(p))
        for (const Path& n : g->paths_of_degree(q))
          if (m.source == n.range && m.range == l.range && g->concat(m, n) == l) ++count;
      EXPECT_EQ(count, 1u) << g->name(l) << " at " << to_string(p);
    }
}

TEST(Graph, MceMatchesOracleOnGrid) {
  auto g = grid();
  for (const Path& mu : g->paths())
    for (const Path& nu : g->paths()) {
      PathSet want = oracle_mce(*g, mu, nu);
      EXPECT_EQ(mce(*g, mu, nu), want) << g->name(mu) << " " << g->name(nu);
      EXPECT_LE(want.size(), 1u);
    }
  Path x = P(*g, "x(0,0)"), y = P(*g, "y(0,0)");
  EXPECT_EQ(mce(*g, x, y), PathSet{P(*g, "x(0,0).y(1,0)")});
  EXPECT_EQ(mce(*g, x, x), PathSet{x});
}

TEST(Graph, DistinctEqualDegreeEdgesHaveNoMce) {
  auto g = one_graph_two_edges();
  EXPECT_TRUE(mce(*g, P(*g, "e"), P(*g, "f")).empty());
}

TEST(Graph, MceOfSetAndVeePaths) {
  auto g = grid();
  Path x = P(*g, "x(0,0)"), y = P(*g, "y(0,0)"), sq = P(*g, "x(0,0).y(1,0)");
  EXPECT_EQ(mce_of_set(*g, {x}), PathSet{x});
  PathSet three{x, y, sq};
  normalize(three);
  EXPECT_EQ(mce_of_set(*g, three), PathSet{sq});
  PathSet f{x, y};
  normalize(f);
  EXPECT_EQ(vee_paths(*g, f), three);
  EXPECT_EQ(vee_paths(*g, {x}), PathSet{x});

  auto fm = SkeletonGraph::make(Group::free_monoid(2), {"v"}, {{"a", 0, 0, 0}, {"b", 0, 0, 1}}, {},
                                DegreeBound::length(Group::free_monoid(2), 2));
  PathSet ab{P(*fm, "a"), P(*fm, "b")};
  normalize(ab);
  EXPECT_TRUE(mce_of_set(*fm, ab).empty());
  EXPECT_EQ(vee_paths(*fm, ab), ab);
}

TEST(Graph, Ext) {
  auto g = grid();
  Path x = P(*g, "x(0,0)"), y = P(*g, "y(0,0)");
  EXPECT_EQ(ext(*g, {x}, {x}), PathSet{g->vertex(x.source)});
  EXPECT_EQ(ext(*g, {x}, {y}), PathSet{P(*g, "y(1,0)")});
  auto fm = SkeletonGraph::make(Group::free_monoid(2), {"v"}, {{"a", 0, 0, 0}, {"b", 0, 0, 1}}, {},
                                DegreeBound::length(Group::free_monoid(2), 2));
  EXPECT_TRUE(ext(*fm, {P(*fm, "a")}, {P(*fm, "b")}).empty());
}

TEST(Graph, Exhaustiveness) {
  auto g = grid();
  VertexId v = *g->find_vertex("(0,0)");
  EXPECT_EQ(is_exhaustive(*g, v, {g->vertex(v)}).verdict, Exhaustiveness::Verdict::Yes);
  PathSet xy{P(*g, "x(0,0)"), P(*g, "y(0,0)")};
  normalize(xy);
  EXPECT_EQ(is_exhaustive(*g, v, xy).verdict, Exhaustiveness::Verdict::Yes);
  // Brute force: every path at v meets x or y.
  for (const Path& mu : g->paths_with_range(v))
    EXPECT_TRUE(!mce(*g, mu, xy[0]).empty() || !mce(*g, mu, xy[1]).empty());

  auto h = one_graph_two_edges();
  auto r = is_exhaustive(*h, 0, {P(*h, "e")});
  EXPECT_EQ(r.verdict, Exhaustiveness::Verdict::No);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, P(*h, "f"));
}

TEST(Graph, ValidateAcceptsCatalogGraphs) {
  EXPECT_TRUE(validate(*grid()).ok());
  EXPECT_TRUE(validate(*build_grid(1, {4})).ok());
  EXPECT_TRUE(validate(*build_grid(3, {1, 1, 1})).ok());
  EXPECT_TRUE(validate(*build_sy(2, 2)).ok());
}

TEST(Graph, ValidateReportsCorruptedComposition) {
  FaultyGraph g(grid());
  ValidationReport r = validate(g);
  ASSERT_FALSE(r.ok());
  bool named = false;
  for (const auto& v : r.violations)
    for (const auto& p : v.paths) named |= p == "x(0,0)" || p == "y(1,0)" || p == "corrupt";
  EXPECT_TRUE(named);
}

TEST(Graph, TruncatedChecksThrow) {
  auto h = build_hybrid(hyb1_spec(), DegreeBound::blocks(1, 1));
  const PGraph& g = *h.graph;
  // Two D edges out of u1 chained: degree [2] lies outside the one-block, entry-one bound.
  Path d4 = *g.parse_path("d4"), d5 = *g.parse_path("d5");
  EXPECT_THROW(compose(g, d4, d5), TruncationError);
  EXPECT_NO_THROW(g.concat(d4, d5));
}

TEST(Graph, IncompleteSquaresRejected) {
  auto full = grid();
  std::vector<SkeletonGraph::Edge> edges = full->edges();
  // Only one of the four squares.
  auto idx = [&](const std::string& n) { return *full->find_edge(n); };
  std::vector<SkeletonGraph::Square> one{{idx("x(0,0)"), idx("y(1,0)"), idx("y(0,0)"), idx("x(0,1)")}};
  std::vector<std::string> names;
  for (VertexId v = 0; v < full->vertex_count(); ++v) names.push_back(full->vertex_name(v));
  try {
    SkeletonGraph::make(Group::nk(2), names, edges, one);
    FAIL() << "expected SpecError";
  } catch (const SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("incomplete squares"), std::string::npos);
  }
}

TEST(Graph, CyclicSkeletonNeedsBound) {
  EXPECT_THROW(SkeletonGraph::make(Group::nk(1), {"v"}, {{"e", 0, 0, 0}}, {}), SpecError);
  auto loop = SkeletonGraph::make(Group::nk(1), {"v"}, {{"e", 0, 0, 0}}, {}, DegreeBound::box({3}));
  EXPECT_TRUE(loop->truncated());
  EXPECT_EQ(loop->paths().size(), 4u);
}
