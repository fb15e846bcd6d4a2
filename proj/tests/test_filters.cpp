#include <gtest/gtest.h>

#include <algorithm>

#include "pgraph/catalog.hpp"
#include "pgraph/filters.hpp"

using namespace pgraph;

namespace {

std::string fixture(const char* n) { return std::string(FIXTURE_DIR) + "/" + n; }

Path P(const PGraph& g, const std::string& tok) {
  auto p = g.parse_path(tok);
  if (!p) throw std::runtime_error("bad token " + tok);
  return *p;
}

bool oracle_prefix(const PGraph& g, const Path& a, const Path& l) {
  if (a.range != l.range) return false;
  for (const Path& x : g.paths_with_range(a.source))
    if (g.concat(a, x) == l) return true;
  return false;
}

bool oracle_filter(const PGraph& g, const PathSet& u) {
  if (u.empty()) return false;
  for (const Path& m : u)
    for (const Path& a : g.paths())
      if (oracle_prefix(g, a, m) && !set_contains(u, a)) return false;
  for (const Path& m : u)
    for (const Path& n : u) {
      bool ok = false;
      for (const Path& l : u) ok |= oracle_prefix(g, m, l) && oracle_prefix(g, n, l);
      if (!ok) return false;
    }
  return true;
}

// All filters of a small finite graph by running over every subset of paths.
std::vector<PathSet> oracle_filters(const PGraph& g) {
  const PathSet& all = g.paths();
  std::vector<PathSet> out;
  for (std::uint64_t mask = 1; mask < (1ull << all.size()); ++mask) {
    PathSet s;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (mask >> i & 1) s.push_back(all[i]);
    if (oracle_filter(g, s)) out.push_back(s);
  }
  return out;
}

bool proper_subset(const PathSet& a, const PathSet& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::shared_ptr<SkeletonGraph> arrow() {
  // e has range v and source w.
  return SkeletonGraph::make(Group::nk(1), {"v", "w"}, {{"e", 0, 1, 0}}, {});
}

}  // namespace

TEST(Filters, EnumerationMatchesSubsetOracle) {
  for (auto g : {GraphPtr(arrow()), load_spec(fixture("parallel.pg")).graph, load_spec(fixture("chain.pg")).graph}) {
    auto want = oracle_filters(*g);
    FilterSpace fs = enumerate_filters(*g, false);
    std::vector<PathSet> got;
    for (const Filter& f : fs.filters) got.push_back(f.elements());
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, want);
    for (std::size_t i = 0; i < fs.filters.size(); ++i) {
      bool maximal = std::none_of(want.begin(), want.end(),
                                  [&](const PathSet& o) { return proper_subset(fs.filters[i].elements(), o); });
      EXPECT_EQ(fs.ultra[i], maximal);
      EXPECT_EQ(is_ultrafilter(*g, fs.filters[i]), maximal);
    }
    FilterSpace us = enumerate_filters(*g, true);
    EXPECT_EQ(us.filters.size(), static_cast<std::size_t>(std::count(fs.ultra.begin(), fs.ultra.end(), true)));
  }
}

TEST(Filters, ArrowGraphFilters) {
  auto g = arrow();
  FilterSpace fs = enumerate_filters(*g, false);
  ASSERT_EQ(fs.filters.size(), 3u);
  FilterSpace us = enumerate_filters(*g, true);
  std::vector<PathSet> tops;
  for (const Filter& f : us.filters) tops.push_back(f.elements());
  std::sort(tops.begin(), tops.end());
  PathSet ve{g->vertex(0), P(*g, "e")};
  normalize(ve);
  std::vector<PathSet> want{{g->vertex(1)}, ve};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(tops, want);
  Extension ext = ultrafilter_extend(*g, principal_filter(*g, g->vertex(0)));
  EXPECT_EQ(ext.filter.elements(), ve);
  EXPECT_TRUE(ext.exact);
}

TEST(Filters, SingleVertex) {
  auto g = SkeletonGraph::make(Group::nk(1), {"v"}, {}, {});
  FilterSpace fs = enumerate_filters(*g, false);
  ASSERT_EQ(fs.filters.size(), 1u);
  EXPECT_EQ(fs.filters[0].elements(), PathSet{g->vertex(0)});
}

TEST(Filters, PrincipalFilters) {
  auto g = build_grid(2, {2, 2});
  EXPECT_EQ(principal_filter(*g, g->vertex(0)).elements(), PathSet{g->vertex(0)});
  Path sq = P(*g, "x(0,0).y(1,0)");
  PathSet scan;
  for (const Path& a : g->paths())
    if (oracle_prefix(*g, a, sq)) scan.push_back(a);
  EXPECT_EQ(principal_filter(*g, sq).elements(), scan);
  EXPECT_EQ(scan.size(), 4u);

  auto sy = build_sy(2, 5);
  PathSet gs;
  for (std::int64_t b = 0; b <= 5; ++b) gs.push_back(sy->g(GroupElement::lex(0, b)));
  normalize(gs);
  EXPECT_EQ(principal_filter(*sy, sy->g(GroupElement::lex(0, 5))).elements(), gs);
}

TEST(Filters, IsFilter) {
  auto g = load_spec(fixture("parallel.pg")).graph;
  EXPECT_FALSE(is_filter(*g, {}));
  PathSet vef{P(*g, "v"), P(*g, "e"), P(*g, "f")};
  normalize(vef);
  EXPECT_FALSE(is_filter(*g, vef));
  for (const Path& p : g->paths()) EXPECT_TRUE(is_filter(*g, principal_filter(*g, p).elements()));
  EXPECT_THROW(make_filter(*g, vef), PreconditionError);
}

TEST(Filters, UltrafilterExamples) {
  auto chain = load_spec(fixture("chain.pg")).graph;
  EXPECT_TRUE(is_ultrafilter(*chain, principal_filter(*chain, P(*chain, "p.r"))));
  auto grid = build_grid(2, {2, 2});
  EXPECT_FALSE(is_ultrafilter(*grid, principal_filter(*grid, grid->vertex(0))));
  // Every path lies in some ultrafilter.
  FilterSpace us = enumerate_filters(*grid, true);
  for (const Path& l : grid->paths())
    EXPECT_TRUE(std::any_of(us.filters.begin(), us.filters.end(), [&](const Filter& u) { return u.contains(l); }));
  for (const Filter& u : us.filters) {
    Extension e = ultrafilter_extend(*grid, u);
    EXPECT_EQ(e.filter, u);
  }
}

TEST(Filters, ActExamples) {
  auto g = build_grid(2, {2, 2});
  FilterSpace fs = enumerate_filters(*g, false);
  for (const Filter& u : fs.filters) {
    EXPECT_EQ(act(*g, g->vertex(u.root()), u), u);
    EXPECT_EQ(act_inv(*g, g->vertex(u.root()), u), u);
  }
  Path e = P(*g, "x(0,0)");
  EXPECT_EQ(act(*g, e, principal_filter(*g, g->vertex(e.source))), principal_filter(*g, e));
  EXPECT_EQ(act_inv(*g, e, principal_filter(*g, e)), principal_filter(*g, g->vertex(e.source)));
  for (const Path& l : g->paths())
    for (const Path& m : g->paths_with_range(l.source)) {
      Path lm = g->concat(l, m);
      if (!g->in_bound(lm)) continue;
      // Brute-force: the prefixes of lambda mu.
      PathSet want;
      for (const Path& a : g->paths())
        if (oracle_prefix(*g, a, lm)) want.push_back(a);
      EXPECT_EQ(act(*g, l, principal_filter(*g, m)).elements(), want);
    }
}

TEST(Filters, FeWitness) {
  auto g = build_grid(2, {2, 2});
  Path v = g->vertex(0);
  PathSet e{P(*g, "x(0,0)"), P(*g, "y(0,0)")};
  normalize(e);
  FilterSpace us = enumerate_filters(*g, true);
  for (const Filter& u : us.filters) {
    if (!u.contains(v)) continue;
    EXPECT_EQ(fe_witness(*g, v, {v}, u), v);
    Path w = fe_witness(*g, v, e, u);
    EXPECT_TRUE(set_contains(e, w));
    EXPECT_TRUE(u.contains(w));
  }
  // Not exhaustive and not met by the filter {v}.
  EXPECT_THROW(fe_witness(*g, v, {P(*g, "x(0,0)")}, principal_filter(*g, v)), VerificationFailure);
}

TEST(Filters, TailKeys) {
  auto loop = single_loop_graph(6);
  Path e1 = P(*loop, "e"), e2 = P(*loop, "e.e");
  FilterKey a = tail_key(*loop, loop->vertex(0), e1);
  FilterKey b = tail_key(*loop, e2, e1);
  EXPECT_EQ(a, b);
  for (const Path& p : loop->paths()) EXPECT_TRUE(key_contains(*loop, a, p));
  EXPECT_EQ(key_act(*loop, e2, a), a);
  ASSERT_TRUE(key_act_inv(*loop, e1, a).has_value());
  EXPECT_EQ(*key_act_inv(*loop, e1, a), a);

  FilterKey k = principal_key(e2);
  EXPECT_TRUE(key_contains(*loop, k, e1));
  EXPECT_FALSE(key_contains(*loop, k, P(*loop, "e.e.e")));
  EXPECT_EQ(key_act_inv(*loop, P(*loop, "e.e.e"), k), std::nullopt);
  EXPECT_EQ(key_act(*loop, e1, k), principal_key(P(*loop, "e.e.e")));
}
