#include "pgraph/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "pgraph/error.hpp"

namespace pgraph {

void normalize(PathSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

bool set_contains(const PathSet& s, const Path& p) { return std::binary_search(s.begin(), s.end(), p); }

PGraph::PGraph(Group group, std::vector<std::string> vertex_names, DegreeBound bound, bool truncated)
    : group_(group), vertex_names_(std::move(vertex_names)), bound_(std::move(bound)), truncated_(truncated) {
  if (bound_.group() != group_) throw InstanceMismatch("degree bound over " + bound_.group().name());
  for (VertexId v = 0; v < vertex_names_.size(); ++v)
    if (!vertex_index_.emplace(vertex_names_[v], v).second)
      throw SpecError(0, 0, "duplicate vertex " + vertex_names_[v]);
}

std::optional<VertexId> PGraph::find_vertex(std::string_view name) const {
  auto it = vertex_index_.find(name);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

const PathSet& PGraph::paths() const {
  std::call_once(paths_once_, [this] {
    PathSet all;
    for (const auto& p : bound_.elements())
      for (VertexId v = 0; v < vertex_count(); ++v) {
        PathSet here = paths_from(v, p);
        all.insert(all.end(), here.begin(), here.end());
      }
    normalize(all);
    paths_ = std::move(all);
  });
  return paths_;
}

PathSet PGraph::paths_with_range(VertexId v) const {
  PathSet out;
  for (const auto& p : paths())
    if (p.range == v) out.push_back(p);
  return out;
}

PathSet PGraph::paths_of_degree(const GroupElement& d) const {
  PathSet out;
  for (const auto& p : paths())
    if (p.degree == d) out.push_back(p);
  return out;
}

bool PGraph::is_prefix(const Path& alpha, const Path& lambda) const {
  if (alpha.range != lambda.range) return false;
  if (!leq(alpha.degree, lambda.degree)) return false;
  return split(lambda, alpha.degree).first == alpha;
}

std::string PGraph::names(const PathSet& s) const {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + name(s[i]);
  return out + "}";
}

namespace {

void require_in_bound(const PGraph& g, const Path& p) {
  if (!g.in_bound(p)) throw TruncationError("path " + g.name(p) + " lies outside bound " + g.bound().describe());
}

void require_in_bound(const PGraph& g, const GroupElement& d) {
  if (!g.in_bound(d)) throw TruncationError("degree " + to_string(d) + " lies outside bound " + g.bound().describe());
}

}  // namespace

Path compose(const PGraph& g, const Path& mu, const Path& nu) {
  if (mu.source != nu.range)
    throw PreconditionError("not composable: " + g.name(mu) + " then " + g.name(nu));
  require_in_bound(g, mu);
  require_in_bound(g, nu);
  Path r = g.concat(mu, nu);
  require_in_bound(g, r);
  return r;
}

std::pair<Path, Path> factorize(const PGraph& g, const Path& lambda, const GroupElement& p) {
  if (!leq(p, lambda.degree))
    throw PreconditionError(to_string(p) + " is not below the degree of " + g.name(lambda));
  auto parts = g.split(lambda, p);
  require_in_bound(g, parts.first);
  require_in_bound(g, parts.second);
  return parts;
}

PathSet mce_unbounded(const PGraph& g, const Path& mu, const Path& nu) {
  if (mu.range != nu.range) return {};
  JoinResult j = join(mu.degree, nu.degree);
  if (!j) return {};
  PathSet out;
  for (const Path& alpha : g.paths_from(mu.source, left_quotient(mu.degree, *j))) {
    Path lambda = g.concat(mu, alpha);
    if (g.is_prefix(nu, lambda)) out.push_back(std::move(lambda));
  }
  normalize(out);
  return out;
}

PathSet mce(const PGraph& g, const Path& mu, const Path& nu) {
  require_in_bound(g, mu);
  require_in_bound(g, nu);
  if (mu.range != nu.range) return {};
  JoinResult j = join(mu.degree, nu.degree);
  if (!j) return {};
  require_in_bound(g, *j);
  return mce_unbounded(g, mu, nu);
}

PathSet mce_of_set(const PGraph& g, const PathSet& paths) {
  if (paths.empty()) throw PreconditionError("mce_of_set of an empty set");
  for (const auto& p : paths) require_in_bound(g, p);
  JoinResult j = paths.front().degree;
  for (const auto& p : paths) {
    if (p.range != paths.front().range) return {};
    j = join(*j, p.degree);
    if (!j) return {};
  }
  require_in_bound(g, *j);
  const Path& first = paths.front();
  PathSet out;
  for (const Path& alpha : g.paths_from(first.source, left_quotient(first.degree, *j))) {
    Path lambda = g.concat(first, alpha);
    bool all = std::all_of(paths.begin(), paths.end(), [&](const Path& p) { return g.is_prefix(p, lambda); });
    if (all) out.push_back(std::move(lambda));
  }
  normalize(out);
  return out;
}

PathSet vee_paths(const PGraph& g, const PathSet& f) {
  PathSet closed = f;
  normalize(closed);
  bool grew = true;
  while (grew) {
    grew = false;
    PathSet items = closed;
    for (std::size_t i = 0; i < items.size(); ++i)
      for (std::size_t j = i + 1; j < items.size(); ++j)
        for (Path& lambda : mce(g, items[i], items[j]))
          if (!set_contains(closed, lambda)) {
            closed.push_back(std::move(lambda));
            normalize(closed);
            grew = true;
          }
  }
  return closed;
}

PathSet ext(const PGraph& g, const PathSet& u, const PathSet& v) {
  PathSet out;
  for (const Path& mu : u)
    for (const Path& nu : v)
      for (const Path& lambda : mce(g, mu, nu)) out.push_back(g.split(lambda, mu.degree).second);
  normalize(out);
  return out;
}

Exhaustiveness is_exhaustive(const PGraph& g, VertexId v, const PathSet& e) {
  for (const Path& lambda : e)
    if (lambda.range != v)
      throw PreconditionError(g.name(lambda) + " does not have range " + g.vertex_name(v));
  for (const Path& mu : g.paths_with_range(v)) {
    bool met = std::any_of(e.begin(), e.end(),
                           [&](const Path& lambda) { return !mce_unbounded(g, mu, lambda).empty(); });
    if (!met) return {Exhaustiveness::Verdict::No, mu, {}};
  }
  if (g.truncated()) return {Exhaustiveness::Verdict::UnknownUpTo, std::nullopt, g.bound().describe()};
  return {Exhaustiveness::Verdict::Yes, std::nullopt, {}};
}

ValidationReport validate(const PGraph& g) {
  ValidationReport rep;
  auto fail = [&](std::string kind, std::vector<Path> paths, std::string msg) {
    Violation v{std::move(kind), {}, std::move(msg)};
    for (const auto& p : paths) v.paths.push_back(g.name(p));
    rep.violations.push_back(std::move(v));
  };

  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    Path pv = g.vertex(v);
    if (!pv.is_vertex() || pv.range != v || pv.source != v) fail("vertex", {pv}, "vertex path is malformed");
  }

  const PathSet& all = g.paths();
  std::vector<PathSet> by_range(g.vertex_count());
  for (const Path& p : all) by_range.at(p.range).push_back(p);

  for (const Path& lambda : all) {
    ++rep.paths_checked;
    if (lambda.is_vertex() && !(lambda == g.vertex(lambda.range) && lambda.source == lambda.range))
      fail("vertex", {lambda}, "degree e path is not a vertex");
    if (!(g.concat(g.vertex(lambda.range), lambda) == lambda)) fail("identity", {lambda}, "r(l) l != l");
    if (!(g.concat(lambda, g.vertex(lambda.source)) == lambda)) fail("identity", {lambda}, "l s(l) != l");

    for (const GroupElement& p : g.bound().elements()) {
      if (!leq(p, lambda.degree)) continue;
      GroupElement q = left_quotient(p, lambda.degree);
      ++rep.factorizations_checked;
      std::vector<std::pair<Path, Path>> found;
      for (const Path& mu : g.paths_from(lambda.range, p))
        for (const Path& nu : g.paths_from(mu.source, q))
          if (g.concat(mu, nu) == lambda) found.emplace_back(mu, nu);
      if (found.size() != 1) {
        fail("factorization", {lambda},
             "degree split " + to_string(p) + " | " + to_string(q) + " has " + std::to_string(found.size()) +
                 " factorizations");
        continue;
      }
      auto parts = g.split(lambda, p);
      if (!(parts == found.front()))
        fail("factorization", {lambda, parts.first, parts.second}, "split disagrees with the unique factorization");
    }
  }

  for (const Path& mu : all) {
    for (const Path& nu : by_range[mu.source]) {
      ++rep.pairs_checked;
      Path lambda = g.concat(mu, nu);
      if (!(lambda.degree == multiply(mu.degree, nu.degree)) || lambda.range != mu.range ||
          lambda.source != nu.source) {
        fail("functoriality", {mu, nu, lambda}, "degree, range or source not preserved by composition");
        continue;
      }
      try {
        if (!(g.split(lambda, mu.degree) == std::make_pair(mu, nu)))
          fail("factorization", {mu, nu, lambda}, "composite does not split back into its factors");
      } catch (const Error& e) {
        fail("factorization", {mu, nu, lambda}, std::string("composite cannot be split: ") + e.what());
        continue;
      }
      if (!g.in_bound(lambda)) continue;
      for (const Path& xi : by_range[nu.source]) {
        ++rep.triples_checked;
        try {
          Path left = g.concat(lambda, xi);
          Path right = g.concat(mu, g.concat(nu, xi));
          if (!(left == right)) fail("associativity", {mu, nu, xi}, "(mu nu) xi != mu (nu xi)");
        } catch (const Error& e) {
          fail("associativity", {mu, nu, xi}, e.what());
        }
      }
    }
  }

  for (const Path& mu : all)
    for (const Path& nu : by_range[mu.range]) {
      if (nu < mu) continue;
      PathSet m;
      try {
        m = mce_unbounded(g, mu, nu);
      } catch (const Error& e) {
        fail("alignment", {mu, nu}, e.what());
        continue;
      }
      JoinResult j = join(mu.degree, nu.degree);
      for (const Path& lambda : m)
        if (!j || !(lambda.degree == *j) || !g.is_prefix(mu, lambda) || !g.is_prefix(nu, lambda))
          fail("alignment", {mu, nu, lambda}, "minimal common extension fails its defining conditions");
      bool symmetric = false;
      try {
        symmetric = m == mce_unbounded(g, nu, mu);
      } catch (const Error&) {
      }
      if (!symmetric) fail("alignment", {mu, nu}, "MCE is not symmetric");
    }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

GroupElement degree_of_colours(const Group& g, const std::vector<int>& colours) {
  switch (g.kind()) {
    case GroupKind::Nk: {
      std::vector<std::int64_t> v(static_cast<std::size_t>(g.rank()), 0);
      for (int c : colours) ++v[static_cast<std::size_t>(c)];
      return GroupElement::nk(v);
    }
    case GroupKind::FreeMonoid: {
      std::vector<std::int64_t> w;
      for (int c : colours) w.push_back(c + 1);
      return GroupElement::word(g.rank(), w);
    }
    case GroupKind::FreeProductN2N: {
      std::vector<Block> b;
      for (int c : colours) b.push_back(c == 2 ? Block{false, 1, 0} : Block{true, c == 0 ? 1 : 0, c == 1 ? 1 : 0});
      return GroupElement::blocks(b);
    }
    case GroupKind::LexZ2:
      break;
  }
  throw PreconditionError("skeleton graphs are not defined over " + g.name());
}

bool has_cycle(std::size_t n, const std::vector<SkeletonGraph::Edge>& edges, std::int64_t& longest) {
  std::vector<std::vector<VertexId>> out(n);
  for (const auto& e : edges) out[e.range].push_back(e.source);
  std::vector<int> state(n, 0);
  std::vector<std::int64_t> depth(n, 0);
  bool cyclic = false;
  std::function<void(VertexId)> dfs = [&](VertexId v) {
    state[v] = 1;
    for (VertexId w : out[v]) {
      if (state[w] == 1) cyclic = true;
      if (state[w] == 0) dfs(w);
      if (!cyclic) depth[v] = std::max(depth[v], depth[w] + 1);
    }
    state[v] = 2;
  };
  for (VertexId v = 0; v < n; ++v)
    if (state[v] == 0) dfs(v);
  longest = 0;
  for (auto d : depth) longest = std::max(longest, d);
  return cyclic;
}

}  // namespace

std::shared_ptr<SkeletonGraph> SkeletonGraph::make(Group group, std::vector<std::string> vertex_names,
                                                   std::vector<Edge> edges, const std::vector<Square>& squares,
                                                   std::optional<DegreeBound> bound) {
  const std::size_t n = vertex_names.size();
  if (n == 0) throw SpecError(0, 0, "graph has no vertices");
  for (const auto& e : edges) {
    if (e.range >= n || e.source >= n) throw SpecError(0, 0, "edge " + e.name + " references an unknown vertex");
    if (e.colour < 0 || e.colour >= group.colour_count())
      throw SpecError(0, 0, "edge " + e.name + " has a colour outside " + group.name());
  }
  auto edge_name = [&](std::uint32_t i) { return edges.at(i).name; };

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<std::uint32_t, std::uint32_t>> swaps;
  auto add_swap = [&](std::pair<std::uint32_t, std::uint32_t> from, std::pair<std::uint32_t, std::uint32_t> to) {
    auto [it, inserted] = swaps.emplace(from, to);
    if (!inserted && it->second != to)
      throw SpecError(0, 0, "conflicting squares for edge pair " + edge_name(from.first) + " " + edge_name(from.second));
  };
  for (const Square& sq : squares) {
    for (auto i : {sq.e, sq.f_prime, sq.f, sq.e_second})
      if (i >= edges.size()) throw SpecError(0, 0, "square references an unknown edge");
    const Edge& e = edges[sq.e];
    const Edge& fp = edges[sq.f_prime];
    const Edge& f = edges[sq.f];
    const Edge& es = edges[sq.e_second];
    std::string label = e.name + " " + fp.name + " = " + f.name + " " + es.name;
    if (e.source != fp.range || f.source != es.range || e.range != f.range || fp.source != es.source)
      throw SpecError(0, 0, "square " + label + " is not a commuting square of paths");
    if (e.colour != es.colour || fp.colour != f.colour || e.colour == f.colour ||
        !group.colours_commute(e.colour, f.colour))
      throw SpecError(0, 0, "square " + label + " has incompatible colours");
    add_swap({sq.e, sq.f_prime}, {sq.f, sq.e_second});
    add_swap({sq.f, sq.e_second}, {sq.e, sq.f_prime});
  }
  for (std::uint32_t x = 0; x < edges.size(); ++x)
    for (std::uint32_t y = 0; y < edges.size(); ++y) {
      if (edges[x].source != edges[y].range) continue;
      int cx = edges[x].colour, cy = edges[y].colour;
      if (cx == cy || !group.colours_commute(cx, cy)) continue;
      if (!swaps.count({x, y})) throw SpecError(0, 0, "incomplete squares: no square for edge pair " + edge_name(x) + " " + edge_name(y));
    }

  std::int64_t longest = 0;
  bool cyclic = has_cycle(n, edges, longest);
  DegreeBound b = DegreeBound::length(group, longest);
  if (cyclic) {
    if (!bound) throw SpecError(0, 0, "the skeleton has cycles, so a degree bound is required");
    b = *bound;
  }
  auto g = std::shared_ptr<SkeletonGraph>(
      new SkeletonGraph(group, std::move(vertex_names), std::move(edges), std::move(swaps), std::move(b), cyclic));

  // Consistency on 3-paths: every way of sorting three mutually commuting colours must agree.
  const auto& es = g->edges_;
  for (std::uint32_t x = 0; x < es.size(); ++x)
    for (std::uint32_t y = 0; y < es.size(); ++y) {
      if (es[x].source != es[y].range) continue;
      for (std::uint32_t z = 0; z < es.size(); ++z) {
        if (es[y].source != es[z].range) continue;
        int c[3] = {es[x].colour, es[y].colour, es[z].colour};
        if (c[0] == c[1] || c[1] == c[2] || c[0] == c[2]) continue;
        if (!group.colours_commute(c[0], c[1]) || !group.colours_commute(c[1], c[2]) ||
            !group.colours_commute(c[0], c[2]))
          continue;
        std::set<std::vector<std::uint32_t>> results;
        std::function<void(std::vector<std::uint32_t>)> explore = [&](std::vector<std::uint32_t> w) {
          bool sorted = true;
          for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (es[w[i]].colour > es[w[i + 1]].colour) {
              sorted = false;
              auto v = w;
              std::tie(v[i], v[i + 1]) = g->swap(w[i], w[i + 1]);
              explore(v);
            }
          }
          if (sorted) results.insert(w);
        };
        explore({x, y, z});
        if (results.size() != 1)
          throw SpecError(0, 0, "associativity violation on 3-path " + es[x].name + " " + es[y].name + " " + es[z].name);
      }
    }
  return g;
}

SkeletonGraph::SkeletonGraph(
    Group group, std::vector<std::string> vertex_names, std::vector<Edge> edges,
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<std::uint32_t, std::uint32_t>> swaps,
    DegreeBound bound, bool truncated)
    : PGraph(group, std::move(vertex_names), std::move(bound), truncated),
      edges_(std::move(edges)),
      swaps_(std::move(swaps)) {
  by_range_colour_.assign(vertex_count(), std::vector<std::vector<std::uint32_t>>(
                                              static_cast<std::size_t>(group.colour_count())));
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    if (!edge_index_.emplace(edges_[i].name, i).second) throw SpecError(0, 0, "duplicate edge " + edges_[i].name);
    if (find_vertex(edges_[i].name)) throw SpecError(0, 0, "edge name " + edges_[i].name + " is also a vertex");
    by_range_colour_[edges_[i].range][static_cast<std::size_t>(edges_[i].colour)].push_back(i);
  }
}

std::pair<std::uint32_t, std::uint32_t> SkeletonGraph::swap(std::uint32_t x, std::uint32_t y) const {
  auto it = swaps_.find({x, y});
  if (it == swaps_.end())
    throw SpecError(0, 0, "incomplete squares: no square for edge pair " + edges_[x].name + " " + edges_[y].name);
  return it->second;
}

void SkeletonGraph::canonicalize(std::vector<std::uint32_t>& w) const {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      int cx = edges_[w[i]].colour, cy = edges_[w[i + 1]].colour;
      if (cx > cy && group().colours_commute(cx, cy)) {
        std::tie(w[i], w[i + 1]) = swap(w[i], w[i + 1]);
        changed = true;
      }
    }
  }
}

std::vector<int> SkeletonGraph::colour_word(const GroupElement& p) const {
  std::vector<int> out;
  switch (p.kind()) {
    case GroupKind::Nk:
      for (int c = 0; c < group().rank(); ++c) out.insert(out.end(), static_cast<std::size_t>(p.coord(static_cast<std::size_t>(c))), c);
      break;
    case GroupKind::FreeMonoid:
      for (std::int64_t l : p.raw()) out.push_back(static_cast<int>(l - 1));
      break;
    case GroupKind::FreeProductN2N:
      for (const Block& b : p.block_list()) {
        if (b.pair) {
          out.insert(out.end(), static_cast<std::size_t>(b.x), 0);
          out.insert(out.end(), static_cast<std::size_t>(b.y), 1);
        } else {
          out.insert(out.end(), static_cast<std::size_t>(b.x), 2);
        }
      }
      break;
    case GroupKind::LexZ2:
      throw PreconditionError("no colour words over lex Z^2");
  }
  return out;
}

Path SkeletonGraph::vertex(VertexId v) const {
  if (v >= vertex_count()) throw PreconditionError("unknown vertex id");
  return Path{v, v, group().identity(), {}};
}

Path SkeletonGraph::edge_path(std::uint32_t e) const {
  const Edge& ed = edges_.at(e);
  return Path{ed.range, ed.source, group().colour_degree(ed.colour), {e}};
}

std::optional<std::uint32_t> SkeletonGraph::find_edge(std::string_view name) const {
  auto it = edge_index_.find(name);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

Path SkeletonGraph::path_from_edges(const std::vector<std::uint32_t>& es) const {
  if (es.empty()) throw PreconditionError("empty edge sequence");
  std::vector<int> colours;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (es[i] >= edges_.size()) throw PreconditionError("unknown edge id");
    if (i && edges_[es[i - 1]].source != edges_[es[i]].range)
      throw PreconditionError("edges " + edges_[es[i - 1]].name + " and " + edges_[es[i]].name + " are not composable");
    colours.push_back(edges_[es[i]].colour);
  }
  std::vector<std::uint32_t> w = es;
  canonicalize(w);
  return Path{edges_[es.front()].range, edges_[es.back()].source, degree_of_colours(group(), colours), std::move(w)};
}

Path SkeletonGraph::concat(const Path& mu, const Path& nu) const {
  if (mu.source != nu.range) throw PreconditionError("concat of non-composable paths");
  if (mu.is_vertex()) return nu;
  if (nu.is_vertex()) return mu;
  std::vector<std::uint32_t> w = mu.word;
  w.insert(w.end(), nu.word.begin(), nu.word.end());
  canonicalize(w);
  return Path{mu.range, nu.source, multiply(mu.degree, nu.degree), std::move(w)};
}

std::pair<Path, Path> SkeletonGraph::split(const Path& lambda, const GroupElement& p) const {
  GroupElement q = left_quotient(p, lambda.degree);
  if (p.is_identity()) return {vertex(lambda.range), lambda};
  if (q.is_identity()) return {lambda, vertex(lambda.source)};
  std::vector<int> target = colour_word(p);
  std::size_t cut = target.size();
  std::vector<int> tail = colour_word(q);
  target.insert(target.end(), tail.begin(), tail.end());
  std::vector<std::uint32_t> w = lambda.word;
  if (w.size() != target.size()) throw PreconditionError("path word does not match its degree");
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::size_t j = i;
    while (j < w.size() && edges_[w[j]].colour != target[i]) ++j;
    if (j == w.size()) throw PreconditionError("degree split is not realisable");
    for (; j > i; --j) std::tie(w[j - 1], w[j]) = swap(w[j - 1], w[j]);
  }
  std::vector<std::uint32_t> head(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cut));
  std::vector<std::uint32_t> rest(w.begin() + static_cast<std::ptrdiff_t>(cut), w.end());
  canonicalize(head);
  canonicalize(rest);
  VertexId mid = edges_[head.back()].source;
  return {Path{lambda.range, mid, p, std::move(head)}, Path{mid, lambda.source, q, std::move(rest)}};
}

PathSet SkeletonGraph::paths_from(VertexId range, const GroupElement& degree) const {
  if (degree.group() != group() || !in_positive_cone(degree)) return {};
  if (degree.is_identity()) return {vertex(range)};
  std::vector<int> target = colour_word(degree);
  PathSet out;
  std::vector<std::uint32_t> cur;
  std::function<void(VertexId)> dfs = [&](VertexId v) {
    if (cur.size() == target.size()) {
      out.push_back(Path{range, v, degree, cur});
      return;
    }
    for (std::uint32_t e : by_range_colour_[v][static_cast<std::size_t>(target[cur.size()])]) {
      cur.push_back(e);
      dfs(edges_[e].source);
      cur.pop_back();
    }
  };
  dfs(range);
  normalize(out);
  return out;
}

std::string SkeletonGraph::name(const Path& p) const {
  if (p.is_vertex()) return vertex_name(p.range);
  std::string out;
  for (std::size_t i = 0; i < p.word.size(); ++i) out += (i ? "." : "") + edges_[p.word[i]].name;
  return out;
}

std::optional<Path> SkeletonGraph::parse_path(std::string_view token) const {
  if (auto v = find_vertex(token)) return vertex(*v);
  std::vector<std::uint32_t> es;
  std::size_t start = 0;
  while (start <= token.size()) {
    std::size_t dot = token.find('.', start);
    std::string_view part = token.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    auto e = find_edge(part);
    if (!e) return std::nullopt;
    es.push_back(*e);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  for (std::size_t i = 1; i < es.size(); ++i)
    if (edges_[es[i - 1]].source != edges_[es[i]].range) return std::nullopt;
  return path_from_edges(es);
}

}  // namespace pgraph
