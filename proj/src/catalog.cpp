#include "pgraph/catalog.hpp"

#include <algorithm>
#include <charconv>

namespace pgraph {

namespace {

std::string point_name(const std::vector<std::int64_t>& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + ")";
}

std::string colour_letter(int c, int k) {
  if (k <= 4) return std::string(1, "xyzw"[c]);
  return "c" + std::to_string(c + 1) + "_";
}

}  // namespace

std::shared_ptr<SkeletonGraph> build_grid(int k, const std::vector<std::int64_t>& dims) {
  if (k < 1 || dims.size() != static_cast<std::size_t>(k)) throw PreconditionError("build_grid needs k >= 1 extents");
  for (auto d : dims)
    if (d < 1) throw PreconditionError("build_grid extents must be positive");

  std::vector<std::vector<std::int64_t>> points{{}};
  for (int c = 0; c < k; ++c) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& p : points)
      for (std::int64_t i = 0; i <= dims[static_cast<std::size_t>(c)]; ++i) {
        auto q = p;
        q.push_back(i);
        next.push_back(std::move(q));
      }
    points = std::move(next);
  }
  std::map<std::vector<std::int64_t>, VertexId> id;
  std::vector<std::string> names;
  for (const auto& p : points) {
    id.emplace(p, static_cast<VertexId>(names.size()));
    names.push_back(point_name(p));
  }
  std::vector<SkeletonGraph::Edge> edges;
  std::map<std::pair<VertexId, int>, std::uint32_t> edge_at;
  for (const auto& p : points)
    for (int c = 0; c < k; ++c) {
      auto q = p;
      ++q[static_cast<std::size_t>(c)];
      auto it = id.find(q);
      if (it == id.end()) continue;
      edge_at[{id.at(p), c}] = static_cast<std::uint32_t>(edges.size());
      edges.push_back({colour_letter(c, k) + point_name(p), id.at(p), it->second, c});
    }
  std::vector<SkeletonGraph::Square> squares;
  for (const auto& p : points)
    for (int c1 = 0; c1 < k; ++c1)
      for (int c2 = c1 + 1; c2 < k; ++c2) {
        auto p1 = p, p2 = p, p12 = p;
        ++p1[static_cast<std::size_t>(c1)];
        ++p2[static_cast<std::size_t>(c2)];
        ++p12[static_cast<std::size_t>(c1)];
        ++p12[static_cast<std::size_t>(c2)];
        if (!id.count(p12)) continue;
        VertexId v = id.at(p), v1 = id.at(p1), v2 = id.at(p2);
        squares.push_back({edge_at.at({v, c1}), edge_at.at({v1, c2}), edge_at.at({v, c2}), edge_at.at({v2, c1})});
      }
  return SkeletonGraph::make(Group::nk(k), std::move(names), std::move(edges), squares);
}

// --- SY ---------------------------------------------------------------------------

SyGraph::SyGraph(std::int64_t max_a, std::int64_t max_abs_b)
    : PGraph(Group::lex_z2(), {"f0", "g0"}, DegreeBound::lex(max_a, max_abs_b), true) {}

bool SyGraph::in_s(const GroupElement& p) { return p.coord(0) == 0 && p.coord(1) >= 0; }

Path SyGraph::f(const GroupElement& s) const {
  if (!in_positive_cone(s)) throw PreconditionError("f_s needs s in P");
  return Path{f0, f0, s, {0}};
}

Path SyGraph::g(const GroupElement& s) const {
  if (!in_positive_cone(s)) throw PreconditionError("g_s needs s in P");
  return Path{in_s(s) ? g0 : f0, g0, s, {1}};
}

Path SyGraph::vertex(VertexId v) const {
  if (v == f0) return f(group().identity());
  if (v == g0) return g(group().identity());
  throw PreconditionError("unknown vertex id");
}

Path SyGraph::concat(const Path& mu, const Path& nu) const {
  if (mu.source != nu.range) throw PreconditionError("concat of non-composable paths");
  GroupElement d = multiply(mu.degree, nu.degree);
  // f_s f_t = f_{s+t}; g_s g_t = g_{s+t} (t in S); f_s g_t = g_{s+t} (t outside S).
  if (nu.word.front() == 0) return f(d);
  return g(d);
}

std::pair<Path, Path> SyGraph::split(const Path& lambda, const GroupElement& p) const {
  GroupElement q = left_quotient(p, lambda.degree);
  if (lambda.word.front() == 0) return {f(p), f(q)};
  if (in_s(q)) return {g(p), g(q)};
  return {f(p), g(q)};
}

PathSet SyGraph::paths_from(VertexId range, const GroupElement& degree) const {
  if (degree.group() != group() || !in_positive_cone(degree)) return {};
  PathSet out;
  if (range == f0) {
    out.push_back(f(degree));
    if (!in_s(degree)) out.push_back(g(degree));
  } else if (in_s(degree)) {
    out.push_back(g(degree));
  }
  normalize(out);
  return out;
}

std::string SyGraph::name(const Path& p) const {
  return std::string(p.word.front() == 0 ? "f" : "g") + "(" + std::to_string(p.degree.coord(0)) + "," +
         std::to_string(p.degree.coord(1)) + ")";
}

std::optional<Path> SyGraph::parse_path(std::string_view token) const {
  if (token == "f0") return vertex(f0);
  if (token == "g0") return vertex(g0);
  if (token.size() < 6 || (token[0] != 'f' && token[0] != 'g') || token[1] != '(' || token.back() != ')')
    return std::nullopt;
  std::string_view body = token.substr(2, token.size() - 3);
  auto comma = body.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  std::int64_t a = 0, b = 0;
  auto ra = std::from_chars(body.data(), body.data() + comma, a);
  auto rb = std::from_chars(body.data() + comma + 1, body.data() + body.size(), b);
  if (ra.ec != std::errc() || rb.ec != std::errc() || ra.ptr != body.data() + comma ||
      rb.ptr != body.data() + body.size())
    return std::nullopt;
  GroupElement s = GroupElement::lex(a, b);
  if (!in_positive_cone(s)) return std::nullopt;
  return token[0] == 'f' ? f(s) : g(s);
}

std::shared_ptr<SyGraph> build_sy(std::int64_t max_a, std::int64_t max_abs_b) {
  if (max_a < 0 || max_abs_b < 0) throw PreconditionError("SY bound must be nonnegative");
  return std::make_shared<SyGraph>(max_a, max_abs_b);
}

// --- hereditary embeddings ----------------------------------------------------------------

Embedding Embedding::nat_to_letter(int letters, int letter) {
  Embedding e{Group::nk(1), Group::free_monoid(letters), {}, {}, {}};
  e.map = [letters, letter](const GroupElement& n) {
    return GroupElement::word(letters, std::vector<std::int64_t>(static_cast<std::size_t>(n.coord(0)), letter));
  };
  e.preimage = [letter](const GroupElement& w) -> std::optional<GroupElement> {
    if (!in_positive_cone(w)) return std::nullopt;
    for (std::int64_t l : w.raw())
      if (l != letter) return std::nullopt;
    return GroupElement::nk({static_cast<std::int64_t>(w.raw().size())});
  };
  e.description = "N -> " + e.target.name() + ", 1 -> letter " + std::to_string(letter);
  return e;
}

Embedding Embedding::nat_to_diagonal(int k) {
  Embedding e{Group::nk(1), Group::nk(k), {}, {}, {}};
  e.map = [k](const GroupElement& n) {
    return GroupElement::nk(std::vector<std::int64_t>(static_cast<std::size_t>(k), n.coord(0)));
  };
  e.preimage = [k](const GroupElement& p) -> std::optional<GroupElement> {
    for (int i = 1; i < k; ++i)
      if (p.coord(static_cast<std::size_t>(i)) != p.coord(0)) return std::nullopt;
    if (p.coord(0) < 0) return std::nullopt;
    return GroupElement::nk({p.coord(0)});
  };
  e.description = "N -> " + e.target.name() + ", 1 -> diagonal";
  return e;
}

void check_hereditary(const Embedding& iota, const DegreeBound& source_bound, const DegreeBound& target_bound) {
  if (source_bound.group() != iota.source || target_bound.group() != iota.target)
    throw InstanceMismatch("embedding bounds over the wrong groups");
  const auto& src = source_bound.elements();
  for (const auto& a : src) {
    if (!(iota.preimage(iota.map(a)) == std::optional<GroupElement>(a)))
      throw HereditaryViolation(to_string(a), to_string(a), "preimage does not invert the embedding at " + to_string(a));
    for (const auto& b : src) {
      if (leq(a, b) != leq(iota.map(a), iota.map(b)))
        throw HereditaryViolation(to_string(a), to_string(b), "embedding does not preserve the order");
      JoinResult j = join(a, b);
      JoinResult jt = join(iota.map(a), iota.map(b));
      bool same = j ? (jt && *jt == iota.map(*j)) : !jt;
      if (!same) throw HereditaryViolation(to_string(a), to_string(b), "image is not closed under joins");
    }
  }
  const auto& tgt = target_bound.elements();
  for (const auto& p : tgt)
    for (const auto& q : tgt) {
      if (!iota.preimage(multiply(p, q))) continue;
      if (!iota.preimage(p) || !iota.preimage(q))
        throw HereditaryViolation(to_string(p), to_string(q),
                                  "not hereditary: " + to_string(p) + " * " + to_string(q) + " = " +
                                      to_string(multiply(p, q)) + " lies in the image but a factor does not");
    }
}

EmbeddedGraph::EmbeddedGraph(GraphPtr base, Embedding iota, DegreeBound target_bound)
    : PGraph(iota.target,
             [&] {
               std::vector<std::string> names;
               for (VertexId v = 0; v < base->vertex_count(); ++v) names.push_back(base->vertex_name(v));
               return names;
             }(),
             std::move(target_bound), base->truncated()),
      base_(std::move(base)),
      iota_(std::move(iota)) {
  if (base_->group() != iota_.source) throw InstanceMismatch("embedding source differs from the graph's group");
}

GroupElement EmbeddedGraph::pre(const GroupElement& p) const {
  auto q = iota_.preimage(p);
  if (!q) throw PreconditionError(to_string(p) + " is not in the image of the embedding");
  return *q;
}

Path EmbeddedGraph::lift(const Path& p) const {
  Path out = p;
  out.degree = iota_.map(p.degree);
  return out;
}

Path EmbeddedGraph::lower(const Path& p) const {
  Path out = p;
  out.degree = pre(p.degree);
  return out;
}

Path EmbeddedGraph::vertex(VertexId v) const { return lift(base_->vertex(v)); }

Path EmbeddedGraph::concat(const Path& mu, const Path& nu) const {
  return lift(base_->concat(lower(mu), lower(nu)));
}

std::pair<Path, Path> EmbeddedGraph::split(const Path& lambda, const GroupElement& p) const {
  auto [a, b] = base_->split(lower(lambda), pre(p));
  return {lift(a), lift(b)};
}

PathSet EmbeddedGraph::paths_from(VertexId range, const GroupElement& degree) const {
  if (degree.group() != group()) return {};
  auto q = iota_.preimage(degree);
  if (!q) return {};
  PathSet out;
  for (const Path& p : base_->paths_from(range, *q)) out.push_back(lift(p));
  normalize(out);
  return out;
}

std::string EmbeddedGraph::name(const Path& p) const { return base_->name(lower(p)); }

std::optional<Path> EmbeddedGraph::parse_path(std::string_view token) const {
  auto p = base_->parse_path(token);
  if (!p) return std::nullopt;
  return lift(*p);
}

std::shared_ptr<EmbeddedGraph> build_hereditary_embedding(GraphPtr base, const Embedding& iota,
                                                          const DegreeBound& target_bound) {
  check_hereditary(iota, base->bound(), target_bound);
  return std::make_shared<EmbeddedGraph>(std::move(base), iota, target_bound);
}

std::shared_ptr<SkeletonGraph> single_loop_graph(std::int64_t max_n) {
  return SkeletonGraph::make(Group::nk(1), {"v"}, {{"e", 0, 0, 0}}, {}, DegreeBound::box({max_n}));
}

}  // namespace pgraph
