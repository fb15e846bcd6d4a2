#include "pgraph/filters.hpp"

#include <algorithm>

#include "pgraph/error.hpp"

namespace pgraph {

PathSet prefixes(const PGraph& g, const Path& mu) {
  PathSet out;
  for (const GroupElement& p : g.bound().elements())
    if (leq(p, mu.degree)) out.push_back(g.split(mu, p).first);
  normalize(out);
  return out;
}

namespace {

std::optional<Path> largest(const PGraph& g, const PathSet& u) {
  for (auto it = u.rbegin(); it != u.rend(); ++it) {
    bool top = std::all_of(u.begin(), u.end(), [&](const Path& mu) { return g.is_prefix(mu, *it); });
    if (top) return *it;
  }
  return std::nullopt;
}

}  // namespace

bool is_filter(const PGraph& g, const PathSet& input) {
  if (input.empty()) return false;
  PathSet u = input;
  normalize(u);
  for (const Path& mu : u) {
    if (!g.in_bound(mu)) return false;
    for (const Path& alpha : prefixes(g, mu))
      if (!set_contains(u, alpha)) return false;
  }
  return largest(g, u).has_value();
}

Filter make_filter(const PGraph& g, PathSet elements) {
  normalize(elements);
  if (!is_filter(g, elements)) throw PreconditionError("not a filter: " + g.names(elements));
  Path top = *largest(g, elements);
  return Filter(std::move(elements), std::move(top));
}

Filter principal_filter(const PGraph& g, const Path& mu) {
  if (!g.in_bound(mu)) throw TruncationError("principal filter of " + g.name(mu) + " outside the bound");
  return make_filter(g, prefixes(g, mu));
}

namespace {

// Filter generated by u and one more path, if that is a filter.
std::optional<PathSet> augment(const PGraph& g, const Filter& u, const Path& p) {
  if (p.range != u.root() || u.contains(p)) return std::nullopt;
  PathSet v = u.elements();
  PathSet more = prefixes(g, p);
  v.insert(v.end(), more.begin(), more.end());
  normalize(v);
  if (!is_filter(g, v)) return std::nullopt;
  return v;
}

bool maximal_in_bound(const PGraph& g, const Filter& u) {
  for (const Path& p : g.paths())
    if (augment(g, u, p)) return false;
  return true;
}

}  // namespace

bool is_ultrafilter(const PGraph& g, const Filter& u) {
  if (g.truncated()) throw PreconditionError("maximality is undecidable on a truncated graph; use ultrafilter_extend");
  return maximal_in_bound(g, u);
}

Extension ultrafilter_extend(const PGraph& g, const Filter& u, std::size_t cap) {
  if (g.paths().size() > cap) throw CapExceeded("ultrafilter_extend: more than " + std::to_string(cap) + " paths");
  Filter cur = u;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Path& p : g.paths()) {
      if (auto v = augment(g, cur, p)) {
        cur = make_filter(g, std::move(*v));
        grew = true;
        break;
      }
    }
  }
  return {cur, !g.truncated()};
}

FilterSpace enumerate_filters(const PGraph& g, bool ultra_only, std::size_t cap) {
  const PathSet& all = g.paths();
  if (all.size() > cap) throw CapExceeded("enumerate_filters: more than " + std::to_string(cap) + " paths");
  FilterSpace space;
  space.truncated = g.truncated();
  // Every filter of a finite path set is the set of prefixes of its largest element.
  std::vector<Filter> filters;
  for (const Path& lambda : all) filters.push_back(principal_filter(g, lambda));
  std::sort(filters.begin(), filters.end());
  for (auto& f : filters) {
    bool ultra = maximal_in_bound(g, f);
    if (ultra_only && !ultra) continue;
    space.filters.push_back(std::move(f));
    space.ultra.push_back(ultra);
  }
  return space;
}

Filter act(const PGraph& g, const Path& lambda, const Filter& u) {
  if (lambda.source != u.root())
    throw PreconditionError("act: s(" + g.name(lambda) + ") differs from the root of the filter");
  PathSet out;
  for (const Path& mu : u.elements()) {
    Path lm = g.concat(lambda, mu);
    if (!g.in_bound(lm)) throw TruncationError("act: " + g.name(lm) + " leaves the bound");
    PathSet pre = prefixes(g, lm);
    out.insert(out.end(), pre.begin(), pre.end());
  }
  return make_filter(g, std::move(out));
}

Filter act_inv(const PGraph& g, const Path& lambda, const Filter& v) {
  if (!v.contains(lambda)) throw PreconditionError("act_inv: " + g.name(lambda) + " is not in the filter");
  PathSet out;
  for (const Path& mu : g.paths_with_range(lambda.source))
    if (v.contains(g.concat(lambda, mu))) out.push_back(mu);
  return make_filter(g, std::move(out));
}

Path fe_witness(const PGraph& g, const Path& mu, const PathSet& e, const Filter& u) {
  for (const Path& alpha : e)
    if (alpha.range == mu.source && u.contains(g.concat(mu, alpha))) return alpha;
  throw VerificationFailure("no alpha in " + g.names(e) + " with " + g.name(mu) + " alpha in the ultrafilter");
}

// ---------------------------------------------------------------------------

FilterKey principal_key(const Path& stem) { return FilterKey{stem, std::nullopt}; }

FilterKey tail_key(const PGraph& g, Path stem, const Path& cycle) {
  if (cycle.range != cycle.source || cycle.is_vertex()) throw PreconditionError("tail needs a nontrivial cycle");
  if (stem.source != cycle.range) throw PreconditionError("tail cycle is not based at the end of the stem");
  for (;;) {
    GroupElement q = multiply(stem.degree, inverse(cycle.degree));
    if (!in_positive_cone(q)) break;
    auto [head, rest] = g.split(stem, q);
    if (!(rest == cycle)) break;
    stem = head;
  }
  return FilterKey{std::move(stem), cycle};
}

namespace {

Path unroll(const PGraph& g, const FilterKey& k, std::int64_t reach) {
  Path x = k.stem;
  for (std::int64_t i = 0; i < reach + 2; ++i) x = g.concat(x, *k.cycle);
  return x;
}

}  // namespace

bool key_contains(const PGraph& g, const FilterKey& k, const Path& alpha) {
  if (!k.cycle) return g.is_prefix(alpha, k.stem);
  return g.is_prefix(alpha, unroll(g, k, alpha.degree.length()));
}

FilterKey key_act(const PGraph& g, const Path& lambda, const FilterKey& k) {
  if (lambda.source != k.root()) throw PreconditionError("key_act: root mismatch");
  Path stem = g.concat(lambda, k.stem);
  if (!k.cycle) return principal_key(stem);
  return tail_key(g, std::move(stem), *k.cycle);
}

std::optional<FilterKey> key_act_inv(const PGraph& g, const Path& lambda, const FilterKey& k) {
  if (lambda.range != k.root()) return std::nullopt;
  if (!k.cycle) {
    if (!g.is_prefix(lambda, k.stem)) return std::nullopt;
    return principal_key(g.split(k.stem, lambda.degree).second);
  }
  Path x = unroll(g, k, lambda.degree.length());
  if (!g.is_prefix(lambda, x)) return std::nullopt;
  return tail_key(g, g.split(x, lambda.degree).second, *k.cycle);
}

PathSet key_members(const PGraph& g, const FilterKey& k) {
  PathSet out;
  for (const Path& p : g.paths_with_range(k.root()))
    if (key_contains(g, k, p)) out.push_back(p);
  return out;
}

std::string key_name(const PGraph& g, const FilterKey& k) {
  if (!k.cycle) return "U(" + g.name(k.stem) + ")";
  return "U(" + g.name(k.stem) + ".(" + g.name(*k.cycle) + ")^inf)";
}

}  // namespace pgraph
