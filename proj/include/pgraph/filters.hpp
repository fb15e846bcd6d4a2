#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pgraph/graph.hpp"

namespace pgraph {

// A filter of the enumerated part of the graph: nonempty, closed under prefixes
// (F1) and directed (F2). On truncated graphs both conditions are taken relative
// to the enumerated paths, and every such filter has a largest element.
class Filter {
 public:
  const PathSet& elements() const { return elements_; }
  VertexId root() const { return elements_.front().range; }
  // The largest element; the filter is exactly its enumerated prefixes.
  const Path& top() const { return top_; }
  bool contains(const Path& p) const { return set_contains(elements_, p); }
  std::size_t size() const { return elements_.size(); }

  friend bool operator==(const Filter& a, const Filter& b) { return a.elements_ == b.elements_; }
  friend auto operator<=>(const Filter& a, const Filter& b) { return a.top_ <=> b.top_; }

 private:
  Filter(PathSet elements, Path top) : elements_(std::move(elements)), top_(std::move(top)) {}
  PathSet elements_;
  Path top_;
  friend Filter make_filter(const PGraph& g, PathSet elements);
};

// Throws PreconditionError when the set is not a filter.
Filter make_filter(const PGraph& g, PathSet elements);
bool is_filter(const PGraph& g, const PathSet& u);

// Enumerated prefixes of mu.
PathSet prefixes(const PGraph& g, const Path& mu);
Filter principal_filter(const PGraph& g, const Path& mu);

// Finite graphs only.
bool is_ultrafilter(const PGraph& g, const Filter& u);

struct Extension {
  Filter filter;
  bool exact;  // false: maximal only among filters inside the bound
};
Extension ultrafilter_extend(const PGraph& g, const Filter& u, std::size_t cap = 200000);

struct FilterSpace {
  std::vector<Filter> filters;
  std::vector<bool> ultra;
  bool truncated = false;
};
FilterSpace enumerate_filters(const PGraph& g, bool ultra_only, std::size_t cap = 200000);

Filter act(const PGraph& g, const Path& lambda, const Filter& u);
Filter act_inv(const PGraph& g, const Path& lambda, const Filter& v);

// Some alpha in e with mu alpha in u; throws VerificationFailure when none exists.
Path fe_witness(const PGraph& g, const Path& mu, const PathSet& e, const Filter& u);

// Finitely described filter used to label basis vectors: the prefixes of stem
// (principal) or of stem.cycle^n for all n (an eventually periodic tail).
struct FilterKey {
  Path stem;
  std::optional<Path> cycle;

  bool is_tail() const { return cycle.has_value(); }
  VertexId root() const { return stem.range; }
  friend bool operator==(const FilterKey&, const FilterKey&) = default;
  friend std::strong_ordering operator<=>(const FilterKey& a, const FilterKey& b) {
    if (auto c = a.stem <=> b.stem; c != 0) return c;
    if (auto c = a.cycle.has_value() <=> b.cycle.has_value(); c != 0) return c;
    if (a.cycle) return *a.cycle <=> *b.cycle;
    return std::strong_ordering::equal;
  }
};

FilterKey principal_key(const Path& stem);
// Strips trailing copies of the cycle so equal tails get equal keys.
FilterKey tail_key(const PGraph& g, Path stem, const Path& cycle);
bool key_contains(const PGraph& g, const FilterKey& k, const Path& alpha);
// lambda . U; requires s(lambda) = r(U).
FilterKey key_act(const PGraph& g, const Path& lambda, const FilterKey& k);
// lambda* . U, or nullopt when lambda is not in U.
std::optional<FilterKey> key_act_inv(const PGraph& g, const Path& lambda, const FilterKey& k);
PathSet key_members(const PGraph& g, const FilterKey& k);
std::string key_name(const PGraph& g, const FilterKey& k);

}  // namespace pgraph
