#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pgraph/filters.hpp"
#include "pgraph/graph.hpp"
#include "pgraph/matrix.hpp"
#include "pgraph/report.hpp"

namespace pgraph {

// Finite linear combination of pairs (mu, nu) with s(mu) = s(nu), standing for t_mu t_nu^*.
class FormalElement {
 public:
  using Key = std::pair<Path, Path>;

  FormalElement() = default;
  static FormalElement term(const Path& mu, const Path& nu, const Rational& c = 1);

  void add(const Path& mu, const Path& nu, const Rational& c);
  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  FormalElement& operator+=(const FormalElement& y);
  friend FormalElement operator+(FormalElement x, const FormalElement& y) { return x += y; }
  friend FormalElement operator-(FormalElement x, const FormalElement& y);
  friend FormalElement operator*(const Rational& c, const FormalElement& x);
  friend bool operator==(const FormalElement&, const FormalElement&) = default;

 private:
  std::map<Key, Rational> terms_;
};

FormalElement adjoint(const FormalElement& x);
// (mu,nu)(xi,eta) = sum over nu alpha = xi beta in MCE(nu,xi) of (mu alpha, eta beta).
FormalElement mult(const PGraph& g, const FormalElement& x, const FormalElement& y);
GroupElement grade(const Path& mu, const Path& nu);
std::map<GroupElement, FormalElement> grade_decompose(const FormalElement& x);
FormalElement expectation(const FormalElement& x);
std::string to_string(const PGraph& g, const FormalElement& x);

enum class Flavor { Toeplitz, Boundary };
std::string to_string(Flavor f);

using Vector = std::map<FilterKey, Rational>;

struct Factor {
  Path path;
  bool adjoint = false;
};
// t_{f1} t_{f2} ... applied right to left.
using Word = std::vector<Factor>;
using Operator = std::vector<std::pair<Rational, Word>>;

Operator op_projection(const Path& mu);  // t_mu t_mu^*
Operator op_of(const FormalElement& x);
Operator op_product(const Operator& a, const Operator& b);
Operator op_sum(Operator a, const Operator& b, const Rational& scale = 1);

// The operators t_lambda on l^2 of a family of filters: filters (T flavor) or
// ultrafilters (Omega flavor). A closed representation has a basis invariant under
// every t_lambda and its adjoint, so matrices are available; an open one only
// supports evaluation on basis vectors (infinite graphs).
class Representation {
 public:
  static Representation on_filters(GraphPtr g);
  static Representation on_ultrafilters(GraphPtr g);
  // Omega flavor on eventually periodic ultrafilters of an infinite graph.
  static Representation on_tails(GraphPtr g, std::vector<FilterKey> basis);

  const PGraph& graph() const { return *graph_; }
  const GraphPtr& graph_ptr() const { return graph_; }
  Flavor flavor() const { return flavor_; }
  bool closed() const { return closed_; }
  const std::vector<FilterKey>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }
  std::optional<std::size_t> index_of(const FilterKey& k) const;
  // Indices of basis vectors whose filter has root v.
  const std::vector<std::size_t>& basis_at(VertexId v) const { return by_root_.at(v); }
  std::string describe() const;

  Vector apply(const Path& lambda, bool adjoint, const Vector& x) const;
  Vector apply(const Word& w, const Vector& x) const;
  Vector apply(const Operator& op, const Vector& x) const;
  Vector basis_vector(std::size_t i) const { return Vector{{basis_[i], Rational(1)}}; }

  // Closed representations only.
  MatrixOp matrix(const Operator& op) const;
  MatrixOp generator(const Path& lambda) const;
  MatrixOp to_matrix(const FormalElement& x) const;

  // Test hook: flips entry (row, col) of the matrix of t_lambda.
  void inject_fault(const Path& lambda, std::size_t row, std::size_t col);
  // Test hook for open representations: t_lambda acts as t_replacement.
  void inject_alias(const Path& lambda, const Path& replacement);
  bool tampered() const { return !faults_.empty() || !aliases_.empty(); }

 private:
  Representation(GraphPtr g, Flavor f, bool closed, std::vector<FilterKey> basis);
  Vector apply_one(const Path& lambda, bool adjoint, const FilterKey& k) const;

  GraphPtr graph_;
  Flavor flavor_;
  bool closed_;
  std::vector<FilterKey> basis_;
  std::map<FilterKey, std::size_t> index_;
  std::vector<std::vector<std::size_t>> by_root_;
  std::map<Path, MatrixOp> faults_;
  std::map<Path, Path> aliases_;
};

// Evaluate lhs and rhs on every basis vector; records the first mismatch. With a
// root, only vectors rooted there are tried (the caller knows both sides vanish elsewhere).
bool operators_agree(const Representation& r, const Operator& lhs, const Operator& rhs,
                     std::optional<FilterKey>* where = nullptr, std::optional<VertexId> root = std::nullopt);
bool operator_vanishes(const Representation& r, const Operator& op, std::optional<VertexId> root = std::nullopt);

std::vector<CheckRecord> check_balanced_relations(const Representation& r);
std::vector<CheckRecord> check_path_relations(const Representation& r);

MatrixOp gap_projection(const Path& mu, const PathSet& e, const Representation& r);
// prod over alpha in E of (t_mu t_mu^* - t_{mu alpha} t_{mu alpha}^*), starting from t_mu t_mu^*.
Operator gap_operator(const PGraph& g, const Path& mu, const PathSet& e);

using ThetaFamily = std::map<std::pair<Path, Path>, MatrixOp>;
ThetaFamily theta_family(const GroupElement& p, VertexId v, const PathSet& h, const Representation& r);
CheckRecord check_theta_family(const GroupElement& p, VertexId v, const PathSet& h, const Representation& r);

struct Decomposition {
  MatrixOp gap;
  std::vector<std::pair<Path, MatrixOp>> q;  // Q_{mu alpha} for alpha in the vee closure of E
  bool identity_holds = false;
  bool orthogonal = false;
};
Decomposition decompose_projection(const Path& mu, const PathSet& e, const Representation& r);

struct NormComparison {
  double lhs = 0;
  double rhs = 0;
  GroupElement m;
  bool holds = false;
};
// a = sum over balanced pairs of X of coeffs * t_mu t_nu^*; compares ||a|| with ||a_m||.
NormComparison compare_norms(const std::vector<GroupElement>& f, const std::map<GroupElement, PathSet>& x,
                             const std::map<std::pair<Path, Path>, Rational>& coeffs, const Representation& r);
CheckRecord check_norm_lower_bound(const std::vector<GroupElement>& f, const std::map<GroupElement, PathSet>& x,
                                   const std::map<std::pair<Path, Path>, Rational>& coeffs, const Representation& r);
CheckRecord balanced_dim_check(const GroupElement& p, const Representation& r);

// Balanced pairs (mu, nu) of the enumerated paths with degree p.
std::vector<std::pair<Path, Path>> balanced_pairs(const PGraph& g, const GroupElement& p);

// Whole-graph sweeps used by the CLI and the acceptance binary.
std::vector<PathSet> exhaustive_sets(const PGraph& g, const Path& mu, std::size_t max_size, bool allow_vertex);
std::vector<CheckRecord> gap_suite(const Representation& r, std::size_t max_size);
std::vector<CheckRecord> theta_suite(const Representation& r, const std::vector<GroupElement>& degrees,
                                     std::size_t max_h);
std::vector<CheckRecord> decomposition_suite(const Representation& r, std::size_t max_size);
std::vector<CheckRecord> norm_suite(const Representation& r, const std::vector<std::vector<GroupElement>>& families,
                                    std::uint64_t seed, std::size_t trials);
std::vector<CheckRecord> balanced_dim_suite(const Representation& r, const std::vector<GroupElement>& degrees);
std::vector<CheckRecord> grading_suite(const Representation& r, std::uint64_t seed, std::size_t trials);

FormalElement random_element(const PGraph& g, std::mt19937_64& rng, std::size_t max_terms);
Rational random_coefficient(std::mt19937_64& rng);

}  // namespace pgraph
