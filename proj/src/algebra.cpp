#include "pgraph/algebra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "pgraph/error.hpp"

namespace pgraph {

// --- formal elements --------------------------------------------------------

FormalElement FormalElement::term(const Path& mu, const Path& nu, const Rational& c) {
  FormalElement x;
  x.add(mu, nu, c);
  return x;
}

void FormalElement::add(const Path& mu, const Path& nu, const Rational& c) {
  if (mu.source != nu.source) throw PreconditionError("pair with different sources");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(Key{mu, nu}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

FormalElement& FormalElement::operator+=(const FormalElement& y) {
  for (const auto& [k, c] : y.terms_) add(k.first, k.second, c);
  return *this;
}

FormalElement operator-(FormalElement x, const FormalElement& y) {
  for (const auto& [k, c] : y.terms_) x.add(k.first, k.second, -c);
  return x;
}

FormalElement operator*(const Rational& c, const FormalElement& x) {
  FormalElement out;
  for (const auto& [k, v] : x.terms_) out.add(k.first, k.second, c * v);
  return out;
}

FormalElement adjoint(const FormalElement& x) {
  FormalElement out;
  for (const auto& [k, c] : x.terms()) out.add(k.second, k.first, c);
  return out;
}

FormalElement mult(const PGraph& g, const FormalElement& x, const FormalElement& y) {
  FormalElement out;
  for (const auto& [a, c] : x.terms()) {
    const auto& [mu, nu] = a;
    for (const auto& [b, d] : y.terms()) {
      const auto& [xi, eta] = b;
      for (const Path& lambda : mce(g, nu, xi)) {
        Path alpha = g.split(lambda, nu.degree).second;
        Path beta = g.split(lambda, xi.degree).second;
        out.add(g.concat(mu, alpha), g.concat(eta, beta), c * d);
      }
    }
  }
  return out;
}

GroupElement grade(const Path& mu, const Path& nu) { return multiply(mu.degree, inverse(nu.degree)); }

std::map<GroupElement, FormalElement> grade_decompose(const FormalElement& x) {
  std::map<GroupElement, FormalElement> out;
  for (const auto& [k, c] : x.terms()) out[grade(k.first, k.second)].add(k.first, k.second, c);
  return out;
}

FormalElement expectation(const FormalElement& x) {
  FormalElement out;
  for (const auto& [k, c] : x.terms())
    if (grade(k.first, k.second).is_identity()) out.add(k.first, k.second, c);
  return out;
}

std::string to_string(const PGraph& g, const FormalElement& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : x.terms()) {
    os << (first ? "" : " + ") << c << "*(" << g.name(k.first) << "," << g.name(k.second) << ")";
    first = false;
  }
  return os.str();
}

std::string to_string(Flavor f) { return f == Flavor::Toeplitz ? "T" : "omega"; }

// --- operators ---------------------------------------------------------------

Operator op_projection(const Path& mu) { return {{Rational(1), Word{{mu, false}, {mu, true}}}}; }

Operator op_of(const FormalElement& x) {
  Operator op;
  for (const auto& [k, c] : x.terms()) op.push_back({c, Word{{k.first, false}, {k.second, true}}});
  return op;
}

Operator op_product(const Operator& a, const Operator& b) {
  Operator out;
  for (const auto& [c, w] : a)
    for (const auto& [d, v] : b) {
      Word wv = w;
      wv.insert(wv.end(), v.begin(), v.end());
      out.push_back({c * d, std::move(wv)});
    }
  return out;
}

Operator op_sum(Operator a, const Operator& b, const Rational& scale) {
  for (const auto& [c, w] : b) a.push_back({scale * c, w});
  return a;
}

namespace {

void accumulate(Vector& into, const FilterKey& k, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = into.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) into.erase(it);
  }
}

}  // namespace

// --- representations ---------------------------------------------------------

Representation::Representation(GraphPtr g, Flavor f, bool closed, std::vector<FilterKey> basis)
    : graph_(std::move(g)), flavor_(f), closed_(closed), basis_(std::move(basis)) {
  std::sort(basis_.begin(), basis_.end());
  basis_.erase(std::unique(basis_.begin(), basis_.end()), basis_.end());
  by_root_.resize(graph_->vertex_count());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    index_.emplace(basis_[i], i);
    by_root_.at(basis_[i].root()).push_back(i);
  }
}

Representation Representation::on_filters(GraphPtr g) {
  std::vector<FilterKey> basis;
  for (const Path& p : g->paths()) basis.push_back(principal_key(p));
  bool closed = !g->truncated();
  return Representation(std::move(g), Flavor::Toeplitz, closed, std::move(basis));
}

Representation Representation::on_ultrafilters(GraphPtr g) {
  if (g->truncated())
    throw PreconditionError("ultrafilters of a truncated graph are not enumerable; use on_tails");
  std::vector<FilterKey> basis;
  for (const Filter& u : enumerate_filters(*g, true).filters) basis.push_back(principal_key(u.top()));
  return Representation(std::move(g), Flavor::Boundary, true, std::move(basis));
}

Representation Representation::on_tails(GraphPtr g, std::vector<FilterKey> basis) {
  return Representation(std::move(g), Flavor::Boundary, false, std::move(basis));
}

std::optional<std::size_t> Representation::index_of(const FilterKey& k) const {
  auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Representation::describe() const {
  std::ostringstream os;
  os << to_string(flavor_) << " flavor, " << (closed_ ? "closed" : "open") << " basis of " << basis_.size()
     << (flavor_ == Flavor::Toeplitz ? " filters" : " ultrafilters");
  return os.str();
}

Vector Representation::apply_one(const Path& lambda, bool adj, const FilterKey& k) const {
  if (auto f = faults_.find(lambda); f != faults_.end()) {
    std::size_t j = *index_of(k);
    Vector out;
    const MatrixOp& m = f->second;
    if (!adj) {
      for (std::size_t i = 0; i < m.size(); ++i) accumulate(out, basis_[i], m.at(i, j));
    } else {
      for (const auto& [i, v] : m.row(j)) accumulate(out, basis_[i], v);
    }
    return out;
  }
  const Path& acting = aliases_.count(lambda) ? aliases_.at(lambda) : lambda;
  std::optional<FilterKey> image;
  if (!adj) {
    if (acting.source == k.root()) image = key_act(*graph_, acting, k);
  } else {
    image = key_act_inv(*graph_, acting, k);
  }
  if (!image) return {};
  if (closed_ && !index_.count(*image))
    throw VerificationFailure("basis is not invariant: " + key_name(*graph_, *image) + " missing");
  return Vector{{std::move(*image), Rational(1)}};
}

Vector Representation::apply(const Path& lambda, bool adj, const Vector& x) const {
  Vector out;
  for (const auto& [k, c] : x)
    for (const auto& [k2, d] : apply_one(lambda, adj, k)) accumulate(out, k2, c * d);
  return out;
}

Vector Representation::apply(const Word& w, const Vector& x) const {
  Vector cur = x;
  for (auto it = w.rbegin(); it != w.rend() && !cur.empty(); ++it) cur = apply(it->path, it->adjoint, cur);
  return cur;
}

Vector Representation::apply(const Operator& op, const Vector& x) const {
  Vector out;
  for (const auto& [c, w] : op)
    for (const auto& [k, d] : apply(w, x)) accumulate(out, k, c * d);
  return out;
}

MatrixOp Representation::matrix(const Operator& op) const {
  if (!closed_) throw PreconditionError("matrices need a closed representation");
  MatrixOp m(basis_.size());
  for (std::size_t j = 0; j < basis_.size(); ++j)
    for (const auto& [k, c] : apply(op, basis_vector(j))) m.set(*index_of(k), j, c);
  return m;
}

MatrixOp Representation::generator(const Path& lambda) const {
  if (auto f = faults_.find(lambda); f != faults_.end()) return f->second;
  return matrix(Operator{{Rational(1), Word{{lambda, false}}}});
}

MatrixOp Representation::to_matrix(const FormalElement& x) const {
  for (const auto& [k, c] : x.terms())
    if (!graph_->in_bound(k.first) || !graph_->in_bound(k.second))
      throw PreconditionError("to_matrix: term outside the enumerated graph");
  return matrix(op_of(x));
}

void Representation::inject_fault(const Path& lambda, std::size_t row, std::size_t col) {
  MatrixOp m = generator(lambda);
  m.set(row, col, m.at(row, col) == 0 ? Rational(1) : Rational(0));
  faults_[lambda] = std::move(m);
}

void Representation::inject_alias(const Path& lambda, const Path& replacement) { aliases_[lambda] = replacement; }

namespace {

template <class F>
bool for_basis(const Representation& r, std::optional<VertexId> root, F&& f) {
  // Small or tampered representations get the full sweep.
  if (root && !r.closed() && !r.tampered()) {
    for (std::size_t i : r.basis_at(*root))
      if (!f(i)) return false;
    return true;
  }
  for (std::size_t i = 0; i < r.dimension(); ++i)
    if (!f(i)) return false;
  return true;
}

}  // namespace

bool operators_agree(const Representation& r, const Operator& lhs, const Operator& rhs,
                     std::optional<FilterKey>* where, std::optional<VertexId> root) {
  return for_basis(r, root, [&](std::size_t i) {
    Vector e = r.basis_vector(i);
    if (r.apply(lhs, e) == r.apply(rhs, e)) return true;
    if (where) *where = r.basis()[i];
    return false;
  });
}

bool operator_vanishes(const Representation& r, const Operator& op, std::optional<VertexId> root) {
  return for_basis(r, root, [&](std::size_t i) { return r.apply(op, r.basis_vector(i)).empty(); });
}

// --- relation checks ---------------------------------------------------------

namespace {

Operator single(const Path& p, bool adj = false) { return {{Rational(1), Word{{p, adj}}}}; }

std::vector<std::string> witness(const PGraph& g, std::initializer_list<const Path*> ps,
                                 const std::optional<FilterKey>& where = std::nullopt) {
  std::vector<std::string> out;
  for (const Path* p : ps) out.push_back(g.name(*p));
  if (where) out.push_back(key_name(g, *where));
  return out;
}

}  // namespace

std::vector<CheckRecord> check_balanced_relations(const Representation& r) {
  const PGraph& g = r.graph();
  if (!r.closed()) {
    CheckRecord skip{"B1/B2", "balanced relations as matrix identities", Status::Skipped, {},
                     "needs a closed (finite) representation", {}};
    return {skip};
  }
  std::vector<std::pair<Path, Path>> pairs;
  std::vector<GroupElement> degrees;
  for (const Path& p : g.paths()) degrees.push_back(p.degree);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  for (const auto& d : degrees) {
    auto more = balanced_pairs(g, d);
    pairs.insert(pairs.end(), more.begin(), more.end());
  }
  std::map<std::pair<Path, Path>, MatrixOp> mats;
  for (const auto& pr : pairs) mats.emplace(pr, r.to_matrix(FormalElement::term(pr.first, pr.second)));

  CheckTally b1("B1", "adjoint rule tau*_{mu,nu} = tau_{nu,mu}");
  for (const auto& [pr, m] : mats) {
    if (m.transpose() == mats.at({pr.second, pr.first}))
      b1.pass();
    else
      b1.fail(witness(g, {&pr.first, &pr.second}), "transpose mismatch");
  }
  CheckTally b2("B2", "product rule tau_{mu,nu} tau_{xi,eta} = sum over MCE(nu,xi)");
  for (const auto& [a, ma] : mats)
    for (const auto& [b, mb] : mats) {
      FormalElement prod = mult(g, FormalElement::term(a.first, a.second), FormalElement::term(b.first, b.second));
      if (ma * mb == r.to_matrix(prod))
        b2.pass();
      else
        b2.fail(witness(g, {&a.first, &a.second, &b.first, &b.second}), "product mismatch");
    }
  return {b1.record(std::to_string(pairs.size()) + " balanced pairs"), b2.record()};
}

std::vector<CheckRecord> check_path_relations(const Representation& r) {
  const PGraph& g = r.graph();
  std::vector<CheckRecord> out;
  std::optional<FilterKey> where;

  CheckTally t1("T1", "vertex projections are mutually orthogonal projections");
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    Path pv = g.vertex(v);
    if (operators_agree(r, op_product(single(pv), single(pv)), single(pv), &where, v) &&
        operators_agree(r, single(pv, true), single(pv), &where, v))
      t1.pass();
    else
      t1.fail(witness(g, {&pv}, where), "t_v is not a projection");
    for (VertexId w = v + 1; w < g.vertex_count(); ++w) {
      Path pw = g.vertex(w);
      if (operator_vanishes(r, op_product(single(pv), single(pw)), w))
        t1.pass();
      else
        t1.fail(witness(g, {&pv, &pw}), "t_v t_w != 0");
    }
  }
  out.push_back(t1.record());

  const PathSet& all = g.paths();
  std::vector<PathSet> by_range(g.vertex_count());
  for (const Path& p : all) by_range[p.range].push_back(p);

  CheckTally t2("T2", "t_mu t_nu = t_{mu nu}");
  for (const Path& mu : all)
    for (const Path& nu : by_range[mu.source]) {
      Path mn = g.concat(mu, nu);
      if (!g.in_bound(mn)) continue;
      if (operators_agree(r, op_product(single(mu), single(nu)), single(mn), &where, nu.source))
        t2.pass();
      else
        t2.fail(witness(g, {&mu, &nu}, where), "t_mu t_nu != t_{mu nu}");
    }
  out.push_back(t2.record());

  CheckTally t3("T3", "t_mu^* t_mu = t_{s(mu)}");
  for (const Path& mu : all) {
    if (operators_agree(r, op_product(single(mu, true), single(mu)), single(g.vertex(mu.source)), &where, mu.source))
      t3.pass();
    else
      t3.fail(witness(g, {&mu}, where), "t_mu^* t_mu != t_{s(mu)}");
  }
  out.push_back(t3.record());

  CheckTally t4("T4", "t_mu t_mu^* t_nu t_nu^* = sum over MCE(mu,nu) of t_lambda t_lambda^*");
  for (const Path& mu : all)
    for (const Path& nu : by_range[mu.range]) {
      if (nu < mu) continue;
      Operator rhs;
      for (const Path& lambda : mce_unbounded(g, mu, nu)) rhs = op_sum(rhs, op_projection(lambda));
      if (operators_agree(r, op_product(op_projection(mu), op_projection(nu)), rhs, &where, mu.range))
        t4.pass();
      else
        t4.fail(witness(g, {&mu, &nu}, where), "MCE expansion fails");
    }
  out.push_back(t4.record("pairs with a common range"));

  if (r.flavor() == Flavor::Boundary && r.closed() &&
      (g.group().kind() == GroupKind::Nk || g.group().kind() == GroupKind::FreeMonoid)) {
    // Ultrafilters meet every nonempty vLambda^{e_i} (k-graphs) or vLambda^1 (free monoid) exactly once.
    CheckTally ck("CK", "sum of t_e t_e^* over edges at v equals t_v where edges exist");
    const Group& gr = g.group();
    std::vector<std::vector<GroupElement>> classes;
    if (gr.kind() == GroupKind::Nk) {
      for (int c = 0; c < gr.colour_count(); ++c) classes.push_back({gr.colour_degree(c)});
    } else {
      std::vector<GroupElement> letters;
      for (int c = 0; c < gr.colour_count(); ++c) letters.push_back(gr.colour_degree(c));
      classes.push_back(letters);
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      for (const auto& cls : classes) {
        Operator sum;
        for (const auto& d : cls)
          for (const Path& e : g.paths_from(v, d)) sum = op_sum(sum, op_projection(e));
        if (sum.empty()) continue;
        Path pv = g.vertex(v);
        if (operators_agree(r, sum, single(pv), &where, v))
          ck.pass();
        else
          ck.fail(witness(g, {&pv}, where), "edge projections do not sum to t_v");
      }
    out.push_back(ck.record());
  }
  return out;
}

// --- gap products, matrix units, decomposition ------------------------------------

Operator gap_operator(const PGraph& g, const Path& mu, const PathSet& e) {
  Operator out = op_projection(mu);
  for (const Path& alpha : e) {
    Operator factor = op_sum(op_projection(mu), op_projection(g.concat(mu, alpha)), Rational(-1));
    out = op_product(out, factor);
  }
  return out;
}

namespace {

void check_at_source(const PGraph& g, const Path& mu, const PathSet& e) {
  for (const Path& alpha : e)
    if (alpha.range != mu.source) throw PreconditionError(g.name(alpha) + " does not start at s(" + g.name(mu) + ")");
}

}  // namespace

MatrixOp gap_projection(const Path& mu, const PathSet& e, const Representation& r) {
  check_at_source(r.graph(), mu, e);
  return r.matrix(gap_operator(r.graph(), mu, e));
}

std::vector<std::pair<Path, Path>> balanced_pairs(const PGraph& g, const GroupElement& p) {
  PathSet deg = g.paths_of_degree(p);
  std::vector<std::pair<Path, Path>> out;
  for (const Path& mu : deg)
    for (const Path& nu : deg)
      if (mu.source == nu.source) out.emplace_back(mu, nu);
  return out;
}

ThetaFamily theta_family(const GroupElement& p, VertexId v, const PathSet& h, const Representation& r) {
  const PGraph& g = r.graph();
  for (const Path& lambda : h)
    if (lambda.range != v || lambda.is_vertex())
      throw PreconditionError("theta_family: H must lie in v Lambda minus v");
  PathSet paths;
  for (const Path& mu : g.paths_of_degree(p))
    if (mu.source == v) paths.push_back(mu);
  ThetaFamily out;
  for (const Path& mu : paths)
    for (const Path& nu : paths) {
      MatrixOp m = r.to_matrix(FormalElement::term(mu, nu));
      for (const Path& lambda : h) {
        Path nl = g.concat(nu, lambda);
        m = m * (r.to_matrix(FormalElement::term(nu, nu)) - r.to_matrix(FormalElement::term(nl, nl)));
      }
      out.emplace(std::make_pair(mu, nu), std::move(m));
    }
  return out;
}

CheckRecord check_theta_family(const GroupElement& p, VertexId v, const PathSet& h, const Representation& r) {
  const PGraph& g = r.graph();
  ThetaFamily th = theta_family(p, v, h, r);
  CheckTally tally("theta", "theta_{mu,nu} are matrix units");
  for (const auto& [a, ma] : th) {
    if (ma.transpose() == th.at({a.second, a.first}))
      tally.pass();
    else
      tally.fail(witness(g, {&a.first, &a.second}), "theta* != theta of swapped pair");
    if (r.flavor() == Flavor::Toeplitz && a.first == a.second) {
      if (ma.is_zero())
        tally.fail(witness(g, {&a.first}), "theta_{mu,mu} vanishes in the T flavor");
      else
        tally.pass();
    }
    for (const auto& [b, mb] : th) {
      MatrixOp expect(ma.size());
      if (a.second == b.first) expect = th.at({a.first, b.second});
      if (ma * mb == expect)
        tally.pass();
      else
        tally.fail(witness(g, {&a.first, &a.second, &b.first, &b.second}), "matrix unit product fails");
    }
  }
  return tally.record();
}

Decomposition decompose_projection(const Path& mu, const PathSet& e, const Representation& r) {
  const PGraph& g = r.graph();
  check_at_source(g, mu, e);
  PathSet closure = vee_paths(g, e);
  Decomposition d;
  d.gap = r.matrix(gap_operator(g, mu, closure));
  for (const Path& alpha : closure) {
    Path ma = g.concat(mu, alpha);
    Operator q = op_projection(ma);
    for (const Path& beta : closure) {
      if (beta == alpha || !g.is_prefix(alpha, beta)) continue;
      q = op_product(q, op_sum(op_projection(ma), op_projection(g.concat(mu, beta)), Rational(-1)));
    }
    d.q.emplace_back(alpha, r.matrix(q));
  }
  MatrixOp total = d.gap;
  for (const auto& [alpha, m] : d.q) total += m;
  d.identity_holds = total == r.matrix(op_projection(mu));
  std::vector<const MatrixOp*> parts{&d.gap};
  for (const auto& [alpha, m] : d.q) parts.push_back(&m);
  d.orthogonal = true;
  for (std::size_t i = 0; i < parts.size() && d.orthogonal; ++i)
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (i == j) continue;
      if (!(*parts[i] * *parts[j]).is_zero()) {
        d.orthogonal = false;
        break;
      }
    }
  return d;
}

// --- norms and dimensions ----------------------------------------------------------

NormComparison compare_norms(const std::vector<GroupElement>& f, const std::map<GroupElement, PathSet>& x,
                             const std::map<std::pair<Path, Path>, Rational>& coeffs, const Representation& r) {
  NormComparison out;
  out.m = minimal_elements(f).front();
  FormalElement a, am;
  const PathSet* xm = x.count(out.m) ? &x.at(out.m) : nullptr;
  for (const auto& [pr, c] : coeffs) {
    const auto& [mu, nu] = pr;
    auto in_x = [&](const Path& p) { return x.count(p.degree) && set_contains(x.at(p.degree), p); };
    if (!(mu.degree == nu.degree) || mu.source != nu.source || !in_x(mu) || !in_x(nu))
      throw PreconditionError("coefficient on a pair outside the balanced set of X");
    a.add(mu, nu, c);
    if (xm && mu.degree == out.m) am.add(mu, nu, c);
  }
  out.lhs = operator_norm(r.to_matrix(a));
  out.rhs = operator_norm(r.to_matrix(am));
  out.holds = out.lhs >= out.rhs - 1e-9;
  return out;
}

CheckRecord check_norm_lower_bound(const std::vector<GroupElement>& f, const std::map<GroupElement, PathSet>& x,
                                   const std::map<std::pair<Path, Path>, Rational>& coeffs, const Representation& r) {
  const PGraph& g = r.graph();
  CheckRecord rec{"norm", "||sum over bal X|| >= ||sum over X_m x X_m|| for m minimal", Status::Pass, {}, {}, {}};
  if (r.flavor() == Flavor::Boundary) {
    for (const auto& [p, paths] : x)
      for (const Path& mu : paths)
        for (const PathSet& e : exhaustive_sets(g, mu, 2, false))
          if (gap_projection(mu, e, r).is_zero()) {
            rec.status = Status::Skipped;
            rec.detail = "hypotheses fail: a gap product vanishes at " + g.name(mu);
            return rec;
          }
  }
  NormComparison nc = compare_norms(f, x, coeffs, r);
  std::ostringstream os;
  os.precision(12);
  os << "m=" << to_string(nc.m) << " lhs=" << nc.lhs << " rhs=" << nc.rhs;
  rec.detail = os.str();
  if (!nc.holds) {
    rec.status = Status::Fail;
    rec.witness = {to_string(nc.m)};
  }
  return rec;
}

CheckRecord balanced_dim_check(const GroupElement& p, const Representation& r) {
  const PGraph& g = r.graph();
  CheckTally tally("balanced-dim", "span of T_mu T_nu^* over balanced pairs of degree p");
  auto pairs = balanced_pairs(g, p);
  std::size_t n = r.dimension();
  std::vector<std::vector<Rational>> rows;
  std::map<std::pair<Path, Path>, MatrixOp> mats;
  for (const auto& pr : pairs) {
    MatrixOp m = r.to_matrix(FormalElement::term(pr.first, pr.second));
    std::vector<Rational> flat(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [j, v] : m.row(i)) flat[i * n + j] = v;
    rows.push_back(std::move(flat));
    mats.emplace(pr, std::move(m));
  }
  std::map<VertexId, std::size_t> per_source;
  for (const Path& mu : g.paths_of_degree(p)) ++per_source[mu.source];
  std::size_t expected = 0;
  for (const auto& [v, c] : per_source) expected += c * c;
  std::size_t rank = exact_rank(std::move(rows));
  if (rank == expected)
    tally.pass();
  else
    tally.fail({to_string(p)}, "rank " + std::to_string(rank) + " != " + std::to_string(expected));
  for (const auto& [a, ma] : mats)
    for (const auto& [b, mb] : mats) {
      if (a.second.source == b.first.source) continue;
      if ((ma * mb).is_zero())
        tally.pass();
      else
        tally.fail(witness(g, {&a.first, &a.second, &b.first, &b.second}), "cross-vertex product is nonzero");
    }
  return tally.record("degree " + to_string(p) + " rank " + std::to_string(rank) + " expected " +
                      std::to_string(expected));
}

// --- sweeps --------------------------------------------------------------------

namespace {

void for_each_subset(const PathSet& items, std::size_t max_size, const std::function<void(const PathSet&)>& fn) {
  PathSet cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    fn(cur);
    if (cur.size() == max_size) return;
    for (std::size_t i = start; i < items.size(); ++i) {
      cur.push_back(items[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

std::vector<PathSet> exhaustive_sets(const PGraph& g, const Path& mu, std::size_t max_size, bool allow_vertex) {
  PathSet candidates;
  for (const Path& p : g.paths_with_range(mu.source))
    if (allow_vertex || !p.is_vertex()) candidates.push_back(p);
  std::vector<PathSet> out;
  for_each_subset(candidates, max_size, [&](const PathSet& e) {
    if (e.empty()) return;
    if (is_exhaustive(g, mu.source, e).verdict == Exhaustiveness::Verdict::Yes) out.push_back(e);
  });
  return out;
}

std::vector<CheckRecord> gap_suite(const Representation& r, std::size_t max_size) {
  const PGraph& g = r.graph();
  bool toeplitz = r.flavor() == Flavor::Toeplitz;
  CheckTally tally(toeplitz ? "gap/nonzero" : "gap/vanishes",
                   toeplitz ? "gap products over finite exhaustive sets are nonzero"
                            : "gap products over finite exhaustive sets vanish");
  if (!r.closed()) {
    CheckRecord rec = tally.record();
    rec.status = Status::Skipped;
    rec.detail = "exhaustiveness is only decidable on finite graphs";
    return {rec};
  }
  CheckTally proj("gap/projection", "gap products are projections");
  std::size_t sets = 0;
  for (const Path& mu : g.paths())
    for (const PathSet& e : exhaustive_sets(g, mu, max_size, false)) {
      ++sets;
      MatrixOp m = gap_projection(mu, e, r);
      std::vector<std::string> w{g.name(mu), g.names(e)};
      if (m.is_projection())
        proj.pass();
      else
        proj.fail(w, "not a projection");
      if (toeplitz != m.is_zero())
        tally.pass();
      else
        tally.fail(w, toeplitz ? "gap product is zero" : "gap product is nonzero");
    }
  return {tally.record("|E| <= " + std::to_string(max_size)), proj.record()};
}

std::vector<CheckRecord> theta_suite(const Representation& r, const std::vector<GroupElement>& degrees,
                                     std::size_t max_h) {
  const PGraph& g = r.graph();
  if (!r.closed()) return {CheckRecord{"theta", "matrix units", Status::Skipped, {}, "needs a closed representation", {}}};
  CheckTally tally("theta", "theta_{mu,nu} are matrix units");
  for (const GroupElement& p : degrees)
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      PathSet cand;
      for (const Path& lambda : g.paths_with_range(v))
        if (!lambda.is_vertex()) cand.push_back(lambda);
      for_each_subset(cand, max_h, [&](const PathSet& h) {
        CheckRecord rec = check_theta_family(p, v, h, r);
        if (rec.status == Status::Fail)
          tally.fail(rec.witness, rec.detail + " (p=" + to_string(p) + ", H=" + g.names(h) + ")");
        else
          tally.pass();
      });
    }
  return {tally.record("families; |H| <= " + std::to_string(max_h))};
}

std::vector<CheckRecord> decomposition_suite(const Representation& r, std::size_t max_size) {
  const PGraph& g = r.graph();
  if (!r.closed())
    return {CheckRecord{"decomposition", "P_mu = gap + sum Q", Status::Skipped, {}, "needs a closed representation", {}}};
  CheckTally ident("decomposition", "P_mu = gap + sum of Q_{mu alpha} over the vee closure of E");
  CheckTally orth("decomposition/orthogonal", "summands are mutually orthogonal");
  for (const Path& mu : g.paths())
    for_each_subset(g.paths_with_range(mu.source), max_size, [&](const PathSet& e) {
      Decomposition d = decompose_projection(mu, e, r);
      std::vector<std::string> w{g.name(mu), g.names(e)};
      if (d.identity_holds)
        ident.pass();
      else
        ident.fail(w, "identity fails");
      if (d.orthogonal)
        orth.pass();
      else
        orth.fail(w, "summands not orthogonal");
    });
  return {ident.record("|E| <= " + std::to_string(max_size)), orth.record()};
}

Rational random_coefficient(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-1000, 1000);
  return Rational(num(rng), 1000);
}

std::vector<CheckRecord> norm_suite(const Representation& r, const std::vector<std::vector<GroupElement>>& families,
                                    std::uint64_t seed, std::size_t trials) {
  const PGraph& g = r.graph();
  std::vector<CheckRecord> out;
  if (!r.closed()) {
    out.push_back({"norm", "norm lower bound", Status::Skipped, {}, "needs a closed representation", {}});
    return out;
  }
  std::mt19937_64 rng(seed);
  for (const auto& fam : families) {
    std::vector<GroupElement> f = vee_closure(fam);
    std::map<GroupElement, PathSet> x;
    std::vector<std::pair<Path, Path>> bal;
    for (const auto& p : f) {
      x[p] = g.paths_of_degree(p);
      auto more = balanced_pairs(g, p);
      bal.insert(bal.end(), more.begin(), more.end());
    }
    std::string label;
    for (const auto& p : f) label += (label.empty() ? "" : ",") + to_string(p);
    CheckTally tally("norm {" + label + "}", "||sum over bal X|| >= ||sum over X_m x X_m|| for m minimal");
    double worst = 1e300;
    bool skipped = false;
    std::string skip_detail;
    for (std::size_t t = 0; t < trials; ++t) {
      std::map<std::pair<Path, Path>, Rational> coeffs;
      for (const auto& pr : bal) coeffs[pr] = random_coefficient(rng);
      CheckRecord rec = check_norm_lower_bound(f, x, coeffs, r);
      if (rec.status == Status::Skipped) {
        skipped = true;
        skip_detail = rec.detail;
        break;
      }
      NormComparison nc = compare_norms(f, x, coeffs, r);
      worst = std::min(worst, nc.lhs - nc.rhs);
      if (nc.holds)
        tally.pass();
      else
        tally.fail({"trial " + std::to_string(t)}, rec.detail);
    }
    CheckRecord rec = tally.record();
    if (skipped) {
      rec.status = Status::Skipped;
      rec.detail = skip_detail;
    } else {
      std::ostringstream os;
      os.precision(6);
      os << rec.detail << "; smallest margin " << worst;
      rec.detail = os.str();
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<CheckRecord> balanced_dim_suite(const Representation& r, const std::vector<GroupElement>& degrees) {
  std::vector<CheckRecord> out;
  if (!r.closed()) {
    out.push_back({"balanced-dim", "dimension count", Status::Skipped, {}, "needs a closed representation", {}});
    return out;
  }
  for (const auto& p : degrees) out.push_back(balanced_dim_check(p, r));
  return out;
}

FormalElement random_element(const PGraph& g, std::mt19937_64& rng, std::size_t max_terms) {
  const PathSet& all = g.paths();
  std::vector<PathSet> by_source(g.vertex_count());
  for (const Path& p : all) by_source[p.source].push_back(p);
  std::uniform_int_distribution<std::size_t> count(1, max_terms);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  FormalElement x;
  std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const Path& mu = all[pick(rng)];
    const PathSet& same = by_source[mu.source];
    std::uniform_int_distribution<std::size_t> pick2(0, same.size() - 1);
    x.add(mu, same[pick2(rng)], random_coefficient(rng));
  }
  return x;
}

std::vector<CheckRecord> grading_suite(const Representation& r, std::uint64_t seed, std::size_t trials) {
  const PGraph& g = r.graph();
  std::mt19937_64 rng(seed);
  CheckTally mult_grade("grading/mult", "homogeneous products have the product grade");
  CheckTally partition("grading/partition", "grade components sum to the element");
  CheckTally idem("expectation/idempotent", "expectation is idempotent");
  CheckTally contractive("expectation/norm", "||expectation(x)|| <= ||x||");
  CheckTally hom("representation/homomorphism", "to_matrix is multiplicative and *-preserving");
  for (std::size_t t = 0; t < trials; ++t) {
    FormalElement x = random_element(g, rng, 6);
    FormalElement y = random_element(g, rng, 6);
    auto xs = grade_decompose(x);
    auto ys = grade_decompose(y);
    FormalElement sum;
    for (const auto& [gr, part] : xs) sum += part;
    if (sum == x)
      partition.pass();
    else
      partition.fail({"trial " + std::to_string(t)}, "parts do not sum to x");
    for (const auto& [gx, px] : xs)
      for (const auto& [gy, py] : ys) {
        GroupElement want = multiply(gx, gy);
        bool ok = true;
        FormalElement prod = mult(g, px, py);
        for (const auto& [k, c] : prod.terms())
          if (!(grade(k.first, k.second) == want)) ok = false;
        if (ok)
          mult_grade.pass();
        else
          mult_grade.fail({"trial " + std::to_string(t), to_string(gx), to_string(gy)}, "grade not multiplicative");
      }
    FormalElement ex = expectation(x);
    if (expectation(ex) == ex)
      idem.pass();
    else
      idem.fail({"trial " + std::to_string(t)}, "not idempotent");
    if (r.closed()) {
      MatrixOp mx = r.to_matrix(x);
      double nx = operator_norm(mx);
      double nex = operator_norm(r.to_matrix(ex));
      if (nex <= nx + 1e-9)
        contractive.pass();
      else
        contractive.fail({"trial " + std::to_string(t)}, "norm increased");
      MatrixOp my = r.to_matrix(y);
      if (r.to_matrix(mult(g, x, y)) == mx * my && r.to_matrix(adjoint(x)) == mx.transpose())
        hom.pass();
      else
        hom.fail({"trial " + std::to_string(t)}, "homomorphism fails");
    }
  }
  std::vector<CheckRecord> out{mult_grade.record(), partition.record(), idem.record()};
  if (r.closed()) {
    out.push_back(contractive.record());
    out.push_back(hom.record());
  }
  return out;
}

}  // namespace pgraph
