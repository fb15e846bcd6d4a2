#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pgraph {

using Rational = boost::multiprecision::cpp_rational;

// Sparse square matrix with exact rational entries. Zero entries are never stored.
class MatrixOp {
 public:
  using Row = std::map<std::size_t, Rational>;

  MatrixOp() = default;
  explicit MatrixOp(std::size_t n) : rows_(n) {}
  static MatrixOp identity(std::size_t n);

  std::size_t size() const { return rows_.size(); }
  Rational at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Rational& v);
  void add(std::size_t i, std::size_t j, const Rational& v);
  const Row& row(std::size_t i) const { return rows_.at(i); }

  MatrixOp transpose() const;
  bool is_zero() const;
  std::size_t nonzeros() const;
  bool is_projection() const;

  MatrixOp& operator+=(const MatrixOp& b);
  MatrixOp& operator-=(const MatrixOp& b);
  friend MatrixOp operator+(MatrixOp a, const MatrixOp& b) { return a += b; }
  friend MatrixOp operator-(MatrixOp a, const MatrixOp& b) { return a -= b; }
  friend MatrixOp operator*(const MatrixOp& a, const MatrixOp& b);
  friend MatrixOp operator*(const Rational& c, const MatrixOp& a);
  friend bool operator==(const MatrixOp& a, const MatrixOp& b) { return a.rows_ == b.rows_; }

  // Row-major dense copy.
  std::vector<double> to_dense() const;

 private:
  std::vector<Row> rows_;
};

// Largest singular value: Jacobi eigenvalues of A^T A in double precision.
// Throws VerificationFailure when cap sweeps do not converge.
double operator_norm(const MatrixOp& a, double tolerance = 1e-10, std::size_t cap = 100);

// Exact rank of a family of vectors (Gaussian elimination over Q).
std::size_t exact_rank(std::vector<std::vector<Rational>> rows);

}  // namespace pgraph
