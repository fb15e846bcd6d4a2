#include "pgraph/matrix.hpp"

#include <cmath>
#include <algorithm>

#include "pgraph/error.hpp"

namespace pgraph {

MatrixOp MatrixOp::identity(std::size_t n) {
  MatrixOp m(n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i][i] = 1;
  return m;
}

Rational MatrixOp::at(std::size_t i, std::size_t j) const {
  const Row& r = rows_.at(i);
  auto it = r.find(j);
  return it == r.end() ? Rational(0) : it->second;
}

void MatrixOp::set(std::size_t i, std::size_t j, const Rational& v) {
  if (j >= size()) throw PreconditionError("column out of range");
  Row& r = rows_.at(i);
  if (v == 0)
    r.erase(j);
  else
    r[j] = v;
}

void MatrixOp::add(std::size_t i, std::size_t j, const Rational& v) {
  if (v == 0) return;
  if (j >= size()) throw PreconditionError("column out of range");
  Row& r = rows_.at(i);
  auto [it, inserted] = r.emplace(j, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) r.erase(it);
  }
}

MatrixOp MatrixOp::transpose() const {
  MatrixOp t(size());
  for (std::size_t i = 0; i < size(); ++i)
    for (const auto& [j, v] : rows_[i]) t.rows_[j][i] = v;
  return t;
}

bool MatrixOp::is_zero() const {
  for (const auto& r : rows_)
    if (!r.empty()) return false;
  return true;
}

std::size_t MatrixOp::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

bool MatrixOp::is_projection() const { return *this == transpose() && *this * *this == *this; }

MatrixOp& MatrixOp::operator+=(const MatrixOp& b) {
  if (b.size() != size()) throw PreconditionError("matrix size mismatch");
  for (std::size_t i = 0; i < size(); ++i)
    for (const auto& [j, v] : b.rows_[i]) add(i, j, v);
  return *this;
}

MatrixOp& MatrixOp::operator-=(const MatrixOp& b) {
  if (b.size() != size()) throw PreconditionError("matrix size mismatch");
  for (std::size_t i = 0; i < size(); ++i)
    for (const auto& [j, v] : b.rows_[i]) add(i, j, -v);
  return *this;
}

MatrixOp operator*(const MatrixOp& a, const MatrixOp& b) {
  if (a.size() != b.size()) throw PreconditionError("matrix size mismatch");
  MatrixOp c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (const auto& [k, x] : a.rows_[i])
      for (const auto& [j, y] : b.rows_[k]) c.add(i, j, x * y);
  return c;
}

MatrixOp operator*(const Rational& s, const MatrixOp& a) {
  MatrixOp c(a.size());
  if (s == 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (const auto& [j, v] : a.rows_[i]) c.rows_[i][j] = s * v;
  return c;
}

std::vector<double> MatrixOp::to_dense() const {
  const std::size_t n = size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [j, v] : rows_[i]) d[i * n + j] = static_cast<double>(v);
  return d;
}

double operator_norm(const MatrixOp& a, double tolerance, std::size_t cap) {
  const std::size_t n = a.size();
  if (n == 0 || a.is_zero()) return 0.0;
  std::vector<double> d = a.to_dense();
  std::vector<double> b(n * n, 0.0);  // A^T A
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      double aki = d[k * n + i];
      if (aki == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) b[i * n + j] += aki * d[k * n + j];
    }

  // Cyclic Jacobi rotations until the off-diagonal mass is negligible.
  double total = 0;
  for (double v : b) total += v * v;
  const double eps = std::min(tolerance, 1e-10) * 1e-6;
  for (std::size_t sweep = 0; sweep < cap; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += b[i * n + j] * b[i * n + j];
    if (off <= eps * eps * total) {
      double top = 0;
      for (std::size_t i = 0; i < n; ++i) top = std::max(top, b[i * n + i]);
      return std::sqrt(top);
    }
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = b[p * n + q];
        if (apq == 0.0) continue;
        double theta = (b[q * n + q] - b[p * n + p]) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double bkp = b[k * n + p], bkq = b[k * n + q];
          b[k * n + p] = c * bkp - s * bkq;
          b[k * n + q] = s * bkp + c * bkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double bpk = b[p * n + k], bqk = b[q * n + k];
          b[p * n + k] = c * bpk - s * bqk;
          b[q * n + k] = s * bpk + c * bqk;
        }
      }
  }
  throw VerificationFailure("operator_norm: no convergence within " + std::to_string(cap) + " sweeps");
}

std::size_t exact_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k)
        if (rows[rank][k] != 0) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace pgraph
