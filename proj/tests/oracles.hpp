#pragma once

// Test-only reference computations, written independently of the library's
// elimination and gluing code.

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "conekit/lattice.hpp"
#include "conekit/random.hpp"

namespace oracle {

using conekit::Integer;
using conekit::IntegerMatrix;
using conekit::Rational;

/// Inertia from floating-point eigenvalues. Only used on small-entry forms,
/// where the eigenvalues are well separated from zero.
inline conekit::Signature eigen_inertia(const IntegerMatrix& gram) {
  const auto n = static_cast<Eigen::Index>(gram.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = static_cast<double>(gram[i][j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  conekit::Signature s;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ev = solver.eigenvalues()(i);
    if (ev > 1e-9)
      ++s.b_plus;
    else if (ev < -1e-9)
      ++s.b_minus;
    else
      ++s.b_zero;
  }
  return s;
}

/// Determinant by cofactor-free rational row reduction.
inline Rational rational_det(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

/// Sylvester/Jacobi: with all leading principal minors nonzero, b_minus is
/// the number of sign changes in 1, D_1, ..., D_n. Returns nullopt when a
/// minor vanishes.
inline std::optional<std::pair<std::size_t, std::size_t>> leading_minor_inertia(const IntegerMatrix& gram) {
  const std::size_t n = gram.size();
  int prev = 1;
  std::size_t changes = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<Rational>> sub(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub[i][j] = Rational(gram[i][j]);
    const Rational d = rational_det(sub);
    if (d == 0) return std::nullopt;
    const int s = d > 0 ? 1 : -1;
    if (s != prev) ++changes;
    prev = s;
  }
  return std::make_pair(n - changes, changes);
}

/// Direct double-sum evaluation of aᵀ·G·b.
inline Rational gram_pair(const IntegerMatrix& g, const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational total = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) total += a[i] * Rational(g[i][j]) * b[j];
  return total;
}

/// Product of random elementary integer matrices: unimodular by construction.
inline IntegerMatrix random_unimodular(conekit::SplitMix64& rng, std::size_t n, int steps = 6) {
  IntegerMatrix u(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  if (n < 2) return u;
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(n) - 1));
    auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(n) - 2));
    if (j >= i) ++j;
    const long long kind = rng.uniform(0, 2);
    if (kind == 0) {
      const long long c = rng.uniform(-2, 2);
      for (std::size_t r = 0; r < n; ++r) u[r][i] += c * u[r][j];  // column_i += c·column_j
    } else if (kind == 1) {
      for (std::size_t r = 0; r < n; ++r) std::swap(u[r][i], u[r][j]);
    } else {
      for (std::size_t r = 0; r < n; ++r) u[r][i] = -u[r][i];
    }
  }
  return u;
}

}  // namespace oracle
