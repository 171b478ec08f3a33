#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "conekit/error.hpp"
#include "conekit/rational.hpp"

namespace conekit {

using IntegerMatrix = std::vector<std::vector<Integer>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Structural fingerprint of a lattice (labels + Gram). Two lattices built
/// from the same data share an id, so their classes interoperate.
using LatticeId = std::uint64_t;

namespace detail {

inline void fnv_mix(std::uint64_t& h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  h ^= 0xff;
  h *= 0x100000001b3ULL;
}

inline bool valid_label(std::string_view s) {
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9') || c == '\''; };
  if (s.empty() || !alpha(s.front())) return false;
  return std::all_of(s.begin() + 1, s.end(), alnum);
}

/// Fraction-free Gaussian elimination. Exact for integer input.
inline Integer bareiss_determinant(IntegerMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sgn = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sgn * m[n - 1][n - 1];
}

/// Inverse of a square rational matrix; nullopt when singular.
inline std::optional<RationalMatrix> invert(RationalMatrix a) {
  const std::size_t n = a.size();
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[col]);
    std::swap(inv[p], inv[col]);
    const Rational pivot = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= pivot;
      inv[col][j] /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const Rational factor = a[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= factor * a[col][j];
        inv[i][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace detail

/// A free abelian group of finite rank with an integral symmetric pairing.
/// Immutable; copies share storage.
class IntersectionLattice {
 public:
  IntersectionLattice(std::vector<std::string> labels, IntegerMatrix gram) {
    const std::size_t n = labels.size();
    if (n == 0) fail(ErrorKind::InvariantViolation, "lattice rank must be positive", "rank");
    if (gram.size() != n)
      fail(ErrorKind::InvariantViolation, "gram has " + std::to_string(gram.size()) +
                                              " rows for rank " + std::to_string(n), "gram_shape");
    for (const auto& row : gram)
      if (row.size() != n) fail(ErrorKind::InvariantViolation, "gram is not square", "gram_shape");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (gram[i][j] != gram[j][i])
          fail(ErrorKind::InvariantViolation,
               "gram not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")",
               "symmetry");
    std::set<std::string> seen;
    for (const auto& l : labels) {
      if (!detail::valid_label(l))
        fail(ErrorKind::InvariantViolation, "invalid basis label '" + l + "'", "label_syntax");
      if (!seen.insert(l).second)
        fail(ErrorKind::InvariantViolation, "duplicate basis label '" + l + "'", "labels_distinct");
    }

    auto data = std::make_shared<Data>();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& l : labels) detail::fnv_mix(h, l);
    data->sparse.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        detail::fnv_mix(h, gram[i][j].str());
        if (gram[i][j] != 0) data->sparse[i].emplace_back(j, gram[i][j]);
      }
    data->id = h;
    data->labels = std::move(labels);
    data->gram = std::move(gram);
    data_ = std::move(data);
  }

  std::size_t rank() const noexcept { return data_->labels.size(); }
  const std::vector<std::string>& labels() const noexcept { return data_->labels; }
  const IntegerMatrix& gram() const noexcept { return data_->gram; }
  const Integer& gram(std::size_t i, std::size_t j) const { return data_->gram[i][j]; }
  const std::vector<std::pair<std::size_t, Integer>>& row(std::size_t i) const {
    return data_->sparse[i];
  }
  LatticeId id() const noexcept { return data_->id; }

  std::optional<std::size_t> index_of(std::string_view label) const {
    const auto& ls = data_->labels;
    auto it = std::find(ls.begin(), ls.end(), label);
    if (it == ls.end()) return std::nullopt;
    return static_cast<std::size_t>(it - ls.begin());
  }

  friend bool operator==(const IntersectionLattice& a, const IntersectionLattice& b) {
    return a.data_ == b.data_ || (a.labels() == b.labels() && a.gram() == b.gram());
  }

 private:
  struct Data {
    std::vector<std::string> labels;
    IntegerMatrix gram;
    std::vector<std::vector<std::pair<std::size_t, Integer>>> sparse;
    LatticeId id = 0;
  };
  std::shared_ptr<const Data> data_;
};

/// A rational cohomology class, in coordinates over its lattice's basis.
class CohomClass {
 public:
  CohomClass(const IntersectionLattice& lattice, std::vector<Rational> coeffs)
      : coeffs_(std::move(coeffs)), lattice_(lattice.id()) {
    if (coeffs_.size() != lattice.rank())
      fail(ErrorKind::MismatchedLattice, "class has " + std::to_string(coeffs_.size()) +
                                             " coefficients, lattice rank is " +
                                             std::to_string(lattice.rank()));
  }

  static CohomClass zero(const IntersectionLattice& lattice) {
    return CohomClass(lattice, std::vector<Rational>(lattice.rank(), Rational(0)));
  }
  static CohomClass basis(const IntersectionLattice& lattice, std::size_t index,
                          const Rational& scale = 1) {
    auto c = zero(lattice);
    c.coeffs_.at(index) = scale;
    return c;
  }

  std::size_t size() const noexcept { return coeffs_.size(); }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  LatticeId lattice_id() const noexcept { return lattice_; }
  bool belongs_to(const IntersectionLattice& l) const noexcept {
    return lattice_ == l.id() && coeffs_.size() == l.rank();
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q == 0; });
  }
  bool is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return is_integer(q); });
  }

  CohomClass& operator+=(const CohomClass& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  CohomClass& operator-=(const CohomClass& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  CohomClass& operator*=(const Rational& s) {
    for (auto& q : coeffs_) q *= s;
    return *this;
  }
  friend CohomClass operator+(CohomClass a, const CohomClass& b) { return a += b; }
  friend CohomClass operator-(CohomClass a, const CohomClass& b) { return a -= b; }
  friend CohomClass operator*(const Rational& s, CohomClass a) { return a *= s; }
  friend CohomClass operator-(CohomClass a) { return a *= Rational(-1); }

  friend bool operator==(const CohomClass& a, const CohomClass& b) {
    return a.lattice_ == b.lattice_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_same(const CohomClass& o) const {
    if (o.lattice_ != lattice_ || o.coeffs_.size() != coeffs_.size())
      fail(ErrorKind::MismatchedLattice, "classes live on different lattices");
  }

  std::vector<Rational> coeffs_;
  LatticeId lattice_;
};

struct Signature {
  std::size_t b_plus = 0;
  std::size_t b_minus = 0;
  std::size_t b_zero = 0;

  std::size_t rank() const noexcept { return b_plus + b_minus + b_zero; }
  long long index() const noexcept {
    return static_cast<long long>(b_plus) - static_cast<long long>(b_minus);
  }
  friend bool operator==(const Signature&, const Signature&) = default;
};

inline void require_on(const IntersectionLattice& lattice, const CohomClass& a) {
  if (!a.belongs_to(lattice)) fail(ErrorKind::MismatchedLattice, "class is not on this lattice");
}

/// aᵀ·gram·b, exact.
inline Rational pair(const IntersectionLattice& lattice, const CohomClass& a, const CohomClass& b) {
  require_on(lattice, a);
  require_on(lattice, b);
  // Clear denominators once and sum in integers; rational normalisation per
  // term dominates otherwise.
  auto scaled = [](const CohomClass& c, Integer& den) {
    den = 1;
    for (const auto& q : c.coeffs())
      if (!is_integer(q)) den = boost::multiprecision::lcm(den, denominator(q));
    std::vector<Integer> out;
    out.reserve(c.size());
    for (const auto& q : c.coeffs()) out.push_back(numerator(q) * (den / denominator(q)));
    return out;
  };
  Integer da, db;
  const auto ia = scaled(a, da);
  const auto ib = &a == &b ? ia : scaled(b, db);
  if (&a == &b) db = da;
  Integer total = 0;
  for (std::size_t i = 0; i < lattice.rank(); ++i) {
    if (ia[i] == 0) continue;
    Integer row_sum = 0;
    for (const auto& [j, g] : lattice.row(i))
      if (ib[j] != 0) row_sum += ib[j] * g;
    total += ia[i] * row_sum;
  }
  return Rational(total, da * db);
}

inline Rational square(const IntersectionLattice& lattice, const CohomClass& a) {
  return pair(lattice, a, a);
}

/// Inertia by symmetric Gaussian elimination over the rationals. Pivot on the
/// first nonzero diagonal entry; with a zero diagonal and a nonzero q_ij,
/// replace e_i by e_i + e_j first.
inline Signature signature(const IntersectionLattice& lattice) {
  const std::size_t n = lattice.rank();
  RationalMatrix q(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = Rational(lattice.gram(i, j));

  std::vector<std::size_t> remaining(n);
  for (std::size_t i = 0; i < n; ++i) remaining[i] = i;
  Signature sig;

  while (!remaining.empty()) {
    auto pivot = std::find_if(remaining.begin(), remaining.end(),
                              [&](std::size_t i) { return q[i][i] != 0; });
    if (pivot == remaining.end()) {
      std::optional<std::pair<std::size_t, std::size_t>> off;
      for (std::size_t a = 0; a < remaining.size() && !off; ++a)
        for (std::size_t b = a + 1; b < remaining.size() && !off; ++b)
          if (q[remaining[a]][remaining[b]] != 0) off = {remaining[a], remaining[b]};
      if (!off) {
        sig.b_zero += remaining.size();
        break;
      }
      const auto [i, j] = *off;
      const Rational new_diag = q[i][i] + 2 * q[i][j] + q[j][j];
      for (std::size_t k : remaining)
        if (k != i) q[i][k] = q[k][i] = q[i][k] + q[j][k];
      q[i][i] = new_diag;
      pivot = std::find(remaining.begin(), remaining.end(), i);
    }
    const std::size_t p = *pivot;
    remaining.erase(pivot);
    const Rational d = q[p][p];
    (d > 0 ? sig.b_plus : sig.b_minus) += 1;
    for (std::size_t r : remaining) {
      if (q[r][p] == 0) continue;
      const Rational factor = q[r][p] / d;
      for (std::size_t c : remaining) q[r][c] -= factor * q[p][c];
    }
  }
  return sig;
}

inline Integer determinant(const IntegerMatrix& m) { return detail::bareiss_determinant(m); }

/// gram' = Uᵀ·gram·U, the new basis vectors being the columns of U.
/// Labels are kept positionally unless `labels` is supplied.
inline IntersectionLattice change_basis(const IntersectionLattice& lattice, const IntegerMatrix& u,
                                        std::optional<std::vector<std::string>> labels = {}) {
  const std::size_t n = lattice.rank();
  if (u.size() != n || std::any_of(u.begin(), u.end(), [n](const auto& r) { return r.size() != n; }))
    fail(ErrorKind::MismatchedLattice, "basis change matrix has the wrong shape");
  const Integer det = determinant(u);
  if (det != 1 && det != -1)
    fail(ErrorKind::NotUnimodular, "basis change has determinant " + det.str());

  IntegerMatrix gu(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [k, g] : lattice.row(i))
      for (std::size_t j = 0; j < n; ++j)
        if (u[k][j] != 0) gu[i][j] += g * u[k][j];
  IntegerMatrix result(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (u[k][i] != 0)
        for (std::size_t j = 0; j < n; ++j) result[i][j] += u[k][i] * gu[k][j];
  return IntersectionLattice(labels ? std::move(*labels) : lattice.labels(), std::move(result));
}

// Standard forms.

inline IntegerMatrix hyperbolic_gram(std::size_t copies) {
  IntegerMatrix g(2 * copies, std::vector<Integer>(2 * copies, Integer(0)));
  for (std::size_t k = 0; k < copies; ++k) g[2 * k][2 * k + 1] = g[2 * k + 1][2 * k] = 1;
  return g;
}

/// Negative definite E8: -2 on the diagonal, +1 along the Dynkin diagram
/// (chain 1-2-3-4-5-6-7 with node 8 attached to node 5).
inline IntegerMatrix negative_e8_gram() {
  IntegerMatrix g(8, std::vector<Integer>(8, Integer(0)));
  for (std::size_t i = 0; i < 8; ++i) g[i][i] = -2;
  auto link = [&](std::size_t a, std::size_t b) { g[a][b] = g[b][a] = 1; };
  for (std::size_t i = 0; i + 1 < 7; ++i) link(i, i + 1);
  link(4, 7);
  return g;
}

inline IntegerMatrix diagonal_gram(const std::vector<long long>& entries) {
  IntegerMatrix g(entries.size(), std::vector<Integer>(entries.size(), Integer(0)));
  for (std::size_t i = 0; i < entries.size(); ++i) g[i][i] = entries[i];
  return g;
}

inline IntegerMatrix block_sum(const std::vector<IntegerMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  IntegerMatrix g(n, std::vector<Integer>(n, Integer(0)));
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) g[offset + i][offset + j] = b[i][j];
    offset += b.size();
  }
  return g;
}

inline std::vector<std::string> numbered_labels(const std::string& stem, std::size_t count,
                                                std::size_t first = 1) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(stem + std::to_string(first + i));
  return out;
}

}  // namespace conekit
