#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conekit/cones.hpp"
#include "conekit/model.hpp"

namespace conekit {

/// X #_V Y along a square-zero surface V of genus v_genus. Rim tori and τ
/// classes cannot be derived from H² data and are supplied as ranks.
struct FiberSumSpec {
  FourManifoldModel x_model;
  FourManifoldModel y_model;
  CohomClass v_in_x;
  CohomClass v_in_y;
  std::size_t v_genus = 1;
  bool h1_injects_into_y = false;
  std::size_t rim_rank = 0;
  std::size_t tau_rank = 0;
};

struct GoodnessReport {
  bool good = false;
  std::string reason;
};

enum class BasisRole { Fiber, Gamma, X, Y, Rim, Tau };

constexpr std::string_view to_string(BasisRole r) {
  switch (r) {
    case BasisRole::Fiber: return "F";
    case BasisRole::Gamma: return "Gamma";
    case BasisRole::X: return "X";
    case BasisRole::Y: return "Y";
    case BasisRole::Rim: return "Rim";
    case BasisRole::Tau: return "Tau";
  }
  return "?";
}

/// A summand lattice rewritten over {V, γ, complement block}, where
/// V·γ = 1 and the block spans the orthogonal complement of span{V, γ}.
struct SummandFrame {
  CohomClass v;
  CohomClass gamma;
  std::vector<CohomClass> block;
  RationalMatrix to_frame;  // standard coordinates -> (c, g, block coefficients)
};

struct GluedElement {
  BasisRole role;
  std::string label;
  std::optional<CohomClass> in_x;
  std::optional<CohomClass> in_y;
};

/// Role-tagged basis of H²(X #_V Y) in the order F, Γ, X-block, Y-block,
/// rim block, τ block. Element k of the sum lattice is elements[k].
struct GluedBasis {
  IntersectionLattice sum_lattice;
  std::vector<GluedElement> elements;
  SummandFrame x_frame;
  SummandFrame y_frame;
  std::size_t x_begin = 2;
  std::size_t y_begin = 0;
  std::size_t rim_begin = 0;
  std::size_t tau_begin = 0;
  std::size_t rim_count = 0;

  std::size_t x_count() const { return x_frame.block.size(); }
  std::size_t y_count() const { return y_frame.block.size(); }
  CohomClass fiber() const { return CohomClass::basis(sum_lattice, 0); }
  CohomClass gamma() const { return CohomClass::basis(sum_lattice, 1); }
};

struct FiberSum {
  FourManifoldModel model;
  GluedBasis basis;
  GoodnessReport goodness;
};

/// Checks FiberSumSpec invariants (square-zero V on both sides, rim = τ rank,
/// injective H₁(V) → H₁(Y) forcing both ranks to zero, rim rank at most 2·genus).
inline void validate(const FiberSumSpec& spec) {
  require_on(spec.x_model.lattice, spec.v_in_x);
  require_on(spec.y_model.lattice, spec.v_in_y);
  if (square(spec.x_model.lattice, spec.v_in_x) != 0)
    fail(ErrorKind::NotSquareZero, "V in X has square " + to_string(square(spec.x_model.lattice, spec.v_in_x)));
  if (square(spec.y_model.lattice, spec.v_in_y) != 0)
    fail(ErrorKind::NotSquareZero, "V in Y has square " + to_string(square(spec.y_model.lattice, spec.v_in_y)));
  if (spec.rim_rank != spec.tau_rank)
    fail(ErrorKind::InvariantViolation, "rim_rank and tau_rank must agree", "rim_tau_equal");
  if (spec.h1_injects_into_y && spec.rim_rank != 0)
    fail(ErrorKind::InvariantViolation, "H1(V) -> H1(Y) injective forces rim_rank = tau_rank = 0", "lemma_k");
  if (spec.rim_rank > 2 * spec.v_genus)
    fail(ErrorKind::InvariantViolation, "rim_rank exceeds 2 * v_genus", "rim_rank_bound");
}

inline GoodnessReport check_good(const FiberSumSpec& spec) {
  validate(spec);
  if (spec.h1_injects_into_y)
    return {true, "H1(V) -> H1(Y) is injective: no rim tori and tau = 0"};
  if (spec.rim_rank == 0 && spec.tau_rank == 0) return {true, "supplied rim_rank = tau_rank = 0"};
  return {false, "rim_rank = tau_rank = " + std::to_string(spec.rim_rank) + " > 0"};
}

namespace detail {

/// Smallest-index γ with V·γ = ±1 among basis vectors, else the extended
/// Euclid combination over the pairing vector in index order.
inline CohomClass dual_class(const IntersectionLattice& lattice, const CohomClass& v) {
  if (!v.is_integral()) fail(ErrorKind::NoDualClass, "V is not an integral class");
  const std::size_t n = lattice.rank();
  std::vector<Integer> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = numerator(pair(lattice, v, CohomClass::basis(lattice, j)));
  for (int target : {1, -1})
    for (std::size_t j = 0; j < n; ++j)
      if (w[j] == target) return CohomClass::basis(lattice, j, target);

  Integer g = 0;
  std::vector<Integer> x(n, Integer(0));
  for (std::size_t j = 0; j < n; ++j) {
    if (w[j] == 0) continue;
    // Solve s·g + t·w_j = gcd(g, w_j).
    Integer old_r = g, r = w[j], old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      const Integer q = old_r / r;
      Integer tmp = old_r - q * r; old_r = r; r = tmp;
      tmp = old_s - q * s; old_s = s; s = tmp;
      tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    for (auto& xi : x) xi *= old_s;
    x[j] += old_t;
    g = old_r;
  }
  if (g != 1) fail(ErrorKind::NoDualClass, "V is not primitive in the dual lattice (gcd " + g.str() + ")");
  std::vector<Rational> c;
  for (auto& xi : x) c.emplace_back(xi);
  return CohomClass(lattice, std::move(c));
}

/// Integer row echelon form; the nonzero rows are a Z-basis of the row span.
inline std::vector<std::vector<Integer>> hermite_rows(std::vector<std::vector<Integer>> rows) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows.size(); ++col) {
    while (true) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (!best || abs(rows[i][col]) < abs(rows[*best][col]))) best = i;
      if (!best) break;
      std::swap(rows[r], rows[*best]);
      bool cleared = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        const Integer q = rows[i][col] / rows[r][col];
        for (std::size_t k = 0; k < cols; ++k) rows[i][k] -= q * rows[r][k];
        cleared = cleared && rows[i][col] == 0;
      }
      if (cleared) {
        ++r;
        break;
      }
    }
  }
  rows.resize(r);
  return rows;
}

inline bool extends_rank(std::vector<std::vector<Rational>>& echelon, std::vector<Rational> vec) {
  for (const auto& row : echelon) {
    std::size_t lead = 0;
    while (row[lead] == 0) ++lead;
    if (vec[lead] != 0) {
      const Rational f = vec[lead] / row[lead];
      for (std::size_t k = 0; k < vec.size(); ++k) vec[k] -= f * row[k];
    }
  }
  if (std::all_of(vec.begin(), vec.end(), [](const Rational& q) { return q == 0; })) return false;
  echelon.push_back(std::move(vec));
  return true;
}

inline IntegerMatrix columns_matrix(const std::vector<const CohomClass*>& cols) {
  const std::size_t n = cols.size();
  IntegerMatrix m(n, std::vector<Integer>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m[i][j] = numerator((*cols[j])[i]);
  return m;
}

inline SummandFrame make_frame(const IntersectionLattice& lattice, const CohomClass& v) {
  CohomClass gamma = dual_class(lattice, v);
  const Rational gamma_sq = square(lattice, gamma);
  const std::size_t n = lattice.rank();

  std::vector<CohomClass> projections;
  for (std::size_t i = 0; i < n; ++i) {
    const auto e = CohomClass::basis(lattice, i);
    const Rational b = pair(lattice, e, v);
    const Rational a = pair(lattice, e, gamma) - b * gamma_sq;
    projections.push_back(e - a * v - b * gamma);
  }

  auto unimodular_with = [&](const std::vector<CohomClass>& block) {
    std::vector<const CohomClass*> cols{&v, &gamma};
    for (const auto& b : block) cols.push_back(&b);
    const Integer det = determinant(columns_matrix(cols));
    return det == 1 || det == -1;
  };

  std::vector<CohomClass> block;
  std::vector<std::vector<Rational>> echelon;
  for (const auto& p : projections)
    if (block.size() + 2 < n && extends_rank(echelon, p.coeffs())) block.push_back(p);
  if (block.size() + 2 != n || !unimodular_with(block)) {
    std::vector<std::vector<Integer>> rows;
    for (const auto& p : projections) {
      std::vector<Integer> r;
      for (const auto& q : p.coeffs()) r.push_back(numerator(q));
      rows.push_back(std::move(r));
    }
    block.clear();
    for (const auto& r : hermite_rows(std::move(rows))) {
      std::vector<Rational> c(r.begin(), r.end());
      block.emplace_back(lattice, std::move(c));
    }
    if (block.size() + 2 != n || !unimodular_with(block))
      throw std::logic_error("complement of span{V, gamma} is not a direct summand");
  }

  RationalMatrix cols(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    cols[i][0] = v[i];
    cols[i][1] = gamma[i];
    for (std::size_t k = 0; k < block.size(); ++k) cols[i][k + 2] = block[k][i];
  }
  auto inv = invert(std::move(cols));
  if (!inv) throw std::logic_error("summand frame is singular");
  return SummandFrame{v, std::move(gamma), std::move(block), std::move(*inv)};
}

/// Frame coordinates (c, g, block...) of a summand class; exact inverse.
inline std::vector<Rational> frame_coordinates(const IntersectionLattice& lattice, const SummandFrame& frame,
                                               const CohomClass& a) {
  require_on(lattice, a);
  const std::size_t n = lattice.rank();
  std::vector<Rational> t(n, Rational(0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k)
      if (a[k] != 0) t[r] += frame.to_frame[r][k] * a[k];
  auto rebuilt = t[0] * frame.v + t[1] * frame.gamma;
  for (std::size_t k = 0; k < frame.block.size(); ++k) rebuilt += t[k + 2] * frame.block[k];
  if (rebuilt != a) fail(ErrorKind::UnexpandableClass, "class does not expand over {F, Gamma, block}");
  return t;
}

}  // namespace detail

namespace detail {

/// Linear extension F^X -> F, Γ^X -> Γ, block -> block; no matching needed.
inline CohomClass embed_summand(const GluedBasis& basis, bool from_x, const IntersectionLattice& summand,
                                const CohomClass& a) {
  const auto& frame = from_x ? basis.x_frame : basis.y_frame;
  const auto t = frame_coordinates(summand, frame, a);
  std::vector<Rational> out(basis.sum_lattice.rank(), Rational(0));
  out[0] = t[0];
  out[1] = t[1];
  const std::size_t begin = from_x ? basis.x_begin : basis.y_begin;
  for (std::size_t k = 0; k < frame.block.size(); ++k) out[begin + k] = t[k + 2];
  return CohomClass(basis.sum_lattice, std::move(out));
}

}  // namespace detail

/// Glued lattice of X #_V Y: F·F = 0, F·Γ = 1, F ⟂ blocks, Γ² = Γ_X² + Γ_Y²,
/// Γ·X_i = Γ_X·X_i in X, X ⟂ Y, and rim_rank orthogonal hyperbolic
/// (rim, τ) pairs. K = push(K_X) + push(K_Y) + 2F. b₁ follows from
/// χ(M) = χ(X) + χ(Y) − 2χ(V).
inline FiberSum build_sum(const FiberSumSpec& spec) {
  const auto goodness = check_good(spec);
  const auto& X = spec.x_model;
  const auto& Y = spec.y_model;
  auto fx = detail::make_frame(X.lattice, spec.v_in_x);
  auto fy = detail::make_frame(Y.lattice, spec.v_in_y);

  const std::size_t kx = fx.block.size(), ky = fy.block.size(), r = spec.rim_rank;
  const std::size_t n = 2 + kx + ky + 2 * r;
  const std::size_t y_begin = 2 + kx, rim_begin = y_begin + ky, tau_begin = rim_begin + r;

  IntegerMatrix gram(n, std::vector<Integer>(n, Integer(0)));
  auto set = [&](std::size_t i, std::size_t j, const Rational& q) {
    if (!is_integer(q)) throw std::logic_error("non-integral glued pairing");
    gram[i][j] = gram[j][i] = numerator(q);
  };
  set(0, 1, 1);
  set(1, 1, square(X.lattice, fx.gamma) + square(Y.lattice, fy.gamma));
  for (std::size_t i = 0; i < kx; ++i) {
    set(1, 2 + i, pair(X.lattice, fx.gamma, fx.block[i]));
    for (std::size_t j = i; j < kx; ++j) set(2 + i, 2 + j, pair(X.lattice, fx.block[i], fx.block[j]));
  }
  for (std::size_t i = 0; i < ky; ++i) {
    set(1, y_begin + i, pair(Y.lattice, fy.gamma, fy.block[i]));
    for (std::size_t j = i; j < ky; ++j)
      set(y_begin + i, y_begin + j, pair(Y.lattice, fy.block[i], fy.block[j]));
  }
  for (std::size_t k = 0; k < r; ++k) set(rim_begin + k, tau_begin + k, 1);

  std::vector<GluedElement> elements;
  elements.push_back({BasisRole::Fiber, "F", fx.v, fy.v});
  elements.push_back({BasisRole::Gamma, "G", fx.gamma, fy.gamma});
  for (std::size_t i = 0; i < kx; ++i) elements.push_back({BasisRole::X, "x" + std::to_string(i + 1), fx.block[i], std::nullopt});
  for (std::size_t i = 0; i < ky; ++i) elements.push_back({BasisRole::Y, "y" + std::to_string(i + 1), std::nullopt, fy.block[i]});
  for (std::size_t k = 0; k < r; ++k) elements.push_back({BasisRole::Rim, "r" + std::to_string(k + 1), std::nullopt, std::nullopt});
  for (std::size_t k = 0; k < r; ++k) elements.push_back({BasisRole::Tau, "t" + std::to_string(k + 1), std::nullopt, std::nullopt});

  std::vector<std::string> labels;
  for (const auto& e : elements) labels.push_back(e.label);
  IntersectionLattice lattice(std::move(labels), std::move(gram));

  GluedBasis basis{lattice, std::move(elements), std::move(fx), std::move(fy), 2, y_begin, rim_begin, tau_begin, r};

  const auto fiber = basis.fiber();
  CohomClass k = detail::embed_summand(basis, true, X.lattice, X.k_class) +
                 detail::embed_summand(basis, false, Y.lattice, Y.k_class) + Rational(2) * fiber;

  auto euler = [](const FourManifoldModel& m) {
    return 2 - 2 * static_cast<long long>(m.b_one) + static_cast<long long>(m.lattice.rank());
  };
  const long long chi = euler(X) + euler(Y) - 2 * (2 - 2 * static_cast<long long>(spec.v_genus));
  const long long twice_b1 = 2 + static_cast<long long>(n) - chi;
  if (twice_b1 < 0 || twice_b1 % 2 != 0)
    fail(ErrorKind::InvariantViolation,
         "Euler characteristic " + std::to_string(chi) + " is inconsistent with b_2 = " + std::to_string(n),
         "b_one");

  const bool certified = goodness.good && half_space_shape(X, spec.v_in_x) && half_space_shape(Y, spec.v_in_y);
  FourManifoldModel model{X.name + "#" + Y.name,
                          lattice,
                          std::move(k),
                          {},
                          signature(lattice).b_plus,
                          static_cast<std::size_t>(twice_b1 / 2),
                          X.minimal && Y.minimal && spec.v_genus >= 1,
                          fiber,
                          std::nullopt,
                          certified};
  validate(model);
  return FiberSum{std::move(model), std::move(basis), goodness};
}

/// Splits α = Σa_i X_i + Σb_i Y_i + cF + gΓ into α_X = B + c^X F^X and
/// α_Y = Σb_i Y_i + (c − c^X) F^Y + gΓ^Y with B = Σa_i X_i + gΓ^X and
/// c^X = (ρ − B²) / 2g, so that α_X² = ρ and α_Y² = α² − ρ.
inline SplitWitness split_class(const FiberSumSpec& spec, const GluedBasis& basis, const CohomClass& alpha,
                                const Rational& rho) {
  if (!check_good(spec).good) fail(ErrorKind::NotGood, "split_class needs a good sum");
  const auto& L = basis.sum_lattice;
  require_on(L, alpha);
  const Rational sq = square(L, alpha);
  if (sq <= 0) fail(ErrorKind::NonPositiveSquare, "square(alpha) = " + to_string(sq));
  const Rational g = pair(L, alpha, basis.fiber());
  if (g <= 0) fail(ErrorKind::NonPositiveG, "pair(alpha, F) = " + to_string(g));
  if (rho <= 0 || rho >= sq)
    fail(ErrorKind::RhoOutOfRange, "rho = " + to_string(rho) + " not in (0, " + to_string(sq) + ")");

  const auto& X = spec.x_model.lattice;
  const auto& fx = basis.x_frame;
  const auto& fy = basis.y_frame;

  CohomClass b = g * fx.gamma;
  for (std::size_t i = 0; i < fx.block.size(); ++i)
    if (alpha[basis.x_begin + i] != 0) b += alpha[basis.x_begin + i] * fx.block[i];
  const Rational c_x = (rho - square(X, b)) / (2 * g);
  const Rational c_y = alpha[0] - c_x;

  CohomClass alpha_y = c_y * fy.v + g * fy.gamma;
  for (std::size_t i = 0; i < fy.block.size(); ++i)
    if (alpha[basis.y_begin + i] != 0) alpha_y += alpha[basis.y_begin + i] * fy.block[i];
  return SplitWitness{b + c_x * fx.v, std::move(alpha_y), rho};
}

/// Σa_i X_i + Σb_i Y_i + (c^X + c^Y)F + gΓ, after checking both classes pair
/// to the same g with V.
inline CohomClass push_sum_class(const FiberSumSpec& spec, const GluedBasis& basis, const CohomClass& alpha_x,
                                 const CohomClass& alpha_y) {
  const auto& X = spec.x_model.lattice;
  const auto& Y = spec.y_model.lattice;
  require_on(X, alpha_x);
  require_on(Y, alpha_y);
  const Rational gx = pair(X, alpha_x, spec.v_in_x);
  const Rational gy = pair(Y, alpha_y, spec.v_in_y);
  if (gx != gy) fail(ErrorKind::MatchingFailure, "V-pairings differ: " + to_string(gx) + " vs " + to_string(gy));
  const auto tx = detail::frame_coordinates(X, basis.x_frame, alpha_x);
  const auto ty = detail::frame_coordinates(Y, basis.y_frame, alpha_y);
  std::vector<Rational> out(basis.sum_lattice.rank(), Rational(0));
  out[0] = tx[0] + ty[0];
  out[1] = gx;
  for (std::size_t i = 0; i < basis.x_count(); ++i) out[basis.x_begin + i] = tx[i + 2];
  for (std::size_t i = 0; i < basis.y_count(); ++i) out[basis.y_begin + i] = ty[i + 2];
  return CohomClass(basis.sum_lattice, std::move(out));
}

/// Good sum of two half-space summands: member ⇔ α² > 0 and α·F > 0.
/// Members carry the split at ρ = α²/2, re-verified in both summand cones.
inline ConeVerdict sum_cone_contains(const FiberSumSpec& spec, const GluedBasis& basis, const CohomClass& alpha) {
  if (!check_good(spec).good) fail(ErrorKind::NotGood, "sum cone needs a good sum");
  if (!half_space_shape(spec.x_model, spec.v_in_x))
    fail(ErrorKind::HypothesisNotEstablished, spec.x_model.name + ": relative cone of V is not certified half-space");
  if (!half_space_shape(spec.y_model, spec.v_in_y))
    fail(ErrorKind::HypothesisNotEstablished, spec.y_model.name + ": relative cone of V is not certified half-space");

  detail::InequalityChain chain(basis.sum_lattice, alpha);
  chain.square_positive().pairing(basis.fiber(), Relation::Positive, "pair(alpha, F) > 0");
  auto verdict = std::move(chain).verdict("sum-cone", Scope::Exact);
  if (!verdict.member) return verdict;

  auto witness = split_class(spec, basis, alpha, square(basis.sum_lattice, alpha) / 2);
  if (!relative_cone_contains(spec.x_model, spec.v_in_x, witness.alpha_x).member ||
      !relative_cone_contains(spec.y_model, spec.v_in_y, witness.alpha_y).member)
    throw std::logic_error("split witness left a summand relative cone");
  verdict.certificate = std::move(witness);
  return verdict;
}

struct IteratedSum {
  std::vector<FiberSumSpec> specs;  // as actually folded
  std::vector<FiberSum> stages;

  const FourManifoldModel& model() const { return stages.back().model; }
};

/// Left fold of build_sum. For every stage after the first, the left operand
/// and its V are replaced by the previous output and its fiber class. Every
/// stage must be good.
inline IteratedSum iterate_sum(std::vector<FiberSumSpec> specs) {
  if (specs.empty()) fail(ErrorKind::UsageError, "iterate_sum needs at least one stage");
  IteratedSum out;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    FiberSumSpec spec = std::move(specs[i]);
    if (i > 0) {
      spec.x_model = out.stages.back().model;
      spec.v_in_x = *spec.x_model.fiber_class;
    }
    if (!check_good(spec).good)
      fail(ErrorKind::NotGood, "stage " + std::to_string(i) + " is not a good sum", std::to_string(i));
    out.stages.push_back(build_sum(spec));
    out.specs.push_back(std::move(spec));
  }
  return out;
}

}  // namespace conekit
