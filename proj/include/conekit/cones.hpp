#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "conekit/model.hpp"

namespace conekit {

enum class Quantity { Square, Pairing };
enum class Relation { Positive, NonZero };

/// One strict inequality on α: square(α) or pair(α, against), required to be
/// > 0 or ≠ 0. `lhs` is the evaluated left-hand side.
struct Inequality {
  std::string description;
  Quantity quantity = Quantity::Square;
  std::optional<CohomClass> against;
  Rational lhs;
  Relation relation = Relation::Positive;

  bool holds() const { return relation == Relation::Positive ? lhs > 0 : lhs != 0; }
  friend bool operator==(const Inequality&, const Inequality&) = default;
};

struct ViolatedInequality {
  Inequality inequality;
  friend bool operator==(const ViolatedInequality&, const ViolatedInequality&) = default;
};

/// The inequalities a member satisfied, in evaluation order.
struct SatisfiedInequalities {
  std::vector<Inequality> checks;
  friend bool operator==(const SatisfiedInequalities&, const SatisfiedInequalities&) = default;
};

struct SplitWitness {
  CohomClass alpha_x;
  CohomClass alpha_y;
  Rational rho;
  friend bool operator==(const SplitWitness&, const SplitWitness&) = default;
};

struct TableRow {
  ConeTableTag tag;
  std::string column;  // "P", "P^F" or "empty"
  bool empty_row = false;
  friend bool operator==(const TableRow&, const TableRow&) = default;
};

using Certificate = std::variant<ViolatedInequality, SatisfiedInequalities, SplitWitness, TableRow>;

enum class Scope { Exact, UpperBoundOnly, StoredExceptionalList };

constexpr std::string_view to_string(Scope s) {
  switch (s) {
    case Scope::Exact: return "exact";
    case Scope::UpperBoundOnly: return "upper-bound-only";
    case Scope::StoredExceptionalList: return "stored-exceptional-list";
  }
  return "exact";
}

struct ConeVerdict {
  bool member = false;
  std::string predicate;
  Scope scope = Scope::Exact;
  Certificate certificate;
};

namespace detail {

/// Evaluates inequalities in order and stops at the first violation.
class InequalityChain {
 public:
  InequalityChain(const IntersectionLattice& lattice, const CohomClass& alpha)
      : lattice_(lattice), alpha_(alpha) {
    require_on(lattice, alpha);
  }

  InequalityChain& square_positive() {
    if (!failed_) push({"square(alpha) > 0", Quantity::Square, std::nullopt, square(lattice_, alpha_), Relation::Positive});
    return *this;
  }
  InequalityChain& pairing(const CohomClass& against, Relation rel, std::string description) {
    if (!failed_) {
      require_on(lattice_, against);
      push({std::move(description), Quantity::Pairing, against, pair(lattice_, alpha_, against), rel});
    }
    return *this;
  }

  ConeVerdict verdict(std::string predicate, Scope scope) {
    if (failed_) return {false, std::move(predicate), scope, ViolatedInequality{std::move(*failed_)}};
    return {true, std::move(predicate), scope, SatisfiedInequalities{std::move(passed_)}};
  }

  bool ok() const { return !failed_; }

 private:
  void push(Inequality ineq) {
    if (ineq.holds())
      passed_.push_back(std::move(ineq));
    else
      failed_ = std::move(ineq);
  }

  const IntersectionLattice& lattice_;
  const CohomClass& alpha_;
  std::vector<Inequality> passed_;
  std::optional<Inequality> failed_;
};

}  // namespace detail

/// Re-evaluates a recorded inequality on α from scratch.
inline Rational evaluate(const IntersectionLattice& lattice, const CohomClass& alpha,
                         const Inequality& ineq) {
  if (ineq.quantity == Quantity::Square) return square(lattice, alpha);
  if (!ineq.against) fail(ErrorKind::SchemaError, "pairing inequality without a class");
  return pair(lattice, alpha, *ineq.against);
}

/// True when the certificate of `v` re-checks against α: a violated
/// inequality re-evaluates to a violation, satisfied ones to satisfaction,
/// and an empty-table-row certificate accompanies a non-member. Split
/// witnesses are checked by the fiber-sum layer.
inline bool certificate_rechecks(const IntersectionLattice& lattice, const CohomClass& alpha,
                                 const ConeVerdict& v) {
  if (const auto* bad = std::get_if<ViolatedInequality>(&v.certificate)) {
    const Rational lhs = evaluate(lattice, alpha, bad->inequality);
    return !v.member && lhs == bad->inequality.lhs && !bad->inequality.holds();
  }
  if (const auto* good = std::get_if<SatisfiedInequalities>(&v.certificate)) {
    if (!v.member) return false;
    for (const auto& ineq : good->checks)
      if (evaluate(lattice, alpha, ineq) != ineq.lhs || !ineq.holds()) return false;
    return true;
  }
  if (const auto* row = std::get_if<TableRow>(&v.certificate)) return v.member != row->empty_row;
  return v.member;
}

/// α ∈ P_M: square(α) > 0.
inline ConeVerdict positive_cone_contains(const FourManifoldModel& m, const CohomClass& alpha) {
  return detail::InequalityChain(m.lattice, alpha).square_positive().verdict("positive-cone", Scope::Exact);
}

/// α ∈ P^β: square(α) > 0 and α·β > 0, with P^0 = P_M.
inline ConeVerdict half_cone_contains(const FourManifoldModel& m, const CohomClass& beta,
                                      const CohomClass& alpha) {
  require_on(m.lattice, beta);
  if (beta.is_zero()) return positive_cone_contains(m, alpha);
  return detail::InequalityChain(m.lattice, alpha)
      .square_positive()
      .pairing(beta, Relation::Positive, "pair(alpha, beta) > 0")
      .verdict("half-cone", Scope::Exact);
}

namespace detail {

inline Scope exceptional_scope(const FourManifoldModel& m) {
  return m.minimal ? Scope::Exact : Scope::StoredExceptionalList;
}

inline InequalityChain& exceptional_checks(InequalityChain& chain, const FourManifoldModel& m) {
  for (std::size_t i = 0; i < m.exceptional.size() && chain.ok(); ++i)
    chain.pairing(m.exceptional[i], Relation::NonZero,
                  "|pair(alpha, E" + std::to_string(i) + ")| > 0");
  return chain;
}

}  // namespace detail

/// b⁺ = 1 symplectic cone: α ∈ P_M with α·E ≠ 0 for every stored exceptional
/// class E. The quantifier runs over the stored list only; non-minimal models
/// report scope stored-exceptional-list.
inline ConeVerdict symplectic_cone_b1_contains(const FourManifoldModel& m, const CohomClass& alpha) {
  if (m.b_plus != 1)
    fail(ErrorKind::WrongBPlus, m.name + " has b_plus " + std::to_string(m.b_plus) + ", expected 1");
  detail::InequalityChain chain(m.lattice, alpha);
  chain.square_positive();
  detail::exceptional_checks(chain, m);
  return std::move(chain).verdict("symplectic-b1", detail::exceptional_scope(m));
}

/// The table's C_M column for a tagged T²-bundle: P_M on every row.
inline ConeVerdict symplectic_cone_table_contains(const FourManifoldModel& m, const CohomClass& alpha) {
  if (!m.cone_table_tag) fail(ErrorKind::HypothesisNotEstablished, m.name + " has no table row");
  auto v = detail::InequalityChain(m.lattice, alpha).square_positive().verdict("symplectic-table", Scope::Exact);
  if (v.member) v.certificate = TableRow{*m.cone_table_tag, "P", false};
  return v;
}

/// Which exact rule, if any, certifies C^V_M = {α ∈ P : α·V > 0}.
inline std::optional<std::string> half_space_shape(const FourManifoldModel& m, const CohomClass& v_dual) {
  require_on(m.lattice, v_dual);
  const bool is_fiber = m.fiber_class && *m.fiber_class == v_dual;
  if (is_fiber && m.cone_table_tag &&
      (*m.cone_table_tag == ConeTableTag::T4 || *m.cone_table_tag == ConeTableTag::PrimaryKodaira))
    return "table:" + std::string(to_string(*m.cone_table_tag));
  if (is_fiber && m.cone_table_tag) return std::nullopt;
  if (is_fiber && m.fiber_cone_half_space) return "fiber-sum";
  if (m.b_plus == 1 && m.minimal) return "b_plus=1,minimal";
  return std::nullopt;
}

/// Relative cone C^V_M. Dispatch order: table row (V the tagged fiber),
/// certified fiber sum (V the fiber), b⁺ = 1 formula, otherwise the
/// trivial-inclusion upper bound labelled upper-bound-only.
inline ConeVerdict relative_cone_contains(const FourManifoldModel& m, const CohomClass& v_dual,
                                          const CohomClass& alpha) {
  require_on(m.lattice, v_dual);
  require_on(m.lattice, alpha);
  const bool is_fiber = m.fiber_class && *m.fiber_class == v_dual;

  if (is_fiber && m.cone_table_tag) {
    const auto tag = *m.cone_table_tag;
    if (tag == ConeTableTag::TypeD)
      return {false, "relative-table", Scope::Exact, TableRow{tag, "empty", true}};
    detail::InequalityChain chain(m.lattice, alpha);
    chain.square_positive();
    const bool half = tag == ConeTableTag::T4 || tag == ConeTableTag::PrimaryKodaira;
    if (half) chain.pairing(v_dual, Relation::Positive, "pair(alpha, F) > 0");
    auto v = std::move(chain).verdict("relative-table", Scope::Exact);
    if (v.member) v.certificate = TableRow{tag, half ? "P^F" : "P", false};
    return v;
  }

  if (is_fiber && m.fiber_cone_half_space)
    return detail::InequalityChain(m.lattice, alpha)
        .square_positive()
        .pairing(v_dual, Relation::Positive, "pair(alpha, F) > 0")
        .verdict("relative-fiber-sum", Scope::Exact);

  detail::InequalityChain chain(m.lattice, alpha);
  chain.square_positive();
  detail::exceptional_checks(chain, m);
  chain.pairing(v_dual, Relation::Positive, "pair(alpha, V) > 0");
  if (m.b_plus == 1) return std::move(chain).verdict("relative-b1", detail::exceptional_scope(m));
  return std::move(chain).verdict("relative-upper-bound-only", Scope::UpperBoundOnly);
}

/// α ∈ P^{c₁} ∪ P^{-c₁}; with torsion K this is P_M.
inline ConeVerdict conjecture_cone_contains(const FourManifoldModel& m, const CohomClass& alpha) {
  detail::InequalityChain chain(m.lattice, alpha);
  chain.square_positive();
  if (!m.k_class.is_zero()) chain.pairing(m.k_class, Relation::NonZero, "pair(alpha, K) != 0");
  return std::move(chain).verdict("conjecture", Scope::Exact);
}

/// k(A) = (A·A − K·A) / 2.
inline Rational k_of_class(const FourManifoldModel& m, const CohomClass& a) {
  return (square(m.lattice, a) - pair(m.lattice, m.k_class, a)) / 2;
}

/// The cone P^{c₁} ∪ P^{-c₁} obtained from a half-space relative cone of V
/// when K = a·[V]^D, using both orientations of V.
class LemmaVDPredicate {
 public:
  ConeVerdict operator()(const CohomClass& alpha) const {
    require_on(model_->lattice, alpha);
    const Rational along = pair(model_->lattice, alpha, v_dual_);
    const CohomClass oriented = along < 0 ? -v_dual_ : v_dual_;
    auto v = detail::InequalityChain(model_->lattice, alpha)
                 .square_positive()
                 .pairing(model_->k_class, Relation::NonZero, "pair(alpha, K) != 0")
                 .pairing(oriented, Relation::Positive, "pair(alpha, +-V) > 0")
                 .verdict("lemma-VD", Scope::Exact);
    return v;
  }

  const CohomClass& v_dual() const { return v_dual_; }
  const Rational& factor() const { return factor_; }

 private:
  friend LemmaVDPredicate lemma_vd_cone(const FourManifoldModel&, const CohomClass&, const Rational&, bool);
  LemmaVDPredicate(const FourManifoldModel& m, CohomClass v, Rational a)
      : model_(&m), v_dual_(std::move(v)), factor_(std::move(a)) {}

  const FourManifoldModel* model_;
  CohomClass v_dual_;
  Rational factor_;
};

/// Builds the two-orientation predicate for K = a·[V]^D. `half_space_asserted` is the caller's
/// assertion that C^V_M = {α ∈ P : α·V > 0}. The model must outlive the
/// returned predicate.
inline LemmaVDPredicate lemma_vd_cone(const FourManifoldModel& m, const CohomClass& v_dual,
                                      const Rational& a, bool half_space_asserted) {
  require_on(m.lattice, v_dual);
  if (!half_space_asserted)
    fail(ErrorKind::HypothesisNotAsserted, "C^V_M half-space shape was not asserted");
  if (a == 0) fail(ErrorKind::KMismatch, "factor a must be nonzero");
  if (m.k_class != a * v_dual)
    fail(ErrorKind::KMismatch, "k_class is not " + to_string(a) + " times V");
  return LemmaVDPredicate(m, v_dual, a);
}

}  // namespace conekit
