#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conekit/lattice.hpp"

namespace conekit {

/// Rows of the T²-bundle-over-T² table (types (e)-(h) share one row).
enum class ConeTableTag { T4, PrimaryKodaira, Hyperelliptic, TypeD, TypeEH };

constexpr std::string_view to_string(ConeTableTag tag) {
  switch (tag) {
    case ConeTableTag::T4: return "T4";
    case ConeTableTag::PrimaryKodaira: return "PrimaryKodaira";
    case ConeTableTag::Hyperelliptic: return "Hyperelliptic";
    case ConeTableTag::TypeD: return "TypeD";
    case ConeTableTag::TypeEH: return "TypeEH";
  }
  return "None";
}

inline std::optional<ConeTableTag> parse_table_tag(std::string_view s) {
  for (auto tag : {ConeTableTag::T4, ConeTableTag::PrimaryKodaira, ConeTableTag::Hyperelliptic,
                   ConeTableTag::TypeD, ConeTableTag::TypeEH})
    if (to_string(tag) == s) return tag;
  return std::nullopt;
}

/// A closed symplectic 4-manifold as seen through H²: the intersection
/// lattice plus the characteristic data the cone predicates need.
struct FourManifoldModel {
  std::string name;
  IntersectionLattice lattice;
  CohomClass k_class;                  // canonical class; torsion K is the zero vector
  std::vector<CohomClass> exceptional;  // the stored part of the exceptional set
  std::size_t b_plus = 0;
  std::size_t b_one = 0;
  bool minimal = false;
  std::optional<CohomClass> fiber_class;
  std::optional<ConeTableTag> cone_table_tag;
  // Set when the relative cone of fiber_class is known to be the half-space
  // {α ∈ P : α·F > 0}, i.e. the model is a certified good fiber sum.
  bool fiber_cone_half_space = false;

  friend bool operator==(const FourManifoldModel&, const FourManifoldModel&) = default;
};

/// Checks every model invariant; throws InvariantViolation naming the first
/// one that fails.
inline void validate(const FourManifoldModel& m) {
  auto violated = [](const std::string& what, const std::string& name) {
    fail(ErrorKind::InvariantViolation, what, name);
  };
  const auto& L = m.lattice;
  if (!m.k_class.belongs_to(L)) violated("k_class is not on the model lattice", "k_class");
  if (m.b_plus == 0) violated("b_plus must be positive", "b_plus_positive");
  const auto sig = signature(L);
  if (sig.b_plus != m.b_plus)
    violated("declared b_plus " + std::to_string(m.b_plus) + " but the form has b_plus " +
                 std::to_string(sig.b_plus),
             "b_plus");
  for (std::size_t i = 0; i < m.exceptional.size(); ++i) {
    const auto& e = m.exceptional[i];
    if (!e.belongs_to(L)) violated("exceptional class " + std::to_string(i) + " is not on the lattice", "exceptional_lattice");
    if (square(L, e) != -1)
      violated("exceptional class " + std::to_string(i) + " has square " + to_string(square(L, e)),
               "exceptional_square");
  }
  if (m.minimal && !m.exceptional.empty())
    violated("a minimal model cannot carry exceptional classes", "minimal_exceptional");
  if (m.fiber_class) {
    if (!m.fiber_class->belongs_to(L)) violated("fiber_class is not on the lattice", "fiber_lattice");
    if (square(L, *m.fiber_class) != 0)
      violated("fiber_class has square " + to_string(square(L, *m.fiber_class)), "fiber_square");
  }
  if (m.fiber_cone_half_space && !m.fiber_class)
    violated("fiber_cone_half_space requires a fiber_class", "fiber_cone_half_space");
}

}  // namespace conekit
