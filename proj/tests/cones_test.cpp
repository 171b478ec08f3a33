#include <gtest/gtest.h>

#include "conekit/catalog.hpp"
#include "conekit/cones.hpp"
#include "conekit/random.hpp"
#include "oracles.hpp"

namespace conekit {
namespace {

CohomClass cls(const FourManifoldModel& m, std::string_view expr) { return parse_class(m.lattice, expr); }

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::UsageError;
}

TEST(PositiveCone, Examples) {
  const auto t4 = get_model("T4");
  EXPECT_TRUE(positive_cone_contains(t4, cls(t4, "f+G")).member);
  const auto iso = positive_cone_contains(t4, cls(t4, "f"));
  EXPECT_FALSE(iso.member);
  EXPECT_EQ(std::get<ViolatedInequality>(iso.certificate).inequality.lhs, 0);

  const auto k3 = get_model("K3");
  const auto e1 = cls(k3, "e1");
  EXPECT_EQ(oracle::gram_pair(k3.lattice.gram(), e1.coeffs(), e1.coeffs()), -2);
  const auto v = positive_cone_contains(k3, e1);
  EXPECT_FALSE(v.member);
  EXPECT_EQ(std::get<ViolatedInequality>(v.certificate).inequality.lhs, -2);
}

TEST(PositiveCone, MismatchedLattice) {
  const auto t4 = get_model("T4");
  const auto k3 = get_model("K3");
  EXPECT_EQ(kind_of([&] { positive_cone_contains(t4, cls(k3, "u1")); }), ErrorKind::MismatchedLattice);
}

TEST(HalfCone, Examples) {
  const auto t4 = get_model("T4");
  const auto zero = CohomClass::zero(t4.lattice);
  const auto p0 = half_cone_contains(t4, zero, cls(t4, "f+G"));
  EXPECT_TRUE(p0.member);
  EXPECT_EQ(p0.predicate, "positive-cone");
  EXPECT_TRUE(half_cone_contains(t4, cls(t4, "f"), cls(t4, "f+G")).member);
  const auto v = half_cone_contains(t4, cls(t4, "f"), cls(t4, "G-f"));
  EXPECT_FALSE(v.member);
  EXPECT_EQ(std::get<ViolatedInequality>(v.certificate).inequality.lhs, -2);
  // square positive but wrong side of the fiber
  EXPECT_FALSE(half_cone_contains(t4, cls(t4, "f"), cls(t4, "-f-G")).member);
}

TEST(SymplecticB1, EmptyExceptionalListIsPositiveCone) {
  const auto m = get_model("Hyperelliptic");
  ASSERT_TRUE(m.minimal);
  const auto v = symplectic_cone_b1_contains(m, cls(m, "f+G"));
  EXPECT_TRUE(v.member);
  EXPECT_EQ(v.scope, Scope::Exact);
}

TEST(SymplecticB1, E1Examples) {
  const auto e1 = get_model("E1");
  // α = 4h − ΣE_i: square 16 − 9 = 7, pairing 1 with every E_i.
  const auto alpha = cls(e1, "4h-E1-E2-E3-E4-E5-E6-E7-E8-E9");
  EXPECT_EQ(oracle::gram_pair(e1.lattice.gram(), alpha.coeffs(), alpha.coeffs()), 7);
  const auto v = symplectic_cone_b1_contains(e1, alpha);
  EXPECT_TRUE(v.member);
  EXPECT_EQ(v.scope, Scope::StoredExceptionalList);

  // pair(α, E_1) = 0 on the boundary: square 16 − 8 = 8 > 0 but excluded.
  const auto boundary = cls(e1, "4h-E2-E3-E4-E5-E6-E7-E8-E9");
  const auto b = symplectic_cone_b1_contains(e1, boundary);
  EXPECT_FALSE(b.member);
  const auto& ineq = std::get<ViolatedInequality>(b.certificate).inequality;
  EXPECT_EQ(ineq.lhs, 0);
  ASSERT_TRUE(ineq.against.has_value());
  EXPECT_EQ(*ineq.against, cls(e1, "E1"));
  EXPECT_TRUE(certificate_rechecks(e1.lattice, boundary, b));
}

TEST(SymplecticB1, WrongBPlus) {
  const auto t4 = get_model("T4");
  EXPECT_EQ(kind_of([&] { symplectic_cone_b1_contains(t4, cls(t4, "f+G")); }), ErrorKind::WrongBPlus);
}

TEST(RelativeCone, TableRows) {
  const auto t4 = get_model("T4");
  const auto v = relative_cone_contains(t4, *t4.fiber_class, cls(t4, "f+G"));
  EXPECT_TRUE(v.member);
  EXPECT_EQ(v.predicate, "relative-table");
  EXPECT_EQ(std::get<TableRow>(v.certificate).column, "P^F");
  EXPECT_FALSE(relative_cone_contains(t4, *t4.fiber_class, cls(t4, "-f-G")).member);

  const auto d = get_model("TypeD");
  for (const char* probe : {"f+G", "-f-G", "2f+3G", "f"}) {
    const auto r = relative_cone_contains(d, *d.fiber_class, cls(d, probe));
    EXPECT_FALSE(r.member) << probe;
    EXPECT_TRUE(std::get<TableRow>(r.certificate).empty_row);
  }

  const auto h = get_model("Hyperelliptic");
  EXPECT_TRUE(relative_cone_contains(h, *h.fiber_class, cls(h, "-f-G")).member);
}

TEST(RelativeCone, MinimalBPlusOneSignCondition) {
  // A minimal b⁺ = 1 model without a table tag goes through the b⁺ = 1 branch.
  IntersectionLattice L({"a", "b"}, hyperbolic_gram(1));
  FourManifoldModel m{"H", L, CohomClass::zero(L), {}, 1, 0, true, std::nullopt, std::nullopt, false};
  validate(m);
  const auto v_dual = parse_class(L, "a");
  const auto alpha = parse_class(L, "-a+b");  // square −2
  EXPECT_FALSE(relative_cone_contains(m, v_dual, alpha).member);
  const auto beta = parse_class(L, "2a-b");  // square −4
  EXPECT_FALSE(relative_cone_contains(m, v_dual, beta).member);
  const auto gamma = parse_class(L, "-a-b");  // square 2, pair with a is −1
  const auto r = relative_cone_contains(m, v_dual, gamma);
  EXPECT_FALSE(r.member);
  EXPECT_EQ(r.predicate, "relative-b1");
  EXPECT_EQ(std::get<ViolatedInequality>(r.certificate).inequality.lhs, -1);
  EXPECT_TRUE(relative_cone_contains(m, -v_dual, gamma).member);
}

TEST(RelativeCone, UpperBoundBranchIsLabelled) {
  const auto k3 = get_model("K3");
  const auto v = relative_cone_contains(k3, cls(k3, "u2"), cls(k3, "u2+v2"));
  EXPECT_TRUE(v.member);
  EXPECT_EQ(v.predicate, "relative-upper-bound-only");
  EXPECT_EQ(v.scope, Scope::UpperBoundOnly);
}

TEST(ConjectureCone, Examples) {
  const auto t4 = get_model("T4");
  EXPECT_TRUE(conjecture_cone_contains(t4, cls(t4, "f+G")).member);
  const auto s2 = get_model("T2xSigma2");
  const auto a = cls(s2, "2F+G");
  EXPECT_EQ(oracle::gram_pair(s2.lattice.gram(), a.coeffs(), a.coeffs()), 4);
  EXPECT_EQ(oracle::gram_pair(s2.lattice.gram(), a.coeffs(), s2.k_class.coeffs()), 2);
  EXPECT_TRUE(conjecture_cone_contains(s2, a).member);
  const auto b = cls(s2, "x1+x2");
  EXPECT_EQ(oracle::gram_pair(s2.lattice.gram(), b.coeffs(), b.coeffs()), 2);
  const auto v = conjecture_cone_contains(s2, b);
  EXPECT_FALSE(v.member);
  EXPECT_EQ(std::get<ViolatedInequality>(v.certificate).inequality.relation, Relation::NonZero);
}

TEST(KOfClass, Examples) {
  const auto t4 = get_model("T4");
  EXPECT_EQ(k_of_class(t4, CohomClass::zero(t4.lattice)), 0);
  const auto k3 = get_model("K3");
  const auto a = cls(k3, "u1+v1");
  ASSERT_EQ(oracle::gram_pair(k3.lattice.gram(), a.coeffs(), a.coeffs()), 2);
  EXPECT_EQ(k_of_class(k3, a), 1);
  const auto s2 = get_model("T2xSigma2");
  EXPECT_EQ(k_of_class(s2, cls(s2, "G")), -1);
}

TEST(LemmaVD, Examples) {
  const auto s2 = get_model("T2xSigma2");
  const auto f = *s2.fiber_class;
  const auto pred = lemma_vd_cone(s2, f, 2, true);
  EXPECT_TRUE(pred(cls(s2, "2F+G")).member);
  EXPECT_FALSE(pred(cls(s2, "F")).member);
  EXPECT_TRUE(pred(cls(s2, "-2F-G")).member);
  EXPECT_EQ(kind_of([&] { lemma_vd_cone(s2, f, 2, false); }), ErrorKind::HypothesisNotAsserted);
  EXPECT_EQ(kind_of([&] { lemma_vd_cone(s2, f, 3, true); }), ErrorKind::KMismatch);
  EXPECT_EQ(kind_of([&] { lemma_vd_cone(s2, f, 0, true); }), ErrorKind::KMismatch);
}

// Property suites over every catalog model.

class ConeProperties : public ::testing::TestWithParam<std::string> {};

TEST_P(ConeProperties, ChainOfInclusionsAndCertificates) {
  const auto m = get_model(GetParam());
  const auto& L = m.lattice;
  std::vector<CohomClass> v_classes;
  if (m.fiber_class) v_classes.push_back(*m.fiber_class);
  v_classes.push_back(CohomClass::basis(L, 1));
  const std::string name = GetParam();
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto rng = sample_stream(17, std::hash<std::string>{}(GetParam()) & 0xffff, i);
    auto alpha = random_class(rng, L);
    if (name == "E1" && i % 2 == 0) {
      // bias toward positive squares on the odd b⁺ = 1 form
      std::vector<Rational> c = alpha.coeffs();
      c[0] *= 4;
      alpha = CohomClass(L, c);
    }
    const bool positive = positive_cone_contains(m, alpha).member;
    for (const auto& v : v_classes) {
      const auto rel = relative_cone_contains(m, v, alpha);
      ASSERT_TRUE(certificate_rechecks(L, alpha, rel)) << format_class(L, alpha);
      if (rel.member) {
        // Table rows listing the full positive cone carry no fiber-side condition.
        const auto* row = std::get_if<TableRow>(&rel.certificate);
        if (!row || row->column != "P") {
          EXPECT_GT(pair(L, alpha, v), 0);
        }
        EXPECT_TRUE(positive);
      }
      if (m.b_plus == 1 && !(m.fiber_class && *m.fiber_class == v && (m.cone_table_tag || m.fiber_cone_half_space))) {
        const auto flipped = relative_cone_contains(m, -v, alpha);
        const auto sym = symplectic_cone_b1_contains(m, alpha);
        EXPECT_EQ(flipped.member, sym.member && pair(L, alpha, v) < 0);
      }
    }
    const auto conj = conjecture_cone_contains(m, alpha);
    EXPECT_TRUE(certificate_rechecks(L, alpha, conj));
    EXPECT_EQ(conj.member, conjecture_cone_contains(m, -alpha).member);
    if (conj.member) {
      EXPECT_TRUE(positive);
    }
    if (m.b_plus == 1) {
      const auto sym = symplectic_cone_b1_contains(m, alpha);
      EXPECT_TRUE(certificate_rechecks(L, alpha, sym));
      if (sym.member) {
        EXPECT_TRUE(positive);
      }
    }
  }
}

TEST_P(ConeProperties, KOfClassIntegral) {
  const auto m = get_model(GetParam());
  for (std::uint64_t i = 0; i < 300; ++i) {
    auto rng = sample_stream(23, 0, i);
    const auto a = random_integral_class(rng, m.lattice);
    EXPECT_TRUE(is_integer(k_of_class(m, a))) << format_class(m.lattice, a);
  }
}

INSTANTIATE_TEST_SUITE_P(Catalog, ConeProperties,
                         ::testing::Values("T4", "PrimaryKodaira", "Hyperelliptic", "TypeD", "TypeEH", "T2xSigma2",
                                           "T2xSigma3", "E1", "K3"));

}  // namespace
}  // namespace conekit
