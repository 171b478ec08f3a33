#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "conekit/catalog.hpp"
#include "conekit/serialize.hpp"
#include "oracles.hpp"

namespace conekit {
namespace {

std::string detail_of(const std::function<void()>& f, ErrorKind expected) {
  try {
    f();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), expected) << e.what();
    return e.detail();
  }
  ADD_FAILURE() << "no error thrown";
  return {};
}

const std::vector<std::string> kAll = {"T4",        "PrimaryKodaira", "Hyperelliptic", "TypeD", "TypeEH",
                                       "T2xSigma2", "T2xSigma3",      "T2xSigma4",     "T2xSigma5", "E1", "K3"};

TEST(Catalog, PinnedInvariants) {
  EXPECT_EQ(get_model("T4").b_plus, 3u);
  EXPECT_EQ(oracle::eigen_inertia(get_model("T4").lattice.gram()).b_plus, 3u);
  EXPECT_EQ(get_model("K3").lattice.rank(), 22u);
  const auto e1 = get_model("E1");
  EXPECT_EQ(e1.lattice.rank(), 10u);
  EXPECT_EQ(e1.b_plus, 1u);
  EXPECT_EQ(format_class(e1.lattice, *e1.fiber_class), "3h-E1-E2-E3-E4-E5-E6-E7-E8-E9");
  for (int i = 1; i <= 9; ++i) {
    const auto ei = parse_class(e1.lattice, "E" + std::to_string(i));
    EXPECT_NE(std::find(e1.exceptional.begin(), e1.exceptional.end(), ei), e1.exceptional.end());
  }
  const auto k3 = get_model("K3");
  ASSERT_TRUE(k3.fiber_class);
  EXPECT_EQ(square(k3.lattice, *k3.fiber_class), 0);
  EXPECT_TRUE(k3.minimal);
}

TEST(Catalog, EveryModelMatchesSignatureOracle) {
  for (const auto& name : kAll) {
    const auto m = get_model(name);
    EXPECT_EQ(m.b_plus, oracle::eigen_inertia(m.lattice.gram()).b_plus) << name;
    EXPECT_EQ(oracle::rational_det([&] {
                std::vector<std::vector<Rational>> a;
                for (const auto& row : m.lattice.gram()) a.emplace_back(row.begin(), row.end());
                return a;
              }()) * oracle::rational_det([&] {
                std::vector<std::vector<Rational>> a;
                for (const auto& row : m.lattice.gram()) a.emplace_back(row.begin(), row.end());
                return a;
              }()),
              1)
        << name << " is not unimodular";
    for (const auto& e : m.exceptional) {
      EXPECT_EQ(square(m.lattice, e), -1);
      EXPECT_EQ(pair(m.lattice, e, m.k_class), -1) << name;  // adjunction for spheres of square -1
    }
  }
}

TEST(Catalog, TypeDRelativeConeIsEmpty) {
  const auto d = get_model("TypeD");
  for (const char* probe : {"f+G", "2f+G", "f+5G", "-f-G"}) {
    const auto v = relative_cone_contains(d, *d.fiber_class, parse_class(d.lattice, probe));
    EXPECT_FALSE(v.member);
    EXPECT_TRUE(std::get<TableRow>(v.certificate).empty_row);
  }
}

TEST(Catalog, SigmaFamilyKunnethCount) {
  for (std::size_t g = 2; g <= 5; ++g) {
    // Künneth: b2(T² × Σ_g) = 1·1 + 2·2g + 1·1, signature zero.
    const std::size_t b2 = 1 + 2 * (2 * g) + 1;
    const auto m = get_model("T2xSigma" + std::to_string(g));
    EXPECT_EQ(m.lattice.rank(), b2);
    EXPECT_EQ(signature(m.lattice), (Signature{b2 / 2, b2 / 2, 0}));
    EXPECT_EQ(oracle::eigen_inertia(m.lattice.gram()), (Signature{b2 / 2, b2 / 2, 0}));
    EXPECT_EQ(m.b_one, 2 + 2 * g);
    EXPECT_EQ(m.k_class, Rational(2 * g - 2) * *m.fiber_class);
    EXPECT_TRUE(m.minimal);
    EXPECT_EQ(get_model("T2xSigma(" + std::to_string(g) + ")"), m);
  }
}

TEST(Catalog, UnknownModel) {
  detail_of([] { get_model("S4"); }, ErrorKind::UnknownModel);
  detail_of([] { get_model("T2xSigma1"); }, ErrorKind::UnknownModel);
}

TEST(LoadModel, RoundTripEveryModel) {
  for (const auto& name : kAll) {
    const auto m = get_model(name);
    const auto text = model_to_json(m).dump();
    EXPECT_EQ(load_model(Json::parse(text)), m) << name;
  }
}

TEST(LoadModel, RejectsAsymmetricGram) {
  auto j = model_to_json(get_model("Hyperelliptic"));
  j["lattice"]["gram"][0][1] = 2;
  EXPECT_EQ(detail_of([&] { load_model(j); }, ErrorKind::InvariantViolation), "symmetry");
}

TEST(LoadModel, RejectsWrongBPlus) {
  auto j = model_to_json(get_model("T4"));
  j["b_plus"] = 2;
  EXPECT_EQ(detail_of([&] { load_model(j); }, ErrorKind::InvariantViolation), "b_plus");
}

TEST(LoadModel, SchemaErrors) {
  detail_of([] { load_model(Json::parse(R"({"name": "x"})")); }, ErrorKind::SchemaError);
  auto j = model_to_json(get_model("T4"));
  j["k_class"] = Json::array({1, 2});
  detail_of([&] { load_model(j); }, ErrorKind::SchemaError);
  j = model_to_json(get_model("T4"));
  j["k_class"][0] = Json::array({2, 4});  // unreduced fraction
  detail_of([&] { load_model(j); }, ErrorKind::SchemaError);
}

TEST(LoadModel, RejectsIsotropyFailures) {
  auto j = model_to_json(get_model("T4"));
  j["fiber_class"] = "f+G";
  EXPECT_EQ(detail_of([&] { load_model(j); }, ErrorKind::InvariantViolation), "fiber_square");
}

TEST(CatalogDir, OverrideShadowsBuiltin) {
  const auto dir = std::filesystem::temp_directory_path() / "conekit_catalog_test";
  std::filesystem::create_directories(dir);
  auto m = get_model("Hyperelliptic");
  m.name = "T4";
  {
    std::ofstream(dir / "T4.json") << model_to_json(m).dump(2);
    std::ofstream(dir / "Extra.json") << model_to_json(get_model("TypeEH")).dump(2);
  }
  const Catalog cat(dir);
  EXPECT_EQ(cat.get("T4").lattice.rank(), 2u);
  EXPECT_EQ(cat.get("K3").lattice.rank(), 22u);
  const auto names = cat.names();
  EXPECT_NE(std::find(names.begin(), names.end(), "Extra"), names.end());
  EXPECT_EQ(cat.resolve((dir / "Extra.json").string()), get_model("TypeEH"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace conekit
