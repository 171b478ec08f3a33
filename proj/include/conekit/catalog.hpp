#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conekit/serialize.hpp"

namespace conekit {

struct CatalogEntry {
  FourManifoldModel model;
  std::string provenance_notes;
};

namespace detail {

inline FourManifoldModel torus_bundle(const std::string& name, std::size_t rank, std::size_t b_plus,
                                      std::size_t b_one, ConeTableTag tag) {
  std::vector<std::string> labels{"f", "G"};
  for (std::size_t i = 1; i + 2 <= rank; ++i) labels.push_back("x" + std::to_string(i));
  IntersectionLattice lattice(std::move(labels), hyperbolic_gram(rank / 2));
  return FourManifoldModel{name,      lattice, CohomClass::zero(lattice), {},  b_plus, b_one,
                           true,      CohomClass::basis(lattice, 0),      tag, false};
}

inline CatalogEntry t4_entry() {
  return {torus_bundle("T4", 6, 3, 4, ConeTableTag::T4),
          "H^2(T^4) = 3H in the basis f,G,x1..x4 with pairings f.G = x1.x2 = x3.x4 = 1; "
          "K = 0 (trivial canonical bundle); fiber f = [T^2_f]; b_1 = 4 and both cones from the "
          "T^2-bundle table row T^4 (C = P, C^F = P^F)."};
}

inline CatalogEntry primary_kodaira_entry() {
  return {torus_bundle("PrimaryKodaira", 4, 2, 3, ConeTableTag::PrimaryKodaira),
          "b_1 = 3 from the table; chi = 0 and sigma = 0 give b_2 = 4, form 2H; K torsion; "
          "cones from the table row (C = P, C^F = P^F)."};
}

inline CatalogEntry hyperelliptic_entry() {
  return {torus_bundle("Hyperelliptic", 2, 1, 2, ConeTableTag::Hyperelliptic),
          "b_1 = 2 from the table; chi = 0 and sigma = 0 give b_2 = 2, form H; K torsion; "
          "cones from the table row (C = P, C^F = P)."};
}

inline CatalogEntry type_d_entry() {
  return {torus_bundle("TypeD", 2, 1, 2, ConeTableTag::TypeD),
          "b_1 = 2 from the table; form H; K torsion; table row (d): C = P, C^F empty."};
}

inline CatalogEntry type_eh_entry() {
  return {torus_bundle("TypeEH", 2, 1, 2, ConeTableTag::TypeEH),
          "types (e)-(h) share one table row: b_1 = 2, form H, K torsion, C = P, C^F = P."};
}

inline CatalogEntry t2_sigma_entry(std::size_t genus) {
  std::vector<std::string> labels{"F", "G"};
  for (auto& l : numbered_labels("x", 4 * (genus - 1))) labels.push_back(l);
  for (auto& l : numbered_labels("y", 4)) labels.push_back(l);
  IntersectionLattice lattice(std::move(labels), hyperbolic_gram(1 + 2 * genus));
  const auto fiber = CohomClass::basis(lattice, 0);
  const Rational k_factor = Rational(2 * static_cast<long long>(genus) - 2);
  FourManifoldModel m{"T2xSigma" + std::to_string(genus),
                      lattice,
                      k_factor * fiber,
                      {},
                      1 + 2 * genus,
                      2 + 2 * genus,
                      true,
                      fiber,
                      std::nullopt,
                      true};
  return {std::move(m),
          "Kunneth: b_2 = 2 + 4g = rank, form (1+2g)H with F.G = 1 (fiber and section); "
          "basis F,G,x1..x_{4g-4},y1..y4 matches the iterated fiber sum of T^4 along the fiber; "
          "K = (2g-2)F since K is proportional to the fiber class and K.G = 2g-2 by adjunction "
          "on the section; b_1 = 2 + 2g; relative cone of F is the half-space (good iterated sum)."};
}

inline std::vector<CohomClass> e1_exceptional(const IntersectionLattice& lattice) {
  std::vector<CohomClass> out;
  auto make = [&](long long h, const std::vector<long long>& e) {
    std::vector<Rational> c{Rational(h)};
    for (auto v : e) c.emplace_back(v);
    out.emplace_back(lattice, std::move(c));
  };
  for (int i = 0; i < 9; ++i) {
    std::vector<long long> e(9, 0);
    e[i] = 1;
    make(0, e);
  }
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j) {
      std::vector<long long> e(9, 0);
      e[i] = e[j] = -1;
      make(1, e);
    }
  for (unsigned mask = 0; mask < (1u << 9); ++mask) {
    if (__builtin_popcount(mask) != 5) continue;
    std::vector<long long> e(9, 0);
    for (int i = 0; i < 9; ++i)
      if (mask & (1u << i)) e[i] = -1;
    make(2, e);
  }
  return out;
}

inline CatalogEntry e1_entry() {
  std::vector<std::string> labels{"h"};
  for (auto& l : numbered_labels("E", 9)) labels.push_back(l);
  std::vector<long long> diag(10, -1);
  diag[0] = 1;
  IntersectionLattice lattice(std::move(labels), diagonal_gram(diag));
  std::vector<Rational> k(10, Rational(1));
  k[0] = -3;
  CohomClass canonical(lattice, std::move(k));
  FourManifoldModel m{"E1", lattice, canonical, e1_exceptional(lattice), 1, 0, false,
                      -canonical, std::nullopt, false};
  return {std::move(m),
          "E(1) = CP^2 # 9 -CP^2: form <1> + 9<-1> in the basis h,E1..E9; K = -3h + sum E_i; "
          "fiber F = 3h - sum E_i = -K; b_1 = 0. The exceptional set is infinite; the stored list "
          "is its degree <= 2 part: E_i (9), h - E_i - E_j (36), 2h - five E_i (126)."};
}

inline CatalogEntry k3_entry() {
  std::vector<std::string> labels{"u1", "v1", "u2", "v2", "u3", "v3"};
  for (auto& l : numbered_labels("e", 16)) labels.push_back(l);
  IntersectionLattice lattice(std::move(labels),
                              block_sum({hyperbolic_gram(3), negative_e8_gram(), negative_e8_gram()}));
  FourManifoldModel m{"K3", lattice, CohomClass::zero(lattice), {}, 3, 0, true,
                      CohomClass::basis(lattice, 0), std::nullopt, false};
  return {std::move(m),
          "K3: form 3H + 2(-E8) in the basis u1,v1,..,u3,v3,e1..e16, rank 22; K = 0; minimal; "
          "b_1 = 0; fiber class fixed to the isotropic primitive vector u1."};
}

inline std::optional<std::size_t> parse_sigma_genus(const std::string& name) {
  const std::string stem = "T2xSigma";
  if (name.rfind(stem, 0) != 0) return std::nullopt;
  std::string rest = name.substr(stem.size());
  if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
  if (rest.empty() || rest.size() > 4 || rest.find_first_not_of("0123456789") != std::string::npos)
    return std::nullopt;
  return static_cast<std::size_t>(std::stoul(rest));
}

}  // namespace detail

/// Built-in entry by name: T4, PrimaryKodaira, Hyperelliptic, TypeD, TypeEH,
/// T2xSigma<g> (also "T2xSigma(g)", g >= 2), E1, K3.
inline CatalogEntry get_entry(const std::string& name) {
  if (name == "T4") return detail::t4_entry();
  if (name == "PrimaryKodaira") return detail::primary_kodaira_entry();
  if (name == "Hyperelliptic") return detail::hyperelliptic_entry();
  if (name == "TypeD") return detail::type_d_entry();
  if (name == "TypeEH") return detail::type_eh_entry();
  if (name == "E1") return detail::e1_entry();
  if (name == "K3") return detail::k3_entry();
  if (auto g = detail::parse_sigma_genus(name); g && *g >= 2) return detail::t2_sigma_entry(*g);
  fail(ErrorKind::UnknownModel, "no catalog model named '" + name + "'");
}

inline FourManifoldModel get_model(const std::string& name) { return get_entry(name).model; }

inline std::vector<std::string> builtin_model_names() {
  return {"T4", "PrimaryKodaira", "Hyperelliptic", "TypeD", "TypeEH",
          "T2xSigma2", "T2xSigma3", "T2xSigma4", "T2xSigma5", "E1", "K3"};
}

inline FourManifoldModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::SchemaError, "cannot open model file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::SchemaError, path.string() + ": " + e.what());
  }
  return load_model(j);
}

/// Built-in models plus an optional on-disk override directory holding
/// <name>.json files, which shadow built-ins of the same name.
class Catalog {
 public:
  explicit Catalog(std::optional<std::filesystem::path> override_dir = std::nullopt)
      : dir_(std::move(override_dir)) {}

  std::vector<std::string> names() const {
    auto out = builtin_model_names();
    if (dir_ && std::filesystem::is_directory(*dir_)) {
      std::vector<std::string> extra;
      for (const auto& e : std::filesystem::directory_iterator(*dir_))
        if (e.path().extension() == ".json") extra.push_back(e.path().stem().string());
      std::sort(extra.begin(), extra.end());
      for (auto& n : extra)
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    }
    return out;
  }

  std::optional<std::filesystem::path> override_path(const std::string& name) const {
    if (!dir_) return std::nullopt;
    auto p = *dir_ / (name + ".json");
    if (std::filesystem::is_regular_file(p)) return p;
    return std::nullopt;
  }

  CatalogEntry entry(const std::string& name) const {
    if (auto p = override_path(name)) return {load_model_file(*p), "loaded from " + p->string()};
    return get_entry(name);
  }

  FourManifoldModel get(const std::string& name) const { return entry(name).model; }

  /// A catalog name, or a path to a model JSON file.
  FourManifoldModel resolve(const std::string& ref, const std::filesystem::path& base = {}) const {
    const std::filesystem::path as_path = base.empty() ? std::filesystem::path(ref) : base / ref;
    if (ref.find('/') != std::string::npos || as_path.extension() == ".json")
      return load_model_file(as_path);
    return get(ref);
  }

 private:
  std::optional<std::filesystem::path> dir_;
};

}  // namespace conekit
