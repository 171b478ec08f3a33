#pragma once

#include <limits>
#include <string>

#include <json.hpp>

#include "conekit/class_expr.hpp"
#include "conekit/cones.hpp"
#include "conekit/model.hpp"

namespace conekit {

using Json = nlohmann::ordered_json;

// Integers go out as JSON numbers when they fit in 64 bits and as decimal
// strings otherwise; both forms are accepted on input.

inline Json integer_to_json(const Integer& z) {
  if (z >= std::numeric_limits<long long>::min() && z <= std::numeric_limits<long long>::max())
    return static_cast<long long>(z);
  return z.str();
}

inline Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const bool ok = !s.empty() && s.find_first_not_of("-0123456789") == std::string::npos &&
                    s.find('-', 1) == std::string::npos && s != "-";
    if (ok) return Integer(s);
  }
  fail(ErrorKind::SchemaError, where + ": expected an integer");
}

inline Json rational_to_json(const Rational& q) {
  return Json::array({integer_to_json(numerator(q)), integer_to_json(denominator(q))});
}

/// [numerator, denominator], denominator > 0, reduced.
inline Rational rational_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::SchemaError, where + ": expected [num, den]");
  const Integer num = integer_from_json(j[0], where);
  const Integer den = integer_from_json(j[1], where);
  if (den <= 0) fail(ErrorKind::SchemaError, where + ": denominator must be positive");
  if (boost::multiprecision::gcd(num, den) != 1)
    fail(ErrorKind::SchemaError, where + ": fraction is not reduced");
  return Rational(num, den);
}

inline Json class_to_json(const CohomClass& a) {
  Json out = Json::array();
  for (const auto& q : a.coeffs()) out.push_back(rational_to_json(q));
  return out;
}

/// Accepts a coefficient array or a class literal string over the labels.
inline CohomClass class_from_json(const IntersectionLattice& lattice, const Json& j,
                                  const std::string& where) {
  if (j.is_string()) return parse_class(lattice, j.get<std::string>());
  if (!j.is_array()) fail(ErrorKind::SchemaError, where + ": expected a class");
  if (j.size() != lattice.rank())
    fail(ErrorKind::SchemaError, where + ": class has " + std::to_string(j.size()) +
                                     " coefficients, lattice rank is " + std::to_string(lattice.rank()));
  std::vector<Rational> coeffs;
  coeffs.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    coeffs.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return CohomClass(lattice, std::move(coeffs));
}

inline Json lattice_to_json(const IntersectionLattice& lattice) {
  Json gram = Json::array();
  for (const auto& row : lattice.gram()) {
    Json r = Json::array();
    for (const auto& z : row) r.push_back(integer_to_json(z));
    gram.push_back(std::move(r));
  }
  return Json{{"rank", lattice.rank()}, {"labels", lattice.labels()}, {"gram", std::move(gram)}};
}

inline IntersectionLattice lattice_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::SchemaError, "lattice: expected an object");
  for (const char* key : {"rank", "labels", "gram"})
    if (!j.contains(key)) fail(ErrorKind::SchemaError, std::string("lattice: missing '") + key + "'");
  if (!j["rank"].is_number_unsigned() || j["rank"].get<std::size_t>() == 0)
    fail(ErrorKind::SchemaError, "lattice.rank: expected a positive integer");
  const auto rank = j["rank"].get<std::size_t>();
  const auto& labels = j["labels"];
  if (!labels.is_array() || labels.size() != rank)
    fail(ErrorKind::SchemaError, "lattice.labels: expected " + std::to_string(rank) + " strings");
  std::vector<std::string> names;
  for (const auto& l : labels) {
    if (!l.is_string()) fail(ErrorKind::SchemaError, "lattice.labels: expected strings");
    names.push_back(l.get<std::string>());
  }
  const auto& gram = j["gram"];
  if (!gram.is_array() || gram.size() != rank)
    fail(ErrorKind::SchemaError, "lattice.gram: expected " + std::to_string(rank) + " rows");
  IntegerMatrix g;
  for (std::size_t i = 0; i < rank; ++i) {
    if (!gram[i].is_array() || gram[i].size() != rank)
      fail(ErrorKind::SchemaError, "lattice.gram[" + std::to_string(i) + "]: expected " +
                                       std::to_string(rank) + " entries");
    std::vector<Integer> row;
    for (const auto& z : gram[i]) row.push_back(integer_from_json(z, "lattice.gram"));
    g.push_back(std::move(row));
  }
  return IntersectionLattice(std::move(names), std::move(g));
}

inline Json model_to_json(const FourManifoldModel& m) {
  Json exceptional = Json::array();
  for (const auto& e : m.exceptional) exceptional.push_back(class_to_json(e));
  Json out{{"name", m.name},
           {"b_plus", m.b_plus},
           {"b_one", m.b_one},
           {"minimal", m.minimal},
           {"lattice", lattice_to_json(m.lattice)},
           {"k_class", class_to_json(m.k_class)},
           {"exceptional", std::move(exceptional)}};
  out["fiber_class"] = m.fiber_class ? class_to_json(*m.fiber_class) : Json(nullptr);
  out["cone_table_tag"] =
      m.cone_table_tag ? Json(std::string(to_string(*m.cone_table_tag))) : Json(nullptr);
  out["fiber_cone_half_space"] = m.fiber_cone_half_space;
  return out;
}

/// Parses and validates a model; SchemaError for shape problems,
/// InvariantViolation for mathematical ones.
inline FourManifoldModel load_model(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::SchemaError, "model: expected an object");
  for (const char* key : {"name", "b_plus", "b_one", "minimal", "lattice", "k_class"})
    if (!j.contains(key)) fail(ErrorKind::SchemaError, std::string("model: missing '") + key + "'");
  if (!j["name"].is_string()) fail(ErrorKind::SchemaError, "model.name: expected a string");
  auto natural = [](const Json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0); };
  if (!natural(j["b_plus"])) fail(ErrorKind::SchemaError, "model.b_plus: expected a nonnegative integer");
  if (!natural(j["b_one"])) fail(ErrorKind::SchemaError, "model.b_one: expected a nonnegative integer");
  if (!j["minimal"].is_boolean()) fail(ErrorKind::SchemaError, "model.minimal: expected a boolean");

  auto lattice = lattice_from_json(j["lattice"]);
  auto k = class_from_json(lattice, j["k_class"], "model.k_class");
  std::vector<CohomClass> exceptional;
  if (j.contains("exceptional")) {
    if (!j["exceptional"].is_array()) fail(ErrorKind::SchemaError, "model.exceptional: expected an array");
    for (std::size_t i = 0; i < j["exceptional"].size(); ++i)
      exceptional.push_back(class_from_json(lattice, j["exceptional"][i],
                                            "model.exceptional[" + std::to_string(i) + "]"));
  }
  std::optional<CohomClass> fiber;
  if (j.contains("fiber_class") && !j["fiber_class"].is_null())
    fiber = class_from_json(lattice, j["fiber_class"], "model.fiber_class");
  std::optional<ConeTableTag> tag;
  if (j.contains("cone_table_tag") && !j["cone_table_tag"].is_null()) {
    if (!j["cone_table_tag"].is_string()) fail(ErrorKind::SchemaError, "model.cone_table_tag: expected a string");
    const auto s = j["cone_table_tag"].get<std::string>();
    if (s != "None") {
      tag = parse_table_tag(s);
      if (!tag) fail(ErrorKind::SchemaError, "model.cone_table_tag: unknown tag '" + s + "'");
    }
  }
  bool half_space = false;
  if (j.contains("fiber_cone_half_space")) {
    if (!j["fiber_cone_half_space"].is_boolean())
      fail(ErrorKind::SchemaError, "model.fiber_cone_half_space: expected a boolean");
    half_space = j["fiber_cone_half_space"].get<bool>();
  }

  FourManifoldModel m{j["name"].get<std::string>(),
                      lattice,
                      std::move(k),
                      std::move(exceptional),
                      j["b_plus"].get<std::size_t>(),
                      j["b_one"].get<std::size_t>(),
                      j["minimal"].get<bool>(),
                      std::move(fiber),
                      tag,
                      half_space};
  validate(m);
  return m;
}

inline Json inequality_to_json(const IntersectionLattice& lattice, const Inequality& ineq) {
  Json out{{"description", ineq.description},
           {"quantity", ineq.quantity == Quantity::Square ? "square" : "pairing"},
           {"lhs", rational_to_json(ineq.lhs)},
           {"relation", ineq.relation == Relation::Positive ? "> 0" : "!= 0"}};
  if (ineq.against) out["against"] = format_class(lattice, *ineq.against);
  return out;
}

/// Verdict JSON. The lattice formats classes inside inequality certificates;
/// split witnesses need the summand lattices, passed as `x` and `y`.
inline Json verdict_to_json(const ConeVerdict& v, const IntersectionLattice& lattice,
                            const IntersectionLattice* x = nullptr,
                            const IntersectionLattice* y = nullptr) {
  Json cert;
  if (const auto* bad = std::get_if<ViolatedInequality>(&v.certificate)) {
    cert = {{"kind", "violated-inequality"}, {"inequality", inequality_to_json(lattice, bad->inequality)}};
  } else if (const auto* good = std::get_if<SatisfiedInequalities>(&v.certificate)) {
    Json checks = Json::array();
    for (const auto& ineq : good->checks) checks.push_back(inequality_to_json(lattice, ineq));
    cert = {{"kind", "satisfied-inequalities"}, {"checks", std::move(checks)}};
  } else if (const auto* w = std::get_if<SplitWitness>(&v.certificate)) {
    cert = {{"kind", "split-witness"},
            {"rho", rational_to_json(w->rho)},
            {"alpha_x", class_to_json(w->alpha_x)},
            {"alpha_y", class_to_json(w->alpha_y)}};
    if (x) cert["alpha_x_expr"] = format_class(*x, w->alpha_x);
    if (y) cert["alpha_y_expr"] = format_class(*y, w->alpha_y);
  } else {
    const auto& row = std::get<TableRow>(v.certificate);
    cert = {{"kind", "table-row"},
            {"tag", std::string(to_string(row.tag))},
            {"column", row.column},
            {"empty", row.empty_row}};
  }
  return Json{{"member", v.member},
              {"predicate", v.predicate},
              {"scope", std::string(to_string(v.scope))},
              {"certificate", std::move(cert)}};
}

}  // namespace conekit
