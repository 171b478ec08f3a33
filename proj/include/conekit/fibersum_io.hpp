#pragma once

#include <filesystem>
#include <fstream>

#include "conekit/catalog.hpp"
#include "conekit/fibersum.hpp"

namespace conekit {

// Spec JSON: {"x": model-ref, "y": model-ref, "v_in_x": class, "v_in_y": class,
//             "v_genus": int, "h1_injects_into_y": bool, "rim_rank": int, "tau_rank": int}
// A model-ref is a catalog name, a path to a model file (relative to the spec
// file), or an inline model object. Classes are coefficient arrays or literals.

inline FourManifoldModel resolve_model_ref(const Json& ref, const Catalog& catalog,
                                           const std::filesystem::path& base) {
  if (ref.is_object()) return load_model(ref);
  if (ref.is_string()) return catalog.resolve(ref.get<std::string>(), base);
  fail(ErrorKind::SchemaError, "model-ref must be a name, a path or a model object");
}

inline FiberSumSpec spec_from_json(const Json& j, const Catalog& catalog = Catalog{},
                                   const std::filesystem::path& base = {}) {
  if (!j.is_object()) fail(ErrorKind::SchemaError, "spec: expected an object");
  for (const char* key : {"x", "y", "v_in_x", "v_in_y"})
    if (!j.contains(key)) fail(ErrorKind::SchemaError, std::string("spec: missing '") + key + "'");
  auto x = resolve_model_ref(j["x"], catalog, base);
  auto y = resolve_model_ref(j["y"], catalog, base);
  auto vx = class_from_json(x.lattice, j["v_in_x"], "spec.v_in_x");
  auto vy = class_from_json(y.lattice, j["v_in_y"], "spec.v_in_y");
  auto count = [&](const char* key, std::size_t fallback) -> std::size_t {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_unsigned()) fail(ErrorKind::SchemaError, std::string("spec.") + key + ": expected a nonnegative integer");
    return j[key].get<std::size_t>();
  };
  bool h1 = false;
  if (j.contains("h1_injects_into_y")) {
    if (!j["h1_injects_into_y"].is_boolean()) fail(ErrorKind::SchemaError, "spec.h1_injects_into_y: expected a boolean");
    h1 = j["h1_injects_into_y"].get<bool>();
  }
  FiberSumSpec spec{std::move(x), std::move(y), std::move(vx), std::move(vy),
                    count("v_genus", 1), h1, count("rim_rank", 0), count("tau_rank", 0)};
  validate(spec);
  return spec;
}

inline FiberSumSpec load_spec_file(const std::filesystem::path& path, const Catalog& catalog = Catalog{}) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::SchemaError, "cannot open spec file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::SchemaError, path.string() + ": " + e.what());
  }
  return spec_from_json(j, catalog, path.parent_path());
}

inline Json spec_to_json(const FiberSumSpec& spec) {
  return Json{{"x", model_to_json(spec.x_model)},
              {"y", model_to_json(spec.y_model)},
              {"v_in_x", class_to_json(spec.v_in_x)},
              {"v_in_y", class_to_json(spec.v_in_y)},
              {"v_genus", spec.v_genus},
              {"h1_injects_into_y", spec.h1_injects_into_y},
              {"rim_rank", spec.rim_rank},
              {"tau_rank", spec.tau_rank}};
}

inline Json basis_roles_to_json(const FiberSumSpec& spec, const GluedBasis& basis) {
  Json roles = Json::array();
  for (std::size_t i = 0; i < basis.elements.size(); ++i) {
    const auto& e = basis.elements[i];
    Json r{{"index", i}, {"label", e.label}, {"role", std::string(to_string(e.role))}};
    r["x"] = e.in_x ? class_to_json(*e.in_x) : Json(nullptr);
    r["y"] = e.in_y ? class_to_json(*e.in_y) : Json(nullptr);
    if (e.in_x) r["x_expr"] = format_class(spec.x_model.lattice, *e.in_x);
    if (e.in_y) r["y_expr"] = format_class(spec.y_model.lattice, *e.in_y);
    roles.push_back(std::move(r));
  }
  return roles;
}

inline Json fiber_sum_to_json(const FiberSumSpec& spec, const FiberSum& sum) {
  const auto sig = signature(sum.model.lattice);
  return Json{{"model", model_to_json(sum.model)},
              {"signature", {{"b_plus", sig.b_plus}, {"b_minus", sig.b_minus}, {"b_zero", sig.b_zero}}},
              {"good", {{"good", sum.goodness.good}, {"reason", sum.goodness.reason}}},
              {"basis_roles", basis_roles_to_json(spec, sum.basis)}};
}

}  // namespace conekit
