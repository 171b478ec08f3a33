#pragma once

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conekit/catalog.hpp"
#include "conekit/fibersum_io.hpp"
#include "conekit/verify.hpp"

namespace conekit::cli {

// Exit codes: 0 member / success, 1 non-member or failed verification,
// 2 usage or validation error. Stdout carries exactly one JSON document.
enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2 };

namespace detail {

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

inline int emit_error(std::ostream& out, std::ostream& err, std::string_view kind, const std::string& message) {
  emit(out, Json{{"error", {{"kind", kind}, {"message", message}}}});
  err << "conekit: " << message << '\n';
  return kUsage;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact symplectic-cone and fiber-sum computations on 4-manifold lattices", "conekit"};
  app.require_subcommand(1);

  std::string catalog_dir;
  app.add_option("--catalog-dir", catalog_dir, "override directory of <name>.json models")->envname("CONEKIT_CATALOG");

  auto* list = app.add_subcommand("catalog-list", "list catalog models");
  auto* show = app.add_subcommand("catalog-show", "print a model as JSON");
  auto* sig = app.add_subcommand("lattice-sig", "signature of a model's intersection form");
  auto* cone = app.add_subcommand("cone-check", "test cone membership of a class");
  auto* build = app.add_subcommand("sum-build", "build the glued lattice of a fiber sum");
  auto* split = app.add_subcommand("sum-split", "split a class across a good fiber sum");
  auto* verify = app.add_subcommand("verify", "run a seeded verification suite");

  std::string model_ref, class_expr, relative_expr, predicate, spec_path, rho_text, suite;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;

  show->add_option("--model", model_ref, "catalog name or model JSON path")->required();
  sig->add_option("--model", model_ref, "catalog name or model JSON path")->required();

  cone->add_option("--model", model_ref, "catalog name or model JSON path");
  cone->add_option("--spec", spec_path, "fiber-sum spec (sum-cone predicate)");
  cone->add_option("--class", class_expr, "class literal, e.g. 2F+G")->required();
  cone->add_option("--relative", relative_expr, "class of V (relative cone) or beta (half cone)");
  cone->add_option("--predicate", predicate, "positive|symplectic|relative|conjecture|sum")
      ->check(CLI::IsMember({"positive", "symplectic", "relative", "conjecture", "sum"}));

  build->add_option("--spec", spec_path, "fiber-sum spec JSON")->required();

  split->add_option("--spec", spec_path, "fiber-sum spec JSON")->required();
  split->add_option("--class", class_expr, "class literal on the sum lattice")->required();
  split->add_option("--rho", rho_text, "target square of alpha_X, rational p/q")->required();

  verify->add_option("suite", suite, "table|t2|snt4")->required();
  verify->add_option("--samples", samples, "samples per family");
  verify->add_option("--seed", seed, "generator seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    return detail::emit_error(out, err, "UsageError", e.what());
  }

  try {
    const Catalog catalog(catalog_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(catalog_dir));

    if (*list) {
      Json models = Json::array();
      for (const auto& name : catalog.names()) {
        const auto m = catalog.get(name);
        models.push_back({{"name", name}, {"rank", m.lattice.rank()}, {"b_plus", m.b_plus}, {"b_one", m.b_one},
                          {"minimal", m.minimal},
                          {"cone_table_tag", m.cone_table_tag ? Json(std::string(to_string(*m.cone_table_tag))) : Json(nullptr)}});
      }
      detail::emit(out, Json{{"models", std::move(models)},
                             {"note", "T2xSigma<g> is available for every g >= 2"}});
      return kOk;
    }

    if (*show) {
      const bool by_name = model_ref.find('/') == std::string::npos &&
                           std::filesystem::path(model_ref).extension() != ".json";
      const auto entry = by_name ? catalog.entry(model_ref) : CatalogEntry{catalog.resolve(model_ref), "loaded from " + model_ref};
      detail::emit(out, Json{{"model", model_to_json(entry.model)}, {"provenance", entry.provenance_notes}});
      return kOk;
    }

    if (*sig) {
      const auto m = catalog.resolve(model_ref);
      const auto s = signature(m.lattice);
      detail::emit(out, Json{{"model", m.name},
                             {"rank", m.lattice.rank()},
                             {"signature", {{"b_plus", s.b_plus}, {"b_minus", s.b_minus}, {"b_zero", s.b_zero}}}});
      return kOk;
    }

    if (*cone) {
      if (predicate == "sum" || (model_ref.empty() && !spec_path.empty())) {
        if (spec_path.empty()) fail(ErrorKind::UsageError, "the sum predicate needs --spec");
        const auto spec = load_spec_file(spec_path, catalog);
        const auto sum = build_sum(spec);
        const auto alpha = parse_class(sum.basis.sum_lattice, class_expr);
        const auto v = sum_cone_contains(spec, sum.basis, alpha);
        auto j = verdict_to_json(v, sum.basis.sum_lattice, &spec.x_model.lattice, &spec.y_model.lattice);
        j["model"] = sum.model.name;
        j["class"] = format_class(sum.basis.sum_lattice, alpha);
        detail::emit(out, j);
        return v.member ? kOk : kNegative;
      }
      if (model_ref.empty()) fail(ErrorKind::UsageError, "cone-check needs --model (or --spec)");
      const auto m = catalog.resolve(model_ref);
      const auto alpha = parse_class(m.lattice, class_expr);
      std::optional<CohomClass> rel;
      if (!relative_expr.empty()) rel = parse_class(m.lattice, relative_expr);
      std::string pred = predicate.empty() ? (rel ? "relative" : "symplectic") : predicate;

      ConeVerdict v;
      if (pred == "positive") {
        v = rel ? half_cone_contains(m, *rel, alpha) : positive_cone_contains(m, alpha);
      } else if (pred == "relative") {
        if (!rel) fail(ErrorKind::UsageError, "the relative predicate needs --relative");
        v = relative_cone_contains(m, *rel, alpha);
      } else if (pred == "conjecture") {
        v = conjecture_cone_contains(m, alpha);
      } else {
        if (m.cone_table_tag) {
          v = symplectic_cone_table_contains(m, alpha);
        } else if (m.b_plus == 1) {
          v = symplectic_cone_b1_contains(m, alpha);
        } else if (m.fiber_class && m.fiber_cone_half_space && !m.k_class.is_zero()) {
          const auto& f = *m.fiber_class;
          std::optional<Rational> factor;
          for (std::size_t i = 0; i < f.size() && !factor; ++i)
            if (f[i] != 0) factor = m.k_class[i] / f[i];
          v = lemma_vd_cone(m, f, *factor, true)(alpha);
          v.predicate = "symplectic-lemma-VD";
        } else {
          fail(ErrorKind::WrongBPlus, m.name + ": no exact symplectic-cone rule applies (b_plus = " +
                                           std::to_string(m.b_plus) + "); try --predicate conjecture");
        }
      }
      auto j = verdict_to_json(v, m.lattice);
      j["model"] = m.name;
      j["class"] = format_class(m.lattice, alpha);
      detail::emit(out, j);
      return v.member ? kOk : kNegative;
    }

    if (*build) {
      const auto spec = load_spec_file(spec_path, catalog);
      const auto sum = build_sum(spec);
      detail::emit(out, fiber_sum_to_json(spec, sum));
      return kOk;
    }

    if (*split) {
      const auto spec = load_spec_file(spec_path, catalog);
      const auto sum = build_sum(spec);
      const auto& L = sum.basis.sum_lattice;
      const auto alpha = parse_class(L, class_expr);
      const auto rho = parse_rational(rho_text);
      const auto w = split_class(spec, sum.basis, alpha, rho);
      const auto& X = spec.x_model.lattice;
      const auto& Y = spec.y_model.lattice;
      detail::emit(out, Json{{"class", format_class(L, alpha)},
                             {"square", rational_to_json(square(L, alpha))},
                             {"g", rational_to_json(pair(L, alpha, sum.basis.fiber()))},
                             {"rho", rational_to_json(rho)},
                             {"alpha_x", class_to_json(w.alpha_x)},
                             {"alpha_x_expr", format_class(X, w.alpha_x)},
                             {"square_x", rational_to_json(square(X, w.alpha_x))},
                             {"alpha_y", class_to_json(w.alpha_y)},
                             {"alpha_y_expr", format_class(Y, w.alpha_y)},
                             {"square_y", rational_to_json(square(Y, w.alpha_y))}});
      return kOk;
    }

    if (*verify) {
      const auto report = run_verify_suite(suite, samples, seed);
      detail::emit(out, report.to_json());
      return report.all_passed() ? kOk : kNegative;
    }
  } catch (const Error& e) {
    return detail::emit_error(out, err, to_string(e.kind()), e.what());
  } catch (const std::exception& e) {
    return detail::emit_error(out, err, "InternalError", e.what());
  }
  return detail::emit_error(out, err, "UsageError", "no command given");
}

}  // namespace conekit::cli
