// contraaec: finite categories of monomorphisms, nerve homology, and bounded
// contractibility-theory model checking.
//
// Exit codes: 0 model/success, 1 refuted, 2 invalid input, 3 IO/parse,
// 4 bounds, 5 undetermined.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "contraaec/axioms.hpp"
#include "contraaec/colorings.hpp"
#include "contraaec/fincat.hpp"
#include "contraaec/generate.hpp"
#include "contraaec/io.hpp"
#include "contraaec/nervehom.hpp"
#include "contraaec/presheaf.hpp"

using namespace contraaec;

namespace {

constexpr int kExitModel = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;
constexpr int kExitBounds = 4;
constexpr int kExitUndetermined = 5;

int exit_code_for(const error& e) {
  switch (e.code()) {
    case errc::parse_error:
      return kExitIo;
    case errc::bounds_error:
    case errc::truncation_too_shallow:
      return kExitBounds;
    default:
      return kExitInvalid;
  }
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-")
    std::cout << content;
  else
    write_file(out_path, content);
}

int cmd_validate(const std::string& path) {
  json j = parse_json(read_file(path));
  if (is_presheaf_json(j)) {
    load_presheaf(path);
    std::cout << "valid presheaf\n";
  } else {
    load_category(path);
    std::cout << "valid category\n";
  }
  return kExitModel;
}

int cmd_nerve_homology(const std::string& path, int max_dim, const std::string& format) {
  FinCat C = load_category(path);
  TruncatedSSet N = nerve(C, max_dim);
  auto H = homology(N, max_dim - 1);
  for (int d = 0; d < max_dim; ++d) {
    if (format == "records") {
      json rec;
      rec["degree"] = d;
      rec["betti"] = H[d].betti;
      json tor = json::array();
      for (const auto& t : H[d].torsion) tor.push_back(t.str());
      rec["torsion"] = tor;
      std::cout << rec.dump() << "\n";
    } else {
      std::cout << "H_" << d << " = " << format_homology(H[d]) << "\n";
    }
  }
  return kExitModel;
}

void print_report(const ModelReport& R) {
  std::cout << "overall: " << overall_name(R.overall) << (R.exact ? " (exact)" : " (bounded)")
            << "\n";
  std::cout << "inj: " << (R.inj.pass ? "pass" : "fail") << "\n";
  for (size_t d = 0; d < R.element_homology.size(); ++d)
    std::cout << "H_" << d << "(elements) = " << format_homology(R.element_homology[d]) << "\n";
  if (!R.asph.empty()) {
    size_t shown = 0;
    for (const auto& [key, v] : R.asph) {
      if (++shown > 50) {
        std::cout << "... (" << R.asph.size() - 50 << " more Asph instances)\n";
        break;
      }
      auto [n, k, fi] = key;
      std::cout << "Asph(n=" << n << ",k=" << k << ",F#" << fi
                << "): " << asph_status_name(v.status);
      if (v.status == AsphVerdict::Status::HoldsWithin) std::cout << " l=" << v.l;
      if (!v.stuck.empty()) std::cout << " stuck_lifts=" << v.stuck.size();
      std::cout << "\n";
    }
  }
  std::cout << "witness: " << R.witness << "\n";
}

int cmd_check_model(const std::string& cat_path, const std::string& psh_path, const Bounds& bounds,
                    const std::string& relative_core) {
  FinCat C = load_category(cat_path);
  Presheaf X = load_presheaf(psh_path);
  if (X.base != C) throw error(errc::base_mismatch, "presheaf base differs from category file");
  if (!relative_core.empty()) {
    FinCat C0 = load_category(relative_core);
    SuspensionBase S;
    if (!detect_suspension(C, &S))
      throw error(errc::not_a_suspension_base, "category is not a suspension");
    if (S.core != C0)
      throw error(errc::not_a_suspension_base, "suspension core differs from the given category");
    RelModelReport R = check_tcontr_rel(S, X, bounds);
    std::cout << "overall: " << overall_name(R.overall) << (R.exact ? " (exact)" : " (bounded)")
              << "\n";
    std::cout << "components: " << R.component_reports.size() << "\n";
    std::cout << "coloring graph tree: " << (R.coloring_tree ? "yes" : "no") << "\n";
    std::cout << "witness: " << R.witness << "\n";
    if (R.overall == ModelReport::Overall::Model) return kExitModel;
    if (R.overall == ModelReport::Overall::NotModel) return kExitRefuted;
    return kExitUndetermined;
  }
  ModelReport R = check_tcontr(C, X, bounds);
  print_report(R);
  if (R.overall == ModelReport::Overall::Model) return kExitModel;
  if (R.overall == ModelReport::Overall::NotModel) return kExitRefuted;
  return kExitUndetermined;
}

int cmd_suspend(const std::string& in_path, const std::string& out_path) {
  FinCat C0 = load_category(in_path);
  SuspensionBase S = suspension(C0);
  emit(out_path, serialize_category(S.cat));
  return kExitModel;
}

int cmd_coloring_graph(const std::string& cat_path, const std::string& psh_path) {
  FinCat C = load_category(cat_path);
  Presheaf X = load_presheaf(psh_path);
  if (X.base != C) throw error(errc::base_mismatch, "presheaf base differs from category file");
  SuspensionBase S;
  if (!detect_suspension(C, &S))
    throw error(errc::not_a_suspension_base, "category is not a suspension");
  ColoredDecomposition D = decompose_suspension(S, X);
  Multigraph G = coloring_graph(D);
  std::cout << "vertices: " << G.num_vertices() << "\n";
  std::cout << "edges: " << G.edges.size() << "\n";
  for (auto [a, b] : G.edges)
    std::cout << G.vertex_names[a] << " -- " << G.vertex_names[b] << "\n";
  std::cout << "tree: " << (is_tree(G) ? "yes" : "no") << "\n";
  return kExitModel;
}

PresheafMorphism load_leg(const std::string& path, const Presheaf& src, const Presheaf& tgt) {
  json j = parse_json(read_file(path));
  PresheafMorphism phi;
  phi.components.resize(src.base.num_objects());
  try {
    auto tbl = j.at("components")
                   .get<std::map<std::string, std::map<std::string, std::string>>>();
    for (ObjId o = 0; o < src.base.num_objects(); ++o) {
      phi.components[o].assign(src.carrier_size(o), -1);
      auto it = tbl.find(src.base.objects[o]);
      for (int x = 0; x < src.carrier_size(o); ++x) {
        if (it == tbl.end() || !it->second.count(src.carrier[o][x]))
          throw error(errc::dangling_element,
                      "leg undefined on '" + src.carrier[o][x] + "'");
        int v = tgt.element_index(o, it->second.at(src.carrier[o][x]));
        if (v < 0) throw error(errc::dangling_element, "leg maps to unknown element");
        phi.components[o][x] = v;
      }
    }
  } catch (const json::exception& e) {
    throw error(errc::parse_error, std::string("malformed morphism file: ") + e.what());
  }
  std::string why;
  if (!validate_presheaf_morphism(phi, src, tgt, &why))
    throw error(errc::dangling_element, "invalid leg: " + why);
  return phi;
}

int cmd_pushout(const std::string& cat_path, const std::string& apex_path,
                const std::string& left_path, const std::string& right_path,
                const std::string& leg1_path, const std::string& leg2_path,
                const std::string& out_path) {
  FinCat C = load_category(cat_path);
  Presheaf A = load_presheaf(apex_path), B = load_presheaf(left_path),
           Cc = load_presheaf(right_path);
  if (A.base != C || B.base != C || Cc.base != C)
    throw error(errc::base_mismatch, "all presheaves must live over the category file");
  PresheafMorphism f = load_leg(leg1_path, A, B);
  PresheafMorphism g = load_leg(leg2_path, A, Cc);
  PushoutResult P = pushout(f, g, A, B, Cc);
  emit(out_path, serialize_presheaf(P.object));
  return kExitModel;
}

int cmd_gen(const std::string& kind, int size, unsigned long long seed,
            const std::string& base_path, const std::string& out_path) {
  if (kind == "dirtree") {
    FinCat base = base_path.empty() ? make_dirtree_category() : load_category(base_path);
    emit(out_path, serialize_presheaf(generate_dirtree(base, size, seed)));
  } else if (kind == "undirtree") {
    FinCat base = base_path.empty() ? make_undirtree_category() : load_category(base_path);
    emit(out_path, serialize_presheaf(generate_undirtree(base, size, seed)));
  } else if (kind == "labeled-tree") {
    SuspensionBase S;
    if (base_path.empty()) {
      S = suspension(make_dirtree_category());
    } else if (!detect_suspension(load_category(base_path), &S)) {
      throw error(errc::not_a_suspension_base,
                  "labeled-tree generation needs a suspension base");
    }
    emit(out_path, serialize_presheaf(generate_labeled_tree(S, size, seed)));
  } else if (kind == "amalgam") {
    FinCat base = base_path.empty() ? make_dirtree_category() : load_category(base_path);
    emit(out_path, serialize_presheaf(generate_amalgam(base, size, seed)));
  } else {
    throw error(errc::parse_error, "unknown generator kind '" + kind + "'");
  }
  return kExitModel;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite presheaf models of contractibility theories"};
  app.require_subcommand(1);
  // accepted for interface stability; the implementation is sequential
  if (const char* t = std::getenv("CONTRAAEC_THREADS")) (void)t;

  std::string path, cat_path, psh_path, out_path, relative_core, format = "plain";
  std::string apex_path, left_path, right_path, leg1_path, leg2_path, kind, base_path;
  int max_dim = 3, size = 6;
  unsigned long long seed = 0;
  Bounds bounds;

  auto* validate = app.add_subcommand("validate", "validate a category or presheaf file");
  validate->add_option("path", path)->required();

  auto* nerveh = app.add_subcommand("nerve-homology", "integer homology of the nerve");
  nerveh->add_option("path", cat_path)->required();
  nerveh->add_option("--max-dim", max_dim, "report H_0 .. H_{D-1}");
  nerveh->add_option("--format", format, "plain or records");

  auto* check = app.add_subcommand("check-model", "bounded T_contr model check");
  check->add_option("category", cat_path)->required();
  check->add_option("presheaf", psh_path)->required();
  check->add_option("--n-max", bounds.n_max);
  check->add_option("--k-max", bounds.k_max);
  check->add_option("--l-max", bounds.l_max);
  check->add_option("--acyclic-dim", bounds.D);
  check->add_option("--sweep-budget", bounds.sweep_budget,
                    "work budget for the Asph sweep; -1 = unlimited");
  check->add_option("--relative", relative_core, "core category file; use the relative theory");

  auto* susp = app.add_subcommand("suspend", "freely adjoin two initial objects");
  susp->add_option("input", cat_path)->required();
  susp->add_option("output", out_path)->required();

  auto* colg = app.add_subcommand("coloring-graph", "coloring graph of a suspension presheaf");
  colg->add_option("category", cat_path)->required();
  colg->add_option("presheaf", psh_path)->required();

  auto* push = app.add_subcommand("pushout", "pointwise pushout along two legs");
  push->add_option("category", cat_path)->required();
  push->add_option("apex", apex_path)->required();
  push->add_option("left", left_path)->required();
  push->add_option("right", right_path)->required();
  push->add_option("leg1", leg1_path)->required();
  push->add_option("leg2", leg2_path)->required();
  push->add_option("--out", out_path);

  auto* gen = app.add_subcommand("gen", "seeded model generators");
  gen->add_option("kind", kind, "dirtree | undirtree | labeled-tree | amalgam")->required();
  gen->add_option("--size", size, "vertices (trees) or pushout steps (amalgam)");
  gen->add_option("--seed", seed);
  gen->add_option("--base", base_path, "base category file (defaults per kind)");
  gen->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(path);
    if (nerveh->parsed()) return cmd_nerve_homology(cat_path, max_dim, format);
    if (check->parsed()) return cmd_check_model(cat_path, psh_path, bounds, relative_core);
    if (susp->parsed()) return cmd_suspend(cat_path, out_path);
    if (colg->parsed()) return cmd_coloring_graph(cat_path, psh_path);
    if (push->parsed())
      return cmd_pushout(cat_path, apex_path, left_path, right_path, leg1_path, leg2_path,
                         out_path);
    if (gen->parsed()) return cmd_gen(kind, size, seed, base_path, out_path);
  } catch (const error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitInvalid;
}
