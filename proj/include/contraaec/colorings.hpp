#pragma once

// Suspension presheaves: reducts, palettes, colorings, the coloring graph,
// and the tree criterion.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "contraaec/error.hpp"
#include "contraaec/fincat.hpp"
#include "contraaec/presheaf.hpp"

namespace contraaec {

struct ColoredDecomposition {
  Presheaf reduct;                   // over the core C0
  ComponentsResult components;       // of the reduct
  std::vector<std::string> palette1; // X(bot1)
  std::vector<std::string> palette2; // X(bot2)
  std::vector<int> coloring1;        // per component -> palette1 index
  std::vector<int> coloring2;        // per component -> palette2 index
};

// Splits a presheaf over Sigma C0 into its C0-reduct, the two palettes, and
// the colorings induced by the unique morphisms bot_i -> c. The coloring of
// an element depends only on its connected component (forced by
// functoriality), which is re-verified here.
inline ColoredDecomposition decompose_suspension(const SuspensionBase& S, const Presheaf& X) {
  if (X.base != S.cat)
    throw error(errc::not_a_suspension_base, "presheaf base is not the given suspension");
  const FinCat& C0 = S.core;
  // reduct: restrict carriers and actions to the core
  RawPresheaf raw;
  for (ObjId o = 0; o < C0.num_objects(); ++o) {
    ObjId so = X.base.object_index(C0.objects[o]);
    raw.carriers[C0.objects[o]] = X.carrier[so];
  }
  for (MorId m = 0; m < C0.num_morphisms(); ++m) {
    if (C0.is_identity(m)) continue;
    MorId sm = X.base.morphism_index(C0.morphisms[m].name);
    ObjId sd = X.base.dom(sm), sc = X.base.cod(sm);
    std::map<std::string, std::string> tbl;
    for (int x = 0; x < X.carrier_size(sc); ++x)
      tbl[X.carrier[sc][x]] = X.carrier[sd][X.apply(sm, x)];
    raw.actions[C0.morphisms[m].name] = std::move(tbl);
  }
  ColoredDecomposition D;
  D.reduct = validate_presheaf(C0, raw);
  D.components = connected_components(D.reduct);
  D.palette1 = X.carrier[S.bot1_id()];
  D.palette2 = X.carrier[S.bot2_id()];
  int ncomp = static_cast<int>(D.components.parts.size());
  D.coloring1.assign(ncomp, -1);
  D.coloring2.assign(ncomp, -1);
  for (int which : {1, 2}) {
    auto& coloring = which == 1 ? D.coloring1 : D.coloring2;
    for (ObjId o = 0; o < C0.num_objects(); ++o) {
      ObjId so = X.base.object_index(C0.objects[o]);
      MorId u = S.cone_morphism(which, so);
      if (u < 0) throw error(errc::not_a_suspension_base, "missing cone morphism");
      for (int x = 0; x < X.carrier_size(so); ++x) {
        int comp = D.components.component_of[o][x];
        int color = X.apply(u, x);
        if (coloring[comp] >= 0 && coloring[comp] != color)
          throw error(errc::not_a_suspension_base,
                      "coloring is not constant on a connected component");
        coloring[comp] = color;
      }
    }
  }
  for (int c = 0; c < ncomp; ++c)
    if (D.coloring1[c] < 0 || D.coloring2[c] < 0)
      throw error(errc::not_a_suspension_base, "component without a color");
  return D;
}

// Inverse of decompose_suspension: rebuilds the presheaf over Sigma C0.
inline Presheaf reassemble_suspension(const SuspensionBase& S, const ColoredDecomposition& D) {
  const FinCat& C0 = S.core;
  RawPresheaf raw;
  for (ObjId o = 0; o < C0.num_objects(); ++o)
    raw.carriers[C0.objects[o]] = D.reduct.carrier[o];
  raw.carriers[S.bot1] = D.palette1;
  raw.carriers[S.bot2] = D.palette2;
  for (MorId m = 0; m < C0.num_morphisms(); ++m) {
    if (C0.is_identity(m)) continue;
    std::map<std::string, std::string> tbl;
    ObjId dm = C0.dom(m), cm = C0.cod(m);
    for (int x = 0; x < D.reduct.carrier_size(cm); ++x)
      tbl[D.reduct.carrier[cm][x]] = D.reduct.carrier[dm][D.reduct.apply(m, x)];
    raw.actions[C0.morphisms[m].name] = std::move(tbl);
  }
  for (int which : {1, 2}) {
    const auto& palette = which == 1 ? D.palette1 : D.palette2;
    const auto& coloring = which == 1 ? D.coloring1 : D.coloring2;
    for (ObjId o = 0; o < C0.num_objects(); ++o) {
      ObjId so = S.cat.object_index(C0.objects[o]);
      MorId u = S.cone_morphism(which, so);
      std::map<std::string, std::string> tbl;
      for (int x = 0; x < D.reduct.carrier_size(o); ++x)
        tbl[D.reduct.carrier[o][x]] = palette[coloring[D.components.component_of[o][x]]];
      raw.actions[S.cat.morphisms[u].name] = std::move(tbl);
    }
  }
  return validate_presheaf(S.cat, raw);
}

// Undirected multigraph; parallel edges are kept.
struct Multigraph {
  std::vector<std::string> vertex_names;
  std::vector<std::pair<int, int>> edges;

  int num_vertices() const { return static_cast<int>(vertex_names.size()); }
};

// Bipartite multigraph on palette1 + palette2 with one edge per connected
// component of the reduct, joining the component's two colors.
inline Multigraph coloring_graph(const ColoredDecomposition& D) {
  Multigraph G;
  for (const auto& p : D.palette1) G.vertex_names.push_back("1:" + p);
  for (const auto& p : D.palette2) G.vertex_names.push_back("2:" + p);
  int off = static_cast<int>(D.palette1.size());
  for (size_t c = 0; c < D.coloring1.size(); ++c)
    G.edges.emplace_back(D.coloring1[c], off + D.coloring2[c]);
  return G;
}

// Tree test for multigraphs: nonempty, connected, |E| = |V| - 1 (so parallel
// edges fail). The empty graph is not a tree.
inline bool is_tree(const Multigraph& G) {
  int nv = G.num_vertices();
  if (nv == 0) return false;
  if (static_cast<int>(G.edges.size()) != nv - 1) return false;
  std::vector<int> parent(nv);
  for (int i = 0; i < nv; ++i) parent[i] = i;
  std::function<int(int)> root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : G.edges) {
    int ra = root(a), rb = root(b);
    if (ra == rb) return false;  // cycle (also catches parallel edges)
    parent[ra] = rb;
  }
  int r = root(0);
  for (int i = 1; i < nv; ++i)
    if (root(i) != r) return false;
  return true;
}

}  // namespace contraaec
