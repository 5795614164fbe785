#pragma once

// Standard example bases (graphs, involution graphs, suspensions), seeded
// random model generators, and the amalgamation generator.

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "contraaec/axioms.hpp"
#include "contraaec/colorings.hpp"
#include "contraaec/fincat.hpp"
#include "contraaec/presheaf.hpp"

namespace contraaec {

// All random choices go through rng() % n so the streams are identical across
// standard library implementations.
using Rng = std::mt19937_64;

inline int pick(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<unsigned long long>(n)); }

// ---------------------------------------------------------------------------
// Example bases

// V => E with source/target morphisms s, t: V -> E; presheaves are directed
// multigraphs.
inline FinCat make_dirtree_category() {
  RawCategory raw;
  raw.objects = {"V", "E"};
  raw.morphisms = {{"id_V", "V", "V"}, {"id_E", "E", "E"}, {"s", "V", "E"}, {"t", "V", "E"}};
  raw.identities = {{"V", "id_V"}, {"E", "id_E"}};
  return validate_category(raw);
}

// V => E with an edge involution tau (tau s = t, tau t = s, tau tau = id);
// presheaves with free involution are undirected graphs.
inline FinCat make_undirtree_category() {
  RawCategory raw;
  raw.objects = {"V", "E"};
  raw.morphisms = {{"id_V", "V", "V"},
                   {"id_E", "E", "E"},
                   {"s", "V", "E"},
                   {"t", "V", "E"},
                   {"tau", "E", "E"}};
  raw.identities = {{"V", "id_V"}, {"E", "id_E"}};
  raw.compose = {{"tau", "s", "t"}, {"tau", "t", "s"}, {"tau", "tau", "id_E"}};
  return validate_category(raw);
}

// ---------------------------------------------------------------------------
// Directed graphs <-> presheaves over V => E

struct DirGraph {
  int nv = 0;
  std::vector<std::pair<int, int>> edges;  // (source, target)
};

namespace detail {
inline std::string pad_name(char prefix, int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c%03d", prefix, i);
  return buf;
}
}  // namespace detail

inline Presheaf presheaf_from_dirgraph(const FinCat& base, const DirGraph& G) {
  RawPresheaf raw;
  std::vector<std::string> vs, es;
  for (int i = 0; i < G.nv; ++i) vs.push_back(detail::pad_name('v', i));
  for (size_t i = 0; i < G.edges.size(); ++i) es.push_back(detail::pad_name('e', static_cast<int>(i)));
  raw.carriers["V"] = vs;
  raw.carriers["E"] = es;
  std::map<std::string, std::string> sa, ta;
  for (size_t i = 0; i < G.edges.size(); ++i) {
    sa[es[i]] = vs[G.edges[i].first];
    ta[es[i]] = vs[G.edges[i].second];
  }
  raw.actions["s"] = sa;
  raw.actions["t"] = ta;
  return validate_presheaf(base, raw);
}

inline DirGraph dirgraph_from_presheaf(const Presheaf& X) {
  MorId s = X.base.morphism_index("s"), t = X.base.morphism_index("t");
  ObjId V = X.base.object_index("V"), Eo = X.base.object_index("E");
  if (s < 0 || t < 0 || V < 0 || Eo < 0)
    throw error(errc::base_mismatch, "expected the V => E base");
  DirGraph G;
  G.nv = X.carrier_size(V);
  for (int e = 0; e < X.carrier_size(Eo); ++e)
    G.edges.emplace_back(X.apply(s, e), X.apply(t, e));
  return G;
}

// ---------------------------------------------------------------------------
// Random tree generators

// Random spanning tree shape on nv vertices: vertex i > 0 attaches to a
// uniformly random earlier vertex, with a random orientation.
inline DirGraph random_dirtree_graph(int nv, Rng& rng) {
  DirGraph G;
  G.nv = nv;
  for (int i = 1; i < nv; ++i) {
    int p = pick(rng, i);
    if (pick(rng, 2))
      G.edges.emplace_back(p, i);
    else
      G.edges.emplace_back(i, p);
  }
  return G;
}

inline Presheaf generate_dirtree(const FinCat& base, int nv, unsigned long long seed) {
  if (nv < 1) throw error(errc::bounds_error, "a tree needs at least one vertex");
  Rng rng(seed);
  DirGraph G = random_dirtree_graph(nv, rng);
  return presheaf_from_dirgraph(base, G);
}

// Random undirected tree over the involution base: each tree edge becomes a
// tau-swapped pair of directed edges.
inline Presheaf generate_undirtree(const FinCat& base, int nv, unsigned long long seed) {
  if (nv < 1) throw error(errc::bounds_error, "a tree needs at least one vertex");
  Rng rng(seed);
  DirGraph G = random_dirtree_graph(nv, rng);
  RawPresheaf raw;
  std::vector<std::string> vs;
  for (int i = 0; i < nv; ++i) vs.push_back(detail::pad_name('v', i));
  raw.carriers["V"] = vs;
  std::vector<std::string> es;
  std::map<std::string, std::string> sa, ta, taua;
  for (size_t i = 0; i < G.edges.size(); ++i) {
    std::string ea = detail::pad_name('e', static_cast<int>(i)) + "a";
    std::string eb = detail::pad_name('e', static_cast<int>(i)) + "b";
    es.push_back(ea);
    es.push_back(eb);
    sa[ea] = vs[G.edges[i].first];
    ta[ea] = vs[G.edges[i].second];
    sa[eb] = vs[G.edges[i].second];
    ta[eb] = vs[G.edges[i].first];
    taua[ea] = eb;
    taua[eb] = ea;
  }
  raw.carriers["E"] = es;
  raw.actions["s"] = sa;
  raw.actions["t"] = ta;
  raw.actions["tau"] = taua;
  return validate_presheaf(base, raw);
}

// Random labeled-tree model over a suspension of V => E: the coloring graph
// is a random tree with `ncomp` edges, each edge carried by a random small
// directed-tree component.
inline Presheaf generate_labeled_tree(const SuspensionBase& S, int ncomp, unsigned long long seed) {
  if (ncomp < 1) throw error(errc::bounds_error, "need at least one component");
  Rng rng(seed);
  // random tree on ncomp + 1 vertices; bipartition by depth parity
  std::vector<int> parent(ncomp + 1, -1), depth(ncomp + 1, 0);
  for (int i = 1; i <= ncomp; ++i) {
    parent[i] = pick(rng, i);
    depth[i] = depth[parent[i]] + 1;
  }
  std::vector<int> side_index(ncomp + 1, -1);
  std::vector<std::string> palette1, palette2;
  for (int v = 0; v <= ncomp; ++v) {
    if (depth[v] % 2 == 0) {
      side_index[v] = static_cast<int>(palette1.size());
      palette1.push_back(detail::pad_name('p', v));
    } else {
      side_index[v] = static_cast<int>(palette2.size());
      palette2.push_back(detail::pad_name('q', v));
    }
  }
  RawPresheaf raw;
  raw.carriers[S.bot1] = palette1;
  raw.carriers[S.bot2] = palette2;
  std::vector<std::string> vs, es;
  std::map<std::string, std::string> sa, ta;
  std::map<std::string, std::string> cone1, cone2;  // core element -> palette element
  for (int ci = 1; ci <= ncomp; ++ci) {
    int a = ci, b = parent[ci];
    int c1 = depth[a] % 2 == 0 ? side_index[a] : side_index[b];
    int c2 = depth[a] % 2 == 0 ? side_index[b] : side_index[a];
    int cnv = 1 + pick(rng, 3);
    DirGraph T = random_dirtree_graph(cnv, rng);
    std::string tag = "c" + detail::pad_name('#', ci).substr(1) + ":";
    std::vector<std::string> cvs;
    for (int i = 0; i < T.nv; ++i) {
      cvs.push_back(tag + detail::pad_name('v', i));
      vs.push_back(cvs.back());
      cone1[cvs.back()] = palette1[c1];
      cone2[cvs.back()] = palette2[c2];
    }
    for (size_t i = 0; i < T.edges.size(); ++i) {
      std::string en = tag + detail::pad_name('e', static_cast<int>(i));
      es.push_back(en);
      sa[en] = cvs[T.edges[i].first];
      ta[en] = cvs[T.edges[i].second];
      cone1[en] = palette1[c1];
      cone2[en] = palette2[c2];
    }
  }
  raw.carriers["V"] = vs;
  raw.carriers["E"] = es;
  raw.actions["s"] = sa;
  raw.actions["t"] = ta;
  const FinCat& SC = S.cat;
  for (ObjId o = 0; o < SC.num_objects(); ++o) {
    if (SC.objects[o] == S.bot1 || SC.objects[o] == S.bot2) continue;
    for (int which : {1, 2}) {
      MorId u = S.cone_morphism(which, o);
      std::map<std::string, std::string> tbl;
      const auto& cone = which == 1 ? cone1 : cone2;
      for (const auto& e : raw.carriers[SC.objects[o]]) tbl[e] = cone.at(e);
      raw.actions[SC.morphisms[u].name] = tbl;
    }
  }
  return validate_presheaf(SC, raw);
}

// ---------------------------------------------------------------------------
// Tree extension (leaves) and amalgamation

// Adds `extra` leaf vertices with random attachment and orientation. The
// inclusion is index-wise (old names keep their indices).
inline std::pair<Presheaf, PresheafMorphism> extend_with_leaves(const FinCat& base,
                                                                const Presheaf& X, int extra,
                                                                Rng& rng) {
  DirGraph G = dirgraph_from_presheaf(X);
  int old_nv = G.nv, old_ne = static_cast<int>(G.edges.size());
  for (int i = 0; i < extra; ++i) {
    int p = pick(rng, G.nv);
    if (pick(rng, 2))
      G.edges.emplace_back(p, G.nv);
    else
      G.edges.emplace_back(G.nv, p);
    ++G.nv;
  }
  Presheaf Y = presheaf_from_dirgraph(base, G);
  PresheafMorphism incl;
  incl.components.resize(base.num_objects());
  ObjId V = base.object_index("V"), Eo = base.object_index("E");
  for (int i = 0; i < old_nv; ++i) incl.components[V].push_back(i);
  for (int i = 0; i < old_ne; ++i) incl.components[Eo].push_back(i);
  return {Y, incl};
}

// Starts from a random representable and applies `steps` pushouts of the
// current object with a representable, along a span of strong embeddings from
// a representable apex. Deterministic in seed.
inline Presheaf generate_amalgam(const FinCat& C, int steps, unsigned long long seed) {
  Rng rng(seed);
  int nobj = C.num_objects();
  if (nobj == 0) throw error(errc::bounds_error, "empty base category");
  std::vector<Presheaf> reps;
  for (ObjId c = 0; c < nobj; ++c) reps.push_back(yoneda(C, c));
  Presheaf X = reps[pick(rng, nobj)];
  for (int step = 0; step < steps; ++step) {
    ObjId c = pick(rng, nobj);
    const Presheaf& yc = reps[c];
    // candidate spans: apex a, element x of X(a), element sigma of yc(a),
    // both classifying morphisms strong embeddings
    struct Cand {
      ObjId a;
      int x, sigma;
    };
    std::vector<Cand> cands;
    for (ObjId a = 0; a < nobj; ++a)
      for (int x = 0; x < X.carrier_size(a); ++x) {
        PresheafMorphism into_x = classifying_morphism(C, X, a, x, reps[a]);
        if (!is_strong_embedding(into_x, reps[a], X)) continue;
        for (int sg = 0; sg < yc.carrier_size(a); ++sg) {
          PresheafMorphism into_yc = classifying_morphism(C, yc, a, sg, reps[a]);
          if (is_strong_embedding(into_yc, reps[a], yc)) cands.push_back({a, x, sg});
        }
      }
    if (cands.empty()) continue;
    Cand ch = cands[pick(rng, static_cast<int>(cands.size()))];
    PresheafMorphism f = classifying_morphism(C, X, ch.a, ch.x, reps[ch.a]);
    PresheafMorphism g = classifying_morphism(C, yc, ch.a, ch.sigma, reps[ch.a]);
    X = pushout(f, g, reps[ch.a], X, yc).object;
  }
  return X;
}

}  // namespace contraaec
