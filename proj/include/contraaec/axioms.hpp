#pragma once

// Evaluation of the Lift/Ext/Inj/Asph sentences on finite presheaves, bounded
// model checking for T_contr(C) and the relative theory over a suspension,
// and the exact tree oracles for the small example bases.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "contraaec/colorings.hpp"
#include "contraaec/error.hpp"
#include "contraaec/fincat.hpp"
#include "contraaec/nervehom.hpp"
#include "contraaec/presheaf.hpp"

namespace contraaec {

// ---------------------------------------------------------------------------
// Inj

struct InjWitness {
  ObjId c;        // object whose element has a non-mono classifying map
  int x;          // carrier index at c
  ObjId d;        // sort where injectivity fails
  MorId sigma1, sigma2;  // distinct d -> c with equal action on x
};

struct InjReport {
  bool pass = true;
  std::vector<InjWitness> violations;
};

// The operative Inj check: every classifying morphism yoneda(c) -> X is
// levelwise injective, i.e. distinct sigma, sigma': d -> c act differently
// on every element x of X(c).
inline InjReport check_inj(const FinCat& C, const Presheaf& X) {
  InjReport R;
  for (ObjId c = 0; c < C.num_objects(); ++c)
    for (int x = 0; x < X.carrier_size(c); ++x)
      for (ObjId d = 0; d < C.num_objects(); ++d) {
        auto h = C.hom(d, c);
        for (size_t i = 0; i < h.size(); ++i)
          for (size_t j = i + 1; j < h.size(); ++j)
            if (X.apply(h[i], x) == X.apply(h[j], x)) {
              R.pass = false;
              R.violations.push_back({c, x, d, h[i], h[j]});
            }
      }
  return R;
}

// The literal per-morphism reading: each action map is injective. Not part of
// the model verdict (it is strictly stronger than check_inj on some bases);
// exposed for comparison.
inline bool check_inj_literal(const FinCat& C, const Presheaf& X) {
  for (MorId m = 0; m < C.num_morphisms(); ++m) {
    std::set<int> seen;
    for (int v : X.action[m])
      if (!seen.insert(v).second) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Lifts

// A tuple (x_k) with x_k in X(F(k)) satisfying Lift_F: for every morphism f
// of K, x_{dom f} = [F(f)](x_{cod f}).
struct LiftAssignment {
  std::vector<int> tuple;  // per object of K: carrier index in X(F(k))
};

inline void enumerate_lifts(const FinCat& K, const Functor& F, const Presheaf& X,
                            const std::map<ObjId, int>& fixed,
                            const std::function<bool(const LiftAssignment&)>& cb,
                            long long* budget = nullptr) {
  int n = K.num_objects();
  std::vector<int> tuple(n, -1);
  bool stop = false;
  auto consistent = [&](ObjId k) {
    for (MorId f = 0; f < K.num_morphisms(); ++f) {
      ObjId a = K.dom(f), b = K.cod(f);
      if (a != k && b != k) continue;
      if (tuple[a] < 0 || tuple[b] < 0) continue;
      if (tuple[a] != X.apply(F.on_mor[f], tuple[b])) return false;
    }
    return true;
  };
  std::function<void(int)> rec = [&](int k) {
    if (stop) return;
    if (budget && --(*budget) < 0) {
      stop = true;
      return;
    }
    if (k == n) {
      LiftAssignment L;
      L.tuple = tuple;
      if (!cb(L)) stop = true;
      return;
    }
    auto it = fixed.find(k);
    int lo = 0, hi = X.carrier_size(F.on_obj[k]);
    if (it != fixed.end()) {
      lo = it->second;
      hi = lo + 1;
    }
    for (int v = lo; v < hi; ++v) {
      tuple[k] = v;
      if (consistent(k)) rec(k + 1);
      if (stop) break;
    }
    tuple[k] = -1;
  };
  rec(0);
}

inline std::vector<LiftAssignment> enumerate_lifts(const FinCat& K, const Functor& F,
                                                   const Presheaf& X) {
  std::vector<LiftAssignment> out;
  enumerate_lifts(K, F, X, {}, [&](const LiftAssignment& L) {
    out.push_back(L);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Asph

struct AsphVerdict {
  enum class Status { HoldsWithin, Vacuous, RefutedExactly, ExhaustedBound };
  Status status = Status::Vacuous;
  int l = -1;                          // for HoldsWithin: largest l any lift needed
  std::string reason;                  // for RefutedExactly
  std::vector<LiftAssignment> stuck;   // lifts with no extension within the bound
};

inline const char* asph_status_name(AsphVerdict::Status s) {
  switch (s) {
    case AsphVerdict::Status::HoldsWithin: return "HoldsWithin";
    case AsphVerdict::Status::Vacuous: return "Vacuous";
    case AsphVerdict::Status::RefutedExactly: return "RefutedExactly";
    case AsphVerdict::Status::ExhaustedBound: return "ExhaustedBound";
  }
  return "?";
}

namespace detail {

// Component labels of the objects of a finite category.
inline std::vector<int> category_components(const FinCat& C) {
  int n = C.num_objects();
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (MorId m = 0; m < C.num_morphisms(); ++m) {
    int a = root(C.dom(m)), b = root(C.cod(m));
    if (a != b) parent[a] = b;
  }
  std::vector<int> label(n);
  for (int i = 0; i < n; ++i) label[i] = root(i);
  return label;
}

// For a stuck n=2 lift over a 1-dimensional element category: walk the cycle
// of the boundary poset's Hasse diagram, form the edge word in the element
// category, and freely reduce it. A nonempty reduced word is an essential
// loop, so no extension exists at any l.
inline bool loop_essential(const Poset& bp, const Functor& F, const FinCat& C,
                           const Presheaf& X, const ElementsResult& E,
                           const LiftAssignment& lift) {
  auto covers = bp.cover_pairs();
  int n = bp.size();
  std::vector<std::vector<int>> inc(n);  // incident cover indices
  for (size_t i = 0; i < covers.size(); ++i) {
    inc[covers[i].first].push_back(static_cast<int>(i));
    inc[covers[i].second].push_back(static_cast<int>(i));
  }
  for (int v = 0; v < n; ++v)
    if (inc[v].size() != 2) return false;  // not a single cycle; no exact argument
  // traverse the cycle
  std::vector<int> word;  // +(m+1) for forward, -(m+1) for backward
  int start = 0, at = 0, via = -1;
  size_t steps = 0;
  do {
    int ci = (inc[at][0] != via) ? inc[at][0] : inc[at][1];
    auto [a, b] = covers[ci];
    bool up = (a == at);
    // element-category morphism over F(a <= b)
    MorId f = F.on_mor[bp.rel(a, b)];
    int y = lift.tuple[b];
    if (!C.is_identity(f)) {
      MorId em = E.cat.morphism_index("(" + C.morphisms[f].name + "," +
                                      X.carrier[C.cod(f)][y] + ")");
      if (em < 0) return false;
      int tok = up ? (em + 1) : -(em + 1);
      if (!word.empty() && word.back() == -tok)
        word.pop_back();
      else
        word.push_back(tok);
    }
    via = ci;
    at = up ? b : a;
    if (++steps > covers.size() + 1) return false;
  } while (at != start);
  if (steps != covers.size()) return false;  // disconnected Hasse diagram
  return !word.empty();
}

}  // namespace detail

// Bounded check of Asph_{n,k,F} on X: for each lift of F, search l = 0..max_l
// for an extension, i.e. a functor sd^{k+l} Delta[n] -> elements(X) agreeing
// with the lift along the collapse map on the boundary. Exact refutations are
// issued where a disconnection (n <= 1) or an essential-cycle argument (n = 2,
// 1-dimensional element category) applies.
inline AsphVerdict check_asph(const FinCat& C, const Presheaf& X, int n, int k,
                              const Functor& F, int max_l, long long* budget = nullptr) {
  if (n < 0 || k < 1) throw error(errc::bounds_error, "Asph needs n >= 0 and k >= 1");
  Poset bp = sd_boundary_poset(n, k);
  std::string why;
  if (!validate_functor(F, bp.cat, C, &why))
    throw error(errc::bounds_error, "F is not a functor sd^k dDelta[n] -> C: " + why);

  std::vector<LiftAssignment> lifts;
  enumerate_lifts(
      bp.cat, F, X, {},
      [&](const LiftAssignment& L) {
        lifts.push_back(L);
        return true;
      },
      budget);
  AsphVerdict V;
  if (budget && *budget < 0) {
    V.status = AsphVerdict::Status::ExhaustedBound;
    V.reason = "search budget exhausted while enumerating lifts";
    return V;
  }
  if (bp.size() > 0 && lifts.empty()) {
    V.status = AsphVerdict::Status::Vacuous;
    return V;
  }

  ElementsResult E = category_of_elements(X);
  std::vector<int> found_l(lifts.size(), -1);

  for (int l = 0; l <= max_l; ++l) {
    bool all_done = true;
    for (int f : found_l)
      if (f < 0) all_done = false;
    if (all_done) break;

    Poset sp = sd_simplex_poset(n, k + l);
    CollapseTower T = collapse_power(bp, l);
    const Poset& bpl = T.levels.back();
    // boundary elements embed into the simplex subdivision by name
    std::vector<ObjId> incl_obj(bpl.size());
    for (int e = 0; e < bpl.size(); ++e) {
      incl_obj[e] = sp.cat.object_index(bpl.name(e));
      if (incl_obj[e] < 0)
        throw error(errc::bounds_error, "boundary element missing from simplex subdivision");
    }
    for (size_t li = 0; li < lifts.size(); ++li) {
      if (found_l[li] >= 0) continue;
      const auto& lift = lifts[li];
      FunctorConstraint con;
      for (int e = 0; e < bpl.size(); ++e) {
        int pe = T.collapse.on_obj[e];
        con.obj[incl_obj[e]] = E.obj_of[F.on_obj[pe]][lift.tuple[pe]];
      }
      for (MorId m = 0; m < bpl.cat.num_morphisms(); ++m) {
        ObjId a = bpl.cat.dom(m), b = bpl.cat.cod(m);
        MorId f = F.on_mor[T.collapse.on_mor[m]];
        MorId srel = sp.rel(incl_obj[a], incl_obj[b]);
        if (C.is_identity(f)) {
          con.mor[srel] = E.cat.identities[con.obj[incl_obj[b]]];
        } else {
          int y = lift.tuple[T.collapse.on_obj[b]];
          MorId em = E.cat.morphism_index("(" + C.morphisms[f].name + "," +
                                          X.carrier[C.cod(f)][y] + ")");
          con.mor[srel] = em;
        }
      }
      bool found = false;
      enumerate_functors(
          sp, E.cat, con,
          [&](const Functor&) {
            found = true;
            return false;
          },
          budget);
      if (found) found_l[li] = l;
      if (!found && budget && *budget < 0) break;
    }
    if (budget && *budget < 0) break;
  }
  bool out_of_budget = budget && *budget < 0;

  bool all_found = true;
  int lmax = 0;
  for (size_t li = 0; li < lifts.size(); ++li) {
    if (found_l[li] < 0)
      all_found = false;
    else
      lmax = std::max(lmax, found_l[li]);
  }
  if (all_found) {
    V.status = AsphVerdict::Status::HoldsWithin;
    V.l = lmax;
    return V;
  }

  // exact refutation attempts for the stuck lifts
  auto comp = detail::category_components(E.cat);
  bool one_dim = nerve(E.cat, 2).dim_count(2) == 0;
  for (size_t li = 0; li < lifts.size(); ++li) {
    if (found_l[li] >= 0) continue;
    const auto& lift = lifts[li];
    V.stuck.push_back(lift);
    if (n == 0) {
      // the empty lift extends iff the element category is nonempty
      V.status = AsphVerdict::Status::RefutedExactly;
      V.reason = "element category is empty";
      return V;
    }
    if (n == 1) {
      std::set<int> comps;
      for (int e = 0; e < bp.size(); ++e)
        comps.insert(comp[E.obj_of[F.on_obj[e]][lift.tuple[e]]]);
      if (comps.size() > 1) {
        V.status = AsphVerdict::Status::RefutedExactly;
        V.reason = "lift endpoints lie in different components of the element category";
        return V;
      }
    }
    if (n == 2 && one_dim && detail::loop_essential(bp, F, C, X, E, lift)) {
      V.status = AsphVerdict::Status::RefutedExactly;
      V.reason = "lift traces an essential cycle in the 1-dimensional element category";
      return V;
    }
  }
  V.status = AsphVerdict::Status::ExhaustedBound;
  if (out_of_budget) V.reason = "search budget exhausted";
  return V;
}

// ---------------------------------------------------------------------------
// Model reports

struct Bounds {
  int n_max = 2;
  int k_max = 2;
  int l_max = 2;
  int D = 2;  // acyclicity is checked in degrees 0..D
  // Total deterministic work budget (search nodes) for the Asph sweep; -1 is
  // unlimited. Exhaustion downgrades the verdict to Undetermined, never flips
  // it.
  long long sweep_budget = 1000000;
};

struct ModelReport {
  enum class Overall { Model, NotModel, Undetermined };
  Overall overall = Overall::Undetermined;
  bool exact = false;  // verdict is exact, not merely bounded
  InjReport inj;
  std::vector<HomologyGroup> element_homology;  // degrees 0..D of elements(X)
  bool one_dimensional = false;
  std::map<std::tuple<int, int, int>, AsphVerdict> asph;  // (n, k, F index)
  std::string witness;
};

inline const char* overall_name(ModelReport::Overall o) {
  switch (o) {
    case ModelReport::Overall::Model: return "Model";
    case ModelReport::Overall::NotModel: return "NotModel";
    case ModelReport::Overall::Undetermined: return "Undetermined";
  }
  return "?";
}

// Decide (or bound) membership in Mod^str(T_contr(C)). The verdict is exact
// when the category of elements is at most 1-dimensional or an exact failure
// (Inj, homology, refuted Asph instance) is found; otherwise Undetermined
// with all bounded checks passing.
inline ModelReport check_tcontr(const FinCat& C, const Presheaf& X, const Bounds& bounds = {}) {
  if (!is_category_of_monos(C))
    throw error(errc::not_mono_category, "base category has a non-monomorphism");
  ModelReport R;
  R.inj = check_inj(C, X);
  if (!R.inj.pass) {
    R.overall = ModelReport::Overall::NotModel;
    R.exact = true;
    const auto& w = R.inj.violations.front();
    R.witness = "Inj fails at (" + C.objects[w.c] + ", " + X.carrier[w.c][w.x] + "): [" +
                C.morphisms[w.sigma1].name + "] and [" + C.morphisms[w.sigma2].name +
                "] agree on it";
    return R;
  }
  if (X.empty()) {
    R.overall = ModelReport::Overall::NotModel;
    R.exact = true;
    R.witness = "empty presheaf: the n = 0 instance requires an element";
    return R;
  }
  ElementsResult E = category_of_elements(X);
  TruncatedSSet N = nerve(E.cat, bounds.D + 1);
  R.element_homology = homology(N, bounds.D);
  bool acyclic = R.element_homology[0].is_Z();
  int bad_degree = acyclic ? -1 : 0;
  for (int d = 1; d <= bounds.D && acyclic; ++d)
    if (!R.element_homology[d].is_zero()) {
      acyclic = false;
      bad_degree = d;
    }
  if (!acyclic) {
    R.overall = ModelReport::Overall::NotModel;
    R.exact = true;
    R.witness = "H_" + std::to_string(bad_degree) + "(elements) = " +
                format_homology(R.element_homology[bad_degree]);
    return R;
  }
  R.one_dimensional = (N.dim_count(2) == 0);
  if (R.one_dimensional) {
    // exact decision: the nerve is a graph, weak contractibility = tree
    bool ok = one_dim_contractibility(E.cat);
    R.exact = true;
    if (ok) {
      R.overall = ModelReport::Overall::Model;
      R.witness = "1-dimensional element category is a tree";
    } else {
      R.overall = ModelReport::Overall::NotModel;
      R.witness = "1-dimensional element category is not a tree";
    }
    return R;
  }
  // bounded Asph sweep under a shared work budget
  long long budget_store = bounds.sweep_budget;
  long long* budget = bounds.sweep_budget < 0 ? nullptr : &budget_store;
  bool refuted = false, budget_out = false;
  for (int n = 0; n <= bounds.n_max && !refuted && !budget_out; ++n) {
    for (int k = 1; k <= bounds.k_max && !refuted && !budget_out; ++k) {
      if (n == 0 && k > 1) break;  // the boundary of a point is empty for every k
      Poset bp = sd_boundary_poset(n, k);
      int fi = 0;
      enumerate_functors(
          bp, C, {},
          [&](const Functor& F) {
            AsphVerdict v = check_asph(C, X, n, k, F, bounds.l_max, budget);
            if (v.status == AsphVerdict::Status::RefutedExactly) {
              refuted = true;
              R.witness = "Asph(n=" + std::to_string(n) + ",k=" + std::to_string(k) +
                          ",F#" + std::to_string(fi) + ") refuted: " + v.reason;
            }
            R.asph[{n, k, fi}] = std::move(v);
            ++fi;
            return !refuted && !(budget && *budget < 0);
          },
          budget);
      if (budget && *budget < 0) budget_out = true;
    }
  }
  if (refuted) {
    R.overall = ModelReport::Overall::NotModel;
    R.exact = true;
    return R;
  }
  R.overall = ModelReport::Overall::Undetermined;
  R.exact = false;
  R.witness = budget_out ? "search budget exhausted during the Asph sweep"
                         : "all bounded checks passed; no exact criterion applies";
  for (const auto& [key, v] : R.asph)
    if (!budget_out && v.status == AsphVerdict::Status::ExhaustedBound) {
      R.witness = "Asph(n=" + std::to_string(std::get<0>(key)) + ",k=" +
                  std::to_string(std::get<1>(key)) + ",F#" +
                  std::to_string(std::get<2>(key)) + ") has unextended lifts within the bound";
      break;
    }
  return R;
}

struct RelModelReport {
  ModelReport::Overall overall = ModelReport::Overall::Undetermined;
  bool exact = false;
  std::vector<ModelReport> component_reports;
  bool coloring_tree = false;
  std::string witness;
};

// The relative theory over Sigma C0: X is a model iff every connected
// component of the reduct is a T_contr(C0)-model and the coloring graph is a
// tree. A non-tree coloring graph refutes exactly regardless of the component
// verdicts.
inline RelModelReport check_tcontr_rel(const SuspensionBase& S, const Presheaf& X,
                                       const Bounds& bounds = {}) {
  if (X.base != S.cat)
    throw error(errc::not_a_suspension_base, "presheaf base is not the given suspension");
  RelModelReport R;
  ColoredDecomposition D = decompose_suspension(S, X);
  R.coloring_tree = is_tree(coloring_graph(D));

  bool all_model_exact = true;
  bool any_undetermined = false;
  for (const auto& part : D.components.parts) {
    ModelReport pr = check_tcontr(S.core, part, bounds);
    if (pr.overall == ModelReport::Overall::NotModel) {
      R.overall = ModelReport::Overall::NotModel;
      R.exact = pr.exact;
      R.witness = "reduct component is not a T_contr(C0)-model: " + pr.witness;
      R.component_reports.push_back(std::move(pr));
      return R;
    }
    if (pr.overall != ModelReport::Overall::Model || !pr.exact) all_model_exact = false;
    if (pr.overall == ModelReport::Overall::Undetermined) any_undetermined = true;
    R.component_reports.push_back(std::move(pr));
  }
  if (!R.coloring_tree) {
    // either the reduct axioms fail, or they hold and C | X is the non-tree
    // coloring graph up to homotopy; not a model either way
    R.overall = ModelReport::Overall::NotModel;
    R.exact = true;
    R.witness = "coloring graph is not a tree";
    return R;
  }
  if (all_model_exact) {
    R.overall = ModelReport::Overall::Model;
    R.exact = true;
    R.witness = "all reduct components are exact models and the coloring graph is a tree";
  } else {
    R.overall = ModelReport::Overall::Undetermined;
    R.exact = false;
    R.witness = any_undetermined ? "some reduct component verdict is only bounded"
                                 : "component verdicts are not exact";
  }
  return R;
}

// ---------------------------------------------------------------------------
// Exact oracles for the example bases

// X over the category V => E (morphisms named "s", "t"): true iff X is a
// directed tree (loop-free, no parallel or anti-parallel edges, underlying
// undirected graph connected and acyclic).
inline bool directed_tree_oracle(const Presheaf& X) {
  MorId s = X.base.morphism_index("s"), t = X.base.morphism_index("t");
  ObjId V = X.base.object_index("V"), Eo = X.base.object_index("E");
  if (s < 0 || t < 0 || V < 0 || Eo < 0)
    throw error(errc::base_mismatch, "directed_tree_oracle needs the V => E base");
  int nv = X.carrier_size(V), ne = X.carrier_size(Eo);
  if (nv == 0) return false;
  std::set<std::pair<int, int>> pairs;
  for (int e = 0; e < ne; ++e) {
    int a = X.apply(s, e), b = X.apply(t, e);
    if (a == b) return false;  // loop
    auto key = std::minmax(a, b);
    if (!pairs.insert({key.first, key.second}).second) return false;  // parallel or anti-parallel
  }
  if (ne != nv - 1) return false;
  std::vector<int> parent(nv);
  for (int i = 0; i < nv; ++i) parent[i] = i;
  std::function<int(int)> root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : pairs) {
    int ra = root(a), rb = root(b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  int r = root(0);
  for (int i = 1; i < nv; ++i)
    if (root(i) != r) return false;
  return true;
}

// X over the involution base (morphisms "s", "t", "tau"): true iff the
// quotient by the edge involution is a simple, connected, acyclic undirected
// graph, with tau fixed-point-free and no loops.
inline bool undirected_tree_oracle(const Presheaf& X) {
  MorId s = X.base.morphism_index("s"), t = X.base.morphism_index("t");
  MorId tau = X.base.morphism_index("tau");
  ObjId V = X.base.object_index("V"), Eo = X.base.object_index("E");
  if (s < 0 || t < 0 || tau < 0 || V < 0 || Eo < 0)
    throw error(errc::base_mismatch, "undirected_tree_oracle needs the involution base");
  int nv = X.carrier_size(V), ne = X.carrier_size(Eo);
  if (nv == 0) return false;
  std::set<std::pair<int, int>> pairs;
  int npairs = 0;
  for (int e = 0; e < ne; ++e) {
    if (X.apply(tau, e) == e) return false;  // tau-fixed edge
    int a = X.apply(s, e), b = X.apply(t, e);
    if (a == b) return false;  // loop
    if (e < X.apply(tau, e)) {
      ++npairs;
      auto key = std::minmax(a, b);
      if (!pairs.insert({key.first, key.second}).second) return false;  // multi-edge
    }
  }
  if (npairs != nv - 1) return false;
  std::vector<int> parent(nv);
  for (int i = 0; i < nv; ++i) parent[i] = i;
  std::function<int(int)> root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : pairs) {
    int ra = root(a), rb = root(b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  int r = root(0);
  for (int i = 1; i < nv; ++i)
    if (root(i) != r) return false;
  return true;
}

// X over Sigma(V => E): every reduct component is a directed tree and the
// coloring graph is a tree. Agrees with check_tcontr_rel's exact verdict.
inline bool labeled_tree_oracle(const SuspensionBase& S, const Presheaf& X) {
  ColoredDecomposition D = decompose_suspension(S, X);
  for (const auto& part : D.components.parts)
    if (!directed_tree_oracle(part)) return false;
  return is_tree(coloring_graph(D));
}

}  // namespace contraaec
