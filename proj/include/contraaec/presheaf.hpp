#pragma once

// Finite presheaves on a finite category: validation, representables,
// categories of elements, morphisms, pushouts, coproducts, and connected
// components.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "contraaec/error.hpp"
#include "contraaec/fincat.hpp"

namespace contraaec {

struct RawPresheaf {
  std::map<std::string, std::vector<std::string>> carriers;          // object -> elements
  std::map<std::string, std::map<std::string, std::string>> actions; // morphism -> map
};

// A finite presheaf: carrier per object, and for f: C -> D a function
// action(f): carrier(D) -> carrier(C), stored as index tables.
struct Presheaf {
  FinCat base;
  std::vector<std::vector<std::string>> carrier;  // per object, sorted names
  std::vector<std::vector<int>> action;           // per morphism: carrier[cod] -> carrier[dom]

  int carrier_size(ObjId o) const { return static_cast<int>(carrier[o].size()); }
  int total_elements() const {
    int t = 0;
    for (const auto& c : carrier) t += static_cast<int>(c.size());
    return t;
  }
  bool empty() const { return total_elements() == 0; }
  int apply(MorId m, int elem) const { return action[m][elem]; }
  int element_index(ObjId o, const std::string& name) const {
    const auto& c = carrier[o];
    auto it = std::lower_bound(c.begin(), c.end(), name);
    return (it != c.end() && *it == name) ? static_cast<int>(it - c.begin()) : -1;
  }
  bool operator==(const Presheaf& o) const {
    return base == o.base && carrier == o.carrier && action == o.action;
  }
};

// Checks the presheaf axioms exhaustively: identities act as the identity,
// and action(f) . action(g) = action(g f) for composable f, g.
inline Presheaf validate_presheaf(const FinCat& base, const RawPresheaf& raw) {
  Presheaf X;
  X.base = base;
  X.carrier.resize(base.num_objects());
  for (const auto& [obj, elems] : raw.carriers) {
    ObjId o = base.object_index(obj);
    if (o < 0) throw error(errc::dangling_element, "carrier for unknown object '" + obj + "'");
    X.carrier[o] = elems;
    std::sort(X.carrier[o].begin(), X.carrier[o].end());
    for (size_t i = 1; i < X.carrier[o].size(); ++i)
      if (X.carrier[o][i] == X.carrier[o][i - 1])
        throw error(errc::dangling_element,
                    "duplicate element '" + X.carrier[o][i] + "' at object '" + obj + "'");
  }
  X.action.resize(base.num_morphisms());
  for (MorId m = 0; m < base.num_morphisms(); ++m) {
    ObjId d = base.dom(m), c = base.cod(m);
    X.action[m].assign(X.carrier[c].size(), -1);
    auto it = raw.actions.find(base.morphisms[m].name);
    if (base.is_identity(m)) {
      // identity actions may be left implicit
      for (size_t i = 0; i < X.carrier[c].size(); ++i) X.action[m][i] = static_cast<int>(i);
      if (it != raw.actions.end())
        for (const auto& [from, to] : it->second) {
          int fi = X.element_index(c, from), ti = X.element_index(d, to);
          if (fi < 0 || ti < 0)
            throw error(errc::dangling_element, "action of '" + base.morphisms[m].name +
                                                    "' references unknown element");
          if (fi != ti)
            throw error(errc::identity_axiom_violation,
                        "[" + base.morphisms[m].name + "](" + from + ") = " + to + " != " + from);
        }
      continue;
    }
    if (it == raw.actions.end() && !X.carrier[c].empty())
      throw error(errc::dangling_element,
                  "no action table for morphism '" + base.morphisms[m].name + "'");
    if (it != raw.actions.end()) {
      for (const auto& [from, to] : it->second) {
        int fi = X.element_index(c, from);
        int ti = X.element_index(d, to);
        if (fi < 0)
          throw error(errc::dangling_element, "action of '" + base.morphisms[m].name +
                                                  "' defined on unknown element '" + from + "'");
        if (ti < 0)
          throw error(errc::dangling_element, "action of '" + base.morphisms[m].name +
                                                  "' maps to unknown element '" + to + "'");
        X.action[m][fi] = ti;
      }
      for (size_t i = 0; i < X.action[m].size(); ++i)
        if (X.action[m][i] < 0)
          throw error(errc::dangling_element, "action of '" + base.morphisms[m].name +
                                                  "' undefined on '" + X.carrier[c][i] + "'");
    }
  }
  // contravariant functoriality: X_f(X_g(x)) = X_{g f}(x)
  for (MorId g = 0; g < base.num_morphisms(); ++g)
    for (MorId f = 0; f < base.num_morphisms(); ++f) {
      if (!base.composable(g, f)) continue;
      MorId gf = base.compose2(g, f);
      for (int x = 0; x < X.carrier_size(base.cod(g)); ++x)
        if (X.apply(f, X.apply(g, x)) != X.apply(gf, x))
          throw error(errc::composition_axiom_violation,
                      "[" + base.morphisms[f].name + "]([" + base.morphisms[g].name + "](" +
                          X.carrier[base.cod(g)][x] + ")) != [" +
                          base.morphisms[gf].name + "](...)");
    }
  return X;
}

inline RawPresheaf to_raw(const Presheaf& X) {
  RawPresheaf raw;
  for (ObjId o = 0; o < X.base.num_objects(); ++o)
    raw.carriers[X.base.objects[o]] = X.carrier[o];
  for (MorId m = 0; m < X.base.num_morphisms(); ++m) {
    if (X.base.is_identity(m)) continue;
    std::map<std::string, std::string> tbl;
    ObjId d = X.base.dom(m), c = X.base.cod(m);
    for (int i = 0; i < X.carrier_size(c); ++i)
      tbl[X.carrier[c][i]] = X.carrier[d][X.apply(m, i)];
    raw.actions[X.base.morphisms[m].name] = std::move(tbl);
  }
  return raw;
}

// The representable presheaf Hom(-, c); elements are named by the morphisms.
inline Presheaf yoneda(const FinCat& C, ObjId c) {
  RawPresheaf raw;
  for (ObjId d = 0; d < C.num_objects(); ++d) {
    std::vector<std::string> elems;
    for (MorId m : C.hom(d, c)) elems.push_back(C.morphisms[m].name);
    raw.carriers[C.objects[d]] = elems;
  }
  for (MorId f = 0; f < C.num_morphisms(); ++f) {
    if (C.is_identity(f)) continue;
    std::map<std::string, std::string> tbl;
    for (MorId s : C.hom(C.cod(f), c))
      tbl[C.morphisms[s].name] = C.morphisms[C.compose2(s, f)].name;
    raw.actions[C.morphisms[f].name] = std::move(tbl);
  }
  return validate_presheaf(C, raw);
}

// ---------------------------------------------------------------------------
// Presheaf morphisms

struct PresheafMorphism {
  std::vector<std::vector<int>> components;  // per object: src carrier -> tgt carrier
};

inline bool validate_presheaf_morphism(const PresheafMorphism& phi, const Presheaf& X,
                                       const Presheaf& Y, std::string* why = nullptr) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (X.base != Y.base) throw error(errc::base_mismatch, "morphism between different bases");
  if (phi.components.size() != X.carrier.size()) return fail("component count mismatch");
  for (ObjId o = 0; o < X.base.num_objects(); ++o) {
    if (static_cast<int>(phi.components[o].size()) != X.carrier_size(o))
      return fail("component size mismatch at " + X.base.objects[o]);
    for (int v : phi.components[o])
      if (v < 0 || v >= Y.carrier_size(o)) return fail("component out of range");
  }
  // naturality: phi_C . X_f = Y_f . phi_D for f: C -> D
  for (MorId f = 0; f < X.base.num_morphisms(); ++f) {
    ObjId c = X.base.dom(f), d = X.base.cod(f);
    for (int x = 0; x < X.carrier_size(d); ++x)
      if (phi.components[c][X.apply(f, x)] != Y.apply(f, phi.components[d][x]))
        return fail("naturality fails at " + X.base.morphisms[f].name);
  }
  return true;
}

// In this relation-free signature, a strong embedding is exactly a levelwise
// injective homomorphism.
inline bool is_strong_embedding(const PresheafMorphism& phi, const Presheaf& X,
                                const Presheaf& Y) {
  if (!validate_presheaf_morphism(phi, X, Y)) return false;
  for (const auto& comp : phi.components) {
    std::set<int> seen;
    for (int v : comp)
      if (!seen.insert(v).second) return false;
  }
  return true;
}

inline PresheafMorphism identity_morphism(const Presheaf& X) {
  PresheafMorphism phi;
  phi.components.resize(X.carrier.size());
  for (size_t o = 0; o < X.carrier.size(); ++o) {
    phi.components[o].resize(X.carrier[o].size());
    std::iota(phi.components[o].begin(), phi.components[o].end(), 0);
  }
  return phi;
}

inline PresheafMorphism compose_presheaf_morphisms(const PresheafMorphism& g,
                                                   const PresheafMorphism& f) {
  PresheafMorphism h;
  h.components.resize(f.components.size());
  for (size_t o = 0; o < f.components.size(); ++o)
    for (int v : f.components[o]) h.components[o].push_back(g.components[o][v]);
  return h;
}

// The morphism yoneda(c) -> X classifying x via the Yoneda lemma.
inline PresheafMorphism classifying_morphism(const FinCat& C, const Presheaf& X, ObjId c,
                                             int x, const Presheaf& yc) {
  PresheafMorphism phi;
  phi.components.resize(C.num_objects());
  for (ObjId d = 0; d < C.num_objects(); ++d)
    for (const auto& sname : yc.carrier[d]) {
      MorId s = C.morphism_index(sname);
      phi.components[d].push_back(X.apply(s, x));
    }
  return phi;
}

// All natural transformations X -> Y, in deterministic order. Intended for
// small carriers only.
inline void enumerate_presheaf_morphisms(const Presheaf& X, const Presheaf& Y,
                                         const std::function<bool(const PresheafMorphism&)>& cb) {
  if (X.base != Y.base) throw error(errc::base_mismatch, "enumeration between different bases");
  int nobj = X.base.num_objects();
  PresheafMorphism phi;
  phi.components.resize(nobj);
  for (ObjId o = 0; o < nobj; ++o) phi.components[o].assign(X.carrier_size(o), -1);
  bool stop = false;
  // flatten (object, element) pairs
  std::vector<std::pair<ObjId, int>> slots;
  for (ObjId o = 0; o < nobj; ++o)
    for (int i = 0; i < X.carrier_size(o); ++i) slots.emplace_back(o, i);

  auto consistent_so_far = [&](ObjId o, int i) {
    // check naturality constraints that involve the newly assigned slot
    for (MorId f = 0; f < X.base.num_morphisms(); ++f) {
      ObjId c = X.base.dom(f), d = X.base.cod(f);
      if (d == o) {
        int xc = X.apply(f, i);
        if (phi.components[c][xc] >= 0 &&
            phi.components[c][xc] != Y.apply(f, phi.components[d][i]))
          return false;
      }
      if (c == o) {
        for (int x = 0; x < X.carrier_size(d); ++x)
          if (X.apply(f, x) == i && phi.components[d][x] >= 0 &&
              phi.components[c][i] != Y.apply(f, phi.components[d][x]))
            return false;
      }
    }
    return true;
  };

  std::function<void(size_t)> rec = [&](size_t k) {
    if (stop) return;
    if (k == slots.size()) {
      if (!cb(phi)) stop = true;
      return;
    }
    auto [o, i] = slots[k];
    for (int v = 0; v < Y.carrier_size(o); ++v) {
      phi.components[o][i] = v;
      if (consistent_so_far(o, i)) rec(k + 1);
      if (stop) break;
    }
    phi.components[o][i] = -1;
  };
  rec(0);
}

// ---------------------------------------------------------------------------
// Category of elements

struct ElementsResult {
  FinCat cat;
  Functor projection;                       // cat -> base
  std::vector<std::pair<ObjId, int>> elems; // per object of cat: (base object, carrier index)
  std::vector<std::vector<ObjId>> obj_of;   // obj_of[base obj][carrier ix] -> object of cat
};

inline std::string element_object_name(const Presheaf& X, ObjId c, int x) {
  return "(" + X.base.objects[c] + "," + X.carrier[c][x] + ")";
}

// Objects are pairs (c, x in X(c)); a morphism (c,x) -> (d,y) for each
// f: c -> d with X_f(y) = x.
inline ElementsResult category_of_elements(const Presheaf& X) {
  const FinCat& B = X.base;
  RawCategory raw;
  for (ObjId c = 0; c < B.num_objects(); ++c)
    for (int x = 0; x < X.carrier_size(c); ++x)
      raw.objects.push_back(element_object_name(X, c, x));
  auto mor_name = [&](MorId f, int y) {
    return "(" + B.morphisms[f].name + "," + X.carrier[B.cod(f)][y] + ")";
  };
  for (MorId f = 0; f < B.num_morphisms(); ++f)
    for (int y = 0; y < X.carrier_size(B.cod(f)); ++y) {
      int x = X.apply(f, y);
      raw.morphisms.push_back(
          {mor_name(f, y), element_object_name(X, B.dom(f), x),
           element_object_name(X, B.cod(f), y)});
      if (B.is_identity(f)) raw.identities[element_object_name(X, B.cod(f), y)] = mor_name(f, y);
    }
  for (MorId g = 0; g < B.num_morphisms(); ++g)
    for (MorId f = 0; f < B.num_morphisms(); ++f) {
      if (!B.composable(g, f)) continue;
      MorId gf = B.compose2(g, f);
      for (int z = 0; z < X.carrier_size(B.cod(g)); ++z) {
        int y = X.apply(g, z);
        raw.compose.push_back({mor_name(g, z), mor_name(f, y), mor_name(gf, z)});
      }
    }
  ElementsResult R;
  R.cat = validate_category(raw);
  R.elems.resize(R.cat.num_objects());
  R.obj_of.resize(B.num_objects());
  for (ObjId c = 0; c < B.num_objects(); ++c) {
    R.obj_of[c].resize(X.carrier_size(c));
    for (int x = 0; x < X.carrier_size(c); ++x) {
      ObjId e = R.cat.object_index(element_object_name(X, c, x));
      R.elems[e] = {c, x};
      R.obj_of[c][x] = e;
    }
  }
  R.projection.on_obj.resize(R.cat.num_objects());
  for (ObjId e = 0; e < R.cat.num_objects(); ++e) R.projection.on_obj[e] = R.elems[e].first;
  R.projection.on_mor.resize(R.cat.num_morphisms());
  for (MorId m = 0; m < R.cat.num_morphisms(); ++m) {
    // recover f from the name "(f,y)": match against dom/cod instead of parsing
    ObjId c = R.elems[R.cat.dom(m)].first;
    ObjId d = R.elems[R.cat.cod(m)].first;
    int x = R.elems[R.cat.dom(m)].second;
    int y = R.elems[R.cat.cod(m)].second;
    MorId found = -1;
    for (MorId f : B.hom(c, d))
      if (X.apply(f, y) == x &&
          R.cat.morphisms[m].name == "(" + B.morphisms[f].name + "," + X.carrier[d][y] + ")")
        found = f;
    R.projection.on_mor[m] = found;
  }
  return R;
}

// ---------------------------------------------------------------------------
// Colimits

struct PushoutResult {
  Presheaf object;
  PresheafMorphism leg1;  // B -> pushout
  PresheafMorphism leg2;  // C -> pushout
};

// Pointwise set pushout of B <- A -> C: quotient of the disjoint union by the
// equivalence closure of f(a) ~ g(a). Classes are named by their sorted
// member lists, so the result is canonical.
inline PushoutResult pushout(const PresheafMorphism& f, const PresheafMorphism& g,
                             const Presheaf& A, const Presheaf& B, const Presheaf& C) {
  if (A.base != B.base || A.base != C.base)
    throw error(errc::base_mismatch, "pushout requires a common base");
  std::string why;
  if (!validate_presheaf_morphism(f, A, B, &why))
    throw error(errc::base_mismatch, "invalid leg A -> B: " + why);
  if (!validate_presheaf_morphism(g, A, C, &why))
    throw error(errc::base_mismatch, "invalid leg A -> C: " + why);
  const FinCat& base = A.base;
  int nobj = base.num_objects();

  // union-find over B(o) followed by C(o)
  std::vector<std::vector<int>> parent(nobj);
  for (ObjId o = 0; o < nobj; ++o) {
    parent[o].resize(B.carrier_size(o) + C.carrier_size(o));
    std::iota(parent[o].begin(), parent[o].end(), 0);
  }
  auto root = [&](ObjId o, int x) {
    while (parent[o][x] != x) x = parent[o][x] = parent[o][parent[o][x]];
    return x;
  };
  for (ObjId o = 0; o < nobj; ++o)
    for (int a = 0; a < A.carrier_size(o); ++a) {
      int rb = root(o, f.components[o][a]);
      int rc = root(o, B.carrier_size(o) + g.components[o][a]);
      if (rb != rc) parent[o][rb] = rc;
    }

  // canonical class names
  std::vector<std::map<int, std::vector<std::string>>> members(nobj);
  for (ObjId o = 0; o < nobj; ++o) {
    for (int b = 0; b < B.carrier_size(o); ++b)
      members[o][root(o, b)].push_back("1:" + B.carrier[o][b]);
    for (int c = 0; c < C.carrier_size(o); ++c)
      members[o][root(o, B.carrier_size(o) + c)].push_back("2:" + C.carrier[o][c]);
  }
  std::vector<std::map<int, std::string>> class_name(nobj);
  RawPresheaf raw;
  for (ObjId o = 0; o < nobj; ++o) {
    std::vector<std::string> elems;
    for (auto& [r, ms] : members[o]) {
      std::sort(ms.begin(), ms.end());
      std::string nm = "[";
      for (size_t i = 0; i < ms.size(); ++i) {
        if (i) nm += "|";
        nm += ms[i];
      }
      nm += "]";
      class_name[o][r] = nm;
      elems.push_back(nm);
    }
    raw.carriers[base.objects[o]] = elems;
  }
  for (MorId m = 0; m < base.num_morphisms(); ++m) {
    if (base.is_identity(m)) continue;
    ObjId dm = base.dom(m), cm = base.cod(m);
    std::map<std::string, std::string> tbl;
    for (int b = 0; b < B.carrier_size(cm); ++b)
      tbl[class_name[cm][root(cm, b)]] = class_name[dm][root(dm, B.apply(m, b))];
    for (int c = 0; c < C.carrier_size(cm); ++c) {
      std::string from = class_name[cm][root(cm, B.carrier_size(cm) + c)];
      std::string to = class_name[dm][root(dm, B.carrier_size(dm) + C.apply(m, c))];
      auto it = tbl.find(from);
      if (it != tbl.end() && it->second != to)
        throw error(errc::composition_axiom_violation, "pushout action is not well-defined");
      tbl[from] = to;
    }
    raw.actions[base.morphisms[m].name] = std::move(tbl);
  }
  PushoutResult R;
  R.object = validate_presheaf(base, raw);
  R.leg1.components.resize(nobj);
  R.leg2.components.resize(nobj);
  for (ObjId o = 0; o < nobj; ++o) {
    for (int b = 0; b < B.carrier_size(o); ++b)
      R.leg1.components[o].push_back(
          R.object.element_index(o, class_name[o][root(o, b)]));
    for (int c = 0; c < C.carrier_size(o); ++c)
      R.leg2.components[o].push_back(
          R.object.element_index(o, class_name[o][root(o, B.carrier_size(o) + c)]));
  }
  return R;
}

// Disjoint union, elements tagged "<i>:" per summand.
inline Presheaf coproduct(const std::vector<Presheaf>& Xs) {
  if (Xs.empty()) throw error(errc::base_mismatch, "coproduct of an empty list needs a base");
  const FinCat& base = Xs[0].base;
  for (const auto& X : Xs)
    if (X.base != base) throw error(errc::base_mismatch, "coproduct over different bases");
  RawPresheaf raw;
  auto tag = [](size_t i, const std::string& e) { return std::to_string(i) + ":" + e; };
  for (ObjId o = 0; o < base.num_objects(); ++o) {
    std::vector<std::string> elems;
    for (size_t i = 0; i < Xs.size(); ++i)
      for (const auto& e : Xs[i].carrier[o]) elems.push_back(tag(i, e));
    raw.carriers[base.objects[o]] = elems;
  }
  for (MorId m = 0; m < base.num_morphisms(); ++m) {
    if (base.is_identity(m)) continue;
    std::map<std::string, std::string> tbl;
    ObjId dm = base.dom(m), cm = base.cod(m);
    for (size_t i = 0; i < Xs.size(); ++i)
      for (int x = 0; x < Xs[i].carrier_size(cm); ++x)
        tbl[tag(i, Xs[i].carrier[cm][x])] = tag(i, Xs[i].carrier[dm][Xs[i].apply(m, x)]);
    raw.actions[base.morphisms[m].name] = std::move(tbl);
  }
  return validate_presheaf(base, raw);
}

struct ComponentsResult {
  std::vector<Presheaf> parts;                    // indexed by least element name
  std::vector<std::vector<int>> component_of;     // per (object, carrier index)
  std::vector<PresheafMorphism> inclusions;       // part -> X
};

// Finest coproduct decomposition, computed as connected components of the
// category of elements.
inline ComponentsResult connected_components(const Presheaf& X) {
  ElementsResult E = category_of_elements(X);
  int n = E.cat.num_objects();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (MorId m = 0; m < E.cat.num_morphisms(); ++m) {
    int a = root(E.cat.dom(m)), b = root(E.cat.cod(m));
    if (a != b) parent[a] = b;
  }
  // deterministic component order: by least element-object name
  std::map<int, std::string> least;
  for (ObjId e = 0; e < n; ++e) {
    int r = root(e);
    auto it = least.find(r);
    if (it == least.end() || E.cat.objects[e] < it->second) least[r] = E.cat.objects[e];
  }
  std::vector<std::pair<std::string, int>> order;
  for (auto& [r, nm] : least) order.emplace_back(nm, r);
  std::sort(order.begin(), order.end());
  std::map<int, int> comp_index;
  for (size_t i = 0; i < order.size(); ++i) comp_index[order[i].second] = static_cast<int>(i);

  ComponentsResult R;
  R.component_of.resize(X.base.num_objects());
  for (ObjId o = 0; o < X.base.num_objects(); ++o)
    R.component_of[o].resize(X.carrier_size(o), -1);
  for (ObjId e = 0; e < n; ++e) {
    auto [o, x] = E.elems[e];
    R.component_of[o][x] = comp_index[root(e)];
  }
  int ncomp = static_cast<int>(order.size());
  for (int ci = 0; ci < ncomp; ++ci) {
    RawPresheaf raw;
    for (ObjId o = 0; o < X.base.num_objects(); ++o) {
      std::vector<std::string> elems;
      for (int x = 0; x < X.carrier_size(o); ++x)
        if (R.component_of[o][x] == ci) elems.push_back(X.carrier[o][x]);
      raw.carriers[X.base.objects[o]] = elems;
    }
    for (MorId m = 0; m < X.base.num_morphisms(); ++m) {
      if (X.base.is_identity(m)) continue;
      std::map<std::string, std::string> tbl;
      ObjId dm = X.base.dom(m), cm = X.base.cod(m);
      for (int x = 0; x < X.carrier_size(cm); ++x)
        if (R.component_of[cm][x] == ci)
          tbl[X.carrier[cm][x]] = X.carrier[dm][X.apply(m, x)];
      raw.actions[X.base.morphisms[m].name] = std::move(tbl);
    }
    Presheaf part = validate_presheaf(X.base, raw);
    PresheafMorphism inc;
    inc.components.resize(X.base.num_objects());
    for (ObjId o = 0; o < X.base.num_objects(); ++o)
      for (const auto& e : part.carrier[o])
        inc.components[o].push_back(X.element_index(o, e));
    R.parts.push_back(std::move(part));
    R.inclusions.push_back(std::move(inc));
  }
  return R;
}

}  // namespace contraaec
