#pragma once

// Finite categories with explicit composition tables, posets, functors,
// barycentric subdivision posets, collapse maps, and the suspension of a
// category of monomorphisms.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "contraaec/error.hpp"

namespace contraaec {

using ObjId = int;
using MorId = int;

struct MorData {
  std::string name;
  ObjId dom = -1;
  ObjId cod = -1;
};

// Raw, unvalidated description of a finite category. Everything is by name;
// validate_category resolves names, normalizes order, and checks the axioms.
struct RawCategory {
  std::vector<std::string> objects;
  struct RawMor {
    std::string name, dom, cod;
  };
  std::vector<RawMor> morphisms;
  std::map<std::string, std::string> identities;  // object -> morphism
  struct RawComp {
    std::string g, f, result;  // result = g o f
  };
  std::vector<RawComp> compose;
};

class FinCat {
 public:
  std::vector<std::string> objects;     // sorted by name
  std::vector<MorData> morphisms;       // sorted by name
  std::vector<MorId> identities;        // per object
  std::vector<MorId> comp;              // comp[g * nm + f], -1 if not composable

  int num_objects() const { return static_cast<int>(objects.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms.size()); }

  bool composable(MorId g, MorId f) const {
    return morphisms[f].cod == morphisms[g].dom;
  }
  MorId compose2(MorId g, MorId f) const {
    return comp[static_cast<size_t>(g) * morphisms.size() + f];
  }
  ObjId dom(MorId m) const { return morphisms[m].dom; }
  ObjId cod(MorId m) const { return morphisms[m].cod; }
  bool is_identity(MorId m) const { return identities[morphisms[m].dom] == m; }

  ObjId object_index(const std::string& name) const {
    auto it = obj_ix_.find(name);
    return it == obj_ix_.end() ? -1 : it->second;
  }
  MorId morphism_index(const std::string& name) const {
    auto it = mor_ix_.find(name);
    return it == mor_ix_.end() ? -1 : it->second;
  }

  std::vector<MorId> hom(ObjId a, ObjId b) const {
    std::vector<MorId> out;
    for (MorId m = 0; m < num_morphisms(); ++m)
      if (morphisms[m].dom == a && morphisms[m].cod == b) out.push_back(m);
    return out;
  }

  bool operator==(const FinCat& o) const {
    if (objects != o.objects || identities != o.identities || comp != o.comp)
      return false;
    if (morphisms.size() != o.morphisms.size()) return false;
    for (size_t i = 0; i < morphisms.size(); ++i)
      if (morphisms[i].name != o.morphisms[i].name ||
          morphisms[i].dom != o.morphisms[i].dom ||
          morphisms[i].cod != o.morphisms[i].cod)
        return false;
    return true;
  }
  bool operator!=(const FinCat& o) const { return !(*this == o); }

  void build_index() {
    obj_ix_.clear();
    mor_ix_.clear();
    for (int i = 0; i < num_objects(); ++i) obj_ix_[objects[i]] = i;
    for (int i = 0; i < num_morphisms(); ++i) mor_ix_[morphisms[i].name] = i;
  }

 private:
  std::map<std::string, ObjId> obj_ix_;
  std::map<std::string, MorId> mor_ix_;
};

// Validates the category axioms eagerly: totality and closure of composition,
// identity neutrality, associativity (all exhaustive). Object and morphism
// lists are normalized to name order so serialization round-trips exactly.
inline FinCat validate_category(const RawCategory& raw) {
  FinCat C;
  C.objects = raw.objects;
  std::sort(C.objects.begin(), C.objects.end());
  for (size_t i = 1; i < C.objects.size(); ++i)
    if (C.objects[i] == C.objects[i - 1])
      throw error(errc::dangling_reference, "duplicate object '" + C.objects[i] + "'");

  std::vector<RawCategory::RawMor> ms = raw.morphisms;
  std::sort(ms.begin(), ms.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  C.morphisms.reserve(ms.size());
  for (const auto& m : ms) {
    if (!C.morphisms.empty() && C.morphisms.back().name == m.name)
      throw error(errc::dangling_reference, "duplicate morphism '" + m.name + "'");
    C.morphisms.push_back({m.name, -1, -1});
  }
  C.build_index();
  for (size_t i = 0; i < ms.size(); ++i) {
    MorId mid = C.morphism_index(ms[i].name);
    ObjId d = C.object_index(ms[i].dom), c = C.object_index(ms[i].cod);
    if (d < 0)
      throw error(errc::dangling_reference,
                  "morphism '" + ms[i].name + "' has unknown dom '" + ms[i].dom + "'");
    if (c < 0)
      throw error(errc::dangling_reference,
                  "morphism '" + ms[i].name + "' has unknown cod '" + ms[i].cod + "'");
    C.morphisms[mid].dom = d;
    C.morphisms[mid].cod = c;
  }

  C.identities.assign(C.num_objects(), -1);
  for (const auto& [obj, mor] : raw.identities) {
    ObjId o = C.object_index(obj);
    MorId m = C.morphism_index(mor);
    if (o < 0) throw error(errc::dangling_reference, "identity for unknown object '" + obj + "'");
    if (m < 0) throw error(errc::dangling_reference, "unknown identity morphism '" + mor + "'");
    if (C.dom(m) != o || C.cod(m) != o)
      throw error(errc::identity_violation,
                  "identity '" + mor + "' of '" + obj + "' is not an endomorphism of it");
    C.identities[o] = m;
  }
  for (ObjId o = 0; o < C.num_objects(); ++o)
    if (C.identities[o] < 0)
      throw error(errc::identity_violation, "object '" + C.objects[o] + "' has no identity");

  const int nm = C.num_morphisms();
  C.comp.assign(static_cast<size_t>(nm) * nm, -1);
  for (const auto& e : raw.compose) {
    MorId g = C.morphism_index(e.g), f = C.morphism_index(e.f), r = C.morphism_index(e.result);
    if (g < 0 || f < 0 || r < 0)
      throw error(errc::dangling_reference,
                  "compose entry (" + e.g + ", " + e.f + ") -> " + e.result +
                      " references an unknown morphism");
    if (!C.composable(g, f))
      throw error(errc::dangling_reference,
                  "compose entry (" + e.g + ", " + e.f + ") declared but cod(" + e.f +
                      ") != dom(" + e.g + ")");
    if (C.dom(r) != C.dom(f) || C.cod(r) != C.cod(g))
      throw error(errc::dangling_reference,
                  "composite of (" + e.g + ", " + e.f + ") has wrong dom/cod");
    MorId& slot = C.comp[static_cast<size_t>(g) * nm + f];
    if (slot >= 0 && slot != r)
      throw error(errc::dangling_reference,
                  "conflicting compose entries for (" + e.g + ", " + e.f + ")");
    slot = r;
  }
  // Identity composites may be left implicit in the raw description.
  for (MorId m = 0; m < nm; ++m) {
    MorId idd = C.identities[C.dom(m)], idc = C.identities[C.cod(m)];
    MorId& a = C.comp[static_cast<size_t>(m) * nm + idd];
    if (a < 0) a = m;
    MorId& b = C.comp[static_cast<size_t>(idc) * nm + m];
    if (b < 0) b = m;
  }
  for (MorId g = 0; g < nm; ++g)
    for (MorId f = 0; f < nm; ++f) {
      if (!C.composable(g, f)) continue;
      MorId r = C.compose2(g, f);
      if (r < 0)
        throw error(errc::missing_composite,
                    "no composite declared for (" + C.morphisms[g].name + ", " +
                        C.morphisms[f].name + ")");
    }
  for (MorId m = 0; m < nm; ++m) {
    if (C.compose2(m, C.identities[C.dom(m)]) != m ||
        C.compose2(C.identities[C.cod(m)], m) != m)
      throw error(errc::identity_violation,
                  "identity is not neutral for '" + C.morphisms[m].name + "'");
  }
  for (MorId h = 0; h < nm; ++h)
    for (MorId g = 0; g < nm; ++g) {
      if (!C.composable(h, g)) continue;
      MorId hg = C.compose2(h, g);
      for (MorId f = 0; f < nm; ++f) {
        if (!C.composable(g, f)) continue;
        if (C.compose2(h, C.compose2(g, f)) != C.compose2(hg, f))
          throw error(errc::associativity_violation,
                      "associativity fails on (" + C.morphisms[h].name + ", " +
                          C.morphisms[g].name + ", " + C.morphisms[f].name + ")");
      }
    }
  return C;
}

inline RawCategory to_raw(const FinCat& C) {
  RawCategory raw;
  raw.objects = C.objects;
  for (const auto& m : C.morphisms)
    raw.morphisms.push_back({m.name, C.objects[m.dom], C.objects[m.cod]});
  for (ObjId o = 0; o < C.num_objects(); ++o)
    raw.identities[C.objects[o]] = C.morphisms[C.identities[o]].name;
  const int nm = C.num_morphisms();
  for (MorId g = 0; g < nm; ++g)
    for (MorId f = 0; f < nm; ++f)
      if (C.composable(g, f))
        raw.compose.push_back({C.morphisms[g].name, C.morphisms[f].name,
                               C.morphisms[C.compose2(g, f)].name});
  return raw;
}

// f is mono iff it is left-cancellable against every parallel pair into dom(f).
inline bool is_monomorphism(const FinCat& C, MorId f) {
  ObjId a = C.dom(f);
  for (ObjId x = 0; x < C.num_objects(); ++x) {
    auto pairs = C.hom(x, a);
    for (size_t i = 0; i < pairs.size(); ++i)
      for (size_t j = i + 1; j < pairs.size(); ++j)
        if (C.compose2(f, pairs[i]) == C.compose2(f, pairs[j])) return false;
  }
  return true;
}

inline bool is_category_of_monos(const FinCat& C) {
  for (MorId m = 0; m < C.num_morphisms(); ++m)
    if (!is_monomorphism(C, m)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Posets

class Poset {
 public:
  FinCat cat;
  // rel_[a*n+b] = morphism id of a <= b, or -1
  std::vector<MorId> rel_;

  int size() const { return cat.num_objects(); }
  const std::string& name(ObjId a) const { return cat.objects[a]; }
  bool leq(ObjId a, ObjId b) const { return rel_[static_cast<size_t>(a) * size() + b] >= 0; }
  MorId rel(ObjId a, ObjId b) const { return rel_[static_cast<size_t>(a) * size() + b]; }

  // covering relations a < b with nothing strictly between
  std::vector<std::pair<ObjId, ObjId>> cover_pairs() const {
    std::vector<std::pair<ObjId, ObjId>> out;
    int n = size();
    for (ObjId a = 0; a < n; ++a)
      for (ObjId b = 0; b < n; ++b) {
        if (a == b || !leq(a, b)) continue;
        bool cover = true;
        for (ObjId z = 0; z < n && cover; ++z)
          if (z != a && z != b && leq(a, z) && leq(z, b)) cover = false;
        if (cover) out.emplace_back(a, b);
      }
    return out;
  }

  void fill_rel() {
    int n = size();
    rel_.assign(static_cast<size_t>(n) * n, -1);
    for (MorId m = 0; m < cat.num_morphisms(); ++m)
      rel_[static_cast<size_t>(cat.dom(m)) * n + cat.cod(m)] = m;
  }
};

// Interprets a FinCat as a poset, verifying at-most-one morphism per hom-set
// and that the only endomorphisms are identities (hence antisymmetry).
inline Poset as_poset(const FinCat& C) {
  int n = C.num_objects();
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b) {
      auto h = C.hom(a, b);
      if (h.size() > 1)
        throw error(errc::dangling_reference,
                    "not a poset: |Hom(" + C.objects[a] + ", " + C.objects[b] + ")| > 1");
      if (a == b && h.size() == 1 && h[0] != C.identities[a])
        throw error(errc::dangling_reference,
                    "not a poset: nonidentity endomorphism at " + C.objects[a]);
    }
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b)
      if (a != b && !C.hom(a, b).empty() && !C.hom(b, a).empty())
        throw error(errc::dangling_reference, "not a poset: antisymmetry fails");
  Poset P;
  P.cat = C;
  P.fill_rel();
  return P;
}

// Builds the poset category from element names and a reflexive-transitive leq.
inline Poset make_poset(const std::vector<std::string>& elems,
                        const std::function<bool(int, int)>& leq) {
  RawCategory raw;
  raw.objects = elems;
  int n = static_cast<int>(elems.size());
  auto mor_name = [&](int a, int b) { return elems[a] + " <= " + elems[b]; };
  std::vector<std::vector<bool>> L(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) L[a][b] = (a == b) || leq(a, b);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (L[a][b]) {
        raw.morphisms.push_back({mor_name(a, b), elems[a], elems[b]});
        if (a == b) raw.identities[elems[a]] = mor_name(a, a);
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (L[a][b] && L[b][c]) {
          if (!L[a][c])
            throw error(errc::dangling_reference, "leq relation is not transitive");
          raw.compose.push_back({mor_name(b, c), mor_name(a, b), mor_name(a, c)});
        }
  return as_poset(validate_category(raw));
}

// ---------------------------------------------------------------------------
// Functors

// A functor is a pair of index tables; the categories are passed explicitly.
struct Functor {
  std::vector<ObjId> on_obj;  // per source object
  std::vector<MorId> on_mor;  // per source morphism
};

inline bool validate_functor(const Functor& F, const FinCat& src, const FinCat& dst,
                             std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (static_cast<int>(F.on_obj.size()) != src.num_objects() ||
      static_cast<int>(F.on_mor.size()) != src.num_morphisms())
    return fail("size mismatch");
  for (MorId m = 0; m < src.num_morphisms(); ++m) {
    MorId fm = F.on_mor[m];
    if (fm < 0 || fm >= dst.num_morphisms()) return fail("morphism image out of range");
    if (dst.dom(fm) != F.on_obj[src.dom(m)] || dst.cod(fm) != F.on_obj[src.cod(m)])
      return fail("dom/cod not preserved at " + src.morphisms[m].name);
  }
  for (ObjId o = 0; o < src.num_objects(); ++o)
    if (F.on_mor[src.identities[o]] != dst.identities[F.on_obj[o]])
      return fail("identity not preserved at " + src.objects[o]);
  for (MorId g = 0; g < src.num_morphisms(); ++g)
    for (MorId f = 0; f < src.num_morphisms(); ++f)
      if (src.composable(g, f))
        if (F.on_mor[src.compose2(g, f)] != dst.compose2(F.on_mor[g], F.on_mor[f]))
          return fail("composition not preserved at (" + src.morphisms[g].name + ", " +
                      src.morphisms[f].name + ")");
  return true;
}

inline Functor compose_functors(const Functor& G, const Functor& F) {
  // G after F
  Functor H;
  H.on_obj.reserve(F.on_obj.size());
  for (ObjId o : F.on_obj) H.on_obj.push_back(G.on_obj[o]);
  H.on_mor.reserve(F.on_mor.size());
  for (MorId m : F.on_mor) H.on_mor.push_back(G.on_mor[m]);
  return H;
}

// Inclusion functor of a subcategory whose object/morphism names all occur in
// the bigger category.
inline Functor inclusion_by_names(const FinCat& sub, const FinCat& big) {
  Functor F;
  for (const auto& o : sub.objects) {
    ObjId i = big.object_index(o);
    if (i < 0) throw error(errc::dangling_reference, "inclusion: missing object " + o);
    F.on_obj.push_back(i);
  }
  for (const auto& m : sub.morphisms) {
    MorId i = big.morphism_index(m.name);
    if (i < 0) throw error(errc::dangling_reference, "inclusion: missing morphism " + m.name);
    F.on_mor.push_back(i);
  }
  return F;
}

// ---------------------------------------------------------------------------
// Barycentric subdivision posets

struct ChainPosetResult {
  Poset chains;
  // members[i] = elements of P forming chain i, ascending in P's order
  std::vector<std::vector<ObjId>> members;
};

// Poset of nonempty chains of P, ordered by inclusion. Chain names are
// "[a<b<...]" over the element names, so repeated calls are bit-identical.
inline ChainPosetResult chain_poset_with_members(const Poset& P) {
  int n = P.size();
  std::vector<std::vector<ObjId>> chains;
  std::vector<ObjId> cur;
  // Enumerate chains as increasing index sequences that are totally ordered.
  std::function<void(int)> rec = [&](int start) {
    for (int i = start; i < n; ++i) {
      bool ok = true;
      for (ObjId c : cur)
        if (!P.leq(c, i) && !P.leq(i, c)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(i);
      chains.push_back(cur);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);

  auto chain_name = [&](const std::vector<ObjId>& ch) {
    // sort by the poset order (total within a chain)
    std::vector<ObjId> s = ch;
    std::sort(s.begin(), s.end(), [&](ObjId a, ObjId b) { return a != b && P.leq(a, b); });
    std::string out = "[";
    for (size_t i = 0; i < s.size(); ++i) {
      if (i) out += "<";
      out += P.name(s[i]);
    }
    out += "]";
    return out;
  };

  std::vector<std::string> names;
  std::vector<std::vector<ObjId>> sorted_members;
  names.reserve(chains.size());
  for (auto& ch : chains) {
    std::vector<ObjId> s = ch;
    std::sort(s.begin(), s.end(), [&](ObjId a, ObjId b) { return a != b && P.leq(a, b); });
    names.push_back(chain_name(ch));
    sorted_members.push_back(std::move(s));
  }
  // align member lists with the name-sorted object order used by FinCat
  std::vector<int> idx(names.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return names[a] < names[b]; });

  std::vector<std::string> snames;
  std::vector<std::vector<ObjId>> smembers;
  for (int i : idx) {
    snames.push_back(names[i]);
    smembers.push_back(sorted_members[i]);
  }
  auto subset = [&](const std::vector<ObjId>& a, const std::vector<ObjId>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  ChainPosetResult R;
  std::vector<std::vector<ObjId>> keyed(smembers.size());
  for (size_t i = 0; i < smembers.size(); ++i) {
    keyed[i] = smembers[i];
    std::sort(keyed[i].begin(), keyed[i].end());
  }
  R.chains = make_poset(snames, [&](int a, int b) { return subset(keyed[a], keyed[b]); });
  // make_poset sorts names again (stable: already sorted), members align
  R.members = smembers;
  return R;
}

inline Poset chain_poset(const Poset& P) { return chain_poset_with_members(P).chains; }

inline std::string subset_name(const std::vector<int>& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  out += "}";
  return out;
}

// Poset of nonempty subsets of {0..n} (proper ones if `boundary`), iterated
// through the chain poset for k > 1.
inline Poset sd_poset_impl(int n, int k, bool boundary) {
  if (n < 0 || k < 1) throw error(errc::invalid_dimension, "sd poset needs n >= 0, k >= 1");
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 1; mask < (1u << (n + 1)); ++mask) {
    if (boundary && mask == (1u << (n + 1)) - 1) continue;
    std::vector<int> s;
    for (int i = 0; i <= n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    subsets.push_back(std::move(s));
  }
  std::vector<std::string> names;
  for (const auto& s : subsets) names.push_back(subset_name(s));
  std::vector<int> idx(names.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return names[a] < names[b]; });
  std::vector<std::string> snames;
  std::vector<std::vector<int>> ss;
  for (int i : idx) {
    snames.push_back(names[i]);
    ss.push_back(subsets[i]);
  }
  Poset P = make_poset(snames, [&](int a, int b) {
    return std::includes(ss[b].begin(), ss[b].end(), ss[a].begin(), ss[a].end());
  });
  for (int j = 1; j < k; ++j) P = chain_poset(P);
  return P;
}

inline Poset sd_simplex_poset(int n, int k) { return sd_poset_impl(n, k, false); }

// For n = 0 the boundary is empty in every subdivision.
inline Poset sd_boundary_poset(int n, int k) {
  if (n < 0 || k < 1) throw error(errc::invalid_dimension, "sd boundary needs n >= 0, k >= 1");
  if (n == 0) {
    Poset P;
    P.cat = validate_category(RawCategory{});
    P.fill_rel();
    return P;
  }
  return sd_poset_impl(n, k, true);
}

// The collapse functor chain_poset(P) -> P sending a chain to its maximum.
inline Functor collapse_functor_of(const ChainPosetResult& CP, const Poset& P) {
  Functor F;
  const Poset& Q = CP.chains;
  F.on_obj.reserve(Q.size());
  for (int i = 0; i < Q.size(); ++i) F.on_obj.push_back(CP.members[i].back());
  F.on_mor.reserve(Q.cat.num_morphisms());
  for (MorId m = 0; m < Q.cat.num_morphisms(); ++m) {
    ObjId a = F.on_obj[Q.cat.dom(m)], b = F.on_obj[Q.cat.cod(m)];
    F.on_mor.push_back(P.rel(a, b));
  }
  return F;
}

inline Functor collapse_functor(const Poset& P) {
  return collapse_functor_of(chain_poset_with_members(P), P);
}

struct CollapseTower {
  std::vector<Poset> levels;  // levels[0] = P, levels[i] = chain_poset^i(P)
  Functor collapse;           // levels.back() -> P (composite of collapses)
};

inline CollapseTower collapse_power(const Poset& P, int l) {
  CollapseTower T;
  T.levels.push_back(P);
  Functor acc;  // identity on P
  acc.on_obj.resize(P.size());
  std::iota(acc.on_obj.begin(), acc.on_obj.end(), 0);
  acc.on_mor.resize(P.cat.num_morphisms());
  std::iota(acc.on_mor.begin(), acc.on_mor.end(), 0);
  for (int i = 0; i < l; ++i) {
    ChainPosetResult CP = chain_poset_with_members(T.levels.back());
    Functor step = collapse_functor_of(CP, T.levels.back());
    acc = compose_functors(acc, step);
    T.levels.push_back(std::move(CP.chains));
  }
  T.collapse = std::move(acc);
  return T;
}

// ---------------------------------------------------------------------------
// Freely adjoined initial objects and suspension

namespace detail {
inline std::string fresh_name(std::string base, const std::set<std::string>& taken) {
  while (taken.count(base)) base += "_";
  return base;
}
}  // namespace detail

struct AdjoinInitialResult {
  FinCat cat;
  std::string bottom;  // name of the adjoined initial object
};

inline AdjoinInitialResult adjoin_initial_named(const FinCat& C0, const std::string& tag) {
  std::set<std::string> onames(C0.objects.begin(), C0.objects.end());
  std::set<std::string> mnames;
  for (const auto& m : C0.morphisms) mnames.insert(m.name);
  std::string bot = detail::fresh_name(tag, onames);

  RawCategory raw = to_raw(C0);
  raw.objects.push_back(bot);
  std::string idb = detail::fresh_name("id_" + bot, mnames);
  raw.morphisms.push_back({idb, bot, bot});
  raw.identities[bot] = idb;
  std::map<std::string, std::string> to_obj;  // object -> name of bot -> object
  for (const auto& o : C0.objects) {
    std::string u = detail::fresh_name(bot + "_to_" + o, mnames);
    mnames.insert(u);
    to_obj[o] = u;
    raw.morphisms.push_back({u, bot, o});
  }
  // composites are forced: f o (bot -> c) = bot -> cod(f)
  for (const auto& m : C0.morphisms)
    raw.compose.push_back({m.name, to_obj[C0.objects[m.dom]], to_obj[C0.objects[m.cod]]});
  return {validate_category(raw), bot};
}

inline FinCat adjoin_initial(const FinCat& C0) {
  return adjoin_initial_named(C0, "_bot").cat;
}

struct SuspensionBase {
  FinCat cat;   // Sigma C0
  FinCat core;  // C0
  std::string bot1, bot2;

  ObjId bot1_id() const { return cat.object_index(bot1); }
  ObjId bot2_id() const { return cat.object_index(bot2); }
  // the unique morphism bot_i -> c, for a core object c (by name in cat)
  MorId cone_morphism(int which, ObjId c_in_cat) const {
    ObjId b = which == 1 ? bot1_id() : bot2_id();
    auto h = cat.hom(b, c_in_cat);
    return h.size() == 1 ? h[0] : -1;
  }
};

// Sigma C0 = two copies of C0 with an initial object freely adjoined, glued
// along C0.
inline SuspensionBase suspension(const FinCat& C0) {
  std::set<std::string> onames(C0.objects.begin(), C0.objects.end());
  std::set<std::string> mnames;
  for (const auto& m : C0.morphisms) mnames.insert(m.name);
  std::string b1 = detail::fresh_name("_bot1", onames);
  onames.insert(b1);
  std::string b2 = detail::fresh_name("_bot2", onames);

  RawCategory raw = to_raw(C0);
  for (const std::string& bot : {b1, b2}) {
    raw.objects.push_back(bot);
    std::string idb = detail::fresh_name("id_" + bot, mnames);
    mnames.insert(idb);
    raw.morphisms.push_back({idb, bot, bot});
    raw.identities[bot] = idb;
    std::map<std::string, std::string> to_obj;
    for (const auto& o : C0.objects) {
      std::string u = detail::fresh_name(bot + "_to_" + o, mnames);
      mnames.insert(u);
      to_obj[o] = u;
      raw.morphisms.push_back({u, bot, o});
    }
    for (const auto& m : C0.morphisms)
      raw.compose.push_back({m.name, to_obj[C0.objects[m.dom]], to_obj[C0.objects[m.cod]]});
  }
  SuspensionBase S;
  S.cat = validate_category(raw);
  S.core = C0;
  S.bot1 = b1;
  S.bot2 = b2;
  return S;
}

// Recognizes a category of the form Sigma C0: exactly two objects that are
// freely adjoined initial objects (no incoming nonidentity morphisms, exactly
// one morphism to every other non-bottom object, none between the bottoms).
inline bool detect_suspension(const FinCat& C, SuspensionBase* out) {
  int n = C.num_objects();
  std::vector<ObjId> bots;
  for (ObjId b = 0; b < n; ++b) {
    bool incoming = false;
    for (MorId m = 0; m < C.num_morphisms(); ++m)
      if (C.cod(m) == b && !C.is_identity(m)) incoming = true;
    if (incoming) continue;
    bool unique_out = true;
    bool has_out = false;
    for (ObjId c = 0; c < n; ++c) {
      if (c == b) continue;
      size_t h = C.hom(b, c).size();
      if (h > 1) unique_out = false;
      if (h == 1) has_out = true;
    }
    if (unique_out && (has_out || n == 2)) bots.push_back(b);
  }
  // keep only candidates with a morphism to every non-candidate object
  std::vector<ObjId> good;
  for (ObjId b : bots) {
    bool ok = true;
    for (ObjId c = 0; c < n; ++c) {
      if (c == b) continue;
      bool cand = std::find(bots.begin(), bots.end(), c) != bots.end();
      size_t h = C.hom(b, c).size();
      if (cand && h != 0) ok = false;
      if (!cand && h != 1) ok = false;
    }
    if (ok) good.push_back(b);
  }
  if (good.size() != 2) return false;
  // core = full subcategory on the remaining objects
  RawCategory raw;
  std::set<ObjId> bset(good.begin(), good.end());
  for (ObjId o = 0; o < n; ++o)
    if (!bset.count(o)) raw.objects.push_back(C.objects[o]);
  for (MorId m = 0; m < C.num_morphisms(); ++m)
    if (!bset.count(C.dom(m)) && !bset.count(C.cod(m)))
      raw.morphisms.push_back({C.morphisms[m].name, C.objects[C.dom(m)], C.objects[C.cod(m)]});
  for (ObjId o = 0; o < n; ++o)
    if (!bset.count(o)) raw.identities[C.objects[o]] = C.morphisms[C.identities[o]].name;
  for (MorId g = 0; g < C.num_morphisms(); ++g)
    for (MorId f = 0; f < C.num_morphisms(); ++f)
      if (C.composable(g, f) && !bset.count(C.dom(f)) && !bset.count(C.cod(f)) &&
          !bset.count(C.cod(g)))
        raw.compose.push_back({C.morphisms[g].name, C.morphisms[f].name,
                               C.morphisms[C.compose2(g, f)].name});
  if (out) {
    out->cat = C;
    out->core = validate_category(raw);
    out->bot1 = C.objects[good[0]];
    out->bot2 = C.objects[good[1]];
  }
  return true;
}

// ---------------------------------------------------------------------------
// Functor enumeration from a poset

struct FunctorConstraint {
  std::map<ObjId, ObjId> obj;  // source element -> target object
  std::map<MorId, MorId> mor;  // source morphism -> target morphism
};

// Fixed linear extension: Kahn's algorithm from minimal elements, ties broken
// by canonical (name) order, which is the object index order.
inline std::vector<ObjId> linear_extension(const Poset& P) {
  int n = P.size();
  std::vector<int> below(n, 0);
  auto covers = P.cover_pairs();
  std::vector<std::vector<ObjId>> up(n);
  for (auto [a, b] : covers) {
    below[b]++;
    up[a].push_back(b);
  }
  std::priority_queue<ObjId, std::vector<ObjId>, std::greater<>> q;
  for (int i = 0; i < n; ++i)
    if (below[i] == 0) q.push(i);
  std::vector<ObjId> out;
  while (!q.empty()) {
    ObjId x = q.top();
    q.pop();
    out.push_back(x);
    for (ObjId y : up[x])
      if (--below[y] == 0) q.push(y);
  }
  return out;
}

// Emits every functor P -> C satisfying the constraint, exactly once, in a
// deterministic order. The callback returns false to stop the stream.
// Backtracks over object assignments along a linear extension and morphism
// assignments on covering relations, validating path-independence of
// composites at each step. When `budget` is given, each search node costs one
// unit; the search aborts (possibly missing functors) once it runs out, which
// the caller observes as *budget < 0.
inline void enumerate_functors(const Poset& P, const FinCat& C,
                               const FunctorConstraint& constraint,
                               const std::function<bool(const Functor&)>& cb,
                               long long* budget = nullptr) {
  int n = P.size();
  if (n == 0) {
    Functor F;  // the empty functor
    cb(F);
    return;
  }
  std::vector<ObjId> order = linear_extension(P);
  std::vector<std::vector<ObjId>> covers_of(n);  // covers x of y, ascending
  for (auto [a, b] : P.cover_pairs()) covers_of[b].push_back(a);
  for (auto& v : covers_of) std::sort(v.begin(), v.end());
  std::vector<std::vector<ObjId>> below(n);  // all z < y (strict)
  for (ObjId z = 0; z < n; ++z)
    for (ObjId y = 0; y < n; ++y)
      if (z != y && P.leq(z, y)) below[y].push_back(z);

  std::vector<ObjId> G(n, -1);                                   // object assignment
  std::vector<MorId> M(static_cast<size_t>(n) * n, -1);          // M[z*n+y] image of z<=y
  bool stop = false;

  std::function<void(int)> assign_element;

  // After G[y] and the cover morphisms are chosen, propagate to all z < y and
  // check path-independence plus any morphism constraints.
  auto propagate_and_recurse = [&](ObjId y, int pos) {
    std::vector<std::pair<size_t, MorId>> undo;
    bool ok = true;
    M[static_cast<size_t>(y) * n + y] = C.identities[G[y]];
    undo.emplace_back(static_cast<size_t>(y) * n + y, -1);
    for (ObjId x : covers_of[y]) {
      MorId mxy = M[static_cast<size_t>(x) * n + y];
      for (ObjId z : below[y]) {
        if (z != x && !P.leq(z, x)) continue;
        MorId mzx = (z == x) ? C.identities[G[x]] : M[static_cast<size_t>(z) * n + x];
        MorId v = C.compose2(mxy, mzx);
        size_t cell = static_cast<size_t>(z) * n + y;
        if (M[cell] == -1) {
          M[cell] = v;
          undo.emplace_back(cell, -1);
        } else if (M[cell] != v) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) {
      for (ObjId z : below[y]) {
        auto it = constraint.mor.find(P.rel(z, y));
        if (it != constraint.mor.end() && M[static_cast<size_t>(z) * n + y] != it->second) {
          ok = false;
          break;
        }
      }
      auto it = constraint.mor.find(P.rel(y, y));
      if (ok && it != constraint.mor.end() && it->second != C.identities[G[y]]) ok = false;
    }
    if (ok) assign_element(pos + 1);
    for (auto [cell, v] : undo) M[cell] = v;
  };

  assign_element = [&](int pos) {
    if (stop) return;
    if (budget && --(*budget) < 0) {
      stop = true;
      return;
    }
    if (pos == n) {
      Functor F;
      F.on_obj = G;
      F.on_mor.resize(P.cat.num_morphisms());
      for (MorId m = 0; m < P.cat.num_morphisms(); ++m) {
        ObjId a = P.cat.dom(m), b = P.cat.cod(m);
        F.on_mor[m] = (a == b) ? C.identities[G[a]] : M[static_cast<size_t>(a) * n + b];
      }
      if (!cb(F)) stop = true;
      return;
    }
    ObjId y = order[pos];
    std::vector<ObjId> cands;
    auto oc = constraint.obj.find(y);
    if (oc != constraint.obj.end())
      cands.push_back(oc->second);
    else
      for (ObjId c = 0; c < C.num_objects(); ++c) cands.push_back(c);

    const auto& cov = covers_of[y];
    for (ObjId c : cands) {
      if (stop) return;
      G[y] = c;
      // choose morphism images for each covering relation x < y
      std::function<void(size_t)> choose_cover = [&](size_t ci) {
        if (stop) return;
        if (ci == cov.size()) {
          propagate_and_recurse(y, pos);
          return;
        }
        ObjId x = cov[ci];
        size_t cell = static_cast<size_t>(x) * n + y;
        auto mc = constraint.mor.find(P.rel(x, y));
        for (MorId m = 0; m < C.num_morphisms(); ++m) {
          if (C.dom(m) != G[x] || C.cod(m) != c) continue;
          if (mc != constraint.mor.end() && mc->second != m) continue;
          M[cell] = m;
          choose_cover(ci + 1);
          M[cell] = -1;
          if (stop) return;
        }
      };
      choose_cover(0);
      G[y] = -1;
    }
  };
  assign_element(0);
}

inline std::vector<Functor> enumerate_functors(const Poset& P, const FinCat& C,
                                               const FunctorConstraint& constraint = {}) {
  std::vector<Functor> out;
  enumerate_functors(P, C, constraint, [&](const Functor& F) {
    out.push_back(F);
    return true;
  });
  return out;
}

}  // namespace contraaec
