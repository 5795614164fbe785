#include <catch2/catch_amalgamated.hpp>

#include "contraaec/axioms.hpp"
#include "contraaec/generate.hpp"
#include "susp_helpers.hpp"

using namespace contraaec;
using testutil::make_susp_presheaf;

namespace {

// F: sd dDelta[1] -> C assigning the two boundary points
Functor two_point_functor(const Poset& bp, const FinCat& C, ObjId c0, ObjId c1) {
  Functor F;
  F.on_obj.resize(2);
  F.on_obj[bp.cat.object_index("{0}")] = c0;
  F.on_obj[bp.cat.object_index("{1}")] = c1;
  F.on_mor.resize(bp.cat.num_morphisms());
  for (MorId m = 0; m < bp.cat.num_morphisms(); ++m)
    F.on_mor[m] = C.identities[F.on_obj[bp.cat.dom(m)]];
  return F;
}

}  // namespace

TEST_CASE("check_inj") {
  FinCat dir = make_dirtree_category();
  ObjId E = dir.object_index("E");

  SECTION("directed loop fails with witness (E, e, (s,t))") {
    Presheaf loop = presheaf_from_dirgraph(dir, {1, {{0, 0}}});
    InjReport R = check_inj(dir, loop);
    REQUIRE_FALSE(R.pass);
    REQUIRE(R.violations.size() == 1);
    CHECK(R.violations[0].c == E);
    std::set<std::string> pair = {dir.morphisms[R.violations[0].sigma1].name,
                                  dir.morphisms[R.violations[0].sigma2].name};
    CHECK(pair == std::set<std::string>{"s", "t"});
  }
  SECTION("representables pass over categories of monos") {
    for (const FinCat& C : {dir, make_undirtree_category(), suspension(dir).cat})
      for (ObjId c = 0; c < C.num_objects(); ++c) CHECK(check_inj(C, yoneda(C, c)).pass);
  }
  SECTION("single edge passes") {
    CHECK(check_inj(dir, presheaf_from_dirgraph(dir, {2, {{0, 1}}})).pass);
  }
  SECTION("cross-check: pass iff all classifying morphisms are strong embeddings") {
    std::vector<Presheaf> cases = {
        presheaf_from_dirgraph(dir, {2, {{0, 1}}}),
        presheaf_from_dirgraph(dir, {1, {{0, 0}}}),
        presheaf_from_dirgraph(dir, {3, {{0, 1}, {0, 2}}}),
        presheaf_from_dirgraph(dir, {2, {{0, 1}, {1, 0}}}),
        generate_undirtree(make_undirtree_category(), 3, 4),
    };
    for (const Presheaf& X : cases) {
      bool all_strong = true;
      for (ObjId c = 0; c < X.base.num_objects(); ++c) {
        Presheaf yc = yoneda(X.base, c);
        for (int x = 0; x < X.carrier_size(c); ++x)
          if (!is_strong_embedding(classifying_morphism(X.base, X, c, x, yc), yc, X))
            all_strong = false;
      }
      CHECK(check_inj(X.base, X).pass == all_strong);
    }
  }
}

TEST_CASE("check_inj_literal differs from check_inj") {
  FinCat dir = make_dirtree_category();
  // two edges sharing a source: X_s not injective, but no loops
  Presheaf fork = presheaf_from_dirgraph(dir, {3, {{0, 1}, {0, 2}}});
  CHECK(check_inj(dir, fork).pass);
  CHECK_FALSE(check_inj_literal(dir, fork));

  RawCategory raw;
  raw.objects = {"*"};
  raw.morphisms = {{"id", "*", "*"}};
  raw.identities = {{"*", "id"}};
  FinCat term = validate_category(raw);
  RawPresheaf rp;
  rp.carriers = {{"*", {"x", "y"}}};
  CHECK(check_inj_literal(term, validate_presheaf(term, rp)));
  CHECK(check_inj_literal(dir, presheaf_from_dirgraph(dir, {2, {{0, 1}}})));
}

TEST_CASE("enumerate_lifts") {
  FinCat dir = make_dirtree_category();
  ObjId V = dir.object_index("V");

  SECTION("point shape") {
    Poset pt = make_poset({"x"}, [](int, int) { return true; });
    Functor F;
    F.on_obj = {V};
    F.on_mor = {dir.identities[V]};
    Presheaf X = presheaf_from_dirgraph(dir, {3, {}});
    CHECK(enumerate_lifts(pt.cat, F, X).size() == 3);
  }
  SECTION("two points into a single edge") {
    Poset bp = sd_boundary_poset(1, 1);
    Functor F = two_point_functor(bp, dir, V, V);
    Presheaf X = presheaf_from_dirgraph(dir, {2, {{0, 1}}});
    CHECK(enumerate_lifts(bp.cat, F, X).size() == 4);
  }
  SECTION("empty sort gives an empty stream") {
    Poset bp = sd_boundary_poset(1, 1);
    ObjId E = make_dirtree_category().object_index("E");
    Functor F = two_point_functor(bp, dir, E, E);
    Presheaf X = presheaf_from_dirgraph(dir, {2, {}});
    CHECK(enumerate_lifts(bp.cat, F, X).empty());
  }
}

TEST_CASE("check_asph") {
  FinCat dir = make_dirtree_category();
  ObjId V = dir.object_index("V"), E = dir.object_index("E");
  Poset bp1 = sd_boundary_poset(1, 1);

  SECTION("yoneda(E): every n=1 instance holds at l = 0") {
    Presheaf yE = yoneda(dir, E);
    for (const Functor& F : enumerate_functors(bp1, dir)) {
      AsphVerdict v = check_asph(dir, yE, 1, 1, F, 2);
      if (v.status == AsphVerdict::Status::Vacuous) continue;
      CHECK(v.status == AsphVerdict::Status::HoldsWithin);
      CHECK(v.l == 0);
    }
  }
  SECTION("two-vertex discrete graph: exactly refuted disconnection") {
    Presheaf X = presheaf_from_dirgraph(dir, {2, {}});
    Functor F = two_point_functor(bp1, dir, V, V);
    for (int max_l = 0; max_l <= 3; ++max_l) {
      AsphVerdict v = check_asph(dir, X, 1, 1, F, max_l);
      CHECK(v.status == AsphVerdict::Status::RefutedExactly);
      CHECK(v.reason.find("different components") != std::string::npos);
    }
  }
  SECTION("vacuous when no lifts exist") {
    Poset disc = make_poset({"a", "b"}, [](int a, int b) { return a == b; });
    FinCat C2 = disc.cat;
    RawPresheaf rp;
    rp.carriers = {{"a", {"x"}}, {"b", {}}};
    Presheaf X = validate_presheaf(C2, rp);
    Poset bp = sd_boundary_poset(1, 1);
    ObjId b = C2.object_index("b");
    Functor F = two_point_functor(bp, C2, b, b);
    AsphVerdict v = check_asph(C2, X, 1, 1, F, 2);
    CHECK(v.status == AsphVerdict::Status::Vacuous);
  }
  SECTION("n = 0 nonemptiness") {
    RawPresheaf empty;
    Presheaf X = validate_presheaf(dir, empty);
    Functor F;  // empty functor from the empty poset
    AsphVerdict v = check_asph(dir, X, 0, 1, F, 2);
    CHECK(v.status == AsphVerdict::Status::RefutedExactly);
    CHECK(v.reason.find("empty") != std::string::npos);
    Presheaf Y = presheaf_from_dirgraph(dir, {1, {}});
    CHECK(check_asph(dir, Y, 0, 1, F, 2).status == AsphVerdict::Status::HoldsWithin);
  }
  SECTION("n = 2 essential cycle is exactly refuted") {
    Presheaf cyc = presheaf_from_dirgraph(dir, {3, {{0, 1}, {1, 2}, {2, 0}}});
    Poset hex = sd_boundary_poset(2, 1);
    Functor F;
    F.on_obj.assign(6, -1);
    auto ob = [&](const std::string& n) { return hex.cat.object_index(n); };
    F.on_obj[ob("{0}")] = V;
    F.on_obj[ob("{1}")] = V;
    F.on_obj[ob("{2}")] = V;
    F.on_obj[ob("{0,1}")] = E;
    F.on_obj[ob("{1,2}")] = E;
    F.on_obj[ob("{0,2}")] = E;
    F.on_mor.assign(hex.cat.num_morphisms(), -1);
    MorId s = dir.morphism_index("s"), t = dir.morphism_index("t");
    auto setm = [&](const std::string& a, const std::string& b, MorId m) {
      F.on_mor[hex.rel(ob(a), ob(b))] = m;
    };
    for (MorId m = 0; m < hex.cat.num_morphisms(); ++m)
      if (hex.cat.is_identity(m)) F.on_mor[m] = dir.identities[F.on_obj[hex.cat.dom(m)]];
    // orient the hexagon like the 3-cycle e0: v0->v1, e1: v1->v2, e2: v2->v0
    setm("{0}", "{0,1}", s);
    setm("{1}", "{0,1}", t);
    setm("{1}", "{1,2}", s);
    setm("{2}", "{1,2}", t);
    setm("{2}", "{0,2}", s);
    setm("{0}", "{0,2}", t);
    REQUIRE(validate_functor(F, hex.cat, dir));
    AsphVerdict v = check_asph(dir, cyc, 2, 1, F, 1);
    CHECK(v.status == AsphVerdict::Status::RefutedExactly);
    CHECK(v.reason.find("essential cycle") != std::string::npos);

    // the same functor shape on a 3-vertex path has no lift (no edge closes
    // the triangle), hence vacuous
    Presheaf path = presheaf_from_dirgraph(dir, {3, {{0, 1}, {1, 2}}});
    CHECK(check_asph(dir, path, 2, 1, F, 1).status == AsphVerdict::Status::Vacuous);
  }
  SECTION("constant n = 2 instances hold at l = 0") {
    Presheaf X = presheaf_from_dirgraph(dir, {2, {{0, 1}}});
    Poset hex = sd_boundary_poset(2, 1);
    Functor F;
    F.on_obj.assign(6, V);
    F.on_mor.assign(hex.cat.num_morphisms(), dir.identities[V]);
    REQUIRE(validate_functor(F, hex.cat, dir));
    AsphVerdict v = check_asph(dir, X, 2, 1, F, 2);
    CHECK(v.status == AsphVerdict::Status::HoldsWithin);
    CHECK(v.l == 0);
  }
  SECTION("monotonicity in max_l") {
    Presheaf yE = yoneda(dir, E);
    for (const Functor& F : enumerate_functors(bp1, dir)) {
      AsphVerdict v0 = check_asph(dir, yE, 1, 1, F, 0);
      for (int max_l = 1; max_l <= 3; ++max_l) {
        AsphVerdict v = check_asph(dir, yE, 1, 1, F, max_l);
        CHECK(v.status == v0.status);
        if (v.status == AsphVerdict::Status::HoldsWithin) CHECK(v.l == v0.l);
      }
    }
  }
  SECTION("bounds errors") {
    Presheaf X = presheaf_from_dirgraph(dir, {1, {}});
    Functor F;
    CHECK_THROWS_AS(check_asph(dir, X, 1, 0, F, 1), error);
  }
}

TEST_CASE("check_tcontr") {
  FinCat dir = make_dirtree_category();

  ModelReport edge = check_tcontr(dir, presheaf_from_dirgraph(dir, {2, {{0, 1}}}));
  CHECK(edge.overall == ModelReport::Overall::Model);
  CHECK(edge.exact);
  CHECK(edge.one_dimensional);

  ModelReport cyc = check_tcontr(dir, presheaf_from_dirgraph(dir, {3, {{0, 1}, {1, 2}, {2, 0}}}));
  CHECK(cyc.overall == ModelReport::Overall::NotModel);
  CHECK(cyc.exact);
  CHECK(cyc.witness.find("H_1") != std::string::npos);

  ModelReport loop = check_tcontr(dir, presheaf_from_dirgraph(dir, {1, {{0, 0}}}));
  CHECK(loop.overall == ModelReport::Overall::NotModel);
  CHECK_FALSE(loop.inj.pass);

  RawPresheaf er;
  ModelReport empty = check_tcontr(dir, validate_presheaf(dir, er));
  CHECK(empty.overall == ModelReport::Overall::NotModel);
  CHECK(empty.exact);

  ModelReport disc = check_tcontr(dir, presheaf_from_dirgraph(dir, {2, {}}));
  CHECK(disc.overall == ModelReport::Overall::NotModel);
  CHECK(disc.witness.find("H_0") != std::string::npos);

  SECTION("NotModel reports always carry a witness") {
    for (const ModelReport& R : {cyc, loop, empty, disc}) CHECK_FALSE(R.witness.empty());
  }
  SECTION("non-mono base is rejected") {
    RawCategory raw;
    raw.objects = {"a"};
    raw.morphisms = {{"e", "a", "a"}, {"ia", "a", "a"}};
    raw.identities = {{"a", "ia"}};
    raw.compose = {{"e", "e", "e"}};
    FinCat idem = validate_category(raw);
    RawPresheaf rp;
    rp.carriers = {{"a", {"x"}}};
    rp.actions = {{"e", {{"x", "x"}}}};
    CHECK_THROWS_AS(check_tcontr(idem, validate_presheaf(idem, rp)), error);
  }
  SECTION("undirected tree models are Undetermined under bounded search") {
    FinCat und = make_undirtree_category();
    Bounds b;
    b.sweep_budget = 20000;
    ModelReport R = check_tcontr(und, generate_undirtree(und, 3, 1), b);
    CHECK(R.overall == ModelReport::Overall::Undetermined);
    CHECK_FALSE(R.exact);
    CHECK(R.inj.pass);
  }
}

TEST_CASE("check_tcontr_rel") {
  FinCat dir = make_dirtree_category();
  SuspensionBase S = suspension(dir);

  SECTION("one tree component, singleton palettes -> Model") {
    Presheaf X = make_susp_presheaf(S, {{2, {{0, 1}}}}, 1, 1, {{0, 0}});
    RelModelReport R = check_tcontr_rel(S, X);
    CHECK(R.overall == ModelReport::Overall::Model);
    CHECK(R.exact);
    CHECK(R.coloring_tree);
  }
  SECTION("double edge in the coloring graph -> NotModel") {
    Presheaf X = make_susp_presheaf(S, {{2, {{0, 1}}}, {2, {{0, 1}}}}, 1, 1, {{0, 0}, {0, 0}});
    RelModelReport R = check_tcontr_rel(S, X);
    CHECK(R.overall == ModelReport::Overall::NotModel);
    CHECK(R.exact);
    CHECK_FALSE(R.coloring_tree);
  }
  SECTION("3-cycle component -> NotModel from the component check") {
    Presheaf X = make_susp_presheaf(S, {{3, {{0, 1}, {1, 2}, {2, 0}}}}, 1, 1, {{0, 0}});
    RelModelReport R = check_tcontr_rel(S, X);
    CHECK(R.overall == ModelReport::Overall::NotModel);
    CHECK(R.witness.find("component") != std::string::npos);
  }
  SECTION("base mismatch") {
    CHECK_THROWS_AS(check_tcontr_rel(S, presheaf_from_dirgraph(dir, {1, {}})), error);
  }
}

TEST_CASE("tree oracles") {
  FinCat dir = make_dirtree_category();
  CHECK(directed_tree_oracle(presheaf_from_dirgraph(dir, {2, {{0, 1}}})));
  CHECK_FALSE(directed_tree_oracle(presheaf_from_dirgraph(dir, {2, {{0, 1}, {1, 0}}})));
  CHECK_FALSE(directed_tree_oracle(presheaf_from_dirgraph(dir, {1, {{0, 0}}})));
  CHECK_FALSE(directed_tree_oracle(presheaf_from_dirgraph(dir, {2, {}})));
  for (unsigned long long seed = 0; seed < 10; ++seed)
    CHECK(directed_tree_oracle(generate_dirtree(dir, 7, seed)));

  FinCat und = make_undirtree_category();
  CHECK(undirected_tree_oracle(generate_undirtree(und, 2, 1)));
  for (unsigned long long seed = 0; seed < 10; ++seed)
    CHECK(undirected_tree_oracle(generate_undirtree(und, 5, seed)));

  SECTION("tau-fixed edge fails") {
    RawPresheaf rp;
    rp.carriers = {{"V", {"v"}}, {"E", {"e"}}};
    rp.actions = {{"s", {{"e", "v"}}}, {"t", {{"e", "v"}}}, {"tau", {{"e", "e"}}}};
    CHECK_FALSE(undirected_tree_oracle(validate_presheaf(und, rp)));
  }
  SECTION("undirected triangle fails") {
    RawPresheaf rp;
    rp.carriers = {{"V", {"v0", "v1", "v2"}}, {"E", {"e0a", "e0b", "e1a", "e1b", "e2a", "e2b"}}};
    rp.actions = {{"s", {{"e0a", "v0"}, {"e0b", "v1"}, {"e1a", "v1"}, {"e1b", "v2"},
                         {"e2a", "v2"}, {"e2b", "v0"}}},
                  {"t", {{"e0a", "v1"}, {"e0b", "v0"}, {"e1a", "v2"}, {"e1b", "v1"},
                         {"e2a", "v0"}, {"e2b", "v2"}}},
                  {"tau", {{"e0a", "e0b"}, {"e0b", "e0a"}, {"e1a", "e1b"}, {"e1b", "e1a"},
                           {"e2a", "e2b"}, {"e2b", "e2a"}}}};
    CHECK_FALSE(undirected_tree_oracle(validate_presheaf(und, rp)));
  }
  SECTION("labeled tree oracle") {
    SuspensionBase S = suspension(dir);
    // star coloring graph with 3 edges
    Presheaf star = make_susp_presheaf(
        S, {{2, {{0, 1}}}, {3, {{0, 1}, {1, 2}}}, {1, {}}}, 1, 3, {{0, 0}, {0, 1}, {0, 2}});
    CHECK(labeled_tree_oracle(S, star));
    for (unsigned long long seed = 0; seed < 8; ++seed)
      CHECK(labeled_tree_oracle(S, generate_labeled_tree(S, 3, seed)));
    // oracle agreement with the relative check on a few instances
    std::vector<Presheaf> cases = {
        star,
        make_susp_presheaf(S, {{2, {{0, 1}}}, {2, {{0, 1}}}}, 1, 1, {{0, 0}, {0, 0}}),
        make_susp_presheaf(S, {{3, {{0, 1}, {1, 2}, {2, 0}}}}, 1, 1, {{0, 0}}),
        make_susp_presheaf(S, {}, 1, 0, {}),
        make_susp_presheaf(S, {}, 2, 1, {}),
    };
    for (const Presheaf& X : cases) {
      RelModelReport R = check_tcontr_rel(S, X);
      if (R.exact)
        CHECK((R.overall == ModelReport::Overall::Model) == labeled_tree_oracle(S, X));
    }
  }
}

TEST_CASE("exhaustive small agreement with the directed-tree oracle") {
  FinCat dir = make_dirtree_category();
  long long checked = 0;
  for (int nv = 0; nv <= 3; ++nv) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < nv; ++a)
      for (int b = 0; b < nv; ++b) pairs.emplace_back(a, b);
    int np = static_cast<int>(pairs.size());
    for (int ne = 0; ne <= 3; ++ne) {
      // unordered multisets of edges (isomorphism-stable superset)
      std::vector<int> pick_ix(ne, 0);
      std::function<void(int, int)> rec = [&](int k, int from) {
        if (k == ne) {
          DirGraph G;
          G.nv = nv;
          for (int i = 0; i < ne; ++i) G.edges.push_back(pairs[pick_ix[i]]);
          Presheaf X = presheaf_from_dirgraph(dir, G);
          ModelReport R = check_tcontr(dir, X);
          REQUIRE(R.exact);
          CHECK((R.overall == ModelReport::Overall::Model) == directed_tree_oracle(X));
          ++checked;
          return;
        }
        for (int i = from; i < np; ++i) {
          pick_ix[k] = i;
          rec(k + 1, i);
        }
      };
      if (ne == 0 || np > 0) rec(0, 0);
    }
  }
  CHECK(checked > 100);
}
