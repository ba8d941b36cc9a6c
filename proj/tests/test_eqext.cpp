#include <doctest.h>

#include "auk/derive.hpp"
#include "auk/eqext.hpp"

using namespace auk;

namespace {

// X --u--> Y --v--> Z of primitive edges
Context chain2() {
  return make_context({AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveNode{},
                       AddPrimitiveEdge{0, 1}, AddPrimitiveEdge{1, 2}});
}

constexpr Idx kU = 3, kV = 4;  // the two primitive edges of chain2

}  // namespace

TEST_CASE("composition adds one edge and one commutativity") {
  const Context c = chain2();
  EqExtension e{c.apex, {EqComposition{kU, kV}}};
  const auto r = apply_eq_extension(e);
  CHECK(r.result.edge_count() == c.apex.edge_count() + 1);
  CHECK(r.result.tri_count() == c.apex.tri_count() + 1);
  const Idx w = r.deltas[0].edges[0];
  CHECK(r.result.e_dom[w] == 0);
  CHECK(r.result.e_cod[w] == 2);
  CHECK(r.result.has_triangle(kU, kV, w));
  CHECK(validate_sketch(r.result).ok());
}

TEST_CASE("unit laws add a commutativity and no edge") {
  const Context c = chain2();
  EqExtension e{c.apex, {EqLeftUnit{kU}, EqRightUnit{kU}}};
  const auto r = apply_eq_extension(e);
  CHECK(r.result.edge_count() == c.apex.edge_count());
  CHECK(r.result.tri_count() == c.apex.tri_count() + 2);
  CHECK(r.result.has_triangle(c.apex.n_id[0], kU, kU));
  CHECK(r.result.has_triangle(kU, c.apex.n_id[1], kU));
}

TEST_CASE("side-condition violations name the step and condition") {
  const Context c = chain2();
  EqExtension bad{c.apex, {EqComposition{kV, kU}}};  // do not compose
  try {
    apply_eq_extension(bad);
    FAIL("expected a side-condition failure");
  } catch (const KernelError& err) {
    const std::string msg = err.what();
    CHECK(msg.find("step 0") != std::string::npos);
    CHECK(msg.find("composition") != std::string::npos);
    CHECK(msg.find("do not compose") != std::string::npos);
  }
}

TEST_CASE("pullback fillin and its uniqueness") {
  // cospan u: X->Z, v: Y->Z; a pullback on it; then a cone from W
  Context c = make_context({
      AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveNode{},  // X Y Z
      AddPrimitiveEdge{0, 2}, AddPrimitiveEdge{1, 2},              // u=3 v=4
      AddPullback{3, 4},                                           // P=3 p1=5 p=6 p2=7
      AddPrimitiveNode{},                                          // W=4, id(W)=9
      AddPrimitiveEdge{4, 0},                                      // a=10: W->X
      AddPrimitiveEdge{4, 1},                                      // b=11: W->Y
      AddPrimitiveEdge{4, 2},                                      // d=12: W->Z
      AddCommutativity{10, 3, 12},                                 // tri2: a;u = d
      AddCommutativity{11, 4, 12},                                 // tri3: b;v = d
  });
  const Idx d1 = 2, d2 = 3;  // the two cone triangles (0 and 1 are the square)
  EqExtension e{c.apex, {EqPullbackFillin{0, d1, d2}}};
  const auto r = apply_eq_extension(e);
  const Idx w = r.deltas[0].edges[0];
  CHECK(r.result.e_dom[w] == 4);
  CHECK(r.result.e_cod[w] == 3);
  CHECK(r.result.has_triangle(w, 5, 10));
  CHECK(r.result.has_triangle(w, 7, 11));

  // a second fillin with the same characterizing commutativities
  EqExtension e2{r.result, {EqPullbackFillin{0, d1, d2}}};
  const auto r2 = apply_eq_extension(e2);
  const Idx w2 = r2.deltas[0].edges[0];
  EqExtension uniq{r2.result, {EqPullbackFillinUnique{0, 10, 11, w, w2}}};
  const auto r3 = apply_eq_extension(uniq);
  CHECK(r3.result.has_unary_comm(w, w2));
}

TEST_CASE("terminal fillin uniqueness wants parallel edges into the terminal") {
  Context c = make_context({AddTerminal{}, AddPrimitiveNode{},
                            AddPrimitiveEdge{1, 0}});
  EqExtension fill{c.apex, {EqTerminalFillin{0, 1}}};
  const auto r = apply_eq_extension(fill);
  const Idx bang = r.deltas[0].edges[0];
  EqExtension uniq{r.result, {EqTerminalFillinUnique{0, 2, bang}}};
  const auto r2 = apply_eq_extension(uniq);
  CHECK(r2.result.has_unary_comm(2, bang));

  EqExtension bad{r.result, {EqTerminalFillinUnique{0, 2, r.result.n_id[0]}}};
  CHECK_THROWS_AS(apply_eq_extension(bad), KernelError);
}

TEST_CASE("every equivalence extension forgets to a valid extension") {
  const Context c = chain2();
  EqExtension e{c.apex,
                {EqComposition{kU, kV}, EqLeftUnit{kU},
                 EqUnivIntro{AddTerminal{}}, EqUnivIntro{AddListObject{0}}}};
  const Extension forgotten = as_extension(e);
  const auto via_eq = apply_eq_extension(e);
  const auto via_ext = apply_extension(forgotten);
  CHECK(via_eq.result == via_ext.result);
  CHECK(validate_sketch(via_ext.result).ok());
}

TEST_CASE("derive refl, sym, trans per the equality-logic proofs") {
  // two parallel primitive edges with a unary commutativity between them
  Context c = make_context({AddPrimitiveNode{}, AddPrimitiveNode{},
                            AddPrimitiveEdge{0, 1}, AddPrimitiveEdge{0, 1},
                            AddPrimitiveEdge{0, 1}});
  // assert u <| u' and u' <| u'' (u=2, u'=3, u''=4)
  Context c2 = make_context({AddPrimitiveNode{}, AddPrimitiveNode{},
                             AddPrimitiveEdge{0, 1}, AddPrimitiveEdge{0, 1},
                             AddPrimitiveEdge{0, 1},
                             AddCommutativity{0, 2, 3},   // id;u = u'
                             AddCommutativity{0, 3, 4}});  // id;u' = u''

  SUBCASE("refl") {
    const auto r = derive_equality(c.apex, GoalRefl{2});
    const auto a = apply_eq_extension(r.derivation);
    CHECK(a.result.tri_l[r.goal_comm] == c.apex.n_id[0]);
    CHECK(a.result.tri_r[r.goal_comm] == 2);
    CHECK(a.result.tri_c[r.goal_comm] == 2);
  }
  SUBCASE("sym") {
    const auto r = derive_equality(c2.apex, GoalSym{0});
    const auto a = apply_eq_extension(r.derivation);
    CHECK(a.result.tri_l[r.goal_comm] == c2.apex.n_id[0]);
    CHECK(a.result.tri_r[r.goal_comm] == 3);
    CHECK(a.result.tri_c[r.goal_comm] == 2);
  }
  SUBCASE("trans") {
    const auto r = derive_equality(c2.apex, GoalTrans{0, 1});
    const auto a = apply_eq_extension(r.derivation);
    CHECK(a.result.tri_r[r.goal_comm] == 2);
    CHECK(a.result.tri_c[r.goal_comm] == 4);
  }
  SUBCASE("missing witness") {
    CHECK_THROWS_AS(derive_equality(c.apex, GoalSym{5}), KernelError);
  }
}

TEST_CASE("derive congruence") {
  // u,u': X->Y with u<|u'; v,v': Y->Z with v<|v'; w = uv
  Context c = make_context({
      AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveNode{},
      AddPrimitiveEdge{0, 1}, AddPrimitiveEdge{0, 1},   // u=3 u'=4
      AddPrimitiveEdge{1, 2}, AddPrimitiveEdge{1, 2},   // v=5 v'=6
      AddPrimitiveEdge{0, 2},                           // w=7
      AddCommutativity{0, 3, 4},                        // t0: u <| u'
      AddCommutativity{1, 5, 6},                        // t1: v <| v'
      AddCommutativity{3, 5, 7},                        // t2: u;v = w
  });
  const auto r = derive_equality(c.apex, GoalCongruence{0, 1, 2});
  const auto a = apply_eq_extension(r.derivation);
  CHECK(a.result.tri_l[r.goal_comm] == 4);
  CHECK(a.result.tri_r[r.goal_comm] == 6);
  CHECK(a.result.tri_c[r.goal_comm] == 7);
}

TEST_CASE("unit transfer reaches all four forms") {
  Context c = make_context({AddPrimitiveNode{}, AddPrimitiveNode{},
                            AddPrimitiveEdge{0, 1}, AddPrimitiveEdge{0, 1},
                            AddCommutativity{0, 2, 3}});  // (id, u, u')
  const Idx idX = c.apex.n_id[0], idY = c.apex.n_id[1], u = 2, u2 = 3;
  auto run = [&](UnaryForm to, Idx l, Idx r, Idx cc) {
    const auto res = derive_equality(c.apex, GoalUnitTransfer{0, to});
    const auto a = apply_eq_extension(res.derivation);
    return a.result.tri_l[res.goal_comm] == l && a.result.tri_r[res.goal_comm] == r &&
           a.result.tri_c[res.goal_comm] == cc;
  };
  CHECK(run(UnaryForm::IdLeft, idX, u, u2));
  CHECK(run(UnaryForm::IdLeftSwapped, idX, u2, u));
  CHECK(run(UnaryForm::RightId, u, idY, u2));
  CHECK(run(UnaryForm::RightIdSwapped, u2, idY, u));
}

TEST_CASE("reindexing an equivalence extension is an equivalence extension") {
  const Context c = chain2();
  EqExtension e{c.apex, {EqComposition{kU, kV}, EqLeftUnit{5}}};
  // fold into a one-object loop sketch with an endo edge
  Context loop = make_context({AddPrimitiveNode{}, AddPrimitiveEdge{0, 0}});
  SketchHom f;
  f.source = c.apex;
  f.target = loop.apex;
  f.n = {0, 0, 0};
  f.e = {0, 0, 0, 1, 1};
  REQUIRE(validate_hom(f).ok());
  const auto r = reindex_eq(e, f);
  const auto a = apply_eq_extension(r.ext);  // must check
  CHECK(validate_sketch(a.result).ok());
  CHECK(validate_hom(r.eps).ok());
}

TEST_CASE("common refinement of equivalence extensions") {
  const Context c = chain2();
  EqExtension e1{c.apex, {EqComposition{kU, kV}}};
  EqExtension e2{c.apex, {EqLeftUnit{kU}, EqComposition{kU, kV}}};

  SUBCASE("refinements check by construction") {
    const auto cr = common_refinement(e1, e2);
    CHECK(check_refinement(cr.eps1));
    CHECK(check_refinement(cr.eps2));
    CHECK(cr.e.steps.size() == e1.steps.size() + e2.steps.size());
  }
  SUBCASE("empty left argument gives e2 with identity refinement") {
    EqExtension empty{c.apex, {}};
    const auto cr = common_refinement(empty, e2);
    const auto a2 = apply_eq_extension(e2);
    CHECK(cr.e.steps.size() == e2.steps.size());
    CHECK(hom_equal(cr.eps2.eps, identity_hom(a2.result)));
  }
  SUBCASE("a permuted refinement map is rejected") {
    const auto cr = common_refinement(e1, e1);
    Refinement broken = cr.eps1;
    std::swap(broken.eps.e[kU], broken.eps.e[kV]);
    CHECK_FALSE(check_refinement(broken));
  }
  SUBCASE("base mismatch is an error") {
    EqExtension other{object_sketch(), {}};
    CHECK_THROWS_AS(common_refinement(e1, other), KernelError);
  }
}

TEST_CASE("derivation outputs always re-check") {
  // derive_equality results replay under apply_eq_extension (they were built
  // through it) and their goals live in the apex
  Context c = make_context({AddPrimitiveNode{}, AddPrimitiveNode{},
                            AddPrimitiveEdge{0, 1}, AddPrimitiveEdge{0, 1},
                            AddCommutativity{0, 2, 3}});
  for (auto goal : {DeriveGoal{GoalSym{0}}, DeriveGoal{GoalRefl{2}},
                    DeriveGoal{GoalUnitTransfer{0, UnaryForm::RightIdSwapped}}}) {
    const auto r = derive_equality(c.apex, goal);
    const auto a = apply_eq_extension(r.derivation);  // throws if unsound
    CHECK(r.goal_comm < a.result.tri_count());
  }
}
