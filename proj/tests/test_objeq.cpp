#include <doctest.h>

#include "auk/objeq.hpp"
#include "auk/setmodel.hpp"

using namespace auk;

namespace {

// two terminals and a primitive node
Context two_terminals() {
  return make_context({AddTerminal{}, AddTerminal{}, AddPrimitiveNode{}});
}

// a cospan with the same pullback adjoined twice
Context twin_pullbacks() {
  return make_context({
      AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveNode{},  // X Y Z
      AddPrimitiveEdge{0, 2}, AddPrimitiveEdge{1, 2},              // u=3 v=4
      AddPullback{3, 4},                                           // P1 = node 3
      AddPullback{3, 4},                                           // P2 = node 4
  });
}

}  // namespace

TEST_CASE("same-node witnesses verify via reflexivity") {
  Context c = make_context({AddPrimitiveNode{}, AddPrimitiveEdge{0, 0},
                            AddCommutativity{0, 1, 0}});  // gamma <| id
  const ObjectEqualityWitness w{WSameNode{0}};
  CHECK(verify_object_equality(c.apex, 1, w));
  // the identity edge with the wrong commutativity shape fails
  const ObjectEqualityWitness bad{WSameNode{5}};
  CHECK_FALSE(verify_object_equality(c.apex, 1, bad));
}

TEST_CASE("terminal subjects need no extra structure") {
  const Context c = two_terminals();
  EqExtension fill{c.apex, {EqTerminalFillin{1, 0}}};  // edge T1 -> T2
  const auto r = apply_eq_extension(fill);
  const Idx gamma = r.deltas[0].edges[0];
  CHECK(verify_object_equality(r.result, gamma, ObjectEqualityWitness{WTerminals{0, 1}}));
  // a primitive endpoint does not qualify
  EqExtension fill2{c.apex, {EqTerminalFillin{1, 2}}};
  const auto r2 = apply_eq_extension(fill2);
  CHECK_FALSE(verify_object_equality(r2.result, r2.deltas[0].edges[0],
                                     ObjectEqualityWitness{WTerminals{0, 1}}));
}

TEST_CASE("search finds the pullbacks witness for twin pullbacks") {
  const Context c = twin_pullbacks();
  const auto res = search_object_equality(c.apex, 3, 4);
  REQUIRE(res.outcome == SearchOutcome::Proved);
  const auto applied = apply_eq_extension(res.ext);
  CHECK(verify_object_equality(applied.result, res.edge, *res.witness));
  CHECK(applied.result.e_dom[res.edge] == 3);
  CHECK(applied.result.e_cod[res.edge] == 4);
}

TEST_CASE("search reports NotProved for unrelated primitives") {
  const Context c = make_context({AddPrimitiveNode{}, AddPrimitiveNode{}});
  const auto res = search_object_equality(c.apex, 0, 1);
  CHECK(res.outcome == SearchOutcome::NotProved);
}

TEST_CASE("search handles twin pushouts") {
  const Context c = make_context({
      AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveNode{},
      AddPrimitiveEdge{0, 1}, AddPrimitiveEdge{0, 2},
      AddPushout{3, 4}, AddPushout{3, 4},
  });
  const auto res = search_object_equality(c.apex, 3, 4);
  REQUIRE(res.outcome == SearchOutcome::Proved);
  const auto applied = apply_eq_extension(res.ext);
  CHECK(verify_object_equality(applied.result, res.edge, *res.witness));
}

TEST_CASE("identity collapse across witness kinds") {
  SUBCASE("same node") {
    Context c = make_context({AddPrimitiveNode{}, AddPrimitiveEdge{0, 0},
                              AddCommutativity{0, 1, 0}});
    const auto r = objeq_identity_collapse(c.apex, 1, ObjectEqualityWitness{WSameNode{0}});
    const auto a = apply_eq_extension(r.ext);
    CHECK(a.result.tri_r[r.comm] == a.result.n_id[0]);
    CHECK(a.result.tri_c[r.comm] == 1);
  }
  SUBCASE("terminal") {
    Context c = make_context({AddTerminal{}, AddPrimitiveEdge{0, 0}});
    const auto r = objeq_identity_collapse(c.apex, 1, ObjectEqualityWitness{WTerminals{0, 0}});
    const auto a = apply_eq_extension(r.ext);
    // id(T) <| gamma
    CHECK(a.result.tri_l[r.comm] == c.apex.n_id[0]);
    CHECK(a.result.tri_r[r.comm] == c.apex.n_id[0]);
    CHECK(a.result.tri_c[r.comm] == 1);
  }
  SUBCASE("pullback endo") {
    // an endo object equality on a single pullback: search twin, then
    // collapse needs both subjects from the same universal, so use a
    // self-equality built from the search machinery on one universal
    const Context c = twin_pullbacks();
    const auto res = search_object_equality(c.apex, 3, 3);
    REQUIRE(res.outcome == SearchOutcome::Proved);
    const auto applied = apply_eq_extension(res.ext);
    const auto r = objeq_identity_collapse(applied.result, res.edge, *res.witness);
    const auto a = apply_eq_extension(r.ext);
    CHECK(a.result.tri_c[r.comm] == res.edge);
  }
}

TEST_CASE("compose and invert terminals witnesses") {
  const Context c = make_context({AddTerminal{}, AddTerminal{}, AddTerminal{}});
  EqExtension fills{c.apex, {EqTerminalFillin{1, 0}, EqTerminalFillin{2, 1}}};
  const auto r = apply_eq_extension(fills);
  const Idx g1 = r.deltas[0].edges[0];  // T0 -> T1
  const Idx g2 = r.deltas[1].edges[0];  // T1 -> T2

  SUBCASE("compose gives a terminals witness for the outer pair") {
    const auto comp = objeq_compose(r.result, g1, ObjectEqualityWitness{WTerminals{0, 1}},
                                    g2, ObjectEqualityWitness{WTerminals{1, 2}});
    const auto a = apply_eq_extension(comp.ext);
    CHECK(a.result.has_triangle(g1, g2, comp.edge));
    CHECK(verify_object_equality(a.result, comp.edge, *comp.witness));
    CHECK(std::holds_alternative<WTerminals>(comp.witness->v));
  }
  SUBCASE("invert reverses the witness and yields inverse commutativities") {
    const auto inv = objeq_invert(r.result, g1, ObjectEqualityWitness{WTerminals{0, 1}});
    const auto a = apply_eq_extension(inv.ext);
    CHECK(a.result.e_dom[inv.edge] == 1);
    CHECK(a.result.e_cod[inv.edge] == 0);
    CHECK(verify_object_equality(a.result, inv.edge, *inv.witness));
    CHECK(a.result.has_triangle(g1, inv.edge, a.result.n_id[0]));
    CHECK(a.result.has_triangle(inv.edge, g1, a.result.n_id[1]));
  }
}

TEST_CASE("compose pullback witnesses along twin universals") {
  // three identical pullbacks; compose X=>Y=>Z
  Context c = make_context({
      AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveNode{},
      AddPrimitiveEdge{0, 2}, AddPrimitiveEdge{1, 2},
      AddPullback{3, 4}, AddPullback{3, 4}, AddPullback{3, 4},
  });
  auto r1 = search_object_equality(c.apex, 3, 4);
  REQUIRE(r1.outcome == SearchOutcome::Proved);
  auto s1 = apply_eq_extension(r1.ext).result;
  auto r2 = search_object_equality(s1, 4, 5);
  REQUIRE(r2.outcome == SearchOutcome::Proved);
  auto s2 = apply_eq_extension(r2.ext).result;

  const auto comp = objeq_compose(s2, r1.edge, *r1.witness, r2.edge, *r2.witness);
  const auto a = apply_eq_extension(comp.ext);
  CHECK(verify_object_equality(a.result, comp.edge, *comp.witness));
  CHECK(a.result.has_triangle(r1.edge, r2.edge, comp.edge));
}

TEST_CASE("parallel unify of two fillins into the same pullback") {
  const Context c = twin_pullbacks();
  auto r1 = search_object_equality(c.apex, 3, 4);
  auto s1 = apply_eq_extension(r1.ext).result;
  // run the search again over the grown sketch for a second, distinct edge
  auto r2 = search_object_equality(s1, 3, 4);
  auto s2 = apply_eq_extension(r2.ext).result;
  REQUIRE(r1.edge != r2.edge);
  const auto uni = objeq_parallel_unify(s2, r1.edge, *r1.witness, r2.edge, *r2.witness);
  const auto a = apply_eq_extension(uni.ext);
  CHECK(a.result.tri_r[uni.comm] == r1.edge);
  CHECK(a.result.tri_c[uni.comm] == r2.edge);
}

TEST_CASE("invert a pullbacks witness") {
  const Context c = twin_pullbacks();
  auto r1 = search_object_equality(c.apex, 3, 4);
  auto s1 = apply_eq_extension(r1.ext).result;
  const auto inv = objeq_invert(s1, r1.edge, *r1.witness);
  const auto a = apply_eq_extension(inv.ext);
  CHECK(a.result.e_dom[inv.edge] == 4);
  CHECK(a.result.e_cod[inv.edge] == 3);
  CHECK(verify_object_equality(a.result, inv.edge, *inv.witness));
  CHECK(a.result.has_triangle(r1.edge, inv.edge, a.result.n_id[3]));
  CHECK(a.result.has_triangle(inv.edge, r1.edge, a.result.n_id[4]));
}

TEST_CASE("object equalities interpret as identity maps in set models") {
  const Context c = twin_pullbacks();
  auto r1 = search_object_equality(c.apex, 3, 4);
  REQUIRE(r1.outcome == SearchOutcome::Proved);
  PrimAssignment prim;
  const auto two = fin_set({SetElem::make_atom("a"), SetElem::make_atom("b")});
  const auto one = fin_set({SetElem::make_atom("z")});
  prim.nodes[0] = two;
  prim.nodes[1] = two;
  prim.nodes[2] = one;
  prim.edges[3] = const_unit(two, one);  // not really unit-valued; rebuild below
  std::map<SetElem, SetElem> ct;
  for (const auto& x : two->elems) ct[x] = one->elems[0];
  prim.edges[3] = tabulate(two, one, ct);
  prim.edges[4] = tabulate(two, one, ct);
  const SetModel m = interpret_context(c, prim);
  const SetModel m2 = extend_along_eqext(m, r1.ext);
  // gamma's interpretation is the identity on equal carriers
  CHECK(obj_equal(m2.node[3], m2.node[4]));
  CHECK(mor_equal(m2.edge[r1.edge], identity_mor(m2.node[3]), 4).holds);
}

TEST_CASE("trivial certificates verify and (objective equality is reflexive)") {
  const Context t1 = make_context({AddPrimitiveNode{}, AddPrimitiveNode{},
                                   AddPrimitiveEdge{0, 1}});
  const Context t0 = make_context({AddPrimitiveNode{}, AddPrimitiveNode{},
                                   AddPrimitiveEdge{0, 1}, AddTerminal{}});
  SketchHom f;
  f.source = t1.apex;
  f.target = t0.apex;
  f.n = {0, 1};
  f.e = {0, 1, 2};
  REQUIRE(validate_hom(f).ok());
  const auto cert = trivial_certificate(t1, f);
  CHECK(verify_objective_equality(t1, f, f, cert));
  // the same certificate does not verify a different pair
  SketchHom g = f;
  g.n = {1, 1};
  g.e = {1, 1, 1};
  REQUIRE(validate_hom(g).ok());
  CHECK_FALSE(verify_objective_equality(t1, f, g, cert));
}
