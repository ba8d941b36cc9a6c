#include <doctest.h>

#include "auk/arrow.hpp"
#include "auk/setmodel.hpp"

using namespace auk;

namespace {

SetElem atom(const char* s) { return SetElem::make_atom(s); }

SetObjPtr two_set() { return fin_set({atom("a"), atom("b")}); }

}  // namespace

TEST_CASE("interpreting the object context with a chosen carrier") {
  const Context c = make_context({AddPrimitiveNode{}});
  PrimAssignment prim;
  prim.nodes[0] = two_set();
  const SetModel m = interpret_context(c, prim);
  CHECK(is_finite(m.node[0]));
  CHECK(m.node[0]->elems.size() == 2);
  CHECK(m.edge[0](atom("a")) == atom("a"));
  CHECK(m.strict);
}

TEST_CASE("pullback of {0,1} -> {0} against itself has four pairs") {
  // X --f--> Z <--f-- X with f constant
  const Context c = make_context({AddPrimitiveNode{}, AddPrimitiveNode{},
                                  AddPrimitiveEdge{0, 1}, AddPullback{2, 2}});
  PrimAssignment prim;
  prim.nodes[0] = two_set();
  prim.nodes[1] = fin_set({atom("z")});
  std::map<SetElem, SetElem> t{{atom("a"), atom("z")}, {atom("b"), atom("z")}};
  prim.edges[2] = tabulate(prim.nodes[0], prim.nodes[1], t);
  const SetModel m = interpret_context(c, prim);
  const Idx P = 2;
  REQUIRE(is_finite(m.node[P]));
  // brute-force pair enumeration oracle
  const SetObjPtr two = two_set();
  std::vector<SetElem> expect;
  for (const auto& x : two->elems)
    for (const auto& y : two->elems) expect.push_back(SetElem::pair(x, y));
  CHECK(m.node[P]->elems == expect);
  // projections and diagonal
  const Idx p1 = 3, pd = 4, p2 = 5;
  CHECK(m.edge[p1](SetElem::pair(atom("a"), atom("b"))) == atom("a"));
  CHECK(m.edge[p2](SetElem::pair(atom("a"), atom("b"))) == atom("b"));
  CHECK(m.edge[pd](SetElem::pair(atom("a"), atom("b"))) == atom("z"));
}

TEST_CASE("violated commutativity is reported with a counterexample") {
  // two parallel edges asserted equal, modelled by different maps
  const Context c = make_context({AddPrimitiveNode{}, AddPrimitiveNode{},
                                  AddPrimitiveEdge{0, 1}, AddPrimitiveEdge{0, 1},
                                  AddCommutativity{0, 2, 3}});
  PrimAssignment prim;
  prim.nodes[0] = two_set();
  prim.nodes[1] = two_set();
  prim.edges[2] = identity_mor(two_set());
  std::map<SetElem, SetElem> sw{{atom("a"), atom("b")}, {atom("b"), atom("a")}};
  prim.edges[3] = tabulate(two_set(), two_set(), sw);
  try {
    interpret_context(c, prim);
    FAIL("expected a commutativity violation");
  } catch (const ModelError& err) {
    CHECK(std::string(err.what()).find("a") != std::string::npos);
  }
}

TEST_CASE("list object over the terminal enumerates by length") {
  const Context c = make_context({AddTerminal{}, AddListObject{0}});
  const SetModel m = interpret_context(c, {});
  const Idx L = 2;
  std::vector<SetElem> firsts;
  enumerate(m.node[L], 2, [&](const SetElem& x) { firsts.push_back(x); });
  REQUIRE(firsts.size() == 3);
  CHECK(firsts[0] == SetElem::list({}));
  CHECK(firsts[1] == SetElem::list({SetElem::unit()}));
  CHECK(firsts[2] == SetElem::list({SetElem::unit(), SetElem::unit()}));
  // eps and cons behave canonically
  const SetElem two = SetElem::list({SetElem::unit(), SetElem::unit()});
  CHECK(m.edge[c.apex.ul_e[0]](SetElem::unit()) == SetElem::list({}));
  CHECK(m.edge[c.apex.ul_cons[0]](SetElem::pair(two, SetElem::unit())) ==
        SetElem::list({SetElem::unit(), SetElem::unit(), SetElem::unit()}));
}

TEST_CASE("pushout glues along the span with least representatives") {
  // span Y1 <--u1-- X --u2--> Y2 with u1 injective, u2 constant
  const Context c = make_context({AddPrimitiveNode{}, AddPrimitiveNode{},
                                  AddPrimitiveNode{}, AddPrimitiveEdge{0, 1},
                                  AddPrimitiveEdge{0, 2}, AddPushout{3, 4}});
  PrimAssignment prim;
  prim.nodes[0] = two_set();
  prim.nodes[1] = two_set();
  prim.nodes[2] = fin_set({atom("y")});
  prim.edges[3] = identity_mor(two_set());
  std::map<SetElem, SetElem> ct{{atom("a"), atom("y")}, {atom("b"), atom("y")}};
  prim.edges[4] = tabulate(two_set(), prim.nodes[2], ct);
  const SetModel m = interpret_context(c, prim);
  const Idx Q = 3;
  // both elements of Y1 and the single element of Y2 are glued into one class
  REQUIRE(is_finite(m.node[Q]));
  CHECK(m.node[Q]->elems.size() == 1);
  CHECK(m.node[Q]->elems[0] == SetElem::tagged(0, atom("a")));
}

TEST_CASE("extend along a composition step") {
  const Context c = make_context({AddPrimitiveNode{}, AddPrimitiveNode{},
                                  AddPrimitiveNode{}, AddPrimitiveEdge{0, 1},
                                  AddPrimitiveEdge{1, 2}});
  PrimAssignment prim;
  prim.nodes[0] = two_set();
  prim.nodes[1] = two_set();
  prim.nodes[2] = two_set();
  std::map<SetElem, SetElem> sw{{atom("a"), atom("b")}, {atom("b"), atom("a")}};
  prim.edges[3] = tabulate(two_set(), two_set(), sw);
  prim.edges[4] = tabulate(two_set(), two_set(), sw);
  const SetModel m = interpret_context(c, prim);
  EqExtension e{c.apex, {EqComposition{3, 4}}};
  const SetModel m2 = extend_along_eqext(m, e);
  const Idx w = c.apex.edge_count();
  CHECK(m2.edge[w](atom("a")) == atom("a"));  // swap twice
  CHECK(check_commutativities(m2).back().holds);
}

TEST_CASE("balance inverts a bijection") {
  const Context c = make_context({
      AddPrimitiveNode{}, AddPrimitiveNode{},
      AddPrimitiveEdge{0, 1},          // u = 2
      AddPullback{2, 2},               // kernel pair: P=2, p1=3, p=4, p2=5, tris 0,1
      AddPushout{2, 2},                // cokernel pair: Q=3, j1=7, j=8, j2=9, tris 2,3
      AddCommutativity{6, 3, 5},       // p1 <| p2 (6 = id(P))
      AddCommutativity{1, 7, 9},       // j1 <| j2 (1 = id(Y))
  });
  PrimAssignment prim;
  prim.nodes[0] = two_set();
  prim.nodes[1] = two_set();
  std::map<SetElem, SetElem> sw{{atom("a"), atom("b")}, {atom("b"), atom("a")}};
  prim.edges[2] = tabulate(two_set(), two_set(), sw);
  const SetModel m = interpret_context(c, prim);
  EqExtension e{c.apex, {EqBalance{2, 0, 0, 4, 5}}};
  const SetModel m2 = extend_along_eqext(m, e);
  const Idx inv = c.apex.edge_count();
  CHECK(m2.edge[inv](atom("b")) == atom("a"));
  // the two inversion commutativities hold
  const auto comms = check_commutativities(m2);
  CHECK(comms[comms.size() - 1].holds);
  CHECK(comms[comms.size() - 2].holds);
}

TEST_CASE("reduct along a projection is the component") {
  const Context prod = make_context({AddPrimitiveNode{}, AddPrimitiveNode{}});
  PrimAssignment prim;
  prim.nodes[0] = two_set();
  prim.nodes[1] = fin_set({atom("z")});
  const SetModel m = interpret_context(prod, prim);
  SketchHom proj;
  proj.source = object_sketch();
  proj.target = prod.apex;
  proj.n = {1};
  proj.e = {1};
  REQUIRE(validate_hom(proj).ok());
  const SetModel r = reduct(m, proj);
  CHECK(obj_equal(r.node[0], prim.nodes[1]));
  CHECK(r.strict);
  // reduct along the identity is the same model
  const SetModel rid = reduct(m, identity_hom(prod.apex));
  CHECK(obj_equal(rid.node[0], m.node[0]));
}

TEST_CASE("reduct along a 2-cell hom is a model homomorphism") {
  const Context ob = make_context({AddPrimitiveNode{}});
  const auto ar = build_arrow_context(ob);
  PrimAssignment prim;
  prim.nodes[ar.node0[0]] = two_set();
  prim.nodes[ar.node1[0]] = fin_set({atom("z")});
  std::map<SetElem, SetElem> ct{{atom("a"), atom("z")}, {atom("b"), atom("z")}};
  prim.edges[ar.theta_node[0]] = tabulate(two_set(), fin_set({atom("z")}), ct);
  prim.edges[ar.theta_edge[0]] = prim.edges[ar.theta_node[0]];
  const SetModel m = interpret_context(ar.ctx, prim);
  const SetModel m0 = reduct(m, ar.i0);
  const SetModel m1 = reduct(m, ar.i1);
  SketchHom alpha = identity_hom(ar.ctx.apex);
  const ModelHom h = reduct_two_cell(m, alpha, ar.theta_node);
  CHECK(check_model_hom(m0, m1, h));
}

TEST_CASE("strictify returns the identity case on an already strict model") {
  const Context c = make_context({AddPrimitiveNode{}, AddPrimitiveNode{},
                                  AddPrimitiveEdge{0, 1}, AddPullback{2, 2}});
  PrimAssignment prim;
  prim.nodes[0] = two_set();
  prim.nodes[1] = fin_set({atom("z")});
  std::map<SetElem, SetElem> ct{{atom("a"), atom("z")}, {atom("b"), atom("z")}};
  prim.edges[2] = tabulate(two_set(), prim.nodes[1], ct);
  const SetModel m = interpret_context(c, prim);
  const auto r = strictify(c, m);
  for (Idx x = 0; x < c.apex.node_count(); ++x) {
    CHECK(obj_equal(r.model.node[x], m.node[x]));
    CHECK(mor_equal(r.iso[x].fwd, identity_mor(m.node[x]), 4).holds);
  }
}

TEST_CASE("strictify replaces a swapped product carrier") {
  const Context c = make_context({AddPrimitiveNode{}, AddPrimitiveNode{},
                                  AddPrimitiveEdge{0, 1}, AddPullback{2, 2}});
  PrimAssignment prim;
  prim.nodes[0] = two_set();
  prim.nodes[1] = fin_set({atom("z")});
  std::map<SetElem, SetElem> ct{{atom("a"), atom("z")}, {atom("b"), atom("z")}};
  prim.edges[2] = tabulate(two_set(), prim.nodes[1], ct);
  SetModel m = interpret_context(c, prim);
  // perturb: carry the product by swapped pairs
  const Idx P = 2, p1 = 3, pd = 4, p2 = 5, idP = 6;
  std::vector<SetElem> swapped;
  std::map<SetElem, SetElem> t1, t2, td, ti;
  for (const auto& q : m.node[P]->elems) {
    const SetElem s = SetElem::pair(q.second(), q.first());
    swapped.push_back(s);
  }
  const SetObjPtr carrier = fin_set(swapped);
  for (const auto& s : carrier->elems) {
    t1[s] = s.second();
    t2[s] = s.first();
    td[s] = atom("z");
    ti[s] = s;
  }
  m.node[P] = carrier;
  m.edge[p1] = tabulate(carrier, m.node[0], t1);
  m.edge[p2] = tabulate(carrier, m.node[0], t2);
  m.edge[pd] = tabulate(carrier, m.node[1], td);
  m.edge[idP] = tabulate(carrier, carrier, ti);
  m.strict = false;

  const auto r = strictify(c, m);
  // primitive components are identities
  CHECK(mor_equal(r.iso[0].fwd, identity_mor(m.node[0]), 4).holds);
  CHECK(mor_equal(r.iso[1].fwd, identity_mor(m.node[1]), 4).holds);
  // the strict product is the canonical pair set and phi_P is the swap
  CHECK(r.model.node[P]->elems[0].kind == SetElem::Kind::Pair);
  const SetElem ab = SetElem::pair(atom("a"), atom("b"));
  CHECK(r.iso[P].fwd(ab) == SetElem::pair(atom("b"), atom("a")));
  // re-running on the output is the identity case
  const auto r2 = strictify(c, r.model);
  for (Idx x = 0; x < c.apex.node_count(); ++x)
    CHECK(mor_equal(r2.iso[x].fwd, identity_mor(r.model.node[x]), 4).holds);
}

TEST_CASE("strictify rejects a fake universal") {
  const Context c = make_context({AddTerminal{}});
  SetModel m = interpret_context(c, {});
  m.node[0] = two_set();  // not a terminal
  m.edge[0] = identity_mor(two_set());
  m.strict = false;
  CHECK_THROWS_AS(strictify(c, m), ModelError);
}
