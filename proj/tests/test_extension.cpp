#include <doctest.h>

#include "auk/expr.hpp"
#include "auk/extension.hpp"
#include "oracles.hpp"

using namespace auk;

namespace {

// A cospan X -> Z <- Y of primitive edges.
Context cospan_context() {
  return make_context({AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveNode{},
                       AddPrimitiveEdge{0, 2}, AddPrimitiveEdge{1, 2}});
}

}  // namespace

TEST_CASE("a single primitive node gives the object sketch") {
  const Context c = make_context({AddPrimitiveNode{}});
  CHECK(c.apex == object_sketch());
  CHECK(c.apex.node_count() == 1);
  CHECK(c.apex.edge_count() == 1);
  CHECK(validate_sketch(c.apex).ok());
}

TEST_CASE("pullback delta sizes") {
  Context base = cospan_context();
  Extension ext{base.apex, {AddPullback{3, 4}}};
  const auto r = apply_extension(ext);
  CHECK(validate_sketch(r.result).ok());
  CHECK(r.result.node_count() == base.apex.node_count() + 1);
  CHECK(r.result.edge_count() == base.apex.edge_count() + 4);
  CHECK(r.result.tri_count() == base.apex.tri_count() + 2);
  CHECK(r.result.upb_count() == 1);
  // projections land on the cospan feet, diagonal on the shared head
  const Idx P = base.apex.node_count();
  const Idx p1 = base.apex.edge_count();
  CHECK(r.result.e_dom[p1] == P);
  CHECK(r.result.e_cod[p1] == 0);
  CHECK(r.result.e_cod[p1 + 1] == 2);
  CHECK(r.result.e_cod[p1 + 2] == 1);
  CHECK(r.result.n_id[P] == p1 + 3);
}

TEST_CASE("pushout delta sizes") {
  Context base = make_context({AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveNode{},
                               AddPrimitiveEdge{0, 1}, AddPrimitiveEdge{0, 2}});
  Extension ext{base.apex, {AddPushout{3, 4}}};
  const auto r = apply_extension(ext);
  CHECK(validate_sketch(r.result).ok());
  CHECK(r.result.upo_count() == 1);
  const Idx Q = base.apex.node_count();
  const Idx j1 = base.apex.edge_count();
  CHECK(r.result.e_dom[j1] == 1);
  CHECK(r.result.e_cod[j1] == Q);
  CHECK(r.result.e_dom[j1 + 1] == 0);
  CHECK(r.result.e_dom[j1 + 2] == 2);
}

TEST_CASE("list object delta sizes and wiring") {
  const Context c = make_context({AddPrimitiveNode{}, AddListObject{0}});
  const Sketch& s = c.apex;
  CHECK(validate_sketch(s).ok());
  CHECK(s.node_count() == 4);   // A, T, L, P
  CHECK(s.edge_count() == 11);  // id(A) + the ten delta edges
  CHECK(s.tri_count() == 2);
  CHECK(s.ut_count() == 1);
  CHECK(s.upb_count() == 1);
  CHECK(s.ul_count() == 1);
  // eps: T -> L and cons: P -> L
  const Idx T = 1, L = 2, P = 3;
  CHECK(s.e_dom[s.ul_e[0]] == T);
  CHECK(s.e_cod[s.ul_e[0]] == L);
  CHECK(s.e_dom[s.ul_cons[0]] == P);
  CHECK(s.e_cod[s.ul_cons[0]] == L);
  // first projection of the product lands on L (pullback of (bangL, bangA))
  CHECK(s.e_cod[s.tri_l[s.upb_tri1[s.ul_pb[0]]]] == L);
  CHECK(s.e_cod[s.tri_l[s.upb_tri2[s.ul_pb[0]]]] == 0);
}

TEST_CASE("terminal and initial deltas") {
  const Context c = make_context({AddTerminal{}, AddInitial{}});
  CHECK(c.apex.node_count() == 2);
  CHECK(c.apex.ut_count() == 1);
  CHECK(c.apex.ui_count() == 1);
  CHECK(validate_sketch(c.apex).ok());
}

TEST_CASE("dangling and misconfigured step data is rejected") {
  const Sketch base = object_sketch();
  CHECK_THROWS_AS(apply_step(base, AddPrimitiveEdge{0, 5}), KernelError);
  CHECK_THROWS_AS(apply_step(base, AddListObject{3}), KernelError);
  // non-cospan pullback data
  const Context two = make_context({AddPrimitiveNode{}, AddPrimitiveNode{},
                                    AddPrimitiveEdge{0, 1}});
  CHECK_THROWS_AS(apply_step(two.apex, AddPullback{2, 0}), KernelError);
  // commutativity with mismatched triangle shape
  CHECK_THROWS_AS(apply_step(two.apex, AddCommutativity{2, 2, 2}), KernelError);
}

TEST_CASE("compose_extensions replays like sequential application") {
  const Context base = cospan_context();
  Extension c1{base.apex, {AddPullback{3, 4}}};
  const Sketch mid = apply_extension(c1).result;
  Extension c2{mid, {AddPrimitiveNode{}, AddPrimitiveEdge{4, 3}}};
  const Extension both = compose_extensions(c1, c2);
  CHECK(apply_extension(both).result == apply_extension(c2).result);

  Extension stale{base.apex, {AddPrimitiveNode{}}};
  CHECK_THROWS_AS(compose_extensions(c1, stale), KernelError);
}

TEST_CASE("empty composites are units") {
  const Context base = cospan_context();
  Extension c{base.apex, {AddPullback{3, 4}}};
  Extension empty_pre{base.apex, {}};
  Extension empty_post{apply_extension(c).result, {}};
  CHECK(apply_extension(compose_extensions(empty_pre, c)).result ==
        apply_extension(c).result);
  CHECK(apply_extension(compose_extensions(c, empty_post)).result ==
        apply_extension(c).result);
}

TEST_CASE("reindex along identity is the identity") {
  const Context base = cospan_context();
  Extension ext{base.apex, {AddPullback{3, 4}, AddPrimitiveNode{}}};
  const auto r = reindex(ext, identity_hom(base.apex));
  CHECK(r.ext.steps == ext.steps);
  const auto a = apply_extension(ext);
  CHECK(hom_equal(r.eps, identity_hom(a.result)));
}

TEST_CASE("reindex translates primitive-edge data") {
  const Context two = make_context({AddPrimitiveNode{}, AddPrimitiveNode{}});
  // fold both nodes onto the object sketch
  SketchHom f;
  f.source = two.apex;
  f.target = object_sketch();
  f.n = {0, 0};
  f.e = {0, 0};
  REQUIRE(validate_hom(f).ok());
  Extension ext{two.apex, {AddPrimitiveEdge{0, 1}}};
  const auto r = reindex(ext, f);
  CHECK(r.ext.steps[0] == ExtensionStep{AddPrimitiveEdge{0, 0}});
  // the reindexing square commutes strictly: eps on the fresh edge is ordinal
  const auto left = apply_extension(ext);
  CHECK(r.eps.e[left.result.edge_count() - 1] ==
        apply_extension(r.ext).result.edge_count() - 1);
}

TEST_CASE("reindexing squares are pushouts (hom enumeration oracle)") {
  // base: two objects; extension: an edge between them and its commutativity
  const Context base2 = make_context({AddPrimitiveNode{}, AddPrimitiveNode{}});
  Extension ext{base2.apex, {AddPrimitiveEdge{0, 1}, AddTerminal{}}};
  // f: fold the two nodes into one
  SketchHom f;
  f.source = base2.apex;
  f.target = object_sketch();
  f.n = {0, 0};
  f.e = {0, 0};
  REQUIRE(validate_hom(f).ok());

  const auto rx = reindex(ext, f);
  const auto apexL = apply_extension(ext);      // T1'
  const auto apexR = apply_extension(rx.ext);   // T0'
  const auto inclL = apexL.inclusion;           // T1 -> T1'
  const auto inclR = apexR.inclusion;           // T0 -> T0'

  // the square commutes strictly
  CHECK(hom_equal(compose_hom(f, inclR), compose_hom(inclL, rx.eps)));

  // universal property: for every cocone (g1: T1' -> U, g0: T0 -> U) with
  // inclL;g1 = f;g0 there is exactly one fillin T0' -> U
  const Sketch u = make_context({AddPrimitiveNode{}, AddTerminal{},
                                 AddPrimitiveEdge{0, 1}}).apex;
  const auto homs1 = enumerate_homs(apexL.result, u);
  const auto homs0v = enumerate_homs(f.target, u);
  const auto fillins = enumerate_homs(apexR.result, u);
  int cocones = 0;
  for (const auto& g1 : homs1)
    for (const auto& g0 : homs0v) {
      if (!hom_equal(compose_hom(inclL, g1), compose_hom(f, g0))) continue;
      ++cocones;
      int count = 0;
      for (const auto& h : fillins)
        if (hom_equal(compose_hom(inclR, h), g0) &&
            hom_equal(compose_hom(rx.eps, h), g1))
          ++count;
      CHECK(count == 1);
    }
  CHECK(cocones > 0);
}

TEST_CASE("canonical expressions follow the tables") {
  const Context c = make_context({AddPrimitiveNode{}, AddTerminal{}, AddListObject{0}});
  const auto prov = compute_provenance(c.ext);
  // primitive node
  CHECK(expr_to_string(canonical_node_expr(prov, 0)) == "n0");
  // terminal subject
  CHECK(expr_to_string(canonical_node_expr(prov, 1)) == "1");
  // list subjects over A = node 0
  CHECK(expr_to_string(canonical_node_expr(prov, 3)) == "L(n0)");
  CHECK(expr_to_string(canonical_node_expr(prov, 4)) == "pb(bangL(n0),bang(n0))");
  const Idx eps = c.apex.ul_e[0], cons = c.apex.ul_cons[0];
  CHECK(expr_to_string(canonical_edge_expr(prov, eps)) == "eps(n0)");
  CHECK(expr_to_string(canonical_edge_expr(prov, cons)) == "cons(n0)");
  // identity of the terminal
  CHECK(expr_to_string(canonical_edge_expr(prov, c.apex.n_id[1])) == "id(1)");
}

TEST_CASE("canonical expressions are stable under reindexing") {
  const Context base2 = make_context({AddPrimitiveNode{}, AddPrimitiveNode{}});
  Extension ext{base2.apex, {AddPrimitiveEdge{0, 1}, AddPullback{2, 1}}};
  SketchHom f;
  f.source = base2.apex;
  f.target = object_sketch();
  f.n = {0, 0};
  f.e = {0, 0};
  const auto rx = reindex(ext, f);
  const auto pl = compute_provenance(ext);
  const auto pr = compute_provenance(rx.ext);
  for (Idx x = base2.apex.node_count(); x < pl.apex.node_count(); ++x) {
    auto left = translate_expr(canonical_node_expr(pl, x), rx.eps.n, rx.eps.e);
    auto right = canonical_node_expr(pr, rx.eps.n[x]);
    CHECK(expr_equal(left, right));
  }
  for (Idx u = base2.apex.edge_count(); u < pl.apex.edge_count(); ++u) {
    auto left = translate_expr(canonical_edge_expr(pl, u), rx.eps.n, rx.eps.e);
    auto right = canonical_edge_expr(pr, rx.eps.e[u]);
    CHECK(expr_equal(left, right));
  }
}
