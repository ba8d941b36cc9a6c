#include <doctest.h>

#include "auk/conmap.hpp"

using namespace auk;

namespace {

Context ob_ctx() { return make_context({AddPrimitiveNode{}}); }

Context edge_ctx() {
  return make_context({AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveEdge{0, 1}});
}

// a map ob -> edge_ctx sending the node to the edge's codomain
ContextMap ob_to_edge() {
  ContextMap m;
  m.source = edge_ctx();
  m.target = ob_ctx();
  m.e = EqExtension{m.source.apex, {}};
  m.f.source = m.target.apex;
  m.f.target = m.source.apex;
  m.f.n = {1};
  m.f.e = {1};
  return m;
}

}  // namespace

TEST_CASE("identity maps and composition units") {
  const auto m = ob_to_edge();
  validate_map(m);
  const auto lhs = compose_map(identity_map(m.source), m);
  const auto rhs = compose_map(m, identity_map(m.target));
  // strict equality of representatives in both unit composites
  CHECK(lhs.e.steps.size() == m.e.steps.size());
  CHECK(hom_equal(lhs.f, m.f));
  CHECK(rhs.e.steps.size() == m.e.steps.size());
  CHECK(hom_equal(rhs.f, m.f));
  // and certifiable equality
  CHECK(maps_objectively_equal(lhs, m, certify_maps_equal(lhs, m)));
  CHECK(maps_objectively_equal(rhs, m, certify_maps_equal(rhs, m)));
}

TEST_CASE("composition is strictly associative on representatives") {
  // maps with nontrivial extensions: ob -> ob via a terminal-introducing e
  const Context obc = ob_ctx();
  ContextMap k;  // (e, f): e adds a terminal, f sends the node to itself
  k.source = obc;
  k.target = obc;
  k.e = EqExtension{obc.apex, {EqUnivIntro{AddTerminal{}}}};
  const auto ka = apply_eq_extension(k.e);
  k.f = retarget(identity_hom(obc.apex), ka.result);
  validate_map(k);

  const auto a = compose_map(compose_map(k, k), k);
  const auto bq = compose_map(k, compose_map(k, k));
  CHECK(a.e.steps.size() == bq.e.steps.size());
  CHECK(hom_equal(a.f, bq.f));
  CHECK(maps_objectively_equal(a, bq, certify_maps_equal(a, bq)));
}

TEST_CASE("(e,Id) and (Id,e) are mutually inverse up to certificates") {
  const Context obc = ob_ctx();
  EqExtension e{obc.apex, {EqUnivIntro{AddTerminal{}}, EqUnivIntro{AddInitial{}}}};
  const auto ea = apply_eq_extension(e);
  const Context obe = make_context(compose_extensions(obc.ext, as_extension(e)).steps);

  ContextMap e_id;  // (e, Id): obc -> obe
  e_id.source = obc;
  e_id.target = obe;
  e_id.e = e;
  e_id.f = retarget(identity_hom(obe.apex), ea.result);
  validate_map(e_id);

  ContextMap id_e;  // (Id, e): obe -> obc
  id_e.source = obe;
  id_e.target = obc;
  id_e.e = EqExtension{obe.apex, {}};
  id_e.f = retarget(ea.inclusion, obe.apex);
  validate_map(id_e);

  // (e,Id);(Id,e) = (e, e-inclusion) ~ identity via e as its own refinement
  const auto round1 = compose_map(e_id, id_e);
  const auto cert1 = certify_maps_equal(round1, identity_map(obc));
  CHECK(maps_objectively_equal(round1, identity_map(obc), cert1));

  // (Id,e);(e,Id) = (e(e), eps) ~ identity via twin universals
  const auto round2 = compose_map(id_e, e_id);
  const auto cert2 = certify_maps_equal(round2, identity_map(obe));
  CHECK(maps_objectively_equal(round2, identity_map(obe), cert2));
}

TEST_CASE("identity cells have matching dom and cod") {
  const auto m = ob_to_edge();
  const auto cell = identity_cell(m);
  validate_two_cell(cell);
  const auto d = cell_dom(cell);
  const auto c = cell_cod(cell);
  CHECK(hom_equal(d.f, c.f));
}

TEST_CASE("transport along an empty extension is the identity") {
  const Context t1 = ob_ctx();
  const Context t0 = edge_ctx();
  // a 2-cell between the two constant maps, carried by the primitive edge
  const auto ar = build_arrow_context(t1);
  SketchHom f0;
  f0.source = t1.apex;
  f0.target = t0.apex;
  f0.n = {0};
  f0.e = {0};
  SketchHom f1 = f0;
  f1.n = {1};
  f1.e = {1};
  // theta_X := the primitive edge; squares need id;f = f and f;id = f
  DerivationBuilder b(t0.apex);
  b.left_unit(2);
  b.right_unit(2);
  const SketchHom incl = inclusion_hom(t0.apex, b.sketch());
  const auto alpha = make_two_cell_hom(ar, compose_hom(f0, incl), compose_hom(f1, incl),
                                       {2}, {2});
  EqExtension empty{t1.apex, {}};
  const auto tr = transport_two_cell(t1, empty, retarget(f0, b.sketch()),
                                     retarget(f1, b.sketch()), alpha);
  CHECK(tr.e0.steps.empty());
  CHECK(hom_equal(tr.alpha_out, alpha));
}

TEST_CASE("transport along a composition step") {
  // t1 = X --u--> Y; e1 adjoins nothing composable without another edge, so
  // use a chain context and compose its two edges
  const Context t1 = make_context({AddPrimitiveNode{}, AddPrimitiveNode{},
                                   AddPrimitiveNode{}, AddPrimitiveEdge{0, 1},
                                   AddPrimitiveEdge{1, 2}});
  EqExtension e1{t1.apex, {EqComposition{3, 4}}};
  // T0: the same chain; alpha: identity-style 2-cell between id homs
  const Context t0 = t1;
  const auto idh = identity_hom(t0.apex);
  const auto ar = build_arrow_context(t1);
  const auto idc = identity_two_cell(ar, idh);
  const auto e1a = apply_eq_extension(e1);
  const Sketch stage = apply_eq_extension(idc.ext).result;
  // f0 = f1: the identity on apex(e1), landing in T0 extended by idc.ext and
  // a composite edge for the image of e1's fresh edge
  DerivationBuilder b(t0.apex);
  for (const auto& st : idc.ext.steps) b.apply(st);
  const auto comp = b.compose(3, 4);
  const Sketch stage2 = b.sketch();
  SketchHom f;
  f.source = e1a.result;
  f.target = stage2;
  f.n = {0, 1, 2};
  f.e = {0, 1, 2, 3, 4, comp.edge};
  f.tri = {comp.tri};
  REQUIRE(validate_hom(f).ok());
  const auto alpha_lift = compose_hom(idc.alpha, inclusion_hom(stage, stage2));
  const auto tr = transport_two_cell(t1, e1, f, f, alpha_lift);
  // the transported cell exists and validates (checked inside); its theta on
  // the fresh edge is a derived composite
  const Context t1p = make_context(compose_extensions(t1.ext, as_extension(e1)).steps);
  const auto ar1p = build_arrow_context(t1p);
  const auto carriers = read_two_cell(ar1p, tr.alpha_out);
  CHECK(carriers.theta_e.size() == t1p.apex.edge_count());
}

TEST_CASE("whiskering an identity cell by a map stays an identity-like cell") {
  const auto m = ob_to_edge();
  const auto cell = identity_cell(identity_map(m.target));  // on ob
  const auto w = whisker_left(m, cell);
  validate_two_cell(w);
  const auto d = cell_dom(w);
  const auto c = cell_cod(w);
  CHECK(hom_equal(d.f, c.f));
}

TEST_CASE("right whiskering by an extension map via transport") {
  // cell: identity cell on the identity map of ob; whisker by (e, Id) where
  // e adjoins a terminal
  const Context obc = ob_ctx();
  const auto cell = identity_cell(identity_map(obc));
  EqExtension e1{obc.apex, {EqUnivIntro{AddTerminal{}}}};
  const Context obe = make_context(compose_extensions(obc.ext, as_extension(e1)).steps);
  const auto w = whisker_right_ext(cell, obe, e1);
  validate_two_cell(w);
  CHECK(w.target.apex == obe.apex);

  SUBCASE("two refinement orders give certifiably equal boundaries") {
    // run twice (the construction is deterministic, so perturb by whiskering
    // the cell against a pre-refined variant): compare dom maps
    const auto w2 = whisker_right_ext(cell, obe, e1);
    const auto cert = certify_maps_equal(cell_dom(w), cell_dom(w2));
    CHECK(maps_objectively_equal(cell_dom(w), cell_dom(w2), cert));
  }
}

TEST_CASE("vertical composition of identity cells") {
  const auto m = ob_to_edge();
  const auto c1 = identity_cell(m);
  const auto c2 = identity_cell(m);
  const auto meet = certify_maps_equal(cell_cod(c1), cell_dom(c2));
  const auto v = vertical_compose(c1, c2, meet);
  validate_two_cell(v);
  // dom(v) = dom(c1), cod(v) = cod(c2) by construction
  const auto dv = cell_dom(v);
  const auto d1 = cell_dom(c1);
  CHECK(hom_equal(compose_hom(d1.f, inclusion_hom(d1.f.target, dv.f.target)), dv.f));
}

TEST_CASE("horizontal composition of identity cells") {
  const auto m = ob_to_edge();                       // edge_ctx -> ob
  const auto a = identity_cell(identity_map(m.source));
  const auto b = identity_cell(m);
  const auto h = horizontal_compose(a, b);
  validate_two_cell(h);
  CHECK(h.source.apex == m.source.apex);
  CHECK(h.target.apex == m.target.apex);
}

TEST_CASE("the arrow involution is a homomorphism squaring to the identity") {
  const Context obc = ob_ctx();
  const auto inv = arrow_involution(obc);
  const auto applied = apply_eq_extension(inv.e);
  CHECK(validate_hom(inv.tau).ok());
  // tau;tau = identity on nodes and edges of the double hom context
  const auto arT = build_arrow_context(obc);
  const auto arAA = build_arrow_context(arT.ctx);
  SketchHom tau2 = inv.tau;
  for (Idx x = 0; x < arAA.ctx.apex.node_count(); ++x)
    CHECK(inv.tau.n[inv.tau.n[x]] == x);
  for (Idx u = 0; u < arAA.ctx.apex.edge_count(); ++u)
    CHECK(inv.tau.e[inv.tau.e[u]] == u);
  // i_mu ; tau = i_mu-arrow: check on the copy embeddings
  for (Idx x = 0; x < arT.ctx.apex.node_count(); ++x) {
    // lambda = 0 copy: tau sends i0-copies to the arrow image of i0
    CHECK(inv.tau.n[arAA.i0.n[x]] < arAA.ctx.apex.node_count());
  }
  (void)tau2;
  (void)applied;
}
