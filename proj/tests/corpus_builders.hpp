#pragma once

// Shared corpus: one checked instance per derivation rule, each with a set
// model for the soundness harness.  Used by the unit tests, the acceptance
// suite and the corpus generator.

#include <functional>

#include "auk/aupres.hpp"
#include "auk/setmodel.hpp"

namespace auk::testing {

struct RuleInstance {
  std::string name;
  Context ctx;
  PrimAssignment prim;
  EqExtension ext;
};

inline SetElem atom(const std::string& s) { return SetElem::make_atom(s); }

inline SetObjPtr two_set() { return fin_set({atom("a"), atom("b")}); }

inline SetMor swap_two() {
  std::map<SetElem, SetElem> t{{atom("a"), atom("b")}, {atom("b"), atom("a")}};
  return tabulate(two_set(), two_set(), t);
}

// X --u--> Y --v--> Z over two-element carriers with swap maps
inline RuleInstance composition_instance() {
  RuleInstance r;
  r.name = "composition";
  r.ctx = make_context({AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveNode{},
                        AddPrimitiveEdge{0, 1}, AddPrimitiveEdge{1, 2}});
  r.prim.nodes[0] = two_set();
  r.prim.nodes[1] = two_set();
  r.prim.nodes[2] = two_set();
  r.prim.edges[3] = swap_two();
  r.prim.edges[4] = swap_two();
  r.ext = EqExtension{r.ctx.apex, {EqComposition{3, 4}}};
  return r;
}

inline RuleInstance unit_instance(bool left) {
  RuleInstance r;
  r.name = left ? "left unit" : "right unit";
  r.ctx = make_context({AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveEdge{0, 1}});
  r.prim.nodes[0] = two_set();
  r.prim.nodes[1] = two_set();
  r.prim.edges[2] = swap_two();
  if (left)
    r.ext = EqExtension{r.ctx.apex, {EqLeftUnit{2}}};
  else
    r.ext = EqExtension{r.ctx.apex, {EqRightUnit{2}}};
  return r;
}

// chain with all composites present over singleton carriers
inline RuleInstance assoc_instance(bool left) {
  RuleInstance r;
  r.name = left ? "left associativity" : "right associativity";
  std::vector<ExtensionStep> st = {
      AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveNode{},
      AddPrimitiveEdge{0, 1},  // u=4
      AddPrimitiveEdge{1, 2},  // v=5
      AddPrimitiveEdge{2, 3},  // w=6
      AddPrimitiveEdge{0, 2},  // k=7
      AddPrimitiveEdge{1, 3},  // l=8
      AddPrimitiveEdge{0, 3},  // m=9
      AddCommutativity{4, 5, 7}, AddCommutativity{5, 6, 8}};
  if (left)
    st.push_back(AddCommutativity{4, 8, 9});  // (u,l,m)
  else
    st.push_back(AddCommutativity{7, 6, 9});  // (k,w,m)
  r.ctx = make_context(std::move(st));
  const auto one = fin_set({atom("s")});
  for (Idx x = 0; x < 4; ++x) r.prim.nodes[x] = one;
  for (Idx u = 4; u <= 9; ++u) r.prim.edges[u] = identity_mor(one);
  if (left)
    r.ext = EqExtension{r.ctx.apex, {EqLeftAssoc{4, 5, 6, 7, 8, 9}}};
  else
    r.ext = EqExtension{r.ctx.apex, {EqRightAssoc{4, 5, 6, 7, 8, 9}}};
  return r;
}

inline RuleInstance univ_instance(const char* which) {
  RuleInstance r;
  r.name = std::string("universal: ") + which;
  r.ctx = make_context({AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveEdge{0, 1},
                        AddPrimitiveEdge{0, 1}});
  r.prim.nodes[0] = two_set();
  r.prim.nodes[1] = two_set();
  r.prim.edges[2] = swap_two();
  r.prim.edges[3] = identity_mor(two_set());
  const std::string w = which;
  EqStep step;
  if (w == "terminal") step = EqUnivIntro{AddTerminal{}};
  if (w == "initial") step = EqUnivIntro{AddInitial{}};
  if (w == "pullback") step = EqUnivIntro{AddPullback{2, 3}};
  if (w == "pushout") step = EqUnivIntro{AddPushout{2, 3}};
  if (w == "list") step = EqUnivIntro{AddListObject{0}};
  r.ext = EqExtension{r.ctx.apex, {step}};
  return r;
}

// a cone over a pullback with two equal fillins
inline RuleInstance pb_fillin_instance(bool unique) {
  RuleInstance r;
  r.name = unique ? "pullback fillin uniqueness" : "pullback fillin";
  r.ctx = make_context({
      AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveNode{},
      AddPrimitiveEdge{0, 2},   // u=3
      AddPrimitiveEdge{1, 2},   // v=4
      AddPullback{3, 4},        // P=3, p1=5, p=6, p2=7, idP=8; tris 0,1
      AddPrimitiveNode{},       // W=4, id=9
      AddPrimitiveEdge{4, 0},   // a=10
      AddPrimitiveEdge{4, 1},   // b=11
      AddPrimitiveEdge{4, 2},   // d=12
      AddCommutativity{10, 3, 12},
      AddCommutativity{11, 4, 12},
  });
  const auto one = fin_set({atom("s")});
  for (Idx x : {0u, 1u, 2u, 4u}) r.prim.nodes[x] = one;
  for (Idx u : {3u, 4u, 10u, 11u, 12u}) r.prim.edges[u] = identity_mor(one);
  if (!unique) {
    r.ext = EqExtension{r.ctx.apex, {EqPullbackFillin{0, 2, 3}}};
  } else {
    r.ext = EqExtension{r.ctx.apex,
                        {EqPullbackFillin{0, 2, 3}, EqPullbackFillin{0, 2, 3},
                         EqPullbackFillinUnique{0, 10, 11, 13, 14}}};
  }
  return r;
}

inline RuleInstance po_fillin_instance(bool unique) {
  RuleInstance r;
  r.name = unique ? "pushout fillin uniqueness" : "pushout fillin";
  r.ctx = make_context({
      AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveNode{},
      AddPrimitiveEdge{0, 1},   // u=3
      AddPrimitiveEdge{0, 2},   // v=4
      AddPushout{3, 4},         // Q=3, j1=5, j=6, j2=7, idQ=8; tris 0,1
      AddPrimitiveNode{},       // W=4, id=9
      AddPrimitiveEdge{1, 4},   // a=10
      AddPrimitiveEdge{2, 4},   // b=11
      AddPrimitiveEdge{0, 4},   // d=12
      AddCommutativity{3, 10, 12},
      AddCommutativity{4, 11, 12},
  });
  const auto one = fin_set({atom("s")});
  for (Idx x : {0u, 1u, 2u, 4u}) r.prim.nodes[x] = one;
  for (Idx u : {3u, 4u, 10u, 11u, 12u}) r.prim.edges[u] = identity_mor(one);
  if (!unique) {
    r.ext = EqExtension{r.ctx.apex, {EqPushoutFillin{0, 2, 3}}};
  } else {
    r.ext = EqExtension{r.ctx.apex,
                        {EqPushoutFillin{0, 2, 3}, EqPushoutFillin{0, 2, 3},
                         EqPushoutFillinUnique{0, 10, 11, 13, 14}}};
  }
  return r;
}

inline RuleInstance term_fillin_instance(bool unique) {
  RuleInstance r;
  r.name = unique ? "terminal fillin uniqueness" : "terminal fillin";
  r.ctx = make_context({AddTerminal{}, AddPrimitiveNode{}});
  r.prim.nodes[1] = two_set();
  if (!unique)
    r.ext = EqExtension{r.ctx.apex, {EqTerminalFillin{0, 1}}};
  else
    r.ext = EqExtension{r.ctx.apex, {EqTerminalFillin{0, 1}, EqTerminalFillin{0, 1},
                                     EqTerminalFillinUnique{0, 2, 3}}};
  return r;
}

inline RuleInstance init_fillin_instance(bool unique) {
  RuleInstance r;
  r.name = unique ? "initial fillin uniqueness" : "initial fillin";
  r.ctx = make_context({AddInitial{}, AddPrimitiveNode{}});
  r.prim.nodes[1] = two_set();
  if (!unique)
    r.ext = EqExtension{r.ctx.apex, {EqInitialFillin{0, 1}}};
  else
    r.ext = EqExtension{r.ctx.apex, {EqInitialFillin{0, 1}, EqInitialFillin{0, 1},
                                     EqInitialFillinUnique{0, 2, 3}}};
  return r;
}

// the natural-number addition recursor over the empty context
inline RuleInstance list_fillin_instance(bool unique) {
  RuleInstance r;
  r.name = unique ? "list fillin uniqueness" : "list fillin";
  r.ctx = make_context({});
  AuBuilder au(r.ctx);
  const Idx one = au.terminal();
  const Idx utA = au.last_terminal();
  const auto nat = au.list(one);
  const Idx bang0 = au.terminal_fillin(utA, nat.L);
  const Idx pairR = au.product_fillin(nat.upb, au.sketch().n_id[nat.L], bang0);
  const Idx succ = au.compose(pairR, nat.cons);
  const auto ay = au.pullback(nat.bangA, nat.bangL);
  const Idx g = au.compose(ay.p2, succ);
  const auto rec = au.list_recursor(nat.ul, au.sketch().n_id[nat.L], g, ay.upb);
  if (unique) {
    // a second solution for the same configuration, then the uniqueness rule
    auto& b = au.derivation();
    const auto d2 = b.apply(EqListFillin{rec.cfg});
    ListFillinSolution s1{rec.r, rec.r + 1, rec.r + 2, rec.r + 3, rec.r + 4};
    ListFillinSolution s2{d2.edges[0], d2.edges[1], d2.edges[2], d2.edges[3],
                          d2.edges[4]};
    b.apply(EqListFillinUnique{rec.cfg, s1, s2});
  }
  r.ext = au.extension();
  return r;
}

inline RuleInstance balance_instance() {
  RuleInstance r;
  r.name = "balance";
  r.ctx = make_context({
      AddPrimitiveNode{}, AddPrimitiveNode{},
      AddPrimitiveEdge{0, 1},      // u=2
      AddPullback{2, 2},           // P=2, p1=3, p=4, p2=5, idP=6; tris 0,1
      AddPushout{2, 2},            // Q=3, j1=7, j=8, j2=9, idQ=10; tris 2,3
      AddCommutativity{6, 3, 5},   // p1 <| p2
      AddCommutativity{1, 7, 9},   // j1 <| j2
  });
  r.prim.nodes[0] = two_set();
  r.prim.nodes[1] = two_set();
  r.prim.edges[2] = swap_two();
  r.ext = EqExtension{r.ctx.apex, {EqBalance{2, 0, 0, 4, 5}}};
  return r;
}

inline RuleInstance init_stability_instance() {
  RuleInstance r;
  r.name = "initial stability";
  r.ctx = make_context({AddInitial{}, AddPrimitiveNode{}, AddPrimitiveEdge{1, 0}});
  r.prim.nodes[1] = fin_set({});
  r.prim.edges[2] = tabulate(fin_set({}), fin_set({}), {});
  r.ext = EqExtension{r.ctx.apex, {EqInitStability{0, 2}}};
  return r;
}

// pullback of a pushout along the identity; the configuration is assembled
// entirely by fillin rules
inline RuleInstance po_stability_instance() {
  RuleInstance r;
  r.name = "pushout stability";
  r.ctx = make_context({AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveNode{},
                        AddPrimitiveEdge{0, 1}, AddPrimitiveEdge{0, 2}});
  r.prim.nodes[0] = fin_set({atom("x")});
  r.prim.nodes[1] = fin_set({atom("p")});
  r.prim.nodes[2] = fin_set({atom("q")});
  std::map<SetElem, SetElem> c1{{atom("x"), atom("p")}};
  std::map<SetElem, SetElem> c2{{atom("x"), atom("q")}};
  r.prim.edges[3] = tabulate(r.prim.nodes[0], r.prim.nodes[1], c1);
  r.prim.edges[4] = tabulate(r.prim.nodes[0], r.prim.nodes[2], c2);

  AuBuilder au(r.ctx);
  auto& b = au.derivation();
  const auto base = au.pushout(3, 4);  // Q, j1, j, j2
  const Idx idQ = au.sketch().n_id[base.node];
  const auto pbv = au.pullback(idQ, base.j);    // Pb(w, j)
  const auto pb1 = au.pullback(idQ, base.j1);   // Pb(w, j1)
  const auto pb2 = au.pullback(idQ, base.j2);   // Pb(w, j2)
  PushoutStabilityConfig cfg;
  cfg.w = idQ;
  cfg.po_base = base.upo;
  cfg.pb_v = pbv.upb;
  cfg.pb_v1 = pb1.upb;
  cfg.pb_v2 = pb2.upb;
  // named composites c_i = pi2_v ; u_i and derived cocones
  const auto cc1 = b.compose(pbv.p2, 3);
  const auto cc2 = b.compose(pbv.p2, 4);
  cfg.c1 = cc1.edge;
  cfg.c2 = cc2.edge;
  // (c_i, j_i, pv) over pi2_v ; u_i ; j_i
  const Idx pv = b.sketch().tri_c[b.sketch().upb_tri1[pbv.upb]];
  const Idx t1 = b.left_assoc(pbv.p2, 3, base.j1, cc1.edge, base.j, pv);
  const Idx t2 = b.left_assoc(pbv.p2, 4, base.j2, cc2.edge, base.j, pv);
  // fillins u'_i into Pb(w, j_i)
  const Idx tri1_pbv = b.sketch().upb_tri1[pbv.upb];
  cfg.u1p = au.pullback_fillin(pb1.upb, tri1_pbv, t1);
  cfg.u2p = au.pullback_fillin(pb2.upb, tri1_pbv, t2);
  // the inner pushout and the comparison fillin e
  const auto inner = au.pushout(cfg.u1p, cfg.u2p);
  cfg.po_inner = inner.upo;
  const Idx cone1 = b.sketch().find_triangle(cfg.u1p, pb1.p1, pbv.p1).value();
  const Idx cone2 = b.sketch().find_triangle(cfg.u2p, pb2.p1, pbv.p1).value();
  cfg.e = b.apply(EqPushoutFillin{inner.upo, cone1, cone2}).edges[0];
  b.apply(EqPushoutStability{cfg});
  r.ext = au.extension();
  return r;
}

// the diagonal relation on a two-element set with the canonical coequalizer
inline RuleInstance exactness_instance() {
  RuleInstance r;
  r.name = "exactness";
  r.ctx = make_context({
      AddPrimitiveNode{},            // X0=0, id0=0
      AddPrimitiveNode{},            // X1=1, id1=1
      AddPrimitiveEdge{1, 0},        // pi1=2
      AddPrimitiveEdge{1, 0},        // pi2=3
      AddPrimitiveEdge{0, 1},        // refl=4
      AddPrimitiveEdge{1, 1},        // sym=5
      AddCommutativity{4, 2, 0},     // tris 0..3
      AddCommutativity{4, 3, 0},
      AddCommutativity{5, 2, 3},
      AddCommutativity{5, 3, 2},
      AddTerminal{},                 // T=2, idT=6; ut0
      AddPrimitiveEdge{0, 2},        // bang_x0=7
      AddPullback{7, 7},             // prod=3, pr1=8, pd=9, pr2=10, id=11; tris 4,5
      AddPrimitiveEdge{1, 3},        // pi=12
      AddCommutativity{12, 8, 2},    // tri 6
      AddCommutativity{12, 10, 3},   // tri 7
      AddPullback{12, 12},           // mono=4, rho1=13, rd=14, rho2=15, id=16; tris 8,9
      AddCommutativity{16, 13, 15},  // tri 10
      AddPullback{3, 2},             // X2=5, q1=17, qd=18, q2=19, id=20; tris 11,12
      AddPrimitiveEdge{5, 1},        // trans=21
      AddPrimitiveEdge{5, 0},        // ct1=22
      AddPrimitiveEdge{5, 0},        // ct2=23
      AddCommutativity{17, 2, 22},   // tri 13
      AddCommutativity{21, 2, 22},   // tri 14
      AddCommutativity{19, 3, 23},   // tri 15
      AddCommutativity{21, 3, 23},   // tri 16
      AddInitial{},                  // Z=6, idZ=24; ui0
      AddPrimitiveEdge{6, 1},        // bang0_x1=25
      AddPrimitiveEdge{6, 0},        // bang0_x0=26
      AddPushout{25, 26},            // S=7, k1=27, kd=28, k2=29, id=30; tris 17,18
      AddPrimitiveEdge{7, 0},        // f1=31
      AddPrimitiveEdge{7, 0},        // f2=32
      AddCommutativity{27, 31, 2},   // tri 19
      AddCommutativity{29, 31, 0},   // tri 20
      AddCommutativity{27, 32, 3},   // tri 21
      AddCommutativity{29, 32, 0},   // tri 22
      AddPushout{31, 32},            // X=8, g1=33, gd=34, g2=35, id=36; tris 23,24
      AddPullback{33, 33},           // K=9, kap1=37, kapd=38, kap2=39, id=40; tris 25,26
      AddPrimitiveEdge{1, 9},        // e=41
      AddCommutativity{41, 37, 2},   // tri 27
      AddCommutativity{41, 39, 3},   // tri 28
  });
  const SetElem z = atom("z"), o = atom("o");
  const SetElem dz = atom("dz"), du = atom("du");
  const auto X0 = fin_set({z, o});
  const auto X1 = fin_set({dz, du});
  r.prim.nodes[0] = X0;
  r.prim.nodes[1] = X1;
  auto tab = [&](SetObjPtr dom, SetObjPtr cod, std::map<SetElem, SetElem> t) {
    return tabulate(std::move(dom), std::move(cod), std::move(t));
  };
  r.prim.edges[2] = tab(X1, X0, {{dz, z}, {du, o}});
  r.prim.edges[3] = tab(X1, X0, {{dz, z}, {du, o}});
  r.prim.edges[4] = tab(X0, X1, {{z, dz}, {o, du}});
  r.prim.edges[5] = tab(X1, X1, {{dz, dz}, {du, du}});
  const auto T = terminal_carrier();
  r.prim.edges[7] = const_unit(X0, T);
  // prod carrier: all pairs of X0
  const auto prod = fin_set({SetElem::pair(z, z), SetElem::pair(z, o),
                             SetElem::pair(o, z), SetElem::pair(o, o)});
  r.prim.edges[12] = tab(X1, prod, {{dz, SetElem::pair(z, z)}, {du, SetElem::pair(o, o)}});
  // X2 carrier: pairs of related pairs
  const auto X2 = fin_set({SetElem::pair(dz, dz), SetElem::pair(du, du)});
  r.prim.edges[21] = tab(X2, X1, {{SetElem::pair(dz, dz), dz}, {SetElem::pair(du, du), du}});
  r.prim.edges[22] = tab(X2, X0, {{SetElem::pair(dz, dz), z}, {SetElem::pair(du, du), o}});
  r.prim.edges[23] = tab(X2, X0, {{SetElem::pair(dz, dz), z}, {SetElem::pair(du, du), o}});
  const auto Z = fin_set({});
  r.prim.edges[25] = tab(Z, X1, {});
  r.prim.edges[26] = tab(Z, X0, {});
  // S carrier: the disjoint union, no gluing
  const auto S = fin_set({SetElem::tagged(0, dz), SetElem::tagged(0, du),
                          SetElem::tagged(1, z), SetElem::tagged(1, o)});
  r.prim.edges[31] = tab(S, X0,
                         {{SetElem::tagged(0, dz), z},
                          {SetElem::tagged(0, du), o},
                          {SetElem::tagged(1, z), z},
                          {SetElem::tagged(1, o), o}});
  r.prim.edges[32] = r.prim.edges[31];
  // K carrier: the kernel pair of the canonical coequalizer (gamma injective)
  const auto K = fin_set({SetElem::pair(z, z), SetElem::pair(o, o)});
  r.prim.edges[41] = tab(X1, K, {{dz, SetElem::pair(z, z)}, {du, SetElem::pair(o, o)}});

  ExactnessConfig cfg;
  cfg.pi1 = 2;
  cfg.pi2 = 3;
  cfg.ut = 0;
  cfg.bang_x0 = 7;
  cfg.pb_prod = 0;
  cfg.pi = 12;
  cfg.pb_mono = 1;
  cfg.mono_comm = 10;
  cfg.refl = 4;
  cfg.sym = 5;
  cfg.pb_x2 = 2;
  cfg.trans = 21;
  cfg.ct1 = 22;
  cfg.ct2 = 23;
  cfg.ui = 0;
  cfg.bang0_x1 = 25;
  cfg.bang0_x0 = 26;
  cfg.po_sum = 0;
  cfg.f1 = 31;
  cfg.f2 = 32;
  cfg.po_coeq = 1;
  cfg.pb_K = 3;
  cfg.e = 41;
  r.ext = EqExtension{r.ctx.apex, {EqExactness{cfg}}};
  return r;
}

inline std::vector<RuleInstance> all_rule_instances() {
  std::vector<RuleInstance> out;
  out.push_back(composition_instance());
  out.push_back(unit_instance(true));
  out.push_back(unit_instance(false));
  out.push_back(assoc_instance(true));
  out.push_back(assoc_instance(false));
  for (const char* w : {"terminal", "initial", "pullback", "pushout", "list"})
    out.push_back(univ_instance(w));
  out.push_back(pb_fillin_instance(false));
  out.push_back(pb_fillin_instance(true));
  out.push_back(po_fillin_instance(false));
  out.push_back(po_fillin_instance(true));
  out.push_back(term_fillin_instance(false));
  out.push_back(term_fillin_instance(true));
  out.push_back(init_fillin_instance(false));
  out.push_back(init_fillin_instance(true));
  out.push_back(list_fillin_instance(false));
  out.push_back(list_fillin_instance(true));
  out.push_back(balance_instance());
  out.push_back(init_stability_instance());
  out.push_back(po_stability_instance());
  out.push_back(exactness_instance());
  return out;
}

}  // namespace auk::testing
