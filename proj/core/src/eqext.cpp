#include "auk/eqext.hpp"

#include <sstream>

namespace auk {

namespace {

[[noreturn]] void fail(const char* rule, const std::string& what) {
  throw KernelError(std::string(rule) + ": " + what);
}

void need(bool cond, const char* rule, const char* what) {
  if (!cond) fail(rule, what);
}

void need_edge(const Sketch& s, Idx u, const char* rule) {
  if (u >= s.edge_count()) fail(rule, "edge reference out of range");
}

void need_node(const Sketch& s, Idx x, const char* rule) {
  if (x >= s.node_count()) fail(rule, "node reference out of range");
}

void need_tri(const Sketch& s, Idx t, const char* rule) {
  if (t >= s.tri_count()) fail(rule, "commutativity reference out of range");
}

// looked-up commutativity: the configuration must literally contain it
void need_comm(const Sketch& s, Idx l, Idx r, Idx c, const char* rule, const char* what) {
  if (!s.has_triangle(l, r, c)) {
    std::ostringstream os;
    os << "missing commutativity " << what << " (edges " << l << ";" << r << " = " << c << ")";
    fail(rule, os.str());
  }
}

struct PbShape {
  Idx t1, t2, p1, p2, u1, u2, p, P;
};

PbShape pb_shape(const Sketch& s, Idx w, const char* rule) {
  if (w >= s.upb_count()) fail(rule, "pullback universal out of range");
  PbShape sh;
  sh.t1 = s.upb_tri1[w];
  sh.t2 = s.upb_tri2[w];
  sh.p1 = s.tri_l[sh.t1];
  sh.p2 = s.tri_l[sh.t2];
  sh.u1 = s.tri_r[sh.t1];
  sh.u2 = s.tri_r[sh.t2];
  sh.p = s.tri_c[sh.t1];
  sh.P = s.e_dom[sh.p1];
  return sh;
}

struct PoShape {
  Idx t1, t2, j1, j2, u1, u2, j, Q;
};

PoShape po_shape(const Sketch& s, Idx w, const char* rule) {
  if (w >= s.upo_count()) fail(rule, "pushout universal out of range");
  PoShape sh;
  sh.t1 = s.upo_tri1[w];
  sh.t2 = s.upo_tri2[w];
  sh.u1 = s.tri_l[sh.t1];
  sh.u2 = s.tri_l[sh.t2];
  sh.j1 = s.tri_r[sh.t1];
  sh.j2 = s.tri_r[sh.t2];
  sh.j = s.tri_c[sh.t1];
  sh.Q = s.e_cod[sh.j1];
  return sh;
}

struct ListShape {
  Idx T, L, P, A;
  Idx eps, cons, pP1, pP2;  // pP1: P->L, pP2: P->A
  PbShape pb;
};

ListShape list_shape(const Sketch& s, Idx w, const char* rule) {
  if (w >= s.ul_count()) fail(rule, "list universal out of range");
  ListShape sh;
  sh.pb = pb_shape(s, s.ul_pb[w], rule);
  sh.T = s.ut_n[s.ul_t[w]];
  sh.eps = s.ul_e[w];
  sh.cons = s.ul_cons[w];
  sh.pP1 = sh.pb.p1;
  sh.pP2 = sh.pb.p2;
  sh.L = s.e_cod[sh.pP1];
  sh.A = s.e_cod[sh.pP2];
  sh.P = sh.pb.P;
  return sh;
}

void check_list_config(const Sketch& s, const ListFillinConfig& c, const char* rule) {
  const ListShape ls = list_shape(s, c.ul, rule);
  const PbShape lb = pb_shape(s, c.pb_LB, rule);
  const PbShape pb = pb_shape(s, c.pb_PB, rule);
  const PbShape alb = pb_shape(s, c.pb_ALB, rule);
  const PbShape ay = pb_shape(s, c.pb_AY, rule);

  need(s.e_dom[lb.u1] == ls.L, rule, "pb_LB: first leg must start at L");
  const Idx B = s.e_dom[lb.u2];
  need(s.e_dom[pb.u1] == ls.P, rule, "pb_PB: first leg must start at P");
  need(s.e_dom[pb.u2] == B, rule, "pb_PB: second leg must start at B");
  need(s.e_dom[alb.u1] == ls.A, rule, "pb_ALB: first leg must start at A");
  need(s.e_dom[alb.u2] == lb.P, rule, "pb_ALB: second leg must start at LB");
  need(s.e_dom[ay.u1] == ls.A, rule, "pb_AY: first leg must start at A");
  const Idx Y = s.e_dom[ay.u2];

  need_edge(s, c.y, rule);
  need(s.e_dom[c.y] == B && s.e_cod[c.y] == Y, rule, "y must be an edge B -> Y");
  need_edge(s, c.g, rule);
  need(s.e_dom[c.g] == ay.P && s.e_cod[c.g] == Y, rule, "g must be an edge AxY -> Y");

  need_edge(s, c.bangBT, rule);
  need(s.e_dom[c.bangBT] == B && s.e_cod[c.bangBT] == ls.T, rule,
       "bangBT must be an edge B -> T");
  need_edge(s, c.c_eps, rule);
  need(s.e_dom[c.c_eps] == B && s.e_cod[c.c_eps] == ls.L, rule,
       "c_eps must be an edge B -> L");
  need_comm(s, c.bangBT, ls.eps, c.c_eps, rule, "(bangBT, eps, c_eps)");

  need_edge(s, c.eb, rule);
  need(s.e_dom[c.eb] == B && s.e_cod[c.eb] == lb.P, rule, "eb must be an edge B -> LxB");
  need_comm(s, c.eb, lb.p1, c.c_eps, rule, "(eb, q1_LB, c_eps)");
  need_comm(s, c.eb, lb.p2, s.n_id[B], rule, "(eb, q2_LB, id(B))");

  need_edge(s, c.cPL, rule);
  need(s.e_dom[c.cPL] == pb.P && s.e_cod[c.cPL] == ls.L, rule,
       "cPL must be an edge PxB -> L");
  need_comm(s, pb.p1, ls.cons, c.cPL, rule, "(q1_PB, cons, cPL)");
  need_edge(s, c.consB, rule);
  need(s.e_dom[c.consB] == pb.P && s.e_cod[c.consB] == lb.P, rule,
       "consB must be an edge PxB -> LxB");
  need_comm(s, c.consB, lb.p1, c.cPL, rule, "(consB, q1_LB, cPL)");
  need_comm(s, c.consB, lb.p2, pb.p2, rule, "(consB, q2_LB, q2_PB)");

  need_edge(s, c.cA, rule);
  need(s.e_dom[c.cA] == pb.P && s.e_cod[c.cA] == ls.A, rule, "cA must be an edge PxB -> A");
  need_comm(s, pb.p1, ls.pP2, c.cA, rule, "(q1_PB, pP2, cA)");
  need_edge(s, c.cL, rule);
  need(s.e_dom[c.cL] == pb.P && s.e_cod[c.cL] == ls.L, rule, "cL must be an edge PxB -> L");
  need_comm(s, pb.p1, ls.pP1, c.cL, rule, "(q1_PB, pP1, cL)");
  need_edge(s, c.cLB, rule);
  need(s.e_dom[c.cLB] == pb.P && s.e_cod[c.cLB] == lb.P, rule,
       "cLB must be an edge PxB -> LxB");
  need_comm(s, c.cLB, lb.p1, c.cL, rule, "(cLB, q1_LB, cL)");
  need_comm(s, c.cLB, lb.p2, pb.p2, rule, "(cLB, q2_LB, q2_PB)");
  need_edge(s, c.assoc, rule);
  need(s.e_dom[c.assoc] == pb.P && s.e_cod[c.assoc] == alb.P, rule,
       "assoc must be an edge PxB -> Ax(LxB)");
  need_comm(s, c.assoc, alb.p1, c.cA, rule, "(assoc, q1_ALB, cA)");
  need_comm(s, c.assoc, alb.p2, c.cLB, rule, "(assoc, q2_ALB, cLB)");
}

void check_list_solution(const Sketch& s, const ListFillinConfig& c,
                         const ListFillinSolution& sol, const char* rule) {
  const PbShape lb = pb_shape(s, c.pb_LB, rule);
  const PbShape pb = pb_shape(s, c.pb_PB, rule);
  const PbShape alb = pb_shape(s, c.pb_ALB, rule);
  const PbShape ay = pb_shape(s, c.pb_AY, rule);
  const Idx Y = s.e_dom[ay.u2];
  need_edge(s, sol.r, rule);
  need(s.e_dom[sol.r] == lb.P && s.e_cod[sol.r] == Y, rule, "r must be an edge LxB -> Y");
  need_edge(s, sol.rp, rule);
  need(s.e_dom[sol.rp] == alb.P && s.e_cod[sol.rp] == ay.P, rule,
       "r' must be an edge Ax(LxB) -> AxY");
  need_edge(s, sol.rpp, rule);
  need(s.e_dom[sol.rpp] == alb.P && s.e_cod[sol.rpp] == Y, rule,
       "r'' must be an edge Ax(LxB) -> Y");
  need_edge(s, sol.gp, rule);
  need(s.e_dom[sol.gp] == alb.P && s.e_cod[sol.gp] == Y, rule,
       "g' must be an edge Ax(LxB) -> Y");
  need_edge(s, sol.gpp, rule);
  need(s.e_dom[sol.gpp] == pb.P && s.e_cod[sol.gpp] == Y, rule,
       "g'' must be an edge PxB -> Y");
  need_comm(s, c.eb, sol.r, c.y, rule, "(eb, r, y)");
  need_comm(s, c.consB, sol.r, sol.gpp, rule, "(consB, r, g'')");
  need_comm(s, c.assoc, sol.gp, sol.gpp, rule, "(assoc, g', g'')");
  need_comm(s, sol.rp, c.g, sol.gp, rule, "(r', g, g')");
  need_comm(s, alb.p2, sol.r, sol.rpp, rule, "(q2_ALB, r, r'')");
  need_comm(s, sol.rp, ay.p2, sol.rpp, rule, "(r', q2_AY, r'')");
  need_comm(s, sol.rp, ay.p1, alb.p1, rule, "(r', q1_AY, q1_ALB)");
}

void check_po_stab_config(const Sketch& s, const PushoutStabilityConfig& c,
                          const char* rule) {
  const PoShape base = po_shape(s, c.po_base, rule);
  need_edge(s, c.w, rule);
  need(s.e_cod[c.w] == base.Q, rule, "w must end at the base pushout object");
  const PbShape pv = pb_shape(s, c.pb_v, rule);
  need(pv.u1 == c.w && pv.u2 == base.j, rule, "pb_v must be the pullback of (w, j)");
  const PbShape p1 = pb_shape(s, c.pb_v1, rule);
  need(p1.u1 == c.w && p1.u2 == base.j1, rule, "pb_v1 must be the pullback of (w, j1)");
  const PbShape p2 = pb_shape(s, c.pb_v2, rule);
  need(p2.u1 == c.w && p2.u2 == base.j2, rule, "pb_v2 must be the pullback of (w, j2)");

  need_edge(s, c.c1, rule);
  need(s.e_dom[c.c1] == pv.P && s.e_cod[c.c1] == s.e_cod[base.u1], rule,
       "c1 must be an edge Pb(w,j) -> Y1");
  need_comm(s, pv.p2, base.u1, c.c1, rule, "(pi2_v, u1, c1)");
  need_edge(s, c.c2, rule);
  need(s.e_dom[c.c2] == pv.P && s.e_cod[c.c2] == s.e_cod[base.u2], rule,
       "c2 must be an edge Pb(w,j) -> Y2");
  need_comm(s, pv.p2, base.u2, c.c2, rule, "(pi2_v, u2, c2)");

  need_edge(s, c.u1p, rule);
  need(s.e_dom[c.u1p] == pv.P && s.e_cod[c.u1p] == p1.P, rule,
       "u1' must be an edge Pb(w,j) -> Pb(w,j1)");
  need_comm(s, c.u1p, p1.p1, pv.p1, rule, "(u1', pi1_1, pi1_v)");
  need_comm(s, c.u1p, p1.p2, c.c1, rule, "(u1', pi2_1, c1)");
  need_edge(s, c.u2p, rule);
  need(s.e_dom[c.u2p] == pv.P && s.e_cod[c.u2p] == p2.P, rule,
       "u2' must be an edge Pb(w,j) -> Pb(w,j2)");
  need_comm(s, c.u2p, p2.p1, pv.p1, rule, "(u2', pi1_2, pi1_v)");
  need_comm(s, c.u2p, p2.p2, c.c2, rule, "(u2', pi2_2, c2)");

  const PoShape inner = po_shape(s, c.po_inner, rule);
  need(inner.u1 == c.u1p && inner.u2 == c.u2p, rule,
       "po_inner must be the pushout of (u1', u2')");
  need_edge(s, c.e, rule);
  need(s.e_dom[c.e] == inner.Q && s.e_cod[c.e] == s.e_dom[c.w], rule,
       "e must be an edge Po(u1',u2') -> W");
  need_comm(s, inner.j1, c.e, p1.p1, rule, "(v1'', e, pi1_1)");
  need_comm(s, inner.j2, c.e, p2.p1, rule, "(v2'', e, pi1_2)");
}

void check_exactness_config(const Sketch& s, const ExactnessConfig& c, const char* rule) {
  need_edge(s, c.pi1, rule);
  need_edge(s, c.pi2, rule);
  const Idx X1 = s.e_dom[c.pi1];
  const Idx X0 = s.e_cod[c.pi1];
  need(s.e_dom[c.pi2] == X1 && s.e_cod[c.pi2] == X0, rule,
       "pi1, pi2 must be parallel edges X1 -> X0");

  need(c.ut < s.ut_count(), rule, "terminal universal out of range");
  const Idx T = s.ut_n[c.ut];
  need_edge(s, c.bang_x0, rule);
  need(s.e_dom[c.bang_x0] == X0 && s.e_cod[c.bang_x0] == T, rule,
       "bang_x0 must be an edge X0 -> T");
  const PbShape prod = pb_shape(s, c.pb_prod, rule);
  need(prod.u1 == c.bang_x0 && prod.u2 == c.bang_x0, rule,
       "pb_prod must be the pullback of (bang_x0, bang_x0)");

  need_edge(s, c.pi, rule);
  need(s.e_dom[c.pi] == X1 && s.e_cod[c.pi] == prod.P, rule,
       "pi must be an edge X1 -> X0xX0");
  need_comm(s, c.pi, prod.p1, c.pi1, rule, "(pi, pr1, pi1)");
  need_comm(s, c.pi, prod.p2, c.pi2, rule, "(pi, pr2, pi2)");

  const PbShape mono = pb_shape(s, c.pb_mono, rule);
  need(mono.u1 == c.pi && mono.u2 == c.pi, rule, "pb_mono must be the pullback of (pi, pi)");
  need_tri(s, c.mono_comm, rule);
  need(s.tri_l[c.mono_comm] == s.n_id[mono.P] && s.tri_r[c.mono_comm] == mono.p1 &&
           s.tri_c[c.mono_comm] == mono.p2,
       rule, "mono_comm must be the unary commutativity rho1 <| rho2");

  need_edge(s, c.refl, rule);
  need(s.e_dom[c.refl] == X0 && s.e_cod[c.refl] == X1, rule, "refl must be an edge X0 -> X1");
  need_comm(s, c.refl, c.pi1, s.n_id[X0], rule, "(refl, pi1, id(X0))");
  need_comm(s, c.refl, c.pi2, s.n_id[X0], rule, "(refl, pi2, id(X0))");

  need_edge(s, c.sym, rule);
  need(s.e_dom[c.sym] == X1 && s.e_cod[c.sym] == X1, rule, "sym must be an edge X1 -> X1");
  need_comm(s, c.sym, c.pi1, c.pi2, rule, "(sym, pi1, pi2)");
  need_comm(s, c.sym, c.pi2, c.pi1, rule, "(sym, pi2, pi1)");

  const PbShape x2 = pb_shape(s, c.pb_x2, rule);
  need(x2.u1 == c.pi2 && x2.u2 == c.pi1, rule, "pb_x2 must be the pullback of (pi2, pi1)");
  need_edge(s, c.trans, rule);
  need(s.e_dom[c.trans] == x2.P && s.e_cod[c.trans] == X1, rule,
       "trans must be an edge X2 -> X1");
  need_edge(s, c.ct1, rule);
  need_edge(s, c.ct2, rule);
  need_comm(s, x2.p1, c.pi1, c.ct1, rule, "(q1, pi1, ct1)");
  need_comm(s, c.trans, c.pi1, c.ct1, rule, "(trans, pi1, ct1)");
  need_comm(s, x2.p2, c.pi2, c.ct2, rule, "(q2, pi2, ct2)");
  need_comm(s, c.trans, c.pi2, c.ct2, rule, "(trans, pi2, ct2)");

  need(c.ui < s.ui_count(), rule, "initial universal out of range");
  const Idx Z = s.ui_n[c.ui];
  need_edge(s, c.bang0_x1, rule);
  need(s.e_dom[c.bang0_x1] == Z && s.e_cod[c.bang0_x1] == X1, rule,
       "bang0_x1 must be an edge 0 -> X1");
  need_edge(s, c.bang0_x0, rule);
  need(s.e_dom[c.bang0_x0] == Z && s.e_cod[c.bang0_x0] == X0, rule,
       "bang0_x0 must be an edge 0 -> X0");
  const PoShape sum = po_shape(s, c.po_sum, rule);
  need(sum.u1 == c.bang0_x1 && sum.u2 == c.bang0_x0, rule,
       "po_sum must be the pushout of (bang0_x1, bang0_x0)");

  need_edge(s, c.f1, rule);
  need_edge(s, c.f2, rule);
  need(s.e_dom[c.f1] == sum.Q && s.e_cod[c.f1] == X0, rule, "f1 must be an edge S -> X0");
  need(s.e_dom[c.f2] == sum.Q && s.e_cod[c.f2] == X0, rule, "f2 must be an edge S -> X0");
  need_comm(s, sum.j1, c.f1, c.pi1, rule, "(k1, f1, pi1)");
  need_comm(s, sum.j2, c.f1, s.n_id[X0], rule, "(k2, f1, id(X0))");
  need_comm(s, sum.j1, c.f2, c.pi2, rule, "(k1, f2, pi2)");
  need_comm(s, sum.j2, c.f2, s.n_id[X0], rule, "(k2, f2, id(X0))");

  const PoShape coeq = po_shape(s, c.po_coeq, rule);
  need(coeq.u1 == c.f1 && coeq.u2 == c.f2, rule, "po_coeq must be the pushout of (f1, f2)");
  const Idx gamma = coeq.j1;

  const PbShape K = pb_shape(s, c.pb_K, rule);
  need(K.u1 == gamma && K.u2 == gamma, rule, "pb_K must be the pullback of (gamma, gamma)");
  need_edge(s, c.e, rule);
  need(s.e_dom[c.e] == X1 && s.e_cod[c.e] == K.P, rule, "e must be an edge X1 -> K");
  need_comm(s, c.e, K.p1, c.pi1, rule, "(e, kappa1, pi1)");
  need_comm(s, c.e, K.p2, c.pi2, rule, "(e, kappa2, pi2)");
}

std::vector<ExtensionStep> invert_edge_steps(const Sketch& s, Idx u) {
  // u^-1 with (u, u^-1, id(dom u)) and (u^-1, u, id(cod u))
  const Idx X = s.e_dom[u];
  const Idx Y = s.e_cod[u];
  const Idx inv = s.edge_count();
  return {AddPrimitiveEdge{Y, X}, AddCommutativity{u, inv, s.n_id[X]},
          AddCommutativity{inv, u, s.n_id[Y]}};
}

}  // namespace

const char* eq_step_name(const EqStep& step) {
  struct Namer {
    const char* operator()(const EqComposition&) { return "composition"; }
    const char* operator()(const EqLeftUnit&) { return "left unit law"; }
    const char* operator()(const EqRightUnit&) { return "right unit law"; }
    const char* operator()(const EqLeftAssoc&) { return "left associativity"; }
    const char* operator()(const EqRightAssoc&) { return "right associativity"; }
    const char* operator()(const EqUnivIntro& u) {
      if (std::holds_alternative<AddTerminal>(u.step)) return "terminal universal";
      if (std::holds_alternative<AddInitial>(u.step)) return "initial universal";
      if (std::holds_alternative<AddPullback>(u.step)) return "pullback universal";
      if (std::holds_alternative<AddPushout>(u.step)) return "pushout universal";
      return "list universal";
    }
    const char* operator()(const EqPullbackFillin&) { return "pullback fillin"; }
    const char* operator()(const EqPullbackFillinUnique&) { return "pullback fillin uniqueness"; }
    const char* operator()(const EqPushoutFillin&) { return "pushout fillin"; }
    const char* operator()(const EqPushoutFillinUnique&) { return "pushout fillin uniqueness"; }
    const char* operator()(const EqTerminalFillin&) { return "terminal fillin"; }
    const char* operator()(const EqTerminalFillinUnique&) { return "terminal fillin uniqueness"; }
    const char* operator()(const EqInitialFillin&) { return "initial fillin"; }
    const char* operator()(const EqInitialFillinUnique&) { return "initial fillin uniqueness"; }
    const char* operator()(const EqListFillin&) { return "list fillin"; }
    const char* operator()(const EqListFillinUnique&) { return "list fillin uniqueness"; }
    const char* operator()(const EqBalance&) { return "balance"; }
    const char* operator()(const EqInitStability&) { return "initial stability"; }
    const char* operator()(const EqPushoutStability&) { return "pushout stability"; }
    const char* operator()(const EqExactness&) { return "exactness"; }
  };
  return std::visit(Namer{}, step);
}

void check_eq_step(const Sketch& s, const EqStep& step) {
  if (const auto* c = std::get_if<EqComposition>(&step)) {
    need_edge(s, c->u, "composition");
    need_edge(s, c->v, "composition");
    need(s.e_cod[c->u] == s.e_dom[c->v], "composition", "edges do not compose");
  } else if (const auto* c = std::get_if<EqLeftUnit>(&step)) {
    need_edge(s, c->u, "left unit law");
  } else if (const auto* c = std::get_if<EqRightUnit>(&step)) {
    need_edge(s, c->u, "right unit law");
  } else if (const auto* c = std::get_if<EqLeftAssoc>(&step)) {
    const char* rule = "left associativity";
    for (Idx e : {c->u, c->v, c->w, c->k, c->l, c->m}) need_edge(s, e, rule);
    need_comm(s, c->u, c->v, c->k, rule, "(u,v,k)");
    need_comm(s, c->v, c->w, c->l, rule, "(v,w,l)");
    need_comm(s, c->u, c->l, c->m, rule, "(u,l,m)");
  } else if (const auto* c = std::get_if<EqRightAssoc>(&step)) {
    const char* rule = "right associativity";
    for (Idx e : {c->u, c->v, c->w, c->k, c->l, c->m}) need_edge(s, e, rule);
    need_comm(s, c->u, c->v, c->k, rule, "(u,v,k)");
    need_comm(s, c->v, c->w, c->l, rule, "(v,w,l)");
    need_comm(s, c->k, c->w, c->m, rule, "(k,w,m)");
  } else if (const auto* c = std::get_if<EqUnivIntro>(&step)) {
    const bool is_universal = std::holds_alternative<AddTerminal>(c->step) ||
                              std::holds_alternative<AddInitial>(c->step) ||
                              std::holds_alternative<AddPullback>(c->step) ||
                              std::holds_alternative<AddPushout>(c->step) ||
                              std::holds_alternative<AddListObject>(c->step);
    need(is_universal, "universal introduction", "step must introduce a universal");
    apply_step(s, c->step);  // validates the data configuration
  } else if (const auto* c = std::get_if<EqPullbackFillin>(&step)) {
    const char* rule = "pullback fillin";
    const PbShape sh = pb_shape(s, c->upb, rule);
    need_tri(s, c->d1, rule);
    need_tri(s, c->d2, rule);
    need(s.tri_r[c->d1] == sh.u1, rule, "cone triangle 1 must share the first cospan leg");
    need(s.tri_r[c->d2] == sh.u2, rule, "cone triangle 2 must share the second cospan leg");
    need(s.tri_c[c->d1] == s.tri_c[c->d2], rule, "cone triangles must share the diagonal");
  } else if (const auto* c = std::get_if<EqPullbackFillinUnique>(&step)) {
    const char* rule = "pullback fillin uniqueness";
    const PbShape sh = pb_shape(s, c->upb, rule);
    for (Idx e : {c->v1, c->v2, c->w, c->w2}) need_edge(s, e, rule);
    need(s.e_dom[c->w] == s.e_dom[c->w2], rule, "w and w' must be parallel");
    need_comm(s, c->w, sh.p1, c->v1, rule, "(w, p1, v1)");
    need_comm(s, c->w, sh.p2, c->v2, rule, "(w, p2, v2)");
    need_comm(s, c->w2, sh.p1, c->v1, rule, "(w', p1, v1)");
    need_comm(s, c->w2, sh.p2, c->v2, rule, "(w', p2, v2)");
  } else if (const auto* c = std::get_if<EqPushoutFillin>(&step)) {
    const char* rule = "pushout fillin";
    const PoShape sh = po_shape(s, c->upo, rule);
    need_tri(s, c->d1, rule);
    need_tri(s, c->d2, rule);
    need(s.tri_l[c->d1] == sh.u1, rule, "cocone triangle 1 must share the first span leg");
    need(s.tri_l[c->d2] == sh.u2, rule, "cocone triangle 2 must share the second span leg");
    need(s.tri_c[c->d1] == s.tri_c[c->d2], rule, "cocone triangles must share the diagonal");
  } else if (const auto* c = std::get_if<EqPushoutFillinUnique>(&step)) {
    const char* rule = "pushout fillin uniqueness";
    const PoShape sh = po_shape(s, c->upo, rule);
    for (Idx e : {c->v1, c->v2, c->w, c->w2}) need_edge(s, e, rule);
    need(s.e_cod[c->w] == s.e_cod[c->w2], rule, "w and w' must be parallel");
    need_comm(s, sh.j1, c->w, c->v1, rule, "(j1, w, v1)");
    need_comm(s, sh.j2, c->w, c->v2, rule, "(j2, w, v2)");
    need_comm(s, sh.j1, c->w2, c->v1, rule, "(j1, w', v1)");
    need_comm(s, sh.j2, c->w2, c->v2, rule, "(j2, w', v2)");
  } else if (const auto* c = std::get_if<EqTerminalFillin>(&step)) {
    const char* rule = "terminal fillin";
    need(c->ut < s.ut_count(), rule, "terminal universal out of range");
    need_node(s, c->node, rule);
  } else if (const auto* c = std::get_if<EqTerminalFillinUnique>(&step)) {
    const char* rule = "terminal fillin uniqueness";
    need(c->ut < s.ut_count(), rule, "terminal universal out of range");
    need_edge(s, c->w, rule);
    need_edge(s, c->w2, rule);
    need(s.e_cod[c->w] == s.ut_n[c->ut] && s.e_cod[c->w2] == s.ut_n[c->ut], rule,
         "w and w' must end at the terminal");
    need(s.e_dom[c->w] == s.e_dom[c->w2], rule, "w and w' must be parallel");
  } else if (const auto* c = std::get_if<EqInitialFillin>(&step)) {
    const char* rule = "initial fillin";
    need(c->ui < s.ui_count(), rule, "initial universal out of range");
    need_node(s, c->node, rule);
  } else if (const auto* c = std::get_if<EqInitialFillinUnique>(&step)) {
    const char* rule = "initial fillin uniqueness";
    need(c->ui < s.ui_count(), rule, "initial universal out of range");
    need_edge(s, c->w, rule);
    need_edge(s, c->w2, rule);
    need(s.e_dom[c->w] == s.ui_n[c->ui] && s.e_dom[c->w2] == s.ui_n[c->ui], rule,
         "w and w' must start at the initial");
    need(s.e_cod[c->w] == s.e_cod[c->w2], rule, "w and w' must be parallel");
  } else if (const auto* c = std::get_if<EqListFillin>(&step)) {
    check_list_config(s, c->cfg, "list fillin");
  } else if (const auto* c = std::get_if<EqListFillinUnique>(&step)) {
    const char* rule = "list fillin uniqueness";
    check_list_config(s, c->cfg, rule);
    check_list_solution(s, c->cfg, c->s1, rule);
    check_list_solution(s, c->cfg, c->s2, rule);
  } else if (const auto* c = std::get_if<EqBalance>(&step)) {
    const char* rule = "balance";
    need_edge(s, c->u, rule);
    const PbShape ker = pb_shape(s, c->kernel_pb, rule);
    need(ker.u1 == c->u && ker.u2 == c->u, rule, "kernel pair must be the pullback of (u, u)");
    const PoShape coker = po_shape(s, c->cokernel_po, rule);
    need(coker.u1 == c->u && coker.u2 == c->u, rule,
         "cokernel pair must be the pushout of (u, u)");
    need_tri(s, c->mono_comm, rule);
    need(s.tri_l[c->mono_comm] == s.n_id[ker.P] && s.tri_r[c->mono_comm] == ker.p1 &&
             s.tri_c[c->mono_comm] == ker.p2,
         rule, "mono_comm must be the unary commutativity p1 <| p2");
    need_tri(s, c->epi_comm, rule);
    need(s.tri_l[c->epi_comm] == s.n_id[s.e_cod[c->u]] &&
             s.tri_r[c->epi_comm] == coker.j1 && s.tri_c[c->epi_comm] == coker.j2,
         rule, "epi_comm must be the unary commutativity j1 <| j2");
  } else if (const auto* c = std::get_if<EqInitStability>(&step)) {
    const char* rule = "initial stability";
    need(c->ui < s.ui_count(), rule, "initial universal out of range");
    need_edge(s, c->u, rule);
    need(s.e_cod[c->u] == s.ui_n[c->ui], rule, "u must end at the initial");
  } else if (const auto* c = std::get_if<EqPushoutStability>(&step)) {
    check_po_stab_config(s, c->cfg, "pushout stability");
  } else if (const auto* c = std::get_if<EqExactness>(&step)) {
    check_exactness_config(s, c->cfg, "exactness");
  } else {
    throw KernelError("check_eq_step: unknown rule");
  }
}

std::vector<ExtensionStep> expand_eq_step(const Sketch& s, const EqStep& step) {
  const Idx fresh_edge = s.edge_count();
  if (const auto* c = std::get_if<EqComposition>(&step)) {
    return {AddPrimitiveEdge{s.e_dom[c->u], s.e_cod[c->v]},
            AddCommutativity{c->u, c->v, fresh_edge}};
  }
  if (const auto* c = std::get_if<EqLeftUnit>(&step)) {
    return {AddCommutativity{s.n_id[s.e_dom[c->u]], c->u, c->u}};
  }
  if (const auto* c = std::get_if<EqRightUnit>(&step)) {
    return {AddCommutativity{c->u, s.n_id[s.e_cod[c->u]], c->u}};
  }
  if (const auto* c = std::get_if<EqLeftAssoc>(&step)) {
    return {AddCommutativity{c->k, c->w, c->m}};
  }
  if (const auto* c = std::get_if<EqRightAssoc>(&step)) {
    return {AddCommutativity{c->u, c->l, c->m}};
  }
  if (const auto* c = std::get_if<EqUnivIntro>(&step)) {
    return {c->step};
  }
  if (const auto* c = std::get_if<EqPullbackFillin>(&step)) {
    const PbShape sh = pb_shape(s, c->upb, "pullback fillin");
    const Idx v1 = s.tri_l[c->d1], v2 = s.tri_l[c->d2];
    return {AddPrimitiveEdge{s.e_dom[v1], sh.P},
            AddCommutativity{fresh_edge, sh.p1, v1},
            AddCommutativity{fresh_edge, sh.p2, v2}};
  }
  if (const auto* c = std::get_if<EqPullbackFillinUnique>(&step)) {
    return {AddCommutativity{s.n_id[s.e_dom[c->w]], c->w, c->w2}};
  }
  if (const auto* c = std::get_if<EqPushoutFillin>(&step)) {
    const PoShape sh = po_shape(s, c->upo, "pushout fillin");
    const Idx v1 = s.tri_r[c->d1], v2 = s.tri_r[c->d2];
    return {AddPrimitiveEdge{sh.Q, s.e_cod[v1]},
            AddCommutativity{sh.j1, fresh_edge, v1},
            AddCommutativity{sh.j2, fresh_edge, v2}};
  }
  if (const auto* c = std::get_if<EqPushoutFillinUnique>(&step)) {
    return {AddCommutativity{s.n_id[s.e_dom[c->w]], c->w, c->w2}};
  }
  if (const auto* c = std::get_if<EqTerminalFillin>(&step)) {
    return {AddPrimitiveEdge{c->node, s.ut_n[c->ut]}};
  }
  if (const auto* c = std::get_if<EqTerminalFillinUnique>(&step)) {
    return {AddCommutativity{s.n_id[s.e_dom[c->w]], c->w, c->w2}};
  }
  if (const auto* c = std::get_if<EqInitialFillin>(&step)) {
    return {AddPrimitiveEdge{s.ui_n[c->ui], c->node}};
  }
  if (const auto* c = std::get_if<EqInitialFillinUnique>(&step)) {
    return {AddCommutativity{s.n_id[s.e_dom[c->w]], c->w, c->w2}};
  }
  if (const auto* c = std::get_if<EqListFillin>(&step)) {
    const PbShape lb = pb_shape(s, c->cfg.pb_LB, "list fillin");
    const PbShape pb = pb_shape(s, c->cfg.pb_PB, "list fillin");
    const PbShape alb = pb_shape(s, c->cfg.pb_ALB, "list fillin");
    const PbShape ay = pb_shape(s, c->cfg.pb_AY, "list fillin");
    const Idx Y = s.e_dom[ay.u2];
    const Idx r = fresh_edge, rp = r + 1, rpp = r + 2, gp = r + 3, gpp = r + 4;
    return {AddPrimitiveEdge{lb.P, Y},      // r
            AddPrimitiveEdge{alb.P, ay.P},  // r'
            AddPrimitiveEdge{alb.P, Y},     // r''
            AddPrimitiveEdge{alb.P, Y},     // g'
            AddPrimitiveEdge{pb.P, Y},      // g''
            AddCommutativity{c->cfg.eb, r, c->cfg.y},
            AddCommutativity{c->cfg.consB, r, gpp},
            AddCommutativity{c->cfg.assoc, gp, gpp},
            AddCommutativity{rp, c->cfg.g, gp},
            AddCommutativity{alb.p2, r, rpp},
            AddCommutativity{rp, ay.p2, rpp},
            AddCommutativity{rp, ay.p1, alb.p1}};
  }
  if (const auto* c = std::get_if<EqListFillinUnique>(&step)) {
    return {AddCommutativity{s.n_id[s.e_dom[c->s1.r]], c->s1.r, c->s2.r}};
  }
  if (const auto* c = std::get_if<EqBalance>(&step)) {
    return invert_edge_steps(s, c->u);
  }
  if (const auto* c = std::get_if<EqInitStability>(&step)) {
    return invert_edge_steps(s, c->u);
  }
  if (const auto* c = std::get_if<EqPushoutStability>(&step)) {
    return invert_edge_steps(s, c->cfg.e);
  }
  if (const auto* c = std::get_if<EqExactness>(&step)) {
    return invert_edge_steps(s, c->cfg.e);
  }
  throw KernelError("expand_eq_step: unknown rule");
}

std::pair<Sketch, StepDelta> apply_eq_step(const Sketch& s, const EqStep& step) {
  check_eq_step(s, step);
  Sketch cur = s;
  StepDelta total;
  for (const auto& sub : expand_eq_step(s, step)) {
    auto [next, d] = apply_step(cur, sub);
    cur = std::move(next);
    auto append = [](std::vector<Idx>& into, const std::vector<Idx>& from) {
      into.insert(into.end(), from.begin(), from.end());
    };
    append(total.nodes, d.nodes);
    append(total.edges, d.edges);
    append(total.tris, d.tris);
    append(total.uts, d.uts);
    append(total.upbs, d.upbs);
    append(total.uis, d.uis);
    append(total.upos, d.upos);
    append(total.uls, d.uls);
  }
  return {std::move(cur), std::move(total)};
}

EqApplyResult apply_eq_extension(const Sketch& base, const EqExtension& e) {
  if (!(e.base == base))
    throw KernelError("apply_eq_extension: extension base differs from given sketch");
  EqApplyResult out;
  Sketch cur = base;
  for (size_t i = 0; i < e.steps.size(); ++i) {
    try {
      auto [next, d] = apply_eq_step(cur, e.steps[i]);
      cur = std::move(next);
      out.deltas.push_back(std::move(d));
    } catch (const KernelError& err) {
      std::ostringstream os;
      os << "step " << i << " (" << eq_step_name(e.steps[i]) << "): " << err.what();
      throw KernelError(os.str());
    }
  }
  out.inclusion = inclusion_hom(base, cur);
  out.result = std::move(cur);
  return out;
}

Extension as_extension(const EqExtension& e) {
  Extension out;
  out.base = e.base;
  Sketch cur = e.base;
  for (const auto& step : e.steps) {
    check_eq_step(cur, step);
    for (const auto& sub : expand_eq_step(cur, step)) {
      out.steps.push_back(sub);
      cur = apply_step(cur, sub).first;
    }
  }
  return out;
}

EqStep translate_eq_step(const EqStep& step, const SketchHom& f) {
  auto E = [&](Idx u) { return f.e[u]; };
  auto N = [&](Idx x) { return f.n[x]; };
  auto T = [&](Idx t) { return f.tri[t]; };
  return std::visit(
      [&](const auto& c) -> EqStep {
        using Ty = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<Ty, EqComposition>) {
          return EqComposition{E(c.u), E(c.v)};
        } else if constexpr (std::is_same_v<Ty, EqLeftUnit>) {
          return EqLeftUnit{E(c.u)};
        } else if constexpr (std::is_same_v<Ty, EqRightUnit>) {
          return EqRightUnit{E(c.u)};
        } else if constexpr (std::is_same_v<Ty, EqLeftAssoc>) {
          return EqLeftAssoc{E(c.u), E(c.v), E(c.w), E(c.k), E(c.l), E(c.m)};
        } else if constexpr (std::is_same_v<Ty, EqRightAssoc>) {
          return EqRightAssoc{E(c.u), E(c.v), E(c.w), E(c.k), E(c.l), E(c.m)};
        } else if constexpr (std::is_same_v<Ty, EqUnivIntro>) {
          return EqUnivIntro{translate_step(c.step, f)};
        } else if constexpr (std::is_same_v<Ty, EqPullbackFillin>) {
          return EqPullbackFillin{f.upb[c.upb], T(c.d1), T(c.d2)};
        } else if constexpr (std::is_same_v<Ty, EqPullbackFillinUnique>) {
          return EqPullbackFillinUnique{f.upb[c.upb], E(c.v1), E(c.v2), E(c.w), E(c.w2)};
        } else if constexpr (std::is_same_v<Ty, EqPushoutFillin>) {
          return EqPushoutFillin{f.upo[c.upo], T(c.d1), T(c.d2)};
        } else if constexpr (std::is_same_v<Ty, EqPushoutFillinUnique>) {
          return EqPushoutFillinUnique{f.upo[c.upo], E(c.v1), E(c.v2), E(c.w), E(c.w2)};
        } else if constexpr (std::is_same_v<Ty, EqTerminalFillin>) {
          return EqTerminalFillin{f.ut[c.ut], N(c.node)};
        } else if constexpr (std::is_same_v<Ty, EqTerminalFillinUnique>) {
          return EqTerminalFillinUnique{f.ut[c.ut], E(c.w), E(c.w2)};
        } else if constexpr (std::is_same_v<Ty, EqInitialFillin>) {
          return EqInitialFillin{f.ui[c.ui], N(c.node)};
        } else if constexpr (std::is_same_v<Ty, EqInitialFillinUnique>) {
          return EqInitialFillinUnique{f.ui[c.ui], E(c.w), E(c.w2)};
        } else if constexpr (std::is_same_v<Ty, EqListFillin> ||
                             std::is_same_v<Ty, EqListFillinUnique>) {
          auto tc = [&](const ListFillinConfig& g) {
            ListFillinConfig o;
            o.ul = f.ul[g.ul];
            o.pb_LB = f.upb[g.pb_LB];
            o.pb_PB = f.upb[g.pb_PB];
            o.pb_ALB = f.upb[g.pb_ALB];
            o.pb_AY = f.upb[g.pb_AY];
            o.y = E(g.y);
            o.g = E(g.g);
            o.bangBT = E(g.bangBT);
            o.c_eps = E(g.c_eps);
            o.eb = E(g.eb);
            o.cPL = E(g.cPL);
            o.consB = E(g.consB);
            o.cA = E(g.cA);
            o.cL = E(g.cL);
            o.cLB = E(g.cLB);
            o.assoc = E(g.assoc);
            return o;
          };
          if constexpr (std::is_same_v<Ty, EqListFillin>) {
            return EqListFillin{tc(c.cfg)};
          } else {
            auto ts = [&](const ListFillinSolution& g) {
              return ListFillinSolution{E(g.r), E(g.rp), E(g.rpp), E(g.gp), E(g.gpp)};
            };
            return EqListFillinUnique{tc(c.cfg), ts(c.s1), ts(c.s2)};
          }
        } else if constexpr (std::is_same_v<Ty, EqBalance>) {
          return EqBalance{E(c.u), f.upb[c.kernel_pb], f.upo[c.cokernel_po],
                           T(c.mono_comm), T(c.epi_comm)};
        } else if constexpr (std::is_same_v<Ty, EqInitStability>) {
          return EqInitStability{f.ui[c.ui], E(c.u)};
        } else if constexpr (std::is_same_v<Ty, EqPushoutStability>) {
          const auto& g = c.cfg;
          PushoutStabilityConfig o;
          o.po_base = f.upo[g.po_base];
          o.w = E(g.w);
          o.pb_v = f.upb[g.pb_v];
          o.pb_v1 = f.upb[g.pb_v1];
          o.pb_v2 = f.upb[g.pb_v2];
          o.c1 = E(g.c1);
          o.c2 = E(g.c2);
          o.u1p = E(g.u1p);
          o.u2p = E(g.u2p);
          o.po_inner = f.upo[g.po_inner];
          o.e = E(g.e);
          return EqPushoutStability{o};
        } else {
          static_assert(std::is_same_v<Ty, EqExactness>);
          const auto& g = c.cfg;
          ExactnessConfig o;
          o.pi1 = E(g.pi1);
          o.pi2 = E(g.pi2);
          o.ut = f.ut[g.ut];
          o.bang_x0 = E(g.bang_x0);
          o.pb_prod = f.upb[g.pb_prod];
          o.pi = E(g.pi);
          o.pb_mono = f.upb[g.pb_mono];
          o.mono_comm = T(g.mono_comm);
          o.refl = E(g.refl);
          o.sym = E(g.sym);
          o.pb_x2 = f.upb[g.pb_x2];
          o.trans = E(g.trans);
          o.ct1 = E(g.ct1);
          o.ct2 = E(g.ct2);
          o.ui = f.ui[g.ui];
          o.bang0_x1 = E(g.bang0_x1);
          o.bang0_x0 = E(g.bang0_x0);
          o.po_sum = f.upo[g.po_sum];
          o.f1 = E(g.f1);
          o.f2 = E(g.f2);
          o.po_coeq = f.upo[g.po_coeq];
          o.pb_K = f.upb[g.pb_K];
          o.e = E(g.e);
          return EqExactness{o};
        }
      },
      step);
}

EqReindexResult reindex_eq(const EqExtension& e, const SketchHom& f) {
  if (!(e.base == f.source))
    throw KernelError("reindex_eq: extension base differs from hom source");
  EqReindexResult out;
  out.ext.base = f.target;
  SketchHom g = f;
  Sketch src = e.base;
  Sketch tgt = f.target;
  for (const auto& step : e.steps) {
    EqStep tstep = translate_eq_step(step, g);
    auto [src2, dl] = apply_eq_step(src, step);
    auto [tgt2, dr] = apply_eq_step(tgt, tstep);
    // extend g over the per-sort deltas (they have equal shapes)
    g.source = src2;
    g.target = tgt2;
    auto splice = [](std::vector<Idx>& map, const std::vector<Idx>& from,
                     const std::vector<Idx>& to) {
      for (size_t k = 0; k < from.size(); ++k) {
        if (map.size() <= from[k]) map.resize(from[k] + 1);
        map[from[k]] = to[k];
      }
    };
    splice(g.n, dl.nodes, dr.nodes);
    splice(g.e, dl.edges, dr.edges);
    splice(g.tri, dl.tris, dr.tris);
    splice(g.ut, dl.uts, dr.uts);
    splice(g.upb, dl.upbs, dr.upbs);
    splice(g.ui, dl.uis, dr.uis);
    splice(g.upo, dl.upos, dr.upos);
    splice(g.ul, dl.uls, dr.uls);
    src = std::move(src2);
    tgt = std::move(tgt2);
    out.ext.steps.push_back(std::move(tstep));
  }
  out.eps = std::move(g);
  return out;
}

bool check_refinement(const Refinement& r) {
  if (!(r.e1.base == r.e2.base)) return false;
  const auto a1 = apply_eq_extension(r.e1);
  const auto a2 = apply_eq_extension(r.e2);
  if (!(r.eps.source == a1.result) || !(r.eps.target == a2.result)) return false;
  if (!validate_hom(r.eps).ok()) return false;
  // e1;eps = e2 on nodes and edges: the ordinal inclusions must be preserved
  const Idx nn = r.e1.base.node_count();
  const Idx ne = r.e1.base.edge_count();
  for (Idx x = 0; x < nn; ++x)
    if (r.eps.n[x] != x) return false;
  for (Idx u = 0; u < ne; ++u)
    if (r.eps.e[u] != u) return false;
  return true;
}

namespace {

bool step_prefix(const std::vector<EqStep>& shorter, const std::vector<EqStep>& longer) {
  if (shorter.size() > longer.size()) return false;
  for (size_t i = 0; i < shorter.size(); ++i)
    if (!(shorter[i] == longer[i])) return false;
  return true;
}

}  // namespace

CommonRefinement common_refinement(const EqExtension& e1, const EqExtension& e2) {
  if (!(e1.base == e2.base))
    throw KernelError("common_refinement: extensions have different bases");
  // when one step list extends the other, the longer one is already a common
  // refinement; this keeps representatives sharing a derivation comparable
  // without duplicating their material
  if (step_prefix(e2.steps, e1.steps) || step_prefix(e1.steps, e2.steps)) {
    const bool left_longer = e1.steps.size() >= e2.steps.size();
    const EqExtension& big = left_longer ? e1 : e2;
    const Sketch apex = apply_eq_extension(big).result;
    CommonRefinement out;
    out.e = big;
    out.eps1.e1 = e1;
    out.eps1.e2 = big;
    out.eps1.eps = inclusion_hom(apply_eq_extension(e1).result, apex);
    out.eps2.e1 = e2;
    out.eps2.e2 = big;
    out.eps2.eps = inclusion_hom(apply_eq_extension(e2).result, apex);
    return out;
  }
  const auto a1 = apply_eq_extension(e1);
  auto re = reindex_eq(e2, a1.inclusion);

  CommonRefinement out;
  out.e = e1;
  out.e.steps.insert(out.e.steps.end(), re.ext.steps.begin(), re.ext.steps.end());

  const auto ae = apply_eq_extension(out.e);
  out.eps1.e1 = e1;
  out.eps1.e2 = out.e;
  out.eps1.eps = inclusion_hom(a1.result, ae.result);
  out.eps2.e1 = e2;
  out.eps2.e2 = out.e;
  out.eps2.eps = re.eps;
  return out;
}

}  // namespace auk
