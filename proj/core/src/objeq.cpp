#include "auk/objeq.hpp"

#include <sstream>

namespace auk {

namespace {

struct PbSh {
  Idx t1, t2, p1, p2, u1, u2, p, P, U1, U2, U3;
};

std::optional<PbSh> pb_sh(const Sketch& s, Idx w) {
  if (w >= s.upb_count()) return std::nullopt;
  PbSh sh;
  sh.t1 = s.upb_tri1[w];
  sh.t2 = s.upb_tri2[w];
  sh.p1 = s.tri_l[sh.t1];
  sh.p2 = s.tri_l[sh.t2];
  sh.u1 = s.tri_r[sh.t1];
  sh.u2 = s.tri_r[sh.t2];
  sh.p = s.tri_c[sh.t1];
  sh.P = s.e_dom[sh.p1];
  sh.U1 = s.e_cod[sh.p1];
  sh.U2 = s.e_cod[sh.p2];
  sh.U3 = s.e_cod[sh.u1];
  return sh;
}

struct PoSh {
  Idx t1, t2, a1, a2, j1, j2, j, Q, A1, A2, A3;
};

std::optional<PoSh> po_sh(const Sketch& s, Idx w) {
  if (w >= s.upo_count()) return std::nullopt;
  PoSh sh;
  sh.t1 = s.upo_tri1[w];
  sh.t2 = s.upo_tri2[w];
  sh.a1 = s.tri_l[sh.t1];
  sh.a2 = s.tri_l[sh.t2];
  sh.j1 = s.tri_r[sh.t1];
  sh.j2 = s.tri_r[sh.t2];
  sh.j = s.tri_c[sh.t1];
  sh.Q = s.e_cod[sh.j1];
  sh.A1 = s.e_cod[sh.a1];
  sh.A2 = s.e_cod[sh.a2];
  sh.A3 = s.e_dom[sh.a1];
  return sh;
}

struct ListSh {
  Idx T, L, P, A;
  Idx eps, cons, pP1, pP2;
};

std::optional<ListSh> list_sh(const Sketch& s, Idx w) {
  if (w >= s.ul_count()) return std::nullopt;
  const auto pb = pb_sh(s, s.ul_pb[w]);
  if (!pb) return std::nullopt;
  ListSh sh;
  sh.T = s.ut_n[s.ul_t[w]];
  sh.eps = s.ul_e[w];
  sh.cons = s.ul_cons[w];
  sh.pP1 = pb->p1;
  sh.pP2 = pb->p2;
  sh.L = s.e_cod[pb->p1];
  sh.A = s.e_cod[pb->p2];
  sh.P = pb->P;
  return sh;
}

struct Failure {
  std::optional<std::string> msg;
  bool fail(const std::string& m) {
    if (!msg) msg = m;
    return false;
  }
};

bool edge_is(const Sketch& s, Idx e, Idx dom, Idx cod, Failure& f, const char* what) {
  if (e >= s.edge_count()) return f.fail(std::string(what) + ": edge out of range");
  if (s.e_dom[e] != dom || s.e_cod[e] != cod)
    return f.fail(std::string(what) + ": wrong endpoints");
  return true;
}

bool comm_is(const Sketch& s, Idx l, Idx r, Idx c, Failure& f, const char* what) {
  if (!s.has_triangle(l, r, c))
    return f.fail(std::string("missing commutativity ") + what);
  return true;
}

bool check_witness(const Sketch& s, Idx gamma, const ObjectEqualityWitness& w, Failure& f);

bool check_pullbacks(const Sketch& s, Idx gamma, const WPullbacks& w, Failure& f) {
  const auto x = pb_sh(s, w.upb_x);
  const auto y = pb_sh(s, w.upb_y);
  if (!x || !y) return f.fail("pullbacks: universal out of range");
  if (s.e_dom[gamma] != x->P || s.e_cod[gamma] != y->P)
    return f.fail("pullbacks: gamma does not join the two subjects");
  if (!w.w1 || !w.w2 || !w.w3) return f.fail("pullbacks: missing sub-witness");
  if (!edge_is(s, w.g1, x->U1, y->U1, f, "g1")) return false;
  if (!edge_is(s, w.g2, x->U2, y->U2, f, "g2")) return false;
  if (!edge_is(s, w.g3, x->U3, y->U3, f, "g3")) return false;
  if (!check_witness(s, w.g1, *w.w1, f)) return false;
  if (!check_witness(s, w.g2, *w.w2, f)) return false;
  if (!check_witness(s, w.g3, *w.w3, f)) return false;
  if (!edge_is(s, w.e_w1, x->U1, y->U3, f, "e_w1")) return false;
  if (!edge_is(s, w.e_w2, x->U2, y->U3, f, "e_w2")) return false;
  if (!edge_is(s, w.e_c1, x->P, y->U1, f, "e_c1")) return false;
  if (!edge_is(s, w.e_c2, x->P, y->U2, f, "e_c2")) return false;
  if (!edge_is(s, w.e_d, x->P, y->U3, f, "e_d")) return false;
  return comm_is(s, x->u1, w.g3, w.e_w1, f, "(u1, g3, e_w1)") &&
         comm_is(s, w.g1, y->u1, w.e_w1, f, "(g1, v1, e_w1)") &&
         comm_is(s, x->u2, w.g3, w.e_w2, f, "(u2, g3, e_w2)") &&
         comm_is(s, w.g2, y->u2, w.e_w2, f, "(g2, v2, e_w2)") &&
         comm_is(s, x->p1, w.g1, w.e_c1, f, "(p1, g1, e_c1)") &&
         comm_is(s, gamma, y->p1, w.e_c1, f, "(gamma, q1, e_c1)") &&
         comm_is(s, x->p2, w.g2, w.e_c2, f, "(p2, g2, e_c2)") &&
         comm_is(s, gamma, y->p2, w.e_c2, f, "(gamma, q2, e_c2)") &&
         comm_is(s, w.e_c1, y->u1, w.e_d, f, "(e_c1, v1, e_d)") &&
         comm_is(s, w.e_c2, y->u2, w.e_d, f, "(e_c2, v2, e_d)");
}

bool check_pushouts(const Sketch& s, Idx gamma, const WPushouts& w, Failure& f) {
  const auto x = po_sh(s, w.upo_x);
  const auto y = po_sh(s, w.upo_y);
  if (!x || !y) return f.fail("pushouts: universal out of range");
  if (s.e_dom[gamma] != x->Q || s.e_cod[gamma] != y->Q)
    return f.fail("pushouts: gamma does not join the two subjects");
  if (!w.w1 || !w.w2 || !w.w3) return f.fail("pushouts: missing sub-witness");
  if (!edge_is(s, w.g1, x->A1, y->A1, f, "g1")) return false;
  if (!edge_is(s, w.g2, x->A2, y->A2, f, "g2")) return false;
  if (!edge_is(s, w.g3, x->A3, y->A3, f, "g3")) return false;
  if (!check_witness(s, w.g1, *w.w1, f)) return false;
  if (!check_witness(s, w.g2, *w.w2, f)) return false;
  if (!check_witness(s, w.g3, *w.w3, f)) return false;
  if (!edge_is(s, w.e_w1, x->A3, y->A1, f, "e_w1")) return false;
  if (!edge_is(s, w.e_w2, x->A3, y->A2, f, "e_w2")) return false;
  if (!edge_is(s, w.e_c1, x->A1, y->Q, f, "e_c1")) return false;
  if (!edge_is(s, w.e_c2, x->A2, y->Q, f, "e_c2")) return false;
  if (!edge_is(s, w.e_d, x->A3, y->Q, f, "e_d")) return false;
  return comm_is(s, w.g3, y->a1, w.e_w1, f, "(g3, b1, e_w1)") &&
         comm_is(s, x->a1, w.g1, w.e_w1, f, "(a1, g1, e_w1)") &&
         comm_is(s, w.g3, y->a2, w.e_w2, f, "(g3, b2, e_w2)") &&
         comm_is(s, x->a2, w.g2, w.e_w2, f, "(a2, g2, e_w2)") &&
         comm_is(s, w.g1, y->j1, w.e_c1, f, "(g1, k1, e_c1)") &&
         comm_is(s, x->j1, gamma, w.e_c1, f, "(j1, gamma, e_c1)") &&
         comm_is(s, w.g2, y->j2, w.e_c2, f, "(g2, k2, e_c2)") &&
         comm_is(s, x->j2, gamma, w.e_c2, f, "(j2, gamma, e_c2)") &&
         comm_is(s, x->a1, w.e_c1, w.e_d, f, "(a1, e_c1, e_d)") &&
         comm_is(s, x->a2, w.e_c2, w.e_d, f, "(a2, e_c2, e_d)");
}

bool check_lists(const Sketch& s, Idx gamma, const WLists& w, Failure& f) {
  const auto x = list_sh(s, w.ul_x);
  const auto y = list_sh(s, w.ul_y);
  if (!x || !y) return f.fail("lists: universal out of range");
  if (s.e_dom[gamma] != x->L || s.e_cod[gamma] != y->L)
    return f.fail("lists: gamma does not join the two list subjects");
  if (!w.wA) return f.fail("lists: missing base sub-witness");
  if (!edge_is(s, w.gA, x->A, y->A, f, "gA")) return false;
  if (!check_witness(s, w.gA, *w.wA, f)) return false;
  if (!edge_is(s, w.gT, x->T, y->T, f, "gT")) return false;
  if (!edge_is(s, w.e_m, x->T, y->L, f, "e_m")) return false;
  if (!edge_is(s, w.gP, x->P, y->P, f, "gP")) return false;
  if (!edge_is(s, w.e_cl, x->P, y->L, f, "e_cl")) return false;
  if (!edge_is(s, w.e_ca, x->P, y->A, f, "e_ca")) return false;
  if (!edge_is(s, w.e_n, x->P, y->L, f, "e_n")) return false;
  return comm_is(s, x->eps, gamma, w.e_m, f, "(eps1, gamma, e_m)") &&
         comm_is(s, w.gT, y->eps, w.e_m, f, "(gT, eps2, e_m)") &&
         comm_is(s, x->pP1, gamma, w.e_cl, f, "(pP1_x, gamma, e_cl)") &&
         comm_is(s, w.gP, y->pP1, w.e_cl, f, "(gP, pP1_y, e_cl)") &&
         comm_is(s, x->pP2, w.gA, w.e_ca, f, "(pP2_x, gA, e_ca)") &&
         comm_is(s, w.gP, y->pP2, w.e_ca, f, "(gP, pP2_y, e_ca)") &&
         comm_is(s, x->cons, gamma, w.e_n, f, "(cons1, gamma, e_n)") &&
         comm_is(s, w.gP, y->cons, w.e_n, f, "(gP, cons2, e_n)");
}

bool check_witness(const Sketch& s, Idx gamma, const ObjectEqualityWitness& w, Failure& f) {
  if (gamma >= s.edge_count()) return f.fail("gamma out of range");
  if (const auto* c = std::get_if<WSameNode>(&w.v)) {
    if (s.e_dom[gamma] != s.e_cod[gamma])
      return f.fail("same-node: endpoints differ as nodes");
    if (c->comm >= s.tri_count()) return f.fail("same-node: commutativity out of range");
    const Idx X = s.e_dom[gamma];
    if (s.tri_l[c->comm] != s.n_id[X] || s.tri_r[c->comm] != gamma ||
        s.tri_c[c->comm] != s.n_id[X])
      return f.fail("same-node: commutativity is not gamma <| id");
    return true;
  }
  if (const auto* c = std::get_if<WTerminals>(&w.v)) {
    if (c->ut_x >= s.ut_count() || c->ut_y >= s.ut_count())
      return f.fail("terminals: universal out of range");
    if (s.ut_n[c->ut_x] != s.e_dom[gamma] || s.ut_n[c->ut_y] != s.e_cod[gamma])
      return f.fail("terminals: gamma does not join the two subjects");
    return true;
  }
  if (const auto* c = std::get_if<WInitials>(&w.v)) {
    if (c->ui_x >= s.ui_count() || c->ui_y >= s.ui_count())
      return f.fail("initials: universal out of range");
    if (s.ui_n[c->ui_x] != s.e_dom[gamma] || s.ui_n[c->ui_y] != s.e_cod[gamma])
      return f.fail("initials: gamma does not join the two subjects");
    return true;
  }
  if (const auto* c = std::get_if<WPullbacks>(&w.v)) return check_pullbacks(s, gamma, *c, f);
  if (const auto* c = std::get_if<WPushouts>(&w.v)) return check_pushouts(s, gamma, *c, f);
  if (const auto* c = std::get_if<WLists>(&w.v)) return check_lists(s, gamma, *c, f);
  return f.fail("unknown witness kind");
}

}  // namespace

bool verify_object_equality(const Sketch& s, Idx gamma, const ObjectEqualityWitness& w) {
  Failure f;
  return check_witness(s, gamma, w, f);
}

std::optional<std::string> object_equality_failure(const Sketch& s, Idx gamma,
                                                   const ObjectEqualityWitness& w) {
  Failure f;
  if (check_witness(s, gamma, w, f)) return std::nullopt;
  return f.msg ? f.msg : std::optional<std::string>("object equality does not verify");
}

namespace {

[[noreturn]] void closure_error(const char* what) {
  throw KernelError(std::string("objeq_closure: ") + what);
}

Idx need_tri_at(const DerivationBuilder& b, Idx l, Idx r, Idx c, const char* what) {
  if (auto t = b.find_tri(l, r, c)) return *t;
  throw KernelError(std::string("objeq_closure: missing commutativity ") + what);
}

void require_verified(const Sketch& s, Idx gamma, const ObjectEqualityWitness& w) {
  if (auto msg = object_equality_failure(s, gamma, w))
    throw KernelError("objeq_closure: unverified input witness: " + *msg);
}

// (u, v, w), (u, v, w2) -> unary (id, w, w2); wrappers around the builder
// returning the commutativity indices in the current sketch.

// identity collapse, recursive over the witness structure
Idx collapse(DerivationBuilder& b, Idx gamma, const ObjectEqualityWitness& w);

Idx collapse_pullbacks(DerivationBuilder& b, Idx gamma, const WPullbacks& w) {
  if (w.upb_x != w.upb_y)
    closure_error("identity-collapse needs both subjects from the same universal");
  const auto sh = *pb_sh(b.sketch(), w.upb_x);
  const Idx X = sh.P;
  std::array<Idx, 2> e_c = {w.e_c1, w.e_c2};
  std::array<Idx, 2> g = {w.g1, w.g2};
  std::array<Idx, 2> p = {sh.p1, sh.p2};
  const std::array<const WitnessPtr*, 2> sub = {&w.w1, &w.w2};
  for (int i = 0; i < 2; ++i) {
    const Idx col = collapse(b, g[i], **sub[i]);          // (id, id(U_i), g_i)
    const Idx col_s = b.sym(col);                         // (id, g_i, id(U_i))
    const Idx t = need_tri_at(b, p[i], g[i], e_c[i], "(p_i, g_i, e_c_i)");
    const Idx step2 = b.replace_right(t, col_s);          // (p_i, id(U_i), e_c_i)
    // (p_i, id, e) is the right-unit shape of p_i <| e; move to (id, p_i, e)
    b.sym(b.unit_transfer_rl(step2));                     // (id, p_i, e_c_i)
  }
  // now both gamma and id(X) are fillins for the cone (e_c1, e_c2)
  return b.apply(EqPullbackFillinUnique{w.upb_x, e_c[0], e_c[1],
                                        b.sketch().n_id[X], gamma})
      .tris[0];
}

Idx collapse_pushouts(DerivationBuilder& b, Idx gamma, const WPushouts& w) {
  if (w.upo_x != w.upo_y)
    closure_error("identity-collapse needs both subjects from the same universal");
  const auto sh = *po_sh(b.sketch(), w.upo_x);
  const Idx X = sh.Q;
  std::array<Idx, 2> e_c = {w.e_c1, w.e_c2};
  std::array<Idx, 2> g = {w.g1, w.g2};
  std::array<Idx, 2> j = {sh.j1, sh.j2};
  const std::array<const WitnessPtr*, 2> sub = {&w.w1, &w.w2};
  for (int i = 0; i < 2; ++i) {
    const Idx col = collapse(b, g[i], **sub[i]);          // (id, id(A_i), g_i)
    const Idx col_s = b.sym(col);                         // (id, g_i, id(A_i))
    const Idx t = need_tri_at(b, g[i], j[i], e_c[i], "(g_i, k_i, e_c_i)");
    const Idx step2 = b.replace_left(t, col_s);           // (id(A_i), j_i, e_c_i)
    // unary j_i <| e_c_i; move to (j_i, id(X), e_c_i)
    b.unit_transfer_lr(b.sym(step2));
  }
  return b.apply(EqPushoutFillinUnique{w.upo_x, e_c[0], e_c[1],
                                       b.sketch().n_id[X], gamma})
      .tris[0];
}

Idx collapse(DerivationBuilder& b, Idx gamma, const ObjectEqualityWitness& w) {
  const Sketch& s = b.sketch();
  if (const auto* c = std::get_if<WSameNode>(&w.v)) {
    return b.sym(c->comm);  // (id, gamma, id) -> (id, id, gamma)
  }
  if (const auto* c = std::get_if<WTerminals>(&w.v)) {
    return b.apply(EqTerminalFillinUnique{c->ut_x, s.n_id[s.e_dom[gamma]], gamma}).tris[0];
  }
  if (const auto* c = std::get_if<WInitials>(&w.v)) {
    return b.apply(EqInitialFillinUnique{c->ui_x, s.n_id[s.e_dom[gamma]], gamma}).tris[0];
  }
  if (const auto* c = std::get_if<WPullbacks>(&w.v)) return collapse_pullbacks(b, gamma, *c);
  if (const auto* c = std::get_if<WPushouts>(&w.v)) return collapse_pushouts(b, gamma, *c);
  closure_error("identity-collapse over a list witness is not supported; "
                "supply an explicit derivation");
}

// Rebuilds the gamma-mentioning commutativities of a witness for a new edge
// related by the unary commutativity (id, gamma, delta); all other fields are
// reused unchanged.
ObjectEqualityWitness transport_witness(DerivationBuilder& b,
                                        const ObjectEqualityWitness& w, Idx gamma,
                                        Idx un) {
  if (const auto* c = std::get_if<WSameNode>(&w.v)) {
    // (id, gamma, id) and (id, gamma, delta) -> (id, delta, id)
    const Idx t = b.trans(b.sym(un), c->comm);
    return ObjectEqualityWitness{WSameNode{t}};
  }
  if (std::holds_alternative<WTerminals>(w.v) || std::holds_alternative<WInitials>(w.v))
    return w;  // no edge-specific structure
  if (const auto* c = std::get_if<WPullbacks>(&w.v)) {
    const auto y = *pb_sh(b.sketch(), c->upb_y);
    for (auto [e_c, q] : {std::pair{c->e_c1, y.p1}, std::pair{c->e_c2, y.p2}})
      b.replace_left(need_tri_at(b, gamma, q, e_c, "(gamma, q_i, e_c_i)"), un);
    return w;
  }
  if (const auto* c = std::get_if<WPushouts>(&w.v)) {
    const auto x = *po_sh(b.sketch(), c->upo_x);
    for (auto [e_c, j] : {std::pair{c->e_c1, x.j1}, std::pair{c->e_c2, x.j2}})
      b.replace_right(need_tri_at(b, j, gamma, e_c, "(j_i, gamma, e_c_i)"), un);
    return w;
  }
  if (const auto* c = std::get_if<WLists>(&w.v)) {
    const auto x = *list_sh(b.sketch(), c->ul_x);
    for (auto [l, e] : {std::pair{x.eps, c->e_m}, std::pair{x.pP1, c->e_cl},
                        std::pair{x.cons, c->e_n}})
      b.replace_right(need_tri_at(b, l, gamma, e, "list gamma square"), un);
    return w;
  }
  closure_error("cannot transport this witness kind");
}

struct ComposeOut {
  Idx edge;
  Idx comm;  // (g1, g2, edge)
  ObjectEqualityWitness witness;
};

ComposeOut compose_witnesses(DerivationBuilder& b, Idx g1,
                             const ObjectEqualityWitness& w1, Idx g2,
                             const ObjectEqualityWitness& w2);

ComposeOut compose_pullbacks(DerivationBuilder& b, Idx g1, const WPullbacks& w1, Idx g2,
                             const WPullbacks& w2) {
  if (w1.upb_y != w2.upb_x)
    closure_error("compose: pullback witnesses do not meet at the same universal");
  const auto X = *pb_sh(b.sketch(), w1.upb_x);
  const auto Y = *pb_sh(b.sketch(), w1.upb_y);
  const auto Z = *pb_sh(b.sketch(), w2.upb_y);
  const auto dc = b.compose(g1, g2);  // delta with (g1, g2, delta)
  WPullbacks out;
  out.upb_x = w1.upb_x;
  out.upb_y = w2.upb_y;
  // compose the sub-equalities
  const auto s1 = compose_witnesses(b, w1.g1, *w1.w1, w2.g1, *w2.w1);
  const auto s2 = compose_witnesses(b, w1.g2, *w1.w2, w2.g2, *w2.w2);
  const auto s3 = compose_witnesses(b, w1.g3, *w1.w3, w2.g3, *w2.w3);
  out.g1 = s1.edge;
  out.g2 = s2.edge;
  out.g3 = s3.edge;
  out.w1 = std::make_shared<ObjectEqualityWitness>(s1.witness);
  out.w2 = std::make_shared<ObjectEqualityWitness>(s2.witness);
  out.w3 = std::make_shared<ObjectEqualityWitness>(s3.witness);

  const std::array<Idx, 2> xu = {X.u1, X.u2};
  const std::array<Idx, 2> yu = {Y.u1, Y.u2};
  const std::array<Idx, 2> zu = {Z.u1, Z.u2};
  const std::array<Idx, 2> xp = {X.p1, X.p2};
  const std::array<Idx, 2> zq = {Z.p1, Z.p2};
  const std::array<Idx, 2> w1g = {w1.g1, w1.g2};
  const std::array<Idx, 2> w2g = {w2.g1, w2.g2};
  const std::array<Idx, 2> dg = {s1.edge, s2.edge};
  const std::array<Idx, 2> dgc = {s1.comm, s2.comm};
  const std::array<Idx, 2> w1ew = {w1.e_w1, w1.e_w2};
  const std::array<Idx, 2> w2ew = {w2.e_w1, w2.e_w2};
  const std::array<Idx, 2> w1ec = {w1.e_c1, w1.e_c2};
  const std::array<Idx, 2> w2ec = {w2.e_c1, w2.e_c2};

  const std::array<Idx, 2> yq = {Y.p1, Y.p2};
  (void)dgc;
  std::array<Idx, 2> e_w{}, e_c{};
  for (int i = 0; i < 2; ++i) {
    // e_w_i := g_i ; e_w2_i, with (u_i, delta3, e_w) and (delta_i, t_i, e_w)
    const auto cw = b.compose(w1g[i], w2ew[i]);
    // (e_w1_i, g3', cw): left assoc over the chain g_i ; v_i ; g3'
    b.left_assoc(w1g[i], yu[i], w2.g3, w1ew[i], w2ew[i], cw.edge);
    // (u_i, delta3, cw): right assoc over u_i ; g3 ; g3'
    b.right_assoc(xu[i], w1.g3, w2.g3, w1ew[i], s3.edge, cw.edge);
    // (delta_i, t_i, cw): left assoc over g_i ; g_i' ; t_i
    b.left_assoc(w1g[i], w2g[i], zu[i], dg[i], w2ew[i], cw.edge);
    e_w[i] = cw.edge;

    // e_c_i := g1 ; e_c2_i, with (p_i, delta_i, e_c) and (delta, r_i, e_c)
    const auto cc = b.compose(g1, w2ec[i]);
    // (delta, r_i, cc): left assoc over g1 ; g2 ; r_i
    b.left_assoc(g1, g2, zq[i], dc.edge, w2ec[i], cc.edge);
    // a := e_c1_i ; g_i'
    const auto a = b.compose(w1ec[i], w2g[i]);
    // (p_i, delta_i, a): right assoc over p_i ; g_i ; g_i'
    b.right_assoc(xp[i], w1g[i], w2g[i], w1ec[i], dg[i], a.edge);
    // (g1, e_c2_i, a): right assoc over g1 ; q_i ; g_i'
    b.right_assoc(g1, yq[i], w2g[i], w1ec[i], w2ec[i], a.edge);
    // unify a with cc, then transfer (p_i, delta_i, a) across
    const Idx un = b.unify_parallel(
        need_tri_at(b, g1, w2ec[i], a.edge, "(g1, e_c2_i, a)"),
        need_tri_at(b, g1, w2ec[i], cc.edge, "(g1, e_c2_i, cc)"));
    b.transfer_comp(need_tri_at(b, xp[i], dg[i], a.edge, "(p_i, delta_i, a)"), un);
    e_c[i] = cc.edge;
  }
  // e_d := g1 ; e_d2 with (e_c_i, t_i, e_d)
  const auto ed = b.compose(g1, w2.e_d);
  for (int i = 0; i < 2; ++i)
    b.left_assoc(g1, w2ec[i], zu[i], e_c[i], w2.e_d, ed.edge);
  out.e_w1 = e_w[0];
  out.e_w2 = e_w[1];
  out.e_c1 = e_c[0];
  out.e_c2 = e_c[1];
  out.e_d = ed.edge;
  return {dc.edge, dc.tri, ObjectEqualityWitness{out}};
}

ComposeOut compose_pushouts(DerivationBuilder& b, Idx g1, const WPushouts& w1, Idx g2,
                            const WPushouts& w2) {
  if (w1.upo_y != w2.upo_x)
    closure_error("compose: pushout witnesses do not meet at the same universal");
  const auto X = *po_sh(b.sketch(), w1.upo_x);
  const auto Z = *po_sh(b.sketch(), w2.upo_y);
  const auto dc = b.compose(g1, g2);
  WPushouts out;
  out.upo_x = w1.upo_x;
  out.upo_y = w2.upo_y;
  const auto s1 = compose_witnesses(b, w1.g1, *w1.w1, w2.g1, *w2.w1);
  const auto s2 = compose_witnesses(b, w1.g2, *w1.w2, w2.g2, *w2.w2);
  const auto s3 = compose_witnesses(b, w1.g3, *w1.w3, w2.g3, *w2.w3);
  out.g1 = s1.edge;
  out.g2 = s2.edge;
  out.g3 = s3.edge;
  out.w1 = std::make_shared<ObjectEqualityWitness>(s1.witness);
  out.w2 = std::make_shared<ObjectEqualityWitness>(s2.witness);
  out.w3 = std::make_shared<ObjectEqualityWitness>(s3.witness);

  const std::array<Idx, 2> xa = {X.a1, X.a2};
  const std::array<Idx, 2> xj = {X.j1, X.j2};
  const std::array<Idx, 2> zc = {Z.a1, Z.a2};
  const std::array<Idx, 2> zl = {Z.j1, Z.j2};
  const std::array<Idx, 2> w1g = {w1.g1, w1.g2};
  const std::array<Idx, 2> w2g = {w2.g1, w2.g2};
  const std::array<Idx, 2> dg = {s1.edge, s2.edge};
  const std::array<Idx, 2> w1ew = {w1.e_w1, w1.e_w2};
  const std::array<Idx, 2> w2ew = {w2.e_w1, w2.e_w2};
  const std::array<Idx, 2> w1ec = {w1.e_c1, w1.e_c2};
  const std::array<Idx, 2> w2ec = {w2.e_c1, w2.e_c2};
  const auto Y = *po_sh(b.sketch(), w1.upo_y);
  const std::array<Idx, 2> yb = {Y.a1, Y.a2};
  const std::array<Idx, 2> yk = {Y.j1, Y.j2};

  std::array<Idx, 2> e_w{}, e_c{}, bb{}, bb_un{};
  for (int i = 0; i < 2; ++i) {
    // e_w_i := g3 ; e_w2_i, with (delta3, c_i, e_w) and (a_i, delta_i, e_w)
    const auto cw = b.compose(w1.g3, w2ew[i]);
    b.left_assoc(w1.g3, w2.g3, zc[i], s3.edge, w2ew[i], cw.edge);
    const auto aa = b.compose(w1ew[i], w2g[i]);
    b.right_assoc(xa[i], w1g[i], w2g[i], w1ew[i], dg[i], aa.edge);
    b.right_assoc(w1.g3, yb[i], w2g[i], w1ew[i], w2ew[i], aa.edge);
    const Idx un = b.unify_parallel(
        need_tri_at(b, w1.g3, w2ew[i], aa.edge, "(g3, e_w2_i, aa)"),
        need_tri_at(b, w1.g3, w2ew[i], cw.edge, "(g3, e_w2_i, cw)"));
    b.transfer_comp(need_tri_at(b, xa[i], dg[i], aa.edge, "(a_i, delta_i, aa)"), un);
    e_w[i] = cw.edge;

    // e_c_i := g_i ; e_c2_i, with (delta_i, l_i, e_c) and (j_i, delta, e_c)
    const auto cc = b.compose(w1g[i], w2ec[i]);
    b.left_assoc(w1g[i], w2g[i], zl[i], dg[i], w2ec[i], cc.edge);
    const auto bbi = b.compose(w1ec[i], g2);
    b.right_assoc(xj[i], g1, g2, w1ec[i], dc.edge, bbi.edge);
    b.right_assoc(w1g[i], yk[i], g2, w1ec[i], w2ec[i], bbi.edge);
    const Idx un2 = b.unify_parallel(
        need_tri_at(b, w1g[i], w2ec[i], bbi.edge, "(g_i, e_c2_i, bb)"),
        need_tri_at(b, w1g[i], w2ec[i], cc.edge, "(g_i, e_c2_i, cc)"));
    b.transfer_comp(need_tri_at(b, xj[i], dc.edge, bbi.edge, "(j_i, delta, bb)"), un2);
    e_c[i] = cc.edge;
    bb[i] = bbi.edge;
    bb_un[i] = un2;
  }
  // e_d := e_d1 ; g2 with (a_i, e_c_i, e_d)
  const auto ed = b.compose(w1.e_d, g2);
  for (int i = 0; i < 2; ++i) {
    b.right_assoc(xa[i], w1ec[i], g2, w1.e_d, bb[i], ed.edge);
    // (a_i, bb_i, ed) with bb_i <| e_c_i
    b.replace_right(need_tri_at(b, xa[i], bb[i], ed.edge, "(a_i, bb_i, e_d)"),
                    bb_un[i]);
  }
  out.e_w1 = e_w[0];
  out.e_w2 = e_w[1];
  out.e_c1 = e_c[0];
  out.e_c2 = e_c[1];
  out.e_d = ed.edge;
  return {dc.edge, dc.tri, ObjectEqualityWitness{out}};
}

ComposeOut compose_lists(DerivationBuilder& b, Idx g1, const WLists& w1, Idx g2,
                         const WLists& w2) {
  if (w1.ul_y != w2.ul_x)
    closure_error("compose: list witnesses do not meet at the same universal");
  const auto X = *list_sh(b.sketch(), w1.ul_x);
  const auto Y = *list_sh(b.sketch(), w1.ul_y);
  const auto Z = *list_sh(b.sketch(), w2.ul_y);
  const auto dc = b.compose(g1, g2);
  WLists out;
  out.ul_x = w1.ul_x;
  out.ul_y = w2.ul_y;
  const auto sA = compose_witnesses(b, w1.gA, *w1.wA, w2.gA, *w2.wA);
  out.gA = sA.edge;
  out.wA = std::make_shared<ObjectEqualityWitness>(sA.witness);
  const auto gT = b.compose(w1.gT, w2.gT);
  out.gT = gT.edge;
  const auto gP = b.compose(w1.gP, w2.gP);
  out.gP = gP.edge;

  // pattern: new square edge := old square ; g2-side, both triangles derived
  auto square = [&](Idx lx, Idx e1, Idx e2, Idx ly, Idx lz, Idx left1, Idx lcomp,
                    Idx lcomp_c) {
    // e := e1 ; g2 with (lx, delta, e) and (lcomp, lz, e)
    // where w1 has (lx, g1, e1), (left1, ly, e1); w2 has (ly, g2, e2),
    // (lcomp right part, lz, e2); lcomp = left1;lcomp-partner with comm lcomp_c
    const auto e = b.compose(e1, g2);
    b.right_assoc(lx, g1, g2, e1, dc.edge, e.edge);  // (lx, delta, e)
    const auto aa = b.compose(left1, e2);
    b.left_assoc(left1, ly, g2, e1, e2, aa.edge);    // (e1, g2, aa)
    const Idx un = b.unify_parallel(
        need_tri_at(b, e1, g2, aa.edge, "(e1, g2, aa)"),
        need_tri_at(b, e1, g2, e.edge, "(e1, g2, e)"));
    // (lcomp, lz, aa): left assoc over left1 ; partner ; lz
    b.left_assoc(left1, lcomp_c, lz, lcomp, e2, aa.edge);
    b.transfer_comp(need_tri_at(b, lcomp, lz, aa.edge, "(lcomp, lz, aa)"), un);
    return e.edge;
  };
  // e_m: (eps1, delta, e_m) and (gT, eps3, e_m)
  out.e_m = square(X.eps, w1.e_m, w2.e_m, Y.eps, Z.eps, w1.gT, gT.edge, w2.gT);
  // e_cl: (pP1_x, delta, e_cl) and (gP, pP1_z, e_cl)
  out.e_cl = square(X.pP1, w1.e_cl, w2.e_cl, Y.pP1, Z.pP1, w1.gP, gP.edge, w2.gP);
  // e_n: (cons1, delta, e_n) and (gP, cons3, e_n)
  out.e_n = square(X.cons, w1.e_n, w2.e_n, Y.cons, Z.cons, w1.gP, gP.edge, w2.gP);
  // e_ca: (pP2_x, gA, e_ca) and (gP, pP2_z, e_ca); right leg composes gA2
  {
    const auto e = b.compose(w1.e_ca, w2.gA);
    b.right_assoc(X.pP2, w1.gA, w2.gA, w1.e_ca, sA.edge, e.edge);
    const auto aa = b.compose(w1.gP, w2.e_ca);
    b.left_assoc(w1.gP, Y.pP2, w2.gA, w1.e_ca, w2.e_ca, aa.edge);
    const Idx un = b.unify_parallel(
        need_tri_at(b, w1.e_ca, w2.gA, aa.edge, "(e_ca1, gA2, aa)"),
        need_tri_at(b, w1.e_ca, w2.gA, e.edge, "(e_ca1, gA2, e)"));
    b.left_assoc(w1.gP, w2.gP, Z.pP2, gP.edge, w2.e_ca, aa.edge);
    b.transfer_comp(need_tri_at(b, gP.edge, Z.pP2, aa.edge, "(gP, pP2_z, aa)"), un);
    out.e_ca = e.edge;
  }
  return {dc.edge, dc.tri, ObjectEqualityWitness{out}};
}

ComposeOut compose_witnesses(DerivationBuilder& b, Idx g1,
                             const ObjectEqualityWitness& w1, Idx g2,
                             const ObjectEqualityWitness& w2) {
  // same-node on either side: compose and transport the other witness
  if (std::holds_alternative<WSameNode>(w1.v)) {
    const auto dc = b.compose(g1, g2);
    const Idx col = collapse(b, g1, w1);      // (id, id, g1)
    const Idx col_s = b.sym(col);             // (id, g1, id)
    const Idx un0 = b.replace_left(dc.tri, col_s);  // (id(X), g2, delta)
    // un0 is the unary g2 <| delta
    const auto wit = transport_witness(b, w2, g2, un0);
    return {dc.edge, dc.tri, wit};
  }
  if (std::holds_alternative<WSameNode>(w2.v)) {
    const auto dc = b.compose(g1, g2);
    const Idx col = collapse(b, g2, w2);
    const Idx col_s = b.sym(col);  // (id, g2, id)
    const Idx t = b.replace_right(dc.tri, col_s);   // (g1, id(Y), delta)
    const Idx un0 = b.sym(b.unit_transfer_rl(t));   // (id, g1, delta)
    const auto wit = transport_witness(b, w1, g1, un0);
    return {dc.edge, dc.tri, wit};
  }
  if (const auto* a = std::get_if<WTerminals>(&w1.v)) {
    const auto* c = std::get_if<WTerminals>(&w2.v);
    if (!c) closure_error("compose: mismatched witness kinds");
    const auto dc = b.compose(g1, g2);
    return {dc.edge, dc.tri, ObjectEqualityWitness{WTerminals{a->ut_x, c->ut_y}}};
  }
  if (const auto* a = std::get_if<WInitials>(&w1.v)) {
    const auto* c = std::get_if<WInitials>(&w2.v);
    if (!c) closure_error("compose: mismatched witness kinds");
    const auto dc = b.compose(g1, g2);
    return {dc.edge, dc.tri, ObjectEqualityWitness{WInitials{a->ui_x, c->ui_y}}};
  }
  if (const auto* a = std::get_if<WPullbacks>(&w1.v)) {
    const auto* c = std::get_if<WPullbacks>(&w2.v);
    if (!c) closure_error("compose: mismatched witness kinds");
    return compose_pullbacks(b, g1, *a, g2, *c);
  }
  if (const auto* a = std::get_if<WPushouts>(&w1.v)) {
    const auto* c = std::get_if<WPushouts>(&w2.v);
    if (!c) closure_error("compose: mismatched witness kinds");
    return compose_pushouts(b, g1, *a, g2, *c);
  }
  if (const auto* a = std::get_if<WLists>(&w1.v)) {
    const auto* c = std::get_if<WLists>(&w2.v);
    if (!c) closure_error("compose: mismatched witness kinds");
    return compose_lists(b, g1, *a, g2, *c);
  }
  closure_error("compose over this witness kind is not supported; "
                "supply an explicit derivation");
}

struct InvertOut {
  Idx edge;           // the inverse object equality
  Idx comm_fwd;       // (gamma, inverse, id(X))
  Idx comm_bwd;       // (inverse, gamma, id(Y))
  ObjectEqualityWitness witness;
};

InvertOut invert_witness(DerivationBuilder& b, Idx gamma, const ObjectEqualityWitness& w);

InvertOut invert_pullbacks(DerivationBuilder& b, Idx gamma, const WPullbacks& w) {
  const auto X = *pb_sh(b.sketch(), w.upb_x);
  const auto Y = *pb_sh(b.sketch(), w.upb_y);
  const std::array<Idx, 2> p = {X.p1, X.p2};
  const std::array<Idx, 2> u = {X.u1, X.u2};
  const std::array<Idx, 2> q = {Y.p1, Y.p2};
  const std::array<Idx, 2> v = {Y.u1, Y.u2};
  const std::array<Idx, 2> g = {w.g1, w.g2};
  const std::array<Idx, 2> ew = {w.e_w1, w.e_w2};
  const std::array<Idx, 2> ec = {w.e_c1, w.e_c2};

  const auto i1 = invert_witness(b, w.g1, *w.w1);
  const auto i2 = invert_witness(b, w.g2, *w.w2);
  const auto i3 = invert_witness(b, w.g3, *w.w3);
  const std::array<const InvertOut*, 2> invs = {&i1, &i2};
  const std::array<Idx, 2> inv = {i1.edge, i2.edge};

  std::array<Idx, 2> n{}, k{}, mp{}, cone{};
  for (int i = 0; i < 2; ++i) {
    const auto nc = b.compose(q[i], inv[i]);
    n[i] = nc.edge;
    const auto kc = b.compose(inv[i], u[i]);
    k[i] = kc.edge;
    const auto mc = b.compose(inv[i], ew[i]);
    // v_i <| m_i over the chain inv_i ; g_i ; v_i
    const Idx idV = b.sketch().n_id[b.sketch().e_cod[g[i]]];
    const Idx un_vm = b.left_assoc(inv[i], g[i], v[i], idV, ew[i], mc.edge);
    // (k_i, g3, m_i) over inv_i ; u_i ; g3
    b.left_assoc(inv[i], u[i], w.g3, k[i], ew[i], mc.edge);
    // (m_i, inv3, k_i) over k_i ; g3 ; inv3
    b.right_unit(k[i]);
    const Idx idU3 = b.sketch().n_id[b.sketch().e_dom[w.g3]];
    b.left_assoc(k[i], w.g3, i3.edge, mc.edge, idU3, k[i]);
    // (v_i, inv3, k_i)
    const Idx t_vk = b.replace_left(
        need_tri_at(b, mc.edge, i3.edge, k[i], "(m_i, inv3, k_i)"), b.sym(un_vm));
    (void)t_vk;
    // m'_i := q_i ; k_i, the candidate diagonal
    const auto mpc = b.compose(q[i], k[i]);
    mp[i] = mpc.edge;
    cone[i] = b.left_assoc(q[i], inv[i], u[i], n[i], k[i], mp[i]);
    // (py, inv3, m'_i) over q_i ; v_i ; inv3
    b.left_assoc(q[i], v[i], i3.edge, Y.p, k[i], mp[i]);
  }
  const Idx un_d = b.unify_parallel(
      need_tri_at(b, Y.p, i3.edge, mp[0], "(py, inv3, m'_0)"),
      need_tri_at(b, Y.p, i3.edge, mp[1], "(py, inv3, m'_1)"));
  const Idx cone1 = b.transfer_comp(cone[1], b.sym(un_d));

  const auto fill = b.apply(EqPullbackFillin{w.upb_x, cone[0], cone1});
  const Idx delta = fill.edges[0];

  WPullbacks rev;
  rev.upb_x = w.upb_y;
  rev.upb_y = w.upb_x;
  rev.g1 = inv[0];
  rev.g2 = inv[1];
  rev.g3 = i3.edge;
  rev.w1 = std::make_shared<ObjectEqualityWitness>(i1.witness);
  rev.w2 = std::make_shared<ObjectEqualityWitness>(i2.witness);
  rev.w3 = std::make_shared<ObjectEqualityWitness>(i3.witness);
  rev.e_w1 = k[0];
  rev.e_w2 = k[1];
  rev.e_c1 = n[0];
  rev.e_c2 = n[1];
  rev.e_d = mp[0];

  // gamma ; delta <| id(P_X)
  const auto cf = b.compose(gamma, delta);
  for (int i = 0; i < 2; ++i) {
    const auto cc = b.compose(gamma, n[i]);
    b.left_assoc(gamma, delta, p[i], cf.edge, n[i], cc.edge);   // (c, p_i, cc_i)
    b.left_assoc(gamma, q[i], inv[i], ec[i], n[i], cc.edge);    // (ec_i, inv_i, cc_i)
    b.right_unit(p[i]);
    b.left_assoc(p[i], g[i], inv[i], ec[i],
                 b.sketch().n_id[b.sketch().e_dom[g[i]]], p[i]);
    const Idx un = b.unify_parallel(
        need_tri_at(b, ec[i], inv[i], cc.edge, "(ec_i, inv_i, cc_i)"),
        need_tri_at(b, ec[i], inv[i], p[i], "(ec_i, inv_i, p_i)"));
    b.transfer_comp(need_tri_at(b, cf.edge, p[i], cc.edge, "(c, p_i, cc_i)"), un);
    b.left_unit(p[i]);
  }
  const Idx uf = b.apply(EqPullbackFillinUnique{w.upb_x, p[0], p[1], cf.edge,
                                                b.sketch().n_id[X.P]})
                     .tris[0];
  const Idx comm_fwd = b.transfer_comp(cf.tri, uf);

  // delta ; gamma <| id(P_Y)
  const auto cb = b.compose(delta, gamma);
  for (int i = 0; i < 2; ++i) {
    const auto dd = b.compose(delta, ec[i]);
    b.left_assoc(delta, gamma, q[i], cb.edge, ec[i], dd.edge);  // (d, q_i, dd_i)
    b.left_assoc(delta, p[i], g[i], n[i], ec[i], dd.edge);      // (n_i, g_i, dd_i)
    b.right_unit(q[i]);
    b.left_assoc(q[i], inv[i], g[i], n[i],
                 b.sketch().n_id[b.sketch().e_cod[g[i]]], q[i]);
    const Idx un = b.unify_parallel(
        need_tri_at(b, n[i], g[i], dd.edge, "(n_i, g_i, dd_i)"),
        need_tri_at(b, n[i], g[i], q[i], "(n_i, g_i, q_i)"));
    b.transfer_comp(need_tri_at(b, cb.edge, q[i], dd.edge, "(d, q_i, dd_i)"), un);
    b.left_unit(q[i]);
  }
  const Idx ub = b.apply(EqPullbackFillinUnique{w.upb_y, q[0], q[1], cb.edge,
                                                b.sketch().n_id[Y.P]})
                     .tris[0];
  const Idx comm_bwd = b.transfer_comp(cb.tri, ub);

  return {delta, comm_fwd, comm_bwd, ObjectEqualityWitness{rev}};
}

InvertOut invert_witness(DerivationBuilder& b, Idx gamma,
                         const ObjectEqualityWitness& w) {
  const Sketch& s0 = b.sketch();
  const Idx X = s0.e_dom[gamma];
  const Idx Y = s0.e_cod[gamma];
  if (const auto* c = std::get_if<WSameNode>(&w.v)) {
    // inverse is id(X); gamma ; id <| id and id ; gamma <| id via the witness
    const Idx idX = b.sketch().n_id[X];
    const Idx ru = b.right_unit(gamma);             // (gamma, id, gamma)
    const Idx fwd = b.transfer_comp(ru, c->comm);   // (gamma, id, id)
    const Idx lu = b.left_unit(gamma);              // (id, gamma, gamma)
    const Idx bwd = b.transfer_comp(lu, c->comm);   // (id, gamma, id)
    const Idx refl = b.left_unit(idX);              // (id, id, id)
    return {idX, fwd, bwd, ObjectEqualityWitness{WSameNode{refl}}};
  }
  if (const auto* c = std::get_if<WTerminals>(&w.v)) {
    const Idx inv = b.apply(EqTerminalFillin{c->ut_x, Y}).edges[0];
    const auto cf = b.compose(gamma, inv);  // X -> X
    const Idx uf = b.apply(EqTerminalFillinUnique{c->ut_x, cf.edge,
                                                  b.sketch().n_id[X]}).tris[0];
    const Idx fwd = b.transfer_comp(cf.tri, uf);
    const auto cb = b.compose(inv, gamma);  // Y -> Y
    const Idx ub = b.apply(EqTerminalFillinUnique{c->ut_y, cb.edge,
                                                  b.sketch().n_id[Y]}).tris[0];
    const Idx bwd = b.transfer_comp(cb.tri, ub);
    return {inv, fwd, bwd, ObjectEqualityWitness{WTerminals{c->ut_y, c->ut_x}}};
  }
  if (const auto* c = std::get_if<WInitials>(&w.v)) {
    const Idx inv = b.apply(EqInitialFillin{c->ui_y, X}).edges[0];
    const auto cf = b.compose(gamma, inv);
    const Idx uf = b.apply(EqInitialFillinUnique{c->ui_x, cf.edge,
                                                 b.sketch().n_id[X]}).tris[0];
    const Idx fwd = b.transfer_comp(cf.tri, uf);
    const auto cb = b.compose(inv, gamma);
    const Idx ub = b.apply(EqInitialFillinUnique{c->ui_y, cb.edge,
                                                 b.sketch().n_id[Y]}).tris[0];
    const Idx bwd = b.transfer_comp(cb.tri, ub);
    return {inv, fwd, bwd, ObjectEqualityWitness{WInitials{c->ui_y, c->ui_x}}};
  }
  if (const auto* c = std::get_if<WPullbacks>(&w.v)) return invert_pullbacks(b, gamma, *c);
  closure_error("invert over this witness kind is not supported; "
                "supply an explicit derivation");
}

// gamma <| gamma2 for parallel object equalities, recursive on witnesses
Idx unify_witnesses(DerivationBuilder& b, Idx gamma, const ObjectEqualityWitness& w,
                    Idx gamma2, const ObjectEqualityWitness& w2) {
  if (gamma == gamma2) return b.refl(gamma);
  if (const auto* a = std::get_if<WSameNode>(&w.v)) {
    const auto* c = std::get_if<WSameNode>(&w2.v);
    if (!c) closure_error("parallel-unify: mismatched witness kinds");
    return b.trans(a->comm, b.sym(c->comm));  // (id,g,id);(id,id,g2) -> (id,g,g2)
  }
  if (const auto* a = std::get_if<WTerminals>(&w.v)) {
    if (!std::holds_alternative<WTerminals>(w2.v))
      closure_error("parallel-unify: mismatched witness kinds");
    return b.apply(EqTerminalFillinUnique{a->ut_y, gamma, gamma2}).tris[0];
  }
  if (const auto* a = std::get_if<WInitials>(&w.v)) {
    if (!std::holds_alternative<WInitials>(w2.v))
      closure_error("parallel-unify: mismatched witness kinds");
    return b.apply(EqInitialFillinUnique{a->ui_x, gamma, gamma2}).tris[0];
  }
  if (const auto* a = std::get_if<WPullbacks>(&w.v)) {
    const auto* c = std::get_if<WPullbacks>(&w2.v);
    if (!c) closure_error("parallel-unify: mismatched witness kinds");
    if (a->upb_y != c->upb_y)
      closure_error("parallel-unify: witnesses target different universals");
    const auto Y = *pb_sh(b.sketch(), a->upb_y);
    const auto X = *pb_sh(b.sketch(), a->upb_x);
    const std::array<Idx, 2> q = {Y.p1, Y.p2};
    const std::array<Idx, 2> p = {X.p1, X.p2};
    const std::array<Idx, 2> ga = {a->g1, a->g2};
    const std::array<Idx, 2> gc = {c->g1, c->g2};
    const std::array<Idx, 2> eca = {a->e_c1, a->e_c2};
    const std::array<Idx, 2> ecc = {c->e_c1, c->e_c2};
    const std::array<const WitnessPtr*, 2> wa = {&a->w1, &a->w2};
    const std::array<const WitnessPtr*, 2> wc = {&c->w1, &c->w2};
    for (int i = 0; i < 2; ++i) {
      const Idx un_g = unify_witnesses(b, ga[i], **wa[i], gc[i], **wc[i]);
      const Idx t = b.replace_right(
          need_tri_at(b, p[i], ga[i], eca[i], "(p_i, g_i, e_c_i)"), un_g);
      const Idx ue = b.unify_parallel(
          t, need_tri_at(b, p[i], gc[i], ecc[i], "(p_i, g'_i, e'_c_i)"));
      b.transfer_comp(need_tri_at(b, gamma2, q[i], ecc[i], "(gamma', q_i, e'_c_i)"),
                      b.sym(ue));
    }
    return b.apply(EqPullbackFillinUnique{a->upb_y, eca[0], eca[1], gamma, gamma2})
        .tris[0];
  }
  if (const auto* a = std::get_if<WPushouts>(&w.v)) {
    const auto* c = std::get_if<WPushouts>(&w2.v);
    if (!c) closure_error("parallel-unify: mismatched witness kinds");
    if (a->upo_x != c->upo_x)
      closure_error("parallel-unify: witnesses start at different universals");
    const auto X = *po_sh(b.sketch(), a->upo_x);
    const auto Y = *po_sh(b.sketch(), a->upo_y);
    const std::array<Idx, 2> j = {X.j1, X.j2};
    const std::array<Idx, 2> k = {Y.j1, Y.j2};
    const std::array<Idx, 2> ga = {a->g1, a->g2};
    const std::array<Idx, 2> gc = {c->g1, c->g2};
    const std::array<Idx, 2> eca = {a->e_c1, a->e_c2};
    const std::array<Idx, 2> ecc = {c->e_c1, c->e_c2};
    const std::array<const WitnessPtr*, 2> wa = {&a->w1, &a->w2};
    const std::array<const WitnessPtr*, 2> wc = {&c->w1, &c->w2};
    for (int i = 0; i < 2; ++i) {
      const Idx un_g = unify_witnesses(b, ga[i], **wa[i], gc[i], **wc[i]);
      const Idx t = b.replace_left(
          need_tri_at(b, ga[i], k[i], eca[i], "(g_i, k_i, e_c_i)"), un_g);
      const Idx ue = b.unify_parallel(
          t, need_tri_at(b, gc[i], k[i], ecc[i], "(g'_i, k_i, e'_c_i)"));
      b.transfer_comp(need_tri_at(b, j[i], gamma2, ecc[i], "(j_i, gamma', e'_c_i)"),
                      b.sym(ue));
    }
    return b.apply(EqPushoutFillinUnique{a->upo_x, eca[0], eca[1], gamma, gamma2})
        .tris[0];
  }
  closure_error("parallel-unify over this witness kind is not supported; "
                "supply an explicit derivation");
}

}  // namespace

ClosureResult objeq_identity_collapse(const Sketch& s, Idx gamma,
                                      const ObjectEqualityWitness& w) {
  require_verified(s, gamma, w);
  if (s.e_dom[gamma] != s.e_cod[gamma])
    throw KernelError("objeq_closure: identity-collapse needs an endo object equality");
  DerivationBuilder b(s);
  ClosureResult out;
  out.comm = collapse(b, gamma, w);
  out.ext = b.extension();
  return out;
}

ClosureResult objeq_compose(const Sketch& s, Idx g1, const ObjectEqualityWitness& w1,
                            Idx g2, const ObjectEqualityWitness& w2) {
  require_verified(s, g1, w1);
  require_verified(s, g2, w2);
  if (s.e_cod[g1] != s.e_dom[g2])
    throw KernelError("objeq_closure: compose: object equalities do not meet");
  DerivationBuilder b(s);
  const auto r = compose_witnesses(b, g1, w1, g2, w2);
  ClosureResult out;
  out.ext = b.extension();
  out.edge = r.edge;
  out.comm = r.comm;
  out.witness = r.witness;
  if (auto msg = object_equality_failure(b.sketch(), r.edge, *out.witness))
    throw KernelError("objeq_closure: internal: composite witness does not verify: " +
                      *msg);
  return out;
}

ClosureResult objeq_invert(const Sketch& s, Idx gamma, const ObjectEqualityWitness& w) {
  require_verified(s, gamma, w);
  DerivationBuilder b(s);
  const auto r = invert_witness(b, gamma, w);
  ClosureResult out;
  out.ext = b.extension();
  out.edge = r.edge;
  out.comm = r.comm_fwd;
  out.witness = r.witness;
  if (auto msg = object_equality_failure(b.sketch(), r.edge, *out.witness))
    throw KernelError("objeq_closure: internal: inverse witness does not verify: " +
                      *msg);
  return out;
}

ClosureResult objeq_parallel_unify(const Sketch& s, Idx gamma,
                                   const ObjectEqualityWitness& w, Idx gamma2,
                                   const ObjectEqualityWitness& w2) {
  require_verified(s, gamma, w);
  require_verified(s, gamma2, w2);
  if (s.e_dom[gamma] != s.e_dom[gamma2] || s.e_cod[gamma] != s.e_cod[gamma2])
    throw KernelError("objeq_closure: parallel-unify: object equalities are not parallel");
  DerivationBuilder b(s);
  ClosureResult out;
  out.comm = unify_witnesses(b, gamma, w, gamma2, w2);
  out.ext = b.extension();
  return out;
}

// ---- bounded search -----------------------------------------------------------

namespace {

std::optional<Idx> find_terminal_at(const Sketch& s, Idx node) {
  for (Idx u = 0; u < s.ut_count(); ++u)
    if (s.ut_n[u] == node) return u;
  return std::nullopt;
}

std::optional<Idx> find_initial_at(const Sketch& s, Idx node) {
  for (Idx u = 0; u < s.ui_count(); ++u)
    if (s.ui_n[u] == node) return u;
  return std::nullopt;
}

std::optional<Idx> find_pullback_at(const Sketch& s, Idx node) {
  for (Idx u = 0; u < s.upb_count(); ++u)
    if (s.e_dom[s.tri_l[s.upb_tri1[u]]] == node) return u;
  return std::nullopt;
}

std::optional<Idx> find_pushout_at(const Sketch& s, Idx node) {
  for (Idx u = 0; u < s.upo_count(); ++u)
    if (s.e_cod[s.tri_r[s.upo_tri1[u]]] == node) return u;
  return std::nullopt;
}

// gamma_i := id with a same-node witness; returns the witness
ObjectEqualityWitness refl_witness(DerivationBuilder& b, Idx node) {
  const Idx comm = b.ensure_refl(b.sketch().n_id[node]);
  return ObjectEqualityWitness{WSameNode{comm}};
}

bool search_in(DerivationBuilder& b, Idx x, Idx y, unsigned depth,
               WitnessSearchResult& out);

// pullback universals over literally identical cospans
bool search_pullbacks(DerivationBuilder& b, Idx wx, Idx wy, WitnessSearchResult& out) {
  const auto X = *pb_sh(b.sketch(), wx);
  const auto Y = *pb_sh(b.sketch(), wy);
  if (X.u1 != Y.u1 || X.u2 != Y.u2) return false;
  WPullbacks w;
  w.upb_x = wx;
  w.upb_y = wy;
  const std::array<Idx, 2> p = {X.p1, X.p2};
  const std::array<Idx, 2> u = {X.u1, X.u2};
  std::array<Idx, 2> e_w{}, e_c{};
  w.g1 = b.sketch().n_id[X.U1];
  w.g2 = b.sketch().n_id[X.U2];
  w.g3 = b.sketch().n_id[X.U3];
  w.w1 = std::make_shared<ObjectEqualityWitness>(refl_witness(b, X.U1));
  w.w2 = std::make_shared<ObjectEqualityWitness>(refl_witness(b, X.U2));
  w.w3 = std::make_shared<ObjectEqualityWitness>(refl_witness(b, X.U3));
  for (int i = 0; i < 2; ++i) {
    // e_w_i := u_i ; id(U3), both commutativities by unit transfer
    const auto cw = b.compose(u[i], w.g3);
    b.sym(b.unit_transfer_rl(cw.tri));  // (id(U_i), u_i, e_w_i)
    e_w[i] = cw.edge;
    // e_c_i := p_i ; id(U_i)
    const auto cc = b.compose(p[i], b.sketch().n_id[i == 0 ? X.U1 : X.U2]);
    const Idx un = b.sym(b.unit_transfer_rl(cc.tri));  // (id, p_i, e_c_i)
    // (e_c_i, u_i, px)
    b.replace_left(i == 0 ? X.t1 : X.t2, un);
    e_c[i] = cc.edge;
  }
  const Idx d1 = need_tri_at(b, e_c[0], u[0], X.p, "(e_c1, u1, px)");
  const Idx d2 = need_tri_at(b, e_c[1], u[1], X.p, "(e_c2, u2, px)");
  const auto fill = b.apply(EqPullbackFillin{wy, d1, d2});
  w.e_w1 = e_w[0];
  w.e_w2 = e_w[1];
  w.e_c1 = e_c[0];
  w.e_c2 = e_c[1];
  w.e_d = X.p;
  out.outcome = SearchOutcome::Proved;
  out.edge = fill.edges[0];
  out.witness = ObjectEqualityWitness{w};
  return true;
}

// pushout universals over literally identical spans
bool search_pushouts(DerivationBuilder& b, Idx wx, Idx wy, WitnessSearchResult& out) {
  const auto X = *po_sh(b.sketch(), wx);
  const auto Y = *po_sh(b.sketch(), wy);
  if (X.a1 != Y.a1 || X.a2 != Y.a2) return false;
  WPushouts w;
  w.upo_x = wx;
  w.upo_y = wy;
  const std::array<Idx, 2> a = {X.a1, X.a2};
  const std::array<Idx, 2> k = {Y.j1, Y.j2};
  w.g1 = b.sketch().n_id[X.A1];
  w.g2 = b.sketch().n_id[X.A2];
  w.g3 = b.sketch().n_id[X.A3];
  w.w1 = std::make_shared<ObjectEqualityWitness>(refl_witness(b, X.A1));
  w.w2 = std::make_shared<ObjectEqualityWitness>(refl_witness(b, X.A2));
  w.w3 = std::make_shared<ObjectEqualityWitness>(refl_witness(b, X.A3));
  const auto fill = b.apply(EqPushoutFillin{wx, Y.t1, Y.t2});
  const Idx gamma = fill.edges[0];  // with (j_i, gamma, k_i)
  std::array<Idx, 2> e_w{}, e_c{};
  for (int i = 0; i < 2; ++i) {
    // e_w_i := id(A3) ; a_i
    const auto cw = b.compose(w.g3, a[i]);
    b.unit_transfer_lr(b.sym(cw.tri));  // (a_i, id(A_i), e_w_i)
    e_w[i] = cw.edge;
    // e_c_i := id(A_i) ; k_i
    const auto cc = b.compose(i == 0 ? w.g1 : w.g2, k[i]);
    e_c[i] = cc.edge;
    b.transfer_comp(need_tri_at(b, i == 0 ? X.j1 : X.j2, gamma, k[i],
                                "(j_i, gamma, k_i)"),
                    cc.tri);  // (j_i, gamma, e_c_i)
    // (a_i, e_c_i, jy): replace the right leg of the Y triangle
    b.replace_right(i == 0 ? Y.t1 : Y.t2, cc.tri);
  }
  w.e_w1 = e_w[0];
  w.e_w2 = e_w[1];
  w.e_c1 = e_c[0];
  w.e_c2 = e_c[1];
  w.e_d = Y.j;
  out.outcome = SearchOutcome::Proved;
  out.edge = gamma;
  out.witness = ObjectEqualityWitness{w};
  return true;
}

bool search_in(DerivationBuilder& b, Idx x, Idx y, unsigned depth,
               WitnessSearchResult& out) {
  if (depth == 0) return false;
  const Sketch& s = b.sketch();
  if (x == y) {
    const Idx comm = b.ensure_refl(s.n_id[x]);
    out.outcome = SearchOutcome::Proved;
    out.edge = b.sketch().n_id[x];
    out.witness = ObjectEqualityWitness{WSameNode{comm}};
    return true;
  }
  if (auto utx = find_terminal_at(s, x)) {
    if (auto uty = find_terminal_at(s, y)) {
      const Idx e = b.apply(EqTerminalFillin{*uty, x}).edges[0];
      out.outcome = SearchOutcome::Proved;
      out.edge = e;
      out.witness = ObjectEqualityWitness{WTerminals{*utx, *uty}};
      return true;
    }
  }
  if (auto uix = find_initial_at(s, x)) {
    if (auto uiy = find_initial_at(s, y)) {
      const Idx e = b.apply(EqInitialFillin{*uix, y}).edges[0];
      out.outcome = SearchOutcome::Proved;
      out.edge = e;
      out.witness = ObjectEqualityWitness{WInitials{*uix, *uiy}};
      return true;
    }
  }
  if (auto wx = find_pullback_at(s, x)) {
    if (auto wy = find_pullback_at(s, y)) {
      if (search_pullbacks(b, *wx, *wy, out)) return true;
    }
  }
  if (auto wx = find_pushout_at(s, x)) {
    if (auto wy = find_pushout_at(s, y)) {
      if (search_pushouts(b, *wx, *wy, out)) return true;
    }
  }
  return false;
}

}  // namespace

std::optional<std::pair<Idx, ObjectEqualityWitness>> search_object_equality_in(
    DerivationBuilder& b, Idx x, Idx y, unsigned depth) {
  WitnessSearchResult out;
  if (!search_in(b, x, y, depth, out)) return std::nullopt;
  return std::pair<Idx, ObjectEqualityWitness>{out.edge, *out.witness};
}

WitnessSearchResult search_object_equality(const Sketch& s, Idx x, Idx y,
                                           unsigned depth) {
  WitnessSearchResult out;
  if (x >= s.node_count() || y >= s.node_count())
    throw KernelError("search_object_equality: node out of range");
  DerivationBuilder b(s);
  if (search_in(b, x, y, depth, out)) {
    out.ext = b.extension();
    if (auto msg = object_equality_failure(b.sketch(), out.edge, *out.witness))
      throw KernelError("search_object_equality: internal: witness does not verify: " +
                        *msg);
    return out;
  }
  out.outcome = SearchOutcome::NotProved;
  out.ext = EqExtension{s, {}};
  return out;
}

// ---- objective equality ---------------------------------------------------------

std::optional<std::string> objective_equality_failure(
    const Context& t1, const SketchHom& f0, const SketchHom& f1,
    const ObjectiveEqualityCertificate& cert) {
  if (!(f0.source == t1.apex) || !(f1.source == t1.apex))
    return "homomorphisms are not from the given context";
  if (!(f0.target == f1.target)) return "homomorphisms have different targets";
  if (!(cert.ext.base == f0.target)) return "certificate extension has the wrong base";
  EqApplyResult applied;
  try {
    applied = apply_eq_extension(cert.ext);
  } catch (const KernelError& err) {
    return std::string("certificate extension does not check: ") + err.what();
  }
  const auto ar = build_arrow_context(t1);
  if (!(cert.gamma.source == ar.ctx.apex))
    return "certificate 2-cell is not over the hom context";
  if (!(cert.gamma.target == applied.result))
    return "certificate 2-cell does not land in the extension apex";
  if (!validate_hom(cert.gamma).ok()) return "certificate 2-cell is not a homomorphism";
  const auto lift0 = compose_hom(f0, applied.inclusion);
  const auto lift1 = compose_hom(f1, applied.inclusion);
  if (!hom_equal(compose_hom(ar.i0, cert.gamma), lift0))
    return "2-cell domain differs from f0";
  if (!hom_equal(compose_hom(ar.i1, cert.gamma), lift1))
    return "2-cell codomain differs from f1";
  if (cert.node_witness.size() != t1.apex.node_count())
    return "certificate carries the wrong number of node witnesses";
  for (Idx x = 0; x < t1.apex.node_count(); ++x) {
    const Idx carrier = cert.gamma.e[ar.theta_node[x]];
    if (auto msg = object_equality_failure(applied.result, carrier, cert.node_witness[x]))
      return "carrier edge of node " + std::to_string(x) + ": " + *msg;
  }
  return std::nullopt;
}

bool verify_objective_equality(const Context& t1, const SketchHom& f0,
                               const SketchHom& f1,
                               const ObjectiveEqualityCertificate& cert) {
  return !objective_equality_failure(t1, f0, f1, cert).has_value();
}

ObjectiveEqualityCertificate trivial_certificate(const Context& t1, const SketchHom& f) {
  const auto ar = build_arrow_context(t1);
  const auto idc = identity_two_cell(ar, f);
  ObjectiveEqualityCertificate cert;
  cert.ext = idc.ext;
  cert.gamma = idc.alpha;
  const Sketch& apex = idc.alpha.target;
  for (Idx x = 0; x < t1.apex.node_count(); ++x) {
    const Idx id_edge = apex.n_id[f.n[x]];
    const auto comm = apex.find_triangle(id_edge, id_edge, id_edge);
    if (!comm)
      throw KernelError("trivial_certificate: missing reflexivity commutativity");
    cert.node_witness.push_back(ObjectEqualityWitness{WSameNode{*comm}});
  }
  return cert;
}

}  // namespace auk
