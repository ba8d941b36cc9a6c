#include "auk/conmap.hpp"

namespace auk {

namespace {

[[noreturn]] void tp_error(const std::string& what) {
  throw KernelError("transport_two_cell: " + what);
}

// Carries the evolving state of the transport construction: theta carriers
// for every node and edge of the growing T1-prefix, all living in the
// derivation over T0.
struct Transporter {
  DerivationBuilder& b;
  const SketchHom& f0;  // apex(e1) -> T0
  const SketchHom& f1;
  Sketch prefix;        // grows from t1.apex to apex(e1)
  std::vector<Idx> thn; // per prefix node
  std::vector<Idx> the; // per prefix edge

  Idx f0e(Idx u) const { return f0.e[u]; }
  Idx f1e(Idx u) const { return f1.e[u]; }
  Idx f0n(Idx x) const { return f0.n[x]; }
  Idx f1n(Idx x) const { return f1.n[x]; }
  Idx id0(Idx x) const { return b.sketch().n_id[f0n(x)]; }
  Idx id1(Idx x) const { return b.sketch().n_id[f1n(x)]; }

  Idx tri(Idx l, Idx r, Idx c, const char* what) const {
    if (auto t = b.find_tri(l, r, c)) return *t;
    tp_error(std::string("missing commutativity ") + what);
  }

  // theta for an identity edge: reuse the node theta, squares by unit laws
  void push_identity_theta(Idx node) {
    b.left_unit(thn[node]);
    b.right_unit(thn[node]);
    the.push_back(thn[node]);
  }

  void composition(const EqComposition& c, const StepDelta& d) {
    const Idx X = prefix.e_dom[c.u];
    const Idx Y = prefix.e_cod[c.u];
    const Idx Z = prefix.e_cod[c.v];
    const Idx w = d.edges[0];
    const auto m1 = b.compose(f0e(c.u), the[c.v]);
    b.left_assoc(f0e(c.u), f0e(c.v), thn[Z], f0e(w), the[c.v], m1.edge);
    b.left_assoc(f0e(c.u), thn[Y], f1e(c.v), the[c.u], the[c.v], m1.edge);
    b.right_assoc(thn[X], f1e(c.u), f1e(c.v), the[c.u], f1e(w), m1.edge);
    the.push_back(m1.edge);
  }

  void univ_terminal(const StepDelta& d) {
    const Idx T = d.nodes[0];
    const Idx theta = b.apply(EqTerminalFillin{f1.ut[d.uts[0]], f0n(T)}).edges[0];
    thn.push_back(theta);
    push_identity_theta(T);
  }

  void univ_initial(const StepDelta& d) {
    const Idx Z = d.nodes[0];
    const Idx theta = b.apply(EqInitialFillin{f0.ui[d.uis[0]], f1n(Z)}).edges[0];
    thn.push_back(theta);
    push_identity_theta(Z);
  }

  void univ_pullback(const AddPullback& st, const StepDelta& d) {
    const Idx P = d.nodes[0];
    const std::array<Idx, 2> u = {st.u1, st.u2};
    const std::array<Idx, 2> p = {d.edges[0], d.edges[2]};
    const Idx diag = d.edges[1];
    const std::array<Idx, 2> U = {prefix.e_dom[st.u1], prefix.e_dom[st.u2]};
    const Idx U3 = prefix.e_cod[st.u1];
    std::array<Idx, 2> cone{}, c{};
    std::array<Idx, 2> dd{};
    for (int i = 0; i < 2; ++i) {
      c[i] = b.compose(f0e(p[i]), thn[U[i]]).edge;
      dd[i] = b.compose(f0e(p[i]), the[u[i]]).edge;
      cone[i] = b.left_assoc(f0e(p[i]), thn[U[i]], f1e(u[i]), c[i], the[u[i]], dd[i]);
      b.left_assoc(f0e(p[i]), f0e(u[i]), thn[U3], f0e(diag), the[u[i]], dd[i]);
    }
    const Idx un = b.unify_parallel(
        tri(f0e(diag), thn[U3], dd[0], "(f0 p, theta, dd0)"),
        tri(f0e(diag), thn[U3], dd[1], "(f0 p, theta, dd1)"));
    const Idx cone1 = b.transfer_comp(cone[1], b.sym(un));
    const auto fill = b.apply(EqPullbackFillin{f1.upb[d.upbs[0]], cone[0], cone1});
    const Idx thetaP = fill.edges[0];
    // (thetaP, f1 diag, dd0)
    b.right_assoc(thetaP, f1e(p[0]), f1e(u[0]), c[0], f1e(diag), dd[0]);
    thn.push_back(thetaP);
    the.push_back(c[0]);
    the.push_back(dd[0]);
    the.push_back(c[1]);
    push_identity_theta(P);
  }

  void univ_pushout(const AddPushout& st, const StepDelta& d) {
    const Idx Q = d.nodes[0];
    const std::array<Idx, 2> u = {st.u1, st.u2};
    const std::array<Idx, 2> j = {d.edges[0], d.edges[2]};
    const Idx diag = d.edges[1];
    const std::array<Idx, 2> Y = {prefix.e_cod[st.u1], prefix.e_cod[st.u2]};
    const Idx W = prefix.e_dom[st.u1];
    std::array<Idx, 2> cone{}, c{}, dd{};
    for (int i = 0; i < 2; ++i) {
      c[i] = b.compose(thn[Y[i]], f1e(j[i])).edge;
      dd[i] = b.compose(the[u[i]], f1e(j[i])).edge;
      cone[i] = b.right_assoc(f0e(u[i]), thn[Y[i]], f1e(j[i]), the[u[i]], c[i], dd[i]);
      b.right_assoc(thn[W], f1e(u[i]), f1e(j[i]), the[u[i]], f1e(diag), dd[i]);
    }
    const Idx un = b.unify_parallel(
        tri(thn[W], f1e(diag), dd[0], "(theta W, f1 j, dd0)"),
        tri(thn[W], f1e(diag), dd[1], "(theta W, f1 j, dd1)"));
    const Idx cone1 = b.transfer_comp(cone[1], b.sym(un));
    const auto fill = b.apply(EqPushoutFillin{f0.upo[d.upos[0]], cone[0], cone1});
    const Idx thetaQ = fill.edges[0];
    // (f0 diag, thetaQ, dd0)
    b.left_assoc(f0e(u[0]), f0e(j[0]), thetaQ, f0e(diag), c[0], dd[0]);
    thn.push_back(thetaQ);
    the.push_back(c[0]);
    the.push_back(dd[0]);
    the.push_back(c[1]);
    push_identity_theta(Q);
  }

  void pb_fillin(const EqPullbackFillin& st, const StepDelta& d) {
    const Idx t1 = prefix.upb_tri1[st.upb];
    const Idx t2 = prefix.upb_tri2[st.upb];
    const std::array<Idx, 2> p = {prefix.tri_l[t1], prefix.tri_l[t2]};
    const std::array<Idx, 2> v = {prefix.tri_l[st.d1], prefix.tri_l[st.d2]};
    const Idx P = prefix.e_dom[p[0]];
    const Idx Y = prefix.e_dom[v[0]];
    const std::array<Idx, 2> U = {prefix.e_cod[p[0]], prefix.e_cod[p[1]]};
    const Idx w = d.edges[0];
    const auto theta = b.compose(thn[Y], f1e(w));
    const auto cP = b.compose(f0e(w), thn[P]);
    for (int i = 0; i < 2; ++i) {
      const auto x = b.compose(f0e(w), the[p[i]]);
      b.left_assoc(f0e(w), thn[P], f1e(p[i]), cP.edge, the[p[i]], x.edge);
      b.left_assoc(f0e(w), f0e(p[i]), thn[U[i]], f0e(v[i]), the[p[i]], x.edge);
      const Idx unx = b.unify_parallel(
          tri(f0e(v[i]), thn[U[i]], x.edge, "(f0 v, theta, x)"),
          tri(f0e(v[i]), thn[U[i]], the[v[i]], "square0 of v"));
      b.transfer_comp(tri(cP.edge, f1e(p[i]), x.edge, "(cP, f1 p, x)"), unx);
      const auto y = b.compose(thn[Y], f1e(v[i]));
      b.left_assoc(thn[Y], f1e(w), f1e(p[i]), theta.edge, f1e(v[i]), y.edge);
      const Idx uny = b.unify_parallel(
          tri(thn[Y], f1e(v[i]), y.edge, "(theta Y, f1 v, y)"),
          tri(thn[Y], f1e(v[i]), the[v[i]], "square1 of v"));
      b.transfer_comp(tri(theta.edge, f1e(p[i]), y.edge, "(theta w, f1 p, y)"), uny);
    }
    const Idx uf = b.apply(EqPullbackFillinUnique{f1.upb[st.upb], the[v[0]], the[v[1]],
                                                  cP.edge, theta.edge})
                       .tris[0];
    b.transfer_comp(cP.tri, uf);
    the.push_back(theta.edge);
  }

  void po_fillin(const EqPushoutFillin& st, const StepDelta& d) {
    const Idx t1 = prefix.upo_tri1[st.upo];
    const Idx t2 = prefix.upo_tri2[st.upo];
    const std::array<Idx, 2> j = {prefix.tri_r[t1], prefix.tri_r[t2]};
    const std::array<Idx, 2> v = {prefix.tri_r[st.d1], prefix.tri_r[st.d2]};
    const Idx Q = prefix.e_cod[j[0]];
    const Idx Z = prefix.e_cod[v[0]];
    const std::array<Idx, 2> Y = {prefix.e_dom[j[0]], prefix.e_dom[j[1]]};
    const Idx w = d.edges[0];
    const auto theta = b.compose(f0e(w), thn[Z]);
    const auto cQ = b.compose(thn[Q], f1e(w));
    for (int i = 0; i < 2; ++i) {
      const auto x = b.compose(the[j[i]], f1e(w));
      b.right_assoc(f0e(j[i]), thn[Q], f1e(w), the[j[i]], cQ.edge, x.edge);
      b.right_assoc(thn[Y[i]], f1e(j[i]), f1e(w), the[j[i]], f1e(v[i]), x.edge);
      const Idx unx = b.unify_parallel(
          tri(thn[Y[i]], f1e(v[i]), x.edge, "(theta Y, f1 v, x)"),
          tri(thn[Y[i]], f1e(v[i]), the[v[i]], "square1 of v"));
      b.transfer_comp(tri(f0e(j[i]), cQ.edge, x.edge, "(f0 j, cQ, x)"), unx);
      const auto y = b.compose(f0e(v[i]), thn[Z]);
      b.right_assoc(f0e(j[i]), f0e(w), thn[Z], f0e(v[i]), theta.edge, y.edge);
      const Idx uny = b.unify_parallel(
          tri(f0e(v[i]), thn[Z], y.edge, "(f0 v, theta Z, y)"),
          tri(f0e(v[i]), thn[Z], the[v[i]], "square0 of v"));
      b.transfer_comp(tri(f0e(j[i]), theta.edge, y.edge, "(f0 j, theta w, y)"), uny);
    }
    const Idx uf = b.apply(EqPushoutFillinUnique{f0.upo[st.upo], the[v[0]], the[v[1]],
                                                 cQ.edge, theta.edge})
                       .tris[0];
    b.transfer_comp(cQ.tri, uf);
    the.push_back(theta.edge);
  }

  void term_fillin(const EqTerminalFillin& st, const StepDelta& d) {
    const Idx T = prefix.ut_n[st.ut];
    const Idx w = d.edges[0];
    const auto theta = b.compose(thn[st.node], f1e(w));
    const auto c = b.compose(f0e(w), thn[T]);
    const Idx uf =
        b.apply(EqTerminalFillinUnique{f1.ut[st.ut], c.edge, theta.edge}).tris[0];
    b.transfer_comp(c.tri, uf);
    the.push_back(theta.edge);
  }

  void init_fillin(const EqInitialFillin& st, const StepDelta& d) {
    const Idx Z = prefix.ui_n[st.ui];
    const Idx w = d.edges[0];
    const auto theta = b.compose(f0e(w), thn[st.node]);
    const auto c = b.compose(thn[Z], f1e(w));
    const Idx uf =
        b.apply(EqInitialFillinUnique{f0.ui[st.ui], c.edge, theta.edge}).tris[0];
    b.transfer_comp(c.tri, uf);
    the.push_back(theta.edge);
  }

  void inversion(Idx z, const StepDelta& d) {
    const Idx X = prefix.e_dom[z];
    const Idx Y = prefix.e_cod[z];
    const Idx inv = d.edges[0];
    const auto m = b.compose(f0e(inv), thn[X]);
    const auto n1 = b.compose(f0e(inv), the[z]);
    b.left_assoc(f0e(inv), f0e(z), thn[Y], id0(Y), the[z], n1.edge);
    b.left_assoc(f0e(inv), thn[X], f1e(z), m.edge, the[z], n1.edge);
    b.right_unit(m.edge);
    b.left_assoc(m.edge, f1e(z), f1e(inv), n1.edge, id1(X), m.edge);
    const auto l2 = b.compose(thn[Y], f1e(inv));
    b.right_assoc(id0(Y), thn[Y], f1e(inv), n1.edge, l2.edge, m.edge);
    b.left_unit(thn[Y]);
    b.left_assoc(id0(Y), thn[Y], f1e(inv), thn[Y], l2.edge, m.edge);
    the.push_back(m.edge);
  }

  void step(const EqStep& st) {
    auto [next, d] = apply_eq_step(prefix, st);
    if (const auto* c = std::get_if<EqComposition>(&st)) {
      composition(*c, d);
    } else if (const auto* c = std::get_if<EqUnivIntro>(&st)) {
      if (std::holds_alternative<AddTerminal>(c->step)) {
        univ_terminal(d);
      } else if (std::holds_alternative<AddInitial>(c->step)) {
        univ_initial(d);
      } else if (const auto* pb = std::get_if<AddPullback>(&c->step)) {
        univ_pullback(*pb, d);
      } else if (const auto* po = std::get_if<AddPushout>(&c->step)) {
        univ_pushout(*po, d);
      } else {
        tp_error("transport over a list universal is not implemented; "
                 "supply an explicit derivation");
      }
    } else if (const auto* c = std::get_if<EqPullbackFillin>(&st)) {
      pb_fillin(*c, d);
    } else if (const auto* c = std::get_if<EqPushoutFillin>(&st)) {
      po_fillin(*c, d);
    } else if (const auto* c = std::get_if<EqTerminalFillin>(&st)) {
      term_fillin(*c, d);
    } else if (const auto* c = std::get_if<EqInitialFillin>(&st)) {
      init_fillin(*c, d);
    } else if (const auto* c = std::get_if<EqBalance>(&st)) {
      inversion(c->u, d);
    } else if (const auto* c = std::get_if<EqInitStability>(&st)) {
      inversion(c->u, d);
    } else if (const auto* c = std::get_if<EqPushoutStability>(&st)) {
      inversion(c->cfg.e, d);
    } else if (const auto* c = std::get_if<EqExactness>(&st)) {
      inversion(c->cfg.e, d);
    } else if (std::holds_alternative<EqListFillin>(st)) {
      tp_error("transport over a list fillin is not implemented; "
               "supply an explicit derivation");
    }
    // the remaining rules adjoin commutativities only
    prefix = std::move(next);
  }
};

}  // namespace

TransportResult transport_two_cell(const Context& t1, const EqExtension& e1,
                                   const SketchHom& f0, const SketchHom& f1,
                                   const SketchHom& alpha) {
  if (!(e1.base == t1.apex)) tp_error("extension base differs from the context apex");
  const auto applied = apply_eq_extension(e1);
  if (!(f0.source == applied.result) || !(f1.source == applied.result))
    tp_error("homomorphisms must start at the extension apex");
  if (!(f0.target == f1.target)) tp_error("homomorphisms must share a target");
  if (!(alpha.target == f0.target)) tp_error("2-cell must land in the hom target");
  const auto ar1 = build_arrow_context(t1);
  if (!(alpha.source == ar1.ctx.apex))
    tp_error("2-cell must start at the hom context of the extension base");
  const auto lift0 = compose_hom(applied.inclusion, f0);
  const auto lift1 = compose_hom(applied.inclusion, f1);
  if (!hom_equal(compose_hom(ar1.i0, alpha), lift0))
    tp_error("2-cell domain differs from e1;f0");
  if (!hom_equal(compose_hom(ar1.i1, alpha), lift1))
    tp_error("2-cell codomain differs from e1;f1");

  DerivationBuilder b(f0.target);
  const auto carriers = read_two_cell(ar1, alpha);
  Transporter tp{b, f0, f1, t1.apex, carriers.theta_n, carriers.theta_e};
  for (const auto& st : e1.steps) tp.step(st);

  // T1' as a context, and the transported 2-cell over it
  const Context ctx1p = make_context(
      compose_extensions(t1.ext, as_extension(e1)).steps);
  const auto ar1p = build_arrow_context(ctx1p);
  const SketchHom incl = inclusion_hom(f0.target, b.sketch());
  TransportResult out;
  out.e0 = b.extension();
  out.alpha_out = make_two_cell_hom(ar1p, compose_hom(f0, incl), compose_hom(f1, incl),
                                    tp.thn, tp.the);
  return out;
}

}  // namespace auk
