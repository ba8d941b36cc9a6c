#include "auk/aupres.hpp"

namespace auk {

AuBuilder::AuBuilder(Context base) : base_(std::move(base)), b_(base_.apex) {}

Idx AuBuilder::terminal() {
  const auto d = b_.apply(EqUnivIntro{AddTerminal{}});
  last_ut_ = d.uts[0];
  return d.nodes[0];
}

Idx AuBuilder::initial() {
  const auto d = b_.apply(EqUnivIntro{AddInitial{}});
  last_ui_ = d.uis[0];
  return d.nodes[0];
}

AuBuilder::PbIntro AuBuilder::pullback(Idx u1, Idx u2) {
  const auto d = b_.apply(EqUnivIntro{AddPullback{u1, u2}});
  return {d.nodes[0], d.edges[0], d.edges[1], d.edges[2], d.upbs[0]};
}

AuBuilder::PoIntro AuBuilder::pushout(Idx u1, Idx u2) {
  const auto d = b_.apply(EqUnivIntro{AddPushout{u1, u2}});
  return {d.nodes[0], d.edges[0], d.edges[1], d.edges[2], d.upos[0]};
}

AuBuilder::ListIntro AuBuilder::list(Idx a) {
  const auto d = b_.apply(EqUnivIntro{AddListObject{a}});
  ListIntro out;
  out.T = d.nodes[0];
  out.L = d.nodes[1];
  out.P = d.nodes[2];
  out.eps = d.edges[0];
  out.cons = d.edges[1];
  out.p1 = d.edges[2];
  out.p = d.edges[3];
  out.p2 = d.edges[4];
  out.bangA = d.edges[5];
  out.bangL = d.edges[6];
  out.ul = d.uls[0];
  out.ut = d.uts[0];
  out.upb = d.upbs[0];
  return out;
}

Idx AuBuilder::compose(Idx u, Idx v) { return b_.compose(u, v).edge; }

Idx AuBuilder::terminal_fillin(Idx ut, Idx node) {
  return b_.apply(EqTerminalFillin{ut, node}).edges[0];
}

Idx AuBuilder::initial_fillin(Idx ui, Idx node) {
  return b_.apply(EqInitialFillin{ui, node}).edges[0];
}

Idx AuBuilder::pullback_fillin(Idx upb, Idx d1, Idx d2) {
  return b_.apply(EqPullbackFillin{upb, d1, d2}).edges[0];
}

Idx AuBuilder::product_fillin(Idx upb, Idx v1, Idx v2) {
  const Sketch& s = b_.sketch();
  if (upb >= s.upb_count()) throw KernelError("product_fillin: universal out of range");
  const Idx t1 = s.upb_tri1[upb];
  const Idx t2 = s.upb_tri2[upb];
  const Idx u1 = s.tri_r[t1];
  const Idx u2 = s.tri_r[t2];
  const Idx target = s.e_cod[u1];
  std::optional<Idx> ut;
  for (Idx w = 0; w < s.ut_count(); ++w)
    if (s.ut_n[w] == target) ut = w;
  if (!ut)
    throw KernelError("product_fillin: the cospan must target a terminal subject");
  const auto c1 = b_.compose(v1, u1);  // the shared diagonal
  const auto c2 = b_.compose(v2, u2);
  const Idx un = b_.apply(EqTerminalFillinUnique{*ut, c2.edge, c1.edge}).tris[0];
  const Idx d2 = b_.transfer_comp(c2.tri, un);  // (v2, u2, c1)
  return b_.apply(EqPullbackFillin{upb, c1.tri, d2}).edges[0];
}

AuBuilder::Recursor AuBuilder::list_recursor(Idx ul, Idx y, Idx g, Idx pb_ay) {
  const Sketch& s0 = b_.sketch();
  if (ul >= s0.ul_count()) throw KernelError("list_recursor: list universal out of range");
  ListFillinConfig cfg;
  cfg.ul = ul;
  cfg.pb_AY = pb_ay;
  cfg.y = y;
  cfg.g = g;
  const Idx pbP = s0.ul_pb[ul];
  const Idx eps = s0.ul_e[ul];
  const Idx cons = s0.ul_cons[ul];
  const Idx p1 = s0.tri_l[s0.upb_tri1[pbP]];   // P -> L
  const Idx p2 = s0.tri_l[s0.upb_tri2[pbP]];   // P -> A
  const Idx pdiag = s0.tri_c[s0.upb_tri1[pbP]];  // P -> T
  const Idx bangL = s0.tri_r[s0.upb_tri1[pbP]];  // L -> T
  const Idx B = s0.e_dom[y];

  // the product L x B over the list universal's terminal
  cfg.bangBT = terminal_fillin(s0.ul_t[ul], B);
  const auto lb = pullback(bangL, cfg.bangBT);
  cfg.pb_LB = lb.upb;
  // the product P x B, using the list pullback's diagonal as the P leg
  const auto pbb = pullback(pdiag, cfg.bangBT);
  cfg.pb_PB = pbb.upb;
  // the product A x (L x B), with the LB leg the new pullback's diagonal
  const Sketch& s1 = b_.sketch();
  const Idx bangA = s1.tri_r[s1.upb_tri2[pbP]];  // A -> T
  const auto alb = pullback(bangA, lb.p);
  cfg.pb_ALB = alb.upb;

  // eb = <bangBT;eps, id(B)>
  cfg.c_eps = compose(cfg.bangBT, eps);
  cfg.eb = product_fillin(lb.upb, cfg.c_eps, b_.sketch().n_id[B]);
  // consB = <q1;cons, q2>
  cfg.cPL = compose(pbb.p1, cons);
  cfg.consB = product_fillin(lb.upb, cfg.cPL, pbb.p2);
  // assoc = <q1;p2, <q1;p1, q2>>
  cfg.cA = compose(pbb.p1, p2);
  cfg.cL = compose(pbb.p1, p1);
  cfg.cLB = product_fillin(lb.upb, cfg.cL, pbb.p2);
  cfg.assoc = product_fillin(alb.upb, cfg.cA, cfg.cLB);

  const auto d = b_.apply(EqListFillin{cfg});
  Recursor out;
  out.r = d.edges[0];
  out.pb_LB = lb.upb;
  out.cfg = cfg;
  return out;
}

TermObject AuBuilder::object(Idx node) const { return {b_.extension(), node}; }

TermMorphism AuBuilder::morphism(Idx edge) const { return {b_.extension(), edge}; }

TermComposeResult term_compose(const Context& t, const TermMorphism& f,
                               const TermMorphism& g) {
  if (!(f.e.base == t.apex) || !(g.e.base == t.apex))
    throw KernelError("term_compose: morphisms are not over the given context");
  const auto cr = common_refinement(f.e, g.e);
  const Idx fe = f.edge;  // left side keeps its ordinals
  const Idx ge = cr.eps2.eps.e[g.edge];
  DerivationBuilder b(apply_eq_extension(cr.e).result);
  const Idx mid_f = b.sketch().e_cod[fe];
  const Idx mid_g = b.sketch().e_dom[ge];
  Idx left = fe;
  if (mid_f != mid_g) {
    const auto bridge = search_object_equality_in(b, mid_f, mid_g);
    if (!bridge)
      throw KernelError("term_compose: missing endpoint certificate between the "
                        "codomain and domain representatives");
    left = b.compose(fe, bridge->first).edge;
  }
  const auto comp = b.compose(left, ge);
  EqExtension total = cr.e;
  total.steps.insert(total.steps.end(), b.extension().steps.begin(),
                     b.extension().steps.end());
  return {TermMorphism{total, comp.edge}, comp.tri};
}

bool term_mor_equal(const Context& t, const TermMorphism& f, const TermMorphism& g,
                    const EqExtension& d) {
  if (!(f.e.base == t.apex) || !(g.e.base == t.apex)) return false;
  const auto cr = common_refinement(f.e, g.e);
  const Sketch apex = apply_eq_extension(cr.e).result;
  if (!(d.base == apex)) return false;
  Sketch final_sketch;
  try {
    final_sketch = apply_eq_extension(d).result;
  } catch (const KernelError&) {
    return false;
  }
  const Idx fe = f.edge;
  const Idx ge = cr.eps2.eps.e[g.edge];
  if (final_sketch.e_dom[fe] != final_sketch.e_dom[ge] ||
      final_sketch.e_cod[fe] != final_sketch.e_cod[ge])
    return false;
  return final_sketch.has_unary_comm(fe, ge);
}

TermModel map_to_model(const ContextMap& m) {
  TermModel out;
  out.of = m.target;
  for (Idx x = 0; x < m.target.apex.node_count(); ++x)
    out.node.push_back(TermObject{m.e, m.f.n[x]});
  for (Idx u = 0; u < m.target.apex.edge_count(); ++u)
    out.edge.push_back(TermMorphism{m.e, m.f.e[u]});
  return out;
}

ContextMap model_to_map(const Context& t, const TermModel& model) {
  const Sketch& t0 = model.of.apex;
  if (model.node.size() != t0.node_count() || model.edge.size() != t0.edge_count())
    throw KernelError("model_to_map: carrier sizes do not match the modelled context");
  // gather all witnessing extensions into one common refinement
  EqExtension common{t.apex, {}};
  std::vector<Idx> node_img(t0.node_count());
  std::vector<Idx> edge_img(t0.edge_count());
  Idx nodes_done = 0, edges_done = 0;
  auto lift_into = [&](const EqExtension& piece, auto&& act) {
    const auto cr = common_refinement(common, piece);
    // re-lift everything gathered so far through the refinement
    for (Idx k = 0; k < nodes_done; ++k) node_img[k] = cr.eps1.eps.n[node_img[k]];
    for (Idx k = 0; k < edges_done; ++k) edge_img[k] = cr.eps1.eps.e[edge_img[k]];
    act(cr.eps2.eps);
    common = cr.e;
  };
  for (Idx x = 0; x < t0.node_count(); ++x) {
    if (!(model.node[x].e.base == t.apex))
      throw KernelError("model_to_map: a node witness is not over the base context");
    lift_into(model.node[x].e,
              [&](const SketchHom& eps) { node_img[x] = eps.n[model.node[x].node]; });
    ++nodes_done;
  }
  for (Idx u = 0; u < t0.edge_count(); ++u) {
    if (!(model.edge[u].e.base == t.apex))
      throw KernelError("model_to_map: an edge witness is not over the base context");
    lift_into(model.edge[u].e,
              [&](const SketchHom& eps) { edge_img[u] = eps.e[model.edge[u].edge]; });
    ++edges_done;
  }
  const Sketch apex = apply_eq_extension(common).result;
  // complete the carrier to a homomorphism by searching images for the
  // commutativities and universals
  const auto homs = [&]() -> std::optional<SketchHom> {
    SketchHom h;
    h.source = t0;
    h.target = apex;
    h.n = node_img;
    h.e = edge_img;
    // search completions sort by sort
    h.tri.assign(t0.tri_count(), 0);
    for (Idx c = 0; c < t0.tri_count(); ++c) {
      const auto found = apex.find_triangle(h.e[t0.tri_l[c]], h.e[t0.tri_r[c]],
                                            h.e[t0.tri_c[c]]);
      if (!found) return std::nullopt;
      h.tri[c] = *found;
    }
    auto find_ut = [&](Idx n) -> std::optional<Idx> {
      for (Idx w = 0; w < apex.ut_count(); ++w)
        if (apex.ut_n[w] == n) return w;
      return std::nullopt;
    };
    auto find_ui = [&](Idx n) -> std::optional<Idx> {
      for (Idx w = 0; w < apex.ui_count(); ++w)
        if (apex.ui_n[w] == n) return w;
      return std::nullopt;
    };
    h.ut.assign(t0.ut_count(), 0);
    for (Idx w = 0; w < t0.ut_count(); ++w) {
      const auto f = find_ut(h.n[t0.ut_n[w]]);
      if (!f) return std::nullopt;
      h.ut[w] = *f;
    }
    h.ui.assign(t0.ui_count(), 0);
    for (Idx w = 0; w < t0.ui_count(); ++w) {
      const auto f = find_ui(h.n[t0.ui_n[w]]);
      if (!f) return std::nullopt;
      h.ui[w] = *f;
    }
    h.upb.assign(t0.upb_count(), 0);
    for (Idx w = 0; w < t0.upb_count(); ++w) {
      bool ok = false;
      for (Idx k = 0; k < apex.upb_count(); ++k)
        if (apex.upb_tri1[k] == h.tri[t0.upb_tri1[w]] &&
            apex.upb_tri2[k] == h.tri[t0.upb_tri2[w]]) {
          h.upb[w] = k;
          ok = true;
        }
      if (!ok) return std::nullopt;
    }
    h.upo.assign(t0.upo_count(), 0);
    for (Idx w = 0; w < t0.upo_count(); ++w) {
      bool ok = false;
      for (Idx k = 0; k < apex.upo_count(); ++k)
        if (apex.upo_tri1[k] == h.tri[t0.upo_tri1[w]] &&
            apex.upo_tri2[k] == h.tri[t0.upo_tri2[w]]) {
          h.upo[w] = k;
          ok = true;
        }
      if (!ok) return std::nullopt;
    }
    h.ul.assign(t0.ul_count(), 0);
    for (Idx w = 0; w < t0.ul_count(); ++w) {
      bool ok = false;
      for (Idx k = 0; k < apex.ul_count(); ++k)
        if (apex.ul_pb[k] == h.upb[t0.ul_pb[w]] && apex.ul_t[k] == h.ut[t0.ul_t[w]] &&
            apex.ul_e[k] == h.e[t0.ul_e[w]] && apex.ul_cons[k] == h.e[t0.ul_cons[w]]) {
          h.ul[w] = k;
          ok = true;
        }
      if (!ok) return std::nullopt;
    }
    return h;
  }();
  if (!homs)
    throw KernelError("model_to_map: the carriers do not assemble into a homomorphism");
  const auto rep = validate_hom(*homs);
  if (!rep.ok())
    throw KernelError("model_to_map: carrier is not a homomorphism: " + rep.to_string());
  ContextMap out;
  out.source = t;
  out.target = model.of;
  out.e = common;
  out.f = *homs;
  return out;
}

}  // namespace auk
