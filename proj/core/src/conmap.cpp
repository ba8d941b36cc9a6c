#include "auk/conmap.hpp"

namespace auk {

void validate_map(const ContextMap& m) {
  if (!(m.e.base == m.source.apex))
    throw KernelError("context map: extension base differs from the source apex");
  const auto applied = apply_eq_extension(m.e);
  if (!(m.f.source == m.target.apex))
    throw KernelError("context map: homomorphism does not start at the target apex");
  if (!(m.f.target == applied.result))
    throw KernelError("context map: homomorphism does not land in the extension apex");
  const auto rep = validate_hom(m.f);
  if (!rep.ok())
    throw KernelError("context map: carrier is not a homomorphism: " + rep.to_string());
}

ContextMap identity_map(const Context& t) {
  ContextMap m;
  m.source = t;
  m.target = t;
  m.e = EqExtension{t.apex, {}};
  m.f = identity_hom(t.apex);
  return m;
}

ContextMap compose_map(const ContextMap& m01, const ContextMap& m12) {
  if (!(m01.target.apex == m12.source.apex))
    throw KernelError("compose_map: target of first differs from source of second");
  const auto rx = reindex_eq(m12.e, m01.f);
  ContextMap out;
  out.source = m01.source;
  out.target = m12.target;
  out.e = m01.e;
  out.e.steps.insert(out.e.steps.end(), rx.ext.steps.begin(), rx.ext.steps.end());
  out.f = compose_hom(m12.f, rx.eps);
  return out;
}

std::optional<std::string> map_equality_failure(const ContextMap& m0,
                                                const ContextMap& m1,
                                                const MapEqualityCertificate& cert) {
  if (!(m0.source.apex == m1.source.apex) || !(m0.target.apex == m1.target.apex))
    return "maps are not parallel";
  Refinement r0{m0.e, cert.common, cert.eps0};
  if (!check_refinement(r0)) return "certificate does not refine the first map";
  Refinement r1{m1.e, cert.common, cert.eps1};
  if (!check_refinement(r1)) return "certificate does not refine the second map";
  const auto g0 = compose_hom(m0.f, cert.eps0);
  const auto g1 = compose_hom(m1.f, cert.eps1);
  return objective_equality_failure(m0.target, g0, g1, cert.oe);
}

bool maps_objectively_equal(const ContextMap& m0, const ContextMap& m1,
                            const MapEqualityCertificate& cert) {
  return !map_equality_failure(m0, m1, cert).has_value();
}

namespace {

Idx need_tri(const DerivationBuilder& b, Idx l, Idx r, Idx c, const char* what) {
  if (auto t = b.find_tri(l, r, c)) return *t;
  throw KernelError(std::string("certify_maps_equal: missing commutativity ") + what);
}

// Derives the theta edge for one edge u of the shape, given node carriers and
// their witnesses; returns the edge.  Handles equal images, twin-terminal
// codomains, twin-initial domains, and the structure edges of twin
// pullback/pushout universals.
Idx derive_theta_edge(DerivationBuilder& b, Idx g0u, Idx g1u, Idx thX, Idx thY,
                      const ObjectEqualityWitness& wX, const ObjectEqualityWitness& wY) {
  const Sketch& s = b.sketch();
  if (g0u == g1u && std::holds_alternative<WSameNode>(wX.v) &&
      std::holds_alternative<WSameNode>(wY.v)) {
    // gamma_u := g0(u);id with both squares via unit moves
    const auto c = b.compose(g0u, thY);
    const Idx un = b.sym(b.unit_transfer_rl(c.tri));  // (id, g0u, gamma_u)
    (void)un;
    return c.edge;
  }
  if (const auto* t = std::get_if<WTerminals>(&wY.v)) {
    // anything into a twin terminal
    const auto c = b.compose(g0u, thY);
    const auto c2 = b.compose(thX, g1u);
    const Idx un = b.apply(EqTerminalFillinUnique{t->ut_y, c2.edge, c.edge}).tris[0];
    b.transfer_comp(c2.tri, un);  // (thX, g1u, gamma_u)
    return c.edge;
  }
  if (const auto* t = std::get_if<WInitials>(&wX.v)) {
    const auto c = b.compose(thX, g1u);
    const auto c2 = b.compose(g0u, thY);
    const Idx un = b.apply(EqInitialFillinUnique{t->ui_x, c2.edge, c.edge}).tris[0];
    b.transfer_comp(c2.tri, un);  // (g0u, thY, gamma_u)
    return c.edge;
  }
  if (const auto* px = std::get_if<WPullbacks>(&wX.v)) {
    // structure edges out of twin pullbacks
    const Idx ty1 = s.upb_tri1[px->upb_y];
    const Idx ty2 = s.upb_tri2[px->upb_y];
    const Idx tx1 = s.upb_tri1[px->upb_x];
    if (g1u == s.tri_l[ty1]) return px->e_c1;
    if (g1u == s.tri_l[ty2]) return px->e_c2;
    if (g1u == s.tri_c[ty1]) {
      // diagonal: gamma_u := e_d with (g0 p, id, e_d) and (thX, g1 p, e_d)
      b.right_unit(px->e_d);
      b.right_assoc(thX, s.tri_l[ty1], s.tri_r[ty1], px->e_c1, g1u, px->e_d);
      if (g0u != px->e_d)
        throw KernelError("certify_maps_equal: unexpected pullback diagonal");
      return px->e_d;
    }
    if (g1u == s.n_id[s.e_dom[s.tri_l[ty1]]]) {
      b.left_unit(thX);
      b.right_unit(thX);
      return thX;
    }
  }
  if (const auto* py = std::get_if<WPushouts>(&wY.v)) {
    const Idx tx1 = s.upo_tri1[py->upo_x];
    const Idx tx2 = s.upo_tri2[py->upo_x];
    if (g0u == s.tri_r[tx1]) return py->e_c1;
    if (g0u == s.tri_r[tx2]) return py->e_c2;
    if (g0u == s.tri_c[tx1]) {
      // diagonal: gamma_u := jy with (id, g1 j, jy) and (g0 j, thY, jy)
      const Idx ty1 = s.upo_tri1[py->upo_y];
      b.left_unit(s.tri_c[ty1]);
      b.left_assoc(s.tri_l[tx1], s.tri_r[tx1], thY, g0u, py->e_c1, py->e_d);
      if (g1u != s.tri_c[ty1])
        throw KernelError("certify_maps_equal: unexpected pushout diagonal");
      return s.tri_c[ty1];
    }
    if (g0u == s.n_id[s.e_cod[s.tri_r[tx1]]]) {
      b.left_unit(thY);
      b.right_unit(thY);
      return thY;
    }
  }
  throw KernelError(
      "certify_maps_equal: cannot derive a carrier for an edge of this shape");
}

}  // namespace

MapEqualityCertificate certify_maps_equal(const ContextMap& m0, const ContextMap& m1) {
  if (!(m0.source.apex == m1.source.apex) || !(m0.target.apex == m1.target.apex))
    throw KernelError("certify_maps_equal: maps are not parallel");
  MapEqualityCertificate cert;
  const auto cr = common_refinement(m0.e, m1.e);
  cert.common = cr.e;
  cert.eps0 = cr.eps1.eps;
  cert.eps1 = cr.eps2.eps;
  const auto g0 = compose_hom(m0.f, cert.eps0);
  const auto g1 = compose_hom(m1.f, cert.eps1);
  if (hom_equal(g0, g1)) {
    cert.oe = trivial_certificate(m0.target, g0);
    return cert;
  }
  const Sketch& t1 = m0.target.apex;
  DerivationBuilder b(g0.target);
  std::vector<Idx> thn(t1.node_count());
  std::vector<ObjectEqualityWitness> witnesses;
  witnesses.reserve(t1.node_count());
  for (Idx x = 0; x < t1.node_count(); ++x) {
    auto found = search_object_equality_in(b, g0.n[x], g1.n[x]);
    if (!found)
      throw KernelError("certify_maps_equal: no object equality found for node " +
                        std::to_string(x));
    thn[x] = found->first;
    witnesses.push_back(std::move(found->second));
  }
  std::vector<Idx> the(t1.edge_count());
  for (Idx u = 0; u < t1.edge_count(); ++u) {
    const Idx X = t1.e_dom[u];
    const Idx Y = t1.e_cod[u];
    the[u] = derive_theta_edge(b, g0.e[u], g1.e[u], thn[X], thn[Y], witnesses[X],
                               witnesses[Y]);
  }
  cert.oe.ext = b.extension();
  const SketchHom incl = inclusion_hom(g0.target, b.sketch());
  const auto ar = build_arrow_context(m0.target);
  cert.oe.gamma = make_two_cell_hom(ar, compose_hom(g0, incl), compose_hom(g1, incl),
                                    thn, the);
  cert.oe.node_witness = std::move(witnesses);
  return cert;
}

// ---- 2-cells ---------------------------------------------------------------------

void validate_two_cell(const TwoCell& cell) {
  if (!(cell.e.base == cell.source.apex))
    throw KernelError("two-cell: extension base differs from the source apex");
  const auto applied = apply_eq_extension(cell.e);
  const auto ar = build_arrow_context(cell.target);
  if (!(cell.alpha.source == ar.ctx.apex))
    throw KernelError("two-cell: carrier does not start at the hom context");
  if (!(cell.alpha.target == applied.result))
    throw KernelError("two-cell: carrier does not land in the extension apex");
  const auto rep = validate_hom(cell.alpha);
  if (!rep.ok())
    throw KernelError("two-cell: carrier is not a homomorphism: " + rep.to_string());
}

ContextMap cell_dom(const TwoCell& cell) {
  const auto ar = build_arrow_context(cell.target);
  ContextMap m;
  m.source = cell.source;
  m.target = cell.target;
  m.e = cell.e;
  m.f = compose_hom(ar.i0, cell.alpha);
  return m;
}

ContextMap cell_cod(const TwoCell& cell) {
  const auto ar = build_arrow_context(cell.target);
  ContextMap m;
  m.source = cell.source;
  m.target = cell.target;
  m.e = cell.e;
  m.f = compose_hom(ar.i1, cell.alpha);
  return m;
}

TwoCell identity_cell(const ContextMap& m) {
  const auto ar = build_arrow_context(m.target);
  const auto idc = identity_two_cell(ar, m.f);
  TwoCell out;
  out.source = m.source;
  out.target = m.target;
  out.e = m.e;
  out.e.steps.insert(out.e.steps.end(), idc.ext.steps.begin(), idc.ext.steps.end());
  out.alpha = idc.alpha;
  return out;
}

bool verify_object_equality_cell(const ObjectEqualityCell& c) {
  try {
    validate_two_cell(c.cell);
  } catch (const KernelError&) {
    return false;
  }
  const auto ar = build_arrow_context(c.cell.target);
  const Sketch apex = apply_eq_extension(c.cell.e).result;
  if (c.node_witness.size() != c.cell.target.apex.node_count()) return false;
  for (Idx x = 0; x < c.cell.target.apex.node_count(); ++x) {
    const Idx carrier = c.cell.alpha.e[ar.theta_node[x]];
    if (!verify_object_equality(apex, carrier, c.node_witness[x])) return false;
  }
  return true;
}

// ---- whiskering -------------------------------------------------------------------

namespace {

// the arrow functor on homomorphisms: arrow(f): arrow(src) -> arrow(tgt)
SketchHom arrow_hom(const ArrowContext& ar_src, const ArrowContext& ar_tgt,
                    const SketchHom& f) {
  const Sketch& s = ar_src.ctx.apex;
  SketchHom h;
  h.source = s;
  h.target = ar_tgt.ctx.apex;
  h.n.assign(s.node_count(), 0);
  h.e.assign(s.edge_count(), 0);
  h.tri.assign(s.tri_count(), 0);
  h.ut.assign(s.ut_count(), 0);
  h.upb.assign(s.upb_count(), 0);
  h.ui.assign(s.ui_count(), 0);
  h.upo.assign(s.upo_count(), 0);
  h.ul.assign(s.ul_count(), 0);
  const Sketch& t = f.source;
  for (Idx x = 0; x < t.node_count(); ++x) {
    h.n[ar_src.i0.n[x]] = ar_tgt.i0.n[f.n[x]];
    h.n[ar_src.i1.n[x]] = ar_tgt.i1.n[f.n[x]];
    h.e[ar_src.theta_node[x]] = ar_tgt.theta_node[f.n[x]];
  }
  for (Idx u = 0; u < t.edge_count(); ++u) {
    h.e[ar_src.i0.e[u]] = ar_tgt.i0.e[f.e[u]];
    h.e[ar_src.i1.e[u]] = ar_tgt.i1.e[f.e[u]];
    h.e[ar_src.theta_edge[u]] = ar_tgt.theta_edge[f.e[u]];
    h.tri[ar_src.square0[u]] = ar_tgt.square0[f.e[u]];
    h.tri[ar_src.square1[u]] = ar_tgt.square1[f.e[u]];
  }
  for (Idx c = 0; c < t.tri_count(); ++c) {
    h.tri[ar_src.i0.tri[c]] = ar_tgt.i0.tri[f.tri[c]];
    h.tri[ar_src.i1.tri[c]] = ar_tgt.i1.tri[f.tri[c]];
  }
  for (Idx w = 0; w < t.ut_count(); ++w) {
    h.ut[ar_src.i0.ut[w]] = ar_tgt.i0.ut[f.ut[w]];
    h.ut[ar_src.i1.ut[w]] = ar_tgt.i1.ut[f.ut[w]];
  }
  for (Idx w = 0; w < t.upb_count(); ++w) {
    h.upb[ar_src.i0.upb[w]] = ar_tgt.i0.upb[f.upb[w]];
    h.upb[ar_src.i1.upb[w]] = ar_tgt.i1.upb[f.upb[w]];
  }
  for (Idx w = 0; w < t.ui_count(); ++w) {
    h.ui[ar_src.i0.ui[w]] = ar_tgt.i0.ui[f.ui[w]];
    h.ui[ar_src.i1.ui[w]] = ar_tgt.i1.ui[f.ui[w]];
  }
  for (Idx w = 0; w < t.upo_count(); ++w) {
    h.upo[ar_src.i0.upo[w]] = ar_tgt.i0.upo[f.upo[w]];
    h.upo[ar_src.i1.upo[w]] = ar_tgt.i1.upo[f.upo[w]];
  }
  for (Idx w = 0; w < t.ul_count(); ++w) {
    h.ul[ar_src.i0.ul[w]] = ar_tgt.i0.ul[f.ul[w]];
    h.ul[ar_src.i1.ul[w]] = ar_tgt.i1.ul[f.ul[w]];
  }
  const auto rep = validate_hom(h);
  if (!rep.ok())
    throw KernelError("arrow_hom: assembled map is not a homomorphism: " +
                      rep.to_string());
  return h;
}

}  // namespace

TwoCell whisker_left(const ContextMap& m, const TwoCell& cell) {
  if (!(m.target.apex == cell.source.apex))
    throw KernelError("whisker_left: shapes do not compose");
  const auto ar = build_arrow_context(cell.target);
  ContextMap cellmap{cell.source, ar.ctx, cell.e, cell.alpha};
  const auto composed = compose_map(m, cellmap);
  return TwoCell{m.source, cell.target, composed.e, composed.f};
}

TwoCell whisker_right_hom(const TwoCell& cell, const Context& t2, const SketchHom& f) {
  if (!(f.source == t2.apex) || !(f.target == cell.target.apex))
    throw KernelError("whisker_right_hom: homomorphism has the wrong endpoints");
  const auto ar2 = build_arrow_context(t2);
  const auto ar1 = build_arrow_context(cell.target);
  const auto arr_f = arrow_hom(ar2, ar1, f);
  return TwoCell{cell.source, t2, cell.e, compose_hom(arr_f, cell.alpha)};
}

TwoCell whisker_right_ext(const TwoCell& cell, const Context& t1_prime,
                          const EqExtension& e1) {
  if (!(e1.base == cell.target.apex))
    throw KernelError("whisker_right_ext: extension base differs from the cell target");
  const auto ar1 = build_arrow_context(cell.target);
  const auto d0 = compose_hom(ar1.i0, cell.alpha);
  const auto d1 = compose_hom(ar1.i1, cell.alpha);
  // reindex e1 along both boundary homs and take a common refinement
  const auto r0 = reindex_eq(e1, d0);
  const auto r1 = reindex_eq(e1, d1);
  const auto cr = common_refinement(r0.ext, r1.ext);
  const auto g0 = compose_hom(r0.eps, cr.eps1.eps);
  const auto g1 = compose_hom(r1.eps, cr.eps2.eps);
  const Sketch cr_apex = apply_eq_extension(cr.e).result;
  const auto alpha_lift =
      compose_hom(cell.alpha, inclusion_hom(cell.alpha.target, cr_apex));
  const auto tr = transport_two_cell(cell.target, e1, g0, g1, alpha_lift);
  TwoCell out;
  out.source = cell.source;
  out.target = t1_prime;
  out.e = cell.e;
  out.e.steps.insert(out.e.steps.end(), cr.e.steps.begin(), cr.e.steps.end());
  out.e.steps.insert(out.e.steps.end(), tr.e0.steps.begin(), tr.e0.steps.end());
  out.alpha = tr.alpha_out;
  return out;
}

TwoCell whisker_right(const TwoCell& cell, const ContextMap& m) {
  if (!(m.source.apex == cell.target.apex))
    throw KernelError("whisker_right: shapes do not compose");
  const Context mid = make_context(
      compose_extensions(m.source.ext, as_extension(m.e)).steps);
  const auto first = whisker_right_ext(cell, mid, m.e);
  return whisker_right_hom(first, m.target, m.f);
}

// ---- vertical and horizontal composition --------------------------------------------

TwoCell vertical_compose(const TwoCell& a, const TwoCell& b_cell,
                         const MapEqualityCertificate& meet) {
  if (!(a.source.apex == b_cell.source.apex) || !(a.target.apex == b_cell.target.apex))
    throw KernelError("vertical_compose: cells are not between the same contexts");
  if (auto msg = map_equality_failure(cell_cod(a), cell_dom(b_cell), meet))
    throw KernelError("vertical_compose: meet certificate does not verify: " + *msg);

  const auto ar = build_arrow_context(a.target);
  // the shared stage: the meet's common refinement followed by its witness
  // extension; everything is lifted there
  const Sketch common_apex = apply_eq_extension(meet.common).result;
  const auto oe_applied = apply_eq_extension(meet.oe.ext);
  const SketchHom into_oe = oe_applied.inclusion;  // common apex -> oe apex
  const auto liftA =
      compose_hom(compose_hom(a.alpha, meet.eps0), into_oe);
  const auto liftB =
      compose_hom(compose_hom(b_cell.alpha, meet.eps1), into_oe);
  const auto thA = read_two_cell(ar, liftA);
  const auto thB = read_two_cell(ar, liftB);
  const auto thG = read_two_cell(ar, meet.oe.gamma);

  DerivationBuilder b(oe_applied.result);
  const Sketch& t = a.target.apex;
  const auto f0a = compose_hom(ar.i0, liftA);
  const auto f1a = compose_hom(ar.i1, liftA);
  const auto f0b = compose_hom(ar.i0, liftB);
  const auto f1b = compose_hom(ar.i1, liftB);

  std::vector<Idx> m1n(t.node_count());
  std::vector<Idx> thn(t.node_count());
  for (Idx x = 0; x < t.node_count(); ++x) {
    const auto m1 = b.compose(thA.theta_n[x], thG.theta_n[x]);
    m1n[x] = m1.edge;
    thn[x] = b.compose(m1.edge, thB.theta_n[x]).edge;
  }
  std::vector<Idx> the(t.edge_count());
  for (Idx u = 0; u < t.edge_count(); ++u) {
    const Idx X = t.e_dom[u];
    const Idx Y = t.e_cod[u];
    const auto theta = b.compose(m1n[X], thB.theta_e[u]);
    // square 1: (thn X, f1b(u), theta) over m1_X ; thB_X ; f1b(u)
    b.left_assoc(m1n[X], thB.theta_n[X], f1b.e[u], thn[X], thB.theta_e[u], theta.edge);
    // square 0: (f0a(u), thn Y, theta)
    const auto z2 = b.compose(thA.theta_e[u], thG.theta_n[Y]);
    b.right_assoc(f0a.e[u], thA.theta_n[Y], thG.theta_n[Y], thA.theta_e[u], m1n[Y],
                  z2.edge);  // (f0a u, m1_Y, z2)
    b.right_assoc(thA.theta_n[X], f1a.e[u], thG.theta_n[Y], thA.theta_e[u],
                  thG.theta_e[u], z2.edge);  // (thA_X, thG_u, z2)
    const auto z3 = b.compose(z2.edge, thB.theta_n[Y]);
    b.right_assoc(f0a.e[u], m1n[Y], thB.theta_n[Y], z2.edge, thn[Y], z3.edge);
    const auto z4 = b.compose(thG.theta_e[u], thB.theta_n[Y]);
    const auto z5 = b.compose(thA.theta_n[X], z4.edge);
    b.left_assoc(thA.theta_n[X], thG.theta_e[u], thB.theta_n[Y], z2.edge, z4.edge,
                 z5.edge);  // (z2, thB_Y, z5)
    b.right_assoc(thG.theta_n[X], f0b.e[u], thB.theta_n[Y], thG.theta_e[u],
                  thB.theta_e[u], z4.edge);  // (thG_X, thB_u, z4)
    b.left_assoc(thA.theta_n[X], thG.theta_n[X], thB.theta_e[u], m1n[X], z4.edge,
                 z5.edge);  // (m1_X, thB_u, z5)
    const Idx un1 = b.unify_parallel(
        need_tri(b, z2.edge, thB.theta_n[Y], z3.edge, "(z2, thB_Y, z3)"),
        need_tri(b, z2.edge, thB.theta_n[Y], z5.edge, "(z2, thB_Y, z5)"));
    const Idx un2 = b.unify_parallel(
        need_tri(b, m1n[X], thB.theta_e[u], z5.edge, "(m1, thB_u, z5)"),
        need_tri(b, m1n[X], thB.theta_e[u], theta.edge, "(m1, thB_u, theta)"));
    // (f0a u, thn Y, z3) -> z5 -> theta
    const Idx s1 = b.transfer_comp(
        need_tri(b, f0a.e[u], thn[Y], z3.edge, "(f0a u, thn Y, z3)"), un1);
    b.transfer_comp(s1, un2);
    the[u] = theta.edge;
  }

  TwoCell out;
  out.source = a.source;
  out.target = a.target;
  out.e = meet.common;
  out.e.steps.insert(out.e.steps.end(), meet.oe.ext.steps.begin(),
                     meet.oe.ext.steps.end());
  out.e.steps.insert(out.e.steps.end(), b.extension().steps.begin(),
                     b.extension().steps.end());
  const SketchHom incl = inclusion_hom(oe_applied.result, b.sketch());
  out.alpha = make_two_cell_hom(ar, compose_hom(f0a, incl), compose_hom(f1b, incl),
                                thn, the);
  return out;
}

TwoCell horizontal_compose(const TwoCell& a, const TwoCell& b) {
  // alpha * beta = (alpha ; dom(beta)) then (cod(alpha) ; beta), vertically
  const auto first = whisker_right(a, cell_dom(b));
  const auto second = whisker_left(cell_cod(a), b);
  const auto meet = certify_maps_equal(cell_cod(first), cell_dom(second));
  return vertical_compose(first, second, meet);
}

// ---- the arrow involution -------------------------------------------------------------

Involution arrow_involution(const Context& t) {
  const auto arT = build_arrow_context(t);
  const auto arAA = build_arrow_context(arT.ctx);
  const Sketch& aa = arAA.ctx.apex;
  const Sketch& base = t.apex;

  // adjoin the swapped squares for the double-theta edges
  DerivationBuilder b(aa);
  std::vector<Idx> derived0(base.edge_count()), derived1(base.edge_count());
  for (Idx u = 0; u < base.edge_count(); ++u) {
    const Idx X = base.e_dom[u];
    const Idx Y = base.e_cod[u];
    const Idx th0_u = arAA.i0.e[arT.theta_edge[u]];
    const Idx th1_u = arAA.i1.e[arT.theta_edge[u]];
    const Idx phi_u0 = arAA.theta_edge[arT.edge0[u]];
    const Idx phi_u1 = arAA.theta_edge[arT.edge1[u]];
    const Idx phi_X0 = arAA.theta_node[arT.node0[X]];
    const Idx th0_X = arAA.i0.e[arT.theta_node[X]];
    const Idx phi_thu = arAA.theta_edge[arT.theta_edge[u]];
    const Idx th1_Y = arAA.i1.e[arT.theta_node[Y]];
    const Idx phi_Y1 = arAA.theta_node[arT.node1[Y]];
    const Idx u01 = arAA.i1.e[arT.edge0[u]];
    const Idx u10 = arAA.i0.e[arT.edge1[u]];
    // (phi_u0, th1_Y, phi_thu) over phi_X0 ; u01 ; th1_Y
    derived0[u] = b.left_assoc(phi_X0, u01, th1_Y, phi_u0, th1_u, phi_thu);
    // (th0_X, phi_u1, phi_thu) over th0_X ; u10 ; phi_Y1
    derived1[u] = b.right_assoc(th0_X, u10, phi_Y1, th0_u, phi_u1, phi_thu);
  }

  // assemble tau by swapping the two hom levels
  SketchHom tau = identity_hom(aa);
  tau.target = b.sketch();

  auto swap_copy = [&](std::vector<Idx>& map, const std::vector<Idx>& i0a,
                       const std::vector<Idx>& i1a, const std::vector<Idx>& i0t,
                       const std::vector<Idx>& i1t, Idx count) {
    // swaps the (1,0) and (0,1) copies of base elements
    for (Idx k = 0; k < count; ++k) {
      map[i0a[i1t[k]]] = i1a[i0t[k]];
      map[i1a[i0t[k]]] = i0a[i1t[k]];
    }
  };
  swap_copy(tau.n, arAA.i0.n, arAA.i1.n, arT.i0.n, arT.i1.n, base.node_count());
  swap_copy(tau.e, arAA.i0.e, arAA.i1.e, arT.i0.e, arT.i1.e, base.edge_count());
  swap_copy(tau.tri, arAA.i0.tri, arAA.i1.tri, arT.i0.tri, arT.i1.tri, base.tri_count());
  swap_copy(tau.ut, arAA.i0.ut, arAA.i1.ut, arT.i0.ut, arT.i1.ut, base.ut_count());
  swap_copy(tau.upb, arAA.i0.upb, arAA.i1.upb, arT.i0.upb, arT.i1.upb, base.upb_count());
  swap_copy(tau.ui, arAA.i0.ui, arAA.i1.ui, arT.i0.ui, arT.i1.ui, base.ui_count());
  swap_copy(tau.upo, arAA.i0.upo, arAA.i1.upo, arT.i0.upo, arT.i1.upo, base.upo_count());
  swap_copy(tau.ul, arAA.i0.ul, arAA.i1.ul, arT.i0.ul, arT.i1.ul, base.ul_count());

  for (Idx x = 0; x < base.node_count(); ++x) {
    // theta and phi carriers at a node swap; the double carrier is fixed
    const Idx th0 = arAA.i0.e[arT.theta_node[x]];
    const Idx th1 = arAA.i1.e[arT.theta_node[x]];
    const Idx phi0 = arAA.theta_node[arT.node0[x]];
    const Idx phi1 = arAA.theta_node[arT.node1[x]];
    tau.e[th0] = phi0;
    tau.e[phi0] = th0;
    tau.e[th1] = phi1;
    tau.e[phi1] = th1;
    // squares of the A-edge theta_x swap with each other
    const Idx s0 = arAA.square0[arT.theta_node[x]];
    const Idx s1 = arAA.square1[arT.theta_node[x]];
    tau.tri[s0] = s1;
    tau.tri[s1] = s0;
  }
  for (Idx u = 0; u < base.edge_count(); ++u) {
    const Idx th0 = arAA.i0.e[arT.theta_edge[u]];
    const Idx th1 = arAA.i1.e[arT.theta_edge[u]];
    const Idx phi0 = arAA.theta_edge[arT.edge0[u]];
    const Idx phi1 = arAA.theta_edge[arT.edge1[u]];
    tau.e[th0] = phi0;
    tau.e[phi0] = th0;
    tau.e[th1] = phi1;
    tau.e[phi1] = th1;
    // copies of A's squares swap with AA's own squares on the copy edges
    tau.tri[arAA.i0.tri[arT.square0[u]]] = arAA.square0[arT.edge0[u]];
    tau.tri[arAA.square0[arT.edge0[u]]] = arAA.i0.tri[arT.square0[u]];
    tau.tri[arAA.i0.tri[arT.square1[u]]] = arAA.square1[arT.edge0[u]];
    tau.tri[arAA.square1[arT.edge0[u]]] = arAA.i0.tri[arT.square1[u]];
    tau.tri[arAA.i1.tri[arT.square0[u]]] = arAA.square0[arT.edge1[u]];
    tau.tri[arAA.square0[arT.edge1[u]]] = arAA.i1.tri[arT.square0[u]];
    tau.tri[arAA.i1.tri[arT.square1[u]]] = arAA.square1[arT.edge1[u]];
    tau.tri[arAA.square1[arT.edge1[u]]] = arAA.i1.tri[arT.square1[u]];
    // the squares over the double-theta edge land on the derived ones
    tau.tri[arAA.square0[arT.theta_edge[u]]] = derived0[u];
    tau.tri[arAA.square1[arT.theta_edge[u]]] = derived1[u];
  }

  const auto rep = validate_hom(tau);
  if (!rep.ok())
    throw KernelError("arrow_involution: tau is not a homomorphism: " + rep.to_string());

  Involution out;
  out.e = b.extension();
  out.tau = tau;
  return out;
}

}  // namespace auk
