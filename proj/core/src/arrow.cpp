#include "auk/arrow.hpp"

namespace auk {

SketchHom empty_hom_into(const Sketch& target) {
  SketchHom h;
  h.source = empty_sketch();
  h.target = target;
  return h;
}

SketchHom retarget(const SketchHom& h, const Sketch& new_target) {
  SketchHom out = h;
  out.target = new_target;
  return out;
}

ThetaExtension build_theta_extension(const Sketch& shape, const SketchHom& f0,
                                     const SketchHom& f1) {
  if (!(f0.source == shape) || !(f1.source == shape) || !(f0.target == f1.target))
    throw KernelError("build_theta_extension: homomorphisms must be parallel over the shape");
  ThetaExtension out;
  out.ext.base = f0.target;
  Sketch cur = f0.target;
  auto push = [&](const ExtensionStep& st) {
    auto [next, delta] = apply_step(cur, st);
    cur = std::move(next);
    out.ext.steps.push_back(st);
    return delta;
  };
  out.theta_node.resize(shape.node_count());
  for (Idx x = 0; x < shape.node_count(); ++x)
    out.theta_node[x] = push(AddPrimitiveEdge{f0.n[x], f1.n[x]}).edges[0];
  out.theta_edge.resize(shape.edge_count());
  out.square0.resize(shape.edge_count());
  out.square1.resize(shape.edge_count());
  for (Idx u = 0; u < shape.edge_count(); ++u) {
    const Idx X = shape.e_dom[u];
    const Idx Y = shape.e_cod[u];
    out.theta_edge[u] = push(AddPrimitiveEdge{f0.n[X], f1.n[Y]}).edges[0];
    out.square0[u] =
        push(AddCommutativity{f0.e[u], out.theta_node[Y], out.theta_edge[u]}).tris[0];
    out.square1[u] =
        push(AddCommutativity{out.theta_node[X], f1.e[u], out.theta_edge[u]}).tris[0];
  }
  return out;
}

ArrowContext build_arrow_context(const Context& t) {
  ArrowContext out;
  // copy 1 is the reindexing of t's own extension along the empty hom
  const auto rx = reindex(t.ext, empty_hom_into(t.apex));
  const Sketch apex01 = apply_extension(rx.ext).result;
  const SketchHom f0 = inclusion_hom(t.apex, apex01);
  const SketchHom f1 = rx.eps;
  const auto th = build_theta_extension(t.apex, f0, f1);

  std::vector<ExtensionStep> steps = t.ext.steps;
  steps.insert(steps.end(), rx.ext.steps.begin(), rx.ext.steps.end());
  steps.insert(steps.end(), th.ext.steps.begin(), th.ext.steps.end());
  out.ctx = make_context(std::move(steps));

  out.i0 = retarget(inclusion_hom(t.apex, apex01), out.ctx.apex);
  out.i1 = retarget(rx.eps, out.ctx.apex);
  out.node0 = out.i0.n;
  out.node1 = out.i1.n;
  out.edge0 = out.i0.e;
  out.edge1 = out.i1.e;
  out.theta_node = th.theta_node;
  out.theta_edge = th.theta_edge;
  out.square0 = th.square0;
  out.square1 = th.square1;
  return out;
}

SketchHom make_two_cell_hom(const ArrowContext& ar, const SketchHom& f0,
                            const SketchHom& f1, const std::vector<Idx>& theta_n,
                            const std::vector<Idx>& theta_e) {
  const Sketch& src = ar.ctx.apex;
  const Sketch& tgt = f0.target;
  if (!(f1.target == tgt))
    throw KernelError("make_two_cell_hom: f0 and f1 must share a target");
  const Sketch& t = ar.i0.source;
  SketchHom h;
  h.source = src;
  h.target = tgt;
  h.n.assign(src.node_count(), 0);
  h.e.assign(src.edge_count(), 0);
  h.tri.assign(src.tri_count(), 0);
  h.ut.assign(src.ut_count(), 0);
  h.upb.assign(src.upb_count(), 0);
  h.ui.assign(src.ui_count(), 0);
  h.upo.assign(src.upo_count(), 0);
  h.ul.assign(src.ul_count(), 0);

  for (Idx x = 0; x < t.node_count(); ++x) {
    h.n[ar.i0.n[x]] = f0.n[x];
    h.n[ar.i1.n[x]] = f1.n[x];
    h.e[ar.theta_node[x]] = theta_n[x];
  }
  for (Idx u = 0; u < t.edge_count(); ++u) {
    h.e[ar.i0.e[u]] = f0.e[u];
    h.e[ar.i1.e[u]] = f1.e[u];
    h.e[ar.theta_edge[u]] = theta_e[u];
  }
  for (Idx c = 0; c < t.tri_count(); ++c) {
    h.tri[ar.i0.tri[c]] = f0.tri[c];
    h.tri[ar.i1.tri[c]] = f1.tri[c];
  }
  for (Idx u = 0; u < t.edge_count(); ++u) {
    const Idx Y = t.e_cod[u];
    const Idx X = t.e_dom[u];
    auto s0 = tgt.find_triangle(f0.e[u], theta_n[Y], theta_e[u]);
    if (!s0)
      throw KernelError("make_two_cell_hom: missing square (f0(u), theta, theta_u)");
    auto s1 = tgt.find_triangle(theta_n[X], f1.e[u], theta_e[u]);
    if (!s1)
      throw KernelError("make_two_cell_hom: missing square (theta, f1(u), theta_u)");
    h.tri[ar.square0[u]] = *s0;
    h.tri[ar.square1[u]] = *s1;
  }
  for (Idx w = 0; w < t.ut_count(); ++w) {
    h.ut[ar.i0.ut[w]] = f0.ut[w];
    h.ut[ar.i1.ut[w]] = f1.ut[w];
  }
  for (Idx w = 0; w < t.upb_count(); ++w) {
    h.upb[ar.i0.upb[w]] = f0.upb[w];
    h.upb[ar.i1.upb[w]] = f1.upb[w];
  }
  for (Idx w = 0; w < t.ui_count(); ++w) {
    h.ui[ar.i0.ui[w]] = f0.ui[w];
    h.ui[ar.i1.ui[w]] = f1.ui[w];
  }
  for (Idx w = 0; w < t.upo_count(); ++w) {
    h.upo[ar.i0.upo[w]] = f0.upo[w];
    h.upo[ar.i1.upo[w]] = f1.upo[w];
  }
  for (Idx w = 0; w < t.ul_count(); ++w) {
    h.ul[ar.i0.ul[w]] = f0.ul[w];
    h.ul[ar.i1.ul[w]] = f1.ul[w];
  }
  const auto rep = validate_hom(h);
  if (!rep.ok())
    throw KernelError("make_two_cell_hom: assembled map is not a homomorphism: " +
                      rep.to_string());
  return h;
}

TwoCellCarriers read_two_cell(const ArrowContext& ar, const SketchHom& alpha) {
  TwoCellCarriers out;
  const Idx nn = static_cast<Idx>(ar.theta_node.size());
  const Idx ne = static_cast<Idx>(ar.theta_edge.size());
  out.theta_n.resize(nn);
  out.theta_e.resize(ne);
  for (Idx x = 0; x < nn; ++x) out.theta_n[x] = alpha.e[ar.theta_node[x]];
  for (Idx u = 0; u < ne; ++u) out.theta_e[u] = alpha.e[ar.theta_edge[u]];
  return out;
}

SketchHom two_cell_dom(const ArrowContext& ar, const SketchHom& alpha) {
  return compose_hom(ar.i0, alpha);
}

SketchHom two_cell_cod(const ArrowContext& ar, const SketchHom& alpha) {
  return compose_hom(ar.i1, alpha);
}

IdentityTwoCell identity_two_cell(const ArrowContext& ar, const SketchHom& f) {
  const Sketch& t = ar.i0.source;
  IdentityTwoCell out;
  out.ext.base = f.target;
  Sketch cur = f.target;
  for (Idx u = 0; u < t.edge_count(); ++u) {
    for (EqStep st : {EqStep{EqRightUnit{f.e[u]}}, EqStep{EqLeftUnit{f.e[u]}}}) {
      cur = apply_eq_step(cur, st).first;
      out.ext.steps.push_back(std::move(st));
    }
  }
  std::vector<Idx> theta_n(t.node_count());
  std::vector<Idx> theta_e(t.edge_count());
  for (Idx x = 0; x < t.node_count(); ++x) theta_n[x] = cur.n_id[f.n[x]];
  for (Idx u = 0; u < t.edge_count(); ++u) theta_e[u] = f.e[u];
  const SketchHom fr = retarget(f, cur);
  out.alpha = make_two_cell_hom(ar, fr, fr, theta_n, theta_e);
  return out;
}

ArrowExtension arrow_extension(const Context& t1, const Extension& c) {
  if (!(c.base == t1.apex))
    throw KernelError("arrow_extension: extension base differs from the context apex");
  const auto ar1 = build_arrow_context(t1);
  ArrowExtension out;
  out.ext.base = ar1.ctx.apex;
  Sketch cur = ar1.ctx.apex;

  auto splice = [](std::vector<Idx>& map, const std::vector<Idx>& from,
                   const std::vector<Idx>& to) {
    for (size_t k = 0; k < from.size(); ++k) {
      if (map.size() <= from[k]) map.resize(from[k] + 1);
      map[from[k]] = to[k];
    }
  };
  auto replay_copy = [&](SketchHom g) {
    Sketch src = t1.apex;
    for (const auto& step : c.steps) {
      const ExtensionStep tstep = translate_step(step, g);
      auto [src2, dl] = apply_step(src, step);
      auto [cur2, dr] = apply_step(cur, tstep);
      g.source = src2;
      g.target = cur2;
      splice(g.n, dl.nodes, dr.nodes);
      splice(g.e, dl.edges, dr.edges);
      splice(g.tri, dl.tris, dr.tris);
      splice(g.ut, dl.uts, dr.uts);
      splice(g.upb, dl.upbs, dr.upbs);
      splice(g.ui, dl.uis, dr.uis);
      splice(g.upo, dl.upos, dr.upos);
      splice(g.ul, dl.uls, dr.uls);
      src = std::move(src2);
      cur = std::move(cur2);
      out.ext.steps.push_back(tstep);
    }
    return g;
  };
  SketchHom g0 = replay_copy(retarget(ar1.i0, cur));
  SketchHom g1 = replay_copy(retarget(g0.source == t1.apex ? ar1.i1 : ar1.i1, cur));
  g0.target = cur;  // copy-1 steps grew the target after copy 0

  const Sketch apex_c = apply_extension(c).result;
  // theta carriers for every element of apex(c)
  std::vector<Idx> theta_n(apex_c.node_count());
  std::vector<Idx> theta_e(apex_c.edge_count());
  std::vector<Idx> sq0(apex_c.edge_count()), sq1(apex_c.edge_count());
  for (Idx x = 0; x < t1.apex.node_count(); ++x) theta_n[x] = ar1.theta_node[x];
  for (Idx u = 0; u < t1.apex.edge_count(); ++u) {
    theta_e[u] = ar1.theta_edge[u];
    sq0[u] = ar1.square0[u];
    sq1[u] = ar1.square1[u];
  }
  auto push = [&](const ExtensionStep& st) {
    auto [next, d] = apply_step(cur, st);
    cur = std::move(next);
    out.ext.steps.push_back(st);
    return d;
  };
  for (Idx x = t1.apex.node_count(); x < apex_c.node_count(); ++x)
    theta_n[x] = push(AddPrimitiveEdge{g0.n[x], g1.n[x]}).edges[0];
  for (Idx u = t1.apex.edge_count(); u < apex_c.edge_count(); ++u) {
    const Idx X = apex_c.e_dom[u];
    const Idx Y = apex_c.e_cod[u];
    theta_e[u] = push(AddPrimitiveEdge{g0.n[X], g1.n[Y]}).edges[0];
    sq0[u] = push(AddCommutativity{g0.e[u], theta_n[Y], theta_e[u]}).tris[0];
    sq1[u] = push(AddCommutativity{theta_n[X], g1.e[u], theta_e[u]}).tris[0];
  }

  // the reordering isomorphism from arrow(T1') built directly
  const Context ctx1p = make_context(compose_extensions(t1.ext, c).steps);
  const auto ar1p = build_arrow_context(ctx1p);
  SketchHom h;
  h.source = ar1p.ctx.apex;
  h.target = cur;
  h.n.assign(ar1p.ctx.apex.node_count(), 0);
  h.e.assign(ar1p.ctx.apex.edge_count(), 0);
  h.tri.assign(ar1p.ctx.apex.tri_count(), 0);
  h.ut.assign(ar1p.ctx.apex.ut_count(), 0);
  h.upb.assign(ar1p.ctx.apex.upb_count(), 0);
  h.ui.assign(ar1p.ctx.apex.ui_count(), 0);
  h.upo.assign(ar1p.ctx.apex.upo_count(), 0);
  h.ul.assign(ar1p.ctx.apex.ul_count(), 0);
  for (Idx x = 0; x < apex_c.node_count(); ++x) {
    h.n[ar1p.i0.n[x]] = g0.n[x];
    h.n[ar1p.i1.n[x]] = g1.n[x];
    h.e[ar1p.theta_node[x]] = theta_n[x];
  }
  for (Idx u = 0; u < apex_c.edge_count(); ++u) {
    h.e[ar1p.i0.e[u]] = g0.e[u];
    h.e[ar1p.i1.e[u]] = g1.e[u];
    h.e[ar1p.theta_edge[u]] = theta_e[u];
    h.tri[ar1p.square0[u]] = sq0[u];
    h.tri[ar1p.square1[u]] = sq1[u];
  }
  for (Idx t = 0; t < apex_c.tri_count(); ++t) {
    h.tri[ar1p.i0.tri[t]] = g0.tri[t];
    h.tri[ar1p.i1.tri[t]] = g1.tri[t];
  }
  for (Idx w = 0; w < apex_c.ut_count(); ++w) {
    h.ut[ar1p.i0.ut[w]] = g0.ut[w];
    h.ut[ar1p.i1.ut[w]] = g1.ut[w];
  }
  for (Idx w = 0; w < apex_c.upb_count(); ++w) {
    h.upb[ar1p.i0.upb[w]] = g0.upb[w];
    h.upb[ar1p.i1.upb[w]] = g1.upb[w];
  }
  for (Idx w = 0; w < apex_c.ui_count(); ++w) {
    h.ui[ar1p.i0.ui[w]] = g0.ui[w];
    h.ui[ar1p.i1.ui[w]] = g1.ui[w];
  }
  for (Idx w = 0; w < apex_c.upo_count(); ++w) {
    h.upo[ar1p.i0.upo[w]] = g0.upo[w];
    h.upo[ar1p.i1.upo[w]] = g1.upo[w];
  }
  for (Idx w = 0; w < apex_c.ul_count(); ++w) {
    h.ul[ar1p.i0.ul[w]] = g0.ul[w];
    h.ul[ar1p.i1.ul[w]] = g1.ul[w];
  }
  const auto rep = validate_hom(h);
  if (!rep.ok())
    throw KernelError("arrow_extension: reordering map is not a homomorphism: " +
                      rep.to_string());
  out.from_arrow1p = std::move(h);
  return out;
}

DiagramContext build_diagram_context(const Context& t, const FiniteCategory& c) {
  if (c.identity.size() != c.objects)
    throw KernelError("build_diagram_context: identity table size mismatch");
  DiagramContext out;
  std::vector<ExtensionStep> steps;
  Sketch cur = empty_sketch();
  std::vector<SketchHom> incl(c.objects);
  for (Idx i = 0; i < c.objects; ++i) {
    const auto rx = reindex(t.ext, empty_hom_into(cur));
    steps.insert(steps.end(), rx.ext.steps.begin(), rx.ext.steps.end());
    cur = apply_extension(rx.ext).result;
    incl[i] = rx.eps;
    for (Idx j = 0; j < i; ++j) incl[j] = retarget(incl[j], cur);
  }
  out.theta_node.resize(c.arrows.size());
  out.theta_edge.resize(c.arrows.size());
  for (size_t a = 0; a < c.arrows.size(); ++a) {
    const auto [d, cc] = c.arrows[a];
    if (d >= c.objects || cc >= c.objects)
      throw KernelError("build_diagram_context: arrow endpoint out of range");
    const auto th = build_theta_extension(t.apex, retarget(incl[d], cur),
                                          retarget(incl[cc], cur));
    steps.insert(steps.end(), th.ext.steps.begin(), th.ext.steps.end());
    cur = apply_extension(th.ext).result;
    out.theta_node[a] = th.theta_node;
    out.theta_edge[a] = th.theta_edge;
  }
  // functoriality: identity arrows collapse to identities, composites agree
  auto add_comm = [&](Idx l, Idx r, Idx cc) {
    const ExtensionStep st = AddCommutativity{l, r, cc};
    cur = apply_step(cur, st).first;
    steps.push_back(st);
  };
  for (Idx i = 0; i < c.objects; ++i) {
    const Idx ai = c.identity[i];
    for (Idx x = 0; x < t.apex.node_count(); ++x) {
      const Idx idx = cur.n_id[incl[i].n[x]];
      add_comm(idx, out.theta_node[ai][x], idx);
    }
  }
  for (size_t a = 0; a < c.arrows.size(); ++a)
    for (size_t b = 0; b < c.arrows.size(); ++b) {
      if (c.arrows[a].second != c.arrows[b].first) continue;
      if (c.comp.empty()) continue;
      const Idx ab = c.comp[a][b];
      for (Idx x = 0; x < t.apex.node_count(); ++x)
        add_comm(out.theta_node[a][x], out.theta_node[b][x], out.theta_node[ab][x]);
    }
  out.ctx = make_context(std::move(steps));
  for (auto& h : incl) h = retarget(h, out.ctx.apex);
  out.obj_incl = std::move(incl);
  return out;
}

}  // namespace auk
