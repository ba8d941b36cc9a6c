#include "auk/limits.hpp"

namespace auk {

ProductResult build_product(const Context& t0, const Context& t1) {
  ProductResult out;
  const auto rx = reindex(t1.ext, empty_hom_into(t0.apex));
  std::vector<ExtensionStep> steps = t0.ext.steps;
  steps.insert(steps.end(), rx.ext.steps.begin(), rx.ext.steps.end());
  out.ctx = make_context(std::move(steps));
  out.incl0 = retarget(inclusion_hom(t0.apex, apply_extension(rx.ext).result),
                       out.ctx.apex);
  out.incl1 = retarget(rx.eps, out.ctx.apex);
  out.proj0 = ContextMap{out.ctx, t0, EqExtension{out.ctx.apex, {}}, out.incl0};
  out.proj1 = ContextMap{out.ctx, t1, EqExtension{out.ctx.apex, {}}, out.incl1};
  return out;
}

HomContextResult build_hom_context(const Context& t) {
  HomContextResult out;
  out.arrow = build_arrow_context(t);
  out.dom = ContextMap{out.arrow.ctx, t, EqExtension{out.arrow.ctx.apex, {}},
                       out.arrow.i0};
  out.cod = ContextMap{out.arrow.ctx, t, EqExtension{out.arrow.ctx.apex, {}},
                       out.arrow.i1};
  return out;
}

InserterResult build_inserter(const Context& host, const Context& t1,
                              const SketchHom& f0, const SketchHom& f1) {
  if (!(f0.source == t1.apex) || !(f1.source == t1.apex))
    throw KernelError("build_inserter: homomorphisms must start at the shape context");
  if (!(f0.target == host.apex) || !(f1.target == host.apex))
    throw KernelError("build_inserter: homomorphisms must land in the host apex");
  InserterResult out;
  out.theta = build_theta_extension(t1.apex, f0, f1);
  std::vector<ExtensionStep> steps = host.ext.steps;
  steps.insert(steps.end(), out.theta.ext.steps.begin(), out.theta.ext.steps.end());
  out.ctx = make_context(std::move(steps));
  out.incl = inclusion_hom(host.apex, out.ctx.apex);
  return out;
}

EquifierResult build_equifier(const Context& host, const Context& t1,
                              const SketchHom& alpha, const SketchHom& beta) {
  const auto ar = build_arrow_context(t1);
  if (!(alpha.source == ar.ctx.apex) || !(beta.source == ar.ctx.apex))
    throw KernelError("build_equifier: cells must start at the hom context");
  if (!(alpha.target == host.apex) || !(beta.target == host.apex))
    throw KernelError("build_equifier: cells must land in the host apex");
  if (!hom_equal(compose_hom(ar.i0, alpha), compose_hom(ar.i0, beta)) ||
      !hom_equal(compose_hom(ar.i1, alpha), compose_hom(ar.i1, beta)))
    throw KernelError("build_equifier: cells must share their domain and codomain");
  EquifierResult out;
  std::vector<ExtensionStep> steps = host.ext.steps;
  Sketch cur = host.apex;
  auto add_unary = [&](Idx a, Idx bb) {
    const ExtensionStep st = AddCommutativity{cur.n_id[cur.e_dom[a]], a, bb};
    auto [next, d] = apply_step(cur, st);
    cur = std::move(next);
    steps.push_back(st);
    return d.tris[0];
  };
  for (Idx x = 0; x < t1.apex.node_count(); ++x)
    out.node_comms.push_back(
        add_unary(alpha.e[ar.theta_node[x]], beta.e[ar.theta_node[x]]));
  for (Idx u = 0; u < t1.apex.edge_count(); ++u)
    out.edge_comms.push_back(
        add_unary(alpha.e[ar.theta_edge[u]], beta.e[ar.theta_edge[u]]));
  out.ctx = make_context(std::move(steps));
  out.incl = inclusion_hom(host.apex, out.ctx.apex);
  return out;
}

ExtensionPullbackResult pullback_extension_map(const Context& t1, const Extension& c,
                                               const ContextMap& m) {
  if (!(c.base == t1.apex))
    throw KernelError("pullback_extension_map: extension base differs from t1");
  if (!(m.target.apex == t1.apex))
    throw KernelError("pullback_extension_map: map does not land in t1");
  const auto rx = reindex(c, m.f);
  ExtensionPullbackResult out;
  std::vector<ExtensionStep> steps = m.source.ext.steps;
  const Extension me_ext = as_extension(m.e);
  steps.insert(steps.end(), me_ext.steps.begin(), me_ext.steps.end());
  steps.insert(steps.end(), rx.ext.steps.begin(), rx.ext.steps.end());
  out.vertex = make_context(std::move(steps));
  out.to_t0 = ContextMap{out.vertex, m.source, EqExtension{out.vertex.apex, {}},
                         inclusion_hom(m.source.apex, out.vertex.apex)};
  const Context t1p = make_context(compose_extensions(t1.ext, c).steps);
  out.to_t1p = ContextMap{out.vertex, t1p, EqExtension{out.vertex.apex, {}},
                          retarget(rx.eps, out.vertex.apex)};
  out.along = m;
  out.ext_c = c;
  return out;
}

ContextMap pullback_fillin(const ExtensionPullbackResult& pb, const ContextMap& to_t0,
                           const ContextMap& to_t1p) {
  if (!(to_t0.source.apex == to_t1p.source.apex))
    throw KernelError("pullback_fillin: cone legs have different sources");
  if (!(to_t0.target.apex == pb.to_t0.target.apex) ||
      !(to_t1p.target.apex == pb.to_t1p.target.apex))
    throw KernelError("pullback_fillin: cone legs have the wrong targets");

  // align the two legs over a common refinement
  const auto cr = common_refinement(to_t0.e, to_t1p.e);
  const auto fh = compose_hom(to_t0.f, cr.eps1.eps);
  const auto fg = compose_hom(to_t1p.f, cr.eps2.eps);

  // reindex m's extension along the t0 leg to cover the vertex prefix
  const auto rxm = reindex_eq(pb.along.e, fh);
  EqExtension efill = cr.e;
  efill.steps.insert(efill.steps.end(), rxm.ext.steps.begin(), rxm.ext.steps.end());
  const Sketch efill_apex = apply_eq_extension(efill).result;
  const SketchHom fg_lift = retarget(fg, efill_apex);

  // region split of the vertex: the m.e prefix (covered by rxm.eps) and the
  // reindexed c-delta (covered by the eps-preimages and fg)
  const Sketch me_apex = apply_eq_extension(pb.along.e).result;
  const Sketch& vapex = pb.vertex.apex;
  const SketchHom& eps = pb.to_t1p.f;  // t1p.apex -> vertex.apex

  SketchHom f_fill;
  f_fill.source = vapex;
  f_fill.target = efill_apex;
  auto assemble = [&](std::vector<Idx>& out_map, const std::vector<Idx>& pre_map,
                      const std::vector<Idx>& g_map, const std::vector<Idx>& eps_map,
                      Idx vertex_count, Idx prefix_count, Idx t1p_count) {
    out_map.assign(vertex_count, 0);
    std::vector<std::optional<Idx>> back(vertex_count);
    for (Idx k = 0; k < t1p_count; ++k) back[eps_map[k]] = k;
    for (Idx k = 0; k < vertex_count; ++k) {
      if (k < prefix_count)
        out_map[k] = pre_map[k];
      else if (back[k])
        out_map[k] = g_map[*back[k]];
      else
        throw KernelError("pullback_fillin: vertex element outside both regions");
    }
  };
  assemble(f_fill.n, rxm.eps.n, fg_lift.n, eps.n, vapex.node_count(),
           me_apex.node_count(), pb.to_t1p.target.apex.node_count());
  assemble(f_fill.e, rxm.eps.e, fg_lift.e, eps.e, vapex.edge_count(),
           me_apex.edge_count(), pb.to_t1p.target.apex.edge_count());
  assemble(f_fill.tri, rxm.eps.tri, fg_lift.tri, eps.tri, vapex.tri_count(),
           me_apex.tri_count(), pb.to_t1p.target.apex.tri_count());
  assemble(f_fill.ut, rxm.eps.ut, fg_lift.ut, eps.ut, vapex.ut_count(),
           me_apex.ut_count(), pb.to_t1p.target.apex.ut_count());
  assemble(f_fill.upb, rxm.eps.upb, fg_lift.upb, eps.upb, vapex.upb_count(),
           me_apex.upb_count(), pb.to_t1p.target.apex.upb_count());
  assemble(f_fill.ui, rxm.eps.ui, fg_lift.ui, eps.ui, vapex.ui_count(),
           me_apex.ui_count(), pb.to_t1p.target.apex.ui_count());
  assemble(f_fill.upo, rxm.eps.upo, fg_lift.upo, eps.upo, vapex.upo_count(),
           me_apex.upo_count(), pb.to_t1p.target.apex.upo_count());
  assemble(f_fill.ul, rxm.eps.ul, fg_lift.ul, eps.ul, vapex.ul_count(),
           me_apex.ul_count(), pb.to_t1p.target.apex.ul_count());

  const auto rep = validate_hom(f_fill);
  if (!rep.ok())
    throw KernelError("pullback_fillin: assembled fillin is not a homomorphism "
                      "(the cone does not commute strictly): " +
                      rep.to_string());
  // the cone must factor strictly through both legs
  if (!hom_equal(compose_hom(eps, f_fill), fg_lift))
    throw KernelError("pullback_fillin: the t1' leg does not factor strictly");

  ContextMap out;
  out.source = to_t0.source;
  out.target = pb.vertex;
  out.e = efill;
  out.f = f_fill;
  return out;
}

}  // namespace auk
