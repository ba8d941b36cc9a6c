#include "auk/extension.hpp"

#include <sstream>

namespace auk {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw KernelError(what);
}

void check_node(const Sketch& s, Idx x, const char* what) {
  if (x >= s.node_count()) {
    std::ostringstream os;
    os << what << ": node reference " << x << " out of range";
    throw KernelError(os.str());
  }
}

void check_edge(const Sketch& s, Idx u, const char* what) {
  if (u >= s.edge_count()) {
    std::ostringstream os;
    os << what << ": edge reference " << u << " out of range";
    throw KernelError(os.str());
  }
}

Idx push_node(Sketch& s, StepDelta& d) {
  const Idx x = s.node_count();
  const Idx i = s.edge_count();
  s.n_id.push_back(i);
  s.e_dom.push_back(x);
  s.e_cod.push_back(x);
  d.nodes.push_back(x);
  d.edges.push_back(i);
  return x;
}

Idx push_edge(Sketch& s, StepDelta& d, Idx dom, Idx cod) {
  const Idx i = s.edge_count();
  s.e_dom.push_back(dom);
  s.e_cod.push_back(cod);
  d.edges.push_back(i);
  return i;
}

Idx push_tri(Sketch& s, StepDelta& d, Idx l, Idx r, Idx c) {
  const Idx t = s.tri_count();
  s.tri_l.push_back(l);
  s.tri_r.push_back(r);
  s.tri_c.push_back(c);
  d.tris.push_back(t);
  return t;
}

}  // namespace

std::pair<Sketch, StepDelta> apply_step(const Sketch& base, const ExtensionStep& step) {
  Sketch s = base;
  StepDelta d;

  if (std::holds_alternative<AddPrimitiveNode>(step)) {
    push_node(s, d);
  } else if (const auto* e = std::get_if<AddPrimitiveEdge>(&step)) {
    check_node(base, e->dom, "AddPrimitiveEdge");
    check_node(base, e->cod, "AddPrimitiveEdge");
    push_edge(s, d, e->dom, e->cod);
  } else if (const auto* c = std::get_if<AddCommutativity>(&step)) {
    check_edge(base, c->l, "AddCommutativity");
    check_edge(base, c->r, "AddCommutativity");
    check_edge(base, c->c, "AddCommutativity");
    require(base.e_cod[c->l] == base.e_dom[c->r],
            "AddCommutativity: edges l and r do not compose");
    require(base.e_dom[c->l] == base.e_dom[c->c] && base.e_cod[c->r] == base.e_cod[c->c],
            "AddCommutativity: edge c is not parallel to the composite");
    push_tri(s, d, c->l, c->r, c->c);
  } else if (std::holds_alternative<AddTerminal>(step)) {
    const Idx t = push_node(s, d);
    s.ut_n.push_back(t);
    d.uts.push_back(s.ut_count() - 1);
  } else if (std::holds_alternative<AddInitial>(step)) {
    const Idx z = push_node(s, d);
    s.ui_n.push_back(z);
    d.uis.push_back(s.ui_count() - 1);
  } else if (const auto* pb = std::get_if<AddPullback>(&step)) {
    check_edge(base, pb->u1, "AddPullback");
    check_edge(base, pb->u2, "AddPullback");
    require(base.e_cod[pb->u1] == base.e_cod[pb->u2],
            "AddPullback: data is not a cospan");
    const Idx P = s.node_count();
    s.n_id.push_back(s.edge_count() + 3);  // id(P) is the fourth delta edge
    d.nodes.push_back(P);
    const Idx p1 = push_edge(s, d, P, base.e_dom[pb->u1]);
    const Idx p = push_edge(s, d, P, base.e_cod[pb->u1]);
    const Idx p2 = push_edge(s, d, P, base.e_dom[pb->u2]);
    push_edge(s, d, P, P);  // id(P)
    const Idx t1 = push_tri(s, d, p1, pb->u1, p);
    const Idx t2 = push_tri(s, d, p2, pb->u2, p);
    s.upb_tri1.push_back(t1);
    s.upb_tri2.push_back(t2);
    d.upbs.push_back(s.upb_count() - 1);
  } else if (const auto* po = std::get_if<AddPushout>(&step)) {
    check_edge(base, po->u1, "AddPushout");
    check_edge(base, po->u2, "AddPushout");
    require(base.e_dom[po->u1] == base.e_dom[po->u2],
            "AddPushout: data is not a span");
    const Idx Q = s.node_count();
    s.n_id.push_back(s.edge_count() + 3);  // id(Q) is the fourth delta edge
    d.nodes.push_back(Q);
    const Idx j1 = push_edge(s, d, base.e_cod[po->u1], Q);
    const Idx j = push_edge(s, d, base.e_dom[po->u1], Q);
    const Idx j2 = push_edge(s, d, base.e_cod[po->u2], Q);
    push_edge(s, d, Q, Q);  // id(Q)
    const Idx t1 = push_tri(s, d, po->u1, j1, j);
    const Idx t2 = push_tri(s, d, po->u2, j2, j);
    s.upo_tri1.push_back(t1);
    s.upo_tri2.push_back(t2);
    d.upos.push_back(s.upo_count() - 1);
  } else if (const auto* lo = std::get_if<AddListObject>(&step)) {
    check_node(base, lo->node, "AddListObject");
    const Idx A = lo->node;
    const Idx T = s.node_count();
    const Idx L = T + 1;
    const Idx P = T + 2;
    const Idx e0 = s.edge_count();
    for (Idx k = 0; k < 3; ++k) {
      s.n_id.push_back(e0 + 7 + k);  // id(T), id(L), id(P) sit after the 7 named edges
      d.nodes.push_back(T + k);
    }
    s.e_dom.insert(s.e_dom.end(), {T, P, P, P, P, A, L, T, L, P});
    s.e_cod.insert(s.e_cod.end(), {L, L, L, T, A, T, T, T, L, P});
    for (Idx k = 0; k < 10; ++k) d.edges.push_back(e0 + k);
    const Idx eps = e0, cons = e0 + 1, p1 = e0 + 2, p = e0 + 3, p2 = e0 + 4,
              bangA = e0 + 5, bangL = e0 + 6;
    const Idx t1 = push_tri(s, d, p1, bangL, p);
    const Idx t2 = push_tri(s, d, p2, bangA, p);
    s.ut_n.push_back(T);
    d.uts.push_back(s.ut_count() - 1);
    s.upb_tri1.push_back(t1);
    s.upb_tri2.push_back(t2);
    d.upbs.push_back(s.upb_count() - 1);
    s.ul_pb.push_back(s.upb_count() - 1);
    s.ul_t.push_back(s.ut_count() - 1);
    s.ul_e.push_back(eps);
    s.ul_cons.push_back(cons);
    d.uls.push_back(s.ul_count() - 1);
  } else {
    throw KernelError("apply_step: unknown step kind");
  }

  return {std::move(s), std::move(d)};
}

SketchHom inclusion_hom(const Sketch& base, const Sketch& apex) {
  SketchHom h;
  h.source = base;
  h.target = apex;
  auto iota = [](Idx k) {
    std::vector<Idx> v(k);
    for (Idx i = 0; i < k; ++i) v[i] = i;
    return v;
  };
  h.n = iota(base.node_count());
  h.e = iota(base.edge_count());
  h.tri = iota(base.tri_count());
  h.ut = iota(base.ut_count());
  h.upb = iota(base.upb_count());
  h.ui = iota(base.ui_count());
  h.upo = iota(base.upo_count());
  h.ul = iota(base.ul_count());
  return h;
}

ApplyResult apply_extension(const Sketch& base, const Extension& ext) {
  if (!(ext.base == base))
    throw KernelError("apply_extension: extension base differs from given sketch");
  Sketch s = base;
  for (const auto& step : ext.steps) s = apply_step(s, step).first;
  ApplyResult r;
  r.inclusion = inclusion_hom(base, s);
  r.result = std::move(s);
  return r;
}

Context make_context(std::vector<ExtensionStep> steps) {
  Context c;
  c.ext.base = empty_sketch();
  c.ext.steps = std::move(steps);
  c.apex = apply_extension(c.ext).result;
  return c;
}

Extension compose_extensions(const Extension& c1, const Extension& c2) {
  const Sketch mid = apply_extension(c1).result;
  if (!(c2.base == mid))
    throw KernelError("compose_extensions: base of second differs from apex of first");
  Extension out;
  out.base = c1.base;
  out.steps = c1.steps;
  out.steps.insert(out.steps.end(), c2.steps.begin(), c2.steps.end());
  return out;
}

ExtensionStep translate_step(const ExtensionStep& step, const SketchHom& f) {
  return std::visit(
      [&](const auto& st) -> ExtensionStep {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, AddPrimitiveNode> ||
                      std::is_same_v<T, AddTerminal> || std::is_same_v<T, AddInitial>) {
          return st;
        } else if constexpr (std::is_same_v<T, AddPrimitiveEdge>) {
          return AddPrimitiveEdge{f.n[st.dom], f.n[st.cod]};
        } else if constexpr (std::is_same_v<T, AddCommutativity>) {
          return AddCommutativity{f.e[st.l], f.e[st.r], f.e[st.c]};
        } else if constexpr (std::is_same_v<T, AddPullback>) {
          return AddPullback{f.e[st.u1], f.e[st.u2]};
        } else if constexpr (std::is_same_v<T, AddPushout>) {
          return AddPushout{f.e[st.u1], f.e[st.u2]};
        } else {
          static_assert(std::is_same_v<T, AddListObject>);
          return AddListObject{f.n[st.node]};
        }
      },
      step);
}

namespace {

// Extends a hom g: s -> s' over the deltas of one step applied on both sides,
// mapping each delta element of the left application to the corresponding
// delta element of the right application.
void extend_over_delta(SketchHom& g, const Sketch& new_src, const Sketch& new_tgt,
                       const StepDelta& dl, const StepDelta& dr) {
  g.source = new_src;
  g.target = new_tgt;
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
}

}  // namespace

ReindexResult reindex(const Extension& ext, const SketchHom& f) {
  if (!(ext.base == f.source))
    throw KernelError("reindex: extension base differs from hom source");
  ReindexResult out;
  out.ext.base = f.target;
  SketchHom g = f;  // evolving hom: accumulated source prefix -> accumulated target
  Sketch src = ext.base;
  Sketch tgt = f.target;
  for (const auto& step : ext.steps) {
    ExtensionStep tstep = translate_step(step, g);
    auto [src2, dl] = apply_step(src, step);
    auto [tgt2, dr] = apply_step(tgt, tstep);
    extend_over_delta(g, src2, tgt2, dl, dr);
    src = std::move(src2);
    tgt = std::move(tgt2);
    out.ext.steps.push_back(std::move(tstep));
  }
  out.eps = std::move(g);
  return out;
}

}  // namespace auk
