#include <sstream>

#include "auk/setmodel.hpp"

namespace auk {

SetObjPtr terminal_carrier() { return fin_set({SetElem::unit()}); }

SetMor const_unit(SetObjPtr dom, SetObjPtr one) {
  if (is_finite(dom)) {
    std::map<SetElem, SetElem> t;
    for (const auto& x : dom->elems) t[x] = SetElem::unit();
    return tabulate(std::move(dom), std::move(one), std::move(t));
  }
  return from_rule(std::move(dom), std::move(one),
                   [](const SetElem&) { return SetElem::unit(); });
}

PullbackParts canonical_pullback(const SetMor& u1, const SetMor& u2) {
  PullbackParts out;
  if (is_finite(u1.dom) && is_finite(u2.dom)) {
    std::vector<SetElem> elems;
    for (const auto& a : u1.dom->elems)
      for (const auto& b : u2.dom->elems)
        if (u1(a) == u2(b)) elems.push_back(SetElem::pair(a, b));
    out.carrier = fin_set(std::move(elems));
    std::map<SetElem, SetElem> t1, td, t2;
    for (const auto& x : out.carrier->elems) {
      t1[x] = x.first();
      td[x] = u1(x.first());
      t2[x] = x.second();
    }
    out.p1 = tabulate(out.carrier, u1.dom, std::move(t1));
    out.p = tabulate(out.carrier, u1.cod, std::move(td));
    out.p2 = tabulate(out.carrier, u2.dom, std::move(t2));
    return out;
  }
  auto d = std::make_shared<SetObjData>();
  d->kind = SetObjData::Kind::LazyPullback;
  d->u1 = std::make_shared<SetMor>(u1);
  d->u2 = std::make_shared<SetMor>(u2);
  out.carrier = d;
  out.p1 = from_rule(out.carrier, u1.dom, [](const SetElem& x) { return x.first(); });
  SetMor leg = u1;
  out.p = from_rule(out.carrier, u1.cod,
                    [leg](const SetElem& x) { return leg(x.first()); });
  out.p2 = from_rule(out.carrier, u2.dom, [](const SetElem& x) { return x.second(); });
  return out;
}

namespace {

struct UnionFind {
  std::map<SetElem, SetElem> parent;
  SetElem find(const SetElem& x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      return x;
    }
    if (it->second == x) return x;
    const SetElem root = find(it->second);
    parent[x] = root;
    return root;
  }
  void unite(const SetElem& a, const SetElem& b) {
    const SetElem ra = find(a);
    const SetElem rb = find(b);
    if (ra == rb) return;
    // least element becomes the representative
    if (ra < rb)
      parent[rb] = ra;
    else
      parent[ra] = rb;
  }
};

}  // namespace

PushoutParts canonical_pushout(const SetMor& u1, const SetMor& u2) {
  if (!is_finite(u1.dom) || !is_finite(u1.cod) || !is_finite(u2.cod))
    throw ModelError(
        "pushout over a lazy carrier is not supported by the finite-set semantics");
  UnionFind uf;
  for (const auto& y : u1.cod->elems) uf.find(SetElem::tagged(0, y));
  for (const auto& y : u2.cod->elems) uf.find(SetElem::tagged(1, y));
  for (const auto& x : u1.dom->elems)
    uf.unite(SetElem::tagged(0, u1(x)), SetElem::tagged(1, u2(x)));
  std::vector<SetElem> reps;
  for (const auto& y : u1.cod->elems) reps.push_back(uf.find(SetElem::tagged(0, y)));
  for (const auto& y : u2.cod->elems) reps.push_back(uf.find(SetElem::tagged(1, y)));
  PushoutParts out;
  out.carrier = fin_set(std::move(reps));
  std::map<SetElem, SetElem> t1, t2, td;
  for (const auto& y : u1.cod->elems) t1[y] = uf.find(SetElem::tagged(0, y));
  for (const auto& y : u2.cod->elems) t2[y] = uf.find(SetElem::tagged(1, y));
  for (const auto& x : u1.dom->elems) td[x] = uf.find(SetElem::tagged(0, u1(x)));
  out.j1 = tabulate(u1.cod, out.carrier, std::move(t1));
  out.j2 = tabulate(u2.cod, out.carrier, std::move(t2));
  out.j = tabulate(u1.dom, out.carrier, std::move(td));
  return out;
}

ListParts canonical_list(const SetObjPtr& A) {
  ListParts out;
  out.T = terminal_carrier();
  out.L = lazy_list(A);
  out.bangA = const_unit(A, out.T);
  out.bangL = const_unit(out.L, out.T);
  const auto pb = canonical_pullback(out.bangL, out.bangA);
  out.P = pb.carrier;
  out.p1 = pb.p1;
  out.p = pb.p;
  out.p2 = pb.p2;
  out.eps = tabulate(out.T, out.L, {{SetElem::unit(), SetElem::list({})}});
  out.cons = from_rule(out.P, out.L, [](const SetElem& x) {
    std::vector<SetElem> xs;
    xs.reserve(x.first().kids.size() + 1);
    xs.push_back(x.second());
    xs.insert(xs.end(), x.first().kids.begin(), x.first().kids.end());
    return SetElem::list(std::move(xs));
  });
  return out;
}

namespace {

class Builder {
 public:
  Builder(Sketch start, std::vector<SetObjPtr> nodes, std::vector<SetMor> edges,
          EvalOptions opts)
      : opts_(opts) {
    m_.sketch = std::move(start);
    m_.node = std::move(nodes);
    m_.edge = std::move(edges);
  }

  SetModel take() { return std::move(m_); }
  const SetModel& model() const { return m_; }

  void check_tri(Idx t, const char* who) {
    const SetMor lr = compose_mor(m_.edge[m_.sketch.tri_l[t]], m_.edge[m_.sketch.tri_r[t]]);
    const auto chk = mor_equal(lr, m_.edge[m_.sketch.tri_c[t]], opts_.list_bound);
    if (!chk.holds) {
      std::ostringstream os;
      os << who << ": commutativity #" << t << " fails at element "
         << chk.counterexample->to_string();
      throw ModelError(os.str());
    }
  }

  // Applies one simple extension step to the sketch and interprets its delta.
  // prim supplies carriers for primitive steps; null inside equivalence rules
  // whose edges are computed.
  StepDelta apply_simple(const ExtensionStep& st, const PrimAssignment* prim,
                         bool fill_primitives) {
    auto [next, d] = apply_step(m_.sketch, st);
    m_.sketch = std::move(next);
    if (std::holds_alternative<AddPrimitiveNode>(st)) {
      if (fill_primitives) {
        const Idx x = d.nodes[0];
        m_.node.push_back(lookup_node(prim, x));
        m_.edge.push_back(identity_mor(m_.node.back()));
      } else {
        throw KernelError("model builder: unexpected primitive node");
      }
    } else if (std::holds_alternative<AddPrimitiveEdge>(st)) {
      if (fill_primitives) {
        const Idx u = d.edges[0];
        SetMor mor = lookup_edge(prim, u);
        // endpoint carriers may be left open when they are canonical
        if (!mor.dom) mor.dom = m_.node[m_.sketch.e_dom[u]];
        if (!mor.cod) mor.cod = m_.node[m_.sketch.e_cod[u]];
        if (!obj_equal(mor.dom, m_.node[m_.sketch.e_dom[u]]) ||
            !obj_equal(mor.cod, m_.node[m_.sketch.e_cod[u]]))
          throw ModelError("primitive edge assignment has mismatched carriers");
        m_.edge.push_back(std::move(mor));
      } else {
        // placeholder; the equivalence rule fills it right after
        m_.edge.push_back(SetMor{});
      }
    } else if (std::holds_alternative<AddCommutativity>(st)) {
      check_tri(d.tris[0], "commutativity step");
    } else if (std::holds_alternative<AddTerminal>(st)) {
      m_.node.push_back(terminal_carrier());
      m_.edge.push_back(identity_mor(m_.node.back()));
    } else if (std::holds_alternative<AddInitial>(st)) {
      m_.node.push_back(fin_set({}));
      m_.edge.push_back(identity_mor(m_.node.back()));
    } else if (const auto* pb = std::get_if<AddPullback>(&st)) {
      const auto parts = canonical_pullback(m_.edge[pb->u1], m_.edge[pb->u2]);
      m_.node.push_back(parts.carrier);
      m_.edge.push_back(parts.p1);
      m_.edge.push_back(parts.p);
      m_.edge.push_back(parts.p2);
      m_.edge.push_back(identity_mor(parts.carrier));
    } else if (const auto* po = std::get_if<AddPushout>(&st)) {
      const auto parts = canonical_pushout(m_.edge[po->u1], m_.edge[po->u2]);
      m_.node.push_back(parts.carrier);
      m_.edge.push_back(parts.j1);
      m_.edge.push_back(parts.j);
      m_.edge.push_back(parts.j2);
      m_.edge.push_back(identity_mor(parts.carrier));
    } else if (const auto* lo = std::get_if<AddListObject>(&st)) {
      const auto parts = canonical_list(m_.node[lo->node]);
      m_.node.push_back(parts.T);
      m_.node.push_back(parts.L);
      m_.node.push_back(parts.P);
      m_.edge.push_back(parts.eps);
      m_.edge.push_back(parts.cons);
      m_.edge.push_back(parts.p1);
      m_.edge.push_back(parts.p);
      m_.edge.push_back(parts.p2);
      m_.edge.push_back(parts.bangA);
      m_.edge.push_back(parts.bangL);
      m_.edge.push_back(identity_mor(parts.T));
      m_.edge.push_back(identity_mor(parts.L));
      m_.edge.push_back(identity_mor(parts.P));
    }
    return d;
  }

  void apply_eq(const EqStep& st);

 private:
  SetObjPtr lookup_node(const PrimAssignment* prim, Idx x) {
    if (!prim) throw KernelError("model builder: no assignment for primitive node");
    auto it = prim->nodes.find(x);
    if (it == prim->nodes.end())
      throw ModelError("no carrier assigned to primitive node " + std::to_string(x));
    if (!is_finite(it->second))
      throw ModelError("primitive node " + std::to_string(x) +
                       " must be assigned a finite carrier");
    return it->second;
  }

  SetMor lookup_edge(const PrimAssignment* prim, Idx u) {
    if (!prim) throw KernelError("model builder: no assignment for primitive edge");
    auto it = prim->edges.find(u);
    if (it == prim->edges.end())
      throw ModelError("no operation assigned to primitive edge " + std::to_string(u));
    return it->second;
  }

  SetMor invert_finite(Idx u, const char* rule) {
    const SetMor& f = m_.edge[u];
    if (!is_finite(f.dom) || !is_finite(f.cod))
      throw ModelError(std::string(rule) + ": inversion needs finite carriers");
    std::map<SetElem, SetElem> t;
    for (const auto& x : f.dom->elems) {
      const SetElem y = f(x);
      if (t.count(y))
        throw ModelError(std::string(rule) + ": edge is not injective at " + y.to_string());
      t[y] = x;
    }
    if (t.size() != f.cod->elems.size())
      throw ModelError(std::string(rule) + ": edge is not surjective");
    return tabulate(f.cod, f.dom, std::move(t));
  }

  EvalOptions opts_;
  SetModel m_;
};

void Builder::apply_eq(const EqStep& st) {
  check_eq_step(m_.sketch, st);
  const Sketch base = m_.sketch;
  // interpretations for the fresh edges, computed against the base
  std::vector<SetMor> fresh;
  if (const auto* c = std::get_if<EqComposition>(&st)) {
    fresh.push_back(compose_mor(m_.edge[c->u], m_.edge[c->v]));
  } else if (const auto* c = std::get_if<EqPullbackFillin>(&st)) {
    const SetMor v1 = m_.edge[base.tri_l[c->d1]];
    const SetMor v2 = m_.edge[base.tri_l[c->d2]];
    const Idx P = base.e_dom[base.tri_l[base.upb_tri1[c->upb]]];
    if (is_finite(v1.dom)) {
      std::map<SetElem, SetElem> t;
      for (const auto& x : v1.dom->elems) t[x] = SetElem::pair(v1(x), v2(x));
      fresh.push_back(tabulate(v1.dom, m_.node[P], std::move(t)));
    } else {
      fresh.push_back(from_rule(v1.dom, m_.node[P], [v1, v2](const SetElem& x) {
        return SetElem::pair(v1(x), v2(x));
      }));
    }
  } else if (const auto* c = std::get_if<EqPushoutFillin>(&st)) {
    const SetMor v1 = m_.edge[base.tri_r[c->d1]];
    const SetMor v2 = m_.edge[base.tri_r[c->d2]];
    const Idx j1e = base.tri_r[base.upo_tri1[c->upo]];
    const Idx j2e = base.tri_r[base.upo_tri2[c->upo]];
    const SetMor& j1 = m_.edge[j1e];
    const SetMor& j2 = m_.edge[j2e];
    const Idx Q = base.e_cod[j1e];
    std::map<SetElem, SetElem> t;
    for (const auto& y : j1.dom->elems) t[j1(y)] = v1(y);
    for (const auto& y : j2.dom->elems) {
      const SetElem q = j2(y);
      const SetElem val = v2(y);
      auto it = t.find(q);
      if (it != t.end() && it->second != val)
        throw ModelError("pushout fillin: cocone is inconsistent at " + q.to_string());
      t[q] = val;
    }
    if (t.size() != m_.node[Q]->elems.size())
      throw ModelError("pushout fillin: cocone misses a class of the pushout");
    fresh.push_back(tabulate(m_.node[Q], v1.cod, std::move(t)));
  } else if (const auto* c = std::get_if<EqTerminalFillin>(&st)) {
    fresh.push_back(const_unit(m_.node[c->node], m_.node[base.ut_n[c->ut]]));
  } else if (const auto* c = std::get_if<EqInitialFillin>(&st)) {
    fresh.push_back(tabulate(m_.node[base.ui_n[c->ui]], m_.node[c->node], {}));
  } else if (const auto* c = std::get_if<EqListFillin>(&st)) {
    const auto& cfg = c->cfg;
    const SetMor y = m_.edge[cfg.y];
    const SetMor g = m_.edge[cfg.g];
    const SetObjPtr LB = m_.node[base.e_dom[base.tri_l[base.upb_tri1[cfg.pb_LB]]]];
    const SetObjPtr ALB = m_.node[base.e_dom[base.tri_l[base.upb_tri1[cfg.pb_ALB]]]];
    const SetObjPtr AY = m_.node[base.e_dom[base.tri_l[base.upb_tri1[cfg.pb_AY]]]];
    const SetObjPtr Y = y.cod;
    // r by structural recursion on the list component
    auto rec = std::make_shared<std::function<SetElem(const SetElem&)>>();
    *rec = [y, g, rec](const SetElem& xb) {
      const SetElem& xs = xb.first();
      const SetElem& b = xb.second();
      if (xs.kids.empty()) return y(b);
      std::vector<SetElem> rest(xs.kids.begin() + 1, xs.kids.end());
      return g(SetElem::pair(xs.kids[0], (*rec)(SetElem::pair(SetElem::list(rest), b))));
    };
    const SetMor r = from_rule(LB, Y, *rec);
    const SetMor rp = from_rule(ALB, AY, [r](const SetElem& x) {
      return SetElem::pair(x.first(), r(x.second()));
    });
    const SetMor rpp = from_rule(ALB, Y, [r](const SetElem& x) { return r(x.second()); });
    const SetMor gp = from_rule(ALB, Y, [r, g](const SetElem& x) {
      return g(SetElem::pair(x.first(), r(x.second())));
    });
    const SetMor gpp = compose_mor(m_.edge[cfg.consB], r);
    fresh = {r, rp, rpp, gp, gpp};
  } else if (const auto* c = std::get_if<EqBalance>(&st)) {
    fresh.push_back(invert_finite(c->u, "balance"));
  } else if (const auto* c = std::get_if<EqInitStability>(&st)) {
    const SetMor& f = m_.edge[c->u];
    if (is_finite(f.dom) && !f.dom->elems.empty())
      throw ModelError("initial stability: domain of the inverted edge is not empty");
    fresh.push_back(tabulate(f.cod, f.dom, {}));
  } else if (const auto* c = std::get_if<EqPushoutStability>(&st)) {
    fresh.push_back(invert_finite(c->cfg.e, "pushout stability"));
  } else if (const auto* c = std::get_if<EqExactness>(&st)) {
    fresh.push_back(invert_finite(c->cfg.e, "exactness"));
  }
  // univ intros and comm-only rules need no precomputed edges

  size_t next_fresh = 0;
  std::vector<Idx> delta_tris;
  for (const auto& sub : expand_eq_step(base, st)) {
    if (std::holds_alternative<AddPrimitiveEdge>(sub)) {
      auto d = apply_simple(sub, nullptr, false);
      if (next_fresh >= fresh.size())
        throw KernelError("model builder: missing interpretation for a fresh edge");
      m_.edge[d.edges[0]] = fresh[next_fresh++];
    } else if (std::holds_alternative<AddCommutativity>(sub)) {
      auto [next, d] = apply_step(m_.sketch, sub);
      m_.sketch = std::move(next);
      delta_tris.push_back(d.tris[0]);
    } else {
      apply_simple(sub, nullptr, true);
    }
  }
  // soundness: every delta commutativity must hold in the extended model
  for (Idx t : delta_tris) {
    try {
      check_tri(t, eq_step_name(st));
    } catch (const ModelError& err) {
      throw ModelError(std::string("soundness harness: ") + err.what());
    }
  }
}

}  // namespace

SetModel interpret_context(const Context& ctx, const PrimAssignment& prim,
                           const EvalOptions& opts) {
  Builder b(empty_sketch(), {}, {}, opts);
  for (const auto& st : ctx.ext.steps) b.apply_simple(st, &prim, true);
  SetModel out = b.take();
  out.strict = true;
  return out;
}

SetModel extend_along_eqext(const SetModel& m, const EqExtension& e,
                            const EvalOptions& opts) {
  if (!(e.base == m.sketch))
    throw KernelError("extend_along_eqext: extension base differs from modelled sketch");
  if (!m.strict) throw KernelError("extend_along_eqext: model must be strict");
  Builder b(m.sketch, m.node, m.edge, opts);
  for (const auto& st : e.steps) b.apply_eq(st);
  SetModel out = b.take();
  out.strict = true;
  return out;
}

}  // namespace auk
