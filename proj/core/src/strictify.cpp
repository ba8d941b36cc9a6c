#include <sstream>

#include "auk/setmodel.hpp"

namespace auk {

namespace {

Iso identity_iso(const SetObjPtr& s) {
  return Iso{identity_mor(s), identity_mor(s)};
}

SetMor invert_bijection(const SetMor& f, const char* who) {
  if (!is_finite(f.dom) || !is_finite(f.cod))
    throw ModelError(std::string(who) + ": cannot invert a morphism on lazy carriers");
  std::map<SetElem, SetElem> t;
  for (const auto& x : f.dom->elems) {
    const SetElem y = f(x);
    if (t.count(y))
      throw ModelError(std::string(who) + ": comparison map is not injective");
    t[y] = x;
  }
  if (t.size() != f.cod->elems.size())
    throw ModelError(std::string(who) + ": comparison map is not surjective");
  return tabulate(f.cod, f.dom, std::move(t));
}

// elementwise list map
SetMor map_lists(const SetObjPtr& dom, const SetObjPtr& cod, const SetMor& base) {
  SetMor b = base;
  return from_rule(dom, cod, [b](const SetElem& xs) {
    std::vector<SetElem> out;
    out.reserve(xs.kids.size());
    for (const auto& k : xs.kids) out.push_back(b(k));
    return SetElem::list(std::move(out));
  });
}

SetMor map_pairs(const SetObjPtr& dom, const SetObjPtr& cod, const SetMor& l,
                 const SetMor& r) {
  SetMor lf = l, rf = r;
  return from_rule(dom, cod, [lf, rf](const SetElem& x) {
    return SetElem::pair(lf(x.first()), rf(x.second()));
  });
}

class Strictifier {
 public:
  Strictifier(const SetModel& input, EvalOptions opts) : in_(input), opts_(opts) {
    m_.sketch = empty_sketch();
  }

  StrictifyResult run(const Context& ctx) {
    for (const auto& st : ctx.ext.steps) step(st);
    StrictifyResult out;
    m_.strict = true;
    out.model = std::move(m_);
    out.iso = std::move(iso_);
    return out;
  }

 private:
  // the claimed interpretation of element k in the input model
  const SetObjPtr& in_node(Idx x) const { return in_.node[x]; }
  const SetMor& in_edge(Idx u) const { return in_.edge[u]; }

  void push_node(SetObjPtr carrier, Iso iso) {
    m_.node.push_back(std::move(carrier));
    iso_.push_back(std::move(iso));
  }

  void check_comm(Idx t) {
    const SetMor lr = compose_mor(m_.edge[m_.sketch.tri_l[t]], m_.edge[m_.sketch.tri_r[t]]);
    const auto chk = mor_equal(lr, m_.edge[m_.sketch.tri_c[t]], opts_.list_bound);
    if (!chk.holds) {
      std::ostringstream os;
      os << "strictify: input violates commutativity #" << t << " at "
         << chk.counterexample->to_string();
      throw ModelError(os.str());
    }
  }

  // conjugate the input edge u through the isos of its endpoints
  SetMor conjugate(Idx u) {
    const Idx X = m_.sketch.e_dom[u];
    const Idx Y = m_.sketch.e_cod[u];
    return compose_mor(compose_mor(iso_[X].fwd, in_edge(u)), iso_[Y].bwd);
  }

  void step(const ExtensionStep& st) {
    auto [next, d] = apply_step(m_.sketch, st);
    m_.sketch = std::move(next);
    if (std::holds_alternative<AddPrimitiveNode>(st)) {
      const Idx x = d.nodes[0];
      if (!is_finite(in_node(x)))
        throw ModelError("strictify: primitive carriers must be finite");
      push_node(in_node(x), identity_iso(in_node(x)));
      m_.edge.push_back(identity_mor(m_.node.back()));
    } else if (std::holds_alternative<AddPrimitiveEdge>(st)) {
      m_.edge.push_back(conjugate(d.edges[0]));
    } else if (std::holds_alternative<AddCommutativity>(st)) {
      check_comm(d.tris[0]);
    } else if (std::holds_alternative<AddTerminal>(st)) {
      strictify_terminal(d.nodes[0]);
    } else if (std::holds_alternative<AddInitial>(st)) {
      const Idx z = d.nodes[0];
      if (!is_finite(in_node(z)) || !in_node(z)->elems.empty())
        throw ModelError("strictify: claimed initial object is not empty");
      push_node(fin_set({}), identity_iso(fin_set({})));
      m_.edge.push_back(identity_mor(m_.node.back()));
    } else if (const auto* pb = std::get_if<AddPullback>(&st)) {
      strictify_pullback(*pb, d);
    } else if (const auto* po = std::get_if<AddPushout>(&st)) {
      strictify_pushout(*po, d);
    } else if (const auto* lo = std::get_if<AddListObject>(&st)) {
      strictify_list(*lo, d);
    }
  }

  void strictify_terminal(Idx t_node) {
    const SetObjPtr& claimed = in_node(t_node);
    if (!is_finite(claimed) || claimed->elems.size() != 1)
      throw ModelError("strictify: claimed terminal is not a one-element carrier");
    const SetObjPtr one = terminal_carrier();
    Iso iso;
    iso.fwd = tabulate(one, claimed, {{SetElem::unit(), claimed->elems[0]}});
    iso.bwd = tabulate(claimed, one, {{claimed->elems[0], SetElem::unit()}});
    push_node(one, std::move(iso));
    m_.edge.push_back(identity_mor(one));
  }

  void strictify_pullback(const AddPullback& pb, const StepDelta& d) {
    const SetMor u1 = m_.edge[pb.u1];  // strictified legs
    const SetMor u2 = m_.edge[pb.u2];
    if (!is_finite(u1.dom) || !is_finite(u2.dom))
      throw ModelError(
          "strictify: pullbacks over lazy carriers are only supported when canonical");
    const auto parts = canonical_pullback(u1, u2);
    const Idx P = d.nodes[0];
    const Idx p1 = d.edges[0], pd = d.edges[1], p2 = d.edges[2];
    const SetObjPtr& claimed = in_node(P);
    if (!is_finite(claimed))
      throw ModelError("strictify: claimed pullback carrier must be finite here");
    // the claimed cone must commute in the input model
    if (!mor_equal(compose_mor(in_edge(p1), in_edge(pb.u1)), in_edge(pd),
                   opts_.list_bound)
             .holds ||
        !mor_equal(compose_mor(in_edge(p2), in_edge(pb.u2)), in_edge(pd),
                   opts_.list_bound)
             .holds)
      throw ModelError("strictify: claimed pullback cone does not commute");
    // comparison: (a,b) -> the unique q whose claimed projections hit a and b
    const Idx X1 = m_.sketch.e_cod[p1];
    const Idx X2 = m_.sketch.e_cod[p2];
    std::map<SetElem, SetElem> fwd, bwd;
    for (const auto& q : claimed->elems) {
      const SetElem a = iso_[X1].bwd(in_edge(p1)(q));
      const SetElem b = iso_[X2].bwd(in_edge(p2)(q));
      const SetElem pair = SetElem::pair(a, b);
      if (!contains(parts.carrier, pair))
        throw ModelError("strictify: claimed pullback has a stray element " +
                         q.to_string());
      if (fwd.count(pair))
        throw ModelError("strictify: claimed pullback is not jointly monic");
      fwd[pair] = q;
      bwd[q] = pair;
    }
    if (fwd.size() != parts.carrier->elems.size())
      throw ModelError("strictify: claimed pullback misses a cone element");
    Iso iso;
    iso.fwd = tabulate(parts.carrier, claimed, std::move(fwd));
    iso.bwd = tabulate(claimed, parts.carrier, std::move(bwd));
    push_node(parts.carrier, std::move(iso));
    m_.edge.push_back(parts.p1);
    m_.edge.push_back(parts.p);
    m_.edge.push_back(parts.p2);
    m_.edge.push_back(identity_mor(parts.carrier));
  }

  void strictify_pushout(const AddPushout& po, const StepDelta& d) {
    const SetMor u1 = m_.edge[po.u1];  // strictified legs
    const SetMor u2 = m_.edge[po.u2];
    const auto parts = canonical_pushout(u1, u2);
    const Idx Q = d.nodes[0];
    const Idx j1 = d.edges[0], jd = d.edges[1], j2 = d.edges[2];
    const SetObjPtr& claimed = in_node(Q);
    if (!is_finite(claimed))
      throw ModelError("strictify: claimed pushout carrier must be finite");
    if (!mor_equal(compose_mor(in_edge(po.u1), in_edge(j1)), in_edge(jd),
                   opts_.list_bound)
             .holds ||
        !mor_equal(compose_mor(in_edge(po.u2), in_edge(j2)), in_edge(jd),
                   opts_.list_bound)
             .holds)
      throw ModelError("strictify: claimed pushout cocone does not commute");
    // comparison: canonical class -> claimed value via the claimed cocone
    const Idx Y1 = m_.sketch.e_cod[po.u1];
    const Idx Y2 = m_.sketch.e_cod[po.u2];
    std::map<SetElem, SetElem> fwd;
    auto feed = [&](const SetMor& jparts, const SetMor& jin, const Iso& iy) {
      for (const auto& y0 : jparts.dom->elems) {
        const SetElem cls = jparts(y0);
        const SetElem val = jin(iy.fwd(y0));
        auto it = fwd.find(cls);
        if (it != fwd.end() && it->second != val)
          throw ModelError("strictify: claimed pushout cocone does not coequalize");
        fwd[cls] = val;
      }
    };
    feed(parts.j1, in_edge(j1), iso_[Y1]);
    feed(parts.j2, in_edge(j2), iso_[Y2]);
    std::map<SetElem, SetElem> bwd;
    for (const auto& [cls, val] : fwd) {
      if (bwd.count(val))
        throw ModelError("strictify: claimed pushout identifies too much");
      bwd[val] = cls;
    }
    if (fwd.size() != claimed->elems.size())
      throw ModelError("strictify: claimed pushout has stray elements");
    Iso iso;
    iso.fwd = tabulate(parts.carrier, claimed, std::move(fwd));
    iso.bwd = tabulate(claimed, parts.carrier, std::move(bwd));
    push_node(parts.carrier, std::move(iso));
    m_.edge.push_back(parts.j1);
    m_.edge.push_back(parts.j);
    m_.edge.push_back(parts.j2);
    m_.edge.push_back(identity_mor(parts.carrier));
  }

  void strictify_list(const AddListObject& lo, const StepDelta& d) {
    const SetObjPtr A0 = m_.node[lo.node];  // strictified base
    const auto parts = canonical_list(A0);
    const Idx Tn = d.nodes[0], Ln = d.nodes[1], Pn = d.nodes[2];
    // terminal component
    const SetObjPtr& claimedT = in_node(Tn);
    if (!is_finite(claimedT) || claimedT->elems.size() != 1)
      throw ModelError("strictify: claimed list terminal is not a one-element carrier");
    Iso isoT;
    isoT.fwd = tabulate(parts.T, claimedT, {{SetElem::unit(), claimedT->elems[0]}});
    isoT.bwd = tabulate(claimedT, parts.T, {{claimedT->elems[0], SetElem::unit()}});
    // list component: the claimed carrier must be the list carrier over the
    // claimed base; the comparison is the elementwise map of the base iso
    const SetObjPtr& claimedL = in_node(Ln);
    if (claimedL->kind != SetObjData::Kind::LazyList ||
        !obj_equal(claimedL->base, in_node(lo.node)))
      throw ModelError(
          "strictify: claimed list carrier must be the list object over the claimed base");
    Iso isoL;
    isoL.fwd = map_lists(parts.L, claimedL, iso_[lo.node].fwd);
    isoL.bwd = map_lists(claimedL, parts.L, iso_[lo.node].bwd);
    // product component: the claimed carrier must be the pullback carrier
    // over the claimed list and base
    const SetObjPtr& claimedP = in_node(Pn);
    if (claimedP->kind != SetObjData::Kind::LazyPullback ||
        !obj_equal(claimedP->u1->dom, claimedL) ||
        !obj_equal(claimedP->u2->dom, in_node(lo.node)))
      throw ModelError(
          "strictify: claimed list product must be the canonical pullback carrier");
    Iso isoP;
    isoP.fwd = map_pairs(parts.P, claimedP, isoL.fwd, iso_[lo.node].fwd);
    isoP.bwd = map_pairs(claimedP, parts.P, isoL.bwd, iso_[lo.node].bwd);

    push_node(parts.T, std::move(isoT));
    push_node(parts.L, std::move(isoL));
    push_node(parts.P, std::move(isoP));

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

    // the claimed structure maps must match the canonical ones across the iso
    const Idx eps = d.edges[0], cons = d.edges[1], p1 = d.edges[2], p2 = d.edges[4];
    auto square = [&](Idx e, const Iso& cod_iso) {
      return mor_equal(compose_mor(m_.edge[e], cod_iso.fwd),
                       compose_mor(iso_[m_.sketch.e_dom[e]].fwd, in_edge(e)),
                       opts_.list_bound)
          .holds;
    };
    if (!square(eps, iso_[Ln]))
      throw ModelError("strictify: claimed empty-list map disagrees with canonical");
    if (!square(cons, iso_[Ln]))
      throw ModelError("strictify: claimed cons map disagrees with canonical");
    if (!square(p1, iso_[Ln]) || !square(p2, iso_[lo.node]))
      throw ModelError("strictify: claimed list projections disagree with canonical");
  }

  const SetModel& in_;
  EvalOptions opts_;
  SetModel m_;
  std::vector<Iso> iso_;
};

}  // namespace

StrictifyResult strictify(const Context& ctx, const SetModel& m, const EvalOptions& opts) {
  if (!(m.sketch == ctx.apex))
    throw KernelError("strictify: model sketch differs from the context apex");
  Strictifier s(m, opts);
  return s.run(ctx);
}

}  // namespace auk
