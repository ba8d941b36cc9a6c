#include "auk/setmodel.hpp"

#include <algorithm>
#include <sstream>

namespace auk {

SetElem SetElem::unit() { return SetElem{}; }

SetElem SetElem::make_atom(std::string name) {
  SetElem e;
  e.kind = Kind::Atom;
  e.atom = std::move(name);
  return e;
}

SetElem SetElem::pair(SetElem a, SetElem b) {
  SetElem e;
  e.kind = Kind::Pair;
  e.kids.push_back(std::move(a));
  e.kids.push_back(std::move(b));
  return e;
}

SetElem SetElem::tagged(unsigned t, SetElem x) {
  SetElem e;
  e.kind = Kind::Tag;
  e.tag = t;
  e.kids.push_back(std::move(x));
  return e;
}

SetElem SetElem::list(std::vector<SetElem> xs) {
  SetElem e;
  e.kind = Kind::List;
  e.kids = std::move(xs);
  return e;
}

std::strong_ordering SetElem::operator<=>(const SetElem& o) const {
  if (auto c = kind <=> o.kind; c != 0) return c;
  if (auto c = atom <=> o.atom; c != 0) return c;
  if (auto c = tag <=> o.tag; c != 0) return c;
  if (auto c = kids.size() <=> o.kids.size(); c != 0) return c;
  for (size_t i = 0; i < kids.size(); ++i)
    if (auto c = kids[i] <=> o.kids[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string SetElem::to_string() const {
  switch (kind) {
    case Kind::Unit: return "*";
    case Kind::Atom: return atom;
    case Kind::Pair: return "(" + kids[0].to_string() + "," + kids[1].to_string() + ")";
    case Kind::Tag: return "in" + std::to_string(tag) + "(" + kids[0].to_string() + ")";
    case Kind::List: {
      std::string s = "[";
      for (size_t i = 0; i < kids.size(); ++i) {
        if (i) s += ",";
        s += kids[i].to_string();
      }
      return s + "]";
    }
  }
  return "?";
}

SetObjPtr fin_set(std::vector<SetElem> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  auto d = std::make_shared<SetObjData>();
  d->kind = SetObjData::Kind::Fin;
  d->elems = std::move(elems);
  return d;
}

SetObjPtr lazy_list(SetObjPtr base) {
  auto d = std::make_shared<SetObjData>();
  d->kind = SetObjData::Kind::LazyList;
  d->base = std::move(base);
  return d;
}

bool is_finite(const SetObjPtr& s) { return s->kind == SetObjData::Kind::Fin; }

bool obj_equal(const SetObjPtr& a, const SetObjPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case SetObjData::Kind::Fin: return a->elems == b->elems;
    case SetObjData::Kind::LazyList: return obj_equal(a->base, b->base);
    case SetObjData::Kind::LazyPullback:
      return obj_equal(a->u1->dom, b->u1->dom) && obj_equal(a->u2->dom, b->u2->dom);
  }
  return false;
}

bool contains(const SetObjPtr& s, const SetElem& x) {
  switch (s->kind) {
    case SetObjData::Kind::Fin:
      return std::binary_search(s->elems.begin(), s->elems.end(), x);
    case SetObjData::Kind::LazyList: {
      if (x.kind != SetElem::Kind::List) return false;
      for (const auto& k : x.kids)
        if (!contains(s->base, k)) return false;
      return true;
    }
    case SetObjData::Kind::LazyPullback: {
      if (x.kind != SetElem::Kind::Pair) return false;
      if (!contains(s->u1->dom, x.first()) || !contains(s->u2->dom, x.second()))
        return false;
      return (*s->u1)(x.first()) == (*s->u2)(x.second());
    }
  }
  return false;
}

std::string obj_to_string(const SetObjPtr& s) {
  switch (s->kind) {
    case SetObjData::Kind::Fin: {
      std::string out = "{";
      for (size_t i = 0; i < s->elems.size(); ++i) {
        if (i) out += ",";
        out += s->elems[i].to_string();
      }
      return out + "}";
    }
    case SetObjData::Kind::LazyList:
      return "L" + obj_to_string(s->base);
    case SetObjData::Kind::LazyPullback:
      return "Pb(" + obj_to_string(s->u1->dom) + "," + obj_to_string(s->u2->dom) + ")";
  }
  return "?";
}

namespace {

// All elements of s up to the list bound, in canonical order.
// Returns false when truncated.
bool collect(const SetObjPtr& s, unsigned bound, std::vector<SetElem>& out) {
  switch (s->kind) {
    case SetObjData::Kind::Fin:
      out.insert(out.end(), s->elems.begin(), s->elems.end());
      return true;
    case SetObjData::Kind::LazyList: {
      std::vector<SetElem> base;
      const bool base_exact = collect(s->base, bound, base);
      std::vector<std::vector<SetElem>> level = {{}};
      out.push_back(SetElem::list({}));
      for (unsigned len = 1; len <= bound; ++len) {
        std::vector<std::vector<SetElem>> next;
        for (const auto& b : base)
          for (const auto& xs : level) {
            std::vector<SetElem> v;
            v.reserve(xs.size() + 1);
            v.push_back(b);
            v.insert(v.end(), xs.begin(), xs.end());
            next.push_back(std::move(v));
          }
        // lexicographic within the length
        std::sort(next.begin(), next.end(),
                  [](const auto& a, const auto& b) {
                    return SetElem::list(a) < SetElem::list(b);
                  });
        for (const auto& xs : next) out.push_back(SetElem::list(xs));
        level = std::move(next);
        if (level.empty()) return base_exact;  // empty base: only []
      }
      return base.empty() ? base_exact : false;
    }
    case SetObjData::Kind::LazyPullback: {
      std::vector<SetElem> left, right;
      const bool le = collect(s->u1->dom, bound, left);
      const bool re = collect(s->u2->dom, bound, right);
      for (const auto& a : left)
        for (const auto& b : right)
          if ((*s->u1)(a) == (*s->u2)(b)) out.push_back(SetElem::pair(a, b));
      return le && re;
    }
  }
  return true;
}

}  // namespace

bool enumerate(const SetObjPtr& s, unsigned list_bound,
               const std::function<void(const SetElem&)>& visit) {
  std::vector<SetElem> items;
  const bool exact = collect(s, list_bound, items);
  for (const auto& x : items) visit(x);
  return exact;
}

SetElem SetMor::operator()(const SetElem& x) const {
  if (tabulated) {
    auto it = table.find(x);
    if (it == table.end())
      throw ModelError("morphism applied outside its tabulated domain: " + x.to_string());
    return it->second;
  }
  return rule(x);
}

SetMor tabulate(SetObjPtr dom, SetObjPtr cod, std::map<SetElem, SetElem> table) {
  SetMor m;
  m.dom = std::move(dom);
  m.cod = std::move(cod);
  m.tabulated = true;
  m.table = std::move(table);
  return m;
}

SetMor from_rule(SetObjPtr dom, SetObjPtr cod, std::function<SetElem(const SetElem&)> f) {
  SetMor m;
  m.dom = std::move(dom);
  m.cod = std::move(cod);
  m.tabulated = false;
  m.rule = std::move(f);
  return m;
}

SetMor identity_mor(SetObjPtr obj) {
  if (is_finite(obj)) {
    std::map<SetElem, SetElem> t;
    for (const auto& x : obj->elems) t[x] = x;
    return tabulate(obj, obj, std::move(t));
  }
  return from_rule(obj, obj, [](const SetElem& x) { return x; });
}

SetMor compose_mor(const SetMor& f, const SetMor& g) {
  if (!obj_equal(f.cod, g.dom))
    throw ModelError("compose_mor: middle carriers differ");
  if (f.tabulated) {
    std::map<SetElem, SetElem> t;
    for (const auto& [x, y] : f.table) t[x] = g(y);
    return tabulate(f.dom, g.cod, std::move(t));
  }
  SetMor ff = f, gg = g;
  return from_rule(f.dom, g.cod, [ff, gg](const SetElem& x) { return gg(ff(x)); });
}

MorCheck mor_equal(const SetMor& f, const SetMor& g, unsigned list_bound) {
  MorCheck out;
  std::vector<SetElem> items;
  out.exhaustive = collect(f.dom, list_bound, items);
  for (const auto& x : items) {
    if (f(x) != g(x)) {
      out.holds = false;
      out.counterexample = x;
      return out;
    }
  }
  return out;
}

SetModel reduct(const SetModel& m, const SketchHom& f) {
  if (!(f.target == m.sketch))
    throw KernelError("reduct: homomorphism target differs from the modelled sketch");
  SetModel out;
  out.sketch = f.source;
  out.strict = m.strict;
  out.node.reserve(f.n.size());
  for (Idx x = 0; x < f.n.size(); ++x) out.node.push_back(m.node[f.n[x]]);
  out.edge.reserve(f.e.size());
  for (Idx u = 0; u < f.e.size(); ++u) out.edge.push_back(m.edge[f.e[u]]);
  return out;
}

std::vector<CommStatus> check_commutativities(const SetModel& m, const EvalOptions& opts) {
  std::vector<CommStatus> out;
  for (Idx t = 0; t < m.sketch.tri_count(); ++t) {
    const SetMor& l = m.edge[m.sketch.tri_l[t]];
    const SetMor& r = m.edge[m.sketch.tri_r[t]];
    const SetMor& c = m.edge[m.sketch.tri_c[t]];
    const auto chk = mor_equal(compose_mor(l, r), c, opts.list_bound);
    CommStatus st;
    st.tri = t;
    st.holds = chk.holds;
    st.exhaustive = chk.exhaustive;
    st.counterexample = chk.counterexample;
    out.push_back(std::move(st));
  }
  return out;
}

bool check_model_hom(const SetModel& a, const SetModel& b, const ModelHom& h,
                     const EvalOptions& opts) {
  if (!(a.sketch == b.sketch)) return false;
  if (h.component.size() != a.sketch.node_count()) return false;
  for (Idx u = 0; u < a.sketch.edge_count(); ++u) {
    const Idx X = a.sketch.e_dom[u];
    const Idx Y = a.sketch.e_cod[u];
    // a(u);h_Y = h_X;b(u)
    const auto lhs = compose_mor(a.edge[u], h.component[Y]);
    const auto rhs = compose_mor(h.component[X], b.edge[u]);
    if (!mor_equal(lhs, rhs, opts.list_bound).holds) return false;
  }
  return true;
}

ModelHom reduct_two_cell(const SetModel& m, const SketchHom& alpha,
                         const std::vector<Idx>& theta_node) {
  ModelHom out;
  out.component.reserve(theta_node.size());
  for (Idx x = 0; x < theta_node.size(); ++x)
    out.component.push_back(m.edge[alpha.e[theta_node[x]]]);
  return out;
}

}  // namespace auk
