#include "auk/derive.hpp"

namespace auk {

DerivationBuilder::DerivationBuilder(Sketch base) : cur_(base) {
  ext_.base = std::move(base);
}

StepDelta DerivationBuilder::apply(EqStep step) {
  auto [next, delta] = apply_eq_step(cur_, step);
  cur_ = std::move(next);
  ext_.steps.push_back(std::move(step));
  return delta;
}

DerivationBuilder::Composite DerivationBuilder::compose(Idx u, Idx v) {
  auto d = apply(EqComposition{u, v});
  return {d.edges[0], d.tris[0]};
}

Idx DerivationBuilder::left_unit(Idx u) { return apply(EqLeftUnit{u}).tris[0]; }

Idx DerivationBuilder::right_unit(Idx u) { return apply(EqRightUnit{u}).tris[0]; }

Idx DerivationBuilder::left_assoc(Idx u, Idx v, Idx w, Idx k, Idx l, Idx m) {
  return apply(EqLeftAssoc{u, v, w, k, l, m}).tris[0];
}

Idx DerivationBuilder::right_assoc(Idx u, Idx v, Idx w, Idx k, Idx l, Idx m) {
  return apply(EqRightAssoc{u, v, w, k, l, m}).tris[0];
}

std::optional<Idx> DerivationBuilder::find_tri(Idx l, Idx r, Idx c) const {
  return cur_.find_triangle(l, r, c);
}

Idx DerivationBuilder::refl(Idx u) { return left_unit(u); }

Idx DerivationBuilder::ensure_refl(Idx u) {
  if (u >= cur_.edge_count()) throw KernelError("ensure_refl: edge out of range");
  if (auto t = find_tri(cur_.n_id[cur_.e_dom[u]], u, u)) return *t;
  return left_unit(u);
}

namespace {

struct Unary {
  Idx id_edge, u, u2;  // (id, u, u2): asserts u2 equals u
};

Unary read_unary(const Sketch& s, Idx t, const char* who) {
  if (t >= s.tri_count()) throw KernelError(std::string(who) + ": witness out of range");
  const Idx l = s.tri_l[t];
  const Idx r = s.tri_r[t];
  const Idx c = s.tri_c[t];
  if (l != s.n_id[s.e_dom[r]])
    throw KernelError(std::string(who) +
                      ": witness is not a unary commutativity (id(X) u <| u')");
  return {l, r, c};
}

}  // namespace

Idx DerivationBuilder::sym(Idx t) {
  // (id,u,u') |- (id,u',u): left unit on id(X) and on u, then right assoc
  const Unary w = read_unary(cur_, t, "sym");
  const Idx idX = w.id_edge;
  left_unit(idX);      // (id,id,id)
  left_unit(w.u);      // (id,u,u)
  return right_assoc(idX, idX, w.u, idX, w.u2, w.u);
}

Idx DerivationBuilder::trans(Idx t1, Idx t2) {
  // (id,u,u'), (id,u',u'') |- (id,u,u'')
  const Unary a = read_unary(cur_, t1, "trans");
  const Unary b = read_unary(cur_, t2, "trans");
  if (b.u != a.u2) throw KernelError("trans: witnesses do not chain");
  const Idx idX = a.id_edge;
  left_unit(idX);
  return left_assoc(idX, idX, a.u, idX, a.u2, b.u2);
}

Idx DerivationBuilder::unify_parallel(Idx t1, Idx t2) {
  // (u,v,w), (u,v,w') |- (id,w,w')
  if (t1 >= cur_.tri_count() || t2 >= cur_.tri_count())
    throw KernelError("unify_parallel: witness out of range");
  const Idx u = cur_.tri_l[t1], v = cur_.tri_r[t1], w = cur_.tri_c[t1];
  if (cur_.tri_l[t2] != u || cur_.tri_r[t2] != v)
    throw KernelError("unify_parallel: witnesses are not composites of the same pair");
  const Idx w2 = cur_.tri_c[t2];
  const Idx idX = cur_.n_id[cur_.e_dom[u]];
  left_unit(u);  // (id,u,u)
  return right_assoc(idX, u, v, u, w, w2);
}

Idx DerivationBuilder::transfer_comp(Idx t, Idx un) {
  // (u,v,w), (id,w,w') |- (u,v,w')
  if (t >= cur_.tri_count()) throw KernelError("transfer_comp: witness out of range");
  const Unary e = read_unary(cur_, un, "transfer_comp");
  const Idx u = cur_.tri_l[t], v = cur_.tri_r[t], w = cur_.tri_c[t];
  if (e.u != w) throw KernelError("transfer_comp: equality witness is not about the composite");
  const Idx idX = cur_.n_id[cur_.e_dom[u]];
  left_unit(u);
  return left_assoc(idX, u, v, u, w, e.u2);
}

Idx DerivationBuilder::replace_left(Idx t, Idx un) {
  // (u,v,w), (id,u,u') |- (u',v,w)
  if (t >= cur_.tri_count()) throw KernelError("replace_left: witness out of range");
  const Unary e = read_unary(cur_, un, "replace_left");
  const Idx u = cur_.tri_l[t], v = cur_.tri_r[t], w = cur_.tri_c[t];
  if (e.u != u) throw KernelError("replace_left: equality witness is not about the left leg");
  const Idx idX = e.id_edge;
  left_unit(w);  // (id,w,w)
  return left_assoc(idX, u, v, e.u2, w, w);
}

Idx DerivationBuilder::replace_right(Idx t, Idx un) {
  // (u,v,w), (id,v,v') |- (u,v',w)
  if (t >= cur_.tri_count()) throw KernelError("replace_right: witness out of range");
  const Unary e = read_unary(cur_, un, "replace_right");
  const Idx u = cur_.tri_l[t], v = cur_.tri_r[t], w = cur_.tri_c[t];
  if (e.u != v) throw KernelError("replace_right: equality witness is not about the right leg");
  // chain u;id(Y);v' with the swapped equality (id,v',v)
  sym(un);
  right_unit(u);
  return left_assoc(u, e.id_edge, e.u2, u, e.u, w);
}

Idx DerivationBuilder::congruence(Idx t_u, Idx t_v, Idx t_w) {
  // (id,u,u'), (id,v,v'), (u,v,w) |- (u',v',w)
  const Unary eu = read_unary(cur_, t_u, "congruence");
  const Unary ev = read_unary(cur_, t_v, "congruence");
  if (t_w >= cur_.tri_count()) throw KernelError("congruence: composite witness out of range");
  if (cur_.tri_l[t_w] != eu.u || cur_.tri_r[t_w] != ev.u)
    throw KernelError("congruence: composite witness does not match the equalities");
  const Idx w = cur_.tri_c[t_w];
  const Idx idX = eu.id_edge;
  // step 1: (u',v,w) by left assoc over the chain id;u;v
  left_unit(w);
  const Idx s1 = left_assoc(idX, eu.u, ev.u, eu.u2, w, w);
  // step 2: symmetry of the v-equality, then left assoc over u';id;v'
  const Idx ev_sym = sym(t_v);  // (id,v',v)
  right_unit(eu.u2);            // (u',id,u')
  const Idx idY = ev.id_edge;
  (void)ev_sym;
  return left_assoc(eu.u2, idY, ev.u2, eu.u2, ev.u, cur_.tri_c[s1]);
}

Idx DerivationBuilder::unit_transfer_lr(Idx t) {
  // (id,u,u') |- (u',id,u)
  const Unary e = read_unary(cur_, t, "unit_transfer");
  right_unit(e.u);  // (u,id,u)
  left_unit(e.u);   // (id,u,u)
  const Idx idY = cur_.n_id[cur_.e_cod[e.u]];
  return left_assoc(e.id_edge, e.u, idY, e.u2, e.u, e.u);
}

Idx DerivationBuilder::unit_transfer_rl(Idx t) {
  // (u',id,u) |- (id,u,u')
  if (t >= cur_.tri_count()) throw KernelError("unit_transfer: witness out of range");
  const Idx u2 = cur_.tri_l[t];
  const Idx r = cur_.tri_r[t];
  const Idx u = cur_.tri_c[t];
  if (r != cur_.n_id[cur_.e_cod[u2]])
    throw KernelError("unit_transfer: witness is not of the shape (u', id, u)");
  left_unit(u2);   // (id,u',u')
  right_unit(u2);  // (u',id,u')
  const Idx idX = cur_.n_id[cur_.e_dom[u2]];
  return right_assoc(idX, u2, r, u2, u, u2);
}

namespace {

UnaryForm classify_unary(const Sketch& s, Idx t) {
  if (t >= s.tri_count()) throw KernelError("unit_transfer: witness out of range");
  const Idx l = s.tri_l[t], r = s.tri_r[t];
  if (l == s.n_id[s.e_dom[r]]) return UnaryForm::IdLeft;
  if (r == s.n_id[s.e_cod[l]]) return UnaryForm::RightId;
  throw KernelError("unit_transfer: witness is not a unit-shaped commutativity");
}

}  // namespace

DeriveResult derive_equality(const Sketch& base, const DeriveGoal& goal) {
  DerivationBuilder b(base);
  Idx out = 0;
  if (const auto* g = std::get_if<GoalRefl>(&goal)) {
    if (g->u >= base.edge_count()) throw KernelError("refl: edge out of range");
    out = b.refl(g->u);
  } else if (const auto* g = std::get_if<GoalSym>(&goal)) {
    out = b.sym(g->witness);
  } else if (const auto* g = std::get_if<GoalTrans>(&goal)) {
    out = b.trans(g->w1, g->w2);
  } else if (const auto* g = std::get_if<GoalCongruence>(&goal)) {
    out = b.congruence(g->wu, g->wv, g->ww);
  } else if (const auto* g = std::get_if<GoalUnitTransfer>(&goal)) {
    // Read the asserted pair (a,b) off the witness, normalize to (id,a,b),
    // then move to the requested shape for that pair.
    Idx t = g->witness;
    if (classify_unary(base, t) == UnaryForm::RightId)
      t = b.sym(b.unit_transfer_rl(t));  // (a,id,b) -> (id,b,a) -> (id,a,b)
    switch (g->to) {
      case UnaryForm::IdLeft: out = t; break;
      case UnaryForm::IdLeftSwapped: out = b.sym(t); break;
      case UnaryForm::RightIdSwapped: out = b.unit_transfer_lr(t); break;
      case UnaryForm::RightId: out = b.unit_transfer_lr(b.sym(t)); break;
    }
  } else {
    throw KernelError("derive_equality: unknown goal");
  }
  return {b.extension(), out};
}

}  // namespace auk
