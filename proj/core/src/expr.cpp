#include "auk/expr.hpp"

#include <sstream>

namespace auk {

ExprPtr Expr::prim_node(Idx x) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::PrimNode;
  e->prim = x;
  return e;
}

ExprPtr Expr::prim_edge(Idx u) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::PrimEdge;
  e->prim = u;
  return e;
}

ExprPtr Expr::make(ExprKind k, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

bool expr_equal(const ExprPtr& x, const ExprPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind || x->prim != y->prim) return false;
  return expr_equal(x->a, y->a) && expr_equal(x->b, y->b);
}

bool is_object_expr(const ExprPtr& x) {
  switch (x->kind) {
    case ExprKind::PrimNode:
    case ExprKind::One:
    case ExprKind::Zero:
    case ExprKind::Pb:
    case ExprKind::Po:
    case ExprKind::List:
      return true;
    default:
      return false;
  }
}

std::string expr_to_string(const ExprPtr& x) {
  if (!x) return "_";
  std::ostringstream os;
  switch (x->kind) {
    case ExprKind::PrimNode: os << "n" << x->prim; break;
    case ExprKind::PrimEdge: os << "e" << x->prim; break;
    case ExprKind::One: os << "1"; break;
    case ExprKind::Zero: os << "0"; break;
    case ExprKind::Pb: os << "pb(" << expr_to_string(x->a) << "," << expr_to_string(x->b) << ")"; break;
    case ExprKind::Po: os << "po(" << expr_to_string(x->a) << "," << expr_to_string(x->b) << ")"; break;
    case ExprKind::List: os << "L(" << expr_to_string(x->a) << ")"; break;
    case ExprKind::Id: os << "id(" << expr_to_string(x->a) << ")"; break;
    case ExprKind::Proj1: os << "proj1(" << expr_to_string(x->a) << "," << expr_to_string(x->b) << ")"; break;
    case ExprKind::Proj2: os << "proj2(" << expr_to_string(x->a) << "," << expr_to_string(x->b) << ")"; break;
    case ExprKind::ProjDiag: os << "proj(" << expr_to_string(x->a) << "," << expr_to_string(x->b) << ")"; break;
    case ExprKind::Inj1: os << "inj1(" << expr_to_string(x->a) << "," << expr_to_string(x->b) << ")"; break;
    case ExprKind::Inj2: os << "inj2(" << expr_to_string(x->a) << "," << expr_to_string(x->b) << ")"; break;
    case ExprKind::InjDiag: os << "inj(" << expr_to_string(x->a) << "," << expr_to_string(x->b) << ")"; break;
    case ExprKind::ListEps: os << "eps(" << expr_to_string(x->a) << ")"; break;
    case ExprKind::ListCons: os << "cons(" << expr_to_string(x->a) << ")"; break;
    case ExprKind::Bang: os << "bang(" << expr_to_string(x->a) << ")"; break;
    case ExprKind::BangList: os << "bangL(" << expr_to_string(x->a) << ")"; break;
  }
  return os.str();
}

ExprPtr translate_expr(const ExprPtr& x, const std::vector<Idx>& node_map,
                       const std::vector<Idx>& edge_map) {
  if (!x) return nullptr;
  if (x->kind == ExprKind::PrimNode) return Expr::prim_node(node_map.at(x->prim));
  if (x->kind == ExprKind::PrimEdge) return Expr::prim_edge(edge_map.at(x->prim));
  return Expr::make(x->kind, translate_expr(x->a, node_map, edge_map),
                    translate_expr(x->b, node_map, edge_map));
}

Provenance compute_provenance(const Extension& ext) {
  Provenance p;
  const Sketch& base = ext.base;
  p.node_origin.assign(base.node_count(), NodeOrigin::Base);
  p.node_datum.assign(base.node_count(), Provenance::npos);
  p.node_step.assign(base.node_count(), Provenance::npos);
  p.edge_origin.assign(base.edge_count(), EdgeOrigin::Base);
  p.edge_datum.assign(base.edge_count(), Provenance::npos);
  p.edge_step.assign(base.edge_count(), Provenance::npos);

  Sketch s = base;
  for (Idx si = 0; si < ext.steps.size(); ++si) {
    auto [next, delta] = apply_step(s, ext.steps[si]);
    auto put_node = [&](NodeOrigin o, Idx datum) {
      p.node_origin.push_back(o);
      p.node_datum.push_back(datum);
      p.node_step.push_back(si);
    };
    auto put_edge = [&](EdgeOrigin o, Idx datum) {
      p.edge_origin.push_back(o);
      p.edge_datum.push_back(datum);
      p.edge_step.push_back(si);
    };
    const ExtensionStep& step = ext.steps[si];
    if (std::holds_alternative<AddPrimitiveNode>(step)) {
      put_node(NodeOrigin::Primitive, Provenance::npos);
      put_edge(EdgeOrigin::Identity, delta.nodes[0]);
    } else if (std::holds_alternative<AddPrimitiveEdge>(step)) {
      put_edge(EdgeOrigin::Primitive, Provenance::npos);
    } else if (std::holds_alternative<AddCommutativity>(step)) {
      // no fresh nodes or edges
    } else if (std::holds_alternative<AddTerminal>(step)) {
      put_node(NodeOrigin::TerminalSubject, delta.uts[0]);
      put_edge(EdgeOrigin::Identity, delta.nodes[0]);
    } else if (std::holds_alternative<AddInitial>(step)) {
      put_node(NodeOrigin::InitialSubject, delta.uis[0]);
      put_edge(EdgeOrigin::Identity, delta.nodes[0]);
    } else if (std::holds_alternative<AddPullback>(step)) {
      const Idx w = delta.upbs[0];
      put_node(NodeOrigin::PullbackSubject, w);
      put_edge(EdgeOrigin::PbProj1, w);
      put_edge(EdgeOrigin::PbDiag, w);
      put_edge(EdgeOrigin::PbProj2, w);
      put_edge(EdgeOrigin::Identity, delta.nodes[0]);
    } else if (std::holds_alternative<AddPushout>(step)) {
      const Idx w = delta.upos[0];
      put_node(NodeOrigin::PushoutSubject, w);
      put_edge(EdgeOrigin::PoInj1, w);
      put_edge(EdgeOrigin::PoDiag, w);
      put_edge(EdgeOrigin::PoInj2, w);
      put_edge(EdgeOrigin::Identity, delta.nodes[0]);
    } else if (std::holds_alternative<AddListObject>(step)) {
      const Idx w = delta.uls[0];
      put_node(NodeOrigin::ListT, w);
      put_node(NodeOrigin::ListL, w);
      put_node(NodeOrigin::ListP, w);
      put_edge(EdgeOrigin::ListEps, w);
      put_edge(EdgeOrigin::ListCons, w);
      put_edge(EdgeOrigin::ListP1, w);
      put_edge(EdgeOrigin::ListDiag, w);
      put_edge(EdgeOrigin::ListP2, w);
      put_edge(EdgeOrigin::ListBangA, w);
      put_edge(EdgeOrigin::ListBangL, w);
      put_edge(EdgeOrigin::Identity, delta.nodes[0]);
      put_edge(EdgeOrigin::Identity, delta.nodes[1]);
      put_edge(EdgeOrigin::Identity, delta.nodes[2]);
    }
    s = std::move(next);
  }
  p.apex = std::move(s);
  return p;
}

namespace {

// Base object of the list universal w.
Idx list_base_node(const Sketch& s, Idx w) {
  // cod of the second projection of the product pullback (the A-leg)
  return s.e_cod[s.tri_l[s.upb_tri2[s.ul_pb[w]]]];
}

}  // namespace

ExprPtr canonical_node_expr(const Provenance& p, Idx node) {
  const Sketch& s = p.apex;
  if (node >= s.node_count()) throw KernelError("canonical_node_expr: node out of range");
  switch (p.node_origin[node]) {
    case NodeOrigin::Base:
    case NodeOrigin::Primitive:
      return Expr::prim_node(node);
    case NodeOrigin::TerminalSubject:
    case NodeOrigin::ListT:
      return Expr::make(ExprKind::One);
    case NodeOrigin::InitialSubject:
      return Expr::make(ExprKind::Zero);
    case NodeOrigin::PullbackSubject: {
      const Idx w = p.node_datum[node];
      return Expr::make(ExprKind::Pb,
                        canonical_edge_expr(p, s.tri_r[s.upb_tri1[w]]),
                        canonical_edge_expr(p, s.tri_r[s.upb_tri2[w]]));
    }
    case NodeOrigin::PushoutSubject: {
      const Idx w = p.node_datum[node];
      return Expr::make(ExprKind::Po,
                        canonical_edge_expr(p, s.tri_l[s.upo_tri1[w]]),
                        canonical_edge_expr(p, s.tri_l[s.upo_tri2[w]]));
    }
    case NodeOrigin::ListL:
      return Expr::make(ExprKind::List,
                        canonical_node_expr(p, list_base_node(s, p.node_datum[node])));
    case NodeOrigin::ListP: {
      auto a = canonical_node_expr(p, list_base_node(s, p.node_datum[node]));
      return Expr::make(ExprKind::Pb, Expr::make(ExprKind::BangList, a),
                        Expr::make(ExprKind::Bang, a));
    }
  }
  throw KernelError("canonical_node_expr: unreachable");
}

ExprPtr canonical_edge_expr(const Provenance& p, Idx edge) {
  const Sketch& s = p.apex;
  if (edge >= s.edge_count()) throw KernelError("canonical_edge_expr: edge out of range");
  auto pb_datum = [&](Idx w, ExprPtr& u1, ExprPtr& u2) {
    u1 = canonical_edge_expr(p, s.tri_r[s.upb_tri1[w]]);
    u2 = canonical_edge_expr(p, s.tri_r[s.upb_tri2[w]]);
  };
  auto list_datum = [&](Idx w) { return canonical_node_expr(p, list_base_node(s, w)); };
  switch (p.edge_origin[edge]) {
    case EdgeOrigin::Base:
    case EdgeOrigin::Primitive:
      return Expr::prim_edge(edge);
    case EdgeOrigin::Identity:
      return Expr::make(ExprKind::Id, canonical_node_expr(p, p.edge_datum[edge]));
    case EdgeOrigin::PbProj1:
    case EdgeOrigin::PbDiag:
    case EdgeOrigin::PbProj2: {
      ExprPtr u1, u2;
      pb_datum(p.edge_datum[edge], u1, u2);
      auto k = p.edge_origin[edge] == EdgeOrigin::PbProj1   ? ExprKind::Proj1
               : p.edge_origin[edge] == EdgeOrigin::PbProj2 ? ExprKind::Proj2
                                                            : ExprKind::ProjDiag;
      return Expr::make(k, u1, u2);
    }
    case EdgeOrigin::PoInj1:
    case EdgeOrigin::PoDiag:
    case EdgeOrigin::PoInj2: {
      const Idx w = p.edge_datum[edge];
      auto u1 = canonical_edge_expr(p, s.tri_l[s.upo_tri1[w]]);
      auto u2 = canonical_edge_expr(p, s.tri_l[s.upo_tri2[w]]);
      auto k = p.edge_origin[edge] == EdgeOrigin::PoInj1   ? ExprKind::Inj1
               : p.edge_origin[edge] == EdgeOrigin::PoInj2 ? ExprKind::Inj2
                                                           : ExprKind::InjDiag;
      return Expr::make(k, u1, u2);
    }
    case EdgeOrigin::ListEps:
      return Expr::make(ExprKind::ListEps, list_datum(p.edge_datum[edge]));
    case EdgeOrigin::ListCons:
      return Expr::make(ExprKind::ListCons, list_datum(p.edge_datum[edge]));
    case EdgeOrigin::ListP1:
    case EdgeOrigin::ListDiag:
    case EdgeOrigin::ListP2: {
      auto a = list_datum(p.edge_datum[edge]);
      auto u1 = Expr::make(ExprKind::BangList, a);
      auto u2 = Expr::make(ExprKind::Bang, a);
      auto k = p.edge_origin[edge] == EdgeOrigin::ListP1   ? ExprKind::Proj1
               : p.edge_origin[edge] == EdgeOrigin::ListP2 ? ExprKind::Proj2
                                                           : ExprKind::ProjDiag;
      return Expr::make(k, u1, u2);
    }
    case EdgeOrigin::ListBangA:
      return Expr::make(ExprKind::Bang, list_datum(p.edge_datum[edge]));
    case EdgeOrigin::ListBangL:
      return Expr::make(ExprKind::BangList, list_datum(p.edge_datum[edge]));
  }
  throw KernelError("canonical_edge_expr: unreachable");
}

}  // namespace auk
