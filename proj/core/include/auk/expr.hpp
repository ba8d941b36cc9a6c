#pragma once

// Canonical AU expressions for the elements of an extension.
//
// Every fresh node or edge of an extension is either primitive or determined
// by the universal that introduced it; in any strict model its interpretation
// is the value of the expression below.  Expressions are well-sorted: object
// expressions denote nodes, morphism expressions denote edges.

#include <memory>
#include <string>
#include <vector>

#include "auk/extension.hpp"

namespace auk {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind : std::uint8_t {
  PrimNode,   // primitive node (apex index)
  PrimEdge,   // primitive edge (apex index)
  One,        // terminal object
  Zero,       // initial object
  Pb,         // pullback object of a cospan (a, b : morphisms)
  Po,         // pushout object of a span (a, b : morphisms)
  List,       // list object over an object (a)
  Id,         // identity on an object (a)
  Proj1, Proj2, ProjDiag,  // projections/diagonal of a pullback datum (a, b)
  Inj1, Inj2, InjDiag,     // injections/diagonal of a pushout datum (a, b)
  ListEps,    // empty-list morphism 1 -> L(A), datum (a = object)
  ListCons,   // cons morphism L(A) x A -> L(A), datum (a = object)
  Bang,       // unique morphism A -> 1 in a list datum (a = object)
  BangList,   // unique morphism L(A) -> 1 in a list datum (a = object)
};

struct Expr {
  ExprKind kind;
  Idx prim = 0;   // PrimNode / PrimEdge only
  ExprPtr a, b;   // children

  static ExprPtr prim_node(Idx x);
  static ExprPtr prim_edge(Idx u);
  static ExprPtr make(ExprKind k, ExprPtr a = nullptr, ExprPtr b = nullptr);
};

bool expr_equal(const ExprPtr& x, const ExprPtr& y);
bool is_object_expr(const ExprPtr& x);
std::string expr_to_string(const ExprPtr& x);

// Renames the primitive references of an expression (e.g. along a reindexing
// homomorphism between apexes).
ExprPtr translate_expr(const ExprPtr& x, const std::vector<Idx>& node_map,
                       const std::vector<Idx>& edge_map);

// How each element of a replayed extension came into being.
enum class NodeOrigin : std::uint8_t {
  Base, Primitive, TerminalSubject, InitialSubject, PullbackSubject,
  PushoutSubject, ListT, ListL, ListP,
};
enum class EdgeOrigin : std::uint8_t {
  Base, Primitive, Identity, PbProj1, PbDiag, PbProj2, PoInj1, PoDiag, PoInj2,
  ListEps, ListCons, ListP1, ListDiag, ListP2, ListBangA, ListBangL,
};

struct Provenance {
  Sketch apex;
  std::vector<NodeOrigin> node_origin;   // per apex node
  std::vector<Idx> node_datum;           // universal index (or node for Identity)
  std::vector<EdgeOrigin> edge_origin;   // per apex edge
  std::vector<Idx> edge_datum;
  std::vector<Idx> node_step, edge_step; // introducing step, or npos for base
  static constexpr Idx npos = static_cast<Idx>(-1);
};

Provenance compute_provenance(const Extension& ext);

// The unique expression assigned by the canonical-expression tables,
// recursing on the data.  Base elements are treated as primitive.
ExprPtr canonical_node_expr(const Provenance& p, Idx node);
ExprPtr canonical_edge_expr(const Provenance& p, Idx edge);

inline ExprPtr canonical_node_expr(const Extension& ext, Idx node) {
  return canonical_node_expr(compute_provenance(ext), node);
}
inline ExprPtr canonical_edge_expr(const Extension& ext, Idx edge) {
  return canonical_edge_expr(compute_provenance(ext), edge);
}

}  // namespace auk
