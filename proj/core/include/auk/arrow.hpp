#pragma once

// Hom-context and theta-extension constructions.
//
// The hom context T-arrow consists of two disjoint copies of T, an edge
// theta_X: X0 -> X1 per node, and an edge theta_u: X0 -> Y1 with two
// commutativities (u0, theta_Y, theta_u) and (theta_X, u1, theta_u) per edge.
// The same recipe relative to two homomorphisms f0, f1 yields the inserter
// extension.  Copy 1 of a context is appended by reindexing its own extension
// along the empty homomorphism into the copy-0 apex.

#include "auk/eqext.hpp"
#include "auk/extension.hpp"

namespace auk {

// Theta material for a pair of parallel homs f0, f1 : shape -> host.
struct ThetaExtension {
  Extension ext;                 // over the host
  std::vector<Idx> theta_node;   // per node of shape: edge f0(X) -> f1(X)
  std::vector<Idx> theta_edge;   // per edge of shape: edge f0(dom u) -> f1(cod u)
  std::vector<Idx> square0;      // per edge: comm (f0(u), theta_cod, theta_u)
  std::vector<Idx> square1;      // per edge: comm (theta_dom, f1(u), theta_u)
};

ThetaExtension build_theta_extension(const Sketch& shape, const SketchHom& f0,
                                     const SketchHom& f1);

struct ArrowContext {
  Context ctx;       // the hom context T-arrow
  SketchHom i0, i1;  // T -> T-arrow
  // layout, indexed by elements of T
  std::vector<Idx> node0, node1, theta_node;
  std::vector<Idx> edge0, edge1, theta_edge;
  std::vector<Idx> square0, square1;  // per edge of T
};

ArrowContext build_arrow_context(const Context& t);

// The empty homomorphism out of the empty sketch.
SketchHom empty_hom_into(const Sketch& target);

// Rebases a homomorphism onto a larger target that extends the old one
// ordinally (maps are unchanged).
SketchHom retarget(const SketchHom& h, const Sketch& new_target);

// A 2-cell between homomorphisms f0, f1 : T1 -> T0 is a homomorphism
// alpha : T1-arrow -> T0 with i_lambda;alpha = f_lambda.  It is determined by
// carrier edges for the theta nodes and edges; the required square images
// are looked up in the target and must exist.
SketchHom make_two_cell_hom(const ArrowContext& ar, const SketchHom& f0,
                            const SketchHom& f1, const std::vector<Idx>& theta_n,
                            const std::vector<Idx>& theta_e);

// Reads the theta carriers of a 2-cell hom back off.
struct TwoCellCarriers {
  std::vector<Idx> theta_n, theta_e;
};
TwoCellCarriers read_two_cell(const ArrowContext& ar, const SketchHom& alpha);

// dom/cod of a 2-cell hom: the composites i_lambda;alpha.
SketchHom two_cell_dom(const ArrowContext& ar, const SketchHom& alpha);
SketchHom two_cell_cod(const ArrowContext& ar, const SketchHom& alpha);

// The identity 2-cell on f: theta carriers are identities; the squares are
// provided by an equivalence extension of the target (unit laws).
struct IdentityTwoCell {
  EqExtension ext;  // of f.target
  SketchHom alpha;  // T1-arrow -> apex(ext)
};
IdentityTwoCell identity_two_cell(const ArrowContext& ar, const SketchHom& f);

// The arrow functor on an extension c: T1 |> T1', reordered into a genuine
// extension of arrow(T1): first the copy-0 steps, then the copy-1 steps, then
// the theta material for the fresh elements.  iso_* give the layout of the
// result against arrow(T1') built directly.
struct ArrowExtension {
  Extension ext;          // over arrow(t1).apex
  SketchHom from_arrow1p; // arrow(T1').apex -> apex(ext): the reordering iso
};

ArrowExtension arrow_extension(const Context& t1, const Extension& c);

// A finite category presented by ordinals: used for diagram contexts T^C.
struct FiniteCategory {
  Idx objects = 0;
  std::vector<std::pair<Idx, Idx>> arrows;     // dom, cod per arrow
  std::vector<Idx> identity;                   // per object: its identity arrow
  // composition table: comp[a][b] = a;b where cod(a) = dom(b)
  std::vector<std::vector<Idx>> comp;
};

struct DiagramContext {
  Context ctx;
  std::vector<SketchHom> obj_incl;                // per object: T -> T^C
  std::vector<std::vector<Idx>> theta_node;       // per arrow, per node of T
  std::vector<std::vector<Idx>> theta_edge;       // per arrow, per edge of T
};

// The theory of C-diagrams of models of T.  Copies are adjoined in object
// order, theta families in arrow order, then functoriality commutativities
// (identities and composable pairs) in lexicographic order.
DiagramContext build_diagram_context(const Context& t, const FiniteCategory& c);

}  // namespace auk
