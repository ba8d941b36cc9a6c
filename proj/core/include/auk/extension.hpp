#pragma once

// Simple extensions, composite extensions, contexts and reindexing.
//
// An extension grows a sketch by a sequence of rule-tagged steps; each step
// references elements of the sketch accumulated so far by absolute index and
// appends its delta at the end of each carrier, so the inclusion is the
// natural ordinal inclusion per sort.  Replay is deterministic and validated
// both at step construction and again when untrusted step lists are applied.
//
// Delta append order per step kind (fixed, relied on throughout):
//   node          n += [*]; e += [id(*)]
//   edge X->Y     e += [u]
//   comm (l,r,c)  tri += [l;r = c]
//   terminal      ut += [w]; n += [T]; e += [id(T)]
//   initial       ui += [w]; n += [Z]; e += [id(Z)]
//   pullback(u1,u2), cod u1 = cod u2:
//                 n += [P]; e += [p1: P->dom u1, p: P->cod u1, p2: P->dom u2,
//                 id(P)]; tri += [(p1,u1,p), (p2,u2,p)]; upb += [w]
//   pushout(u1,u2), dom u1 = dom u2:
//                 n += [Q]; e += [j1: cod u1->Q, j: dom u1->Q, j2: cod u2->Q,
//                 id(Q)]; tri += [(u1,j1,j), (u2,j2,j)]; upo += [w]
//   list(A):      n += [T, L, P];
//                 e += [eps: T->L, cons: P->L, p1: P->L, p: P->T, p2: P->A,
//                       bangA: A->T, bangL: L->T, id(T), id(L), id(P)];
//                 tri += [(p1,bangL,p), (p2,bangA,p)]; ut += [T];
//                 upb += [w_pb]; ul += [w]
// The list object's product P is the pullback of (bangL, bangA), so the first
// triangle of its pullback universal carries the projection onto L.

#include <variant>
#include <vector>

#include "auk/sketch.hpp"

namespace auk {

struct AddPrimitiveNode {
  bool operator==(const AddPrimitiveNode&) const = default;
};
struct AddPrimitiveEdge {
  Idx dom, cod;
  bool operator==(const AddPrimitiveEdge&) const = default;
};
struct AddCommutativity {
  Idx l, r, c;
  bool operator==(const AddCommutativity&) const = default;
};
struct AddTerminal {
  bool operator==(const AddTerminal&) const = default;
};
struct AddInitial {
  bool operator==(const AddInitial&) const = default;
};
struct AddPullback {
  Idx u1, u2;  // cospan: cod(u1) = cod(u2)
  bool operator==(const AddPullback&) const = default;
};
struct AddPushout {
  Idx u1, u2;  // span: dom(u1) = dom(u2)
  bool operator==(const AddPushout&) const = default;
};
struct AddListObject {
  Idx node;
  bool operator==(const AddListObject&) const = default;
};

using ExtensionStep =
    std::variant<AddPrimitiveNode, AddPrimitiveEdge, AddCommutativity, AddTerminal,
                 AddInitial, AddPullback, AddPushout, AddListObject>;

struct Extension {
  Sketch base;
  std::vector<ExtensionStep> steps;
};

// An extension of the empty sketch.
struct Context {
  Extension ext;
  Sketch apex;  // result of replaying ext
};

struct ApplyResult {
  Sketch result;
  SketchHom inclusion;  // natural ordinal inclusion base -> result
};

// Positions of the delta elements appended by one step.
struct StepDelta {
  std::vector<Idx> nodes, edges, tris, uts, upbs, uis, upos, uls;
};

// Validates the step against s (ranges and data configuration) and returns
// the extended sketch plus the delta positions.  Throws KernelError on a
// dangling reference or a data-configuration violation.
std::pair<Sketch, StepDelta> apply_step(const Sketch& s, const ExtensionStep& step);

// Replays all steps.  validate_sketch holds for the result whenever it holds
// for the base.
ApplyResult apply_extension(const Sketch& base, const Extension& ext);

inline ApplyResult apply_extension(const Extension& ext) {
  return apply_extension(ext.base, ext);
}

Context make_context(std::vector<ExtensionStep> steps);

// The ordinal inclusion hom for an extension of `base` whose apex is `apex`.
SketchHom inclusion_hom(const Sketch& base, const Sketch& apex);

// Concatenation; c2's base must equal c1's apex.
Extension compose_extensions(const Extension& c1, const Extension& c2);

struct ReindexResult {
  Extension ext;   // the same steps over f's target, data translated through f
  SketchHom eps;   // apex(input) -> apex(ext); delta elements map ordinally
};

// Pushout of ext along f (Eq. reindex): f;ext' = ext;eps commutes strictly.
// Precondition: ext.base == f.source.
ReindexResult reindex(const Extension& ext, const SketchHom& f);

// Translates a single step's data references through a homomorphism.
ExtensionStep translate_step(const ExtensionStep& step, const SketchHom& f);

}  // namespace auk
