#pragma once

// Equivalence extensions: checkable derivations.
//
// Every step adjoins only material that is already uniquely determined by the
// base -- composites, fillins, uniqueness equations, and inverses obtained
// from balance, stability and exactness.  Side conditions are checked
// structurally: the configuration must literally contain the required
// universals and commutativities, not merely semantically equivalent ones.
// The kernel never searches for derivations; it checks the ones it is given
// (and the constructions below emit ones that check).

#include <variant>
#include <vector>

#include "auk/extension.hpp"

namespace auk {

// --- rules for morphisms and their composition -----------------------------

// data u: X->Y, v: Y->Z; adds w: X->Z and (u,v,w)
struct EqComposition { Idx u, v;   bool operator==(const EqComposition&) const = default;
};
// adds (id(X), u, u)
struct EqLeftUnit { Idx u;   bool operator==(const EqLeftUnit&) const = default;
};
// adds (u, id(Y), u)
struct EqRightUnit { Idx u;   bool operator==(const EqRightUnit&) const = default;
};
// chain u: a->b, v: b->c, w: c->d with k = uv, l = vw;
// requires (u,v,k), (v,w,l), (u,l,m); adds (k,w,m)
struct EqLeftAssoc { Idx u, v, w, k, l, m;   bool operator==(const EqLeftAssoc&) const = default;
};
// requires (u,v,k), (v,w,l), (k,w,m); adds (u,l,m)
struct EqRightAssoc { Idx u, v, w, k, l, m;   bool operator==(const EqRightAssoc&) const = default;
};

// --- universal introductions (identical to the simple extensions) ----------

struct EqUnivIntro { ExtensionStep step;   bool operator==(const EqUnivIntro&) const = default;
};  // terminal/initial/pullback/pushout/list

// --- fillins and their uniqueness -------------------------------------------

// pullback universal upb with triangles (p1,u1,p), (p2,u2,p); another cone
// given as commutativities d1 = (v1,u1,v), d2 = (v2,u2,v);
// adds w: dom(v)->P and (w,p1,v1), (w,p2,v2)
struct EqPullbackFillin { Idx upb, d1, d2;   bool operator==(const EqPullbackFillin&) const = default;
};
// requires (w,p1,v1), (w,p2,v2), (w2,p1,v1), (w2,p2,v2); adds w <| w2
struct EqPullbackFillinUnique { Idx upb, v1, v2, w, w2;   bool operator==(const EqPullbackFillinUnique&) const = default;
};

// pushout universal upo with triangles (u1,j1,j), (u2,j2,j); a cocone given
// as commutativities d1 = (u1,v1,v), d2 = (u2,v2,v);
// adds w: Q->cod(v) and (j1,w,v1), (j2,w,v2)
struct EqPushoutFillin { Idx upo, d1, d2;   bool operator==(const EqPushoutFillin&) const = default;
};
struct EqPushoutFillinUnique { Idx upo, v1, v2, w, w2;   bool operator==(const EqPushoutFillinUnique&) const = default;
};

// adds the unique morphism node -> T (no equations needed)
struct EqTerminalFillin { Idx ut, node;   bool operator==(const EqTerminalFillin&) const = default;
};
// requires w, w2 parallel into T; adds w <| w2
struct EqTerminalFillinUnique { Idx ut, w, w2;   bool operator==(const EqTerminalFillinUnique&) const = default;
};
struct EqInitialFillin { Idx ui, node;   bool operator==(const EqInitialFillin&) const = default;
};
struct EqInitialFillinUnique { Idx ui, w, w2;   bool operator==(const EqInitialFillinUnique&) const = default;
};

// --- list fillins ------------------------------------------------------------

// Configuration for the list recursor r = rec(y, g): L x B -> Y.  All fields
// are element indices in the host sketch; the comm_* checks below are looked
// up by faces.  Projection conventions: for a product pullback the first
// triangle's l-edge is the first projection.
struct ListFillinConfig {
  Idx ul;       // list universal (defines A, T, L, P, eps, cons, pP1: P->L, pP2: P->A)
  Idx pb_LB;    // pullback universal for L x B   (first leg from L)
  Idx pb_PB;    // pullback universal for P x B   (first leg from P)
  Idx pb_ALB;   // pullback universal for A x (L x B)  (first leg from A)
  Idx pb_AY;    // pullback universal for A x Y   (first leg from A)
  Idx y;        // edge B -> Y
  Idx g;        // edge AY -> Y
  Idx bangBT;   // edge B -> T (T the list universal's terminal)
  Idx c_eps;    // edge B -> L with (bangBT, eps, c_eps)
  Idx eb;       // edge B -> LB with (eb, q1_LB, c_eps), (eb, q2_LB, id(B))
  Idx cPL;      // edge PB -> L with (q1_PB, cons, cPL)
  Idx consB;    // edge PB -> LB with (consB, q1_LB, cPL), (consB, q2_LB, q2_PB)
  Idx cA;       // edge PB -> A with (q1_PB, pP2, cA)
  Idx cL;       // edge PB -> L with (q1_PB, pP1, cL)
  Idx cLB;      // edge PB -> LB with (cLB, q1_LB, cL), (cLB, q2_LB, q2_PB)
  Idx assoc;    // edge PB -> ALB with (assoc, q1_ALB, cA), (assoc, q2_ALB, cLB)
  bool operator==(const ListFillinConfig&) const = default;
};

// A solution for the configuration: the recursor and its companions, with
// the seven commutativities
//   (eb, r, y), (consB, r, gpp), (assoc, gp, gpp), (rp, g, gp),
//   (q2_ALB, r, rpp), (rp, q2_AY, rpp), (rp, q1_AY, q1_ALB).
struct ListFillinSolution {
  Idx r;    // LB -> Y
  Idx rp;   // ALB -> AY   (r' = A x r)
  Idx rpp;  // ALB -> Y    (r'')
  Idx gp;   // ALB -> Y    (g')
  Idx gpp;  // PB -> Y     (g'')
  bool operator==(const ListFillinSolution&) const = default;
};

// adds the five edges (order r, r', r'', g', g'') and the seven commutativities
struct EqListFillin { ListFillinConfig cfg;   bool operator==(const EqListFillin&) const = default;
};
// requires two solutions; adds r1 <| r2
struct EqListFillinUnique { ListFillinConfig cfg; ListFillinSolution s1, s2;   bool operator==(const EqListFillinUnique&) const = default;
};

// --- inverses from balance, stability, exactness ----------------------------
// Each adjoins u^-1 with (u, u^-1, id(dom u)) and (u^-1, u, id(cod u)).

// kernel pair (pullback of (u,u)) and cokernel pair (pushout of (u,u)),
// with unary commutativities p1 <| p2 (mono) and j1 <| j2 (epi)
struct EqBalance { Idx u, kernel_pb, cokernel_po, mono_comm, epi_comm;   bool operator==(const EqBalance&) const = default;
};

// initial universal ui and an edge u: X -> 0
struct EqInitStability { Idx ui, u;   bool operator==(const EqInitStability&) const = default;
};

// Configuration of the pushout-stability square: the base pushout pulled back
// along w, with the inner pushout and the comparison fillin e to invert.
struct PushoutStabilityConfig {
  Idx po_base;  // pushout universal: span (u1,u2), injections (j1,j2), diagonal j
  Idx w;        // edge W -> Q
  Idx pb_v;     // pullback universal on cospan (w, j)
  Idx pb_v1;    // pullback universal on cospan (w, j1)
  Idx pb_v2;    // pullback universal on cospan (w, j2)
  Idx c1, c2;   // edges K_v -> Y_i with (pi2_v, u_i, c_i)
  Idx u1p, u2p; // edges K_v -> K_i with (u_ip, pi1_i, pi1_v), (u_ip, pi2_i, c_i)
  Idx po_inner; // pushout universal on span (u1p, u2p), injections (v1pp, v2pp)
  Idx e;        // edge E -> W with (v_ipp, e, pi1_i)
  bool operator==(const PushoutStabilityConfig&) const = default;
};
struct EqPushoutStability { PushoutStabilityConfig cfg;   bool operator==(const EqPushoutStability&) const = default;
};

// Configuration of the exactness square: an equivalence relation (pi1,pi2)
// with reflexivity r, symmetry s, transitivity t, the canonical coequalizer
// gamma built from the canonical coproduct, the kernel pair K of gamma, and
// the comparison fillin e to invert.
struct ExactnessConfig {
  Idx pi1, pi2;   // edges X1 -> X0
  Idx ut;         // terminal universal used for the product
  Idx bang_x0;    // edge X0 -> T
  Idx pb_prod;    // pullback universal on (bang_x0, bang_x0): X0 x X0
  Idx pi;         // edge X1 -> X0xX0 with (pi, pr1, pi1), (pi, pr2, pi2)
  Idx pb_mono;    // pullback universal on (pi, pi)
  Idx mono_comm;  // unary comm rho1 <| rho2
  Idx refl;       // edge X0 -> X1 with (refl, pi1, id(X0)), (refl, pi2, id(X0))
  Idx sym;        // edge X1 -> X1 with (sym, pi1, pi2), (sym, pi2, pi1)
  Idx pb_x2;      // pullback universal on (pi2, pi1)
  Idx trans;      // edge X2 -> X1
  Idx ct1, ct2;   // edges X2 -> X0 with (q1, pi1, ct1), (trans, pi1, ct1),
                  //                    (q2, pi2, ct2), (trans, pi2, ct2)
  Idx ui;         // initial universal (node 0)
  Idx bang0_x1;   // edge 0 -> X1
  Idx bang0_x0;   // edge 0 -> X0
  Idx po_sum;     // pushout universal on (bang0_x1, bang0_x0): S = X1 + X0
  Idx f1, f2;     // edges S -> X0 with (k1, f_i, pi_i), (k2, f_i, id(X0))
  Idx po_coeq;    // pushout universal on (f1, f2); gamma = first injection
  Idx pb_K;       // pullback universal on (gamma, gamma)
  Idx e;          // edge X1 -> K with (e, kappa1, pi1), (e, kappa2, pi2)
  bool operator==(const ExactnessConfig&) const = default;
};
struct EqExactness { ExactnessConfig cfg;   bool operator==(const EqExactness&) const = default;
};

using EqStep = std::variant<
    EqComposition, EqLeftUnit, EqRightUnit, EqLeftAssoc, EqRightAssoc,
    EqUnivIntro, EqPullbackFillin, EqPullbackFillinUnique, EqPushoutFillin,
    EqPushoutFillinUnique, EqTerminalFillin, EqTerminalFillinUnique,
    EqInitialFillin, EqInitialFillinUnique, EqListFillin, EqListFillinUnique,
    EqBalance, EqInitStability, EqPushoutStability, EqExactness>;

const char* eq_step_name(const EqStep& step);

struct EqExtension {
  Sketch base;
  std::vector<EqStep> steps;
};

struct EqApplyResult {
  Sketch result;
  SketchHom inclusion;
  std::vector<StepDelta> deltas;  // one per step
};

// Checks the side conditions of one step against s; throws KernelError naming
// the rule and the failed condition.
void check_eq_step(const Sketch& s, const EqStep& step);

// The simple-extension decomposition of one step (side conditions assumed).
std::vector<ExtensionStep> expand_eq_step(const Sketch& s, const EqStep& step);

std::pair<Sketch, StepDelta> apply_eq_step(const Sketch& s, const EqStep& step);

EqApplyResult apply_eq_extension(const Sketch& base, const EqExtension& e);

inline EqApplyResult apply_eq_extension(const EqExtension& e) {
  return apply_eq_extension(e.base, e);
}

// Forgets an equivalence extension to a plain extension (same carriers).
Extension as_extension(const EqExtension& e);

EqStep translate_eq_step(const EqStep& step, const SketchHom& f);

struct EqReindexResult {
  EqExtension ext;
  SketchHom eps;
};

// Reindexing of an equivalence extension along any homomorphism is again an
// equivalence extension.
EqReindexResult reindex_eq(const EqExtension& e, const SketchHom& f);

// --- refinements -------------------------------------------------------------

struct Refinement {
  EqExtension e1, e2;  // over the same base
  SketchHom eps;       // apex(e1) -> apex(e2) with e1;eps = e2
};

// true iff e1;eps = e2 on nodes and edges.
bool check_refinement(const Refinement& r);

struct CommonRefinement {
  EqExtension e;    // e1 followed by e2 reindexed along e1's inclusion
  Refinement eps1;  // of e1
  Refinement eps2;  // of e2
};

CommonRefinement common_refinement(const EqExtension& e1, const EqExtension& e2);

}  // namespace auk
