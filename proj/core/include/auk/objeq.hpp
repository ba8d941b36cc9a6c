#pragma once

// Object equalities: structural evidence that nodes (and then edges and
// homomorphisms) are forced equal in every strict model.
//
// Witness shapes are fixed as follows.  For two pullback universals with
// squares (p1,u1,px),(p2,u2,px) at X and (q1,v1,py),(q2,v2,py) at Y, a
// Pullbacks witness carries sub-equalities g_i: U_i => V_i (i = 1,2,3) and
// five named composites with ten commutativities:
//   e_w1, e_w2 : U_i -> V3   with (u_i, g3, e_wi) and (g_i, v_i, e_wi)
//   e_c1, e_c2 : X -> V_i    with (p_i, g_i, e_ci) and (gamma, q_i, e_ci)
//   e_d        : X -> V3     with (e_c1, v_1, e_d) and (e_c2, v_2, e_d)
// A Lists witness characterizes gamma as the list map of g_A via the empty
// list and cons squares, with the product comparison g_P characterized as a
// fillin.

#include <memory>
#include <optional>
#include <variant>

#include "auk/arrow.hpp"
#include "auk/derive.hpp"
#include "auk/eqext.hpp"

namespace auk {

struct ObjectEqualityWitness;
using WitnessPtr = std::shared_ptr<const ObjectEqualityWitness>;

struct WSameNode {
  Idx comm;  // (id(X), gamma, id(X)), i.e. gamma <| id(X)
};
struct WTerminals {
  Idx ut_x, ut_y;
};
struct WInitials {
  Idx ui_x, ui_y;
};
struct WPullbacks {
  Idx upb_x, upb_y;
  Idx g1, g2, g3;
  WitnessPtr w1, w2, w3;
  Idx e_w1, e_w2, e_c1, e_c2, e_d;
};
struct WPushouts {
  // dual: squares (u_i, j_i, jx) at X and (v_i, k_i, ky) at Y, sub-equalities
  // g_i: U_i => V_i on the span feet and g3 on the span head; composites
  //   e_w1, e_w2 : U3 -> V_i  with (g3, v_i, e_wi) and (u_i, g_i, e_wi)
  //   e_c1, e_c2 : U_i -> Y   with (g_i, k_i, e_ci) and (j_i, gamma, e_ci)
  //   e_d        : U3 -> Y    with (u_1, e_c1, e_d) and (u_2, e_c2, e_d)
  Idx upo_x, upo_y;
  Idx g1, g2, g3;
  WitnessPtr w1, w2, w3;
  Idx e_w1, e_w2, e_c1, e_c2, e_d;
};
struct WLists {
  Idx ul_x, ul_y;
  Idx gA;
  WitnessPtr wA;
  Idx gT;      // T1 -> T2 (terminal subjects; no extra structure)
  Idx e_m;     // T1 -> L2 with (eps1, gamma, e_m), (gT, eps2, e_m)
  Idx gP;      // P1 -> P2, the product comparison
  Idx e_cl;    // P1 -> L2 with (pP1_x, gamma, e_cl), (gP, pP1_y, e_cl)
  Idx e_ca;    // P1 -> A2 with (pP2_x, gA, e_ca), (gP, pP2_y, e_ca)
  Idx e_n;     // P1 -> L2 with (cons1, gamma, e_n), (gP, cons2, e_n)
};

struct ObjectEqualityWitness {
  std::variant<WSameNode, WTerminals, WInitials, WPullbacks, WPushouts, WLists> v;
};

// true iff the witness case applies to gamma's endpoints and all required
// structure is present; total, never throws on malformed witnesses.
bool verify_object_equality(const Sketch& s, Idx gamma, const ObjectEqualityWitness& w);

// as above, with an explanation of the first failure
std::optional<std::string> object_equality_failure(const Sketch& s, Idx gamma,
                                                   const ObjectEqualityWitness& w);

// ---- closure (the object-equality lemma) -------------------------------------

struct ClosureResult {
  EqExtension ext;  // derivation over the input sketch
  Idx comm = 0;     // goal commutativity (identity-collapse, parallel-unify)
  Idx edge = 0;     // produced edge (compose, invert)
  std::optional<ObjectEqualityWitness> witness;  // compose, invert
};

// id(X) <| gamma in some equivalence extension
ClosureResult objeq_identity_collapse(const Sketch& s, Idx gamma,
                                      const ObjectEqualityWitness& w);
// a composite delta: X => Z with (g1, g2, delta)
ClosureResult objeq_compose(const Sketch& s, Idx g1, const ObjectEqualityWitness& w1,
                            Idx g2, const ObjectEqualityWitness& w2);
// an inverse object equality with the two inversion commutativities
ClosureResult objeq_invert(const Sketch& s, Idx gamma, const ObjectEqualityWitness& w);
// gamma <| gamma2 for parallel object equalities
ClosureResult objeq_parallel_unify(const Sketch& s, Idx gamma,
                                   const ObjectEqualityWitness& w, Idx gamma2,
                                   const ObjectEqualityWitness& w2);

// ---- bounded search -----------------------------------------------------------

// Deterministic bounded-depth search for an object equality X => Y; failure
// proves nothing.  Covers: same node, two terminal/initial universals, and
// pullback/pushout universals over literally identical data (recursively).
enum class SearchOutcome { Proved, NotProved };

struct WitnessSearchResult {
  SearchOutcome outcome = SearchOutcome::NotProved;
  EqExtension ext;   // derivation adjoining the witness edge and structure
  Idx edge = 0;      // the object equality edge in the apex
  std::optional<ObjectEqualityWitness> witness;
};

WitnessSearchResult search_object_equality(const Sketch& s, Idx x, Idx y,
                                           unsigned depth = 3);

// Incremental variant over a growing derivation.
std::optional<std::pair<Idx, ObjectEqualityWitness>> search_object_equality_in(
    DerivationBuilder& b, Idx x, Idx y, unsigned depth = 3);

// ---- objective equality of homomorphisms --------------------------------------

struct ObjectiveEqualityCertificate {
  EqExtension ext;      // of the target of f0, f1
  SketchHom gamma;      // T1-arrow -> apex(ext), a 2-cell from f0;incl to f1;incl
  std::vector<ObjectEqualityWitness> node_witness;  // per node of T1
};

// true iff ext checks, the 2-cell equations i_lambda;gamma = f_lambda;incl
// hold on nodes and edges, and every carrier edge is a verified object
// equality.
bool verify_objective_equality(const Context& t1, const SketchHom& f0,
                               const SketchHom& f1,
                               const ObjectiveEqualityCertificate& cert);

std::optional<std::string> objective_equality_failure(
    const Context& t1, const SketchHom& f0, const SketchHom& f1,
    const ObjectiveEqualityCertificate& cert);

// The trivial certificate for f0 = f1 = f (identity carriers, unit laws).
ObjectiveEqualityCertificate trivial_certificate(const Context& t1, const SketchHom& f);

}  // namespace auk
