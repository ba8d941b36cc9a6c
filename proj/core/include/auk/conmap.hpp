#pragma once

// Context maps (opspans of an equivalence extension and a homomorphism),
// their composition, 2-cells, whiskering, and map-level objective equality.
//
// Maps are kept in representative form (e, f); equalities are always
// certificate-mediated and never silently normalized.  Composition is
// left-biased: the second map's extension is reindexed along the first map's
// homomorphism, which makes composition strictly unital and associative at
// the representative level.

#include "auk/arrow.hpp"
#include "auk/objeq.hpp"

namespace auk {

struct ContextMap {
  Context source;   // T0
  Context target;   // T1
  EqExtension e;    // of source.apex
  SketchHom f;      // target.apex -> apex(e)
};

// checks e against the source and f against apex(e)
void validate_map(const ContextMap& m);

ContextMap identity_map(const Context& t);

// (e0,f0);(e1,f1) = (e0 then f0(e1), eps o f1)
ContextMap compose_map(const ContextMap& m01, const ContextMap& m12);

// Objective equality of parallel maps: a common refinement of the two
// extensions together with an object equality between the lifted homs.
struct MapEqualityCertificate {
  EqExtension common;   // of source.apex, refining both e0 and e1
  SketchHom eps0, eps1; // apex(e_i) -> apex(common)
  ObjectiveEqualityCertificate oe;  // between f0;eps0 and f1;eps1
};

bool maps_objectively_equal(const ContextMap& m0, const ContextMap& m1,
                            const MapEqualityCertificate& cert);
std::optional<std::string> map_equality_failure(const ContextMap& m0,
                                                const ContextMap& m1,
                                                const MapEqualityCertificate& cert);

// Builds a certificate for parallel maps whose lifted homs are related
// pointwise: carriers found by the bounded object-equality search (equal
// elements, twin universals over identical data), theta edges derived from
// the witness structure.  Covers strictly equal maps, unit/associativity
// composites, and the invertibility composites of equivalence extensions
// whose fresh material is universal introductions.  Throws KernelError when
// a carrier cannot be constructed.
MapEqualityCertificate certify_maps_equal(const ContextMap& m0, const ContextMap& m1);

// ---- 2-cells -------------------------------------------------------------------

// A 2-cell between T0 and T1 is a context map from T0 to the hom context of
// T1; it is stored with its underlying homomorphism into apex(e).
struct TwoCell {
  Context source;  // T0
  Context target;  // T1
  EqExtension e;   // of source.apex
  SketchHom alpha; // arrow(T1).apex -> apex(e)
};

void validate_two_cell(const TwoCell& cell);

ContextMap cell_dom(const TwoCell& cell);
ContextMap cell_cod(const TwoCell& cell);

// the identity 2-cell on a map (theta carriers are identities)
TwoCell identity_cell(const ContextMap& m);

// an object-equality 2-cell: every theta-node carrier has a witness
struct ObjectEqualityCell {
  TwoCell cell;
  std::vector<ObjectEqualityWitness> node_witness;
};
bool verify_object_equality_cell(const ObjectEqualityCell& c);

// ---- transport along an equivalence extension (the 2-cell transport lemma) ------

// Given e1: T1 |~ T1', parallel homs f0, f1: apex(e1) -> T0 and a 2-cell
// alpha: arrow(T1).apex -> T0 from e1;f0 to e1;f1, produces an equivalence
// extension e0 of T0 and a 2-cell alpha': arrow(T1').apex -> apex(e0) with
// alpha;e0 = e1-arrow;alpha'.  Construction is case-by-case on e1's steps:
// composites via alpha_X;f1(w), inverses via the inversion algebra, universal
// nodes via canonical fillins, fillins via fillin uniqueness.
struct TransportResult {
  EqExtension e0;       // of T0
  SketchHom alpha_out;  // arrow(T1').apex -> apex(e0)
};

TransportResult transport_two_cell(const Context& t1, const EqExtension& e1,
                                   const SketchHom& f0, const SketchHom& f1,
                                   const SketchHom& alpha);

// ---- whiskering ------------------------------------------------------------------

// left whiskering m;cell: plain composition of maps into the hom context
TwoCell whisker_left(const ContextMap& m, const TwoCell& cell);

// right whiskering cell;(Id,f): composition with the arrow functor image of f
TwoCell whisker_right_hom(const TwoCell& cell, const Context& t2, const SketchHom& f);

// right whiskering cell;(e,Id): common refinement of the two reindexings
// followed by transport
TwoCell whisker_right_ext(const TwoCell& cell, const Context& t1_prime,
                          const EqExtension& e1);

// general right whiskering cell;(e1,f1)
TwoCell whisker_right(const TwoCell& cell, const ContextMap& m);

// ---- vertical and horizontal composition ------------------------------------------

// requires cod(a) and dom(b) to be certifiably equal; the certificate's
// common refinement aligns the representatives
TwoCell vertical_compose(const TwoCell& a, const TwoCell& b,
                         const MapEqualityCertificate& meet);

// alpha * beta = vertical composite of alpha;dom(beta) and cod(alpha);beta
TwoCell horizontal_compose(const TwoCell& a, const TwoCell& b);

// ---- the arrow involution -----------------------------------------------------------

// the involution (e, tau) of arrow(arrow(T)) swapping the two hom levels
struct Involution {
  EqExtension e;   // of arrow(arrow(T)).apex
  SketchHom tau;   // arrow(arrow(T)).apex -> apex(e)
};
Involution arrow_involution(const Context& t);

}  // namespace auk
