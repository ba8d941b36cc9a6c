#pragma once

// The freely presented AU of a context, realized as the hom category from the
// context to the object context: objects and morphisms are nodes and edges of
// equivalence extensions, modulo certified objective equality.  Elements are
// kept as representatives; no quotient is materialized.

#include "auk/conmap.hpp"
#include "auk/derive.hpp"
#include "auk/objeq.hpp"

namespace auk {

struct TermObject {
  EqExtension e;  // of the presenting context's apex
  Idx node;       // in apex(e)
};

struct TermMorphism {
  EqExtension e;
  Idx edge;
};

// AU operations over a growing equivalence extension of a context.  Every
// method adjoins the corresponding universal-introduction, fillin or
// inversion step and returns the fresh element.
class AuBuilder {
 public:
  explicit AuBuilder(Context base);

  const Context& base() const { return base_; }
  const Sketch& sketch() const { return b_.sketch(); }
  DerivationBuilder& derivation() { return b_; }

  Idx terminal();  // returns the fresh node; terminal_of() gives the universal
  Idx initial();
  Idx last_terminal() const { return last_ut_; }
  Idx last_initial() const { return last_ui_; }

  struct PbIntro {
    Idx node, p1, p, p2, upb;
  };
  PbIntro pullback(Idx u1, Idx u2);

  struct PoIntro {
    Idx node, j1, j, j2, upo;
  };
  PoIntro pushout(Idx u1, Idx u2);

  struct ListIntro {
    Idx T, L, P;
    Idx eps, cons, p1, p, p2, bangA, bangL;
    Idx ul, ut, upb;
  };
  ListIntro list(Idx a);

  Idx compose(Idx u, Idx v);
  Idx terminal_fillin(Idx ut, Idx node);
  Idx initial_fillin(Idx ui, Idx node);
  Idx pullback_fillin(Idx upb, Idx d1, Idx d2);

  // Fillin into a pullback whose cospan targets a terminal subject; the cone
  // commutativities are derived via terminal fillin uniqueness.
  Idx product_fillin(Idx upb, Idx v1, Idx v2);

  // Assembles the list-recursor configuration for rec(y, g) over the list
  // universal ul, with B = dom(y), Y = cod(y) and g out of the supplied
  // product A x Y.  Adjoins the needed products and auxiliary fillins, then
  // the list fillin itself; returns the recursor edge r: (L x B) -> Y along
  // with the configuration.
  struct Recursor {
    Idx r;
    Idx pb_LB;  // the product L x B used as the recursor's domain
    ListFillinConfig cfg;
  };
  Recursor list_recursor(Idx ul, Idx y, Idx g, Idx pb_ay);

  TermObject object(Idx node) const;
  TermMorphism morphism(Idx edge) const;
  EqExtension extension() const { return b_.extension(); }

 private:
  Context base_;
  DerivationBuilder b_;
  Idx last_ut_ = 0, last_ui_ = 0;
};

// Composition of term morphisms after a common refinement.  When the
// endpoints disagree as nodes, an object equality between them is searched
// for and inserted; a failed search is an error (missing endpoint
// certificate).
struct TermComposeResult {
  TermMorphism m;
  Idx comm;  // the composition commutativity in the result's apex
};
TermComposeResult term_compose(const Context& t, const TermMorphism& f,
                               const TermMorphism& g);

// true iff the derivation checks over the common refinement of f.e and g.e
// and contains the unary commutativity between the lifted edges.
bool term_mor_equal(const Context& t, const TermMorphism& f, const TermMorphism& g,
                    const EqExtension& d);

// ---- the model/map bijection ---------------------------------------------------

struct TermModel {
  Context of;                      // the modelled context T0
  std::vector<TermObject> node;    // per node of T0
  std::vector<TermMorphism> edge;  // per edge of T0
};

// nodes and edges of T0 translated along the map's homomorphism
TermModel map_to_model(const ContextMap& m);

// Gathers the finitely many witnesses into a common refinement and expresses
// the model as a context map; the carrier must assemble into a homomorphism.
ContextMap model_to_map(const Context& t, const TermModel& model);

}  // namespace auk
