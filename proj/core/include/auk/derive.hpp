#pragma once

// The derived equality logic of the rule calculus: reflexivity, symmetry,
// transitivity, congruence and unit transfer, each emitted as a checkable
// equivalence extension.  DerivationBuilder is the incremental construction
// device shared by the higher layers (object-equality closure, 2-cell
// transport, term operations).

#include "auk/eqext.hpp"

namespace auk {

class DerivationBuilder {
 public:
  explicit DerivationBuilder(Sketch base);

  const Sketch& sketch() const { return cur_; }
  const EqExtension& extension() const { return ext_; }

  StepDelta apply(EqStep step);

  // rule helpers; all return indices in the accumulated sketch
  struct Composite {
    Idx edge, tri;
  };
  Composite compose(Idx u, Idx v);     // adjoins w with (u,v,w)
  Idx left_unit(Idx u);                // (id(dom u), u, u)
  Idx right_unit(Idx u);               // (u, id(cod u), u)
  Idx left_assoc(Idx u, Idx v, Idx w, Idx k, Idx l, Idx m);   // adds (k,w,m)
  Idx right_assoc(Idx u, Idx v, Idx w, Idx k, Idx l, Idx m);  // adds (u,l,m)

  // Prop 5.2 derivations; inputs and outputs are commutativity indices.
  Idx refl(Idx u);                     // (id, u, u)
  Idx sym(Idx t);                      // (id,u,u') -> (id,u',u)
  Idx trans(Idx t1, Idx t2);           // (id,u,u'), (id,u',u'') -> (id,u,u'')
  // (id,u,u'), (id,v,v'), (u,v,w) -> (u',v',w)
  Idx congruence(Idx t_u, Idx t_v, Idx t_w);
  Idx unify_parallel(Idx t1, Idx t2);  // (u,v,w), (u,v,w') -> (id,w,w')
  Idx transfer_comp(Idx t, Idx un);    // (u,v,w), (id,w,w') -> (u,v,w')
  // replace the left leg: (u,v,w), (id,u,u') -> (u',v,w)
  Idx replace_left(Idx t, Idx un);
  // replace the right leg: (u,v,w), (id,v,v') -> (u,v',w)
  Idx replace_right(Idx t, Idx un);
  Idx unit_transfer_lr(Idx t);         // (id,u,u') -> (u',id,u)
  Idx unit_transfer_rl(Idx t);         // (u',id,u) -> (id,u,u')

  // finds an existing commutativity or derives equality of two composites of
  // the same pair when both are present
  std::optional<Idx> find_tri(Idx l, Idx r, Idx c) const;
  // adjoins (or finds) the unary commutativity id(dom u) u <| u
  Idx ensure_refl(Idx u);

 private:
  EqExtension ext_;
  Sketch cur_;
};

// The four mutually derivable shapes of an edge equality u <| u'.
enum class UnaryForm : std::uint8_t {
  IdLeft,         // (id(X), u, u')
  IdLeftSwapped,  // (id(X), u', u)
  RightId,        // (u, id(Y), u')
  RightIdSwapped, // (u', id(Y), u)
};

struct GoalRefl { Idx u; };
struct GoalSym { Idx witness; };            // (id,u,u')
struct GoalTrans { Idx w1, w2; };           // (id,u,u'), (id,u',u'')
struct GoalCongruence { Idx wu, wv, ww; };  // (id,u,u'), (id,v,v'), (u,v,w)
struct GoalUnitTransfer { Idx witness; UnaryForm to; };

using DeriveGoal =
    std::variant<GoalRefl, GoalSym, GoalTrans, GoalCongruence, GoalUnitTransfer>;

struct DeriveResult {
  EqExtension derivation;
  Idx goal_comm;  // index of the goal commutativity in the apex
};

// Replays the proofs of the equality-logic proposition.  Throws KernelError
// when a cited witness is missing or malformed.
DeriveResult derive_equality(const Sketch& base, const DeriveGoal& goal);

}  // namespace auk
