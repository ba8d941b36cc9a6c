#pragma once

// Strict models of contexts in a computable finite-set semantics.
//
// Carriers are either explicit finite sets or lazy carriers (list objects and
// products/pullbacks touching them).  The canonical encodings are fixed for
// bit-exact reproducibility:
//   terminal       {unit}
//   pullback       pairs (a, b) with u1(a) = u2(b), enumerated left-major
//   pushout        tagged elements tag0/tag1 modulo the span relation,
//                  each class represented by its least element
//   initial        {}
//   list object    lists over the base carrier, enumerated by nondecreasing
//                  length, lexicographically within a length
// Equality of morphisms out of lazy carriers is checked up to a configurable
// list-length bound (default 8) and reported as verified-to-bound.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "auk/eqext.hpp"
#include "auk/extension.hpp"

namespace auk {

struct ModelError : KernelError {
  explicit ModelError(const std::string& msg) : KernelError(msg) {}
};

// ---- set elements -----------------------------------------------------------

struct SetElem {
  enum class Kind : std::uint8_t { Unit, Atom, Pair, Tag, List };
  Kind kind = Kind::Unit;
  std::string atom;            // Atom
  unsigned tag = 0;            // Tag
  std::vector<SetElem> kids;   // Pair (2), Tag (1), List (n)

  static SetElem unit();
  static SetElem make_atom(std::string name);
  static SetElem pair(SetElem a, SetElem b);
  static SetElem tagged(unsigned t, SetElem x);
  static SetElem list(std::vector<SetElem> xs);

  const SetElem& first() const { return kids[0]; }
  const SetElem& second() const { return kids[1]; }

  bool operator==(const SetElem&) const = default;
  // total order: by kind, then payload, then children lexicographically
  std::strong_ordering operator<=>(const SetElem&) const;
  std::string to_string() const;
};

// ---- carriers ---------------------------------------------------------------

struct SetObjData;
using SetObjPtr = std::shared_ptr<const SetObjData>;

struct SetMor;

struct SetObjData {
  enum class Kind : std::uint8_t { Fin, LazyList, LazyPullback };
  Kind kind = Kind::Fin;
  std::vector<SetElem> elems;        // Fin: distinct, sorted
  SetObjPtr base;                    // LazyList
  std::shared_ptr<SetMor> u1, u2;    // LazyPullback legs
};

SetObjPtr fin_set(std::vector<SetElem> elems);
SetObjPtr lazy_list(SetObjPtr base);
bool is_finite(const SetObjPtr& s);
bool obj_equal(const SetObjPtr& a, const SetObjPtr& b);
bool contains(const SetObjPtr& s, const SetElem& x);
std::string obj_to_string(const SetObjPtr& s);

// Enumerates elements.  Finite carriers are visited exhaustively; lazy list
// carriers by nondecreasing length up to list_bound (bases of lazy carriers
// are themselves bounded by the same parameter).  Returns false if the
// enumeration was truncated by the bound.
bool enumerate(const SetObjPtr& s, unsigned list_bound,
               const std::function<void(const SetElem&)>& visit);

// ---- morphisms --------------------------------------------------------------

struct SetMor {
  SetObjPtr dom, cod;
  bool tabulated = true;
  std::map<SetElem, SetElem> table;
  std::function<SetElem(const SetElem&)> rule;

  SetElem operator()(const SetElem& x) const;
};

SetMor tabulate(SetObjPtr dom, SetObjPtr cod, std::map<SetElem, SetElem> table);
SetMor from_rule(SetObjPtr dom, SetObjPtr cod, std::function<SetElem(const SetElem&)> f);
SetMor identity_mor(SetObjPtr obj);
SetMor compose_mor(const SetMor& f, const SetMor& g);  // diagrammatic f;g

struct MorCheck {
  bool holds = true;
  bool exhaustive = true;  // false when only verified to the list bound
  std::optional<SetElem> counterexample;
};

MorCheck mor_equal(const SetMor& f, const SetMor& g, unsigned list_bound);

// ---- canonical constructions --------------------------------------------------

SetObjPtr terminal_carrier();
SetMor const_unit(SetObjPtr dom, SetObjPtr one);

struct PullbackParts {
  SetObjPtr carrier;
  SetMor p1, p, p2;
};
PullbackParts canonical_pullback(const SetMor& u1, const SetMor& u2);

struct PushoutParts {
  SetObjPtr carrier;
  SetMor j1, j, j2;
};
PushoutParts canonical_pushout(const SetMor& u1, const SetMor& u2);

struct ListParts {
  SetObjPtr T, L, P;
  SetMor eps, cons, p1, p, p2, bangA, bangL;
};
ListParts canonical_list(const SetObjPtr& A);

// ---- models -----------------------------------------------------------------

struct SetModel {
  Sketch sketch;                 // the modelled sketch (apex of a context)
  std::vector<SetObjPtr> node;   // per node
  std::vector<SetMor> edge;      // per edge
  bool strict = true;
};

struct EvalOptions {
  unsigned list_bound = 8;
};

struct PrimAssignment {
  std::map<Idx, SetObjPtr> nodes;  // primitive node -> finite carrier
  std::map<Idx, SetMor> edges;     // primitive edge -> morphism
};

// Interprets a context strictly: primitives from the assignment, universal
// subjects by the canonical constructions, commutativity steps checked.
SetModel interpret_context(const Context& ctx, const PrimAssignment& prim,
                           const EvalOptions& opts = {});

// The unique strict extension of a strict model along an equivalence
// extension.  Every delta commutativity is re-checked (soundness harness);
// a failure signals a kernel bug and is reported as ModelError.
SetModel extend_along_eqext(const SetModel& m, const EqExtension& e,
                            const EvalOptions& opts = {});

// Model reduction along a homomorphism (preserves strictness).
SetModel reduct(const SetModel& m, const SketchHom& f);

// Checks all commutativities of the model's sketch.
struct CommStatus {
  Idx tri = 0;
  bool holds = true;
  bool exhaustive = true;
  std::optional<SetElem> counterexample;
};
std::vector<CommStatus> check_commutativities(const SetModel& m, const EvalOptions& opts = {});

// ---- model homomorphisms ----------------------------------------------------

struct ModelHom {
  std::vector<SetMor> component;  // per node of the modelled sketch
};

// naturality squares pointwise (finite exact, lazy to bound)
bool check_model_hom(const SetModel& a, const SetModel& b, const ModelHom& h,
                     const EvalOptions& opts = {});

// The homomorphism M|gamma between reducts along a 2-cell hom: components are
// the interpretations of the theta edges.
ModelHom reduct_two_cell(const SetModel& m, const SketchHom& alpha,
                         const std::vector<Idx>& theta_node);

// ---- strictification --------------------------------------------------------

struct Iso {
  SetMor fwd, bwd;
};

struct StrictifyResult {
  SetModel model;                // strict
  std::vector<Iso> iso;          // per node: model -> input
};

// Replays the strictification induction: primitive nodes are copied with
// identity components, primitive edges conjugated, universal subjects
// replaced by the canonical constructions with the canonical comparison
// isomorphisms.  The input must respect commutativities up to equality and
// universals up to isomorphism; violations are reported as ModelError with a
// counterexample.
StrictifyResult strictify(const Context& ctx, const SetModel& m,
                          const EvalOptions& opts = {});

}  // namespace auk
