#pragma once

// The context DSL: parser, elaborator, printer and graph export.
//
// Documents are line oriented; `#` starts a comment.  Declarations:
//
//   context NAME ... end        with steps
//     node X
//     edge f : X -> Y
//     comm f . g = h            (diagrammatic: f then g equals h)
//     terminal T
//     initial Z
//     pullback P[p1,p,p2] = pb(u1,u2)
//     pushout Q[j1,j,j2] = po(u1,u2)
//     list L[T,P,eps,cons,p1,p,p2,bA,bL] = list(A)
//
//   eqext NAME over CTX ... end  with rule lines
//     compose w = u . v
//     lunit u | runit u
//     lassoc u v w k l m | rassoc u v w k l m
//     (the universal steps of contexts)
//     pbfill w = fill(P; v1, v2 / v)
//     pbunique P : v1 v2 w w2
//     pofill w = cofill(Q; v1, v2 / v)
//     pounique Q : v1 v2 w w2
//     termfill w = bang(T; X) | termunique T : w w2
//     initfill w = cobang(Z; X) | initunique Z : w w2
//     balance w = invert(u)            (kernel data found structurally)
//     initstab w = invert0(u)
//     postab w = stab(e)
//     exact w = exact(pi1, pi2, e)
//     listfill r rp rpp gp gpp = rec(L; y, g)
//
//   hom NAME : SRC -> TGT ... end  with `X |-> Y` lines (TGT may be an eqext)
//   map NAME = (EQEXT, HOM)
//   model NAME of CTX ... end  with `X := {a,b}` and `f := {a |-> b, ...}`
//
// Names are surface only; the kernel sees ordinals.

#include <map>
#include <string>
#include <vector>

#include "auk/conmap.hpp"
#include "auk/setmodel.hpp"

namespace auk {

struct Diagnostic {
  enum class Severity { Error, Warning } severity = Severity::Error;
  int line = 0;
  std::string message;
  std::string rule;  // related rule name, when a kernel check failed
  std::string to_string() const;
};

struct ParseError : KernelError {
  Diagnostic diag;
  explicit ParseError(Diagnostic d) : KernelError(d.to_string()), diag(std::move(d)) {}
};

// ---- surface syntax -------------------------------------------------------------

struct SurfaceDecl {
  enum class Kind { Context, EqExt, Hom, Map, Model } kind = Kind::Context;
  std::string name;
  std::string arg1, arg2;  // over/src/tgt references
  int line = 0;
  std::vector<std::pair<int, std::string>> body;  // line number + raw text
};

struct SourceDocument {
  std::vector<SurfaceDecl> decls;
};

SourceDocument parse_document(const std::string& text);

// ---- elaborated store -------------------------------------------------------------

struct NameTable {
  std::map<std::string, Idx> nodes, edges;
  std::vector<std::string> node_names, edge_names;  // per ordinal
};

struct ElabContext {
  std::string name;
  Context ctx;
  NameTable names;
};

struct ElabEqExt {
  std::string name;
  std::string over;
  EqExtension ext;
  NameTable names;  // for the apex (context names plus rule-bound names)
};

struct ElabHom {
  std::string name;
  std::string src, tgt;  // tgt may name an eqext (meaning its apex)
  SketchHom hom;
};

struct ElabMap {
  std::string name;
  ContextMap map;
  std::string eqext, hom;
};

struct ElabModel {
  std::string name;
  std::string of;
  PrimAssignment prim;
  SetModel model;  // interpreted
};

struct Store {
  std::map<std::string, ElabContext> contexts;
  std::map<std::string, ElabEqExt> eqexts;
  std::map<std::string, ElabHom> homs;
  std::map<std::string, ElabMap> maps;
  std::map<std::string, ElabModel> models;
  std::vector<std::string> order;  // declaration order as (kind:name)
};

// Elaborates and checks every declaration; throws ParseError with a line and
// rule name on the first failure.
Store elaborate(const SourceDocument& doc, const EvalOptions& opts = {});

// ---- printing ---------------------------------------------------------------------

std::string print_document(const Store& store);

// prints a single context / eqext with generated names where needed
std::string print_context(const ElabContext& c);
std::string print_eqext(const ElabEqExt& e, const Store& store);

// ---- graph export -------------------------------------------------------------------

// Deterministic graph description: nodes and edges, commutativities as
// annotated triangles, universals as clustered subgraphs.
std::string export_dot(const Sketch& s, const NameTable& names, const std::string& title);

}  // namespace auk
