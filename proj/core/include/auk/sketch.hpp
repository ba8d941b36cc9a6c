#pragma once

// Sketches for arithmetic universes: the raw data model.
//
// A sketch is a finite structure with eight sorts -- nodes, edges,
// commutativities, and universals for terminal objects, pullbacks, initial
// objects, pushouts and list objects.  Carriers are contiguous ordinals
// 0..k-1; every operation below returns fresh values and never mutates its
// inputs, so sketches and homomorphisms are freely shareable between threads.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace auk {

using Idx = std::uint32_t;

// Raised when an operation's precondition fails (mismatched sketches,
// dangling references, ...).  Invalid *data* -- a sketch that violates its
// defining equations -- is not an error; it is reported by validate_sketch.
struct KernelError : std::runtime_error {
  explicit KernelError(const std::string& msg) : std::runtime_error(msg) {}
};

struct EnumerationLimit : KernelError {
  explicit EnumerationLimit(const std::string& msg) : KernelError(msg) {}
};

enum class Sort : std::uint8_t { Node, Edge, Tri, UTerm, UPb, UInit, UPo, UList };

const char* sort_name(Sort s);

struct Sketch {
  // graph
  std::vector<Idx> e_dom, e_cod;  // edge -> node
  std::vector<Idx> n_id;          // node -> edge
  // commutativities: triangles l;r = c (diagrammatic order)
  std::vector<Idx> tri_l, tri_r, tri_c;  // tri -> edge
  // universals
  std::vector<Idx> ut_n;                  // terminal -> node
  std::vector<Idx> upb_tri1, upb_tri2;    // pullback -> tri
  std::vector<Idx> ui_n;                  // initial -> node
  std::vector<Idx> upo_tri1, upo_tri2;    // pushout -> tri
  std::vector<Idx> ul_pb;                 // list -> pullback
  std::vector<Idx> ul_t;                  // list -> terminal
  std::vector<Idx> ul_e, ul_cons;         // list -> edge

  Idx node_count() const { return static_cast<Idx>(n_id.size()); }
  Idx edge_count() const { return static_cast<Idx>(e_dom.size()); }
  Idx tri_count() const { return static_cast<Idx>(tri_l.size()); }
  Idx ut_count() const { return static_cast<Idx>(ut_n.size()); }
  Idx upb_count() const { return static_cast<Idx>(upb_tri1.size()); }
  Idx ui_count() const { return static_cast<Idx>(ui_n.size()); }
  Idx upo_count() const { return static_cast<Idx>(upo_tri1.size()); }
  Idx ul_count() const { return static_cast<Idx>(ul_pb.size()); }
  Idx count(Sort s) const;

  bool empty() const {
    return node_count() == 0 && edge_count() == 0 && tri_count() == 0 &&
           ut_count() == 0 && upb_count() == 0 && ui_count() == 0 &&
           upo_count() == 0 && ul_count() == 0;
  }

  // Unary commutativity u <| u' between parallel edges is a commutativity
  // id(dom u); u = u'.
  bool has_triangle(Idx l, Idx r, Idx c) const;
  std::optional<Idx> find_triangle(Idx l, Idx r, Idx c) const;
  bool has_unary_comm(Idx u, Idx u_prime) const;

  bool operator==(const Sketch&) const = default;
};

// The empty sketch and the one-object sketch (single node + identity edge).
Sketch empty_sketch();
Sketch object_sketch();

struct Violation {
  std::string equation;  // which defining equation failed
  Sort sort;             // sort of the offending element
  Idx element;           // first offending element for this equation
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

// Checks the defining equations of sketches; total, never throws.
// The report pinpoints the first offending element per equation.
ValidationReport validate_sketch(const Sketch& s);

// Homomorphism of sketches: one carrier function per sort, preserving all
// operators.  Two homomorphisms are considered equal when they agree on
// nodes and edges only; maps on the remaining sorts are still stored and
// validated since reducts along universals need them.
struct SketchHom {
  Sketch source, target;
  std::vector<Idx> n, e, tri, ut, upb, ui, upo, ul;
};

SketchHom identity_hom(const Sketch& s);

// Checks that h commutes with every sketch operator (all eight sorts) and
// that all images are in range.
ValidationReport validate_hom(const SketchHom& h);

// Equality "merely on" nodes and edges (requires equal endpoints).
bool hom_equal(const SketchHom& f, const SketchHom& g);

// Diagrammatic composition f;g.  Throws KernelError unless target(f) equals
// source(g) as sketch values.
SketchHom compose_hom(const SketchHom& f, const SketchHom& g);

struct EnumerateOptions {
  // Upper bound on the number of node/edge assignments explored; exceeding
  // it throws EnumerationLimit.  The enumerator is an oracle for universal
  // property tests and is only meant for desk-scale sketches.
  std::uint64_t max_candidates = 2'000'000;
};

// Complete, duplicate-free (modulo hom_equal) list of homomorphisms s1 -> s2,
// by exhaustive backtracking over node/edge assignments followed by extension
// to commutativities and universals.
std::vector<SketchHom> enumerate_homs(const Sketch& s1, const Sketch& s2,
                                      const EnumerateOptions& opts = {});

}  // namespace auk
