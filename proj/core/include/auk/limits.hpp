#pragma once

// Context constructors realizing the finite pie limits of the 2-category of
// contexts: products, hom contexts (and diagram contexts), inserters,
// equifiers, and pullbacks of extension maps.  Limits are constructed from
// chosen representatives and are representative-dependent; the legs are
// returned alongside each construction.

#include "auk/conmap.hpp"

namespace auk {

struct ProductResult {
  Context ctx;            // steps of t0 followed by the reindexed steps of t1
  SketchHom incl0, incl1; // t_i.apex -> ctx.apex
  ContextMap proj0, proj1;
};

ProductResult build_product(const Context& t0, const Context& t1);

struct HomContextResult {
  ArrowContext arrow;
  ContextMap dom, cod;  // (Id, i0), (Id, i1)
};

HomContextResult build_hom_context(const Context& t);

struct InserterResult {
  Context ctx;          // host extended by the theta material
  SketchHom incl;       // host -> ctx.apex
  ThetaExtension theta; // layout of the adjoined material
  // the inserter as an object of Con sits over the host of f0, f1
};

// f0, f1: t1.apex -> host (parallel homomorphisms into a shared apex)
InserterResult build_inserter(const Context& host, const Context& t1,
                              const SketchHom& f0, const SketchHom& f1);

struct EquifierResult {
  Context ctx;
  SketchHom incl;
  std::vector<Idx> node_comms;  // per node of t1: alpha_Y <| beta_Y
  std::vector<Idx> edge_comms;  // per edge of t1: alpha_v <| beta_v
};

// alpha, beta: arrow(t1).apex -> host with equal dom and cod
EquifierResult build_equifier(const Context& host, const Context& t1,
                              const SketchHom& alpha, const SketchHom& beta);

struct ExtensionPullbackResult {
  Context vertex;       // t0's context extended by m.e and the reindexed c
  ContextMap to_t0;     // extension map
  ContextMap to_t1p;    // (Id, eps)
  ContextMap along;     // the map the extension was pulled back along
  Extension ext_c;      // the pulled-back extension
};

// Pullback of the extension map (Id, c): t1' -> t1 along m: t0 -> t1,
// obtained by reindexing c along m's homomorphism.
ExtensionPullbackResult pullback_extension_map(const Context& t1, const Extension& c,
                                               const ContextMap& m);

// The fillin procedure of the pullback square: given a map g = (eg, fg) from
// u to t1' and a map h = (eh, fh) from u to t0 whose composites with the
// square agree via the certificate, produce the fillin map u -> vertex.
// The two fillins for the same data are certified equal by
// certify_maps_equal.
ContextMap pullback_fillin(const ExtensionPullbackResult& pb, const ContextMap& to_t0,
                           const ContextMap& to_t1p);

}  // namespace auk
