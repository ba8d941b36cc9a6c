#include <doctest.h>

#include "corpus_builders.hpp"

using namespace auk;
using namespace auk::testing;

TEST_CASE("every rule kind has a sound corpus instance") {
  for (const auto& inst : all_rule_instances()) {
    CAPTURE(inst.name);
    const SetModel base = interpret_context(inst.ctx, inst.prim);
    // the extension re-checks every delta commutativity internally
    const SetModel extended = extend_along_eqext(base, inst.ext, EvalOptions{6});
    for (const auto& st : check_commutativities(extended, EvalOptions{6}))
      CHECK(st.holds);
    CHECK(validate_sketch(extended.sketch).ok());
  }
}

TEST_CASE("inversion rules compose to identities in the set model") {
  for (const auto& inst : all_rule_instances()) {
    const bool inverts =
        inst.name == "balance" || inst.name == "initial stability" ||
        inst.name == "pushout stability" || inst.name == "exactness";
    if (!inverts) continue;
    CAPTURE(inst.name);
    const SetModel base = interpret_context(inst.ctx, inst.prim);
    const SetModel m = extend_along_eqext(base, inst.ext, EvalOptions{6});
    // the inverse is the last edge; the inverted edge is recoverable from the
    // final two commutativities (u, inv, id), (inv, u, id)
    const Idx inv = m.sketch.edge_count() - 1;
    const Idx t = m.sketch.tri_count() - 2;
    const Idx u = m.sketch.tri_l[t];
    CHECK(mor_equal(compose_mor(m.edge[u], m.edge[inv]),
                    identity_mor(m.edge[u].dom), 6)
              .holds);
    CHECK(mor_equal(compose_mor(m.edge[inv], m.edge[u]),
                    identity_mor(m.edge[inv].dom), 6)
              .holds);
  }
}
