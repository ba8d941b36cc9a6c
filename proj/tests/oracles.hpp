#pragma once

// Test-only oracles, kept independent of the kernel paths they check.

#include <functional>
#include <vector>

#include "auk/sketch.hpp"

namespace auk::testing {

// Exhaustive enumeration of all functions {0..n-1} -> {0..m-1}.
inline void all_functions(Idx n, Idx m,
                          const std::function<void(const std::vector<Idx>&)>& visit) {
  std::vector<Idx> f(n, 0);
  if (n == 0) {
    visit(f);
    return;
  }
  if (m == 0) return;  // no functions from a nonempty set into the empty set
  while (true) {
    visit(f);
    Idx i = 0;
    while (i < n) {
      if (++f[i] < m) break;
      f[i] = 0;
      ++i;
    }
    if (i == n) return;
  }
}

// Independent homomorphism enumeration: every node map and edge map, filtered
// by operator commutation, then a brute-force search over all completions on
// the remaining sorts.  Exponential; tiny sketches only.
inline std::vector<SketchHom> oracle_enumerate_homs(const Sketch& a, const Sketch& b) {
  std::vector<SketchHom> out;
  all_functions(a.node_count(), b.node_count(), [&](const std::vector<Idx>& n) {
    all_functions(a.edge_count(), b.edge_count(), [&](const std::vector<Idx>& e) {
      for (Idx i = 0; i < a.edge_count(); ++i) {
        if (b.e_dom[e[i]] != n[a.e_dom[i]]) return;
        if (b.e_cod[e[i]] != n[a.e_cod[i]]) return;
      }
      for (Idx x = 0; x < a.node_count(); ++x)
        if (b.n_id[n[x]] != e[a.n_id[x]]) return;
      bool found = false;
      SketchHom h;
      all_functions(a.tri_count(), b.tri_count(), [&](const std::vector<Idx>& tri) {
        if (found) return;
        for (Idx t = 0; t < a.tri_count(); ++t) {
          if (b.tri_l[tri[t]] != e[a.tri_l[t]]) return;
          if (b.tri_r[tri[t]] != e[a.tri_r[t]]) return;
          if (b.tri_c[tri[t]] != e[a.tri_c[t]]) return;
        }
        all_functions(a.ut_count(), b.ut_count(), [&](const std::vector<Idx>& ut) {
          if (found) return;
          for (Idx u = 0; u < a.ut_count(); ++u)
            if (b.ut_n[ut[u]] != n[a.ut_n[u]]) return;
          all_functions(a.upb_count(), b.upb_count(), [&](const std::vector<Idx>& upb) {
            if (found) return;
            for (Idx u = 0; u < a.upb_count(); ++u) {
              if (b.upb_tri1[upb[u]] != tri[a.upb_tri1[u]]) return;
              if (b.upb_tri2[upb[u]] != tri[a.upb_tri2[u]]) return;
            }
            all_functions(a.ui_count(), b.ui_count(), [&](const std::vector<Idx>& ui) {
              if (found) return;
              for (Idx u = 0; u < a.ui_count(); ++u)
                if (b.ui_n[ui[u]] != n[a.ui_n[u]]) return;
              all_functions(a.upo_count(), b.upo_count(), [&](const std::vector<Idx>& upo) {
                if (found) return;
                for (Idx u = 0; u < a.upo_count(); ++u) {
                  if (b.upo_tri1[upo[u]] != tri[a.upo_tri1[u]]) return;
                  if (b.upo_tri2[upo[u]] != tri[a.upo_tri2[u]]) return;
                }
                all_functions(a.ul_count(), b.ul_count(), [&](const std::vector<Idx>& ul) {
                  if (found) return;
                  for (Idx u = 0; u < a.ul_count(); ++u) {
                    if (b.ul_pb[ul[u]] != upb[a.ul_pb[u]]) return;
                    if (b.ul_t[ul[u]] != ut[a.ul_t[u]]) return;
                    if (b.ul_e[ul[u]] != e[a.ul_e[u]]) return;
                    if (b.ul_cons[ul[u]] != e[a.ul_cons[u]]) return;
                  }
                  found = true;
                  h.source = a;
                  h.target = b;
                  h.n = n;
                  h.e = e;
                  h.tri = tri;
                  h.ut = ut;
                  h.upb = upb;
                  h.ui = ui;
                  h.upo = upo;
                  h.ul = ul;
                });
              });
            });
          });
        });
      });
      if (found) out.push_back(std::move(h));
    });
  });
  return out;
}

}  // namespace auk::testing
