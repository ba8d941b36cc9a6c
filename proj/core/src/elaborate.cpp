#include <algorithm>
#include <sstream>

#include "auk/frontend.hpp"

namespace auk {

namespace {

[[noreturn]] void fail_at(int line, std::string msg, std::string rule = {}) {
  throw ParseError(Diagnostic{Diagnostic::Severity::Error, line, std::move(msg),
                              std::move(rule)});
}

std::vector<std::string> tokenize(const std::string& s, int line) {
  std::vector<std::string> out;
  size_t i = 0;
  auto is_ident = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  };
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    if (is_ident(c)) {
      size_t j = i;
      while (j < s.size() && is_ident(s[j])) ++j;
      out.push_back(s.substr(i, j - i));
      i = j;
      continue;
    }
    if (s.compare(i, 3, "|->") == 0) {
      out.push_back("|->");
      i += 3;
      continue;
    }
    if (s.compare(i, 2, "->") == 0) {
      out.push_back("->");
      i += 2;
      continue;
    }
    if (s.compare(i, 2, ":=") == 0) {
      out.push_back(":=");
      i += 2;
      continue;
    }
    static const std::string singles = ":=.,;()[]{}/*";
    if (singles.find(c) != std::string::npos) {
      out.push_back(std::string(1, c));
      ++i;
      continue;
    }
    fail_at(line, std::string("unexpected character '") + c + "'");
  }
  return out;
}

struct Cursor {
  std::vector<std::string> t;
  size_t i = 0;
  int line = 0;
  bool done() const { return i >= t.size(); }
  const std::string& peek() const {
    static const std::string empty;
    return done() ? empty : t[i];
  }
  std::string next() {
    if (done()) fail_at(line, "unexpected end of line");
    return t[i++];
  }
  void expect(const std::string& tok) {
    const std::string got = next();
    if (got != tok) fail_at(line, "expected '" + tok + "', found '" + got + "'");
  }
  void finish() const {
    if (!done()) fail_at(line, "trailing tokens: '" + peek() + "'");
  }
};

struct Scope {
  NameTable* names;
  int line = 0;
  const Sketch* sketch = nullptr;
  Idx node(const std::string& n) const {
    auto it = names->nodes.find(n);
    if (it == names->nodes.end()) fail_at(line, "unresolved node name '" + n + "'");
    return it->second;
  }
  Idx edge(const std::string& n) const {
    auto it = names->edges.find(n);
    if (it == names->edges.end()) fail_at(line, "unresolved edge name '" + n + "'");
    return it->second;
  }
  // an edge reference is a name or id(NODE)
  Idx edge_ref(Cursor& c) const {
    const std::string t = c.next();
    if (t == "id") {
      c.expect("(");
      const Idx x = node(c.next());
      c.expect(")");
      if (!sketch) fail_at(line, "id(...) reference outside a step context");
      return sketch->n_id[x];
    }
    return edge(t);
  }
  void bind_node(const std::string& n, Idx x) {
    if (names->nodes.count(n) || names->edges.count(n))
      fail_at(line, "duplicate name '" + n + "'");
    names->nodes[n] = x;
    if (names->node_names.size() <= x) names->node_names.resize(x + 1);
    names->node_names[x] = n;
  }
  void bind_edge(const std::string& n, Idx u) {
    if (names->nodes.count(n) || names->edges.count(n))
      fail_at(line, "duplicate name '" + n + "'");
    names->edges[n] = u;
    if (names->edge_names.size() <= u) names->edge_names.resize(u + 1);
    names->edge_names[u] = n;
  }
};

void autoname(NameTable& names, const Sketch& apex) {
  if (names.node_names.size() < apex.node_count())
    names.node_names.resize(apex.node_count());
  if (names.edge_names.size() < apex.edge_count())
    names.edge_names.resize(apex.edge_count());
  for (Idx x = 0; x < apex.node_count(); ++x)
    if (names.node_names[x].empty()) {
      std::string n = "_n" + std::to_string(x);
      names.node_names[x] = n;
      names.nodes[n] = x;
    }
  for (Idx u = 0; u < apex.edge_count(); ++u)
    if (names.edge_names[u].empty()) {
      std::string n = "_e" + std::to_string(u);
      names.edge_names[u] = n;
      names.edges[n] = u;
    }
}

// universal steps are shared syntax between contexts and eqexts
bool parse_universal_step(const std::string& kw, Cursor& c, Scope& sc,
                          ExtensionStep& out, std::vector<std::string>& bind_nodes,
                          std::vector<std::string>& bind_edges) {
  if (kw == "terminal") {
    bind_nodes = {c.next()};
    out = AddTerminal{};
    return true;
  }
  if (kw == "initial") {
    bind_nodes = {c.next()};
    out = AddInitial{};
    return true;
  }
  if (kw == "pullback" || kw == "pushout") {
    const std::string subject = c.next();
    c.expect("[");
    std::vector<std::string> legs;
    legs.push_back(c.next());
    c.expect(",");
    legs.push_back(c.next());
    c.expect(",");
    legs.push_back(c.next());
    c.expect("]");
    c.expect("=");
    const std::string fn = c.next();
    if ((kw == "pullback" && fn != "pb") || (kw == "pushout" && fn != "po"))
      fail_at(c.line, "expected '" + std::string(kw == "pullback" ? "pb" : "po") + "(...)'");
    c.expect("(");
    const Idx u1 = sc.edge_ref(c);
    c.expect(",");
    const Idx u2 = sc.edge_ref(c);
    c.expect(")");
    bind_nodes = {subject};
    bind_edges = legs;
    if (kw == "pullback")
      out = AddPullback{u1, u2};
    else
      out = AddPushout{u1, u2};
    return true;
  }
  if (kw == "list") {
    const std::string subject = c.next();
    c.expect("[");
    std::vector<std::string> parts;
    for (int k = 0; k < 9; ++k) {
      parts.push_back(c.next());
      if (k < 8) c.expect(",");
    }
    c.expect("]");
    c.expect("=");
    if (c.next() != "list") fail_at(c.line, "expected 'list(A)'");
    c.expect("(");
    const Idx a = sc.node(c.next());
    c.expect(")");
    bind_nodes = {parts[0], subject, parts[1]};
    bind_edges = {parts[2], parts[3], parts[4], parts[5], parts[6], parts[7], parts[8]};
    out = AddListObject{a};
    return true;
  }
  return false;
}

void bind_delta(Scope& sc, const StepDelta& delta, const std::vector<std::string>& bn,
                const std::vector<std::string>& be) {
  for (size_t k = 0; k < bn.size(); ++k) sc.bind_node(bn[k], delta.nodes[k]);
  for (size_t k = 0; k < be.size(); ++k) sc.bind_edge(be[k], delta.edges[k]);
}

Context elaborate_context(const SurfaceDecl& d, NameTable& names) {
  std::vector<ExtensionStep> steps;
  Sketch cur = empty_sketch();
  for (const auto& [line, text] : d.body) {
    Cursor c{tokenize(text, line), 0, line};
    Scope sc{&names, line, &cur};
    const std::string kw = c.next();
    ExtensionStep step;
    std::vector<std::string> bind_nodes, bind_edges;
    if (kw == "node") {
      bind_nodes = {c.next()};
      step = AddPrimitiveNode{};
    } else if (kw == "edge") {
      const std::string name = c.next();
      c.expect(":");
      const Idx dom = sc.node(c.next());
      c.expect("->");
      const Idx cod = sc.node(c.next());
      bind_edges = {name};
      step = AddPrimitiveEdge{dom, cod};
    } else if (kw == "comm") {
      const Idx l = sc.edge_ref(c);
      c.expect(".");
      const Idx r = sc.edge_ref(c);
      c.expect("=");
      const Idx cc = sc.edge_ref(c);
      step = AddCommutativity{l, r, cc};
    } else if (!parse_universal_step(kw, c, sc, step, bind_nodes, bind_edges)) {
      fail_at(line, "unknown context step '" + kw + "'");
    }
    c.finish();
    try {
      auto [next, delta] = apply_step(cur, step);
      cur = std::move(next);
      bind_delta(sc, delta, bind_nodes, bind_edges);
    } catch (const KernelError& err) {
      fail_at(line, err.what(), "extension step");
    }
    steps.push_back(std::move(step));
  }
  Context out;
  out.ext.base = empty_sketch();
  out.ext.steps = std::move(steps);
  out.apex = std::move(cur);
  return out;
}

// structural searches backing the inversion sugar
Idx find_kernel_pair(const Sketch& s, Idx u, int line) {
  for (Idx w = 0; w < s.upb_count(); ++w)
    if (s.tri_r[s.upb_tri1[w]] == u && s.tri_r[s.upb_tri2[w]] == u) return w;
  fail_at(line, "no kernel-pair pullback universal for the edge", "balance");
}

Idx find_cokernel_pair(const Sketch& s, Idx u, int line) {
  for (Idx w = 0; w < s.upo_count(); ++w)
    if (s.tri_l[s.upo_tri1[w]] == u && s.tri_l[s.upo_tri2[w]] == u) return w;
  fail_at(line, "no cokernel-pair pushout universal for the edge", "balance");
}

Idx find_unary(const Sketch& s, Idx a, Idx b, int line, const char* what) {
  if (auto t = s.find_triangle(s.n_id[s.e_dom[a]], a, b)) return *t;
  fail_at(line, std::string("missing unary commutativity ") + what, "balance");
}

// deterministic first-match searches backing the configuration sugar; the
// kernel re-checks everything structurally

std::optional<Idx> upb_with_subject(const Sketch& s, Idx node) {
  for (Idx w = 0; w < s.upb_count(); ++w)
    if (s.e_dom[s.tri_l[s.upb_tri1[w]]] == node) return w;
  return std::nullopt;
}

std::optional<Idx> upo_with_subject(const Sketch& s, Idx node) {
  for (Idx w = 0; w < s.upo_count(); ++w)
    if (s.e_cod[s.tri_r[s.upo_tri1[w]]] == node) return w;
  return std::nullopt;
}

std::optional<Idx> upb_with_feet(const Sketch& s, Idx dom1, Idx dom2) {
  for (Idx w = 0; w < s.upb_count(); ++w)
    if (s.e_dom[s.tri_r[s.upb_tri1[w]]] == dom1 && s.e_dom[s.tri_r[s.upb_tri2[w]]] == dom2)
      return w;
  return std::nullopt;
}

std::optional<Idx> edge_with_comm(const Sketch& s, Idx l, Idx r, Idx dom, Idx cod) {
  for (Idx e = 0; e < s.edge_count(); ++e)
    if (s.e_dom[e] == dom && s.e_cod[e] == cod && s.has_triangle(l, r, e)) return e;
  return std::nullopt;
}

PushoutStabilityConfig search_postab_config(const Sketch& s, Idx e, int line) {
  PushoutStabilityConfig cfg;
  cfg.e = e;
  const Idx E = s.e_dom[e];
  const auto inner = upo_with_subject(s, E);
  if (!inner) fail_at(line, "inverted edge does not start at a pushout subject", "postab");
  cfg.po_inner = *inner;
  const Idx u1p = s.tri_l[s.upo_tri1[*inner]];
  const Idx u2p = s.tri_l[s.upo_tri2[*inner]];
  cfg.u1p = u1p;
  cfg.u2p = u2p;
  const auto pbv = upb_with_subject(s, s.e_dom[u1p]);
  const auto pb1 = upb_with_subject(s, s.e_cod[u1p]);
  const auto pb2 = upb_with_subject(s, s.e_cod[u2p]);
  if (!pbv || !pb1 || !pb2)
    fail_at(line, "missing pullback universals of the stability square", "postab");
  cfg.pb_v = *pbv;
  cfg.pb_v1 = *pb1;
  cfg.pb_v2 = *pb2;
  cfg.w = s.tri_r[s.upb_tri1[*pbv]];
  const Idx diag = s.tri_r[s.upb_tri2[*pbv]];
  Idx po_base = static_cast<Idx>(-1);
  for (Idx w = 0; w < s.upo_count(); ++w)
    if (s.tri_c[s.upo_tri1[w]] == diag) po_base = w;
  if (po_base == static_cast<Idx>(-1))
    fail_at(line, "missing base pushout of the stability square", "postab");
  cfg.po_base = po_base;
  const Idx pi2v = s.tri_l[s.upb_tri2[*pbv]];
  const Idx bu1 = s.tri_l[s.upo_tri1[po_base]];
  const Idx bu2 = s.tri_l[s.upo_tri2[po_base]];
  const auto c1 = edge_with_comm(s, pi2v, bu1, s.e_dom[pi2v], s.e_cod[bu1]);
  const auto c2 = edge_with_comm(s, pi2v, bu2, s.e_dom[pi2v], s.e_cod[bu2]);
  if (!c1 || !c2) fail_at(line, "missing named composites of the stability square", "postab");
  cfg.c1 = *c1;
  cfg.c2 = *c2;
  return cfg;
}

ExactnessConfig search_exactness_config(const Sketch& s, Idx pi1, Idx pi2, Idx e,
                                        int line) {
  ExactnessConfig cfg;
  cfg.pi1 = pi1;
  cfg.pi2 = pi2;
  cfg.e = e;
  const Idx X1 = s.e_dom[pi1];
  const Idx X0 = s.e_cod[pi1];
  const auto pbK = upb_with_subject(s, s.e_cod[e]);
  if (!pbK) fail_at(line, "kernel pair of the coequalizer not found", "exactness");
  cfg.pb_K = *pbK;
  const Idx gamma = s.tri_r[s.upb_tri1[*pbK]];
  Idx po_coeq = static_cast<Idx>(-1);
  for (Idx w = 0; w < s.upo_count(); ++w)
    if (s.tri_r[s.upo_tri1[w]] == gamma) po_coeq = w;
  if (po_coeq == static_cast<Idx>(-1))
    fail_at(line, "canonical coequalizer pushout not found", "exactness");
  cfg.po_coeq = po_coeq;
  const Idx f1 = s.tri_l[s.upo_tri1[po_coeq]];
  const Idx f2 = s.tri_l[s.upo_tri2[po_coeq]];
  cfg.f1 = f1;
  cfg.f2 = f2;
  const auto po_sum = upo_with_subject(s, s.e_dom[f1]);
  if (!po_sum) fail_at(line, "canonical coproduct pushout not found", "exactness");
  cfg.po_sum = *po_sum;
  cfg.bang0_x1 = s.tri_l[s.upo_tri1[*po_sum]];
  cfg.bang0_x0 = s.tri_l[s.upo_tri2[*po_sum]];
  Idx ui = static_cast<Idx>(-1);
  for (Idx w = 0; w < s.ui_count(); ++w)
    if (s.ui_n[w] == s.e_dom[cfg.bang0_x1]) ui = w;
  if (ui == static_cast<Idx>(-1)) fail_at(line, "initial universal not found", "exactness");
  cfg.ui = ui;
  // the product, the relation inclusion and its monicity
  bool found = false;
  for (Idx w = 0; w < s.upb_count() && !found; ++w) {
    const Idx l1 = s.tri_r[s.upb_tri1[w]];
    const Idx l2 = s.tri_r[s.upb_tri2[w]];
    if (l1 != l2 || s.e_dom[l1] != X0) continue;
    const Idx prod = s.e_dom[s.tri_l[s.upb_tri1[w]]];
    for (Idx cand = 0; cand < s.edge_count(); ++cand) {
      if (s.e_dom[cand] != X1 || s.e_cod[cand] != prod) continue;
      if (!s.has_triangle(cand, s.tri_l[s.upb_tri1[w]], pi1)) continue;
      if (!s.has_triangle(cand, s.tri_l[s.upb_tri2[w]], pi2)) continue;
      const auto mono = upb_with_feet(s, X1, X1);
      if (!mono) continue;
      if (s.tri_r[s.upb_tri1[*mono]] != cand || s.tri_r[s.upb_tri2[*mono]] != cand)
        continue;
      const Idx rho1 = s.tri_l[s.upb_tri1[*mono]];
      const Idx rho2 = s.tri_l[s.upb_tri2[*mono]];
      const auto mc = s.find_triangle(s.n_id[s.e_dom[rho1]], rho1, rho2);
      if (!mc) continue;
      cfg.pb_prod = w;
      cfg.bang_x0 = l1;
      cfg.pi = cand;
      cfg.pb_mono = *mono;
      cfg.mono_comm = *mc;
      found = true;
      break;
    }
  }
  if (!found) fail_at(line, "relation inclusion into the product not found", "exactness");
  Idx ut = static_cast<Idx>(-1);
  for (Idx w = 0; w < s.ut_count(); ++w)
    if (s.ut_n[w] == s.e_cod[cfg.bang_x0]) ut = w;
  if (ut == static_cast<Idx>(-1)) fail_at(line, "terminal universal not found", "exactness");
  cfg.ut = ut;
  // reflexivity, symmetry, transitivity
  std::optional<Idx> refl;
  for (Idx cand = 0; cand < s.edge_count(); ++cand)
    if (s.e_dom[cand] == X0 && s.e_cod[cand] == X1 &&
        s.has_triangle(cand, pi1, s.n_id[X0]) && s.has_triangle(cand, pi2, s.n_id[X0]))
      refl = cand;
  if (!refl) fail_at(line, "reflexivity edge not found", "exactness");
  cfg.refl = *refl;
  std::optional<Idx> sym;
  for (Idx cand = 0; cand < s.edge_count(); ++cand)
    if (s.e_dom[cand] == X1 && s.e_cod[cand] == X1 && s.has_triangle(cand, pi1, pi2) &&
        s.has_triangle(cand, pi2, pi1))
      sym = cand;
  if (!sym) fail_at(line, "symmetry edge not found", "exactness");
  cfg.sym = *sym;
  std::optional<Idx> pbx2;
  for (Idx w = 0; w < s.upb_count(); ++w)
    if (s.tri_r[s.upb_tri1[w]] == pi2 && s.tri_r[s.upb_tri2[w]] == pi1) pbx2 = w;
  if (!pbx2) fail_at(line, "transitivity pullback not found", "exactness");
  cfg.pb_x2 = *pbx2;
  const Idx q1 = s.tri_l[s.upb_tri1[*pbx2]];
  const Idx q2 = s.tri_l[s.upb_tri2[*pbx2]];
  const Idx X2 = s.e_dom[q1];
  bool tfound = false;
  for (Idx cand = 0; cand < s.edge_count() && !tfound; ++cand) {
    if (s.e_dom[cand] != X2 || s.e_cod[cand] != X1) continue;
    const auto ct1 = edge_with_comm(s, q1, pi1, X2, X0);
    const auto ct2 = edge_with_comm(s, q2, pi2, X2, X0);
    if (!ct1 || !ct2) continue;
    if (!s.has_triangle(cand, pi1, *ct1) || !s.has_triangle(cand, pi2, *ct2)) continue;
    cfg.trans = cand;
    cfg.ct1 = *ct1;
    cfg.ct2 = *ct2;
    tfound = true;
  }
  if (!tfound) fail_at(line, "transitivity edge not found", "exactness");
  return cfg;
}

ListFillinConfig search_list_config(const Sketch& s, Idx lnode, Idx y, Idx g, int line) {
  ListFillinConfig cfg;
  Idx ul = static_cast<Idx>(-1);
  for (Idx w = 0; w < s.ul_count(); ++w)
    if (s.e_cod[s.ul_e[w]] == lnode) ul = w;
  if (ul == static_cast<Idx>(-1))
    fail_at(line, "node is not a list subject", "list fillin");
  cfg.ul = ul;
  cfg.y = y;
  cfg.g = g;
  const Idx pbP = s.ul_pb[ul];
  const Idx eps = s.ul_e[ul];
  const Idx cons = s.ul_cons[ul];
  const Idx p1 = s.tri_l[s.upb_tri1[pbP]];
  const Idx p2 = s.tri_l[s.upb_tri2[pbP]];
  const Idx L = s.e_cod[p1];
  const Idx A = s.e_cod[p2];
  const Idx P = s.e_dom[p1];
  const Idx T = s.ut_n[s.ul_t[ul]];
  const Idx B = s.e_dom[y];
  const Idx Y = s.e_cod[y];
  const auto lb = upb_with_feet(s, L, B);
  const auto pbb = upb_with_feet(s, P, B);
  const auto ay = upb_with_feet(s, A, Y);
  if (!lb || !pbb || !ay)
    fail_at(line, "missing product universals of the recursor configuration",
            "list fillin");
  const Idx LB = s.e_dom[s.tri_l[s.upb_tri1[*lb]]];
  const auto alb = upb_with_feet(s, A, LB);
  if (!alb)
    fail_at(line, "missing associativity product of the recursor configuration",
            "list fillin");
  cfg.pb_LB = *lb;
  cfg.pb_PB = *pbb;
  cfg.pb_AY = *ay;
  cfg.pb_ALB = *alb;
  const Idx q1_LB = s.tri_l[s.upb_tri1[*lb]];
  const Idx q2_LB = s.tri_l[s.upb_tri2[*lb]];
  const Idx q1_PB = s.tri_l[s.upb_tri1[*pbb]];
  const Idx q2_PB = s.tri_l[s.upb_tri2[*pbb]];
  const Idx q1_ALB = s.tri_l[s.upb_tri1[*alb]];
  const Idx q2_ALB = s.tri_l[s.upb_tri2[*alb]];
  // locate the named composites and fillins by their commutativities
  bool found = false;
  for (Idx bb = 0; bb < s.edge_count() && !found; ++bb) {
    if (s.e_dom[bb] != B || s.e_cod[bb] != T) continue;
    const auto ce = edge_with_comm(s, bb, eps, B, L);
    if (!ce) continue;
    for (Idx eb = 0; eb < s.edge_count(); ++eb) {
      if (s.e_dom[eb] != B || s.e_cod[eb] != LB) continue;
      if (!s.has_triangle(eb, q1_LB, *ce)) continue;
      if (!s.has_triangle(eb, q2_LB, s.n_id[B])) continue;
      cfg.bangBT = bb;
      cfg.c_eps = *ce;
      cfg.eb = eb;
      found = true;
      break;
    }
  }
  if (!found) fail_at(line, "empty-list pairing not found", "list fillin");
  const auto cPL = edge_with_comm(s, q1_PB, cons, s.e_dom[q1_PB], L);
  if (!cPL) fail_at(line, "cons composite not found", "list fillin");
  cfg.cPL = *cPL;
  std::optional<Idx> consB;
  for (Idx cand = 0; cand < s.edge_count(); ++cand)
    if (s.e_dom[cand] == s.e_dom[q1_PB] && s.e_cod[cand] == LB &&
        s.has_triangle(cand, q1_LB, *cPL) && s.has_triangle(cand, q2_LB, q2_PB))
      consB = cand;
  if (!consB) fail_at(line, "cons pairing not found", "list fillin");
  cfg.consB = *consB;
  const auto cA = edge_with_comm(s, q1_PB, p2, s.e_dom[q1_PB], A);
  const auto cL = edge_with_comm(s, q1_PB, p1, s.e_dom[q1_PB], L);
  if (!cA || !cL) fail_at(line, "projection composites not found", "list fillin");
  cfg.cA = *cA;
  cfg.cL = *cL;
  std::optional<Idx> cLB;
  for (Idx cand = 0; cand < s.edge_count(); ++cand)
    if (s.e_dom[cand] == s.e_dom[q1_PB] && s.e_cod[cand] == LB &&
        s.has_triangle(cand, q1_LB, *cL) && s.has_triangle(cand, q2_LB, q2_PB))
      cLB = cand;
  if (!cLB) fail_at(line, "associativity pairing not found", "list fillin");
  cfg.cLB = *cLB;
  std::optional<Idx> assoc;
  for (Idx cand = 0; cand < s.edge_count(); ++cand)
    if (s.e_dom[cand] == s.e_dom[q1_PB] && s.e_cod[cand] == s.e_dom[q1_ALB] &&
        s.has_triangle(cand, q1_ALB, *cA) && s.has_triangle(cand, q2_ALB, *cLB))
      assoc = cand;
  if (!assoc) fail_at(line, "associativity isomorphism not found", "list fillin");
  cfg.assoc = *assoc;
  return cfg;
}

EqExtension elaborate_eqext(const SurfaceDecl& d, const ElabContext& over,
                            NameTable& names) {
  names = over.names;  // start from the context's names
  EqExtension ext;
  ext.base = over.ctx.apex;
  Sketch cur = over.ctx.apex;
  for (const auto& [line, text] : d.body) {
    Cursor c{tokenize(text, line), 0, line};
    Scope sc{&names, line, &cur};
    const std::string kw = c.next();
    EqStep step;
    std::vector<std::string> bind_nodes, bind_edges;
    ExtensionStep ustep;
    if (parse_universal_step(kw, c, sc, ustep, bind_nodes, bind_edges)) {
      step = EqUnivIntro{ustep};
    } else if (kw == "compose") {
      const std::string w = c.next();
      c.expect("=");
      const Idx u = sc.edge_ref(c);
      c.expect(".");
      const Idx v = sc.edge_ref(c);
      bind_edges = {w};
      step = EqComposition{u, v};
    } else if (kw == "lunit") {
      step = EqLeftUnit{sc.edge_ref(c)};
    } else if (kw == "runit") {
      step = EqRightUnit{sc.edge_ref(c)};
    } else if (kw == "lassoc" || kw == "rassoc") {
      const Idx u = sc.edge_ref(c);
      const Idx v = sc.edge_ref(c);
      const Idx w = sc.edge_ref(c);
      const Idx k = sc.edge_ref(c);
      const Idx l = sc.edge_ref(c);
      const Idx m = sc.edge_ref(c);
      if (kw == "lassoc")
        step = EqLeftAssoc{u, v, w, k, l, m};
      else
        step = EqRightAssoc{u, v, w, k, l, m};
    } else if (kw == "pbfill" || kw == "pofill") {
      const std::string w = c.next();
      c.expect("=");
      c.expect(kw == "pbfill" ? "fill" : "cofill");
      c.expect("(");
      const Idx subject = sc.node(c.next());
      c.expect(";");
      const Idx v1 = sc.edge_ref(c);
      c.expect(",");
      const Idx v2 = sc.edge_ref(c);
      c.expect("/");
      const Idx diag = sc.edge_ref(c);
      c.expect(")");
      bind_edges = {w};
      if (kw == "pbfill") {
        Idx upb = static_cast<Idx>(-1);
        for (Idx k = 0; k < cur.upb_count(); ++k)
          if (cur.e_dom[cur.tri_l[cur.upb_tri1[k]]] == subject) upb = k;
        if (upb == static_cast<Idx>(-1))
          fail_at(line, "node is not a pullback subject", "pullback fillin");
        const auto d1 = cur.find_triangle(v1, cur.tri_r[cur.upb_tri1[upb]], diag);
        const auto d2 = cur.find_triangle(v2, cur.tri_r[cur.upb_tri2[upb]], diag);
        if (!d1 || !d2)
          fail_at(line, "missing cone commutativities for the fillin", "pullback fillin");
        step = EqPullbackFillin{upb, *d1, *d2};
      } else {
        Idx upo = static_cast<Idx>(-1);
        for (Idx k = 0; k < cur.upo_count(); ++k)
          if (cur.e_cod[cur.tri_r[cur.upo_tri1[k]]] == subject) upo = k;
        if (upo == static_cast<Idx>(-1))
          fail_at(line, "node is not a pushout subject", "pushout fillin");
        const auto d1 = cur.find_triangle(cur.tri_l[cur.upo_tri1[upo]], v1, diag);
        const auto d2 = cur.find_triangle(cur.tri_l[cur.upo_tri2[upo]], v2, diag);
        if (!d1 || !d2)
          fail_at(line, "missing cocone commutativities for the fillin", "pushout fillin");
        step = EqPushoutFillin{upo, *d1, *d2};
      }
    } else if (kw == "pbunique" || kw == "pounique") {
      const Idx subject = sc.node(c.next());
      c.expect(":");
      const Idx v1 = sc.edge_ref(c);
      const Idx v2 = sc.edge_ref(c);
      const Idx w = sc.edge_ref(c);
      const Idx w2 = sc.edge_ref(c);
      if (kw == "pbunique") {
        Idx upb = static_cast<Idx>(-1);
        for (Idx k = 0; k < cur.upb_count(); ++k)
          if (cur.e_dom[cur.tri_l[cur.upb_tri1[k]]] == subject) upb = k;
        if (upb == static_cast<Idx>(-1))
          fail_at(line, "node is not a pullback subject", "pullback fillin uniqueness");
        step = EqPullbackFillinUnique{upb, v1, v2, w, w2};
      } else {
        Idx upo = static_cast<Idx>(-1);
        for (Idx k = 0; k < cur.upo_count(); ++k)
          if (cur.e_cod[cur.tri_r[cur.upo_tri1[k]]] == subject) upo = k;
        if (upo == static_cast<Idx>(-1))
          fail_at(line, "node is not a pushout subject", "pushout fillin uniqueness");
        step = EqPushoutFillinUnique{upo, v1, v2, w, w2};
      }
    } else if (kw == "termfill" || kw == "initfill") {
      const std::string w = c.next();
      c.expect("=");
      c.expect(kw == "termfill" ? "bang" : "cobang");
      c.expect("(");
      const Idx subject = sc.node(c.next());
      c.expect(";");
      const Idx other = sc.node(c.next());
      c.expect(")");
      bind_edges = {w};
      if (kw == "termfill") {
        Idx ut = static_cast<Idx>(-1);
        for (Idx k = 0; k < cur.ut_count(); ++k)
          if (cur.ut_n[k] == subject) ut = k;
        if (ut == static_cast<Idx>(-1))
          fail_at(line, "node is not a terminal subject", "terminal fillin");
        step = EqTerminalFillin{ut, other};
      } else {
        Idx ui = static_cast<Idx>(-1);
        for (Idx k = 0; k < cur.ui_count(); ++k)
          if (cur.ui_n[k] == subject) ui = k;
        if (ui == static_cast<Idx>(-1))
          fail_at(line, "node is not an initial subject", "initial fillin");
        step = EqInitialFillin{ui, other};
      }
    } else if (kw == "termunique" || kw == "initunique") {
      const Idx subject = sc.node(c.next());
      c.expect(":");
      const Idx w = sc.edge_ref(c);
      const Idx w2 = sc.edge_ref(c);
      if (kw == "termunique") {
        Idx ut = static_cast<Idx>(-1);
        for (Idx k = 0; k < cur.ut_count(); ++k)
          if (cur.ut_n[k] == subject) ut = k;
        if (ut == static_cast<Idx>(-1))
          fail_at(line, "node is not a terminal subject", "terminal fillin uniqueness");
        step = EqTerminalFillinUnique{ut, w, w2};
      } else {
        Idx ui = static_cast<Idx>(-1);
        for (Idx k = 0; k < cur.ui_count(); ++k)
          if (cur.ui_n[k] == subject) ui = k;
        if (ui == static_cast<Idx>(-1))
          fail_at(line, "node is not an initial subject", "initial fillin uniqueness");
        step = EqInitialFillinUnique{ui, w, w2};
      }
    } else if (kw == "balance") {
      const std::string w = c.next();
      c.expect("=");
      c.expect("invert");
      c.expect("(");
      const Idx u = sc.edge_ref(c);
      c.expect(")");
      bind_edges = {w};
      const Idx ker = find_kernel_pair(cur, u, line);
      const Idx coker = find_cokernel_pair(cur, u, line);
      const Idx p1 = cur.tri_l[cur.upb_tri1[ker]];
      const Idx p2 = cur.tri_l[cur.upb_tri2[ker]];
      const Idx j1 = cur.tri_r[cur.upo_tri1[coker]];
      const Idx j2 = cur.tri_r[cur.upo_tri2[coker]];
      const Idx mono = find_unary(cur, p1, p2, line, "p1 <| p2");
      const Idx epi = find_unary(cur, j1, j2, line, "j1 <| j2");
      step = EqBalance{u, ker, coker, mono, epi};
    } else if (kw == "initstab") {
      const std::string w = c.next();
      c.expect("=");
      c.expect("invert0");
      c.expect("(");
      const Idx u = sc.edge_ref(c);
      c.expect(")");
      bind_edges = {w};
      Idx ui = static_cast<Idx>(-1);
      for (Idx k = 0; k < cur.ui_count(); ++k)
        if (cur.ui_n[k] == cur.e_cod[u]) ui = k;
      if (ui == static_cast<Idx>(-1))
        fail_at(line, "the edge does not end at an initial subject", "initial stability");
      step = EqInitStability{ui, u};
    } else if (kw == "postab") {
      const std::string w = c.next();
      c.expect("=");
      c.expect("stab");
      c.expect("(");
      const Idx e = sc.edge_ref(c);
      c.expect(")");
      bind_edges = {w};
      step = EqPushoutStability{search_postab_config(cur, e, line)};
    } else if (kw == "exact") {
      const std::string w = c.next();
      c.expect("=");
      c.expect("exact");
      c.expect("(");
      const Idx pi1 = sc.edge_ref(c);
      c.expect(",");
      const Idx pi2 = sc.edge_ref(c);
      c.expect(",");
      const Idx e = sc.edge_ref(c);
      c.expect(")");
      bind_edges = {w};
      step = EqExactness{search_exactness_config(cur, pi1, pi2, e, line)};
    } else if (kw == "listfill") {
      std::vector<std::string> binds;
      for (int k = 0; k < 5; ++k) binds.push_back(c.next());
      c.expect("=");
      c.expect("rec");
      c.expect("(");
      const Idx lnode = sc.node(c.next());
      c.expect(";");
      const Idx y = sc.edge_ref(c);
      c.expect(",");
      const Idx g = sc.edge_ref(c);
      c.expect(")");
      bind_edges = binds;
      step = EqListFillin{search_list_config(cur, lnode, y, g, line)};
    } else {
      fail_at(line, "unknown derivation rule '" + kw + "'");
    }
    c.finish();
    try {
      auto [next, delta] = apply_eq_step(cur, step);
      cur = std::move(next);
      bind_delta(sc, delta, bind_nodes, bind_edges);
    } catch (const KernelError& err) {
      fail_at(line, err.what(), eq_step_name(step));
    }
    ext.steps.push_back(std::move(step));
  }
  autoname(names, cur);
  return ext;
}

// completes node/edge maps to a full homomorphism by deterministic search
SketchHom complete_hom(const Sketch& src, const Sketch& tgt, std::vector<Idx> n,
                       std::vector<Idx> e, int line) {
  SketchHom h;
  h.source = src;
  h.target = tgt;
  h.n = std::move(n);
  h.e = std::move(e);
  h.tri.assign(src.tri_count(), 0);
  for (Idx t = 0; t < src.tri_count(); ++t) {
    const auto found =
        tgt.find_triangle(h.e[src.tri_l[t]], h.e[src.tri_r[t]], h.e[src.tri_c[t]]);
    if (!found) fail_at(line, "commutativity has no image under the homomorphism");
    h.tri[t] = *found;
  }
  auto fill = [&](auto count_src, auto pred, std::vector<Idx>& out_map, Idx count_tgt,
                  const char* what) {
    out_map.assign(count_src, 0);
    for (Idx w = 0; w < count_src; ++w) {
      bool ok = false;
      for (Idx k = 0; k < count_tgt; ++k)
        if (pred(w, k)) {
          out_map[w] = k;
          ok = true;
          break;
        }
      if (!ok) fail_at(line, std::string(what) + " has no image under the homomorphism");
    }
  };
  fill(src.ut_count(),
       [&](Idx w, Idx k) { return tgt.ut_n[k] == h.n[src.ut_n[w]]; }, h.ut,
       tgt.ut_count(), "terminal universal");
  fill(src.upb_count(),
       [&](Idx w, Idx k) {
         return tgt.upb_tri1[k] == h.tri[src.upb_tri1[w]] &&
                tgt.upb_tri2[k] == h.tri[src.upb_tri2[w]];
       },
       h.upb, tgt.upb_count(), "pullback universal");
  fill(src.ui_count(),
       [&](Idx w, Idx k) { return tgt.ui_n[k] == h.n[src.ui_n[w]]; }, h.ui,
       tgt.ui_count(), "initial universal");
  fill(src.upo_count(),
       [&](Idx w, Idx k) {
         return tgt.upo_tri1[k] == h.tri[src.upo_tri1[w]] &&
                tgt.upo_tri2[k] == h.tri[src.upo_tri2[w]];
       },
       h.upo, tgt.upo_count(), "pushout universal");
  fill(src.ul_count(),
       [&](Idx w, Idx k) {
         return tgt.ul_pb[k] == h.upb[src.ul_pb[w]] && tgt.ul_t[k] == h.ut[src.ul_t[w]] &&
                tgt.ul_e[k] == h.e[src.ul_e[w]] && tgt.ul_cons[k] == h.e[src.ul_cons[w]];
       },
       h.ul, tgt.ul_count(), "list universal");
  const auto rep = validate_hom(h);
  if (!rep.ok()) fail_at(line, "not a homomorphism: " + rep.to_string());
  return h;
}

SetElem parse_elem(Cursor& c);

SetElem parse_elem(Cursor& c) {
  const std::string t = c.next();
  if (t == "(") {
    SetElem a = parse_elem(c);
    c.expect(",");
    SetElem b = parse_elem(c);
    c.expect(")");
    return SetElem::pair(std::move(a), std::move(b));
  }
  if (t == "[") {
    std::vector<SetElem> xs;
    if (c.peek() != "]") {
      xs.push_back(parse_elem(c));
      while (c.peek() == ",") {
        c.next();
        xs.push_back(parse_elem(c));
      }
    }
    c.expect("]");
    return SetElem::list(std::move(xs));
  }
  if (t == "*") return SetElem::unit();
  return SetElem::make_atom(t);
}

}  // namespace

Store elaborate(const SourceDocument& doc, const EvalOptions& opts) {
  Store store;
  auto dup = [&](const std::string& n) {
    return store.contexts.count(n) || store.eqexts.count(n) || store.homs.count(n) ||
           store.maps.count(n) || store.models.count(n);
  };
  auto get_ctx = [&](const std::string& n, int line) -> const ElabContext& {
    auto it = store.contexts.find(n);
    if (it == store.contexts.end()) fail_at(line, "unresolved context name '" + n + "'");
    return it->second;
  };
  for (const auto& d : doc.decls) {
    if (dup(d.name)) fail_at(d.line, "duplicate declaration name '" + d.name + "'");
    switch (d.kind) {
      case SurfaceDecl::Kind::Context: {
        ElabContext ec;
        ec.name = d.name;
        ec.ctx = elaborate_context(d, ec.names);
        autoname(ec.names, ec.ctx.apex);
        store.contexts[d.name] = std::move(ec);
        store.order.push_back("context:" + d.name);
        break;
      }
      case SurfaceDecl::Kind::EqExt: {
        ElabEqExt ee;
        ee.name = d.name;
        ee.over = d.arg1;
        ee.ext = elaborate_eqext(d, get_ctx(d.arg1, d.line), ee.names);
        store.eqexts[d.name] = std::move(ee);
        store.order.push_back("eqext:" + d.name);
        break;
      }
      case SurfaceDecl::Kind::Hom: {
        ElabHom eh;
        eh.name = d.name;
        eh.src = d.arg1;
        eh.tgt = d.arg2;
        const ElabContext& src = get_ctx(d.arg1, d.line);
        const Sketch* tgt_sketch = nullptr;
        const NameTable* tgt_names = nullptr;
        Sketch eq_apex;
        if (auto it = store.contexts.find(d.arg2); it != store.contexts.end()) {
          tgt_sketch = &it->second.ctx.apex;
          tgt_names = &it->second.names;
        } else if (auto it2 = store.eqexts.find(d.arg2); it2 != store.eqexts.end()) {
          eq_apex = apply_eq_extension(it2->second.ext).result;
          tgt_sketch = &eq_apex;
          tgt_names = &it2->second.names;
        } else {
          fail_at(d.line, "unresolved target '" + d.arg2 + "'");
        }
        std::vector<Idx> n(src.ctx.apex.node_count(), static_cast<Idx>(-1));
        std::vector<Idx> e(src.ctx.apex.edge_count(), static_cast<Idx>(-1));
        for (const auto& [line, text] : d.body) {
          Cursor c{tokenize(text, line), 0, line};
          const std::string from = c.next();
          c.expect("|->");
          const std::string to = c.next();
          c.finish();
          if (src.names.nodes.count(from)) {
            auto it = tgt_names->nodes.find(to);
            if (it == tgt_names->nodes.end())
              fail_at(line, "unresolved node name '" + to + "' in target");
            n[src.names.nodes.at(from)] = it->second;
          } else if (src.names.edges.count(from)) {
            auto it = tgt_names->edges.find(to);
            if (it == tgt_names->edges.end())
              fail_at(line, "unresolved edge name '" + to + "' in target");
            e[src.names.edges.at(from)] = it->second;
          } else {
            fail_at(line, "unresolved source name '" + from + "'");
          }
        }
        // identity edges may be omitted; everything else must be assigned
        for (Idx x = 0; x < src.ctx.apex.node_count(); ++x)
          if (n[x] == static_cast<Idx>(-1))
            fail_at(d.line, "node '" + src.names.node_names[x] + "' has no image");
        for (Idx u = 0; u < src.ctx.apex.edge_count(); ++u)
          if (e[u] == static_cast<Idx>(-1)) {
            bool is_id = false;
            for (Idx x = 0; x < src.ctx.apex.node_count(); ++x)
              if (src.ctx.apex.n_id[x] == u) {
                e[u] = tgt_sketch->n_id[n[x]];
                is_id = true;
                break;
              }
            if (!is_id)
              fail_at(d.line, "edge '" + src.names.edge_names[u] + "' has no image");
          }
        eh.hom = complete_hom(src.ctx.apex, *tgt_sketch, std::move(n), std::move(e),
                              d.line);
        store.homs[d.name] = std::move(eh);
        store.order.push_back("hom:" + d.name);
        break;
      }
      case SurfaceDecl::Kind::Map: {
        auto ite = store.eqexts.find(d.arg1);
        if (ite == store.eqexts.end())
          fail_at(d.line, "unresolved eqext name '" + d.arg1 + "'");
        auto ith = store.homs.find(d.arg2);
        if (ith == store.homs.end())
          fail_at(d.line, "unresolved hom name '" + d.arg2 + "'");
        if (ith->second.tgt != d.arg1)
          fail_at(d.line, "the hom must land in the eqext '" + d.arg1 + "'");
        ElabMap em;
        em.name = d.name;
        em.eqext = d.arg1;
        em.hom = d.arg2;
        em.map.source = get_ctx(ite->second.over, d.line).ctx;
        em.map.target = get_ctx(ith->second.src, d.line).ctx;
        em.map.e = ite->second.ext;
        em.map.f = ith->second.hom;
        try {
          validate_map(em.map);
        } catch (const KernelError& err) {
          fail_at(d.line, err.what(), "context map");
        }
        store.maps[d.name] = std::move(em);
        store.order.push_back("map:" + d.name);
        break;
      }
      case SurfaceDecl::Kind::Model: {
        ElabModel em;
        em.name = d.name;
        em.of = d.arg1;
        const ElabContext& ctx = get_ctx(d.arg1, d.line);
        for (const auto& [line, text] : d.body) {
          Cursor c{tokenize(text, line), 0, line};
          const std::string target = c.next();
          c.expect(":=");
          if (ctx.names.nodes.count(target)) {
            c.expect("{");
            std::vector<SetElem> elems;
            if (c.peek() != "}") {
              elems.push_back(parse_elem(c));
              while (c.peek() == ",") {
                c.next();
                elems.push_back(parse_elem(c));
              }
            }
            c.expect("}");
            c.finish();
            em.prim.nodes[ctx.names.nodes.at(target)] = fin_set(std::move(elems));
          } else if (ctx.names.edges.count(target)) {
            c.expect("{");
            std::map<SetElem, SetElem> table;
            if (c.peek() != "}") {
              while (true) {
                SetElem from = parse_elem(c);
                c.expect("|->");
                SetElem to = parse_elem(c);
                table[std::move(from)] = std::move(to);
                if (c.peek() != ",") break;
                c.next();
              }
            }
            c.expect("}");
            c.finish();
            // carriers are resolved after all assignments are read
            const Idx u = ctx.names.edges.at(target);
            em.prim.edges[u] = tabulate(nullptr, nullptr, std::move(table));
          } else {
            fail_at(line, "unresolved name '" + target + "' in model");
          }
        }
        // wire up the edge carriers where the endpoints are primitive; the
        // interpreter resolves endpoints that are canonical constructions
        for (auto& [u, mor] : em.prim.edges) {
          const Idx dom = ctx.ctx.apex.e_dom[u];
          const Idx cod = ctx.ctx.apex.e_cod[u];
          if (auto itd = em.prim.nodes.find(dom); itd != em.prim.nodes.end())
            mor.dom = itd->second;
          if (auto itc = em.prim.nodes.find(cod); itc != em.prim.nodes.end())
            mor.cod = itc->second;
        }
        try {
          em.model = interpret_context(ctx.ctx, em.prim, opts);
        } catch (const KernelError& err) {
          fail_at(d.line, err.what(), "model");
        }
        store.models[d.name] = std::move(em);
        store.order.push_back("model:" + d.name);
        break;
      }
    }
  }
  return store;
}

}  // namespace auk
