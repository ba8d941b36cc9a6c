#include "auk/sketch.hpp"

#include <algorithm>
#include <sstream>

namespace auk {

const char* sort_name(Sort s) {
  switch (s) {
    case Sort::Node: return "node";
    case Sort::Edge: return "edge";
    case Sort::Tri: return "comm";
    case Sort::UTerm: return "terminal";
    case Sort::UPb: return "pullback";
    case Sort::UInit: return "initial";
    case Sort::UPo: return "pushout";
    case Sort::UList: return "list";
  }
  return "?";
}

Idx Sketch::count(Sort s) const {
  switch (s) {
    case Sort::Node: return node_count();
    case Sort::Edge: return edge_count();
    case Sort::Tri: return tri_count();
    case Sort::UTerm: return ut_count();
    case Sort::UPb: return upb_count();
    case Sort::UInit: return ui_count();
    case Sort::UPo: return upo_count();
    case Sort::UList: return ul_count();
  }
  return 0;
}

bool Sketch::has_triangle(Idx l, Idx r, Idx c) const {
  return find_triangle(l, r, c).has_value();
}

std::optional<Idx> Sketch::find_triangle(Idx l, Idx r, Idx c) const {
  for (Idx t = 0; t < tri_count(); ++t)
    if (tri_l[t] == l && tri_r[t] == r && tri_c[t] == c) return t;
  return std::nullopt;
}

bool Sketch::has_unary_comm(Idx u, Idx u_prime) const {
  if (u >= edge_count() || u_prime >= edge_count()) return false;
  return has_triangle(n_id[e_dom[u]], u, u_prime);
}

Sketch empty_sketch() { return Sketch{}; }

Sketch object_sketch() {
  Sketch s;
  s.n_id = {0};
  s.e_dom = {0};
  s.e_cod = {0};
  return s;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (const auto& v : violations) {
    os << v.equation << " fails at " << sort_name(v.sort) << " #" << v.element;
    if (!v.detail.empty()) os << " (" << v.detail << ")";
    os << "\n";
  }
  return os.str();
}

namespace {

class Reporter {
 public:
  explicit Reporter(ValidationReport& r) : report_(r) {}

  // Records only the first offending element per equation.
  void fail(const std::string& eq, Sort sort, Idx elem, std::string detail = {}) {
    for (const auto& v : report_.violations)
      if (v.equation == eq) return;
    report_.violations.push_back({eq, sort, elem, std::move(detail)});
  }

 private:
  ValidationReport& report_;
};

bool in_range(const std::vector<Idx>& map, Idx bound, Sort sort, Sort target,
              Reporter& rep, const char* name) {
  bool ok = true;
  for (Idx i = 0; i < map.size(); ++i) {
    if (map[i] >= bound) {
      std::ostringstream os;
      os << name << " image " << map[i] << " out of range (" << sort_name(target)
         << " carrier has " << bound << ")";
      rep.fail(std::string(name) + " range", sort, i, os.str());
      ok = false;
    }
  }
  return ok;
}

}  // namespace

ValidationReport validate_sketch(const Sketch& s) {
  ValidationReport report;
  Reporter rep(report);

  const Idx nn = s.node_count(), ne = s.edge_count(), nt = s.tri_count();

  bool range_ok = true;
  range_ok &= in_range(s.e_dom, nn, Sort::Edge, Sort::Node, rep, "skedom");
  range_ok &= in_range(s.e_cod, nn, Sort::Edge, Sort::Node, rep, "skecod");
  range_ok &= in_range(s.n_id, ne, Sort::Node, Sort::Edge, rep, "sknid");
  range_ok &= in_range(s.tri_l, ne, Sort::Tri, Sort::Edge, rep, "sktril");
  range_ok &= in_range(s.tri_r, ne, Sort::Tri, Sort::Edge, rep, "sktrir");
  range_ok &= in_range(s.tri_c, ne, Sort::Tri, Sort::Edge, rep, "sktric");
  range_ok &= in_range(s.ut_n, nn, Sort::UTerm, Sort::Node, rep, "skutn");
  range_ok &= in_range(s.upb_tri1, nt, Sort::UPb, Sort::Tri, rep, "skupbtri1");
  range_ok &= in_range(s.upb_tri2, nt, Sort::UPb, Sort::Tri, rep, "skupbtri2");
  range_ok &= in_range(s.ui_n, nn, Sort::UInit, Sort::Node, rep, "skuin");
  range_ok &= in_range(s.upo_tri1, nt, Sort::UPo, Sort::Tri, rep, "skupotri1");
  range_ok &= in_range(s.upo_tri2, nt, Sort::UPo, Sort::Tri, rep, "skupotri2");
  range_ok &= in_range(s.ul_pb, s.upb_count(), Sort::UList, Sort::UPb, rep, "skulpb");
  range_ok &= in_range(s.ul_t, s.ut_count(), Sort::UList, Sort::UTerm, rep, "skult");
  range_ok &= in_range(s.ul_e, ne, Sort::UList, Sort::Edge, rep, "skule");
  range_ok &= in_range(s.ul_cons, ne, Sort::UList, Sort::Edge, rep, "skulcons");
  if (s.e_dom.size() != s.e_cod.size() || s.tri_l.size() != s.tri_r.size() ||
      s.tri_l.size() != s.tri_c.size() || s.upb_tri1.size() != s.upb_tri2.size() ||
      s.upo_tri1.size() != s.upo_tri2.size() || s.ul_pb.size() != s.ul_t.size() ||
      s.ul_pb.size() != s.ul_e.size() || s.ul_pb.size() != s.ul_cons.size()) {
    rep.fail("carrier sizes", Sort::Node, 0, "parallel operator tables differ in length");
    return report;
  }
  if (!range_ok) return report;  // equations below would index out of range

  // sknid skedom = sknid skecod = Id
  for (Idx x = 0; x < nn; ++x) {
    const Idx i = s.n_id[x];
    if (s.e_dom[i] != x || s.e_cod[i] != x) {
      rep.fail("sknid skedom = sknid skecod = Id", Sort::Node, x);
      break;
    }
  }

  // triangle shape: l;r composable, c parallel to the composite
  for (Idx t = 0; t < nt; ++t) {
    if (s.e_cod[s.tri_l[t]] != s.e_dom[s.tri_r[t]])
      rep.fail("sktril skecod = sktrir skedom", Sort::Tri, t);
    if (s.e_dom[s.tri_l[t]] != s.e_dom[s.tri_c[t]])
      rep.fail("sktril skedom = sktric skedom", Sort::Tri, t);
    if (s.e_cod[s.tri_r[t]] != s.e_cod[s.tri_c[t]])
      rep.fail("sktrir skecod = sktric skecod", Sort::Tri, t);
  }

  // the two halves of a pullback/pushout square share the diagonal
  for (Idx u = 0; u < s.upb_count(); ++u)
    if (s.tri_c[s.upb_tri1[u]] != s.tri_c[s.upb_tri2[u]])
      rep.fail("skupbtri1 sktric = skupbtri2 sktric", Sort::UPb, u);
  for (Idx u = 0; u < s.upo_count(); ++u)
    if (s.tri_c[s.upo_tri1[u]] != s.tri_c[s.upo_tri2[u]])
      rep.fail("skupotri1 sktric = skupotri2 sktric", Sort::UPo, u);

  // list universal: subjects wired to its terminal and pullback
  for (Idx u = 0; u < s.ul_count(); ++u) {
    const Idx pb = s.ul_pb[u];
    const Idx t1 = s.upb_tri1[pb];
    const Idx term_node = s.ut_n[s.ul_t[u]];
    if (s.e_cod[s.tri_c[t1]] != term_node)
      rep.fail("skulpb skupbtri1 sktric skecod = skult skutn", Sort::UList, u);
    if (s.e_dom[s.ul_e[u]] != term_node)
      rep.fail("skule skedom = skult skutn", Sort::UList, u);
    if (s.e_dom[s.ul_cons[u]] != s.e_dom[s.tri_l[t1]])
      rep.fail("skulcons skedom = skulpb skupbtri1 sktril skedom", Sort::UList, u);
    const Idx list_node = s.e_cod[s.tri_l[t1]];
    if (s.e_cod[s.ul_e[u]] != list_node || s.e_cod[s.ul_cons[u]] != list_node)
      rep.fail("skule skecod = skulcons skecod = skulpb skupbtri1 sktril skecod",
               Sort::UList, u);
  }

  return report;
}

SketchHom identity_hom(const Sketch& s) {
  SketchHom h;
  h.source = s;
  h.target = s;
  auto iota = [](Idx k) {
    std::vector<Idx> v(k);
    for (Idx i = 0; i < k; ++i) v[i] = i;
    return v;
  };
  h.n = iota(s.node_count());
  h.e = iota(s.edge_count());
  h.tri = iota(s.tri_count());
  h.ut = iota(s.ut_count());
  h.upb = iota(s.upb_count());
  h.ui = iota(s.ui_count());
  h.upo = iota(s.upo_count());
  h.ul = iota(s.ul_count());
  return h;
}

ValidationReport validate_hom(const SketchHom& h) {
  ValidationReport report;
  Reporter rep(report);
  const Sketch& a = h.source;
  const Sketch& b = h.target;

  auto sizes_ok =
      h.n.size() == a.node_count() && h.e.size() == a.edge_count() &&
      h.tri.size() == a.tri_count() && h.ut.size() == a.ut_count() &&
      h.upb.size() == a.upb_count() && h.ui.size() == a.ui_count() &&
      h.upo.size() == a.upo_count() && h.ul.size() == a.ul_count();
  if (!sizes_ok) {
    rep.fail("carrier function sizes", Sort::Node, 0, "maps do not cover the source");
    return report;
  }

  bool range_ok = true;
  range_ok &= in_range(h.n, b.node_count(), Sort::Node, Sort::Node, rep, "hom n");
  range_ok &= in_range(h.e, b.edge_count(), Sort::Edge, Sort::Edge, rep, "hom e");
  range_ok &= in_range(h.tri, b.tri_count(), Sort::Tri, Sort::Tri, rep, "hom tri");
  range_ok &= in_range(h.ut, b.ut_count(), Sort::UTerm, Sort::UTerm, rep, "hom ut");
  range_ok &= in_range(h.upb, b.upb_count(), Sort::UPb, Sort::UPb, rep, "hom upb");
  range_ok &= in_range(h.ui, b.ui_count(), Sort::UInit, Sort::UInit, rep, "hom ui");
  range_ok &= in_range(h.upo, b.upo_count(), Sort::UPo, Sort::UPo, rep, "hom upo");
  range_ok &= in_range(h.ul, b.ul_count(), Sort::UList, Sort::UList, rep, "hom ul");
  if (!range_ok) return report;

  for (Idx i = 0; i < a.edge_count(); ++i) {
    if (b.e_dom[h.e[i]] != h.n[a.e_dom[i]])
      rep.fail("hom skedom", Sort::Edge, i);
    if (b.e_cod[h.e[i]] != h.n[a.e_cod[i]])
      rep.fail("hom skecod", Sort::Edge, i);
  }
  for (Idx x = 0; x < a.node_count(); ++x)
    if (b.n_id[h.n[x]] != h.e[a.n_id[x]]) rep.fail("hom sknid", Sort::Node, x);
  for (Idx t = 0; t < a.tri_count(); ++t) {
    if (b.tri_l[h.tri[t]] != h.e[a.tri_l[t]]) rep.fail("hom sktril", Sort::Tri, t);
    if (b.tri_r[h.tri[t]] != h.e[a.tri_r[t]]) rep.fail("hom sktrir", Sort::Tri, t);
    if (b.tri_c[h.tri[t]] != h.e[a.tri_c[t]]) rep.fail("hom sktric", Sort::Tri, t);
  }
  for (Idx u = 0; u < a.ut_count(); ++u)
    if (b.ut_n[h.ut[u]] != h.n[a.ut_n[u]]) rep.fail("hom skutn", Sort::UTerm, u);
  for (Idx u = 0; u < a.upb_count(); ++u) {
    if (b.upb_tri1[h.upb[u]] != h.tri[a.upb_tri1[u]])
      rep.fail("hom skupbtri1", Sort::UPb, u);
    if (b.upb_tri2[h.upb[u]] != h.tri[a.upb_tri2[u]])
      rep.fail("hom skupbtri2", Sort::UPb, u);
  }
  for (Idx u = 0; u < a.ui_count(); ++u)
    if (b.ui_n[h.ui[u]] != h.n[a.ui_n[u]]) rep.fail("hom skuin", Sort::UInit, u);
  for (Idx u = 0; u < a.upo_count(); ++u) {
    if (b.upo_tri1[h.upo[u]] != h.tri[a.upo_tri1[u]])
      rep.fail("hom skupotri1", Sort::UPo, u);
    if (b.upo_tri2[h.upo[u]] != h.tri[a.upo_tri2[u]])
      rep.fail("hom skupotri2", Sort::UPo, u);
  }
  for (Idx u = 0; u < a.ul_count(); ++u) {
    if (b.ul_pb[h.ul[u]] != h.upb[a.ul_pb[u]]) rep.fail("hom skulpb", Sort::UList, u);
    if (b.ul_t[h.ul[u]] != h.ut[a.ul_t[u]]) rep.fail("hom skult", Sort::UList, u);
    if (b.ul_e[h.ul[u]] != h.e[a.ul_e[u]]) rep.fail("hom skule", Sort::UList, u);
    if (b.ul_cons[h.ul[u]] != h.e[a.ul_cons[u]]) rep.fail("hom skulcons", Sort::UList, u);
  }
  return report;
}

bool hom_equal(const SketchHom& f, const SketchHom& g) {
  if (!(f.source == g.source) || !(f.target == g.target))
    throw KernelError("hom_equal: homomorphisms are not parallel");
  return f.n == g.n && f.e == g.e;
}

SketchHom compose_hom(const SketchHom& f, const SketchHom& g) {
  if (!(f.target == g.source))
    throw KernelError("compose_hom: target of first differs from source of second");
  SketchHom h;
  h.source = f.source;
  h.target = g.target;
  auto comp = [](const std::vector<Idx>& a, const std::vector<Idx>& b) {
    std::vector<Idx> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
    return out;
  };
  h.n = comp(f.n, g.n);
  h.e = comp(f.e, g.e);
  h.tri = comp(f.tri, g.tri);
  h.ut = comp(f.ut, g.ut);
  h.upb = comp(f.upb, g.upb);
  h.ui = comp(f.ui, g.ui);
  h.upo = comp(f.upo, g.upo);
  h.ul = comp(f.ul, g.ul);
  return h;
}

namespace {

// Completion of a node/edge assignment to the remaining sorts.  Choices on
// those sorts do not affect hom equality, but at least one consistent
// completion must exist for the assignment to be a homomorphism.
struct Completion {
  const Sketch& a;
  const Sketch& b;
  const std::vector<Idx>& n;
  const std::vector<Idx>& e;
  std::vector<Idx> tri, ut, upb, ui, upo, ul;

  bool run() {
    tri.assign(a.tri_count(), 0);
    return assign_tri(0);
  }

  bool assign_tri(Idx t) {
    if (t == a.tri_count()) {
      ut.assign(a.ut_count(), 0);
      return assign_ut(0);
    }
    for (Idx img = 0; img < b.tri_count(); ++img) {
      if (b.tri_l[img] != e[a.tri_l[t]] || b.tri_r[img] != e[a.tri_r[t]] ||
          b.tri_c[img] != e[a.tri_c[t]])
        continue;
      tri[t] = img;
      if (assign_tri(t + 1)) return true;
    }
    return false;
  }

  bool assign_ut(Idx u) {
    if (u == a.ut_count()) {
      upb.assign(a.upb_count(), 0);
      return assign_upb(0);
    }
    for (Idx img = 0; img < b.ut_count(); ++img) {
      if (b.ut_n[img] != n[a.ut_n[u]]) continue;
      ut[u] = img;
      if (assign_ut(u + 1)) return true;
    }
    return false;
  }

  bool assign_upb(Idx u) {
    if (u == a.upb_count()) {
      ui.assign(a.ui_count(), 0);
      return assign_ui(0);
    }
    for (Idx img = 0; img < b.upb_count(); ++img) {
      if (b.upb_tri1[img] != tri[a.upb_tri1[u]] ||
          b.upb_tri2[img] != tri[a.upb_tri2[u]])
        continue;
      upb[u] = img;
      if (assign_upb(u + 1)) return true;
    }
    return false;
  }

  bool assign_ui(Idx u) {
    if (u == a.ui_count()) {
      upo.assign(a.upo_count(), 0);
      return assign_upo(0);
    }
    for (Idx img = 0; img < b.ui_count(); ++img) {
      if (b.ui_n[img] != n[a.ui_n[u]]) continue;
      ui[u] = img;
      if (assign_ui(u + 1)) return true;
    }
    return false;
  }

  bool assign_upo(Idx u) {
    if (u == a.upo_count()) {
      ul.assign(a.ul_count(), 0);
      return assign_ul(0);
    }
    for (Idx img = 0; img < b.upo_count(); ++img) {
      if (b.upo_tri1[img] != tri[a.upo_tri1[u]] ||
          b.upo_tri2[img] != tri[a.upo_tri2[u]])
        continue;
      upo[u] = img;
      if (assign_upo(u + 1)) return true;
    }
    return false;
  }

  bool assign_ul(Idx u) {
    if (u == a.ul_count()) return true;
    for (Idx img = 0; img < b.ul_count(); ++img) {
      if (b.ul_pb[img] != upb[a.ul_pb[u]] || b.ul_t[img] != ut[a.ul_t[u]] ||
          b.ul_e[img] != e[a.ul_e[u]] || b.ul_cons[img] != e[a.ul_cons[u]])
        continue;
      ul[u] = img;
      if (assign_ul(u + 1)) return true;
    }
    return false;
  }
};

struct Enumerator {
  const Sketch& a;
  const Sketch& b;
  const EnumerateOptions& opts;
  std::vector<Idx> n, e;
  std::vector<std::optional<Idx>> id_edge_of;  // edge -> node it is the identity of
  std::uint64_t explored = 0;
  std::vector<SketchHom> out;

  void run() {
    n.assign(a.node_count(), 0);
    e.assign(a.edge_count(), 0);
    id_edge_of.assign(a.edge_count(), std::nullopt);
    for (Idx x = 0; x < a.node_count(); ++x) id_edge_of[a.n_id[x]] = x;
    assign_node(0);
  }

  void bump() {
    if (++explored > opts.max_candidates)
      throw EnumerationLimit("enumerate_homs: candidate limit exceeded");
  }

  void assign_node(Idx x) {
    if (x == a.node_count()) {
      assign_edge(0);
      return;
    }
    for (Idx img = 0; img < b.node_count(); ++img) {
      bump();
      n[x] = img;
      assign_node(x + 1);
    }
  }

  void assign_edge(Idx i) {
    if (i == a.edge_count()) {
      finish();
      return;
    }
    // identity edges are forced by the node map
    if (id_edge_of[i]) {
      e[i] = b.n_id[n[*id_edge_of[i]]];
      assign_edge(i + 1);
      return;
    }
    for (Idx img = 0; img < b.edge_count(); ++img) {
      if (b.e_dom[img] != n[a.e_dom[i]] || b.e_cod[img] != n[a.e_cod[i]]) continue;
      bump();
      e[i] = img;
      assign_edge(i + 1);
    }
  }

  void finish() {
    Completion c{a, b, n, e, {}, {}, {}, {}, {}, {}};
    if (!c.run()) return;
    SketchHom h;
    h.source = a;
    h.target = b;
    h.n = n;
    h.e = e;
    h.tri = std::move(c.tri);
    h.ut = std::move(c.ut);
    h.upb = std::move(c.upb);
    h.ui = std::move(c.ui);
    h.upo = std::move(c.upo);
    h.ul = std::move(c.ul);
    out.push_back(std::move(h));
  }
};

}  // namespace

std::vector<SketchHom> enumerate_homs(const Sketch& s1, const Sketch& s2,
                                      const EnumerateOptions& opts) {
  Enumerator en{s1, s2, opts};
  en.run();
  return std::move(en.out);
}

}  // namespace auk
