#include <sstream>

#include "auk/frontend.hpp"

namespace auk {

namespace {

struct Namer {
  const NameTable& names;
  const Sketch* sketch = nullptr;
  const std::string& n(Idx x) const { return names.node_names.at(x); }
  std::string e(Idx u) const {
    // identity edges print as id(NODE) so documents reparse without binding
    // names for them
    if (sketch)
      for (Idx x = 0; x < sketch->node_count(); ++x)
        if (sketch->n_id[x] == u) return "id(" + n(x) + ")";
    return names.edge_names.at(u);
  }
};

void print_ext_step(std::ostream& os, const ExtensionStep& step, const Namer& nm,
                    const StepDelta& d) {
  if (std::holds_alternative<AddPrimitiveNode>(step)) {
    os << "  node " << nm.n(d.nodes[0]) << "\n";
  } else if (const auto* e = std::get_if<AddPrimitiveEdge>(&step)) {
    os << "  edge " << nm.e(d.edges[0]) << " : " << nm.n(e->dom) << " -> " << nm.n(e->cod)
       << "\n";
  } else if (const auto* c = std::get_if<AddCommutativity>(&step)) {
    os << "  comm " << nm.e(c->l) << " . " << nm.e(c->r) << " = " << nm.e(c->c) << "\n";
  } else if (std::holds_alternative<AddTerminal>(step)) {
    os << "  terminal " << nm.n(d.nodes[0]) << "\n";
  } else if (std::holds_alternative<AddInitial>(step)) {
    os << "  initial " << nm.n(d.nodes[0]) << "\n";
  } else if (const auto* pb = std::get_if<AddPullback>(&step)) {
    os << "  pullback " << nm.n(d.nodes[0]) << "[" << nm.e(d.edges[0]) << ","
       << nm.e(d.edges[1]) << "," << nm.e(d.edges[2]) << "] = pb(" << nm.e(pb->u1) << ","
       << nm.e(pb->u2) << ")\n";
  } else if (const auto* po = std::get_if<AddPushout>(&step)) {
    os << "  pushout " << nm.n(d.nodes[0]) << "[" << nm.e(d.edges[0]) << ","
       << nm.e(d.edges[1]) << "," << nm.e(d.edges[2]) << "] = po(" << nm.e(po->u1) << ","
       << nm.e(po->u2) << ")\n";
  } else if (const auto* lo = std::get_if<AddListObject>(&step)) {
    os << "  list " << nm.n(d.nodes[1]) << "[" << nm.n(d.nodes[0]) << ","
       << nm.n(d.nodes[2]);
    for (int k = 0; k < 7; ++k) os << "," << nm.e(d.edges[k]);
    os << "] = list(" << nm.n(lo->node) << ")\n";
  }
}

}  // namespace

std::string print_context(const ElabContext& c) {
  std::ostringstream os;
  os << "context " << c.name << "\n";
  Sketch cur = empty_sketch();
  const Namer nm{c.names, &c.ctx.apex};
  for (const auto& step : c.ctx.ext.steps) {
    auto [next, d] = apply_step(cur, step);
    print_ext_step(os, step, nm, d);
    cur = std::move(next);
  }
  os << "end\n";
  return os.str();
}

std::string print_eqext(const ElabEqExt& e, const Store& store) {
  std::ostringstream os;
  os << "eqext " << e.name << " over " << e.over << "\n";
  Sketch cur = store.contexts.at(e.over).ctx.apex;
  const Sketch apex = apply_eq_extension(e.ext).result;
  const Namer nm{e.names, &apex};
  // the subject node of a universal identifies it in the surface syntax
  auto pb_subject = [&](Idx w) { return nm.n(cur.e_dom[cur.tri_l[cur.upb_tri1[w]]]); };
  auto po_subject = [&](Idx w) { return nm.n(cur.e_cod[cur.tri_r[cur.upo_tri1[w]]]); };
  for (const auto& step : e.ext.steps) {
    auto [next, d] = apply_eq_step(cur, step);
    if (const auto* u = std::get_if<EqUnivIntro>(&step)) {
      print_ext_step(os, u->step, nm, d);
    } else if (const auto* c = std::get_if<EqComposition>(&step)) {
      os << "  compose " << nm.e(d.edges[0]) << " = " << nm.e(c->u) << " . " << nm.e(c->v)
         << "\n";
    } else if (const auto* c = std::get_if<EqLeftUnit>(&step)) {
      os << "  lunit " << nm.e(c->u) << "\n";
    } else if (const auto* c = std::get_if<EqRightUnit>(&step)) {
      os << "  runit " << nm.e(c->u) << "\n";
    } else if (const auto* c = std::get_if<EqLeftAssoc>(&step)) {
      os << "  lassoc " << nm.e(c->u) << " " << nm.e(c->v) << " " << nm.e(c->w) << " "
         << nm.e(c->k) << " " << nm.e(c->l) << " " << nm.e(c->m) << "\n";
    } else if (const auto* c = std::get_if<EqRightAssoc>(&step)) {
      os << "  rassoc " << nm.e(c->u) << " " << nm.e(c->v) << " " << nm.e(c->w) << " "
         << nm.e(c->k) << " " << nm.e(c->l) << " " << nm.e(c->m) << "\n";
    } else if (const auto* c = std::get_if<EqPullbackFillin>(&step)) {
      os << "  pbfill " << nm.e(d.edges[0]) << " = fill(" << pb_subject(c->upb) << "; "
         << nm.e(cur.tri_l[c->d1]) << ", " << nm.e(cur.tri_l[c->d2]) << " / "
         << nm.e(cur.tri_c[c->d1]) << ")\n";
    } else if (const auto* c = std::get_if<EqPullbackFillinUnique>(&step)) {
      os << "  pbunique " << pb_subject(c->upb) << " : " << nm.e(c->v1) << " "
         << nm.e(c->v2) << " " << nm.e(c->w) << " " << nm.e(c->w2) << "\n";
    } else if (const auto* c = std::get_if<EqPushoutFillin>(&step)) {
      os << "  pofill " << nm.e(d.edges[0]) << " = cofill(" << po_subject(c->upo) << "; "
         << nm.e(cur.tri_r[c->d1]) << ", " << nm.e(cur.tri_r[c->d2]) << " / "
         << nm.e(cur.tri_c[c->d1]) << ")\n";
    } else if (const auto* c = std::get_if<EqPushoutFillinUnique>(&step)) {
      os << "  pounique " << po_subject(c->upo) << " : " << nm.e(c->v1) << " "
         << nm.e(c->v2) << " " << nm.e(c->w) << " " << nm.e(c->w2) << "\n";
    } else if (const auto* c = std::get_if<EqTerminalFillin>(&step)) {
      os << "  termfill " << nm.e(d.edges[0]) << " = bang(" << nm.n(cur.ut_n[c->ut])
         << "; " << nm.n(c->node) << ")\n";
    } else if (const auto* c = std::get_if<EqTerminalFillinUnique>(&step)) {
      os << "  termunique " << nm.n(cur.ut_n[c->ut]) << " : " << nm.e(c->w) << " "
         << nm.e(c->w2) << "\n";
    } else if (const auto* c = std::get_if<EqInitialFillin>(&step)) {
      os << "  initfill " << nm.e(d.edges[0]) << " = cobang(" << nm.n(cur.ui_n[c->ui])
         << "; " << nm.n(c->node) << ")\n";
    } else if (const auto* c = std::get_if<EqInitialFillinUnique>(&step)) {
      os << "  initunique " << nm.n(cur.ui_n[c->ui]) << " : " << nm.e(c->w) << " "
         << nm.e(c->w2) << "\n";
    } else if (const auto* c = std::get_if<EqBalance>(&step)) {
      os << "  balance " << nm.e(d.edges[0]) << " = invert(" << nm.e(c->u) << ")\n";
    } else if (const auto* c = std::get_if<EqInitStability>(&step)) {
      os << "  initstab " << nm.e(d.edges[0]) << " = invert0(" << nm.e(c->u) << ")\n";
    } else if (const auto* c = std::get_if<EqPushoutStability>(&step)) {
      os << "  postab " << nm.e(d.edges[0]) << " = stab(" << nm.e(c->cfg.e) << ")\n";
    } else if (const auto* c = std::get_if<EqExactness>(&step)) {
      os << "  exact " << nm.e(d.edges[0]) << " = exact(" << nm.e(c->cfg.pi1) << ", "
         << nm.e(c->cfg.pi2) << ", " << nm.e(c->cfg.e) << ")\n";
    } else if (const auto* c = std::get_if<EqListFillin>(&step)) {
      const Idx L = cur.e_cod[cur.ul_e[c->cfg.ul]];
      os << "  listfill " << nm.e(d.edges[0]) << " " << nm.e(d.edges[1]) << " "
         << nm.e(d.edges[2]) << " " << nm.e(d.edges[3]) << " " << nm.e(d.edges[4])
         << " = rec(" << nm.n(L) << "; " << nm.e(c->cfg.y) << ", " << nm.e(c->cfg.g)
         << ")\n";
    } else if (std::holds_alternative<EqListFillinUnique>(step)) {
      throw KernelError("print_eqext: list fillin uniqueness has no surface syntax yet");
    }
    cur = std::move(next);
  }
  os << "end\n";
  return os.str();
}

std::string print_document(const Store& store) {
  std::ostringstream os;
  bool first = true;
  for (const auto& entry : store.order) {
    const size_t colon = entry.find(':');
    const std::string kind = entry.substr(0, colon);
    const std::string name = entry.substr(colon + 1);
    if (!first) os << "\n";
    first = false;
    if (kind == "context") {
      os << print_context(store.contexts.at(name));
    } else if (kind == "eqext") {
      os << print_eqext(store.eqexts.at(name), store);
    } else if (kind == "hom") {
      const auto& h = store.homs.at(name);
      os << "hom " << h.name << " : " << h.src << " -> " << h.tgt << "\n";
      const auto& src = store.contexts.at(h.src);
      const NameTable* tgt_names = nullptr;
      if (auto it = store.contexts.find(h.tgt); it != store.contexts.end())
        tgt_names = &it->second.names;
      else
        tgt_names = &store.eqexts.at(h.tgt).names;
      for (Idx x = 0; x < h.hom.source.node_count(); ++x)
        os << "  " << src.names.node_names[x] << " |-> " << tgt_names->node_names[h.hom.n[x]]
           << "\n";
      for (Idx u = 0; u < h.hom.source.edge_count(); ++u) {
        bool is_id = false;
        for (Idx x = 0; x < h.hom.source.node_count(); ++x)
          if (h.hom.source.n_id[x] == u) is_id = true;
        if (is_id) continue;  // forced by the node images
        os << "  " << src.names.edge_names[u] << " |-> "
           << tgt_names->edge_names[h.hom.e[u]] << "\n";
      }
      os << "end\n";
    } else if (kind == "map") {
      const auto& m = store.maps.at(name);
      os << "map " << m.name << " = (" << m.eqext << ", " << m.hom << ")\n";
    } else if (kind == "model") {
      const auto& m = store.models.at(name);
      os << "model " << m.name << " of " << m.of << "\n";
      const auto& ctx = store.contexts.at(m.of);
      for (const auto& [x, carrier] : m.prim.nodes) {
        os << "  " << ctx.names.node_names[x] << " := {";
        for (size_t k = 0; k < carrier->elems.size(); ++k) {
          if (k) os << ",";
          os << carrier->elems[k].to_string();
        }
        os << "}\n";
      }
      for (const auto& [u, mor] : m.prim.edges) {
        os << "  " << ctx.names.edge_names[u] << " := {";
        bool f2 = true;
        for (const auto& [from, to] : mor.table) {
          if (!f2) os << ", ";
          f2 = false;
          os << from.to_string() << " |-> " << to.to_string();
        }
        os << "}\n";
      }
      os << "end\n";
    }
  }
  return os.str();
}

std::string export_dot(const Sketch& s, const NameTable& names, const std::string& title) {
  std::ostringstream os;
  os << "digraph \"" << title << "\" {\n";
  os << "  rankdir=LR;\n";
  for (Idx x = 0; x < s.node_count(); ++x)
    os << "  n" << x << " [label=\"" << names.node_names.at(x) << "\"];\n";
  for (Idx u = 0; u < s.edge_count(); ++u) {
    // identity edges are implicit in the drawing unless named by the user
    bool is_id = false;
    for (Idx x = 0; x < s.node_count(); ++x)
      if (s.n_id[x] == u) is_id = true;
    if (is_id) continue;
    os << "  n" << s.e_dom[u] << " -> n" << s.e_cod[u] << " [label=\""
       << names.edge_names.at(u) << "\"];\n";
  }
  for (Idx t = 0; t < s.tri_count(); ++t)
    os << "  // comm " << names.edge_names.at(s.tri_l[t]) << " . "
       << names.edge_names.at(s.tri_r[t]) << " = " << names.edge_names.at(s.tri_c[t])
       << "\n";
  auto cluster = [&](const char* kind, Idx w, std::initializer_list<Idx> nodes) {
    os << "  subgraph cluster_" << kind << w << " {\n    label=\"" << kind << "\";\n";
    for (Idx x : nodes) os << "    n" << x << ";\n";
    os << "  }\n";
  };
  for (Idx w = 0; w < s.ut_count(); ++w) cluster("terminal", w, {s.ut_n[w]});
  for (Idx w = 0; w < s.ui_count(); ++w) cluster("initial", w, {s.ui_n[w]});
  for (Idx w = 0; w < s.upb_count(); ++w)
    cluster("pullback", w, {s.e_dom[s.tri_l[s.upb_tri1[w]]]});
  for (Idx w = 0; w < s.upo_count(); ++w)
    cluster("pushout", w, {s.e_cod[s.tri_r[s.upo_tri1[w]]]});
  for (Idx w = 0; w < s.ul_count(); ++w)
    cluster("list", w, {s.e_cod[s.ul_e[w]]});
  os << "}\n";
  return os.str();
}

}  // namespace auk
