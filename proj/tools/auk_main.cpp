// auk: a command-line front end for the arithmetic-universe sketch kernel.
//
// Exit codes: 0 ok, 1 check failure, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "auk/aupres.hpp"
#include "auk/frontend.hpp"
#include "auk/limits.hpp"

using namespace auk;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw KernelError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw KernelError("cannot open output file: " + path);
  out << text;
}

struct Report {
  bool failed = false;
  void item(const std::string& kind, const std::string& name, const std::string& status,
            const std::string& detail = {}) {
    json j{{"item", kind}, {"name", name}, {"status", status}};
    if (!detail.empty()) j["detail"] = detail;
    std::cout << j.dump() << "\n";
    if (status != "ok" && status != "info") failed = true;
  }
};

Store load(const std::string& path, unsigned list_bound) {
  EvalOptions opts;
  opts.list_bound = list_bound;
  return elaborate(parse_document(read_file(path)), opts);
}

int run_check(const std::string& path, unsigned list_bound) {
  Report rep;
  Store store;
  try {
    store = load(path, list_bound);
  } catch (const ParseError& err) {
    std::cerr << err.diag.to_string() << "\n";
    return 2;
  }
  for (const auto& entry : store.order) {
    const size_t colon = entry.find(':');
    const std::string kind = entry.substr(0, colon);
    const std::string name = entry.substr(colon + 1);
    if (kind == "context") {
      const auto& c = store.contexts.at(name);
      const auto v = validate_sketch(c.ctx.apex);
      rep.item(kind, name, v.ok() ? "ok" : "invalid", v.ok() ? "" : v.to_string());
    } else if (kind == "eqext") {
      const auto& e = store.eqexts.at(name);
      try {
        apply_eq_extension(e.ext);
        rep.item(kind, name, "ok");
      } catch (const KernelError& err) {
        rep.item(kind, name, "invalid", err.what());
      }
    } else if (kind == "hom") {
      const auto& h = store.homs.at(name);
      const auto v = validate_hom(h.hom);
      rep.item(kind, name, v.ok() ? "ok" : "invalid", v.ok() ? "" : v.to_string());
    } else if (kind == "map") {
      const auto& m = store.maps.at(name);
      try {
        validate_map(m.map);
        rep.item(kind, name, "ok");
      } catch (const KernelError& err) {
        rep.item(kind, name, "invalid", err.what());
      }
    } else if (kind == "model") {
      const auto& m = store.models.at(name);
      const auto comms = check_commutativities(m.model, EvalOptions{list_bound});
      bool ok = true;
      for (const auto& st : comms) ok = ok && st.holds;
      rep.item(kind, name, ok ? "ok" : "invalid");
    }
  }
  std::cout << (rep.failed ? "check failed" : "all declarations check") << "\n";
  return rep.failed ? 1 : 0;
}

int run_compose(const std::string& path, const std::string& m1, const std::string& m2,
                const std::string& outpath, const std::string& outname) {
  Store store = load(path, 8);
  auto i1 = store.maps.find(m1);
  auto i2 = store.maps.find(m2);
  if (i1 == store.maps.end() || i2 == store.maps.end()) {
    std::cerr << "error: unknown map name\n";
    return 2;
  }
  const ContextMap composed = compose_map(i1->second.map, i2->second.map);
  // serialize: the composite's eq-extension and hom under fresh names
  ElabEqExt ee;
  ee.name = outname + "_ext";
  ee.over = [&] {
    for (const auto& [n, c] : store.contexts)
      if (c.ctx.apex == composed.source.apex) return n;
    return std::string("_src");
  }();
  ee.ext = composed.e;
  ee.names = store.contexts.at(ee.over).names;
  {
    Sketch apex = apply_eq_extension(composed.e).result;
    if (ee.names.node_names.size() < apex.node_count())
      ee.names.node_names.resize(apex.node_count());
    if (ee.names.edge_names.size() < apex.edge_count())
      ee.names.edge_names.resize(apex.edge_count());
    for (Idx x = 0; x < apex.node_count(); ++x)
      if (ee.names.node_names[x].empty()) {
        ee.names.node_names[x] = "_n" + std::to_string(x);
        ee.names.nodes[ee.names.node_names[x]] = x;
      }
    for (Idx u = 0; u < apex.edge_count(); ++u)
      if (ee.names.edge_names[u].empty()) {
        ee.names.edge_names[u] = "_e" + std::to_string(u);
        ee.names.edges[ee.names.edge_names[u]] = u;
      }
  }
  ElabHom eh;
  eh.name = outname + "_hom";
  eh.src = [&] {
    for (const auto& [n, c] : store.contexts)
      if (c.ctx.apex == composed.target.apex) return n;
    return std::string("_tgt");
  }();
  eh.tgt = ee.name;
  eh.hom = composed.f;
  ElabMap em;
  em.name = outname;
  em.eqext = ee.name;
  em.hom = eh.name;
  em.map = composed;
  store.eqexts[ee.name] = std::move(ee);
  store.homs[eh.name] = std::move(eh);
  store.maps[em.name] = std::move(em);
  store.order.push_back("eqext:" + outname + "_ext");
  store.order.push_back("hom:" + outname + "_hom");
  store.order.push_back("map:" + outname);
  write_file(outpath, print_document(store));
  std::cout << json{{"item", "map"}, {"name", outname}, {"status", "ok"}}.dump() << "\n";
  return 0;
}

int run_eqcheck(const std::string& path, const std::string& m1, const std::string& m2,
                unsigned list_bound) {
  Store store = load(path, list_bound);
  auto i1 = store.maps.find(m1);
  auto i2 = store.maps.find(m2);
  if (i1 == store.maps.end() || i2 == store.maps.end()) {
    std::cerr << "error: unknown map name\n";
    return 2;
  }
  try {
    const auto cert = certify_maps_equal(i1->second.map, i2->second.map);
    const bool ok = maps_objectively_equal(i1->second.map, i2->second.map, cert);
    std::cout << json{{"item", "eqcheck"},
                      {"name", m1 + " = " + m2},
                      {"status", ok ? "ok" : "failed"}}
                     .dump()
              << "\n";
    return ok ? 0 : 1;
  } catch (const KernelError& err) {
    std::cout << json{{"item", "eqcheck"},
                      {"name", m1 + " = " + m2},
                      {"status", "failed"},
                      {"detail", err.what()}}
                     .dump()
              << "\n";
    return 1;
  }
}

int run_eval(const std::string& path, const std::string& model, unsigned list_bound) {
  Store store = load(path, list_bound);
  auto it = store.models.find(model);
  if (it == store.models.end()) {
    std::cerr << "error: unknown model name\n";
    return 2;
  }
  const auto& m = it->second;
  const auto& names = store.contexts.at(m.of).names;
  for (Idx x = 0; x < m.model.sketch.node_count(); ++x) {
    std::ostringstream os;
    if (is_finite(m.model.node[x])) {
      os << obj_to_string(m.model.node[x]);
    } else {
      os << "lazy carrier, first elements:";
      int shown = 0;
      enumerate(m.model.node[x], list_bound, [&](const SetElem& e) {
        if (shown++ < 8) os << " " << e.to_string();
      });
    }
    std::cout << json{{"item", "carrier"},
                      {"name", names.node_names[x]},
                      {"status", "info"},
                      {"detail", os.str()}}
                     .dump()
              << "\n";
  }
  const auto comms = check_commutativities(m.model, EvalOptions{list_bound});
  bool ok = true;
  for (const auto& st : comms) {
    if (!st.holds) ok = false;
    std::cout << json{{"item", "commutativity"},
                      {"name", std::to_string(st.tri)},
                      {"status", st.holds ? (st.exhaustive ? "ok" : "verified-to-bound")
                                          : "failed"}}
                     .dump()
              << "\n";
  }
  return ok ? 0 : 1;
}

int run_strictify(const std::string& path, const std::string& model,
                  unsigned list_bound) {
  Store store = load(path, list_bound);
  auto it = store.models.find(model);
  if (it == store.models.end()) {
    std::cerr << "error: unknown model name\n";
    return 2;
  }
  const auto& m = it->second;
  const auto& ctx = store.contexts.at(m.of);
  try {
    const auto r = strictify(ctx.ctx, m.model, EvalOptions{list_bound});
    for (Idx x = 0; x < ctx.ctx.apex.node_count(); ++x) {
      const bool ident =
          mor_equal(r.iso[x].fwd, identity_mor(r.model.node[x]), list_bound).holds;
      std::cout << json{{"item", "iso-component"},
                        {"name", ctx.names.node_names[x]},
                        {"status", "ok"},
                        {"detail", ident ? "identity" : "nontrivial"}}
                       .dump()
                << "\n";
    }
    return 0;
  } catch (const ModelError& err) {
    std::cout << json{{"item", "strictify"},
                      {"name", model},
                      {"status", "failed"},
                      {"detail", err.what()}}
                     .dump()
              << "\n";
    return 1;
  }
}

int run_dot(const std::string& path, const std::string& name, const std::string& out) {
  Store store = load(path, 8);
  if (auto it = store.contexts.find(name); it != store.contexts.end()) {
    write_file(out, export_dot(it->second.ctx.apex, it->second.names, name));
    return 0;
  }
  if (auto it = store.eqexts.find(name); it != store.eqexts.end()) {
    write_file(out, export_dot(apply_eq_extension(it->second.ext).result,
                               it->second.names, name));
    return 0;
  }
  std::cerr << "error: unknown context or eqext name\n";
  return 2;
}

int run_limit(const std::string& which, const std::string& path, const std::string& a,
              const std::string& b, const std::string& outpath) {
  Store store = load(path, 8);
  if (which == "product") {
    auto i1 = store.contexts.find(a);
    auto i2 = store.contexts.find(b);
    if (i1 == store.contexts.end() || i2 == store.contexts.end()) {
      std::cerr << "error: unknown context name\n";
      return 2;
    }
    const auto prod = build_product(i1->second.ctx, i2->second.ctx);
    ElabContext ec;
    ec.name = a + "_x_" + b;
    ec.ctx = prod.ctx;
    for (Idx x = 0; x < prod.ctx.apex.node_count(); ++x) {
      ec.names.node_names.push_back("_n" + std::to_string(x));
      ec.names.nodes["_n" + std::to_string(x)] = x;
    }
    for (Idx u = 0; u < prod.ctx.apex.edge_count(); ++u) {
      ec.names.edge_names.push_back("_e" + std::to_string(u));
      ec.names.edges["_e" + std::to_string(u)] = u;
    }
    Store out;
    out.contexts[ec.name] = ec;
    out.order.push_back("context:" + ec.name);
    write_file(outpath, print_document(out));
    std::cout << json{{"item", "limit"}, {"name", ec.name}, {"status", "ok"}}.dump()
              << "\n";
    return 0;
  }
  if (which == "hom") {
    auto i1 = store.contexts.find(a);
    if (i1 == store.contexts.end()) {
      std::cerr << "error: unknown context name\n";
      return 2;
    }
    const auto hc = build_hom_context(i1->second.ctx);
    ElabContext ec;
    ec.name = a + "_arrow";
    ec.ctx = hc.arrow.ctx;
    for (Idx x = 0; x < ec.ctx.apex.node_count(); ++x) {
      ec.names.node_names.push_back("_n" + std::to_string(x));
      ec.names.nodes["_n" + std::to_string(x)] = x;
    }
    for (Idx u = 0; u < ec.ctx.apex.edge_count(); ++u) {
      ec.names.edge_names.push_back("_e" + std::to_string(u));
      ec.names.edges["_e" + std::to_string(u)] = u;
    }
    Store out;
    out.contexts[ec.name] = ec;
    out.order.push_back("context:" + ec.name);
    write_file(outpath, print_document(out));
    std::cout << json{{"item", "limit"}, {"name", ec.name}, {"status", "ok"}}.dump()
              << "\n";
    return 0;
  }
  std::cerr << "error: unknown limit kind (product|hom)\n";
  return 2;
}

int run_whisker(const std::string& path, const std::string& cellmap,
                const std::string& along, const std::string& outpath,
                const std::string& outname) {
  // whiskers the identity cell of CELLMAP on the right by ALONG
  Store store = load(path, 8);
  auto ic = store.maps.find(cellmap);
  auto ia = store.maps.find(along);
  if (ic == store.maps.end() || ia == store.maps.end()) {
    std::cerr << "error: unknown map name\n";
    return 2;
  }
  try {
    const TwoCell cell = identity_cell(ic->second.map);
    const TwoCell out = whisker_right(cell, ia->second.map);
    validate_two_cell(out);
    std::cout << json{{"item", "whisker"},
                      {"name", outname},
                      {"status", "ok"},
                      {"detail", "source nodes " +
                                     std::to_string(out.source.apex.node_count()) +
                                     ", target nodes " +
                                     std::to_string(out.target.apex.node_count())}}
                     .dump()
              << "\n";
    (void)outpath;
    return 0;
  } catch (const KernelError& err) {
    std::cout << json{{"item", "whisker"},
                      {"name", outname},
                      {"status", "failed"},
                      {"detail", err.what()}}
                     .dump()
              << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arithmetic-universe sketch kernel"};
  app.require_subcommand(1);
  unsigned list_bound = 8;
  app.add_option("--list-bound", list_bound, "length bound for lazy list checks");

  std::string path, m1, m2, out, name, which;

  auto* check = app.add_subcommand("check", "validate every declaration in a file");
  check->add_option("file", path)->required();

  auto* compose = app.add_subcommand("compose", "compose two maps and write the result");
  compose->add_option("file", path)->required();
  compose->add_option("map1", m1)->required();
  compose->add_option("map2", m2)->required();
  compose->add_option("-o,--output", out)->required();
  std::string outname = "composite";
  compose->add_option("--name", outname);

  auto* eqcheck = app.add_subcommand("eqcheck", "certify two maps objectively equal");
  eqcheck->add_option("file", path)->required();
  eqcheck->add_option("map1", m1)->required();
  eqcheck->add_option("map2", m2)->required();

  auto* eval = app.add_subcommand("eval", "interpret a model and report carriers");
  eval->add_option("file", path)->required();
  eval->add_option("model", m1)->required();

  auto* strict = app.add_subcommand("strictify", "strictify a model and report the iso");
  strict->add_option("file", path)->required();
  strict->add_option("model", m1)->required();

  auto* dot = app.add_subcommand("dot", "export a context as a graph description");
  dot->add_option("file", path)->required();
  dot->add_option("name", name)->required();
  dot->add_option("-o,--output", out)->required();

  auto* limit = app.add_subcommand("limit", "construct a limit context");
  limit->add_option("kind", which)->required();
  limit->add_option("file", path)->required();
  limit->add_option("a", m1)->required();
  limit->add_option("b", m2);
  limit->add_option("-o,--output", out)->required();

  auto* whisker = app.add_subcommand("whisker", "whisker an identity cell by a map");
  whisker->add_option("file", path)->required();
  whisker->add_option("cell", m1)->required();
  whisker->add_option("along", m2)->required();
  whisker->add_option("-o,--output", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(path, list_bound);
    if (compose->parsed()) return run_compose(path, m1, m2, out, outname);
    if (eqcheck->parsed()) return run_eqcheck(path, m1, m2, list_bound);
    if (eval->parsed()) return run_eval(path, m1, list_bound);
    if (strict->parsed()) return run_strictify(path, m1, list_bound);
    if (dot->parsed()) return run_dot(path, name, out);
    if (limit->parsed()) return run_limit(which, path, m1, m2, out);
    if (whisker->parsed()) return run_whisker(path, m1, m2, out, "whiskered");
  } catch (const ParseError& err) {
    std::cerr << err.diag.to_string() << "\n";
    return 2;
  } catch (const KernelError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 2;
}
