#include <fstream>
#include <sstream>
#include <doctest.h>

#include <random>

#include "auk/frontend.hpp"

using namespace auk;

namespace {

Store roundtrip(const Store& s) { return elaborate(parse_document(print_document(s))); }

bool stores_equal(const Store& a, const Store& b) {
  if (a.order != b.order) return false;
  for (const auto& [n, c] : a.contexts)
    if (!(b.contexts.at(n).ctx.apex == c.ctx.apex)) return false;
  for (const auto& [n, e] : a.eqexts) {
    const auto& o = b.eqexts.at(n);
    if (!(apply_eq_extension(e.ext).result == apply_eq_extension(o.ext).result))
      return false;
  }
  for (const auto& [n, h] : a.homs)
    if (!hom_equal(b.homs.at(n).hom, h.hom)) return false;
  for (const auto& [n, m] : a.models) {
    const auto& o = b.models.at(n);
    for (const auto& [x, carrier] : m.prim.nodes)
      if (!obj_equal(o.prim.nodes.at(x), carrier)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("the object context parses from one line") {
  const auto store = elaborate(parse_document("context Ob\n  node X\nend\n"));
  const auto& c = store.contexts.at("Ob");
  CHECK(c.ctx.apex == object_sketch());
}

TEST_CASE("empty documents elaborate to empty stores") {
  const auto store = elaborate(parse_document("  \n# only a comment\n"));
  CHECK(store.order.empty());
}

TEST_CASE("syntax errors carry line numbers") {
  try {
    parse_document("context C\n  node X\nend\nstray line\n");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.diag.line == 4);
  }
  try {
    elaborate(parse_document("context C\n  edge f : A -> B\nend\n"));
    FAIL("expected an elaboration error");
  } catch (const ParseError& err) {
    CHECK(err.diag.line == 2);
    CHECK(err.diag.message.find("unresolved") != std::string::npos);
  }
}

TEST_CASE("duplicate names are rejected") {
  CHECK_THROWS_AS(elaborate(parse_document("context C\n  node X\n  node X\nend\n")),
                  ParseError);
  CHECK_THROWS_AS(
      elaborate(parse_document("context C\nend\ncontext C\nend\n")), ParseError);
}

TEST_CASE("corpus files parse, elaborate and round-trip") {
  for (const char* path :
       {"basics.auk", "universals.auk", "equality.auk", "inverses.auk"}) {
    CAPTURE(path);
    std::ifstream in(std::string(AUK_CORPUS_DIR) + "/" + path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    const auto store = elaborate(parse_document(os.str()));
    CHECK(stores_equal(store, roundtrip(store)));
  }
}

TEST_CASE("parse/print round-trip on generated documents") {
  std::mt19937 rng(20260809);
  for (int trial = 0; trial < 200; ++trial) {
    std::ostringstream doc;
    doc << "context C" << trial << "\n";
    const int n_nodes = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < n_nodes; ++k) doc << "  node N" << k << "\n";
    const int n_edges = static_cast<int>(rng() % 4);
    std::vector<std::pair<int, int>> edges;
    for (int k = 0; k < n_edges; ++k) {
      const int a = static_cast<int>(rng() % n_nodes);
      const int b = static_cast<int>(rng() % n_nodes);
      doc << "  edge f" << k << " : N" << a << " -> N" << b << "\n";
      edges.emplace_back(a, b);
    }
    // a commutativity or a universal over the data when shapes allow
    for (size_t i = 0; i < edges.size(); ++i)
      for (size_t j = 0; j < edges.size(); ++j)
        if (edges[i].second == edges[j].second && (rng() % 2)) {
          doc << "  pullback P" << i << "_" << j << "[a" << i << j << ",b" << i << j
              << ",c" << i << j << "] = pb(f" << i << ",f" << j << ")\n";
          goto done_universal;
        }
  done_universal:
    if (rng() % 2) doc << "  terminal T\n";
    doc << "end\n";
    if (rng() % 3 == 0) {
      doc << "model M" << trial << " of C" << trial << "\n";
      for (int k = 0; k < n_nodes; ++k) doc << "  N" << k << " := {e0, e1}\n";
      bool ok_edges = true;
      for (size_t k = 0; k < edges.size(); ++k)
        doc << "  f" << k << " := {e0 |-> e1, e1 |-> e0}\n";
      doc << "end\n";
      (void)ok_edges;
    }
    CAPTURE(doc.str());
    const auto store = elaborate(parse_document(doc.str()));
    CHECK(stores_equal(store, roundtrip(store)));
  }
}

TEST_CASE("dot export is deterministic and covers the sketch") {
  const auto store = elaborate(parse_document(
      "context C\n  node X\n  node Y\n  edge f : X -> Y\n  terminal T\nend\n"));
  const auto& c = store.contexts.at("C");
  const auto dot1 = export_dot(c.ctx.apex, c.names, "C");
  const auto dot2 = export_dot(c.ctx.apex, c.names, "C");
  CHECK(dot1 == dot2);
  CHECK(dot1.find("digraph") != std::string::npos);
  CHECK(dot1.find("X") != std::string::npos);
  CHECK(dot1.find("cluster_terminal") != std::string::npos);
}
