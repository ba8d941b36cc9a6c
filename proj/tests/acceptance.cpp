// Acceptance suite: one case per criterion, each printing a pass/fail line
// with its runtime and failing when its budget or its property is violated.

#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "auk/aupres.hpp"
#include "auk/expr.hpp"
#include "auk/frontend.hpp"
#include "auk/limits.hpp"
#include "corpus_builders.hpp"
#include "oracles.hpp"

using namespace auk;
using namespace auk::testing;

namespace {

struct Criterion {
  const char* name;
  double budget_s;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  bool ok = true;
  ~Criterion() {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s (%.2fs, budget %.0fs)\n", name,
                ok && secs < budget_s ? "PASS" : "FAIL", secs, budget_s);
    std::fflush(stdout);
  }
  void require(bool cond) { ok = ok && cond; }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

// small context family used by several criteria
std::vector<Context> small_contexts() {
  return {
      make_context({}),
      make_context({AddPrimitiveNode{}}),
      make_context({AddPrimitiveNode{}, AddPrimitiveNode{}}),
      make_context({AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveEdge{0, 1}}),
      make_context({AddTerminal{}, AddPrimitiveNode{}}),
      make_context({AddPrimitiveNode{}, AddPrimitiveEdge{0, 0}}),
  };
}

SketchHom hom_by(const Sketch& src, const Sketch& tgt, std::vector<Idx> n,
                 std::vector<Idx> e) {
  SketchHom h;
  h.source = src;
  h.target = tgt;
  h.n = std::move(n);
  h.e = std::move(e);
  const auto all = enumerate_homs(src, tgt);
  for (const auto& cand : all)
    if (cand.n == h.n && cand.e == h.e) return cand;
  throw KernelError("acceptance: no such homomorphism");
}

}  // namespace

TEST_CASE("criterion 1: sketch-equation suite") {
  Criterion cr{"criterion 1: sketch equations", 1.0};
  std::vector<Sketch> produced;
  for (const auto& c : small_contexts()) {
    produced.push_back(c.apex);
    produced.push_back(build_arrow_context(c).ctx.apex);
  }
  for (const auto& inst : all_rule_instances()) {
    produced.push_back(inst.ctx.apex);
    produced.push_back(apply_eq_extension(inst.ext).result);
  }
  const auto prod = build_product(small_contexts()[3], small_contexts()[4]);
  produced.push_back(prod.ctx.apex);
  // a reindexing
  const Context two = small_contexts()[2];
  SketchHom fold;
  fold.source = two.apex;
  fold.target = object_sketch();
  fold.n = {0, 0};
  fold.e = {0, 0};
  Extension ext{two.apex, {AddPrimitiveEdge{0, 1}, AddTerminal{}}};
  produced.push_back(apply_extension(reindex(ext, fold).ext).result);
  int checked = 0;
  for (const auto& s : produced) {
    cr.require(validate_sketch(s).ok());
    ++checked;
  }
  cr.require(checked >= 30);
  CHECK(cr.ok);
  CHECK(cr.elapsed() < cr.budget_s);
}

TEST_CASE("criterion 2: reindexing squares are pushouts") {
  Criterion cr{"criterion 2: pushout oracle", 30.0};
  // targets for cocones
  const std::vector<Sketch> targets = {
      make_context({AddPrimitiveNode{}, AddTerminal{}, AddPrimitiveEdge{0, 1}}).apex,
      make_context({AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveEdge{0, 1},
                    AddPrimitiveEdge{0, 1}}).apex,
  };
  const std::vector<Context> bases = {
      make_context({AddPrimitiveNode{}}),
      make_context({AddPrimitiveNode{}, AddPrimitiveNode{}}),
      make_context({AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveEdge{0, 1}}),
  };
  const std::vector<std::vector<ExtensionStep>> deltas = {
      {AddPrimitiveNode{}},
      {AddTerminal{}},
      {AddPrimitiveEdge{0, 0}},
      {AddPrimitiveNode{}, AddPrimitiveEdge{0, 0}},
      {AddInitial{}},
      {AddPrimitiveEdge{0, 0}, AddCommutativity{static_cast<Idx>(-1), 0, 0}},
  };
  int pairs = 0;
  for (const auto& b0 : bases)
    for (const auto& b1 : bases) {
      const auto homs = enumerate_homs(b1.apex, b0.apex);
      for (const auto& f : homs) {
        for (auto steps : deltas) {
          // patch the placeholder commutativity to reference the fresh edge
          for (auto& st : steps)
            if (auto* c = std::get_if<AddCommutativity>(&st);
                c && c->l == static_cast<Idx>(-1)) {
              const Idx fresh = b1.apex.edge_count();
              *c = AddCommutativity{fresh, b1.apex.n_id[0], fresh};
            }
          Extension ext{b1.apex, steps};
          Sketch apexL;
          try {
            apexL = apply_extension(ext).result;
          } catch (const KernelError&) {
            continue;  // delta does not fit this base
          }
          if (apexL.node_count() > 6) continue;
          const auto rx = reindex(ext, f);
          const auto apexR = apply_extension(rx.ext).result;
          const auto inclL = inclusion_hom(b1.apex, apexL);
          const auto inclR = inclusion_hom(b0.apex, apexR);
          cr.require(hom_equal(compose_hom(f, inclR), compose_hom(inclL, rx.eps)));
          for (const auto& u : targets) {
            const auto homs1 = enumerate_homs(apexL, u);
            const auto homs0 = enumerate_homs(b0.apex, u);
            const auto fills = enumerate_homs(apexR, u);
            for (const auto& g1 : homs1)
              for (const auto& g0 : homs0) {
                if (!hom_equal(compose_hom(inclL, g1), compose_hom(f, g0))) continue;
                int count = 0;
                for (const auto& h : fills)
                  if (hom_equal(compose_hom(inclR, h), g0) &&
                      hom_equal(compose_hom(rx.eps, h), g1))
                    ++count;
                cr.require(count == 1);
              }
          }
          ++pairs;
        }
      }
    }
  cr.require(pairs >= 20);
  CHECK(pairs >= 20);
  CHECK(cr.ok);
  CHECK(cr.elapsed() < cr.budget_s);
}

TEST_CASE("criterion 3: equality-logic suite") {
  Criterion cr{"criterion 3: equality logic", 5.0};
  std::mt19937 rng(42);
  int instances = 0;
  for (int trial = 0; trial < 60; ++trial) {
    // a context with 2..4 parallel edges and unary commutativities
    const int n_par = 2 + static_cast<int>(rng() % 3);
    std::vector<ExtensionStep> st{AddPrimitiveNode{}, AddPrimitiveNode{},
                                  AddPrimitiveNode{}};
    for (int k = 0; k < n_par; ++k) st.push_back(AddPrimitiveEdge{0, 1});
    st.push_back(AddPrimitiveEdge{1, 2});  // v
    st.push_back(AddPrimitiveEdge{1, 2});  // v'
    st.push_back(AddPrimitiveEdge{0, 2});  // w
    const Idx u0 = 3, v0 = 3 + n_par, w0 = 5 + n_par;
    st.push_back(AddCommutativity{0, u0, u0 + 1});       // u <| u'
    st.push_back(AddCommutativity{1, v0, v0 + 1});       // v <| v'
    st.push_back(AddCommutativity{u0, v0, w0});          // u;v = w
    if (n_par > 2) st.push_back(AddCommutativity{0, u0 + 1, u0 + 2});
    const Context c = make_context(std::move(st));

    auto check_goal = [&](const DeriveGoal& goal, Idx l, Idx r, Idx cc) {
      const auto res = derive_equality(c.apex, goal);
      const auto applied = apply_eq_extension(res.derivation);  // must check
      cr.require(res.goal_comm < applied.result.tri_count());
      cr.require(applied.result.tri_l[res.goal_comm] == l);
      cr.require(applied.result.tri_r[res.goal_comm] == r);
      cr.require(applied.result.tri_c[res.goal_comm] == cc);
      ++instances;
    };
    check_goal(GoalRefl{u0}, c.apex.n_id[0], u0, u0);
    check_goal(GoalSym{0}, c.apex.n_id[0], u0 + 1, u0);
    if (n_par > 2)
      check_goal(GoalTrans{0, 3}, c.apex.n_id[0], u0, u0 + 2);
    check_goal(GoalCongruence{0, 1, 2}, u0 + 1, v0 + 1, w0);
  }
  cr.require(instances >= 50);
  CHECK(instances >= 50);
  CHECK(cr.ok);
  CHECK(cr.elapsed() < cr.budget_s);
}

TEST_CASE("criterion 4: soundness harness over every rule kind") {
  Criterion cr{"criterion 4: soundness harness", 60.0};
  int kinds = 0;
  for (const auto& inst : all_rule_instances()) {
    CAPTURE(inst.name);
    const SetModel base = interpret_context(inst.ctx, inst.prim, EvalOptions{8});
    SetModel extended;
    try {
      extended = extend_along_eqext(base, inst.ext, EvalOptions{8});
    } catch (const KernelError& err) {
      MESSAGE(inst.name << ": " << err.what());
      cr.require(false);
      continue;
    }
    for (const auto& st : check_commutativities(extended, EvalOptions{8}))
      cr.require(st.holds);
    ++kinds;
  }
  cr.require(kinds == 24);  // every rule kind, fillins and uniqueness separately
  CHECK(cr.ok);
  CHECK(cr.elapsed() < cr.budget_s);
}

TEST_CASE("criterion 5: strictification") {
  Criterion cr{"criterion 5: strictification", 10.0};
  int cases = 0;
  auto atom2 = fin_set({atom("a"), atom("b")});
  auto run_case = [&](const Context& ctx, SetModel m) {
    const auto r = strictify(ctx, m, EvalOptions{6});
    for (Idx x = 0; x < ctx.apex.node_count(); ++x) {
      // primitive components are identities
      bool primitive = true;
      {
        const auto prov = compute_provenance(ctx.ext);
        primitive = prov.node_origin[x] == NodeOrigin::Primitive;
      }
      if (primitive)
        cr.require(mor_equal(r.iso[x].fwd, identity_mor(m.node[x]), 6).holds);
    }
    // re-running on the output is the identity case
    const auto r2 = strictify(ctx, r.model, EvalOptions{6});
    for (Idx x = 0; x < ctx.apex.node_count(); ++x)
      cr.require(mor_equal(r2.iso[x].fwd, identity_mor(r.model.node[x]), 6).holds);
    ++cases;
  };

  // products carried by swapped or relabeled pairs
  for (int variant = 0; variant < 4; ++variant) {
    const Context c = make_context({AddPrimitiveNode{}, AddPrimitiveNode{},
                                    AddPrimitiveEdge{0, 1}, AddPullback{2, 2}});
    PrimAssignment prim;
    prim.nodes[0] = atom2;
    prim.nodes[1] = fin_set({atom("z")});
    std::map<SetElem, SetElem> ct;
    for (const auto& x : atom2->elems) ct[x] = atom("z");
    prim.edges[2] = tabulate(atom2, prim.nodes[1], ct);
    SetModel m = interpret_context(c, prim);
    const Idx P = 2, p1 = 3, pd = 4, p2 = 5, idP = 6;
    std::vector<SetElem> carrier;
    std::map<SetElem, SetElem> t1, t2, td, ti;
    int i = 0;
    for (const auto& q : m.node[P]->elems) {
      SetElem s = variant % 2 == 0 ? SetElem::pair(q.second(), q.first())
                                   : atom("c" + std::to_string(i++));
      carrier.push_back(s);
    }
    const auto cp = fin_set(carrier);
    i = 0;
    for (const auto& q : m.node[P]->elems) {
      const SetElem s = variant % 2 == 0 ? SetElem::pair(q.second(), q.first())
                                         : atom("c" + std::to_string(i++));
      t1[s] = q.first();
      t2[s] = q.second();
      td[s] = atom("z");
      ti[s] = s;
    }
    m.node[P] = cp;
    m.edge[p1] = tabulate(cp, m.node[0], t1);
    m.edge[pd] = tabulate(cp, m.node[1], td);
    m.edge[p2] = tabulate(cp, m.node[0], t2);
    m.edge[idP] = tabulate(cp, cp, ti);
    m.strict = false;
    run_case(c, std::move(m));
  }
  // terminals carried by a different singleton
  for (int variant = 0; variant < 3; ++variant) {
    const Context c = make_context({AddTerminal{}, AddPrimitiveNode{},
                                    AddPrimitiveEdge{1, 0}});
    PrimAssignment prim;
    prim.nodes[1] = atom2;
    std::map<SetElem, SetElem> bang;
    const SetElem pt = atom("pt" + std::to_string(variant));
    for (const auto& x : atom2->elems) bang[x] = pt;
    prim.edges[2] = tabulate(atom2, fin_set({pt}), bang);
    SetModel m = interpret_context(c, {[&] {
                                      PrimAssignment p2a;
                                      p2a.nodes[1] = atom2;
                                      std::map<SetElem, SetElem> b2;
                                      for (const auto& x : atom2->elems)
                                        b2[x] = SetElem::unit();
                                      p2a.edges[2] = tabulate(atom2, terminal_carrier(), b2);
                                      return p2a;
                                    }()});
    m.node[0] = fin_set({pt});
    m.edge[0] = identity_mor(m.node[0]);
    m.edge[2] = tabulate(atom2, m.node[0], bang);
    m.strict = false;
    run_case(c, std::move(m));
  }
  // pushouts carried by relabeled classes
  for (int variant = 0; variant < 3; ++variant) {
    const Context c = make_context({AddPrimitiveNode{}, AddPrimitiveNode{},
                                    AddPrimitiveNode{}, AddPrimitiveEdge{0, 1},
                                    AddPrimitiveEdge{0, 2}, AddPushout{3, 4}});
    PrimAssignment prim;
    prim.nodes[0] = fin_set({atom("x")});
    prim.nodes[1] = atom2;
    prim.nodes[2] = fin_set({atom("y")});
    prim.edges[3] = tabulate(prim.nodes[0], prim.nodes[1], {{atom("x"), atom("a")}});
    prim.edges[4] = tabulate(prim.nodes[0], prim.nodes[2], {{atom("x"), atom("y")}});
    SetModel m = interpret_context(c, prim);
    const Idx Q = 3, j1 = 5, jd = 6, j2 = 7, idQ = 8;
    std::map<SetElem, SetElem> relabel;
    std::vector<SetElem> carrier;
    int i = 0;
    for (const auto& q : m.node[Q]->elems) {
      const SetElem s = atom("k" + std::to_string(variant) + std::to_string(i++));
      relabel[q] = s;
      carrier.push_back(s);
    }
    const auto cq = fin_set(carrier);
    auto remap = [&](const SetMor& f) {
      std::map<SetElem, SetElem> t;
      for (const auto& x : f.dom->elems) t[x] = relabel.at(f(x));
      return tabulate(f.dom, cq, t);
    };
    m.edge[j1] = remap(m.edge[j1]);
    m.edge[jd] = remap(m.edge[jd]);
    m.edge[j2] = remap(m.edge[j2]);
    m.node[Q] = cq;
    std::map<SetElem, SetElem> ti;
    for (const auto& x : cq->elems) ti[x] = x;
    m.edge[idQ] = tabulate(cq, cq, ti);
    m.strict = false;
    run_case(c, std::move(m));
  }
  cr.require(cases >= 10);
  CHECK(cases >= 10);
  CHECK(cr.ok);
  CHECK(cr.elapsed() < cr.budget_s);
}

TEST_CASE("criterion 6: the laws of the category of contexts") {
  Criterion cr{"criterion 6: Con laws", 60.0};
  // generated maps with universal-introduction extensions
  std::vector<ContextMap> gen;
  const std::vector<std::vector<EqStep>> exts = {
      {},
      {EqUnivIntro{AddTerminal{}}},
      {EqUnivIntro{AddInitial{}}},
      {EqUnivIntro{AddTerminal{}}, EqUnivIntro{AddInitial{}}},
      {EqUnivIntro{AddPullback{0, 0}}},
      {EqUnivIntro{AddPushout{0, 0}}},
  };
  const Context obc = make_context({AddPrimitiveNode{}});
  const Context loop = make_context({AddPrimitiveNode{}, AddPrimitiveEdge{0, 0}});
  for (const auto& base : {obc, loop})
    for (const auto& steps : exts) {
      ContextMap m;
      m.source = base;
      m.target = base;
      m.e = EqExtension{base.apex, steps};
      try {
        m.f = retarget(identity_hom(base.apex), apply_eq_extension(m.e).result);
      } catch (const KernelError&) {
        continue;
      }
      gen.push_back(std::move(m));
    }
  cr.require(gen.size() >= 10);

  int unit_ok = 0, assoc_ok = 0, inv_ok = 0;
  for (const auto& m : gen) {
    const auto lhs = compose_map(identity_map(m.source), m);
    const auto rhs = compose_map(m, identity_map(m.target));
    cr.require(maps_objectively_equal(lhs, m, certify_maps_equal(lhs, m)));
    cr.require(maps_objectively_equal(rhs, m, certify_maps_equal(rhs, m)));
    ++unit_ok;
    const auto a = compose_map(compose_map(m, m), m);
    const auto b = compose_map(m, compose_map(m, m));
    cr.require(maps_objectively_equal(a, b, certify_maps_equal(a, b)));
    ++assoc_ok;
    // invertibility of (Id,e) against (e,Id)
    const Context apexctx =
        make_context(compose_extensions(m.source.ext, as_extension(m.e)).steps);
    ContextMap e_id{m.source, apexctx, m.e,
                    retarget(identity_hom(apexctx.apex),
                             apply_eq_extension(m.e).result)};
    ContextMap id_e{apexctx, m.source, EqExtension{apexctx.apex, {}},
                    retarget(apply_eq_extension(m.e).inclusion, apexctx.apex)};
    const auto round1 = compose_map(e_id, id_e);
    cr.require(maps_objectively_equal(round1, identity_map(m.source),
                                      certify_maps_equal(round1, identity_map(m.source))));
    const auto round2 = compose_map(id_e, e_id);
    cr.require(maps_objectively_equal(round2, identity_map(apexctx),
                                      certify_maps_equal(round2, identity_map(apexctx))));
    ++inv_ok;
  }
  cr.require(unit_ok >= 10 && assoc_ok >= 10 && inv_ok >= 10);

  // whiskering uniqueness: two runs of right whiskering certified equal
  int whisker_ok = 0;
  for (const auto& m : gen) {
    if (m.e.steps.empty()) continue;
    const auto cell = identity_cell(identity_map(m.source));
    const Context t1p =
        make_context(compose_extensions(m.source.ext, as_extension(m.e)).steps);
    const auto w1 = whisker_right_ext(cell, t1p, m.e);
    const auto w2 = whisker_right_ext(cell, t1p, m.e);
    const auto d1 = cell_dom(w1);
    const auto d2 = cell_dom(w2);
    cr.require(maps_objectively_equal(d1, d2, certify_maps_equal(d1, d2)));
    const auto c1 = cell_cod(w1);
    const auto c2 = cell_cod(w2);
    cr.require(maps_objectively_equal(c1, c2, certify_maps_equal(c1, c2)));
    ++whisker_ok;
  }
  cr.require(whisker_ok >= 10);

  // interchange: the two fractions defining horizontal composition agree
  int inter_ok = 0;
  for (const auto& m : gen) {
    const auto a = identity_cell(identity_map(m.source));
    const auto b = identity_cell(m);
    const auto f1 = whisker_right(a, cell_dom(b));
    const auto s1 = whisker_left(cell_cod(a), b);
    const auto h1 = vertical_compose(f1, s1, certify_maps_equal(cell_cod(f1), cell_dom(s1)));
    const auto f2 = whisker_left(cell_dom(a), b);
    const auto s2 = whisker_right(a, cell_cod(b));
    const auto h2 = vertical_compose(f2, s2, certify_maps_equal(cell_cod(f2), cell_dom(s2)));
    // the two composites are objectively equal as maps into the hom context
    const auto arr = build_arrow_context(h1.target);
    ContextMap mm1{h1.source, arr.ctx, h1.e, h1.alpha};
    ContextMap mm2{h2.source, arr.ctx, h2.e, h2.alpha};
    cr.require(maps_objectively_equal(mm1, mm2, certify_maps_equal(mm1, mm2)));
    ++inter_ok;
  }
  cr.require(inter_ok >= 10);
  CHECK(cr.ok);
  CHECK(cr.elapsed() < cr.budget_s);
}

TEST_CASE("criterion 7: limit universal properties") {
  Criterion cr{"criterion 7: limits", 60.0};
  const Context obc = make_context({AddPrimitiveNode{}});
  const Context two = make_context({AddPrimitiveNode{}, AddPrimitiveNode{}});
  const Context edgec =
      make_context({AddPrimitiveNode{}, AddPrimitiveNode{}, AddPrimitiveEdge{0, 1}});

  // products: pairing bijection against hom enumeration
  for (const auto& t0 : {obc, two})
    for (const auto& t1 : {obc, edgec}) {
      const auto prod = build_product(t0, t1);
      if (prod.ctx.apex.node_count() > 4) continue;
      const Sketch u = edgec.apex;
      const auto into_prod = enumerate_homs(prod.ctx.apex, u);
      const auto from0 = enumerate_homs(t0.apex, u);
      const auto from1 = enumerate_homs(t1.apex, u);
      size_t matched = 0;
      for (const auto& a : from0)
        for (const auto& b : from1) {
          int count = 0;
          for (const auto& h : into_prod)
            if (hom_equal(compose_hom(prod.incl0, h), a) &&
                hom_equal(compose_hom(prod.incl1, h), b))
              ++count;
          cr.require(count == 1);
          matched += count;
        }
      cr.require(matched == into_prod.size());
    }

  // inserters: bijection with pairs (g, theta)
  {
    SketchHom f0, f1;
    f0.source = obc.apex;
    f0.target = two.apex;
    f0.n = {0};
    f0.e = {0};
    f1 = f0;
    f1.n = {1};
    f1.e = {1};
    const auto ins = build_inserter(two, obc, f0, f1);
    const Sketch u = edgec.apex;
    const auto from_ins = enumerate_homs(ins.ctx.apex, u);
    const auto from_host = enumerate_homs(two.apex, u);
    size_t pairs = 0;
    for (const auto& g : from_host)
      for (Idx th = 0; th < u.edge_count(); ++th) {
        if (u.e_dom[th] != g.n[0] || u.e_cod[th] != g.n[1]) continue;
        if (!u.has_triangle(g.e[0], th, th)) continue;
        if (!u.has_triangle(th, g.e[1], th)) continue;
        ++pairs;
      }
    cr.require(from_ins.size() == pairs);
  }

  // equifiers: factorization bijection
  {
    const Context host = make_context({AddPrimitiveNode{}, AddPrimitiveEdge{0, 0},
                                       AddPrimitiveEdge{0, 0},
                                       AddCommutativity{0, 1, 1}, AddCommutativity{1, 0, 1},
                                       AddCommutativity{0, 2, 2}, AddCommutativity{2, 0, 2}});
    const auto ar = build_arrow_context(obc);
    SketchHom f;
    f.source = obc.apex;
    f.target = host.apex;
    f.n = {0};
    f.e = {0};
    const auto alpha = make_two_cell_hom(ar, f, f, {1}, {1});
    const auto beta = make_two_cell_hom(ar, f, f, {2}, {2});
    const auto eq = build_equifier(host, obc, alpha, beta);
    const Sketch u = make_context({AddPrimitiveNode{}, AddPrimitiveEdge{0, 0},
                                   AddCommutativity{0, 1, 1}, AddCommutativity{1, 0, 1},
                                   AddCommutativity{0, 0, 0}}).apex;
    const auto from_eq = enumerate_homs(eq.ctx.apex, u);
    const auto from_host = enumerate_homs(host.apex, u);
    size_t expect = 0;
    for (const auto& g : from_host)
      if (u.has_triangle(u.n_id[g.n[0]], g.e[1], g.e[2])) ++expect;
    cr.require(from_eq.size() == expect);
  }

  // pullbacks of extension maps: fillins exist and are certified equal
  {
    Extension c{obc.apex, {AddPrimitiveNode{}, AddPrimitiveEdge{0, 1}}};
    ContextMap m;
    m.source = obc;
    m.target = obc;
    m.e = EqExtension{obc.apex, {EqUnivIntro{AddTerminal{}}}};
    m.f = retarget(identity_hom(obc.apex), apply_eq_extension(m.e).result);
    const auto pb = pullback_extension_map(obc, c, m);
    const auto fill1 = pullback_fillin(pb, pb.to_t0, pb.to_t1p);
    const auto fill2 = pullback_fillin(pb, pb.to_t0, pb.to_t1p);
    cr.require(maps_objectively_equal(fill1, fill2, certify_maps_equal(fill1, fill2)));
    const auto back = compose_map(fill1, pb.to_t0);
    cr.require(maps_objectively_equal(back, pb.to_t0, certify_maps_equal(back, pb.to_t0)));
  }
  CHECK(cr.ok);
  CHECK(cr.elapsed() < cr.budget_s);
}

TEST_CASE("criterion 8: arithmetic smoke test") {
  Criterion cr{"criterion 8: arithmetic", 5.0};
  AuBuilder au(make_context({}));
  const Idx one = au.terminal();
  const Idx utA = au.last_terminal();
  const auto nat = au.list(one);
  const Idx bang0 = au.terminal_fillin(utA, nat.L);
  const Idx pairR = au.product_fillin(nat.upb, au.sketch().n_id[nat.L], bang0);
  const Idx succ = au.compose(pairR, nat.cons);
  const auto ay = au.pullback(nat.bangA, nat.bangL);
  const Idx g = au.compose(ay.p2, succ);
  const auto rec = au.list_recursor(nat.ul, au.sketch().n_id[nat.L], g, ay.upb);
  const SetModel m0 = interpret_context(make_context({}), {});
  const SetModel m = extend_along_eqext(m0, au.extension(), EvalOptions{6});
  const auto& plus = m.edge[rec.r];
  auto num = [&](int k) {
    std::vector<SetElem> xs(k, SetElem::unit());
    return SetElem::list(std::move(xs));
  };
  cr.require(plus(SetElem::pair(num(0), num(0))) == num(0));
  cr.require(plus(SetElem::pair(num(2), num(3))) == num(5));
  cr.require(plus(SetElem::pair(num(4), num(1))) == num(5));
  CHECK(cr.ok);
  CHECK(cr.elapsed() < cr.budget_s);
}

TEST_CASE("criterion 9: model/map bijection") {
  Criterion cr{"criterion 9: model-map round trip", 10.0};
  const Context obc = make_context({AddPrimitiveNode{}});
  std::vector<ContextMap> maps;
  maps.push_back(identity_map(obc));
  for (auto steps : {std::vector<EqStep>{EqUnivIntro{AddTerminal{}}},
                     std::vector<EqStep>{EqUnivIntro{AddInitial{}}},
                     std::vector<EqStep>{EqUnivIntro{AddTerminal{}},
                                         EqUnivIntro{AddListObject{1}}},
                     std::vector<EqStep>{EqComposition{0, 0}}}) {
    ContextMap k;
    k.source = obc;
    k.target = obc;
    k.e = EqExtension{obc.apex, steps};
    k.f = retarget(identity_hom(obc.apex), apply_eq_extension(k.e).result);
    maps.push_back(std::move(k));
  }
  // a map picking a universal subject
  {
    ContextMap k;
    k.source = obc;
    k.target = obc;
    k.e = EqExtension{obc.apex, {EqUnivIntro{AddTerminal{}}}};
    const Sketch apex = apply_eq_extension(k.e).result;
    k.f.source = obc.apex;
    k.f.target = apex;
    k.f.n = {1};
    k.f.e = {apex.n_id[1]};
    maps.push_back(std::move(k));
  }
  int done = 0;
  for (const auto& m : maps) {
    validate_map(m);
    const auto model = map_to_model(m);
    const auto back = model_to_map(m.source, model);
    cr.require(maps_objectively_equal(back, m, certify_maps_equal(back, m)));
    ++done;
  }
  cr.require(done >= 5);
  CHECK(cr.ok);
  CHECK(cr.elapsed() < cr.budget_s);
}

TEST_CASE("criterion 10: command line and round trips") {
  Criterion cr{"criterion 10: CLI and round trip", 30.0};
  // `check` on the shipped corpus exits 0
  for (const char* f : {"basics.auk", "universals.auk", "equality.auk", "inverses.auk"}) {
    const std::string cmd = std::string(AUK_BIN) + " check " + AUK_CORPUS_DIR + "/" + f +
                            " > /dev/null 2>&1";
    cr.require(std::system(cmd.c_str()) == 0);
  }
  // parse/print round-trip on 200 generated documents
  std::mt19937 rng(7);
  int trips = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::ostringstream doc;
    doc << "context C\n";
    const int n_nodes = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < n_nodes; ++k) doc << "  node N" << k << "\n";
    const int n_edges = static_cast<int>(rng() % 3);
    for (int k = 0; k < n_edges; ++k)
      doc << "  edge f" << k << " : N" << rng() % n_nodes << " -> N" << rng() % n_nodes
          << "\n";
    if (rng() % 2) doc << "  terminal T\n";
    if (rng() % 2) doc << "  initial Z\n";
    doc << "end\n";
    const auto store = elaborate(parse_document(doc.str()));
    const auto again = elaborate(parse_document(print_document(store)));
    cr.require(store.contexts.at("C").ctx.apex == again.contexts.at("C").ctx.apex);
    ++trips;
  }
  cr.require(trips == 200);
  CHECK(cr.ok);
  CHECK(cr.elapsed() < cr.budget_s);
}
