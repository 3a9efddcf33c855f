#include <doctest.h>

#include "smallcut/generators.hpp"
#include "smallcut/oracle.hpp"
#include "smallcut/small_cuts.hpp"

#include <random>
#include <set>

using namespace smallcut;

namespace {

struct Global {
  Graph g;
  Engine eng;
  std::vector<NodeKnowledge> know;
  BfsInfo tree;
  PortAncestors nbr;
  InstanceTables inst;

  Global(Graph graph, Vertex root) : g(std::move(graph)), eng(g, {}) {
    tree = build_bfs(eng, root, know);
    nbr = exchange_ancestors(eng, know);
    inst = make_instance(g, know, nbr, 0);
    run_eta_stage(eng, know, nbr, inst);
    run_zeta_stage(eng, know, nbr, inst);
  }
};

Graph theta() {
  // hubs 0 and 1 joined by three paths of length 2
  Graph g(5);
  for (Vertex mid : {2, 3, 4}) {
    g.add_edge(0, mid);
    g.add_edge(mid, 1);
  }
  return g;
}

// Fold of Z_{a'}^v over a' in desc(a), evaluated centrally.
ZetaElement fold_z(const Global& s, Vertex a, int l) {
  ZetaElement acc = ZetaElement::identity();
  for (Vertex b = 0; b < s.g.n(); ++b)
    if (s.tree.is_ancestor(a, b)) acc = zeta_combine(acc, s.inst.Z[b][l]);
  return acc;
}

// The three-valued property evaluated directly on the edge set it describes:
// edges of delta(desc v) minus (pi v, v) with one end in desc a.
ZetaElement property_z(const Global& s, Vertex a, int l) {
  const Vertex v = s.tree.ancestor_at(a, l);
  VertexSet da = s.tree.desc(a), dv = s.tree.desc(v);
  std::map<Vertex, int> targets;
  for (EdgeId e = 0; e < s.g.m(); ++e) {
    if (e == s.tree.parent_edge[v]) continue;
    Vertex x = s.g.edge(e).u, y = s.g.edge(e).v;
    if (dv.contains(x) == dv.contains(y)) continue;
    if (!da.contains(x) && !da.contains(y)) continue;
    Vertex out = dv.contains(x) ? y : x;
    if (s.tree.level[out] < l) return ZetaElement::absorbing();
    ++targets[s.tree.ancestor_at(out, l)];
  }
  if (targets.empty()) return ZetaElement::identity();
  if (targets.size() > 1) return ZetaElement::absorbing();
  Vertex w = targets.begin()->first;
  int eta_w = boundary(s.g, s.tree.desc(w)).size();
  return ZetaElement::tuple(w, s.tree.parent[w], eta_w, targets.begin()->second, s.tree.lca(a, w));
}

}  // namespace

TEST_CASE("zeta operator table") {
  auto t = ZetaElement::tuple(3, 0, 2, 1, 0);
  CHECK(zeta_combine(ZetaElement::identity(), t) == t);
  CHECK(zeta_combine(t, ZetaElement::absorbing()) == ZetaElement::absorbing());
  CHECK(zeta_combine(t, ZetaElement::tuple(3, 0, 2, 2, 0)) == ZetaElement::tuple(3, 0, 2, 3, 0));
  CHECK(zeta_combine(t, ZetaElement::tuple(4, 0, 2, 1, 0)) == ZetaElement::absorbing());
  std::vector<ZetaElement> samples{ZetaElement::identity(), ZetaElement::absorbing(), t,
                                   ZetaElement::tuple(3, 0, 2, 5, 0), ZetaElement::tuple(4, 0, 2, 1, 0)};
  CHECK_NOTHROW(check_semigroup(zeta_spec(Codec{4}), samples, 500));
}

TEST_CASE("C4 tables") {
  Global s(cycle_graph(4), 0);
  // H_2^1: neighbours of 2 outside desc(1) = {3}
  CHECK(s.inst.H[2][1] == 1);
  CHECK(s.inst.eta_of(s.know[1]) == 2);
  CHECK(s.inst.eta_of(s.know[2]) == 2);
  CHECK(s.inst.eta_of(s.know[3]) == 2);
  CHECK(s.inst.Z[2][1] == ZetaElement::tuple(3, 0, 2, 1, 0));
  CHECK(s.inst.Zdesc[2][1] == ZetaElement::tuple(3, 0, 2, 1, 0));
  auto rep = detect_2cuts(s.g, s.tree, s.know, s.inst, 0);
  CHECK(rep.size() == 6);
  auto oracle = min_cut_oracle(s.g);
  CHECK(rep.keys() == oracle.min_cuts);
  CHECK(rep.find({{0, 1}, {1, 2}})->label == "2-nested");
  CHECK(rep.find({{0, 1}, {0, 3}})->label == "2-disjoint");
  CHECK(rep.find({{0, 3}, {1, 2}})->label == "2-disjoint");
}

TEST_CASE("small instances") {
  Global p4(path_graph(4), 0);
  for (Vertex v = 1; v < 4; ++v) {
    CHECK(p4.inst.eta_of(p4.know[v]) == 1);
    for (int l = 1; l < p4.tree.level[v]; ++l) CHECK(p4.inst.H[v][l] == 0);
  }
  CHECK(detect_1cuts(p4.g, p4.know, p4.inst, 0).size() == 3);

  Global k4(complete_graph(4), 0);
  for (Vertex v = 1; v < 4; ++v) CHECK(k4.inst.eta_of(k4.know[v]) == 3);
  CHECK(k4.inst.Z[1][1] == ZetaElement::absorbing());

  Graph star(6);
  for (int i = 1; i < 6; ++i) star.add_edge(0, i);
  Global st(star, 0);
  CHECK(st.inst.H[3][0] == 0);
  for (int l = 0; l <= 1; ++l) CHECK(st.inst.Z[3][l] == ZetaElement::identity());

  Global c5(cycle_graph(5), 0);
  CHECK(detect_1cuts(c5.g, c5.know, c5.inst, 0).empty());

  Global bb(barbell_graph(6), 0);
  auto rep = detect_1cuts(bb.g, bb.know, bb.inst, 0);
  CHECK(rep.keys() == min_cut_oracle(bb.g).min_cuts);

  Global th(theta(), 0);
  auto o = min_cut_oracle(th.g);
  CHECK(o.lambda == 2);
  CHECK(detect_2cuts(th.g, th.tree, th.know, th.inst, 0).keys() == o.min_cuts);
}

TEST_CASE("tables agree with centralized quantities") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 11);
    Global s(random_connected(n, rng(), 0.3), static_cast<Vertex>(rng() % n));
    for (Vertex a = 0; a < n; ++a) {
      const int la = s.tree.level[a];
      VertexSet da = s.tree.desc(a);
      CHECK(s.inst.eta_of(s.know[a]) == boundary(s.g, da).size());
      for (int l = 0; l <= la; ++l) {
        VertexSet dv = s.tree.desc(s.tree.ancestor_at(a, l));
        CHECK(s.inst.H[a][l] == gamma(s.g, VertexSet(n, {a}), dv));
        CHECK(s.inst.Hdesc[a][l] == gamma(s.g, da, dv));
        CHECK(s.inst.H[a][l] <= s.inst.Hdesc[a][l]);
        CHECK(s.inst.Hdesc[a][l] <= s.inst.eta[a][l]);
        if (l >= 1) {
          CHECK(s.inst.Zdesc[a][l] == fold_z(s, a, l));
          CHECK(s.inst.Zdesc[a][l] == property_z(s, a, l));
        }
      }
      CHECK(s.inst.Hdesc[a][la] == s.inst.eta_of(s.know[a]));
    }
  }
}

TEST_CASE("size 1 and 2 completeness on random graphs under every root") {
  std::mt19937_64 rng(99);
  int lambda2 = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int n = 3 + static_cast<int>(rng() % 8);
    Graph g = random_connected(n, rng(), 0.25 + 0.3 * (trial % 3) / 2.0);
    auto o = min_cut_oracle(g);
    if (o.lambda > 2) continue;
    lambda2 += o.lambda == 2;
    for (Vertex r = 0; r < n; ++r) {
      Global s(g, r);
      CutReport rep = detect_1cuts(s.g, s.know, s.inst, 0);
      if (o.lambda == 2) rep = detect_2cuts(s.g, s.tree, s.know, s.inst, 0);
      CHECK(rep.keys() == o.min_cuts);
    }
  }
  CHECK(lambda2 > 10);
}
