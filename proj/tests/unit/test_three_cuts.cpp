#include <doctest.h>

#include "fixtures.hpp"
#include "smallcut/generators.hpp"
#include "smallcut/oracle.hpp"
#include "smallcut/three_cuts.hpp"

#include <map>
#include <sstream>
#include <random>

using namespace smallcut;

namespace {

struct Run {
  Graph g;
  Engine eng;
  std::vector<NodeKnowledge> know;
  BfsInfo tree;
  PortAncestors nbr;
  InstanceTables inst;
  Size3Result res;

  Run(Graph graph, Vertex root) : g(std::move(graph)), eng(g, {}) {
    tree = build_bfs(eng, root, know);
    nbr = exchange_ancestors(eng, know);
    inst = make_instance(g, know, nbr, 0);
    run_eta_stage(eng, know, nbr, inst);
    run_zeta_stage(eng, know, nbr, inst);
    res = run_size3(eng, tree, know, nbr, inst);
  }
};

std::string keys_str(const std::vector<CutKey>& ks) {
  std::string s;
  for (const auto& k : ks) s += to_string(k) + " ";
  return s;
}

// Random graphs with edge connectivity exactly 3.
std::vector<Graph> lambda3_corpus(uint64_t seed, int count, int nmin, int nmax) {
  std::mt19937_64 rng(seed);
  std::vector<Graph> out;
  while (static_cast<int>(out.size()) < count) {
    int n = nmin + static_cast<int>(rng() % static_cast<uint64_t>(nmax - nmin + 1));
    double p = 0.3 + 0.05 * static_cast<double>(rng() % 6);
    Graph g = random_connected(n, rng(), p);
    if (g.min_degree() < 3) continue;
    if (edge_connectivity(g) != 3) continue;
    out.push_back(std::move(g));
  }
  return out;
}

constexpr size_t BLOBS = 2000;

}  // namespace

TEST_CASE("case classification") {
  Graph k4 = complete_graph(4);
  BfsInfo t = reference_bfs(k4, 0);
  for (Vertex v = 1; v < 4; ++v)
    CHECK(classify_cut(k4, t, boundary(k4, VertexSet(4, {v})).key(k4)) == CaseLabel::Case1);
  CHECK(classify_cut(k4, t, boundary(k4, VertexSet(4, {0})).key(k4)) == CaseLabel::Case6);
  CHECK_FALSE(classify_cut(k4, t, {{0, 1}, {0, 2}}).has_value());
}

TEST_CASE("K4 and prism") {
  for (Vertex r = 0; r < 4; ++r) {
    Run s(complete_graph(4), r);
    CHECK(s.res.all.keys() == min_cut_oracle(s.g).min_cuts);
    CHECK(s.res.of(CaseLabel::Case4).empty());
    CHECK(s.res.of(CaseLabel::Case5).empty());
  }
  for (Vertex r = 0; r < 6; ++r) {
    Run s(prism_graph(3), r);
    CHECK(s.res.all.keys() == min_cut_oracle(s.g).min_cuts);
  }
}

TEST_CASE("C5 gives no size 3 reports") {
  Run s(cycle_graph(5), 0);
  CHECK(s.res.of(CaseLabel::Case1).empty());
  CHECK(s.res.of(CaseLabel::Case2).empty());
  CHECK(s.res.of(CaseLabel::Case7).empty());
}

TEST_CASE("detail layouts round trip") {
  Codec c{5};
  CHECK(one_cut_layout(c).bits() == 8 * 5);
  CHECK(two_cut_layout(c).bits() == 18 * 5);
}

TEST_CASE("size 3 exactness under every root") {
  std::map<CaseLabel, int> seen;
  std::vector<Graph> corpus = lambda3_corpus(7, 80, 5, 10);
  for (uint64_t seed = 1; corpus.size() < 80 + BLOBS; ++seed) {
    Graph g = seed % 2 ? fixtures::blob_graph(seed) : fixtures::blob_chain(seed);
    if (g.n() >= 4 && g.connected() && g.min_degree() >= 3 && edge_connectivity(g) == 3)
      corpus.push_back(std::move(g));
  }
  for (const Graph& g : corpus) {
    auto o = min_cut_oracle(g);
    REQUIRE(o.lambda == 3);
    for (Vertex r = 0; r < g.n(); ++r) {
      Run s(g, r);
      INFO("graph:\n", [&] {
        std::ostringstream os;
        write_edge_list(os, g);
        return os.str();
      }(), "root ", r);
      for (const auto& e : s.res.all.entries()) {
        CHECK(e.size() == 3);
        CHECK(is_induced_cut(g, EdgeSet::of(g, e.edges)).has_value());
      }
      CHECK(keys_str(s.res.all.keys()) == keys_str(o.min_cuts));
      for (const auto& k : o.min_cuts) {
        auto c = classify_cut(g, s.tree, k);
        REQUIRE(c.has_value());
        ++seen[*c];
        INFO("cut ", to_string(k), " class ", case_name(*c));
        CHECK(s.res.of(*c).contains(k));
      }
    }
  }
  for (int c = 1; c <= 7; ++c) MESSAGE(case_name(static_cast<CaseLabel>(c)), " ", seen[static_cast<CaseLabel>(c)]);
}

TEST_CASE("fixtures per case are found under several roots") {
  for (int c = 2; c <= 7; ++c) {
    const auto label = static_cast<CaseLabel>(c);
    auto fx = fixtures::case_fixtures(label, 3);
    CHECK(fx.size() == 3);
    for (const auto& f : fx) {
      INFO(f.name, " cut ", to_string(f.cut));
      auto o = min_cut_oracle(f.g);
      for (int i = 0; i < 3; ++i) {
        Vertex r = static_cast<Vertex>((f.root + i) % f.g.n());
        Run s(f.g, r);
        CHECK(s.res.all.keys() == o.min_cuts);
        if (i == 0) CHECK(s.res.of(label).contains(f.cut));
      }
    }
  }
  for (const auto& [name, g] : fixtures::named_lambda3()) {
    INFO(name);
    auto o = min_cut_oracle(g);
    CHECK(o.lambda == 3);
    for (Vertex r = 0; r < g.n(); ++r) CHECK(Run(g, r).res.all.keys() == o.min_cuts);
  }
}

TEST_CASE("nested chains under every root") {
  // triples of nested tree edges are rare under BFS trees; search for them
  auto fx = fixtures::case_fixtures(CaseLabel::Case4, 12);
  CHECK(fx.size() == 12);
  for (const auto& f : fx) {
    INFO(f.name);
    auto o = min_cut_oracle(f.g);
    for (Vertex r = 0; r < f.g.n(); ++r) {
      Run s(f.g, r);
      CHECK(s.res.all.keys() == o.min_cuts);
      if (r == f.root) CHECK(s.res.of(CaseLabel::Case4).contains(f.cut));
    }
  }
}

namespace {

// |delta(desc a)| restricted to the pivoted subgraph at v.
int eta_in_pivot(const Graph& g, const BfsInfo& t, Vertex v, Vertex a) {
  VertexSet dv = t.desc(v), da = t.desc(a);
  int c = 0;
  for (EdgeId e = 0; e < g.m(); ++e) {
    Vertex x = g.edge(e).u, y = g.edge(e).v;
    bool inside = (dv.contains(x) && dv.contains(y)) || e == t.parent_edge[v];
    if (inside && da.contains(x) != da.contains(y)) ++c;
  }
  return c;
}

}  // namespace

TEST_CASE("layered results match the pivoted subgraphs") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = trial % 2 ? fixtures::blob_graph(rng()) : random_connected(6 + trial % 5, rng(), 0.35);
    if (!g.connected()) continue;
    Run s(g, static_cast<Vertex>(rng() % static_cast<uint64_t>(g.n())));
    const auto& t = s.tree;
    for (Vertex a = 0; a < g.n(); ++a) {
      std::vector<int> expect;
      for (int p = 1; p < t.level[a]; ++p)
        if (eta_in_pivot(g, t, t.ancestor_at(a, p), a) == 1) expect.push_back(p);
      CHECK(s.res.layered.one_cut_levels[a] == expect);
      // persistence: once a 1-cut, a 1-cut for every deeper pivot above a
      for (size_t i = 1; i < expect.size(); ++i) CHECK(expect[i] == expect[i - 1] + 1);
      if (!expect.empty()) CHECK(expect.back() == t.level[a] - 1);

      // disjoint 2-cuts (a, b), level(b) <= level(a), per pivot
      std::vector<std::pair<int, Vertex>> pairs, got;
      for (int p = 1; p < t.level[a]; ++p) {
        const Vertex v = t.ancestor_at(a, p);
        for (Vertex b = 0; b < g.n(); ++b) {
          if (b == v || !t.is_ancestor(v, b) || t.level[b] > t.level[a]) continue;
          if (t.is_ancestor(a, b) || t.is_ancestor(b, a)) continue;
          const int ga = gamma(g, t.desc(a), t.desc(b));
          if (ga > 0 && eta_in_pivot(g, t, v, a) == ga + 1 && eta_in_pivot(g, t, v, b) == ga + 1)
            pairs.emplace_back(p, b);
        }
      }
      for (const auto& [p, h] : s.res.layered.pair_hits[a]) got.emplace_back(p, h.other);
      std::sort(got.begin(), got.end());
      CHECK(got == pairs);

      const auto& d1 = s.res.layered.d1[a];
      CHECK(d1.has_value() == !expect.empty());
      if (d1) {
        CHECK(d1->pivot_level == expect.front());
        CHECK(d1->h == gamma(g, t.desc(a), t.desc(d1->pivot)));
        CHECK(d1->eta == boundary(g, t.desc(a)).size());
      }
      const auto& d2 = s.res.layered.d2[a];
      CHECK(d2.has_value() == !pairs.empty());
      if (d2) {
        const int p = pairs.front().first;
        Vertex b = -1;
        for (const auto& [q, x] : pairs)
          if (q == p && (b < 0 || std::make_pair(t.level[x], x) < std::make_pair(t.level[b], b)))
            b = x;
        CHECK(d2->pivot_level == p);
        CHECK(d2->b == b);
        CHECK(d2->lca == t.lca(a, b));
        CHECK(d2->lca_level == t.level[t.lca(a, b)]);
        CHECK(d2->eta_b == boundary(g, t.desc(b)).size());
        CHECK(d2->h_a == gamma(g, t.desc(a), t.desc(d2->pivot)));
        CHECK(d2->h_b == gamma(g, t.desc(b), t.desc(d2->pivot)));
        CHECK(d2->gamma == gamma(g, t.desc(a), t.desc(b)));
      }
    }
  }
}

TEST_CASE("details reach the LCA in every CASE5 instance") {
  int checked = 0;
  for (uint64_t seed = 1; checked < 60 && seed < 20000; ++seed) {
    Graph g = fixtures::blob_graph(seed);
    if (g.n() < 4 || !g.connected() || g.min_degree() < 3 || edge_connectivity(g) != 3) continue;
    auto o = min_cut_oracle(g);
    for (Vertex r = 0; r < g.n(); ++r) {
      BfsInfo t = reference_bfs(g, r);
      std::vector<const CutKey*> c5;
      for (const auto& k : o.min_cuts)
        if (classify_cut(g, t, k) == CaseLabel::Case5) c5.push_back(&k);
      if (c5.empty()) continue;
      Run s(g, r);
      for (const CutKey* k : c5) {
        std::vector<Vertex> low;
        for (auto [x, y] : *k) low.push_back(t.parent[y] == x ? y : x);
        std::sort(low.begin(), low.end(), [&](Vertex a, Vertex b) { return t.level[a] < t.level[b]; });
        const Vertex v2 = low[1], v3 = low[2], z = t.lca(v2, v3);
        const auto& in = s.res.inbox[z];
        INFO("seed ", seed, " root ", r, " cut ", to_string(*k));
        if (gamma(g, t.desc(v2), t.desc(v3)) == 0) {
          auto has = [&](Vertex a) {
            return std::any_of(in.d1.begin(), in.d1.end(), [&](const auto& x) { return x.second.a == a; });
          };
          CHECK(has(v2));
          CHECK(has(v3));
        } else {
          CHECK(std::any_of(in.d2.begin(), in.d2.end(), [&](const auto& x) {
            return (x.second.a == v2 && x.second.b == v3) || (x.second.a == v3 && x.second.b == v2);
          }));
        }
        ++checked;
      }
    }
  }
  CHECK(checked >= 60);
}
