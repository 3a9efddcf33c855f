#include <doctest.h>

#include "smallcut/generators.hpp"
#include "smallcut/tree.hpp"

#include <random>

using namespace smallcut;

namespace {

SemigroupSpec<int> sum_spec(int bits) {
  SemigroupSpec<int> s;
  s.name = "sum";
  s.combine = [](int a, int b) { return a + b; };
  s.encode = [bits](BitWriter& w, int x) { w.put(static_cast<uint64_t>(x), bits); };
  s.decode = [bits](BitReader& r) { return static_cast<int>(r.get(bits)); };
  s.element_bits = bits;
  s.identity = 0;
  return s;
}

SemigroupSpec<int> max_spec(int bits) {
  auto s = sum_spec(bits);
  s.name = "max";
  s.combine = [](int a, int b) { return std::max(a, b); };
  return s;
}

}  // namespace

TEST_CASE("bfs on C4 breaks ties by lowest id") {
  Graph c4 = cycle_graph(4);
  Engine eng(c4, {});
  std::vector<NodeKnowledge> know;
  BfsInfo t = build_bfs(eng, 0, know);
  CHECK(t.level == std::vector<int>{0, 1, 2, 1});
  CHECK(t.parent[2] == 1);
  CHECK(t.depth == 2);
  CHECK(t.ancestors[2] == std::vector<Vertex>{0, 1, 2});
  CHECK(know[3].depth == 2);
  CHECK(eng.stats().phase("bfs") != nullptr);
  CHECK(eng.stats().phase("broadcast1:ancestors") != nullptr);
}

TEST_CASE("bfs matches the centralized tree") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 30);
    Graph g = random_connected(n, rng(), 0.15);
    Vertex root = static_cast<Vertex>(rng() % n);
    Engine eng(g, {});
    std::vector<NodeKnowledge> know;
    BfsInfo t = build_bfs(eng, root, know);
    BfsInfo ref = reference_bfs(g, root);
    CHECK(t.parent == ref.parent);
    CHECK(t.level == ref.level);
    CHECK(t.children == ref.children);
    CHECK(t.ancestors == ref.ancestors);
    CHECK(t.depth == ref.depth);
    CHECK(t.depth <= measure_diameter(g));
  }
}

TEST_CASE("star and single vertex") {
  Graph star(6);
  for (int i = 1; i < 6; ++i) star.add_edge(0, i);
  Engine eng(star, {});
  std::vector<NodeKnowledge> know;
  CHECK(build_bfs(eng, 0, know).depth == 1);
  Graph one(1);
  Engine e1(one, {});
  CHECK(build_bfs(e1, 0, know).depth == 0);
  CHECK(e1.stats().total_messages == 0);
}

TEST_CASE("bfs rounds grow linearly with the diameter") {
  for (int side : {2, 4, 6, 8}) {
    Graph g = grid_graph(side, side);
    Engine eng(g, {});
    std::vector<NodeKnowledge> know;
    build_bfs(eng, 0, know);
    CHECK(eng.stats().phase("bfs")->rounds <= 4 * measure_diameter(g) + 4);
  }
  for (int k : {4, 9, 17}) {
    Graph p = path_graph(k);
    Engine eng(p, {});
    std::vector<NodeKnowledge> know;
    build_bfs(eng, 0, know);
    CHECK(eng.stats().phase("bfs")->rounds <= 4 * (k - 1) + 4);
  }
}

TEST_CASE("broadcast type 1 and type 2") {
  Graph p4 = path_graph(4);
  Engine eng(p4, {});
  std::vector<NodeKnowledge> know;
  build_bfs(eng, 0, know);
  auto got = broadcast_t1(eng, "broadcast1:test", know, {10, 11, 12, 13}, 4);
  CHECK(got[3] == std::vector<uint64_t>{10, 11, 12, 13});
  CHECK(got[0] == std::vector<uint64_t>{10});
  auto lists = broadcast_t2(eng, "broadcast2:test", know, {{}, {1}, {2, 3}, {4, 5, 6}}, 4);
  CHECK(lists[3][2] == std::vector<uint64_t>{2, 3});
  CHECK(lists[3][1] == std::vector<uint64_t>{1});
  CHECK(lists[2][0].empty());
}

TEST_CASE("broadcast costs") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 5 + static_cast<int>(rng() % 40);
    Graph g = random_connected(n, rng(), 0.08);
    Engine eng(g, {});
    std::vector<NodeKnowledge> know;
    BfsInfo t = build_bfs(eng, 0, know);
    const int w = eng.word_bits();
    std::vector<uint64_t> vals(n);
    std::vector<std::vector<uint64_t>> lists(n);
    for (int v = 0; v < n; ++v) {
      vals[v] = static_cast<uint64_t>(v);
      for (int i = 0; i < t.depth; ++i) lists[v].push_back(static_cast<uint64_t>((v + i) % n));
    }
    auto got = broadcast_t1(eng, "b1", know, vals, w);
    for (int v = 0; v < n; ++v)
      for (int l = 0; l <= t.level[v]; ++l) CHECK(got[v][l] == static_cast<uint64_t>(t.ancestors[v][l]));
    broadcast_t2(eng, "b2", know, lists, w);
    const int d = std::max(1, t.depth);
    CHECK(eng.stats().phase("b1")->rounds <= 2 * (d + 2));
    CHECK(eng.stats().phase("b2")->rounds <= 2 * (d * (d + 1) + 2));
  }
}

TEST_CASE("trsf: subtree sizes and maxima") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + static_cast<int>(rng() % 25);
    Graph g = random_connected(n, rng(), 0.2);
    Engine eng(g, {});
    std::vector<NodeKnowledge> know;
    BfsInfo t = build_bfs(eng, static_cast<Vertex>(rng() % n), know);
    const int bits = 2 * eng.word_bits();
    std::vector<std::vector<int>> ones(n), ids(n);
    for (int v = 0; v < n; ++v) {
      ones[v].assign(t.level[v] + 1, 1);
      ids[v].assign(t.level[v] + 1, v);
    }
    auto sz = trsf_compute(eng, know, sum_spec(bits), ones);
    auto mx = trsf_compute(eng, know, max_spec(bits), ids);
    for (int v = 0; v < n; ++v) {
      VertexSet d = t.desc(v);
      auto mem = d.members();
      CHECK(sz.f(know[v]) == d.size());
      CHECK(mx.f(know[v]) == *std::max_element(mem.begin(), mem.end()));
      // X_{desc a}^{alpha(a,l)} with X = 1 is |desc a| at every level
      for (int l = 0; l <= t.level[v]; ++l) CHECK(sz.xdesc[v][l] == d.size());
    }
    CHECK(eng.stats().phase("trsf:sum")->rounds <= eng.slot_for(3 * eng.word_bits()) * (t.depth + 2));
  }
}

TEST_CASE("trsf wave schedule") {
  Graph g = grid_graph(3, 4);
  Engine eng(g, {});
  std::vector<NodeKnowledge> know;
  BfsInfo t = build_bfs(eng, 0, know);
  const int w = eng.word_bits();
  std::vector<std::vector<int>> ones(g.n());
  for (int v = 0; v < g.n(); ++v) ones[v].assign(t.level[v] + 1, 1);
  int checked = 0;
  eng.set_trace([&](const TraceEvent& ev) {
    if (ev.phase != "trsf:sum") return;
    BitReader r = ev.msg->reader();
    int l = static_cast<int>(r.get(w));
    int lv = t.level[ev.msg->from];
    CHECK(ev.step == t.depth - lv + l + 1);
    ++checked;
  });
  trsf_compute(eng, know, sum_spec(2 * w), ones);
  CHECK(checked > 0);
}

TEST_CASE("semigroup sampling catches a bad spec") {
  auto bad = sum_spec(8);
  bad.name = "minus";
  bad.combine = [](int a, int b) { return a - b; };
  CHECK_THROWS_AS(check_semigroup(bad, std::vector<int>{1, 2, 3, 4}, 50), std::logic_error);
  CHECK_NOTHROW(check_semigroup(sum_spec(8), std::vector<int>{1, 2, 3, 4}, 50));
}
