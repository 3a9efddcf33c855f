#include "fixtures.hpp"

#include "smallcut/generators.hpp"
#include "smallcut/oracle.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <stdexcept>

namespace fixtures {

Graph blob_graph(uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int k = 2 + static_cast<int>(rng() % 3);
  std::vector<std::vector<Vertex>> blobs;
  int n = 0;
  for (int i = 0; i < k; ++i) {
    const int s = 1 + static_cast<int>(rng() % 4);
    blobs.emplace_back();
    for (int j = 0; j < s; ++j) blobs.back().push_back(n++);
  }
  std::set<std::pair<Vertex, Vertex>> edges;
  for (const auto& b : blobs)
    for (size_t i = 0; i < b.size(); ++i)
      for (size_t j = i + 1; j < b.size(); ++j) edges.emplace(b[i], b[j]);
  auto pick = [&](const std::vector<Vertex>& b) { return b[rng() % b.size()]; };
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const int mult = static_cast<int>(rng() % 4);
      for (int e = 0; e < mult; ++e) {
        Vertex x = pick(blobs[i]), y = pick(blobs[j]);
        edges.emplace(std::min(x, y), std::max(x, y));
      }
    }
  Graph g(n);
  for (auto [x, y] : edges) g.add_edge(x, y);
  return g;
}

Graph blob_chain(uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int k = 3 + static_cast<int>(rng() % 3);
  std::vector<std::vector<Vertex>> blobs;
  int n = 0;
  for (int i = 0; i < k; ++i) {
    const int s = 1 + static_cast<int>(rng() % 3);
    blobs.emplace_back();
    for (int j = 0; j < s; ++j) blobs.back().push_back(n++);
  }
  std::set<std::pair<Vertex, Vertex>> edges;
  for (const auto& b : blobs)
    for (size_t i = 0; i < b.size(); ++i)
      for (size_t j = i + 1; j < b.size(); ++j) edges.emplace(b[i], b[j]);
  auto pick = [&](const std::vector<Vertex>& b) { return b[rng() % b.size()]; };
  auto join = [&](int i, int j, int mult) {
    for (int e = 0; e < mult; ++e) {
      Vertex x = pick(blobs[i]), y = pick(blobs[j]);
      edges.emplace(std::min(x, y), std::max(x, y));
    }
  };
  for (int i = 0; i + 1 < k; ++i) join(i, i + 1, 1 + static_cast<int>(rng() % 3));
  for (int i = 0; i + 2 < k; ++i)
    if (rng() % 2) join(i, i + 2 + static_cast<int>(rng() % static_cast<uint64_t>(k - i - 2)), 1);
  Graph g(n);
  for (auto [x, y] : edges) g.add_edge(x, y);
  return g;
}

std::vector<CaseFixture> case_fixtures(CaseLabel c, int count) {
  std::vector<CaseFixture> out;
  for (uint64_t seed = 1; static_cast<int>(out.size()) < count && seed < 2'000'000; ++seed) {
    Graph g = blob_graph(seed);
    if (g.n() < 4 || !g.connected() || g.min_degree() < 3) continue;
    if (edge_connectivity(g) != 3) continue;
    auto o = min_cut_oracle(g);
    bool hit = false;
    for (Vertex r = 0; r < g.n() && !hit; ++r) {
      BfsInfo t = reference_bfs(g, r);
      for (const auto& cut : o.min_cuts)
        if (classify_cut(g, t, cut) == c) {
          out.push_back({case_name(c) + "/blob" + std::to_string(seed), g, r, c, cut});
          hit = true;
          break;
        }
    }
  }
  return out;
}

std::vector<std::pair<std::string, Graph>> named_lambda3() {
  std::vector<std::pair<std::string, Graph>> out;
  out.emplace_back("K4", complete_graph(4));
  out.emplace_back("prism3", prism_graph(3));
  out.emplace_back("prism4", prism_graph(4));
  Graph cube(8);
  for (Vertex v = 0; v < 8; ++v)
    for (int b = 0; b < 3; ++b)
      if (v < (v ^ (1 << b))) cube.add_edge(v, v ^ (1 << b));
  out.emplace_back("cube", cube);
  Graph pet(10);
  for (int i = 0; i < 5; ++i) {
    pet.add_edge(i, (i + 1) % 5);
    pet.add_edge(i, i + 5);
    pet.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  out.emplace_back("petersen", pet);
  return out;
}

}  // namespace fixtures

namespace fixtures {

namespace {

// Upper-triangle adjacency code, pair (j,i) for j < i in column order,
// first pair in the most significant position.
struct Canon {
  int n;
  int len;
  std::array<uint8_t, 8> adj{};
  std::array<int, 8> order{};  // position -> vertex
  std::array<bool, 8> used{};
  std::vector<int> cls;        // invariant class per vertex
  uint64_t best = ~uint64_t{0};

  int pair_index(int j, int i) const { return i * (i - 1) / 2 + j; }

  void place(int pos, uint64_t code) {
    if (pos > 1) {
      int have = pos * (pos - 1) / 2;
      uint64_t pre = code >> (len - have), bpre = best >> (len - have);
      if (best != ~uint64_t{0} && pre > bpre) return;
    }
    if (pos == n) {
      best = std::min(best, code);
      return;
    }
    // positions are filled class by class, so the class at pos is fixed
    int want = sorted_cls[pos];
    for (int v = 0; v < n; ++v) {
      if (used[v] || cls[v] != want) continue;
      used[v] = true;
      order[pos] = v;
      uint64_t c = code;
      for (int j = 0; j < pos; ++j)
        if (adj[order[j]] >> v & 1) c |= uint64_t{1} << (len - 1 - pair_index(j, pos));
      place(pos + 1, c);
      used[v] = false;
    }
  }
  std::vector<int> sorted_cls;
};

uint64_t canonical_code(int n, const std::array<uint8_t, 8>& adj) {
  Canon c;
  c.n = n;
  c.len = n * (n - 1) / 2;
  c.adj = adj;
  // degree, then the sorted neighbour degrees
  std::vector<std::vector<int>> inv(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    inv[v].push_back(__builtin_popcount(adj[v]));
    std::vector<int> nd;
    for (int u = 0; u < n; ++u)
      if (adj[v] >> u & 1) nd.push_back(__builtin_popcount(adj[u]));
    std::sort(nd.begin(), nd.end());
    inv[v].insert(inv[v].end(), nd.begin(), nd.end());
  }
  std::vector<std::vector<int>> keys(inv);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  c.cls.resize(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v)
    c.cls[v] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), inv[v]) - keys.begin());
  c.sorted_cls = c.cls;
  std::sort(c.sorted_cls.begin(), c.sorted_cls.end());
  c.place(0, 0);
  return c.best;
}

std::array<uint8_t, 8> decode(int n, uint64_t code) {
  std::array<uint8_t, 8> adj{};
  int len = n * (n - 1) / 2;
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (code >> (len - 1 - (i * (i - 1) / 2 + j)) & 1) {
        adj[i] |= static_cast<uint8_t>(1u << j);
        adj[j] |= static_cast<uint8_t>(1u << i);
      }
  return adj;
}

}  // namespace

std::vector<Graph> graph_classes(int n, bool connected_only) {
  if (n < 1 || n > 8) throw std::invalid_argument("graph_classes supports 1 <= n <= 8");
  static std::vector<std::vector<uint64_t>> memo = {{}, {0}};
  while (static_cast<int>(memo.size()) <= n) {
    int k = static_cast<int>(memo.size());  // building classes on k vertices
    std::set<uint64_t> next;
    for (uint64_t code : memo[k - 1]) {
      auto base = decode(k - 1, code);
      for (uint32_t mask = 0; mask < (1u << (k - 1)); ++mask) {
        auto adj = base;
        adj[k - 1] = static_cast<uint8_t>(mask);
        for (int j = 0; j < k - 1; ++j)
          if (mask >> j & 1) adj[j] |= static_cast<uint8_t>(1u << (k - 1));
        next.insert(canonical_code(k, adj));
      }
    }
    memo.emplace_back(next.begin(), next.end());
  }
  std::vector<Graph> out;
  for (uint64_t code : memo[n]) {
    auto adj = decode(n, code);
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (adj[u] >> v & 1) g.add_edge(u, v);
    if (!connected_only || g.connected()) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace fixtures
