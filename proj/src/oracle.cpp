#include "smallcut/oracle.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/stoer_wagner_min_cut.hpp>
#include <boost/property_map/property_map.hpp>

#include <algorithm>
#include <cstdlib>
#include <string>

namespace smallcut {

int oracle_limit() {
  if (const char* s = std::getenv("MINCUT_ORACLE_LIMIT")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v >= 1 && v <= 30) return static_cast<int>(v);
  }
  return 16;
}

namespace {

// Walks every A subset of {1..n-1} in Gray-code order, maintaining delta(A)
// by xoring incidence vectors, and hands each non-empty A to visit().
template <class Visit>
void for_each_side(const Graph& g, Visit&& visit) {
  const int n = g.n();
  std::vector<boost::dynamic_bitset<>> inc(static_cast<size_t>(n),
                                          boost::dynamic_bitset<>(static_cast<size_t>(g.m())));
  for (EdgeId e = 0; e < g.m(); ++e) {
    inc[g.edge(e).u].set(static_cast<size_t>(e));
    inc[g.edge(e).v].set(static_cast<size_t>(e));
  }
  boost::dynamic_bitset<> cur(static_cast<size_t>(g.m()));
  const uint64_t total = uint64_t{1} << (n - 1);
  uint64_t side = 0;
  for (uint64_t i = 1; i < total; ++i) {
    int bit = __builtin_ctzll(i);
    side ^= uint64_t{1} << bit;
    cur ^= inc[bit + 1];
    visit(side, cur);
  }
}

CutKey key_of(const Graph& g, const boost::dynamic_bitset<>& bits) {
  std::vector<EdgeId> ids;
  for (auto i = bits.find_first(); i != boost::dynamic_bitset<>::npos; i = bits.find_next(i))
    ids.push_back(static_cast<EdgeId>(i));
  return canonical(g, ids);
}

void check_limit(const Graph& g, int limit) {
  if (g.n() > limit)
    throw CapacityError("oracle enumeration limited to n <= " + std::to_string(limit) +
                        " (graph has n = " + std::to_string(g.n()) +
                        "); use connectivity-only mode or raise MINCUT_ORACLE_LIMIT");
  if (!g.connected()) throw InputError("oracle requires a connected graph");
}

}  // namespace

OracleResult min_cut_oracle(const Graph& g) { return min_cut_oracle(g, oracle_limit()); }

OracleResult min_cut_oracle(const Graph& g, int limit) {
  check_limit(g, limit);
  OracleResult res;
  if (g.n() < 2) return res;
  res.lambda = g.m() + 1;
  for_each_side(g, [&](uint64_t, const boost::dynamic_bitset<>& cut) {
    int c = static_cast<int>(cut.count());
    if (c < res.lambda) {
      res.lambda = c;
      res.min_cuts.clear();
    }
    if (c == res.lambda) res.min_cuts.push_back(key_of(g, cut));
  });
  std::sort(res.min_cuts.begin(), res.min_cuts.end());
  res.min_cuts.erase(std::unique(res.min_cuts.begin(), res.min_cuts.end()), res.min_cuts.end());
  return res;
}

std::vector<CutKey> small_cuts(const Graph& g, int max_size, int limit) {
  check_limit(g, limit);
  std::vector<CutKey> out;
  if (g.n() < 2) return out;
  for_each_side(g, [&](uint64_t, const boost::dynamic_bitset<>& cut) {
    if (static_cast<int>(cut.count()) <= max_size) out.push_back(key_of(g, cut));
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int edge_connectivity(const Graph& g) {
  if (!g.connected()) return 0;
  if (g.n() < 2) return 0;
  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                       boost::no_property,
                                       boost::property<boost::edge_weight_t, int>>;
  BGraph bg(static_cast<size_t>(g.n()));
  for (const auto& e : g.edges()) boost::add_edge(e.u, e.v, 1, bg);
  return boost::stoer_wagner_min_cut(bg, boost::get(boost::edge_weight, bg));
}

}  // namespace smallcut
