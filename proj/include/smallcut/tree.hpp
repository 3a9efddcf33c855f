#pragma once

#include "smallcut/engine.hpp"
#include "smallcut/graph.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace smallcut {

// Centralized view of a rooted spanning tree. Assembled by the observer from
// node outputs after BFS, and used directly by the reference constructions.
struct BfsInfo {
  Vertex root = 0;
  int depth = 0;
  std::vector<Vertex> parent;       // -1 at the root
  std::vector<EdgeId> parent_edge;  // -1 at the root
  std::vector<int> level;
  std::vector<std::vector<Vertex>> children;   // ascending ids
  std::vector<std::vector<Vertex>> ancestors;  // root..v inclusive

  int n() const { return static_cast<int>(parent.size()); }
  // a in A(v), i.e. v in desc(a)
  bool is_ancestor(Vertex a, Vertex v) const {
    return level[a] <= level[v] && ancestors[v][level[a]] == a;
  }
  Vertex ancestor_at(Vertex v, int l) const { return ancestors[v][l]; }
  Vertex lca(Vertex a, Vertex b) const;
  bool is_tree_edge(const Graph& g, EdgeId e) const;
  VertexSet desc(Vertex v) const;
};

// Tree from an arbitrary parent array (used for the equivalence suites that range
// over all spanning trees, not only BFS trees).
BfsInfo tree_from_parents(const Graph& g, Vertex root, const std::vector<Vertex>& parent);
// Centralized BFS with the same tie-break as the protocol.
BfsInfo reference_bfs(const Graph& g, Vertex root);

// Everything a single vertex has learned. Programs for vertex v receive
// only know[v]; neighbour facts arrive through exchange phases.
struct NodeKnowledge {
  Vertex id = -1;
  Vertex parent = -1;
  EdgeId parent_edge = -1;
  int level = -1;
  int depth = 0;  // Depth(T), learned at the end of BFS
  std::vector<Vertex> children;
  std::vector<EdgeId> child_edges;
  std::vector<Vertex> anc;  // A(v), index = level

  bool is_root() const { return parent < 0; }
  bool has_ancestor(Vertex a, int a_level) const {
    return a_level <= level && anc[a_level] == a;
  }
};

// Fixed-width record: one value per field.
using Fields = std::vector<uint64_t>;
struct Layout {
  std::vector<int> widths;
  int bits() const {
    int b = 0;
    for (int w : widths) b += w;
    return b;
  }
  void write(BitWriter& out, const Fields& f) const;
  Fields read(BitReader& in) const;
};

// ---- BFS --------------------------------------------------------------

// Builds the BFS tree (phase "bfs") and disseminates ancestor ids
// (phase "broadcast1:ancestors"). Fills know[v] for every v.
BfsInfo build_bfs(Engine& eng, Vertex root, std::vector<NodeKnowledge>& know);

// ---- Downcast ---------------------------------------------------------

// Pipelined downward stream. Each node v emits own[v][i] to the i-th
// child (in child order) and forwards everything it gets from its parent
// to all children. Returns, per node, the records received from the parent
// in arrival order. With lo > 0 nodes above level lo stay silent and every
// node at level lo starts its own stream.
std::vector<std::vector<Fields>> downcast(Engine& eng, const std::string& label,
                                          const std::vector<NodeKnowledge>& know,
                                          const Layout& layout,
                                          const std::vector<std::vector<std::vector<Fields>>>& own,
                                          int lo = 0);

// Broadcast Type-1: one value per node, delivered to every descendant.
// Result[u][l] = value of the ancestor of u at level l (own value included);
// entries for levels below lo are left 0.
std::vector<std::vector<uint64_t>> broadcast_t1(Engine& eng, const std::string& label,
                                                const std::vector<NodeKnowledge>& know,
                                                const std::vector<uint64_t>& value,
                                                int value_bits, int lo = 0);

// Broadcast Type-2: a list of values per node, delivered to every descendant.
// Result[u][l] = list of the ancestor at level l (own list included).
std::vector<std::vector<std::vector<uint64_t>>> broadcast_t2(
    Engine& eng, const std::string& label, const std::vector<NodeKnowledge>& know,
    const std::vector<std::vector<uint64_t>>& lists, int value_bits);

// ---- Neighbour exchange ----------------------------------------------

// Streams per-port record lists to neighbours. out[v][p] is sent over
// port p of v (port order = g.adj(v)); active[v][p] must agree at both
// ends of an edge. Result[v][p] = records received over port p.
std::vector<std::vector<std::vector<Fields>>> neighbor_exchange(
    Engine& eng, const std::string& label, const Layout& layout,
    const std::vector<std::vector<char>>& active,
    const std::vector<std::vector<std::vector<Fields>>>& out);

// ---- Tree restricted semigroup function --------------------------------

template <class T>
struct SemigroupSpec {
  std::string name;
  std::function<T(const T&, const T&)> combine;
  std::function<void(BitWriter&, const T&)> encode;
  std::function<T(BitReader&)> decode;
  int element_bits = 0;
  std::optional<T> identity;
};

template <class T>
struct TrsfResult {
  // xdesc[a][l] = X_{desc a}^{alpha(a,l)} for lo <= l <= level(a)
  std::vector<std::vector<T>> xdesc;
  // f(a) = xdesc[a][level(a)]
  T f(const NodeKnowledge& k) const { return xdesc[k.id][k.level]; }
};

// Checks commutativity and associativity on sampled triples; throws
// std::logic_error naming the spec on the first failure.
template <class T>
void check_semigroup(const SemigroupSpec<T>& spec, const std::vector<T>& samples, size_t budget);

// Wave schedule: a node at level l idles, then sends the tuple for ancestor
// level j at step Depth - l + j + 1 - lo. atomic[a][j] = X_a^{alpha(a,j)} for
// j in [lo, level(a)]. Nodes with level < lo take no part, so with lo = P
// every subtree rooted at level P runs its own instance at the same time.
template <class T>
TrsfResult<T> trsf_compute(Engine& eng, const std::vector<NodeKnowledge>& know,
                           const SemigroupSpec<T>& spec, const std::vector<std::vector<T>>& atomic,
                           int lo = 0, const std::string& label = "");

}  // namespace smallcut

#include "smallcut/trsf_impl.hpp"
