#pragma once

#include "smallcut/small_cuts.hpp"
#include "smallcut/tree.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace smallcut {

// Rooted tree given by a parent map; the root maps to -1.
using ParentMap = std::map<Vertex, Vertex>;

// Branching numbers of every node of t. Degree counts the parent edge.
std::map<Vertex, int> branching_numbers(const ParentMap& t);
int branching_number(const ParentMap& t, Vertex b);

// Source set of a canonical tree: {v}, desc(v) or desc(v) \ desc(x).
struct SketchSource {
  enum class Kind { Node, Desc, Reduced };
  Kind kind = Kind::Desc;
  Vertex owner = -1;
  Vertex excluded = -1;

  static SketchSource node(Vertex v) { return {Kind::Node, v, -1}; }
  static SketchSource desc(Vertex v) { return {Kind::Desc, v, -1}; }
  static SketchSource reduced(Vertex v, Vertex x) { return {Kind::Reduced, v, x}; }
  VertexSet members(const BfsInfo& t) const;
};

struct CanonicalTree {
  SketchSource source;
  ParentMap parent;              // rho(owner) plus every rho(y), y a non-tree neighbour of the source
  std::set<Vertex> supported;    // ancestors-or-self of those neighbours
  std::vector<Vertex> targets;   // the neighbours themselves, ascending
};

CanonicalTree build_canonical(const BfsInfo& t, const Graph& g, const SketchSource& s);

struct SketchNode {
  Vertex id = -1;
  Vertex parent = -1;
  int eta = 0;
  int gamma = 0;         // gamma(source, desc id); 0 for interior nodes
  bool support = false;  // lies on a path to a non-tree neighbour of the source
  bool cut = false;      // a supported child was truncated away
  bool operator==(const SketchNode&) const = default;
};

struct SketchTree {
  Vertex owner = -1;
  Vertex excluded = -1;
  int k = 0;
  std::vector<SketchNode> nodes;  // ascending id

  bool contains(Vertex u) const { return find(u) != nullptr; }
  const SketchNode* find(Vertex u) const;
  // gamma for u; absent nodes count 0 when their deepest present ancestor
  // lost nothing to truncation, otherwise the value is unknown
  std::optional<int> gamma_of(Vertex u, const std::vector<Vertex>& anc_of_u) const;
  size_t size() const { return nodes.size(); }
  // root first, children by ascending id
  std::vector<Vertex> preorder() const;
  // branching numbers inside the supported part; unsupported nodes get 0
  std::map<Vertex, int> xi() const;
  // "id parent eta gamma xi" per node, preorder
  std::string dump() const;
  bool operator==(const SketchTree& o) const { return nodes == o.nodes; }
};

// Fixed-width record of one node.
Layout sketch_node_layout(const Codec& c);
Fields encode_node(const SketchNode& s);
SketchNode decode_node(const Fields& f);
std::vector<Fields> serialize(const SketchTree& s);
long sketch_bits(const SketchTree& s, const Codec& c);

// Node-count ceiling for a k-sketch on a tree of the given depth.
size_t sketch_node_bound(int k, int depth);

// Centralized construction with exact eta and gamma.
SketchTree reference_k_sketch(const BfsInfo& t, const Graph& g, const SketchSource& s, int k);

// Untruncated sketch of the single-node source {a}, built from a's own
// knowledge: neighbour ancestor lists, eta on the ancestors of every non-tree
// neighbour, eta on rho(a) and H_a.
SketchTree local_sketch(const Graph& g, const NodeKnowledge& k,
                        const std::vector<std::vector<Vertex>>& nbr_anc,
                        const std::vector<std::vector<int>>& nbr_eta,
                        const std::vector<int>& own_eta, const std::vector<int>& own_H);

// Union of sketches whose sources partition the target source, followed by
// truncation. spine = rho(owner), root first. parent_side is the input whose
// source holds the parent of the excluded node. Throws ProtocolError when
// the result exceeds sketch_node_bound(k, depth).
SketchTree merge_sketches(Vertex owner, Vertex excluded, const std::vector<Vertex>& spine,
                          const std::vector<const SketchTree*>& inputs, int k, int depth,
                          const SketchTree* parent_side = nullptr);

struct SketchTables {
  std::vector<SketchTree> local;                 // [v]
  std::vector<SketchTree> s3;                    // S_3(v)
  std::vector<SketchTree> s2;                    // S_2(v)
  std::vector<std::vector<SketchTree>> s2_minus_child;  // [v][i] = S_2(v \ children[i])
  std::vector<std::vector<SketchTree>> reduced;  // [x][l] = S_2(alpha(x,l) \ x), l < level(x)
  std::vector<std::vector<SketchTree>> anc_s3;   // [u][l] = S_3(alpha(u,l)), 1 <= l < level(u)
};

// Called at u once the stream over non-tree port p has ended; nbr[l] is
// S_3 of the neighbour's ancestor at level l (entry 0 left empty).
using SketchStreamHook =
    std::function<void(Vertex u, size_t port, const std::vector<SketchTree>& nbr)>;

// Fixed-window convergecast of S_k (phase "sketch:k<k>"). With reduced set,
// every node also forms S_k(v \ c) for each child c.
void run_sketch_convergecast(Engine& eng, const std::vector<NodeKnowledge>& know, int k,
                             bool reduced, SketchTables& out);

// Phase "broadcast2:reduced" and the local chain recombination at every x.
void run_reduced_sketches(Engine& eng, const std::vector<NodeKnowledge>& know, SketchTables& out);

// Phases "broadcast2:sketch3" and "exchange:sketch3".
void run_sketch3_spread(Engine& eng, const std::vector<NodeKnowledge>& know,
                        const PortAncestors& nbr, SketchTables& out, const SketchStreamHook& hook);

// Local sketches, S_3, S_2 with the per-child exclusions and the reduced
// chains, for the global instance.
SketchTables compute_sketches(Engine& eng, const std::vector<NodeKnowledge>& know,
                              const PortAncestors& nbr, const InstanceTables& inst);

}  // namespace smallcut
