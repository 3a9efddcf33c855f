#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace smallcut {

using Vertex = int;
using EdgeId = int;

// Thrown for malformed input (bad ids, self loops, duplicate edges,
// disconnected graphs). The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  Vertex u;
  Vertex v;
};

struct Incidence {
  Vertex nbr;
  EdgeId edge;
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int n() const { return static_cast<int>(adj_.size()); }
  int m() const { return static_cast<int>(edges_.size()); }

  // Edge ids are handed out in insertion order.
  EdgeId add_edge(Vertex u, Vertex v);

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Incidence>& adj(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;
  Vertex other(EdgeId e, Vertex x) const {
    return edges_[e].u == x ? edges_[e].v : edges_[e].u;
  }

  bool connected() const;
  int min_degree() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adj_;
};

class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : bits_(static_cast<size_t>(n)) {}
  VertexSet(int n, std::initializer_list<Vertex> vs);
  static VertexSet from_mask(int n, uint64_t mask);

  int universe() const { return static_cast<int>(bits_.size()); }
  bool contains(Vertex v) const { return bits_.test(static_cast<size_t>(v)); }
  void insert(Vertex v) { bits_.set(static_cast<size_t>(v)); }
  void erase(Vertex v) { bits_.reset(static_cast<size_t>(v)); }
  int size() const { return static_cast<int>(bits_.count()); }
  bool empty() const { return bits_.none(); }
  std::vector<Vertex> members() const;

  VertexSet& operator^=(const VertexSet& o);
  VertexSet& operator|=(const VertexSet& o);
  VertexSet& operator&=(const VertexSet& o);
  friend VertexSet operator^(VertexSet a, const VertexSet& b) { return a ^= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  VertexSet complement() const;
  bool operator==(const VertexSet& o) const { return bits_ == o.bits_; }

  const boost::dynamic_bitset<>& bits() const { return bits_; }

 private:
  boost::dynamic_bitset<> bits_;
};

using EdgePair = std::pair<Vertex, Vertex>;
// Canonical form of an edge set: sorted normalized pairs, min endpoint first.
using CutKey = std::vector<EdgePair>;

class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(int m) : bits_(static_cast<size_t>(m)) {}
  static EdgeSet of(const Graph& g, const std::vector<EdgePair>& pairs);

  bool contains(EdgeId e) const { return bits_.test(static_cast<size_t>(e)); }
  void insert(EdgeId e) { bits_.set(static_cast<size_t>(e)); }
  int size() const { return static_cast<int>(bits_.count()); }
  bool empty() const { return bits_.none(); }
  std::vector<EdgeId> members() const;
  CutKey key(const Graph& g) const;

  EdgeSet& operator^=(const EdgeSet& o);
  EdgeSet& operator&=(const EdgeSet& o);
  friend EdgeSet operator^(EdgeSet a, const EdgeSet& b) { return a ^= b; }
  friend EdgeSet operator&(EdgeSet a, const EdgeSet& b) { return a &= b; }
  bool operator==(const EdgeSet& o) const { return bits_ == o.bits_; }

  const boost::dynamic_bitset<>& bits() const { return bits_; }
  boost::dynamic_bitset<>& bits() { return bits_; }

 private:
  boost::dynamic_bitset<> bits_;
};

EdgePair normalized(Vertex u, Vertex v);
CutKey canonical(const Graph& g, const std::vector<EdgeId>& edges);
std::string to_string(const CutKey& key);

// delta(A): edges with exactly one endpoint in A.
EdgeSet boundary(const Graph& g, const VertexSet& a);
// gamma(A,B) = |delta(A) & delta(B)|.
int gamma(const Graph& g, const VertexSet& a, const VertexSet& b);
// Returns the side (not containing vertex 0) whose boundary is exactly f.
std::optional<VertexSet> is_induced_cut(const Graph& g, const EdgeSet& f);

// Edge-list text format: "u v" per line, '#' comments, n = 1 + max id.
Graph read_edge_list(std::istream& in);
Graph load_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace smallcut
