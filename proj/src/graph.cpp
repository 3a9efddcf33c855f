#include "smallcut/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace smallcut {

Graph::Graph(int n) : adj_(static_cast<size_t>(std::max(n, 0))) {}

EdgeId Graph::add_edge(Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= n() || v >= n())
    throw InputError("vertex id out of range in edge (" + std::to_string(u) + "," +
                     std::to_string(v) + ")");
  if (u == v) throw InputError("self loop at vertex " + std::to_string(u));
  if (find_edge(u, v))
    throw InputError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  EdgeId id = m();
  edges_.push_back({u, v});
  adj_[u].push_back({v, id});
  adj_[v].push_back({u, id});
  return id;
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n() || v >= n()) return std::nullopt;
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  Vertex target = adj_[u].size() <= adj_[v].size() ? v : u;
  for (const auto& inc : a)
    if (inc.nbr == target) return inc.edge;
  return std::nullopt;
}

bool Graph::connected() const {
  if (n() <= 1) return true;
  std::vector<char> seen(static_cast<size_t>(n()), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (const auto& inc : adj_[x])
      if (!seen[inc.nbr]) {
        seen[inc.nbr] = 1;
        ++count;
        stack.push_back(inc.nbr);
      }
  }
  return count == n();
}

int Graph::min_degree() const {
  int best = n() > 0 ? degree(0) : 0;
  for (Vertex v = 1; v < n(); ++v) best = std::min(best, degree(v));
  return best;
}

VertexSet::VertexSet(int n, std::initializer_list<Vertex> vs) : bits_(static_cast<size_t>(n)) {
  for (Vertex v : vs) insert(v);
}

VertexSet VertexSet::from_mask(int n, uint64_t mask) {
  VertexSet s(n);
  for (int v = 0; v < n && v < 64; ++v)
    if (mask >> v & 1U) s.insert(v);
  return s;
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
    out.push_back(static_cast<Vertex>(i));
  return out;
}

VertexSet& VertexSet::operator^=(const VertexSet& o) {
  bits_ ^= o.bits_;
  return *this;
}
VertexSet& VertexSet::operator|=(const VertexSet& o) {
  bits_ |= o.bits_;
  return *this;
}
VertexSet& VertexSet::operator&=(const VertexSet& o) {
  bits_ &= o.bits_;
  return *this;
}

VertexSet VertexSet::complement() const {
  VertexSet c = *this;
  c.bits_.flip();
  return c;
}

EdgeSet EdgeSet::of(const Graph& g, const std::vector<EdgePair>& pairs) {
  EdgeSet s(g.m());
  for (auto [u, v] : pairs) {
    auto e = g.find_edge(u, v);
    if (!e) throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                             ") is not in the graph");
    s.insert(*e);
  }
  return s;
}

std::vector<EdgeId> EdgeSet::members() const {
  std::vector<EdgeId> out;
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
    out.push_back(static_cast<EdgeId>(i));
  return out;
}

CutKey EdgeSet::key(const Graph& g) const { return canonical(g, members()); }

EdgeSet& EdgeSet::operator^=(const EdgeSet& o) {
  bits_ ^= o.bits_;
  return *this;
}
EdgeSet& EdgeSet::operator&=(const EdgeSet& o) {
  bits_ &= o.bits_;
  return *this;
}

EdgePair normalized(Vertex u, Vertex v) { return u < v ? EdgePair{u, v} : EdgePair{v, u}; }

CutKey canonical(const Graph& g, const std::vector<EdgeId>& edges) {
  CutKey key;
  key.reserve(edges.size());
  for (EdgeId e : edges) key.push_back(normalized(g.edge(e).u, g.edge(e).v));
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  return key;
}

std::string to_string(const CutKey& key) {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < key.size(); ++i)
    os << (i ? "," : "") << '(' << key[i].first << ',' << key[i].second << ')';
  os << '}';
  return os.str();
}

EdgeSet boundary(const Graph& g, const VertexSet& a) {
  if (a.universe() != g.n())
    throw InputError("vertex set universe " + std::to_string(a.universe()) +
                     " does not match graph order " + std::to_string(g.n()));
  EdgeSet out(g.m());
  for (EdgeId e = 0; e < g.m(); ++e)
    if (a.contains(g.edge(e).u) != a.contains(g.edge(e).v)) out.insert(e);
  return out;
}

int gamma(const Graph& g, const VertexSet& a, const VertexSet& b) {
  return (boundary(g, a) & boundary(g, b)).size();
}

std::optional<VertexSet> is_induced_cut(const Graph& g, const EdgeSet& f) {
  const int n = g.n();
  if (f.empty() || n < 2) return std::nullopt;
  // Components of G - f, then 2-colour them along the edges of f.
  std::vector<int> comp(static_cast<size_t>(n), -1);
  int ncomp = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<Vertex> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (const auto& inc : g.adj(x))
        if (!f.contains(inc.edge) && comp[inc.nbr] < 0) {
          comp[inc.nbr] = ncomp;
          stack.push_back(inc.nbr);
        }
    }
    ++ncomp;
  }
  std::vector<std::vector<int>> cadj(static_cast<size_t>(ncomp));
  for (EdgeId e : f.members()) {
    int a = comp[g.edge(e).u], b = comp[g.edge(e).v];
    if (a == b) return std::nullopt;
    cadj[a].push_back(b);
    cadj[b].push_back(a);
  }
  std::vector<int> colour(static_cast<size_t>(ncomp), -1);
  colour[comp[0]] = 0;
  std::vector<int> stack{comp[0]};
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    for (int d : cadj[c]) {
      if (colour[d] < 0) {
        colour[d] = 1 - colour[c];
        stack.push_back(d);
      } else if (colour[d] == colour[c]) {
        return std::nullopt;
      }
    }
  }
  VertexSet side(n);
  for (Vertex v = 0; v < n; ++v) {
    // a component not reached from vertex 0 means g itself is disconnected
    if (colour[comp[v]] < 0) return std::nullopt;
    if (colour[comp[v]] == 1) side.insert(v);
  }
  if (side.empty()) return std::nullopt;
  if (!(boundary(g, side) == f)) return std::nullopt;
  return side;
}

Graph read_edge_list(std::istream& in) {
  std::vector<EdgePair> pairs;
  int max_id = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long long u = -1, v = -1;
    std::string rest;
    if (!(ls >> u >> v) || (ls >> rest && rest[0] != '#'))
      throw InputError("line " + std::to_string(lineno) + ": expected \"u v\"");
    if (u < 0 || v < 0 || u > 1'000'000 || v > 1'000'000)
      throw InputError("line " + std::to_string(lineno) + ": vertex id out of range");
    pairs.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    max_id = std::max<int>(max_id, static_cast<int>(std::max(u, v)));
  }
  if (max_id < 0) throw InputError("edge list is empty");
  Graph g(max_id + 1);
  for (auto [u, v] : pairs) g.add_edge(u, v);
  if (!g.connected()) throw InputError("graph is not connected");
  return g;
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace smallcut
