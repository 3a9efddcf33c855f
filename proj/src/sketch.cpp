#include "smallcut/sketch.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace smallcut {

// ---- Branching numbers ---------------------------------------------------

std::map<Vertex, int> branching_numbers(const ParentMap& t) {
  std::map<Vertex, int> xi;
  if (t.empty()) return xi;
  std::map<Vertex, std::vector<Vertex>> kids;
  Vertex root = -1;
  for (auto [v, p] : t) {
    if (p < 0) {
      if (root >= 0) throw ProtocolError("tree with two roots");
      root = v;
    } else {
      kids[p].push_back(v);
    }
  }
  if (root < 0) throw ProtocolError("tree without root");
  auto nkids = [&](Vertex v) {
    auto it = kids.find(v);
    return it == kids.end() ? 0 : static_cast<int>(it->second.size());
  };
  Vertex x = root;
  while (nkids(x) == 1) x = kids[x].front();
  if (nkids(x) == 0) x = root;  // a bare path has no branch node

  // walk down; depth below the root decides the first case
  std::deque<std::pair<Vertex, int>> q{{root, 0}};
  int lx = 0;
  for (Vertex y = x; y != root; y = t.at(y)) ++lx;
  while (!q.empty()) {
    auto [v, d] = q.front();
    q.pop_front();
    int val;
    if (d <= lx && x != root) {
      val = 1;
    } else if (v == root) {
      val = 2;  // x == root here
    } else {
      Vertex p = t.at(v);
      int deg = nkids(p) + (p == root ? 0 : 1);
      val = deg + xi.at(p) - 2;
    }
    xi[v] = val;
    auto it = kids.find(v);
    if (it != kids.end())
      for (Vertex c : it->second) q.emplace_back(c, d + 1);
  }
  return xi;
}

int branching_number(const ParentMap& t, Vertex b) {
  auto xi = branching_numbers(t);
  auto it = xi.find(b);
  if (it == xi.end()) throw std::invalid_argument("node not in tree");
  return it->second;
}

// ---- Canonical trees -----------------------------------------------------

VertexSet SketchSource::members(const BfsInfo& t) const {
  switch (kind) {
    case Kind::Node: {
      VertexSet s(t.n());
      s.insert(owner);
      return s;
    }
    case Kind::Desc:
      return t.desc(owner);
    case Kind::Reduced: {
      VertexSet s = t.desc(owner);
      for (Vertex u : t.desc(excluded).members()) s.erase(u);
      return s;
    }
  }
  return VertexSet(t.n());
}

CanonicalTree build_canonical(const BfsInfo& t, const Graph& g, const SketchSource& s) {
  CanonicalTree c;
  c.source = s;
  VertexSet src = s.members(t);
  std::set<Vertex> targets;
  for (Vertex a : src.members())
    for (const auto& inc : g.adj(a))
      if (!t.is_tree_edge(g, inc.edge)) targets.insert(inc.nbr);
  c.targets.assign(targets.begin(), targets.end());
  for (Vertex y : c.targets)
    for (Vertex u : t.ancestors[y]) c.supported.insert(u);
  for (Vertex u : t.ancestors[s.owner]) c.parent[u] = t.parent[u];
  for (Vertex u : c.supported) c.parent[u] = t.parent[u];
  return c;
}

// ---- SketchTree ------------------------------------------------------------

const SketchNode* SketchTree::find(Vertex u) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), u,
                             [](const SketchNode& s, Vertex v) { return s.id < v; });
  return it != nodes.end() && it->id == u ? &*it : nullptr;
}

std::optional<int> SketchTree::gamma_of(Vertex u, const std::vector<Vertex>& anc_of_u) const {
  if (const SketchNode* s = find(u)) return s->gamma;
  for (auto it = anc_of_u.rbegin(); it != anc_of_u.rend(); ++it)
    if (const SketchNode* s = find(*it)) {
      if (s->cut) return std::nullopt;
      return 0;
    }
  return std::nullopt;
}

std::vector<Vertex> SketchTree::preorder() const {
  std::map<Vertex, std::vector<Vertex>> kids;
  Vertex root = -1;
  for (const auto& s : nodes) {
    if (s.parent < 0)
      root = s.id;
    else
      kids[s.parent].push_back(s.id);  // ids ascend already
  }
  std::vector<Vertex> out;
  if (root < 0) return out;
  std::vector<Vertex> stack{root};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    out.push_back(v);
    auto it = kids.find(v);
    if (it == kids.end()) continue;
    for (auto c = it->second.rbegin(); c != it->second.rend(); ++c) stack.push_back(*c);
  }
  return out;
}

std::map<Vertex, int> SketchTree::xi() const {
  ParentMap sup;
  for (const auto& s : nodes)
    if (s.support) sup[s.id] = s.parent;
  auto xi = branching_numbers(sup);
  for (const auto& s : nodes)
    if (!s.support) xi[s.id] = 0;
  return xi;
}

std::string SketchTree::dump() const {
  auto x = xi();
  std::ostringstream os;
  for (Vertex v : preorder()) {
    const SketchNode* s = find(v);
    os << s->id << ' ' << s->parent << ' ' << s->eta << ' ' << s->gamma << ' ' << x[v] << '\n';
  }
  return os.str();
}

Layout sketch_node_layout(const Codec& c) {
  // id, has-parent, parent, eta, gamma, support, cut
  return Layout{{c.id_bits(), 1, c.id_bits(), c.count_bits(), c.count_bits(), 1, 1}};
}

Fields encode_node(const SketchNode& s) {
  return Fields{static_cast<uint64_t>(s.id),
                static_cast<uint64_t>(s.parent >= 0),
                static_cast<uint64_t>(s.parent >= 0 ? s.parent : 0),
                static_cast<uint64_t>(s.eta),
                static_cast<uint64_t>(s.gamma),
                static_cast<uint64_t>(s.support),
                static_cast<uint64_t>(s.cut)};
}

SketchNode decode_node(const Fields& f) {
  SketchNode s;
  s.id = static_cast<Vertex>(f[0]);
  s.parent = f[1] ? static_cast<Vertex>(f[2]) : -1;
  s.eta = static_cast<int>(f[3]);
  s.gamma = static_cast<int>(f[4]);
  s.support = f[5] != 0;
  s.cut = f[6] != 0;
  return s;
}

std::vector<Fields> serialize(const SketchTree& s) {
  std::vector<Fields> out;
  out.reserve(s.nodes.size());
  for (Vertex v : s.preorder()) out.push_back(encode_node(*s.find(v)));
  return out;
}

long sketch_bits(const SketchTree& s, const Codec& c) {
  return static_cast<long>(s.nodes.size()) * sketch_node_layout(c).bits();
}

size_t sketch_node_bound(int k, int depth) {
  const size_t paths = k >= 1 ? (size_t{1} << (k - 1)) : 1;
  return (paths + 1) * static_cast<size_t>(depth + 1);
}

namespace {

SketchTree from_map(Vertex owner, Vertex excluded, int k, const std::map<Vertex, SketchNode>& m) {
  SketchTree t;
  t.owner = owner;
  t.excluded = excluded;
  t.k = k;
  t.nodes.reserve(m.size());
  for (const auto& [id, s] : m) t.nodes.push_back(s);
  return t;
}

// owner strictly above u, and u outside desc(excluded); parent links are
// those of the sketch union
bool interior(Vertex u, Vertex owner, Vertex excluded, const std::map<Vertex, SketchNode>& m) {
  if (u == owner) return false;
  bool below_owner = false;
  for (Vertex y = u; y >= 0; y = m.at(y).parent) {
    if (y == excluded) return false;
    if (y == owner) {
      below_owner = true;
      break;
    }
  }
  return below_owner;
}

}  // namespace

// ---- Reference ------------------------------------------------------------

SketchTree reference_k_sketch(const BfsInfo& t, const Graph& g, const SketchSource& s, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  CanonicalTree c = build_canonical(t, g, s);
  ParentMap sup;
  for (Vertex u : c.supported) sup[u] = t.parent[u];
  auto xi = branching_numbers(sup);
  std::set<Vertex> spine(t.ancestors[s.owner].begin(), t.ancestors[s.owner].end());

  std::vector<Vertex> order;
  for (const auto& [u, p] : c.parent) order.push_back(u);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return t.level[a] != t.level[b] ? t.level[a] < t.level[b] : a < b;
  });
  std::set<Vertex> kept;
  for (Vertex u : order) {
    bool parent_ok = t.parent[u] < 0 || kept.count(t.parent[u]);
    if (spine.count(u) || (parent_ok && xi.at(u) <= k)) kept.insert(u);
  }

  const VertexSet src = s.members(t);
  std::map<Vertex, SketchNode> m;
  for (Vertex u : kept) {
    SketchNode n;
    n.id = u;
    n.parent = t.parent[u];
    VertexSet du = t.desc(u);
    n.eta = boundary(g, du).size();
    n.support = c.supported.count(u) != 0;
    bool inner = u != s.owner && t.is_ancestor(s.owner, u) && !(du & src).empty();
    n.gamma = inner ? 0 : gamma(g, src, du);
    m[u] = n;
  }
  for (Vertex u : c.supported)
    if (!kept.count(u) && kept.count(t.parent[u])) m[t.parent[u]].cut = true;
  return from_map(s.owner, s.kind == SketchSource::Kind::Reduced ? s.excluded : -1, k, m);
}

// ---- Local sketch -----------------------------------------------------------

SketchTree local_sketch(const Graph& g, const NodeKnowledge& k,
                        const std::vector<std::vector<Vertex>>& nbr_anc,
                        const std::vector<std::vector<int>>& nbr_eta,
                        const std::vector<int>& own_eta, const std::vector<int>& own_H) {
  std::map<Vertex, SketchNode> m;
  std::map<Vertex, int> level;
  for (int l = 0; l <= k.level; ++l) {
    SketchNode s;
    s.id = k.anc[l];
    s.parent = l > 0 ? k.anc[l - 1] : -1;
    s.eta = own_eta[l];
    m[s.id] = s;
    level[s.id] = l;
  }
  const auto& ports = g.adj(k.id);
  for (size_t p = 0; p < ports.size(); ++p) {
    if (is_tree_port(k, ports[p].edge)) continue;
    const auto& an = nbr_anc[p];
    for (size_t l = 0; l < an.size(); ++l) {
      SketchNode& s = m[an[l]];
      s.id = an[l];
      s.parent = l > 0 ? an[l - 1] : -1;
      s.eta = nbr_eta[p][l];
      s.support = true;
      level[s.id] = static_cast<int>(l);
    }
  }
  for (auto& [u, s] : m) {
    const int lu = level[u];
    if (k.has_ancestor(u, lu)) {
      s.gamma = own_H[lu];
      continue;
    }
    int cnt = 0;
    for (size_t p = 0; p < ports.size(); ++p) {
      const auto& an = nbr_anc[p];
      if (static_cast<int>(an.size()) > lu && an[lu] == u) ++cnt;
    }
    s.gamma = cnt;
  }
  return from_map(k.id, -1, 0, m);
}

// ---- Merge ------------------------------------------------------------------

SketchTree merge_sketches(Vertex owner, Vertex excluded, const std::vector<Vertex>& spine,
                          const std::vector<const SketchTree*>& inputs, int k, int depth,
                          const SketchTree* parent_side) {
  std::map<Vertex, SketchNode> u;
  std::map<Vertex, int> sum;
  for (const SketchTree* in : inputs)
    for (const auto& s : in->nodes) {
      auto [it, fresh] = u.try_emplace(s.id, s);
      if (fresh) {
        sum[s.id] = s.gamma;
        continue;
      }
      SketchNode& t = it->second;
      if (t.parent != s.parent || t.eta != s.eta)
        throw ProtocolError("sketches disagree on node " + std::to_string(s.id));
      t.support = t.support || s.support;
      t.cut = t.cut || s.cut;
      sum[s.id] += s.gamma;
    }
  std::set<Vertex> on_spine(spine.begin(), spine.end());
  for (Vertex v : spine)
    if (!u.count(v)) throw ProtocolError("spine node " + std::to_string(v) + " missing");

  std::map<Vertex, int> level;
  std::function<int(Vertex)> lev = [&](Vertex v) -> int {
    auto it = level.find(v);
    if (it != level.end()) return it->second;
    Vertex p = u.at(v).parent;
    int l = p < 0 ? 0 : lev(p) + 1;
    level[v] = l;
    return l;
  };
  std::vector<Vertex> order;
  for (const auto& [v, s] : u) {
    lev(v);
    order.push_back(v);
  }
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return level[a] != level[b] ? level[a] < level[b] : a < b;
  });

  ParentMap sup;
  for (const auto& [v, s] : u)
    if (s.support) sup[v] = s.parent;
  auto xi = branching_numbers(sup);

  std::set<Vertex> removed, saturated, kept;
  for (Vertex v : order) {
    const SketchNode& s = u.at(v);
    const Vertex p = s.parent;
    const bool p_blocked = p >= 0 && (u.at(p).cut || saturated.count(p));
    if (on_spine.count(v)) {
      kept.insert(v);
      if ((s.support && xi.at(v) > k) || p_blocked) saturated.insert(v);
      continue;
    }
    if (!s.support) continue;
    if (removed.count(p) || !kept.count(p) || p_blocked || xi.at(v) > k)
      removed.insert(v);
    else
      kept.insert(v);
  }

  std::map<Vertex, SketchNode> out;
  for (Vertex v : kept) {
    SketchNode s = u.at(v);
    s.gamma = interior(v, owner, excluded, u) ? 0 : sum[v];
    // (pi x, x) leaves desc x from the source; only an input that lists x
    // has counted it
    if (v == excluded && parent_side && !parent_side->contains(v)) ++s.gamma;
    out[v] = s;
  }
  for (Vertex v : removed) {
    Vertex p = u.at(v).parent;
    if (out.count(p)) out[p].cut = true;
  }
  if (out.size() > sketch_node_bound(k, depth))
    throw ProtocolError("sketch of " + std::to_string(owner) + " has " + std::to_string(out.size()) +
                        " nodes, bound " + std::to_string(sketch_node_bound(k, depth)));
  return from_map(owner, excluded, k, out);
}

// ---- Convergecast ----------------------------------------------------------

namespace {

class SketchCastProgram : public NodeProgram {
 public:
  SketchCastProgram(const NodeKnowledge& k, const SketchTree& local, int kk, bool reduced,
                    long window, const Layout& layout)
      : k_(&k), local_(&local), kk_(kk), reduced_(reduced), layout_(&layout),
        start_(static_cast<long>(k.depth - k.level) * window + 1) {
    for (Vertex c : k.children) from_child_[c];
  }

  void on_step(NodeContext& ctx, const std::vector<Message>& inbox) override {
    for (const auto& m : inbox) {
      if (ctx.step() > start_) throw ProtocolError("sketch arrived after its window");
      auto it = from_child_.find(m.from);
      if (it == from_child_.end()) throw ProtocolError("sketch from a non-child");
      BitReader r = m.reader();
      it->second.push_back(decode_node(layout_->read(r)));
    }
    if (ctx.step() == start_) build();
    if (ctx.step() < start_ || finished_) return;
    if (k_->is_root() || next_ >= queue_.size()) {
      finished_ = true;
      return;
    }
    BitWriter w;
    layout_->write(w, queue_[next_++]);
    ctx.send(k_->parent_edge, w);
    if (next_ == queue_.size()) finished_ = true;
  }
  bool done() const override { return finished_; }

  SketchTree full;
  std::vector<SketchTree> minus_child;

 private:
  void build() {
    std::vector<SketchTree> kids;
    for (Vertex c : k_->children) {
      SketchTree t;
      t.owner = c;
      t.k = kk_;
      t.nodes = from_child_[c];
      std::sort(t.nodes.begin(), t.nodes.end(),
                [](const SketchNode& a, const SketchNode& b) { return a.id < b.id; });
      kids.push_back(std::move(t));
    }
    std::vector<const SketchTree*> in{local_};
    for (const auto& t : kids) in.push_back(&t);
    full = merge_sketches(k_->id, -1, k_->anc, in, kk_, k_->depth);
    if (reduced_)
      for (size_t i = 0; i < kids.size(); ++i) {
        std::vector<const SketchTree*> rin{local_};
        for (size_t j = 0; j < kids.size(); ++j)
          if (j != i) rin.push_back(&kids[j]);
        minus_child.push_back(
            merge_sketches(k_->id, k_->children[i], k_->anc, rin, kk_, k_->depth, local_));
      }
    queue_ = serialize(full);
    from_child_.clear();
  }

  const NodeKnowledge* k_;
  const SketchTree* local_;
  int kk_;
  bool reduced_;
  const Layout* layout_;
  long start_;
  std::map<Vertex, std::vector<SketchNode>> from_child_;
  std::vector<Fields> queue_;
  size_t next_ = 0;
  bool finished_ = false;
};

// Records tagged with the level of the sketch owner.
Layout tagged_layout(const Codec& c) {
  Layout l = sketch_node_layout(c);
  l.widths.insert(l.widths.begin(), c.id_bits());
  return l;
}

std::vector<Fields> tagged(const SketchTree& s, int level) {
  std::vector<Fields> out = serialize(s);
  for (auto& f : out) f.insert(f.begin(), static_cast<uint64_t>(level));
  return out;
}

// level -> sketch, from tagged records
std::map<int, SketchTree> untag(const std::vector<Fields>& recs, const std::vector<Vertex>& owners,
                                int k) {
  std::map<int, SketchTree> out;
  for (const auto& f : recs) {
    const int l = static_cast<int>(f[0]);
    SketchTree& t = out[l];
    t.owner = owners.at(static_cast<size_t>(l));
    t.k = k;
    t.nodes.push_back(decode_node(Fields(f.begin() + 1, f.end())));
  }
  for (auto& [l, t] : out)
    std::sort(t.nodes.begin(), t.nodes.end(),
              [](const SketchNode& a, const SketchNode& b) { return a.id < b.id; });
  return out;
}

class SketchSwapProgram : public NodeProgram {
 public:
  SketchSwapProgram(const NodeKnowledge& k, const std::vector<std::vector<Vertex>>& nbr_anc,
                    const Layout& layout, std::vector<char> active, std::vector<Fields> mine,
                    const SketchStreamHook& hook)
      : k_(&k), nbr_anc_(&nbr_anc), layout_(&layout), active_(std::move(active)), mine_(std::move(mine)),
        hook_(&hook), next_(active_.size(), 0), in_(active_.size()),
        end_in_(active_.size(), 0), end_out_(active_.size(), 0) {}

  void on_step(NodeContext& ctx, const std::vector<Message>& inbox) override {
    const auto& ports = ctx.ports();
    for (const auto& m : inbox) {
      size_t p = 0;
      while (p < ports.size() && ports[p].edge != m.edge) ++p;
      if (p == ports.size()) throw ProtocolError("message on unknown port");
      BitReader r = m.reader();
      if (r.get_flag()) {
        end_in_[p] = 1;
        finish_port(p);
        continue;
      }
      in_[p].push_back(layout_->read(r));
    }
    for (size_t p = 0; p < ports.size(); ++p) {
      if (!active_[p] || end_out_[p]) continue;
      BitWriter w;
      if (next_[p] < mine_.size()) {
        w.put_flag(false);
        layout_->write(w, mine_[next_[p]++]);
      } else {
        w.put_flag(true);
        end_out_[p] = 1;
      }
      ctx.send(ports[p].edge, w);
    }
  }
  bool done() const override {
    for (size_t p = 0; p < active_.size(); ++p)
      if (active_[p] && (!end_in_[p] || !end_out_[p])) return false;
    return true;
  }

 private:
  void finish_port(size_t p) {
    const auto& owners = (*nbr_anc_)[p];
    auto by_level = untag(in_[p], owners, 3);
    std::vector<SketchTree> list(owners.size());
    for (auto& [l, t] : by_level) list[l] = std::move(t);
    (*hook_)(k_->id, p, list);
    in_[p].clear();
    in_[p].shrink_to_fit();
  }

  const NodeKnowledge* k_;
  const std::vector<std::vector<Vertex>>* nbr_anc_;
  const Layout* layout_;
  std::vector<char> active_;
  std::vector<Fields> mine_;
  const SketchStreamHook* hook_;
  std::vector<size_t> next_;
  std::vector<std::vector<Fields>> in_;
  std::vector<char> end_in_, end_out_;
};

}  // namespace

void run_sketch_convergecast(Engine& eng, const std::vector<NodeKnowledge>& know, int k,
                             bool reduced, SketchTables& out) {
  const int n = eng.graph().n();
  const int depth = n > 0 ? know[0].depth : 0;
  const Layout layout = sketch_node_layout(eng.codec());
  const long window = static_cast<long>(sketch_node_bound(k, depth));
  std::vector<SketchCastProgram> progs;
  progs.reserve(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) progs.emplace_back(know[v], out.local[v], k, reduced, window, layout);
  eng.run("sketch:k" + std::to_string(k), eng.slot_for(static_cast<uint32_t>(layout.bits())), progs);
  auto& dst = k == 3 ? out.s3 : out.s2;
  dst.assign(static_cast<size_t>(n), {});
  if (reduced) out.s2_minus_child.assign(static_cast<size_t>(n), {});
  for (Vertex v = 0; v < n; ++v) {
    dst[v] = std::move(progs[v].full);
    if (reduced) out.s2_minus_child[v] = std::move(progs[v].minus_child);
  }
}

void run_reduced_sketches(Engine& eng, const std::vector<NodeKnowledge>& know, SketchTables& out) {
  const int n = eng.graph().n();
  const Layout layout = tagged_layout(eng.codec());
  std::vector<std::vector<std::vector<Fields>>> own(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v)
    for (const auto& t : out.s2_minus_child[v]) own[v].push_back(tagged(t, know[v].level));
  auto got = downcast(eng, "broadcast2:reduced", know, layout, own);
  out.reduced.assign(static_cast<size_t>(n), {});
  for (Vertex x = 0; x < n; ++x) {
    const auto& k = know[x];
    auto chain = untag(got[x], k.anc, 2);
    for (auto& [l, t] : chain) t.excluded = k.anc[l + 1];
    for (int l = 0; l < k.level; ++l) {
      std::vector<const SketchTree*> in;
      for (int j = l; j < k.level; ++j) {
        auto it = chain.find(j);
        if (it == chain.end()) throw ProtocolError("reduced sketch missing at level " + std::to_string(j));
        in.push_back(&it->second);
      }
      std::vector<Vertex> spine(k.anc.begin(), k.anc.begin() + l + 1);
      out.reduced[x].push_back(merge_sketches(k.anc[l], x, spine, in, 2, k.depth, in.back()));
    }
  }
}

void run_sketch3_spread(Engine& eng, const std::vector<NodeKnowledge>& know,
                        const PortAncestors& nbr, SketchTables& out, const SketchStreamHook& hook) {
  const Graph& g = eng.graph();
  const int n = g.n();
  const Layout layout = tagged_layout(eng.codec());
  std::vector<std::vector<std::vector<Fields>>> own(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    if (know[v].is_root()) continue;
    auto recs = tagged(out.s3[v], know[v].level);
    own[v].assign(know[v].children.size(), recs);
  }
  auto got = downcast(eng, "broadcast2:sketch3", know, layout, own);
  out.anc_s3.assign(static_cast<size_t>(n), {});
  for (Vertex u = 0; u < n; ++u) {
    auto by = untag(got[u], know[u].anc, 3);
    out.anc_s3[u].resize(static_cast<size_t>(std::max(know[u].level, 0)));
    for (auto& [l, t] : by) out.anc_s3[u][l] = std::move(t);
    got[u].clear();
    got[u].shrink_to_fit();
  }

  std::vector<SketchSwapProgram> progs;
  progs.reserve(static_cast<size_t>(n));
  for (Vertex u = 0; u < n; ++u) {
    const auto& k = know[u];
    const auto& ports = g.adj(u);
    std::vector<char> active(ports.size(), 0);
    for (size_t p = 0; p < ports.size(); ++p) active[p] = !is_tree_port(k, ports[p].edge);
    std::vector<Fields> mine;
    for (int l = 1; l < k.level; ++l) {
      auto r = tagged(out.anc_s3[u][l], l);
      mine.insert(mine.end(), r.begin(), r.end());
    }
    if (k.level >= 1) {
      auto r = tagged(out.s3[u], k.level);
      mine.insert(mine.end(), r.begin(), r.end());
    }
    progs.emplace_back(k, nbr[u], layout, std::move(active), std::move(mine), hook);
  }
  eng.run("exchange:sketch3", eng.slot_for(static_cast<uint32_t>(1 + layout.bits())), progs);
}

SketchTables compute_sketches(Engine& eng, const std::vector<NodeKnowledge>& know,
                              const PortAncestors& nbr, const InstanceTables& inst) {
  const Graph& g = eng.graph();
  const int n = g.n();
  SketchTables out;
  out.local.reserve(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v)
    out.local.push_back(local_sketch(g, know[v], nbr[v], inst.nbr_eta[v], inst.eta[v], inst.H[v]));
  run_sketch_convergecast(eng, know, 3, false, out);
  run_sketch_convergecast(eng, know, 2, true, out);
  run_reduced_sketches(eng, know, out);
  return out;
}

}  // namespace smallcut
