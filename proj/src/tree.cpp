#include "smallcut/tree.hpp"

#include <algorithm>
#include <deque>

namespace smallcut {

Vertex BfsInfo::lca(Vertex a, Vertex b) const {
  const auto& pa = ancestors[a];
  const auto& pb = ancestors[b];
  size_t i = 0;
  while (i < pa.size() && i < pb.size() && pa[i] == pb[i]) ++i;
  return pa[i - 1];
}

bool BfsInfo::is_tree_edge(const Graph& g, EdgeId e) const {
  const Edge& ed = g.edge(e);
  return parent_edge[ed.u] == e || parent_edge[ed.v] == e;
}

VertexSet BfsInfo::desc(Vertex v) const {
  VertexSet s(n());
  for (Vertex u = 0; u < n(); ++u)
    if (is_ancestor(v, u)) s.insert(u);
  return s;
}

BfsInfo tree_from_parents(const Graph& g, Vertex root, const std::vector<Vertex>& parent) {
  const int n = g.n();
  BfsInfo t;
  t.root = root;
  t.parent = parent;
  t.parent[root] = -1;
  t.parent_edge.assign(static_cast<size_t>(n), -1);
  t.level.assign(static_cast<size_t>(n), -1);
  t.children.assign(static_cast<size_t>(n), {});
  t.ancestors.assign(static_cast<size_t>(n), {});
  for (Vertex v = 0; v < n; ++v)
    if (v != root) {
      auto e = g.find_edge(v, t.parent[v]);
      if (!e) throw InputError("parent edge missing for vertex " + std::to_string(v));
      t.parent_edge[v] = *e;
      t.children[t.parent[v]].push_back(v);
    }
  std::deque<Vertex> q{root};
  t.level[root] = 0;
  t.ancestors[root] = {root};
  int seen = 1;
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop_front();
    for (Vertex c : t.children[x]) {
      t.level[c] = t.level[x] + 1;
      t.ancestors[c] = t.ancestors[x];
      t.ancestors[c].push_back(c);
      t.depth = std::max(t.depth, t.level[c]);
      q.push_back(c);
      ++seen;
    }
  }
  if (seen != n) throw InputError("parent array does not describe a spanning tree");
  return t;
}

BfsInfo reference_bfs(const Graph& g, Vertex root) {
  const int n = g.n();
  std::vector<int> dist(static_cast<size_t>(n), -1);
  std::vector<Vertex> parent(static_cast<size_t>(n), -1);
  std::deque<Vertex> q{root};
  dist[root] = 0;
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop_front();
    for (const auto& inc : g.adj(x))
      if (dist[inc.nbr] < 0) {
        dist[inc.nbr] = dist[x] + 1;
        q.push_back(inc.nbr);
      }
  }
  // lowest-id neighbour one level up
  for (Vertex v = 0; v < n; ++v) {
    if (v == root) continue;
    for (const auto& inc : g.adj(v))
      if (dist[inc.nbr] == dist[v] - 1 && (parent[v] < 0 || inc.nbr < parent[v]))
        parent[v] = inc.nbr;
  }
  return tree_from_parents(g, root, parent);
}

void Layout::write(BitWriter& out, const Fields& f) const {
  if (f.size() != widths.size()) throw ProtocolError("record arity does not match layout");
  for (size_t i = 0; i < widths.size(); ++i) out.put(f[i], widths[i]);
}

Fields Layout::read(BitReader& in) const {
  Fields f(widths.size());
  for (size_t i = 0; i < widths.size(); ++i) f[i] = in.get(widths[i]);
  return f;
}

namespace {

// ---- BFS program ------------------------------------------------------

enum BfsTag : uint64_t { kJoin = 0, kChild = 1, kUp = 2, kDown = 3 };

class BfsProgram : public NodeProgram {
 public:
  BfsProgram(NodeKnowledge& k, bool root) : k_(&k), root_(root) {}

  void on_step(NodeContext& ctx, const std::vector<Message>& inbox) override {
    const Codec& c = ctx.codec();
    long s = ctx.step();
    auto send = [&](EdgeId e, BfsTag tag, int value) {
      BitWriter w;
      w.put(tag, 2);
      c.id(w, value);
      ctx.send(e, w);
    };
    if (root_ && s == 1) {
      k_->level = 0;
      joined_ = 1;
      for (const auto& inc : ctx.ports()) send(inc.edge, kJoin, 0);
    }
    for (const auto& m : inbox) {
      BitReader r = m.reader();
      auto tag = static_cast<BfsTag>(r.get(2));
      int value = c.id(r);
      switch (tag) {
        case kJoin:
          // inbox is sorted by sender id, so the first JOIN is the lowest proposer
          if (joined_ == 0) {
            joined_ = s;
            k_->level = value + 1;
            k_->parent = m.from;
            k_->parent_edge = m.edge;
          }
          break;
        case kChild:
          k_->children.push_back(m.from);
          k_->child_edges.push_back(m.edge);
          break;
        case kUp:
          sub_depth_ = std::max(sub_depth_, value);
          ++reports_;
          break;
        case kDown:
          k_->depth = value;
          for (EdgeId e : k_->child_edges) send(e, kDown, value);
          finished_ = true;
          break;
      }
    }
    if (joined_ == s && !root_) {
      send(k_->parent_edge, kChild, 0);
      for (const auto& inc : ctx.ports())
        if (inc.edge != k_->parent_edge) send(inc.edge, kJoin, k_->level);
    }
    if (joined_ > 0 && s == joined_ + 2) {
      children_known_ = true;
      sub_depth_ = std::max(sub_depth_, k_->level);
    }
    if (children_known_ && !reported_ && reports_ == static_cast<int>(k_->children.size())) {
      reported_ = true;
      if (root_) {
        k_->depth = sub_depth_;
        for (EdgeId e : k_->child_edges) send(e, kDown, sub_depth_);
        finished_ = true;
      } else {
        send(k_->parent_edge, kUp, sub_depth_);
      }
    }
  }
  bool done() const override { return finished_; }

 private:
  NodeKnowledge* k_;
  bool root_;
  long joined_ = 0;
  bool children_known_ = false;
  bool reported_ = false;
  int reports_ = 0;
  int sub_depth_ = 0;
  bool finished_ = false;
};

// ---- Downcast program ------------------------------------------------

class DowncastProgram : public NodeProgram {
 public:
  DowncastProgram(const NodeKnowledge& k, const Layout& layout,
                  const std::vector<std::vector<Fields>>& own, int lo)
      : k_(&k), layout_(&layout), queues_(k.children.size()), end_sent_(k.children.size(), 0) {
    if (k.level < lo) {
      std::fill(end_sent_.begin(), end_sent_.end(), 1);
      parent_ended_ = true;
      return;
    }
    for (size_t i = 0; i < queues_.size() && i < own.size(); ++i)
      queues_[i].assign(own[i].begin(), own[i].end());
    parent_ended_ = k.is_root() || k.level == lo;
  }

  void on_step(NodeContext& ctx, const std::vector<Message>& inbox) override {
    for (const auto& m : inbox) {
      BitReader r = m.reader();
      if (r.get_flag()) {
        parent_ended_ = true;
        continue;
      }
      Fields f = layout_->read(r);
      for (auto& q : queues_) q.push_back(f);
      received_.push_back(std::move(f));
    }
    for (size_t i = 0; i < queues_.size(); ++i) {
      if (!queues_[i].empty()) {
        BitWriter w;
        w.put_flag(false);
        layout_->write(w, queues_[i].front());
        queues_[i].pop_front();
        ctx.send(k_->child_edges[i], w);
      } else if (parent_ended_ && !end_sent_[i]) {
        BitWriter w;
        w.put_flag(true);
        ctx.send(k_->child_edges[i], w);
        end_sent_[i] = 1;
      }
    }
  }
  bool done() const override {
    if (!parent_ended_) return false;
    for (char e : end_sent_)
      if (!e) return false;
    return true;
  }
  std::vector<Fields>& received() { return received_; }

 private:
  const NodeKnowledge* k_;
  const Layout* layout_;
  std::vector<std::deque<Fields>> queues_;
  std::vector<char> end_sent_;
  bool parent_ended_ = false;
  std::vector<Fields> received_;
};

// ---- Neighbour stream program -------------------------------------------

class ExchangeProgram : public NodeProgram {
 public:
  ExchangeProgram(const Layout& layout, const std::vector<char>& active,
                  const std::vector<std::vector<Fields>>& out)
      : layout_(&layout), active_(active), next_(active.size(), 0), out_(&out),
        received_(active.size()), end_in_(active.size(), 0), end_out_(active.size(), 0) {}

  void on_step(NodeContext& ctx, const std::vector<Message>& inbox) override {
    const auto& ports = ctx.ports();
    for (const auto& m : inbox) {
      size_t p = port_of(ports, m.edge);
      BitReader r = m.reader();
      if (r.get_flag()) {
        end_in_[p] = 1;
        continue;
      }
      received_[p].push_back(layout_->read(r));
    }
    for (size_t p = 0; p < ports.size(); ++p) {
      if (!active_[p] || end_out_[p]) continue;
      BitWriter w;
      const auto& list = (*out_)[p];
      if (next_[p] < list.size()) {
        w.put_flag(false);
        layout_->write(w, list[next_[p]++]);
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
  std::vector<std::vector<Fields>>& received() { return received_; }

 private:
  static size_t port_of(const std::vector<Incidence>& ports, EdgeId e) {
    for (size_t p = 0; p < ports.size(); ++p)
      if (ports[p].edge == e) return p;
    throw ProtocolError("message on unknown port");
  }
  const Layout* layout_;
  std::vector<char> active_;
  std::vector<size_t> next_;
  const std::vector<std::vector<Fields>>* out_;
  std::vector<std::vector<Fields>> received_;
  std::vector<char> end_in_, end_out_;
};

}  // namespace

BfsInfo build_bfs(Engine& eng, Vertex root, std::vector<NodeKnowledge>& know) {
  const Graph& g = eng.graph();
  const int n = g.n();
  if (root < 0 || root >= n) throw InputError("root " + std::to_string(root) + " out of range");
  know.assign(static_cast<size_t>(n), NodeKnowledge{});
  std::vector<BfsProgram> progs;
  progs.reserve(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    know[v].id = v;
    progs.emplace_back(know[v], v == root);
  }
  eng.run("bfs", eng.slot_for(static_cast<uint32_t>(2 + eng.word_bits())), progs);
  for (auto& k : know) {
    // children arrive sorted by sender id; keep edges aligned
    std::vector<size_t> idx(k.children.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return k.children[a] < k.children[b]; });
    std::vector<Vertex> c;
    std::vector<EdgeId> e;
    for (size_t i : idx) {
      c.push_back(k.children[i]);
      e.push_back(k.child_edges[i]);
    }
    k.children = std::move(c);
    k.child_edges = std::move(e);
  }

  std::vector<uint64_t> ids(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) ids[v] = static_cast<uint64_t>(v);
  auto anc = broadcast_t1(eng, "broadcast1:ancestors", know, ids, eng.word_bits());
  for (Vertex v = 0; v < n; ++v) {
    know[v].anc.assign(anc[v].begin(), anc[v].end());
  }

  // observer-side assembly
  BfsInfo t;
  t.root = root;
  t.depth = know[root].depth;
  t.parent.resize(static_cast<size_t>(n));
  t.parent_edge.resize(static_cast<size_t>(n));
  t.level.resize(static_cast<size_t>(n));
  t.children.resize(static_cast<size_t>(n));
  t.ancestors.resize(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    t.parent[v] = know[v].parent;
    t.parent_edge[v] = know[v].parent_edge;
    t.level[v] = know[v].level;
    t.children[v] = know[v].children;
    t.ancestors[v] = know[v].anc;
  }
  return t;
}

std::vector<std::vector<Fields>> downcast(Engine& eng, const std::string& label,
                                          const std::vector<NodeKnowledge>& know,
                                          const Layout& layout,
                                          const std::vector<std::vector<std::vector<Fields>>>& own,
                                          int lo) {
  const int n = static_cast<int>(know.size());
  std::vector<DowncastProgram> progs;
  progs.reserve(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) progs.emplace_back(know[v], layout, own[v], lo);
  eng.run(label, eng.slot_for(static_cast<uint32_t>(1 + layout.bits())), progs);
  std::vector<std::vector<Fields>> out;
  out.reserve(static_cast<size_t>(n));
  for (auto& p : progs) out.push_back(std::move(p.received()));
  return out;
}

std::vector<std::vector<uint64_t>> broadcast_t1(Engine& eng, const std::string& label,
                                                const std::vector<NodeKnowledge>& know,
                                                const std::vector<uint64_t>& value,
                                                int value_bits, int lo) {
  const int n = static_cast<int>(know.size());
  const int w = eng.word_bits();
  Layout layout{{w, value_bits}};
  std::vector<std::vector<std::vector<Fields>>> own(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v)
    own[v].assign(know[v].children.size(),
                  {Fields{static_cast<uint64_t>(know[v].level), value[v]}});
  auto got = downcast(eng, label, know, layout, own, lo);
  std::vector<std::vector<uint64_t>> out(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    if (know[v].level < lo) continue;
    out[v].assign(static_cast<size_t>(know[v].level + 1), 0);
    std::vector<char> seen(out[v].size(), 0);
    for (const auto& f : got[v]) {
      size_t l = f[0];
      if (l >= out[v].size() - 1 || seen[l]) throw ProtocolError("broadcast1 duplicate or stray");
      seen[l] = 1;
      out[v][l] = f[1];
    }
    for (size_t l = static_cast<size_t>(lo); l + 1 < out[v].size(); ++l)
      if (!seen[l]) throw ProtocolError("broadcast1 missed ancestor level " + std::to_string(l));
    out[v].back() = value[v];
  }
  return out;
}

std::vector<std::vector<std::vector<uint64_t>>> broadcast_t2(
    Engine& eng, const std::string& label, const std::vector<NodeKnowledge>& know,
    const std::vector<std::vector<uint64_t>>& lists, int value_bits) {
  const int n = static_cast<int>(know.size());
  const int w = eng.word_bits();
  Layout layout{{w, value_bits}};
  std::vector<std::vector<std::vector<Fields>>> own(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Fields> mine;
    for (uint64_t x : lists[v]) mine.push_back(Fields{static_cast<uint64_t>(know[v].level), x});
    own[v].assign(know[v].children.size(), mine);
  }
  auto got = downcast(eng, label, know, layout, own);
  std::vector<std::vector<std::vector<uint64_t>>> out(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    out[v].assign(static_cast<size_t>(know[v].level + 1), {});
    for (const auto& f : got[v]) {
      if (f[0] >= static_cast<uint64_t>(know[v].level)) throw ProtocolError("broadcast2 stray");
      out[v][f[0]].push_back(f[1]);
    }
    out[v].back() = lists[v];
  }
  return out;
}

std::vector<std::vector<std::vector<Fields>>> neighbor_exchange(
    Engine& eng, const std::string& label, const Layout& layout,
    const std::vector<std::vector<char>>& active,
    const std::vector<std::vector<std::vector<Fields>>>& out) {
  const int n = eng.graph().n();
  std::vector<ExchangeProgram> progs;
  progs.reserve(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) progs.emplace_back(layout, active[v], out[v]);
  eng.run(label, eng.slot_for(static_cast<uint32_t>(1 + layout.bits())), progs);
  std::vector<std::vector<std::vector<Fields>>> res;
  res.reserve(static_cast<size_t>(n));
  for (auto& p : progs) res.push_back(std::move(p.received()));
  return res;
}

}  // namespace smallcut
