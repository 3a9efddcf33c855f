#include "smallcut/three_cuts.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <type_traits>

namespace smallcut {

std::string case_name(CaseLabel c) { return "CASE" + std::to_string(static_cast<int>(c)); }

std::optional<CaseLabel> classify_cut(const Graph& g, const BfsInfo& t, const CutKey& f) {
  if (f.size() != 3) return std::nullopt;
  if (!is_induced_cut(g, EdgeSet::of(g, f))) return std::nullopt;
  std::vector<Vertex> low;
  for (const auto& [x, y] : f) {
    if (t.parent[y] == x) low.push_back(y);
    else if (t.parent[x] == y) low.push_back(x);
  }
  auto anc = [&](Vertex a, Vertex b) { return t.is_ancestor(a, b); };
  auto nested = [&](Vertex a, Vertex b) { return anc(a, b) || anc(b, a); };
  switch (low.size()) {
    case 1:
      return CaseLabel::Case1;
    case 2:
      return nested(low[0], low[1]) ? CaseLabel::Case2 : CaseLabel::Case3;
    case 3:
      break;
    default:
      return std::nullopt;
  }
  std::sort(low.begin(), low.end(), [&](Vertex a, Vertex b) { return t.level[a] < t.level[b]; });
  const Vertex a = low[0], b = low[1], c = low[2];
  const bool ab = nested(a, b), ac = nested(a, c), bc = nested(b, c);
  if (ab && ac && bc) return CaseLabel::Case4;
  if (!ab && !ac && !bc) return CaseLabel::Case6;
  // the shallowest is the only candidate to contain both others
  if (anc(a, b) && anc(a, c) && !bc) return CaseLabel::Case5;
  return CaseLabel::Case7;
}

Layout one_cut_layout(const Codec& c) {
  const int w = c.id_bits(), q = c.count_bits();
  return Layout{{w, w, q, w, q, w}};
}

Layout two_cut_layout(const Codec& c) {
  const int w = c.id_bits(), q = c.count_bits();
  return Layout{{w, w, q, q, w, w, q, q, q, w, w, w, w}};
}

namespace {

Fields encode(const OneCutDetail& d) {
  auto u = [](long x) { return static_cast<uint64_t>(x); };
  return {u(d.a), u(d.parent), u(d.eta), u(d.pivot), u(d.h), u(d.pivot_level)};
}

OneCutDetail decode_one(const Fields& f) {
  auto i = [&](size_t k) { return static_cast<int>(f[k]); };
  return OneCutDetail{i(0), i(1), i(2), i(3), i(4), i(5)};
}

Fields encode(const TwoCutDetail& d) {
  auto u = [](long x) { return static_cast<uint64_t>(x); };
  return {u(d.a),     u(d.pa),        u(d.eta_a), u(d.h_a),   u(d.b),
          u(d.pb),    u(d.eta_b),     u(d.h_b),   u(d.gamma), u(d.lca),
          u(d.lca_level), u(d.pivot), u(d.pivot_level)};
}

TwoCutDetail decode_two(const Fields& f) {
  auto i = [&](size_t k) { return static_cast<int>(f[k]); };
  return TwoCutDetail{i(0), i(1), i(2), i(3), i(4),  i(5),  i(6),
                      i(7), i(8), i(9), i(10), i(11), i(12)};
}

CutEntry entry(CutKey edges, CaseLabel c, Vertex by, long rounds) {
  CutEntry e;
  e.edges = std::move(edges);
  std::sort(e.edges.begin(), e.edges.end());
  e.label = case_name(c);
  e.detected_by = by;
  e.rounds = rounds;
  return e;
}

CutKey tree_edges(std::initializer_list<std::pair<Vertex, Vertex>> child_parent) {
  CutKey k;
  for (auto [c, p] : child_parent) k.push_back(normalized(p, c));
  std::sort(k.begin(), k.end());
  return k;
}

// root..u along the sketch's parent pointers; empty when u is absent
std::vector<Vertex> chain(const SketchTree& s, Vertex u) {
  std::vector<Vertex> out;
  for (const SketchNode* x = s.find(u); x; x = x->parent < 0 ? nullptr : s.find(x->parent))
    out.push_back(x->id);
  std::reverse(out.begin(), out.end());
  return out;
}

bool on_chain(const std::vector<Vertex>& c, Vertex v) {
  return std::find(c.begin(), c.end(), v) != c.end();
}

bool one_two(int p, int q) { return (p == 1 && q == 2) || (p == 2 && q == 1); }

}  // namespace

// ---- CASE1 / CASE2: local from eta and H ------------------------------------

CutReport detect_case1(const Graph& g, const BfsInfo& t, const std::vector<NodeKnowledge>& know,
                       const InstanceTables& inst, long rounds) {
  CutReport rep;
  for (const auto& k : know)
    if (k.level > 0 && inst.eta_of(k) == 3)
      rep.add(entry(boundary(g, t.desc(k.id)).key(g), CaseLabel::Case1, k.id, rounds));
  return rep;
}

CutReport detect_case2(const Graph& g, const BfsInfo& t, const std::vector<NodeKnowledge>& know,
                       const InstanceTables& inst, long rounds) {
  CutReport rep;
  for (const auto& k : know) {
    const int ex = inst.eta_of(k);
    for (int l = 1; l < k.level; ++l) {
      const int h = inst.Hdesc[k.id][l];
      if (!one_two(inst.eta[k.id][l] - h, ex - h)) continue;
      VertexSet s = t.desc(k.anc[l]) ^ t.desc(k.id);
      rep.add(entry(boundary(g, s).key(g), CaseLabel::Case2, k.id, rounds));
    }
  }
  return rep;
}

// ---- CASE4: H of every ancestor pair, by Type-2 broadcast --------------------

CutReport detect_case4(Engine& eng, const std::vector<NodeKnowledge>& know,
                       const InstanceTables& inst) {
  const int n = eng.graph().n();
  std::vector<std::vector<uint64_t>> lists(static_cast<size_t>(n));
  for (Vertex y = 0; y < n; ++y)
    for (int l = 0; l < know[y].level; ++l)
      lists[y].push_back(static_cast<uint64_t>(inst.Hdesc[y][l]));
  auto got = broadcast_t2(eng, "broadcast2:case4", know, lists, eng.codec().count_bits());
  const long rounds = eng.stats().rounds_elapsed;
  CutReport rep;
  for (const auto& k : know) {
    const Vertex x = k.id;
    const int ex = inst.eta_of(k);
    for (int ly = 2; ly < k.level; ++ly) {
      const int hyx = inst.Hdesc[x][ly];
      const int ey = inst.eta[x][ly];
      for (int lz = 1; lz < ly; ++lz) {
        const int hzx = inst.Hdesc[x][lz];
        const int hzy = static_cast<int>(got[x][ly][lz]);
        const int ez = inst.eta[x][lz];
        // an edge from desc x leaving desc z lies in all three boundaries
        // and would balance the counts below without being cut
        if (hzx != 0) continue;
        if (ex - 1 == hyx + hzx && ey - 1 == hzy + hyx && ez - 1 == hzx + hzy)
          rep.add(entry(tree_edges({{x, k.parent}, {k.anc[ly], k.anc[ly - 1]},
                                    {k.anc[lz], k.anc[lz - 1]}}),
                        CaseLabel::Case4, x, rounds));
      }
    }
  }
  return rep;
}

// ---- sketch based cases ----------------------------------------------------

CutReport detect_case3(const Graph& g, const BfsInfo& t, const std::vector<NodeKnowledge>& know,
                       const InstanceTables& inst, const SketchTables& sk, long rounds) {
  CutReport rep;
  for (const auto& k : know) {
    if (k.level < 1) continue;
    const std::set<Vertex> spine(k.anc.begin(), k.anc.end());
    const int e1 = inst.eta_of(k);
    for (const auto& u : sk.s3[k.id].nodes) {
      if (spine.count(u.id)) continue;
      if (!one_two(e1 - u.gamma, u.eta - u.gamma)) continue;
      VertexSet s = t.desc(k.id) | t.desc(u.id);
      rep.add(entry(boundary(g, s).key(g), CaseLabel::Case3, k.id, rounds));
    }
  }
  return rep;
}

CutReport detect_case6_local(const std::vector<NodeKnowledge>& know, const InstanceTables& inst,
                             const SketchTables& sk, long rounds) {
  CutReport rep;
  for (const auto& k : know) {
    if (k.level < 1) continue;
    const SketchTree& s = sk.s3[k.id];
    const std::set<Vertex> spine(k.anc.begin(), k.anc.end());
    const int e1 = inst.eta_of(k);
    std::vector<const SketchNode*> cand;
    std::vector<std::vector<Vertex>> chains;
    for (const auto& u : s.nodes)
      if (!spine.count(u.id) && u.eta - 1 == u.gamma) {
        cand.push_back(&u);
        chains.push_back(chain(s, u.id));
      }
    for (size_t i = 0; i < cand.size(); ++i)
      for (size_t j = i + 1; j < cand.size(); ++j) {
        if (on_chain(chains[i], cand[j]->id) || on_chain(chains[j], cand[i]->id)) continue;
        if (e1 - 1 != cand[i]->gamma + cand[j]->gamma) continue;
        rep.add(entry(tree_edges({{k.id, k.parent},
                                  {cand[i]->id, cand[i]->parent},
                                  {cand[j]->id, cand[j]->parent}}),
                      CaseLabel::Case6, k.id, rounds));
      }
  }
  return rep;
}

void case6_at_edge(const NodeKnowledge& k, const SketchTables& sk,
                   const std::vector<Vertex>& nbr_anc, const std::vector<SketchTree>& nbr_s3,
                   long rounds, CutReport& out) {
  const int lq = static_cast<int>(nbr_anc.size()) - 1;
  auto own = [&](int l) -> const SketchTree& {
    return l == k.level ? sk.s3[k.id] : sk.anc_s3[k.id][l];
  };
  auto prefix = [](const std::vector<Vertex>& v, int l) {
    return std::vector<Vertex>(v.begin(), v.begin() + l + 1);
  };
  for (int la = 1; la <= k.level; ++la) {
    const Vertex a = k.anc[la];
    if (la <= lq && nbr_anc[la] == a) continue;  // a above the far end
    const SketchTree& sa = own(la);
    const SketchNode* na = sa.find(a);
    if (!na) continue;
    const auto anc_a = prefix(k.anc, la);
    for (int lb = 1; lb <= lq; ++lb) {
      const Vertex b = nbr_anc[lb];
      if (lb <= k.level && k.anc[lb] == b) continue;
      const SketchTree& sb = nbr_s3[lb];
      const SketchNode* nb = sb.find(b);
      if (!nb) continue;
      const auto anc_b = prefix(nbr_anc, lb);
      auto gab = sa.gamma_of(b, anc_b);
      if (!gab) gab = sb.gamma_of(a, anc_a);
      if (!gab || *gab == 0) continue;
      // third node from either sketch, disjoint from both
      std::set<Vertex> seen;
      for (const SketchTree* src : {&sa, &sb})
        for (const auto& w : src->nodes) {
          if (!seen.insert(w.id).second) continue;
          const auto cw = chain(*src, w.id);
          if (on_chain(cw, a) || on_chain(cw, b) || on_chain(anc_a, w.id) ||
              on_chain(anc_b, w.id))
            continue;
          auto gaw = sa.gamma_of(w.id, cw);
          auto gbw = sb.gamma_of(w.id, cw);
          if (!gaw || !gbw) continue;
          if (na->eta - 1 == *gab + *gaw && nb->eta - 1 == *gab + *gbw &&
              w.eta - 1 == *gaw + *gbw)
            out.add(entry(tree_edges({{a, k.anc[la - 1]}, {b, nbr_anc[lb - 1]}, {w.id, w.parent}}),
                          CaseLabel::Case6, k.id, rounds));
        }
    }
  }
}

CutReport detect_case7(const std::vector<NodeKnowledge>& know, const InstanceTables& inst,
                       const SketchTables& sk, long rounds) {
  CutReport rep;
  for (const auto& k : know) {
    const Vertex x = k.id;
    const int ex = inst.eta_of(k);
    const std::set<Vertex> spine(k.anc.begin(), k.anc.end());
    for (int l = 1; l < k.level; ++l) {
      const Vertex v = k.anc[l];
      const int hv = inst.Hdesc[x][l];
      if (ex - 1 != hv) continue;
      const int ev = inst.eta[x][l];
      const SketchTree& r = sk.reduced[x][l];
      for (const auto& u : r.nodes) {
        if (spine.count(u.id)) continue;
        if (on_chain(chain(r, u.id), v)) continue;  // inside desc v
        if (ev - 1 == hv + u.gamma && u.eta - 1 == u.gamma)
          rep.add(entry(tree_edges({{x, k.parent}, {v, k.anc[l - 1]}, {u.id, u.parent}}),
                        CaseLabel::Case7, x, rounds));
      }
    }
  }
  return rep;
}

// ---- layered run and CASE5 ---------------------------------------------------

LayeredResult run_layered(Engine& eng, const std::vector<NodeKnowledge>& know,
                          const PortAncestors& nbr, const InstanceTables& global) {
  const Graph& g = eng.graph();
  const int n = g.n();
  const int depth = n > 0 ? know[0].depth : 0;
  LayeredResult res;
  res.one_cut_levels.assign(static_cast<size_t>(n), {});
  res.pair_hits.assign(static_cast<size_t>(n), {});
  for (int p = 1; p < depth; ++p) {
    InstanceTables inst = make_instance(g, know, nbr, p);
    run_eta_stage(eng, know, nbr, inst, "layered:");
    run_zeta_stage(eng, know, nbr, inst, "layered:", &global);
    for (Vertex a : find_one_cuts(know, inst)) res.one_cut_levels[a].push_back(p);
    for (const auto& h : find_pair_cuts(know, inst))
      if (!h.nested) res.pair_hits[h.a].emplace_back(p, h);
  }

  res.d1.assign(static_cast<size_t>(n), std::nullopt);
  res.d2.assign(static_cast<size_t>(n), std::nullopt);
  for (const auto& k : know) {
    const Vertex a = k.id;
    if (!res.one_cut_levels[a].empty()) {
      const int p = res.one_cut_levels[a].front();
      res.d1[a] = OneCutDetail{a, k.parent, global.eta_of(k), k.anc[p], global.Hdesc[a][p], p};
    }
    const auto& hits = res.pair_hits[a];
    if (hits.empty()) continue;
    const std::pair<int, PairHit>* best = &hits.front();
    for (const auto& h : hits) {
      auto key = [](const std::pair<int, PairHit>& x) {
        return std::make_tuple(x.first, x.second.other_level, x.second.other);
      };
      if (key(h) < key(*best)) best = &h;
    }
    const int p = best->first;
    const PairHit& h = best->second;
    int lca_level = 0;
    while (k.anc[lca_level] != h.lca) ++lca_level;
    res.d2[a] = TwoCutDetail{a,
                             k.parent,
                             global.eta_of(k),
                             global.Hdesc[a][p],
                             h.other,
                             h.other_parent,
                             h.eta_other_g,
                             h.eta_other_g - h.eta_other,
                             h.gamma,
                             h.lca,
                             lca_level,
                             k.anc[p],
                             p};
  }
  return res;
}

namespace {

template <class D>
class DetailCastProgram : public NodeProgram {
 public:
  DetailCastProgram(const NodeKnowledge& k, const std::optional<D>& own, const Layout& layout,
                    std::vector<std::pair<size_t, D>>& inbox)
      : k_(&k), own_(own), layout_(&layout), inbox_(&inbox),
        last_(static_cast<long>(k.depth - k.level) + 1) {}

  void on_step(NodeContext& ctx, const std::vector<Message>& in) override {
    std::optional<D> best;
    for (const auto& m : in) {
      auto it = std::find(k_->children.begin(), k_->children.end(), m.from);
      if (it == k_->children.end()) throw ProtocolError("detail from a non-child");
      BitReader r = m.reader();
      D d = decode(layout_->read(r));
      inbox_->emplace_back(static_cast<size_t>(it - k_->children.begin()), d);
      if (!best || key(d) < key(*best)) best = d;
    }
    const long s = ctx.step();
    if (s == 1) best = own_;
    if (s > last_) throw ProtocolError("detail arrived after the last wave");
    if (best && !k_->is_root()) {
      BitWriter w;
      layout_->write(w, encode(*best));
      ctx.send(k_->parent_edge, w);
    }
    if (s == last_) finished_ = true;
  }
  bool done() const override { return finished_; }

 private:
  static auto key(const D& d) { return std::make_pair(d.pivot_level, d.a); }
  static D decode(const Fields& f) {
    if constexpr (std::is_same_v<D, OneCutDetail>) return decode_one(f);
    else return decode_two(f);
  }

  const NodeKnowledge* k_;
  std::optional<D> own_;
  const Layout* layout_;
  std::vector<std::pair<size_t, D>>* inbox_;
  long last_;
  bool finished_ = false;
};

template <class D>
void cast(Engine& eng, const std::string& label, const std::vector<NodeKnowledge>& know,
          const std::vector<std::optional<D>>& own, const Layout& layout,
          std::vector<std::vector<std::pair<size_t, D>>>& inbox) {
  const int n = eng.graph().n();
  inbox.assign(static_cast<size_t>(n), {});
  std::vector<DetailCastProgram<D>> progs;
  progs.reserve(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) progs.emplace_back(know[v], own[v], layout, inbox[v]);
  eng.run(label, eng.slot_for(static_cast<uint32_t>(layout.bits())), progs);
}

}  // namespace

std::vector<DetailInbox> convergecast_details(Engine& eng, const std::vector<NodeKnowledge>& know,
                                              const LayeredResult& layered) {
  const int n = eng.graph().n();
  std::vector<std::vector<std::pair<size_t, OneCutDetail>>> in1;
  std::vector<std::vector<std::pair<size_t, TwoCutDetail>>> in2;
  cast(eng, "convergecast:d1", know, layered.d1, one_cut_layout(eng.codec()), in1);
  cast(eng, "convergecast:d2", know, layered.d2, two_cut_layout(eng.codec()), in2);
  std::vector<DetailInbox> out(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    out[v].d1 = std::move(in1[v]);
    out[v].d2 = std::move(in2[v]);
  }
  return out;
}

CutReport detect_case5(const std::vector<NodeKnowledge>& know, const InstanceTables& inst,
                       const std::vector<DetailInbox>& inbox, long rounds) {
  CutReport rep;
  for (const auto& k : know) {
    const Vertex z = k.id;
    auto report = [&](int l, Vertex a, Vertex pa, Vertex b, Vertex pb, Vertex pivot) {
      CutEntry e =
          entry(tree_edges({{k.anc[l], k.anc[l - 1]}, {a, pa}, {b, pb}}), CaseLabel::Case5, z, rounds);
      e.pivot = pivot;
      e.lca = z;
      rep.add(std::move(e));
    };
    const auto& d1 = inbox[z].d1;
    for (size_t i = 0; i < d1.size(); ++i)
      for (size_t j = i + 1; j < d1.size(); ++j) {
        if (d1[i].first == d1[j].first) continue;
        const OneCutDetail& a = d1[i].second;
        const OneCutDetail& b = d1[j].second;
        for (int l = std::max({1, a.pivot_level, b.pivot_level}); l <= k.level; ++l)
          if (inst.eta[z][l] - 1 == a.h + b.h)
            report(l, a.a, a.parent, b.a, b.parent,
                   a.pivot_level >= b.pivot_level ? a.pivot : b.pivot);
      }
    for (const auto& [c, d] : inbox[z].d2) {
      if (d.lca != z) continue;
      if (d.eta_a - 1 != d.h_a + d.gamma || d.eta_b - 1 != d.h_b + d.gamma) continue;
      for (int l = std::max(1, d.pivot_level); l <= k.level; ++l)
        if (inst.eta[z][l] - 1 == d.h_a + d.h_b) report(l, d.a, d.pa, d.b, d.pb, d.pivot);
    }
  }
  return rep;
}

// ---- battery ------------------------------------------------------------------

Size3Result run_size3(Engine& eng, const BfsInfo& t, const std::vector<NodeKnowledge>& know,
                      const PortAncestors& nbr, const InstanceTables& global) {
  const Graph& g = eng.graph();
  Size3Result res;
  auto now = [&] { return eng.stats().rounds_elapsed; };

  res.of(CaseLabel::Case1) = detect_case1(g, t, know, global, now());
  res.of(CaseLabel::Case2) = detect_case2(g, t, know, global, now());
  res.of(CaseLabel::Case4) = detect_case4(eng, know, global);

  SketchTables sk = compute_sketches(eng, know, nbr, global);
  res.of(CaseLabel::Case3) = detect_case3(g, t, know, global, sk, now());
  res.of(CaseLabel::Case7) = detect_case7(know, global, sk, now());
  CutReport c6 = detect_case6_local(know, global, sk, now());
  std::vector<CutReport> at_edge(static_cast<size_t>(g.n()));
  run_sketch3_spread(eng, know, nbr, sk,
                     [&](Vertex u, size_t port, const std::vector<SketchTree>& far) {
                       case6_at_edge(know[u], sk, nbr[u][port], far, -1, at_edge[u]);
                     });
  const long spread_end = now();
  for (auto& r : at_edge) {
    for (auto e : r.entries()) {
      e.rounds = spread_end;
      c6.add(std::move(e));
    }
  }
  res.of(CaseLabel::Case6) = std::move(c6);

  res.layered = run_layered(eng, know, nbr, global);
  res.inbox = convergecast_details(eng, know, res.layered);
  res.of(CaseLabel::Case5) = detect_case5(know, global, res.inbox, now());

  for (const auto& r : res.by_case) res.all.merge(r);
  return res;
}

}  // namespace smallcut
