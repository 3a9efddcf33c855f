#include "smallcut/small_cuts.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace smallcut {

ZetaElement zeta_combine(const ZetaElement& a, const ZetaElement& b) {
  using T = ZetaElement::Tag;
  if (a.tag == T::Identity) return b;
  if (b.tag == T::Identity) return a;
  if (a.tag == T::Absorbing || b.tag == T::Absorbing) return ZetaElement::absorbing();
  if (a.w == b.w && a.pw == b.pw && a.eta_w == b.eta_w && a.eta_g == b.eta_g && a.lca == b.lca)
    return ZetaElement::tuple(a.w, a.pw, a.eta_w, a.gamma + b.gamma, a.lca, a.eta_g);
  return ZetaElement::absorbing();
}

std::string to_string(const ZetaElement& z) {
  switch (z.tag) {
    case ZetaElement::Tag::Identity:
      return "identity";
    case ZetaElement::Tag::Absorbing:
      return "absorbing";
    default:
      break;
  }
  std::ostringstream os;
  os << '<' << z.w << ',' << z.pw << ',' << z.eta_w << ',' << z.gamma << ";lca=" << z.lca;
  if (z.eta_g != z.eta_w) os << ";g=" << z.eta_g;
  os << '>';
  return os.str();
}

SemigroupSpec<int> eta_spec(const Codec& c) {
  SemigroupSpec<int> s;
  s.name = "eta";
  s.combine = [](int a, int b) { return a + b; };
  s.encode = [c](BitWriter& w, int x) { c.count(w, x); };
  s.decode = [c](BitReader& r) { return c.count(r); };
  s.element_bits = c.count_bits();
  s.identity = 0;
  return s;
}

SemigroupSpec<ZetaElement> zeta_spec(const Codec& c) {
  SemigroupSpec<ZetaElement> s;
  s.name = "zeta";
  s.combine = zeta_combine;
  s.encode = [c](BitWriter& w, const ZetaElement& z) {
    w.put(static_cast<uint64_t>(z.tag), 2);
    c.id(w, z.w);
    c.id(w, z.pw);
    c.count(w, z.eta_w);
    c.count(w, z.gamma);
    c.count(w, z.eta_g);
    c.id(w, z.lca);
  };
  s.decode = [c](BitReader& r) {
    ZetaElement z;
    z.tag = static_cast<ZetaElement::Tag>(r.get(2));
    z.w = c.id(r);
    z.pw = c.id(r);
    z.eta_w = c.count(r);
    z.gamma = c.count(r);
    z.eta_g = c.count(r);
    z.lca = c.id(r);
    if (z.tag != ZetaElement::Tag::Tuple) z = z.tag == ZetaElement::Tag::Identity
                                                  ? ZetaElement::identity()
                                                  : ZetaElement::absorbing();
    return z;
  };
  s.element_bits = 2 + 3 * c.id_bits() + 3 * c.count_bits();
  s.identity = ZetaElement::identity();
  return s;
}

bool is_tree_port(const NodeKnowledge& k, EdgeId e) {
  if (e == k.parent_edge) return true;
  return std::find(k.child_edges.begin(), k.child_edges.end(), e) != k.child_edges.end();
}

PortAncestors exchange_ancestors(Engine& eng, const std::vector<NodeKnowledge>& know) {
  const Graph& g = eng.graph();
  const int n = g.n();
  Layout layout{{eng.word_bits()}};
  std::vector<std::vector<char>> active(static_cast<size_t>(n));
  std::vector<std::vector<std::vector<Fields>>> out(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    active[v].assign(g.adj(v).size(), 1);
    std::vector<Fields> mine;
    for (Vertex a : know[v].anc) mine.push_back(Fields{static_cast<uint64_t>(a)});
    out[v].assign(g.adj(v).size(), mine);
  }
  auto got = neighbor_exchange(eng, "exchange:ancestors", layout, active, out);
  PortAncestors res(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    res[v].resize(g.adj(v).size());
    for (size_t p = 0; p < got[v].size(); ++p)
      for (const auto& f : got[v][p]) res[v][p].push_back(static_cast<Vertex>(f[0]));
  }
  return res;
}

InstanceTables make_instance(const Graph& g, const std::vector<NodeKnowledge>& know,
                             const PortAncestors& nbr, int lo) {
  const int n = g.n();
  InstanceTables inst;
  inst.lo = lo;
  inst.in_port.resize(static_cast<size_t>(n));
  for (Vertex a = 0; a < n; ++a) {
    const auto& k = know[a];
    const auto& ports = g.adj(a);
    inst.in_port[a].assign(ports.size(), 0);
    if (k.level < lo) continue;
    for (size_t p = 0; p < ports.size(); ++p) {
      const auto& an = nbr[a][p];
      const int nl = static_cast<int>(an.size()) - 1;
      bool same = nl >= lo && an[lo] == k.anc[lo];
      bool pivot_edge = k.level == lo && ports[p].edge == k.parent_edge;
      inst.in_port[a][p] = same || pivot_edge;
    }
  }
  inst.H.resize(static_cast<size_t>(n));
  inst.Hdesc.resize(static_cast<size_t>(n));
  inst.eta.resize(static_cast<size_t>(n));
  inst.nbr_eta.resize(static_cast<size_t>(n));
  inst.nbr_eta_g.resize(static_cast<size_t>(n));
  inst.Z.resize(static_cast<size_t>(n));
  inst.Zdesc.resize(static_cast<size_t>(n));
  return inst;
}

std::vector<int> local_H(const Graph& g, const NodeKnowledge& k,
                         const std::vector<std::vector<Vertex>>& nbr_anc,
                         const std::vector<char>& in_port, int lo) {
  std::vector<int> h(static_cast<size_t>(k.level + 1), 0);
  const auto& ports = g.adj(k.id);
  for (int l = lo; l <= k.level; ++l) {
    const Vertex u = k.anc[l];
    for (size_t p = 0; p < ports.size(); ++p) {
      if (!in_port[p]) continue;
      const auto& an = nbr_anc[p];
      bool below = static_cast<int>(an.size()) > l && an[l] == u;
      if (!below) ++h[l];
    }
  }
  return h;
}

std::vector<ZetaElement> local_Z(const Graph& g, const NodeKnowledge& k,
                                 const std::vector<std::vector<Vertex>>& nbr_anc,
                                 const std::vector<char>& in_port,
                                 const std::vector<std::vector<int>>& nbr_eta, int lo,
                                 const std::vector<std::vector<int>>* nbr_eta_g) {
  std::vector<ZetaElement> z(static_cast<size_t>(k.level + 1), ZetaElement::identity());
  const auto& ports = g.adj(k.id);
  std::vector<size_t> nontree;
  int lmin = k.level;
  for (size_t p = 0; p < ports.size(); ++p)
    if (in_port[p] && !is_tree_port(k, ports[p].edge)) {
      nontree.push_back(p);
      lmin = std::min(lmin, static_cast<int>(nbr_anc[p].size()) - 1);
    }
  for (int l = std::max(lo, 1); l <= k.level; ++l) {
    if (l > lmin) {
      z[l] = ZetaElement::absorbing();
      continue;
    }
    // level-l ancestors of the non-tree neighbours, other than alpha(a,l)
    std::map<Vertex, std::pair<size_t, int>> hits;  // w -> (witness port, count)
    for (size_t p : nontree) {
      Vertex w = nbr_anc[p][l];
      if (w == k.anc[l]) continue;
      auto [it, fresh] = hits.emplace(w, std::make_pair(p, 0));
      ++it->second.second;
    }
    if (hits.empty()) continue;
    if (hits.size() > 1) {
      z[l] = ZetaElement::absorbing();
      continue;
    }
    const auto& [w, pc] = *hits.begin();
    size_t p = pc.first;
    const int eg = nbr_eta_g ? (*nbr_eta_g)[p][l] : nbr_eta[p][l];
    int j = l - 1;  // the chains agree above level l
    while (nbr_anc[p][j] != k.anc[j]) --j;
    z[l] = ZetaElement::tuple(w, nbr_anc[p][l - 1], nbr_eta[p][l], pc.second, k.anc[j], eg);
  }
  return z;
}

void run_eta_stage(Engine& eng, const std::vector<NodeKnowledge>& know, const PortAncestors& nbr,
                   InstanceTables& inst, const std::string& prefix) {
  const Graph& g = eng.graph();
  const int n = g.n();
  const int lo = inst.lo;
  for (Vertex a = 0; a < n; ++a) inst.H[a] = local_H(g, know[a], nbr[a], inst.in_port[a], lo);
  auto res = trsf_compute(eng, know, eta_spec(eng.codec()), inst.H, lo, prefix + "trsf:eta");
  std::vector<uint64_t> eta(static_cast<size_t>(n), 0);
  for (Vertex a = 0; a < n; ++a) {
    if (know[a].level < lo) {
      inst.Hdesc[a].clear();
      continue;
    }
    inst.Hdesc[a] = std::move(res.xdesc[a]);
    eta[a] = static_cast<uint64_t>(inst.Hdesc[a][know[a].level]);
  }
  auto down = broadcast_t1(eng, prefix + "broadcast1:eta", know, eta, eng.codec().count_bits(), lo);
  for (Vertex a = 0; a < n; ++a) {
    inst.eta[a].assign(down[a].begin(), down[a].end());
  }
}

void run_zeta_stage(Engine& eng, const std::vector<NodeKnowledge>& know, const PortAncestors& nbr,
                    InstanceTables& inst, const std::string& prefix, const InstanceTables* global) {
  const Graph& g = eng.graph();
  const int n = g.n();
  const int lo = inst.lo;
  const Codec& c = eng.codec();
  Layout layout{{c.id_bits(), c.count_bits()}};
  if (global) layout.widths.push_back(c.count_bits());
  std::vector<std::vector<char>> active(static_cast<size_t>(n));
  std::vector<std::vector<std::vector<Fields>>> out(static_cast<size_t>(n));
  for (Vertex a = 0; a < n; ++a) {
    const auto& ports = g.adj(a);
    active[a].assign(ports.size(), 0);
    out[a].resize(ports.size());
    if (know[a].level < lo) continue;
    std::vector<Fields> mine;
    for (int l = lo; l <= know[a].level; ++l) {
      mine.push_back(Fields{static_cast<uint64_t>(l), static_cast<uint64_t>(inst.eta[a][l])});
      if (global) mine.back().push_back(static_cast<uint64_t>(global->eta[a][l]));
    }
    for (size_t p = 0; p < ports.size(); ++p)
      if (inst.in_port[a][p] && !is_tree_port(know[a], ports[p].edge)) {
        active[a][p] = 1;
        out[a][p] = mine;
      }
  }
  auto got = neighbor_exchange(eng, prefix + "exchange:zeta", layout, active, out);
  for (Vertex a = 0; a < n; ++a) {
    const auto& ports = g.adj(a);
    inst.nbr_eta[a].assign(ports.size(), {});
    inst.nbr_eta_g[a].assign(ports.size(), {});
    for (size_t p = 0; p < ports.size(); ++p) {
      if (!active[a][p]) continue;
      inst.nbr_eta[a][p].assign(nbr[a][p].size(), 0);
      inst.nbr_eta_g[a][p].assign(nbr[a][p].size(), 0);
      for (const auto& f : got[a][p]) {
        inst.nbr_eta[a][p][f[0]] = static_cast<int>(f[1]);
        inst.nbr_eta_g[a][p][f[0]] = static_cast<int>(global ? f[2] : f[1]);
      }
    }
    inst.Z[a] = know[a].level < lo ? std::vector<ZetaElement>{}
                                   : local_Z(g, know[a], nbr[a], inst.in_port[a], inst.nbr_eta[a],
                                             lo, &inst.nbr_eta_g[a]);
  }
  auto res = trsf_compute(eng, know, zeta_spec(c), inst.Z, lo, prefix + "trsf:zeta");
  for (Vertex a = 0; a < n; ++a)
    inst.Zdesc[a] = know[a].level < lo ? std::vector<ZetaElement>{} : std::move(res.xdesc[a]);
}

std::vector<Vertex> find_one_cuts(const std::vector<NodeKnowledge>& know,
                                  const InstanceTables& inst) {
  std::vector<Vertex> out;
  for (const auto& k : know)
    if (k.level > inst.lo && inst.eta_of(k) == 1) out.push_back(k.id);
  return out;
}

std::vector<PairHit> find_pair_cuts(const std::vector<NodeKnowledge>& know,
                                    const InstanceTables& inst) {
  std::vector<PairHit> out;
  for (const auto& k : know) {
    if (k.level <= inst.lo) continue;
    const Vertex a = k.id;
    const int eta_a = inst.eta_of(k);
    for (int l = inst.lo + 1; l <= k.level; ++l) {
      const ZetaElement& z = inst.Zdesc[a][l];
      if (z.is_tuple() && eta_a - z.gamma == 1 && z.eta_w - z.gamma == 1)
        out.push_back(PairHit{a, z.w, z.pw, false, z.gamma, z.eta_w, z.eta_g, l, z.lca});
      if (l < k.level) {
        const int h = inst.Hdesc[a][l];
        const int eta_v = inst.eta[a][l];
        if (eta_v - h == 1 && eta_a - h == 1)
          out.push_back(PairHit{a, k.anc[l], k.anc[l - 1], true, h, eta_v, eta_v, l, k.anc[l]});
      }
    }
  }
  return out;
}

CutReport detect_1cuts(const Graph&, const std::vector<NodeKnowledge>& know,
                       const InstanceTables& inst, long rounds) {
  CutReport rep;
  for (Vertex v : find_one_cuts(know, inst)) {
    CutEntry e;
    e.edges = {normalized(know[v].parent, v)};
    e.label = "1-respect";
    e.detected_by = v;
    e.rounds = rounds;
    rep.add(std::move(e));
  }
  return rep;
}

CutReport detect_2cuts(const Graph& g, const BfsInfo& tree, const std::vector<NodeKnowledge>& know,
                       const InstanceTables& inst, long rounds) {
  CutReport rep;
  for (const auto& k : know)
    if (k.level > 0 && inst.eta_of(k) == 2) {
      CutEntry e;
      e.edges = boundary(g, tree.desc(k.id)).key(g);
      e.label = "1-respect";
      e.detected_by = k.id;
      e.rounds = rounds;
      rep.add(std::move(e));
    }
  for (const auto& h : find_pair_cuts(know, inst)) {
    CutEntry e;
    e.edges = {normalized(h.other_parent, h.other), normalized(know[h.a].parent, h.a)};
    e.label = h.nested ? "2-nested" : "2-disjoint";
    e.detected_by = h.a;
    e.rounds = rounds;
    rep.add(std::move(e));
  }
  return rep;
}

}  // namespace smallcut
