#pragma once

#include "smallcut/report.hpp"
#include "smallcut/tree.hpp"

#include <string>
#include <vector>

namespace smallcut {

struct ZetaElement {
  enum class Tag : uint8_t { Identity = 0, Absorbing = 1, Tuple = 2 };
  Tag tag = Tag::Identity;
  Vertex w = 0;
  Vertex pw = 0;
  int eta_w = 0;
  int gamma = 0;
  int eta_g = 0;   // eta(w) in G; differs from eta_w inside pivoted instances
  Vertex lca = 0;  // LCA of w and the subtree the tuple describes

  static ZetaElement identity() { return {}; }
  static ZetaElement absorbing() { return {Tag::Absorbing, 0, 0, 0, 0, 0, 0}; }
  // eta_g < 0 means eta_w
  static ZetaElement tuple(Vertex w, Vertex pw, int eta_w, int gamma, Vertex lca,
                           int eta_g = -1) {
    return {Tag::Tuple, w, pw, eta_w, gamma, eta_g < 0 ? eta_w : eta_g, lca};
  }
  bool is_tuple() const { return tag == Tag::Tuple; }
  bool operator==(const ZetaElement& o) const {
    if (tag != o.tag) return false;
    return tag != Tag::Tuple || (w == o.w && pw == o.pw && eta_w == o.eta_w &&
                                 gamma == o.gamma && eta_g == o.eta_g && lca == o.lca);
  }
};

ZetaElement zeta_combine(const ZetaElement& a, const ZetaElement& b);
std::string to_string(const ZetaElement& z);

SemigroupSpec<int> eta_spec(const Codec& c);
SemigroupSpec<ZetaElement> zeta_spec(const Codec& c);

// [v][port] -> A(neighbour) as received over that port.
using PortAncestors = std::vector<std::vector<std::vector<Vertex>>>;

// Phase "exchange:ancestors": every node streams A(v) to all neighbours.
PortAncestors exchange_ancestors(Engine& eng, const std::vector<NodeKnowledge>& know);

bool is_tree_port(const NodeKnowledge& k, EdgeId e);

// Tables for one instance. lo = 0 is G itself; lo = P > 0 stands for every
// pivoted subgraph G_v with level(v) = P at once (they share no edge).
// Level-indexed vectors hold entries for lo <= l <= level(a).
struct InstanceTables {
  int lo = 0;
  std::vector<std::vector<char>> in_port;          // [a][p]
  std::vector<std::vector<int>> H;                 // H_a^{alpha(a,l)}
  std::vector<std::vector<int>> Hdesc;             // H_{desc a}^{alpha(a,l)}
  std::vector<std::vector<int>> eta;               // eta(alpha(a,l)) inside the instance
  std::vector<std::vector<std::vector<int>>> nbr_eta;  // [a][p][l], non-tree ports
  std::vector<std::vector<std::vector<int>>> nbr_eta_g;  // same, eta in G (pivoted runs)
  std::vector<std::vector<ZetaElement>> Z;         // Z_a^{alpha(a,l)}
  std::vector<std::vector<ZetaElement>> Zdesc;     // Z_{desc a}^{alpha(a,l)}

  int eta_of(const NodeKnowledge& k) const { return eta[k.id][k.level]; }
};

InstanceTables make_instance(const Graph& g, const std::vector<NodeKnowledge>& know,
                             const PortAncestors& nbr, int lo);

// Local H_a^{alpha(a,l)} from neighbour ancestor lists.
std::vector<int> local_H(const Graph& g, const NodeKnowledge& k,
                         const std::vector<std::vector<Vertex>>& nbr_anc,
                         const std::vector<char>& in_port, int lo);

// Local Z_a^{alpha(a,l)}; needs nbr_eta for the non-tree ports. nbr_eta_g,
// when given, fills the eta-in-G field of the tuple.
std::vector<ZetaElement> local_Z(const Graph& g, const NodeKnowledge& k,
                                 const std::vector<std::vector<Vertex>>& nbr_anc,
                                 const std::vector<char>& in_port,
                                 const std::vector<std::vector<int>>& nbr_eta, int lo,
                                 const std::vector<std::vector<int>>* nbr_eta_g = nullptr);

// trsf:eta followed by broadcast1:eta. Labels get the given prefix.
void run_eta_stage(Engine& eng, const std::vector<NodeKnowledge>& know, const PortAncestors& nbr,
                   InstanceTables& inst, const std::string& prefix = "");
// exchange:zeta followed by trsf:zeta. With global set, the exchange also
// carries eta in G so tuples of a pivoted instance know it.
void run_zeta_stage(Engine& eng, const std::vector<NodeKnowledge>& know, const PortAncestors& nbr,
                    InstanceTables& inst, const std::string& prefix = "",
                    const InstanceTables* global = nullptr);

// A 2-cut decided at node a inside an instance.
struct PairHit {
  Vertex a = -1;
  Vertex other = -1;
  Vertex other_parent = -1;
  bool nested = false;  // other is an ancestor of a
  int gamma = 0;        // disjoint: gamma(desc a, desc other); nested: H_{desc a}^{other}
  int eta_other = 0;    // inside the instance
  int eta_other_g = 0;  // in G
  int other_level = 0;
  Vertex lca = -1;
};

std::vector<Vertex> find_one_cuts(const std::vector<NodeKnowledge>& know, const InstanceTables& inst);
std::vector<PairHit> find_pair_cuts(const std::vector<NodeKnowledge>& know,
                                    const InstanceTables& inst);

// Report builders for the global instance. Cut edges of 1-respecting cuts
// (eta(v) = 2) are recovered from the witness desc(v) by the observer.
CutReport detect_1cuts(const Graph& g, const std::vector<NodeKnowledge>& know,
                       const InstanceTables& inst, long rounds);
CutReport detect_2cuts(const Graph& g, const BfsInfo& tree, const std::vector<NodeKnowledge>& know,
                       const InstanceTables& inst, long rounds);

}  // namespace smallcut
