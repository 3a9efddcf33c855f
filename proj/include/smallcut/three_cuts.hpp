#pragma once

#include "smallcut/sketch.hpp"
#include "smallcut/small_cuts.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace smallcut {

enum class CaseLabel { Case1 = 1, Case2, Case3, Case4, Case5, Case6, Case7 };

std::string case_name(CaseLabel c);  // "CASE1".."CASE7"

// Structural class of an induced cut of size 3 with respect to the tree:
// tree-edge count, then subset/disjoint relations of the lower endpoints.
// nullopt when f is not an induced cut of size 3.
std::optional<CaseLabel> classify_cut(const Graph& g, const BfsInfo& t, const CutKey& f);

struct OneCutDetail {
  Vertex a = -1;
  Vertex parent = -1;
  int eta = 0;
  Vertex pivot = -1;
  int h = 0;  // H_{desc a}^{pivot}
  int pivot_level = 0;
  bool operator==(const OneCutDetail&) const = default;
};

struct TwoCutDetail {
  Vertex a = -1;
  Vertex pa = -1;
  int eta_a = 0;
  int h_a = 0;
  Vertex b = -1;
  Vertex pb = -1;
  int eta_b = 0;
  int h_b = 0;
  int gamma = 0;
  Vertex lca = -1;
  int lca_level = 0;
  Vertex pivot = -1;
  int pivot_level = 0;
  bool operator==(const TwoCutDetail&) const = default;
};

Layout one_cut_layout(const Codec& c);
Layout two_cut_layout(const Codec& c);

// Outcome of running the size 1/2 detectors on every pivoted subgraph.
struct LayeredResult {
  // levels P (1 <= P < level(a)) where (pi a, a) is a 1-cut of G_{alpha(a,P)}
  std::vector<std::vector<int>> one_cut_levels;
  // (P, hit) for every disjoint 2-cut with partner no deeper than a
  std::vector<std::vector<std::pair<int, PairHit>>> pair_hits;
  std::vector<std::optional<OneCutDetail>> d1;
  std::vector<std::optional<TwoCutDetail>> d2;
};

// One instance per pivot level P = 1..Depth-1, all pivots of a level at
// once. Phase labels are prefixed "layered:". Details are derived locally.
LayeredResult run_layered(Engine& eng, const std::vector<NodeKnowledge>& know,
                          const PortAncestors& nbr, const InstanceTables& global);

struct DetailInbox {
  std::vector<std::pair<size_t, OneCutDetail>> d1;  // (child index, detail)
  std::vector<std::pair<size_t, TwoCutDetail>> d2;
};

// Phases "convergecast:d1" and "convergecast:d2". Each wave forwards the
// child candidate with the shallowest pivot (ties: lowest node id).
std::vector<DetailInbox> convergecast_details(Engine& eng, const std::vector<NodeKnowledge>& know,
                                              const LayeredResult& layered);

struct Size3Result {
  std::array<CutReport, 7> by_case;
  CutReport all;
  LayeredResult layered;
  std::vector<DetailInbox> inbox;

  CutReport& of(CaseLabel c) { return by_case[static_cast<size_t>(c) - 1]; }
  const CutReport& of(CaseLabel c) const { return by_case[static_cast<size_t>(c) - 1]; }
};

// Individual detectors. Cut edges that are not tree edges are recovered by
// the observer from the witness vertex set.
CutReport detect_case1(const Graph& g, const BfsInfo& t, const std::vector<NodeKnowledge>& know,
                       const InstanceTables& inst, long rounds);
CutReport detect_case2(const Graph& g, const BfsInfo& t, const std::vector<NodeKnowledge>& know,
                       const InstanceTables& inst, long rounds);
// Runs "broadcast2:case4".
CutReport detect_case4(Engine& eng, const std::vector<NodeKnowledge>& know,
                       const InstanceTables& inst);
CutReport detect_case3(const Graph& g, const BfsInfo& t, const std::vector<NodeKnowledge>& know,
                       const InstanceTables& inst, const SketchTables& sk, long rounds);
// Sub-case with one vanishing gamma, decided at the shallow-side owner.
CutReport detect_case6_local(const std::vector<NodeKnowledge>& know, const InstanceTables& inst,
                             const SketchTables& sk, long rounds);
CutReport detect_case7(const std::vector<NodeKnowledge>& know, const InstanceTables& inst,
                       const SketchTables& sk, long rounds);
CutReport detect_case5(const std::vector<NodeKnowledge>& know, const InstanceTables& inst,
                       const std::vector<DetailInbox>& inbox, long rounds);

// Decision made at u once the sketches of the far end of a non-tree edge
// have arrived: every disjoint pair of ancestors (one per side) plus a third
// node from either sketch. Used as the hook of run_sketch3_spread.
void case6_at_edge(const NodeKnowledge& k, const SketchTables& sk,
                   const std::vector<Vertex>& nbr_anc, const std::vector<SketchTree>& nbr_s3,
                   long rounds, CutReport& out);

// Every size-3 detector, in order; all run regardless of earlier finds.
Size3Result run_size3(Engine& eng, const BfsInfo& t, const std::vector<NodeKnowledge>& know,
                      const PortAncestors& nbr, const InstanceTables& global);

}  // namespace smallcut
