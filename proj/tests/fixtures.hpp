#pragma once

#include "smallcut/three_cuts.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fixtures {

using namespace smallcut;

// Small dense clusters (single vertices, triangles, K4s) joined by a few
// random edges. Rich in non-trivial small cuts.
Graph blob_graph(uint64_t seed);
// Clusters in a row, consecutive ones joined by 1-3 edges, plus a few
// longer jumps. Favours nested cut configurations.
Graph blob_chain(uint64_t seed);

struct CaseFixture {
  std::string name;
  Graph g;
  Vertex root = 0;  // under this root the cut falls in `label`
  CaseLabel label = CaseLabel::Case1;
  CutKey cut;
};

// Deterministic search over blob graphs with edge connectivity 3; the first
// `count` hits whose oracle min-cut classifies as c under some root.
std::vector<CaseFixture> case_fixtures(CaseLabel c, int count);

// Hand-made graphs with known connectivity: K4, the triangular prism, the
// cube and the Petersen graph.
std::vector<std::pair<std::string, Graph>> named_lambda3();

// One representative per isomorphism class of graphs on n <= 8 vertices
// (all of them, or only the connected ones). Built by extending every class
// on n-1 vertices with one more vertex and reducing to a canonical form.
std::vector<Graph> graph_classes(int n, bool connected_only);

}  // namespace fixtures
