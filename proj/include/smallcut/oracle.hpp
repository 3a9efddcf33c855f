#pragma once

#include "smallcut/graph.hpp"

#include <stdexcept>
#include <vector>

namespace smallcut {

// Raised when brute-force enumeration is requested above the configured
// vertex limit. Callers fall back to edge_connectivity().
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  int lambda = 0;
  std::vector<CutKey> min_cuts;  // sorted, duplicate free
};

// Default 16, overridable through MINCUT_ORACLE_LIMIT.
int oracle_limit();

OracleResult min_cut_oracle(const Graph& g);
OracleResult min_cut_oracle(const Graph& g, int limit);

// Every induced cut delta(A) with |delta(A)| <= max_size, keyed canonically.
// Same enumeration as the oracle (vertex 0 stays outside A).
std::vector<CutKey> small_cuts(const Graph& g, int max_size, int limit);

// Connectivity-only mode: lambda via Stoer-Wagner, no enumeration.
int edge_connectivity(const Graph& g);

}  // namespace smallcut
