#pragma once

#include "smallcut/graph.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace smallcut {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Family { Path, Cycle, Complete, Grid, Prism, Barbell, RandomConnected };

struct GenParams {
  int n = 0;
  uint64_t seed = 1;
  double edge_prob = 0.35;  // random_connected only
  int min_lambda = 0;       // random_connected: reject graphs below this connectivity
  int max_attempts = 10000;
};

Family parse_family(const std::string& name);
std::string family_name(Family f);
std::vector<std::string> family_names();

Graph generate(Family f, const GenParams& p);

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph grid_graph(int rows, int cols);
Graph prism_graph(int k);    // C_k x K_2, 2k vertices
Graph barbell_graph(int n);  // two cliques joined by one edge
Graph random_connected(int n, uint64_t seed, double p, int min_lambda = 0,
                       int max_attempts = 10000);

}  // namespace smallcut
