#include "smallcut/generators.hpp"

#include "smallcut/oracle.hpp"

#include <cmath>
#include <random>

namespace smallcut {

Family parse_family(const std::string& name) {
  if (name == "path") return Family::Path;
  if (name == "cycle") return Family::Cycle;
  if (name == "complete") return Family::Complete;
  if (name == "grid") return Family::Grid;
  if (name == "prism") return Family::Prism;
  if (name == "barbell") return Family::Barbell;
  if (name == "random_connected" || name == "random") return Family::RandomConnected;
  throw InputError("unknown graph family '" + name + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Path: return "path";
    case Family::Cycle: return "cycle";
    case Family::Complete: return "complete";
    case Family::Grid: return "grid";
    case Family::Prism: return "prism";
    case Family::Barbell: return "barbell";
    case Family::RandomConnected: return "random_connected";
  }
  return "?";
}

std::vector<std::string> family_names() {
  return {"path", "cycle", "complete", "grid", "prism", "barbell", "random_connected"};
}

Graph path_graph(int n) {
  if (n < 2) throw GenerationError("path needs n >= 2");
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle_graph(int n) {
  if (n < 3) throw GenerationError("cycle needs n >= 3");
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph complete_graph(int n) {
  if (n < 2) throw GenerationError("complete graph needs n >= 2");
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph grid_graph(int rows, int cols) {
  if (rows < 2 || cols < 2) throw GenerationError("grid needs at least 2x2");
  Graph g(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      if (c + 1 < cols) g.add_edge(v, v + 1);
      if (r + 1 < rows) g.add_edge(v, v + cols);
    }
  return g;
}

Graph prism_graph(int k) {
  if (k < 3) throw GenerationError("prism needs k >= 3 (n >= 6)");
  Graph g(2 * k);
  for (int i = 0; i < k; ++i) g.add_edge(i, (i + 1) % k);
  for (int i = 0; i < k; ++i) g.add_edge(k + i, k + (i + 1) % k);
  for (int i = 0; i < k; ++i) g.add_edge(i, k + i);
  return g;
}

Graph barbell_graph(int n) {
  if (n < 6) throw GenerationError("barbell needs n >= 6");
  int h = n / 2;
  Graph g(n);
  for (int i = 0; i < h; ++i)
    for (int j = i + 1; j < h; ++j) g.add_edge(i, j);
  for (int i = h; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  g.add_edge(h - 1, h);
  return g;
}

Graph random_connected(int n, uint64_t seed, double p, int min_lambda, int max_attempts) {
  if (n < 2) throw GenerationError("random_connected needs n >= 2");
  if (p <= 0.0 || p > 1.0) throw GenerationError("edge probability must be in (0,1]");
  if (min_lambda > n - 1) throw GenerationError("requested connectivity exceeds n-1");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (x < p) g.add_edge(i, j);
      }
    if (!g.connected()) continue;
    if (min_lambda > 0 && edge_connectivity(g) < min_lambda) continue;
    return g;
  }
  throw GenerationError("random_connected: no graph satisfied the constraints after " +
                        std::to_string(max_attempts) + " attempts");
}

Graph generate(Family f, const GenParams& p) {
  switch (f) {
    case Family::Path: return path_graph(p.n);
    case Family::Cycle: return cycle_graph(p.n);
    case Family::Complete: return complete_graph(p.n);
    case Family::Grid: {
      if (p.n < 4) throw GenerationError("grid needs n >= 4");
      int rows = static_cast<int>(std::sqrt(static_cast<double>(p.n)));
      while (rows > 1 && p.n % rows != 0) --rows;
      if (rows < 2) throw GenerationError("grid needs n = rows*cols with rows, cols >= 2");
      return grid_graph(rows, p.n / rows);
    }
    case Family::Prism:
      if (p.n % 2 != 0) throw GenerationError("prism needs an even n");
      return prism_graph(p.n / 2);
    case Family::Barbell: return barbell_graph(p.n);
    case Family::RandomConnected:
      return random_connected(p.n, p.seed, p.edge_prob, p.min_lambda, p.max_attempts);
  }
  throw GenerationError("unknown family");
}

}  // namespace smallcut
