#pragma once

#include "smallcut/three_cuts.hpp"

#include <json.hpp>
#include <optional>
#include <string>

namespace smallcut {

struct PipelineConfig {
  int max_size = 3;             // 1, 2 or 3
  std::optional<Vertex> root;   // unset: vertex 0, or a centre vertex with auto_root
  bool auto_root = false;       // minimum eccentricity, lowest id
  SimulatorConfig sim;
  bool verbose = false;         // keep running past the first non-empty size and record every induced cut found
};

struct PipelineResult {
  CutReport report;         // min-cuts only
  CutReport induced;        // verbose runs: everything the detectors reported
  std::string lambda;       // "1", "2", "3" or ">k" with k = max_size
  Vertex root = 0;
  int depth = 0;
  RoundStats stats;
  long rounds_small = 0;    // BFS through the size-2 stage
  long rounds_size3 = 0;    // the size-3 battery
  bool size3_ran = false;
};

Vertex centre_vertex(const Graph& g);

PipelineResult run_full_pipeline(const Graph& g, const PipelineConfig& cfg);

// ---- structured report ----

using Json = nlohmann::ordered_json;

Json cut_entry_json(const Graph& g, const CutEntry& e);
Json round_stats_json(const RoundStats& s);
RoundStats round_stats_from_json(const Json& j);
// Comparison of a run with the brute-force oracle. Throws CapacityError
// above the oracle limit.
struct Verdict {
  bool pass = false;
  int oracle_lambda = 0;
  std::string expected_lambda;  // what the run should have printed
  std::vector<CutKey> missing;  // oracle min-cuts absent from the report
  std::vector<CutKey> extra;    // reported sets that are not min-cuts
};

Verdict verify_against_oracle(const Graph& g, int max_size, const PipelineResult& r);
Json verdict_json(const Verdict& v);

Json pipeline_json(const Graph& g, const PipelineConfig& cfg, const PipelineResult& r,
                   const Verdict* verdict = nullptr);

}  // namespace smallcut
