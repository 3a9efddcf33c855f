#include "smallcut/pipeline.hpp"

#include "smallcut/oracle.hpp"

#include <algorithm>
#include <iterator>
#include <queue>

namespace smallcut {

Vertex centre_vertex(const Graph& g) {
  Vertex best = 0;
  int best_ecc = g.n() + 1;
  for (Vertex s = 0; s < g.n(); ++s) {
    std::vector<int> d(static_cast<size_t>(g.n()), -1);
    std::queue<Vertex> q;
    d[s] = 0;
    q.push(s);
    int ecc = 0;
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      ecc = std::max(ecc, d[u]);
      for (const auto& inc : g.adj(u))
        if (d[inc.nbr] < 0) {
          d[inc.nbr] = d[u] + 1;
          q.push(inc.nbr);
        }
    }
    if (ecc < best_ecc) {
      best_ecc = ecc;
      best = s;
    }
  }
  return best;
}

PipelineResult run_full_pipeline(const Graph& g, const PipelineConfig& cfg) {
  if (g.n() < 2) throw InputError("graph needs at least two vertices");
  if (!g.connected()) throw InputError("graph is not connected");
  if (cfg.max_size < 1 || cfg.max_size > 3) throw InputError("max-size must be 1, 2 or 3");
  PipelineResult res;
  res.root = cfg.root ? *cfg.root : cfg.auto_root ? centre_vertex(g) : 0;
  if (res.root < 0 || res.root >= g.n()) throw InputError("root out of range");

  Engine eng(g, cfg.sim);
  std::vector<NodeKnowledge> know;
  BfsInfo tree = build_bfs(eng, res.root, know);
  res.depth = tree.depth;
  PortAncestors nbr = exchange_ancestors(eng, know);
  InstanceTables inst = make_instance(g, know, nbr, 0);
  run_eta_stage(eng, know, nbr, inst);

  std::string lambda;
  auto finish = [&](const std::string& otherwise) {
    res.lambda = lambda.empty() ? otherwise : lambda;
    res.stats = eng.stats();
    if (!res.size3_ran) res.rounds_small = res.stats.rounds_elapsed;
    return res;
  };
  // the first non-empty size is the connectivity; later stages only feed
  // the verbose list
  auto offer = [&](const CutReport& r, const char* size) {
    res.induced.merge(r);
    if (lambda.empty() && !r.empty()) {
      res.report = r;
      lambda = size;
    }
    return !lambda.empty() && !cfg.verbose;
  };

  if (offer(detect_1cuts(g, know, inst, eng.stats().rounds_elapsed), "1")) return finish("");
  if (cfg.max_size == 1) return finish(">1");

  run_zeta_stage(eng, know, nbr, inst);
  if (offer(detect_2cuts(g, tree, know, inst, eng.stats().rounds_elapsed), "2")) return finish("");
  res.rounds_small = eng.stats().rounds_elapsed;
  if (cfg.max_size == 2) return finish(">2");

  Size3Result s3 = run_size3(eng, tree, know, nbr, inst);
  res.size3_ran = true;
  res.rounds_size3 = eng.stats().rounds_elapsed - res.rounds_small;
  offer(s3.all, "3");
  return finish(">3");
}

Json cut_entry_json(const Graph&, const CutEntry& e) {
  Json j;
  Json edges = Json::array();
  for (const auto& [u, v] : e.edges) edges.push_back(Json::array({u, v}));
  j["edges"] = edges;
  j["size"] = e.size();
  j["case"] = e.label;
  j["detected_by"] = e.detected_by;
  j["rounds"] = e.rounds;
  if (e.pivot) j["pivot"] = *e.pivot;
  if (e.lca) j["lca"] = *e.lca;
  return j;
}

Json round_stats_json(const RoundStats& s) {
  Json j;
  j["rounds_elapsed"] = s.rounds_elapsed;
  j["max_bits_per_edge_per_round"] = s.max_bits_per_edge_per_round;
  j["total_messages"] = s.total_messages;
  j["total_bits"] = s.total_bits;
  j["bandwidth_violations"] = s.bandwidth_violations;
  Json ph = Json::array();
  for (const auto& p : s.phases)
    ph.push_back(Json{{"label", p.label},
                      {"rounds", p.rounds},
                      {"messages", p.messages},
                      {"bits", p.bits},
                      {"max_bits_per_edge_per_round", p.max_bits_per_edge_per_round}});
  j["phases"] = ph;
  return j;
}

RoundStats round_stats_from_json(const Json& j) {
  RoundStats s;
  s.rounds_elapsed = j.at("rounds_elapsed").get<long>();
  s.max_bits_per_edge_per_round = j.at("max_bits_per_edge_per_round").get<uint32_t>();
  s.total_messages = j.at("total_messages").get<long>();
  s.total_bits = j.at("total_bits").get<long>();
  s.bandwidth_violations = j.at("bandwidth_violations").get<long>();
  for (const auto& p : j.at("phases"))
    s.phases.push_back(PhaseStats{p.at("label").get<std::string>(), p.at("rounds").get<long>(),
                                  p.at("messages").get<long>(), p.at("bits").get<long>(),
                                  p.at("max_bits_per_edge_per_round").get<uint32_t>()});
  return s;
}

Verdict verify_against_oracle(const Graph& g, int max_size, const PipelineResult& r) {
  OracleResult o = min_cut_oracle(g);
  Verdict v;
  v.oracle_lambda = o.lambda;
  v.expected_lambda = o.lambda <= max_size ? std::to_string(o.lambda) : ">" + std::to_string(max_size);
  std::vector<CutKey> want;
  if (o.lambda <= max_size) want = o.min_cuts;
  std::vector<CutKey> got = r.report.keys();
  std::set_difference(want.begin(), want.end(), got.begin(), got.end(), std::back_inserter(v.missing));
  std::set_difference(got.begin(), got.end(), want.begin(), want.end(), std::back_inserter(v.extra));
  v.pass = v.missing.empty() && v.extra.empty() && r.lambda == v.expected_lambda;
  return v;
}

Json verdict_json(const Verdict& v) {
  auto keys = [](const std::vector<CutKey>& ks) {
    Json a = Json::array();
    for (const auto& k : ks) {
      Json e = Json::array();
      for (const auto& [u, w] : k) e.push_back(Json::array({u, w}));
      a.push_back(e);
    }
    return a;
  };
  return Json{{"verdict", v.pass ? "PASS" : "FAIL"},
              {"oracle_lambda", v.oracle_lambda},
              {"expected_lambda", v.expected_lambda},
              {"missing", keys(v.missing)},
              {"extra", keys(v.extra)}};
}

Json pipeline_json(const Graph& g, const PipelineConfig& cfg, const PipelineResult& r,
                   const Verdict* verdict) {
  Json j;
  j["graph"] = Json{{"n", g.n()}, {"m", g.m()}, {"diameter", measure_diameter(g)}, {"depth", r.depth}};
  j["config"] = Json{{"root", r.root},
                     {"root_auto", !cfg.root && cfg.auto_root},
                     {"max_size", cfg.max_size},
                     {"strict_bandwidth", cfg.sim.strict_bandwidth},
                     {"words_per_round", cfg.sim.words_per_round},
                     {"verbose", cfg.verbose}};
  j["lambda"] = r.lambda;
  Json cuts = Json::array();
  for (const auto& e : r.report.sorted()) cuts.push_back(cut_entry_json(g, e));
  j["cuts"] = cuts;
  if (cfg.verbose) {
    Json all = Json::array();
    for (const auto& e : r.induced.sorted()) all.push_back(cut_entry_json(g, e));
    j["induced_cuts"] = all;
  }
  j["rounds"] = Json{{"size_1_2", r.rounds_small},
                     {"size_3", r.rounds_size3},
                     {"size_3_ran", r.size3_ran}};
  j["round_stats"] = round_stats_json(r.stats);
  if (verdict) j["verification"] = verdict_json(*verdict);
  return j;
}

}  // namespace smallcut
