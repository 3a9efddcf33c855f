#include "smallcut/engine.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace smallcut {

int word_bits_for(int n) {
  int w = 0;
  while ((1LL << w) < n) ++w;
  return std::max(w, 1);
}

void BitWriter::put(uint64_t value, int width) {
  if (width < 64 && (value >> width) != 0)
    throw ProtocolError("value " + std::to_string(value) + " does not fit in " +
                        std::to_string(width) + " bits");
  for (int i = 0; i < width; ++i) {
    if (bits_ % 8 == 0) bytes_.push_back(0);
    if (value >> i & 1U) bytes_.back() |= static_cast<uint8_t>(1U << (bits_ % 8));
    ++bits_;
  }
}

void BitWriter::append(const BitWriter& other) {
  BitReader r(other.bytes_, other.bits_);
  for (uint32_t i = 0; i < other.bits_; ++i) put(r.get(1), 1);
}

uint64_t BitReader::get(int width) {
  if (pos_ + static_cast<uint32_t>(width) > bits_)
    throw ProtocolError("message truncated: wanted " + std::to_string(width) + " bits, " +
                        std::to_string(bits_ - pos_) + " left");
  uint64_t v = 0;
  for (int i = 0; i < width; ++i, ++pos_)
    if ((*bytes_)[pos_ / 8] >> (pos_ % 8) & 1U) v |= uint64_t{1} << i;
  return v;
}

BandwidthError::BandwidthError(EdgeId e, long r, uint32_t b, uint32_t cap)
    : std::runtime_error("bandwidth violation on edge " + std::to_string(e) + " in round " +
                         std::to_string(r) + ": " + std::to_string(b) + " bits > budget " +
                         std::to_string(cap)),
      edge(e),
      round(r),
      bits(b),
      budget(cap) {}

const PhaseStats* RoundStats::phase(const std::string& label) const {
  for (const auto& p : phases)
    if (p.label == label) return &p;
  return nullptr;
}

long RoundStats::rounds_with_prefix(const std::string& prefix) const {
  long total = 0;
  for (const auto& p : phases)
    if (p.label.compare(0, prefix.size(), prefix) == 0) total += p.rounds;
  return total;
}

void NodeContext::send(EdgeId edge, const BitWriter& payload) {
  bool ok = false;
  Vertex to = -1;
  for (const auto& inc : *ports_)
    if (inc.edge == edge) {
      ok = true;
      to = inc.nbr;
      break;
    }
  if (!ok)
    throw ProtocolError("node " + std::to_string(id_) + " sent on non-incident edge " +
                        std::to_string(edge));
  Message m;
  m.edge = edge;
  m.from = id_;
  m.to = to;
  m.payload = payload.bytes();
  m.bit_size = payload.bits();
  outbox_->push_back(std::move(m));
}

Engine::Engine(const Graph& g, SimulatorConfig cfg)
    : g_(&g), cfg_(cfg), word_bits_(word_bits_for(g.n())) {
  if (cfg_.words_per_round < 1) throw std::invalid_argument("words_per_round must be >= 1");
  if (cfg_.round_limit < 1) throw std::invalid_argument("round_limit must be >= 1");
  codec_.w = word_bits_;
}

uint32_t Engine::budget_bits() const {
  return static_cast<uint32_t>(cfg_.words_per_round * word_bits_);
}

int Engine::slot_for(uint32_t message_bits) const {
  uint32_t b = budget_bits();
  return static_cast<int>(std::max<uint32_t>(1, (message_bits + b - 1) / b));
}

PhaseStats& Engine::phase_entry(const std::string& label) {
  auto it = phase_index_.find(label);
  if (it != phase_index_.end()) return stats_.phases[it->second];
  phase_index_[label] = stats_.phases.size();
  stats_.phases.push_back(PhaseStats{label});
  return stats_.phases.back();
}

void Engine::run_phase(const std::string& label, int slot_rounds,
                       std::vector<NodeProgram*>& progs) {
  const int n = g_->n();
  if (static_cast<int>(progs.size()) != n)
    throw std::invalid_argument("one program per vertex required");
  if (cfg_.max_slot_rounds > 0) slot_rounds = std::min(slot_rounds, cfg_.max_slot_rounds);
  if (slot_rounds < 1) slot_rounds = 1;
  PhaseStats& ps = phase_entry(label);
  const uint32_t budget = budget_bits();

  std::vector<NodeContext> ctx(static_cast<size_t>(n));
  std::vector<std::vector<Message>> outbox(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    ctx[v].id_ = v;
    ctx[v].n_ = n;
    ctx[v].word_bits_ = word_bits_;
    ctx[v].codec_ = codec_;
    ctx[v].ports_ = &g_->adj(v);
    ctx[v].outbox_ = &outbox[v];
  }
  std::vector<std::vector<Message>> inbox(static_cast<size_t>(n));
  bool in_flight = false;
  long step = 0;
  // per edge-direction bits sent in the current step: index 2*e + (from == u ? 0 : 1)
  std::vector<uint32_t> load(static_cast<size_t>(2 * g_->m()), 0);

  while (true) {
    bool all_done = true;
    for (auto* p : progs)
      if (!p->done()) {
        all_done = false;
        break;
      }
    if (all_done && !in_flight) break;
    ++step;
    if (stats_.rounds_elapsed + slot_rounds > cfg_.round_limit)
      throw TimeoutError("round limit " + std::to_string(cfg_.round_limit) +
                         " exceeded in phase " + label);
    const long first_round = stats_.rounds_elapsed + 1;

    for (Vertex v = 0; v < n; ++v) {
      if (progs[v]->done() && inbox[v].empty()) continue;
      ctx[v].step_ = step;
      progs[v]->on_step(ctx[v], inbox[v]);
    }
    for (auto& in : inbox) in.clear();

    in_flight = false;
    std::fill(load.begin(), load.end(), 0);
    std::vector<size_t> touched;
    for (Vertex v = 0; v < n; ++v) {
      for (auto& m : outbox[v]) {
        size_t slot = static_cast<size_t>(2 * m.edge + (g_->edge(m.edge).u == m.from ? 0 : 1));
        if (load[slot] == 0) touched.push_back(slot);
        load[slot] += m.bit_size;
        ++ps.messages;
        ps.bits += m.bit_size;
        ++stats_.total_messages;
        stats_.total_bits += m.bit_size;
        if (trace_) trace_(TraceEvent{label, step, first_round, &m});
        inbox[m.to].push_back(std::move(m));
        in_flight = true;
      }
      outbox[v].clear();
    }
    // Fragment each edge-direction load over the slot: full budget-sized
    // fragments first, any overflow lands in the last round of the slot.
    for (size_t s : touched) {
      uint32_t bits = load[s];
      uint32_t spread = budget * static_cast<uint32_t>(slot_rounds - 1);
      uint32_t last = bits > spread ? bits - spread : 0;
      uint32_t peak = std::min(bits, budget);
      peak = std::max(peak, last);
      ps.max_bits_per_edge_per_round = std::max(ps.max_bits_per_edge_per_round, peak);
      stats_.max_bits_per_edge_per_round = std::max(stats_.max_bits_per_edge_per_round, peak);
      if (last > budget) {
        ++stats_.bandwidth_violations;
        if (cfg_.strict_bandwidth)
          throw BandwidthError(static_cast<EdgeId>(s / 2), first_round + slot_rounds - 1, last,
                               budget);
      }
    }
    for (auto& in : inbox)
      std::stable_sort(in.begin(), in.end(), [](const Message& a, const Message& b) {
        return a.from != b.from ? a.from < b.from : a.edge < b.edge;
      });
    stats_.rounds_elapsed += slot_rounds;
    ps.rounds += slot_rounds;
  }
}

int measure_diameter(const Graph& g) {
  int best = 0;
  const int n = g.n();
  std::vector<int> dist(static_cast<size_t>(n));
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<Vertex> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop_front();
      for (const auto& inc : g.adj(x))
        if (dist[inc.nbr] < 0) {
          dist[inc.nbr] = dist[x] + 1;
          best = std::max(best, dist[inc.nbr]);
          q.push_back(inc.nbr);
        }
    }
  }
  return best;
}

}  // namespace smallcut
