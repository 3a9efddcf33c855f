#pragma once

#include "smallcut/graph.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace smallcut {

// ceil(log2 n), at least 1. One "word" of the bandwidth budget.
int word_bits_for(int n);

class BitWriter {
 public:
  void put(uint64_t value, int width);
  void put_flag(bool b) { put(b ? 1 : 0, 1); }
  void append(const BitWriter& other);
  uint32_t bits() const { return bits_; }
  const std::vector<uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<uint8_t> bytes_;
  uint32_t bits_ = 0;
};

class BitReader {
 public:
  BitReader(const std::vector<uint8_t>& bytes, uint32_t bits) : bytes_(&bytes), bits_(bits) {}
  uint64_t get(int width);
  bool get_flag() { return get(1) != 0; }
  uint32_t remaining() const { return bits_ - pos_; }

 private:
  const std::vector<uint8_t>* bytes_;
  uint32_t bits_;
  uint32_t pos_ = 0;
};

// Field widths derived from the word size: ids and levels take one word,
// counts (anything bounded by m < n^2) take two.
struct Codec {
  int w = 1;
  int id_bits() const { return w; }
  int count_bits() const { return 2 * w; }
  void id(BitWriter& b, int v) const { b.put(static_cast<uint64_t>(v), w); }
  void count(BitWriter& b, int v) const { b.put(static_cast<uint64_t>(v), 2 * w); }
  int id(BitReader& r) const { return static_cast<int>(r.get(w)); }
  int count(BitReader& r) const { return static_cast<int>(r.get(2 * w)); }
};

struct Message {
  EdgeId edge = -1;
  Vertex from = -1;
  Vertex to = -1;
  std::vector<uint8_t> payload;
  uint32_t bit_size = 0;
  BitReader reader() const { return BitReader(payload, bit_size); }
};

struct SimulatorConfig {
  int words_per_round = 2;  // budget per edge, per direction, per round, in words
  bool strict_bandwidth = false;
  long round_limit = 20'000'000;
  uint64_t seed = 0;  // programs here are deterministic; kept for reports
  // Caps the rounds a phase may spend per step (0: none). A cap below what
  // the message sizes need overloads edges, which strict mode rejects.
  int max_slot_rounds = 0;
};

class BandwidthError : public std::runtime_error {
 public:
  BandwidthError(EdgeId edge, long round, uint32_t bits, uint32_t budget);
  EdgeId edge;
  long round;
  uint32_t bits;
  uint32_t budget;
};

class TimeoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by protocols when an internal invariant (message layout, size
// bound) is breached.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PhaseStats {
  std::string label;
  long rounds = 0;
  long messages = 0;
  long bits = 0;
  uint32_t max_bits_per_edge_per_round = 0;
};

struct RoundStats {
  long rounds_elapsed = 0;
  uint32_t max_bits_per_edge_per_round = 0;
  long total_messages = 0;
  long total_bits = 0;
  long bandwidth_violations = 0;  // edge-rounds over budget (non-strict runs)
  std::vector<PhaseStats> phases;  // keyed by label, first-seen order

  const PhaseStats* phase(const std::string& label) const;
  long rounds_with_prefix(const std::string& prefix) const;
};

class NodeContext {
 public:
  Vertex id() const { return id_; }
  int n() const { return n_; }
  int word_bits() const { return word_bits_; }
  const Codec& codec() const { return codec_; }
  long step() const { return step_; }  // 1-based step inside the current phase
  const std::vector<Incidence>& ports() const { return *ports_; }
  void send(EdgeId edge, const BitWriter& payload);

 private:
  friend class Engine;
  Vertex id_ = -1;
  int n_ = 0;
  int word_bits_ = 1;
  Codec codec_;
  long step_ = 0;
  const std::vector<Incidence>* ports_ = nullptr;
  std::vector<Message>* outbox_ = nullptr;
};

// One per vertex. Only sees its own state and the messages delivered to it.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual void on_step(NodeContext& ctx, const std::vector<Message>& inbox) = 0;
  virtual bool done() const = 0;
};

struct TraceEvent {
  std::string phase;
  long step;
  long round;  // first physical round of the step
  const Message* msg;
};

// Synchronous round engine. A phase runs in "steps"; each step spans
// slot_rounds physical rounds so that a logical message of up to
// slot_rounds * budget bits is carried in budget-sized fragments.
// Messages sent in step s are delivered at step s+1, sorted by
// (sender id, edge id, send order).
class Engine {
 public:
  Engine(const Graph& g, SimulatorConfig cfg);

  const Graph& graph() const { return *g_; }
  const SimulatorConfig& config() const { return cfg_; }
  int word_bits() const { return word_bits_; }
  const Codec& codec() const { return codec_; }
  uint32_t budget_bits() const;
  int slot_for(uint32_t message_bits) const;
  const RoundStats& stats() const { return stats_; }
  void set_trace(std::function<void(const TraceEvent&)> fn) { trace_ = std::move(fn); }

  template <class P>
  void run(const std::string& label, int slot_rounds, std::vector<P>& programs) {
    std::vector<NodeProgram*> ptrs;
    ptrs.reserve(programs.size());
    for (auto& p : programs) ptrs.push_back(&p);
    run_phase(label, slot_rounds, ptrs);
  }

 private:
  void run_phase(const std::string& label, int slot_rounds, std::vector<NodeProgram*>& progs);
  PhaseStats& phase_entry(const std::string& label);

  const Graph* g_;
  SimulatorConfig cfg_;
  int word_bits_;
  Codec codec_;
  RoundStats stats_;
  std::map<std::string, size_t> phase_index_;
  std::function<void(const TraceEvent&)> trace_;
};

// Diameter by BFS from every vertex.
int measure_diameter(const Graph& g);

}  // namespace smallcut
