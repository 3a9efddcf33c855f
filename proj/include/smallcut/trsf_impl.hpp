#pragma once

// Template part of tree.hpp.

#include <stdexcept>

namespace smallcut {

template <class T>
void check_semigroup(const SemigroupSpec<T>& spec, const std::vector<T>& samples, size_t budget) {
  const size_t k = samples.size();
  if (k == 0) return;
  // deterministic stride through the triple space
  for (size_t t = 0; t < budget; ++t) {
    const T& a = samples[(t * 7919) % k];
    const T& b = samples[(t * 104729 + 1) % k];
    const T& c = samples[(t * 1299709 + 2) % k];
    if (!(spec.combine(a, b) == spec.combine(b, a)))
      throw std::logic_error("semigroup " + spec.name + " is not commutative");
    if (!(spec.combine(spec.combine(a, b), c) == spec.combine(a, spec.combine(b, c))))
      throw std::logic_error("semigroup " + spec.name + " is not associative");
  }
}

namespace detail {

template <class T>
class TrsfProgram : public NodeProgram {
 public:
  TrsfProgram(const NodeKnowledge& k, const SemigroupSpec<T>& spec, std::vector<T> acc, int lo)
      : k_(&k), spec_(&spec), acc_(std::move(acc)), lo_(lo) {
    finished_ = k.level < lo;
  }

  void on_step(NodeContext& ctx, const std::vector<Message>& inbox) override {
    const Codec& c = ctx.codec();
    const int l = k_->level;
    for (const auto& m : inbox) {
      BitReader r = m.reader();
      int j = c.id(r);
      T x = spec_->decode(r);
      // a child at level l+1 sends level j at step Depth-(l+1)+j+1-lo
      long expect = static_cast<long>(k_->depth) - (l + 1) + j + 1 - lo_;
      if (j < lo_ || j > l || ctx.step() != expect + 1)
        throw ProtocolError("trsf:" + spec_->name + " tuple for level " + std::to_string(j) +
                            " arrived at step " + std::to_string(ctx.step()) + " at node " +
                            std::to_string(ctx.id()));
      acc_[j] = spec_->combine(acc_[j], x);
    }
    long s = ctx.step();
    long j = s - (static_cast<long>(k_->depth) - l + 1 - lo_);
    if (!k_->is_root() && j >= lo_ && j <= l - 1) {
      BitWriter w;
      c.id(w, static_cast<int>(j));
      spec_->encode(w, acc_[j]);
      ctx.send(k_->parent_edge, w);
    }
    if (s >= static_cast<long>(k_->depth) + 1 - lo_) finished_ = true;
  }
  bool done() const override { return finished_; }
  std::vector<T>& acc() { return acc_; }

 private:
  const NodeKnowledge* k_;
  const SemigroupSpec<T>* spec_;
  std::vector<T> acc_;
  int lo_;
  bool finished_ = false;
};

}  // namespace detail

template <class T>
TrsfResult<T> trsf_compute(Engine& eng, const std::vector<NodeKnowledge>& know,
                           const SemigroupSpec<T>& spec, const std::vector<std::vector<T>>& atomic,
                           int lo, const std::string& label) {
  const int n = static_cast<int>(know.size());
  std::vector<detail::TrsfProgram<T>> progs;
  progs.reserve(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) progs.emplace_back(know[v], spec, atomic[v], lo);
  const uint32_t bits = static_cast<uint32_t>(eng.word_bits() + spec.element_bits);
  eng.run(label.empty() ? "trsf:" + spec.name : label, eng.slot_for(bits), progs);
  TrsfResult<T> out;
  out.xdesc.reserve(static_cast<size_t>(n));
  for (auto& p : progs) out.xdesc.push_back(std::move(p.acc()));
  return out;
}

}  // namespace smallcut
