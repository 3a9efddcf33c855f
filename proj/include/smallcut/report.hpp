#pragma once

#include "smallcut/graph.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace smallcut {

struct CutEntry {
  CutKey edges;
  std::string label;  // "1-respect" | "2-nested" | "2-disjoint" | "CASE1".."CASE7"
  Vertex detected_by = -1;
  long rounds = 0;  // engine rounds elapsed when the deciding phase ended
  std::optional<Vertex> pivot;
  std::optional<Vertex> lca;
  int size() const { return static_cast<int>(edges.size()); }
};

// Deduplicated by canonical edge set; the first finder is kept.
class CutReport {
 public:
  bool add(CutEntry e);
  void merge(const CutReport& other);
  const std::vector<CutEntry>& entries() const { return entries_; }
  std::vector<CutKey> keys() const;  // sorted
  std::vector<CutEntry> sorted() const;
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }
  bool contains(const CutKey& k) const { return index_.count(k) != 0; }
  const CutEntry* find(const CutKey& k) const;

 private:
  std::vector<CutEntry> entries_;
  std::map<CutKey, size_t> index_;
};

}  // namespace smallcut
