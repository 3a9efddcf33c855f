#include "smallcut/report.hpp"

#include <algorithm>

namespace smallcut {

bool CutReport::add(CutEntry e) {
  std::sort(e.edges.begin(), e.edges.end());
  if (index_.count(e.edges)) return false;
  index_[e.edges] = entries_.size();
  entries_.push_back(std::move(e));
  return true;
}

void CutReport::merge(const CutReport& other) {
  for (const auto& e : other.entries_) add(e);
}

std::vector<CutKey> CutReport::keys() const {
  std::vector<CutKey> out;
  out.reserve(index_.size());
  for (const auto& [k, i] : index_) out.push_back(k);
  return out;
}

std::vector<CutEntry> CutReport::sorted() const {
  std::vector<CutEntry> out;
  out.reserve(index_.size());
  for (const auto& [k, i] : index_) out.push_back(entries_[i]);
  return out;
}

const CutEntry* CutReport::find(const CutKey& k) const {
  auto it = index_.find(k);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

}  // namespace smallcut
