#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spatialgen::core {

// Ordered name -> value map for indicator outputs. Insertion order is the
// serialization order; names are unique.
class IndicatorRecord {
 public:
  void set(std::string name, double value) {
    for (auto& e : entries_) {
      if (e.first == name) {
        e.second = value;
        return;
      }
    }
    entries_.emplace_back(std::move(name), value);
  }

  const double* find(const std::string& name) const {
    for (const auto& e : entries_) {
      if (e.first == name) return &e.second;
    }
    return nullptr;
  }

  double get(const std::string& name) const {
    const double* v = find(name);
    if (v == nullptr) throw std::invalid_argument("unknown indicator: " + name);
    return *v;
  }

  const std::vector<std::pair<std::string, double>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<std::pair<std::string, double>> entries_;
};

}  // namespace spatialgen::core
