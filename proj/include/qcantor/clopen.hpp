#pragma once

// Clopen subsets of Cantor space, given by finite sets of strings of one
// length; the classical counterpart of a special projection.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "qcantor/bits.hpp"
#include "qcantor/scalar.hpp"

namespace qcantor {

class ClopenSet {
public:
  ClopenSet() : k_(0) {}
  ClopenSet(int k, std::vector<std::string> strings) : k_(k) {
    for (auto& s : strings) {
      if (static_cast<int>(s.size()) != k)
        throw InvalidArgumentError("clopen set: string '" + s + "' does not have length " + std::to_string(k));
      string_to_index(s); // validates the alphabet
    }
    std::sort(strings.begin(), strings.end());
    strings.erase(std::unique(strings.begin(), strings.end()), strings.end());
    strings_ = std::move(strings);
  }

  int k() const { return k_; }
  const std::vector<std::string>& strings() const { return strings_; }
  std::size_t size() const { return strings_.size(); }
  bool empty() const { return strings_.empty(); }

  Rational measure() const { return Rational(static_cast<long long>(strings_.size())) * pow2(-k_); }

  bool contains(const std::string& s) const {
    return std::binary_search(strings_.begin(), strings_.end(), s);
  }

  // Is the infinite sequence starting with `prefix` (|prefix| >= k) inside?
  bool covers_prefix(const std::string& prefix) const {
    if (static_cast<int>(prefix.size()) < k_) throw InvalidArgumentError("covers_prefix: prefix too short");
    return contains(prefix.substr(0, static_cast<std::size_t>(k_)));
  }

  // The same clopen set presented with strings of length k2 >= k.
  ClopenSet lifted_to(int k2) const {
    if (k2 < k_) throw InvalidArgumentError("lifted_to: target length below k");
    if (k2 == k_) return *this;
    std::vector<std::string> lifted;
    lifted.reserve(strings_.size() << (k2 - k_));
    for (const auto& s : strings_)
      for (const auto& tail : all_strings(k2 - k_)) lifted.push_back(s + tail);
    return ClopenSet(k2, std::move(lifted));
  }

  bool subset_of(const ClopenSet& other) const {
    const int k2 = std::max(k_, other.k());
    const ClopenSet a = lifted_to(k2);
    const ClopenSet b = other.lifted_to(k2);
    return std::includes(b.strings().begin(), b.strings().end(), a.strings().begin(), a.strings().end());
  }

  friend ClopenSet clopen_union(const ClopenSet& a, const ClopenSet& b) {
    const int k2 = std::max(a.k(), b.k());
    const ClopenSet la = a.lifted_to(k2);
    const ClopenSet lb = b.lifted_to(k2);
    std::vector<std::string> merged = la.strings();
    merged.insert(merged.end(), lb.strings().begin(), lb.strings().end());
    return ClopenSet(k2, std::move(merged));
  }

private:
  int k_;
  std::vector<std::string> strings_; // sorted, unique
};

// One level of a classical Sigma_1 set: an increasing union of clopen sets.
struct ClassicalSigma1Level {
  std::vector<ClopenSet> stages;

  // Union of every stage with k <= depth, presented at length `depth`.
  ClopenSet covered_at(int depth) const {
    ClopenSet acc(depth, {});
    for (const auto& stage : stages)
      if (stage.k() <= depth) acc = clopen_union(acc, stage.lifted_to(depth));
    return acc;
  }

  Rational measure_at(int depth) const { return covered_at(depth).measure(); }

  bool stages_increasing() const {
    for (std::size_t i = 0; i + 1 < stages.size(); ++i)
      if (!stages[i].subset_of(stages[i + 1])) return false;
    return true;
  }
};

} // namespace qcantor
