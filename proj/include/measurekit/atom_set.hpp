#pragma once

#include <vector>

#include "measurekit/rational.hpp"

namespace measurekit {

// Subset of a finite atom space {0, ..., n-1}.
class AtomSet {
 public:
  AtomSet() = default;
  explicit AtomSet(int atom_count) : bits_(static_cast<std::size_t>(atom_count), 0) {}
  AtomSet(int atom_count, const std::vector<int>& members);

  static AtomSet full(int atom_count);
  static AtomSet from_mask(std::vector<char> bits) {
    AtomSet s;
    s.bits_ = std::move(bits);
    return s;
  }

  int atom_count() const { return static_cast<int>(bits_.size()); }
  bool member(int atom) const;
  const std::vector<char>& mask() const { return bits_; }
  std::vector<int> members() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  friend bool operator==(const AtomSet&, const AtomSet&) = default;

 private:
  std::vector<char> bits_;
};

AtomSet set_union(const AtomSet& a, const AtomSet& b);
AtomSet set_intersect(const AtomSet& a, const AtomSet& b);
AtomSet set_complement(const AtomSet& a);
AtomSet set_diff(const AtomSet& a, const AtomSet& b);
AtomSet sym_diff(const AtomSet& a, const AtomSet& b);
bool subset_of(const AtomSet& a, const AtomSet& b);

std::string set_str(const AtomSet& a);

}  // namespace measurekit
