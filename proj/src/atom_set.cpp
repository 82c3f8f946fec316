#include "measurekit/atom_set.hpp"

#include <algorithm>
#include <sstream>

namespace measurekit {

namespace {

void require_same_space(const AtomSet& a, const AtomSet& b) {
  if (a.atom_count() != b.atom_count()) {
    throw input_error("atom sets live on different spaces: " +
                      std::to_string(a.atom_count()) + " vs " +
                      std::to_string(b.atom_count()) + " atoms");
  }
}

}  // namespace

AtomSet::AtomSet(int atom_count, const std::vector<int>& members)
    : bits_(static_cast<std::size_t>(atom_count), 0) {
  for (int m : members) {
    if (m < 0 || m >= atom_count) {
      throw input_error("atom index out of range: " + std::to_string(m));
    }
    bits_[static_cast<std::size_t>(m)] = 1;
  }
}

AtomSet AtomSet::full(int atom_count) {
  AtomSet s(atom_count);
  std::fill(s.bits_.begin(), s.bits_.end(), char{1});
  return s;
}

bool AtomSet::member(int atom) const {
  if (atom < 0 || atom >= atom_count()) {
    throw input_error("atom index out of range: " + std::to_string(atom));
  }
  return bits_[static_cast<std::size_t>(atom)] != 0;
}

std::vector<int> AtomSet::members() const {
  std::vector<int> out;
  for (int i = 0; i < atom_count(); ++i) {
    if (bits_[static_cast<std::size_t>(i)]) out.push_back(i);
  }
  return out;
}

std::size_t AtomSet::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), char{1}));
}

AtomSet set_union(const AtomSet& a, const AtomSet& b) {
  require_same_space(a, b);
  std::vector<char> bits(a.mask());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = bits[i] || b.mask()[i];
  return AtomSet::from_mask(std::move(bits));
}

AtomSet set_intersect(const AtomSet& a, const AtomSet& b) {
  require_same_space(a, b);
  std::vector<char> bits(a.mask());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = bits[i] && b.mask()[i];
  return AtomSet::from_mask(std::move(bits));
}

AtomSet set_complement(const AtomSet& a) {
  std::vector<char> bits(a.mask());
  for (auto& bit : bits) bit = !bit;
  return AtomSet::from_mask(std::move(bits));
}

AtomSet set_diff(const AtomSet& a, const AtomSet& b) {
  require_same_space(a, b);
  std::vector<char> bits(a.mask());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = bits[i] && !b.mask()[i];
  return AtomSet::from_mask(std::move(bits));
}

AtomSet sym_diff(const AtomSet& a, const AtomSet& b) {
  require_same_space(a, b);
  std::vector<char> bits(a.mask());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = bits[i] != b.mask()[i];
  return AtomSet::from_mask(std::move(bits));
}

bool subset_of(const AtomSet& a, const AtomSet& b) {
  require_same_space(a, b);
  for (std::size_t i = 0; i < a.mask().size(); ++i) {
    if (a.mask()[i] && !b.mask()[i]) return false;
  }
  return true;
}

std::string set_str(const AtomSet& a) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int m : a.members()) {
    if (!first) os << ",";
    first = false;
    os << m;
  }
  os << "}";
  return os.str();
}

}  // namespace measurekit
