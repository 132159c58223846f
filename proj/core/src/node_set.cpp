#include "polytree/node_set.hpp"

#include <algorithm>
#include <functional>

namespace polytree {

NodeSet::NodeSet(std::initializer_list<NodeId> members) {
  for (NodeId v : members) insert(v);
}

NodeSet NodeSet::from_mask(std::uint64_t mask) {
  NodeSet s;
  s.word0_ = mask;
  return s;
}

NodeSet NodeSet::from_members(const std::vector<NodeId>& members) {
  NodeSet s;
  for (NodeId v : members) s.insert(v);
  return s;
}

void NodeSet::insert(NodeId v) {
  const std::size_t w = v / 64;
  const std::uint64_t bit = std::uint64_t{1} << (v % 64);
  if (w == 0) {
    word0_ |= bit;
    return;
  }
  if (rest_.size() < w) rest_.resize(w, 0);
  rest_[w - 1] |= bit;
}

void NodeSet::erase(NodeId v) {
  const std::size_t w = v / 64;
  const std::uint64_t bit = std::uint64_t{1} << (v % 64);
  if (w == 0) {
    word0_ &= ~bit;
  } else if (w <= rest_.size()) {
    rest_[w - 1] &= ~bit;
    trim();
  }
}

bool NodeSet::contains(NodeId v) const noexcept {
  return (word(v / 64) >> (v % 64)) & 1U;
}

std::size_t NodeSet::size() const noexcept {
  std::size_t count = static_cast<std::size_t>(std::popcount(word0_));
  for (std::uint64_t w : rest_) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

std::size_t NodeSet::upper_bound() const noexcept {
  if (!rest_.empty()) {
    const std::uint64_t top = rest_.back();
    return 64 * rest_.size() + 64 - static_cast<std::size_t>(std::countl_zero(top));
  }
  return 64 - static_cast<std::size_t>(std::countl_zero(word0_));
}

bool NodeSet::is_subset_of(const NodeSet& other) const noexcept {
  if (rest_.size() > other.rest_.size()) return false;
  if ((word0_ & ~other.word0_) != 0) return false;
  for (std::size_t i = 0; i < rest_.size(); ++i) {
    if ((rest_[i] & ~other.rest_[i]) != 0) return false;
  }
  return true;
}

bool NodeSet::intersects(const NodeSet& other) const noexcept {
  if ((word0_ & other.word0_) != 0) return true;
  const std::size_t common = std::min(rest_.size(), other.rest_.size());
  for (std::size_t i = 0; i < common; ++i) {
    if ((rest_[i] & other.rest_[i]) != 0) return true;
  }
  return false;
}

NodeSet& NodeSet::operator|=(const NodeSet& other) {
  word0_ |= other.word0_;
  if (rest_.size() < other.rest_.size()) rest_.resize(other.rest_.size(), 0);
  for (std::size_t i = 0; i < other.rest_.size(); ++i) rest_[i] |= other.rest_[i];
  return *this;
}

NodeSet& NodeSet::operator&=(const NodeSet& other) {
  word0_ &= other.word0_;
  if (rest_.size() > other.rest_.size()) rest_.resize(other.rest_.size());
  for (std::size_t i = 0; i < rest_.size(); ++i) rest_[i] &= other.rest_[i];
  trim();
  return *this;
}

NodeSet& NodeSet::operator-=(const NodeSet& other) {
  word0_ &= ~other.word0_;
  const std::size_t common = std::min(rest_.size(), other.rest_.size());
  for (std::size_t i = 0; i < common; ++i) rest_[i] &= ~other.rest_[i];
  trim();
  return *this;
}

std::vector<NodeId> NodeSet::members() const {
  std::vector<NodeId> out;
  out.reserve(size());
  for_each([&](NodeId v) { out.push_back(v); });
  return out;
}

std::size_t NodeSet::hash() const noexcept {
  std::size_t h = std::hash<std::uint64_t>{}(word0_);
  for (std::uint64_t w : rest_) {
    h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string NodeSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for_each([&](NodeId v) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  });
  out += '}';
  return out;
}

void NodeSet::trim() noexcept {
  while (!rest_.empty() && rest_.back() == 0) rest_.pop_back();
}

bool lex_less(const NodeSet& a, const NodeSet& b) {
  const auto ma = a.members();
  const auto mb = b.members();
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

}  // namespace polytree
