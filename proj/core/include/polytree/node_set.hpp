#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace polytree {

using NodeId = std::uint32_t;

/// Set of node indices. The first 64 indices live in an inline word; larger
/// indices spill into heap words. Trailing zero words are always trimmed, so
/// two equal sets have identical representations.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(std::initializer_list<NodeId> members);

  static NodeSet from_mask(std::uint64_t mask);
  static NodeSet from_members(const std::vector<NodeId>& members);

  void insert(NodeId v);
  void erase(NodeId v);
  bool contains(NodeId v) const noexcept;

  std::size_t size() const noexcept;
  bool empty() const noexcept { return word0_ == 0 && rest_.empty(); }

  /// One past the largest member, 0 for the empty set.
  std::size_t upper_bound() const noexcept;

  bool is_subset_of(const NodeSet& other) const noexcept;
  bool intersects(const NodeSet& other) const noexcept;

  NodeSet& operator|=(const NodeSet& other);
  NodeSet& operator&=(const NodeSet& other);
  NodeSet& operator-=(const NodeSet& other);

  friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
  friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
  friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

  /// Members in increasing order.
  std::vector<NodeId> members() const;

  template <class F>
  void for_each(F&& f) const {
    for_each_in_word(word0_, 0, f);
    for (std::size_t w = 0; w < rest_.size(); ++w) {
      for_each_in_word(rest_[w], static_cast<NodeId>(64 * (w + 1)), f);
    }
  }

  bool fits_in_word() const noexcept { return rest_.empty(); }
  std::uint64_t low_word() const noexcept { return word0_; }

  std::size_t hash() const noexcept;

  /// e.g. "{0,3,5}"
  std::string to_string() const;

 private:
  template <class F>
  static void for_each_in_word(std::uint64_t word, NodeId base, F& f) {
    while (word != 0) {
      f(base + static_cast<NodeId>(std::countr_zero(word)));
      word &= word - 1;
    }
  }

  std::uint64_t word(std::size_t i) const noexcept {
    return i == 0 ? word0_ : (i - 1 < rest_.size() ? rest_[i - 1] : 0);
  }
  void trim() noexcept;

  std::uint64_t word0_ = 0;
  std::vector<std::uint64_t> rest_;
};

/// Lexicographic order on the increasing member sequences ({} < {0} < {0,1} < {1}).
bool lex_less(const NodeSet& a, const NodeSet& b);

struct NodeSetHash {
  std::size_t operator()(const NodeSet& s) const noexcept { return s.hash(); }
};

}  // namespace polytree
