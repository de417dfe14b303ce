#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

#include "qk/errors.hpp"

namespace qk {

using Vertex = std::uint32_t;

// Subset of a fixed vertex universe {0, ..., universe-1}. Backed by a bitset
// whose first word lives inline, so sets over universes of at most 64
// vertices never touch the heap. Iteration yields members in strictly
// ascending order.
class VertexSet {
 public:
  VertexSet() = default;

  explicit VertexSet(std::uint32_t universe) : universe_(universe) {
    if (word_count() > 1) rest_.assign(word_count() - 1, 0);
  }

  VertexSet(std::uint32_t universe, std::initializer_list<Vertex> members)
      : VertexSet(universe) {
    for (Vertex v : members) insert(v);
  }

  static VertexSet full(std::uint32_t universe) {
    VertexSet s(universe);
    s.w0_ = ~std::uint64_t{0};
    for (auto& w : s.rest_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  // Bit i of `mask` selects vertex i. Only for universes of at most 64.
  static VertexSet from_mask(std::uint32_t universe, std::uint64_t mask) {
    if (universe > 64)
      throw OutOfRangeError("from_mask requires a universe of at most 64");
    VertexSet s(universe);
    s.w0_ = mask;
    s.trim();
    return s;
  }

  std::uint32_t universe() const { return universe_; }

  bool contains(Vertex v) const {
    if (v >= universe_) return false;
    return (word(v >> 6) >> (v & 63)) & 1;
  }

  void insert(Vertex v) {
    check_vertex(v);
    word_ref(v >> 6) |= std::uint64_t{1} << (v & 63);
  }

  void erase(Vertex v) {
    check_vertex(v);
    word_ref(v >> 6) &= ~(std::uint64_t{1} << (v & 63));
  }

  std::size_t size() const {
    std::size_t total = std::popcount(w0_);
    for (auto w : rest_) total += std::popcount(w);
    return total;
  }

  bool empty() const {
    if (w0_ != 0) return false;
    for (auto w : rest_) {
      if (w != 0) return false;
    }
    return true;
  }

  std::uint64_t mask() const {
    if (universe_ > 64)
      throw OutOfRangeError("mask() requires a universe of at most 64");
    return w0_;
  }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(size());
    for (Vertex v : *this) out.push_back(v);
    return out;
  }

  bool intersects(const VertexSet& other) const {
    require_same_universe(other);
    if (w0_ & other.w0_) return true;
    for (std::size_t i = 0; i < rest_.size(); ++i) {
      if (rest_[i] & other.rest_[i]) return true;
    }
    return false;
  }

  bool is_subset_of(const VertexSet& other) const {
    require_same_universe(other);
    if (w0_ & ~other.w0_) return false;
    for (std::size_t i = 0; i < rest_.size(); ++i) {
      if (rest_[i] & ~other.rest_[i]) return false;
    }
    return true;
  }

  VertexSet& operator|=(const VertexSet& other) {
    require_same_universe(other);
    w0_ |= other.w0_;
    for (std::size_t i = 0; i < rest_.size(); ++i) rest_[i] |= other.rest_[i];
    return *this;
  }

  VertexSet& operator&=(const VertexSet& other) {
    require_same_universe(other);
    w0_ &= other.w0_;
    for (std::size_t i = 0; i < rest_.size(); ++i) rest_[i] &= other.rest_[i];
    return *this;
  }

  // Set difference.
  VertexSet& operator-=(const VertexSet& other) {
    require_same_universe(other);
    w0_ &= ~other.w0_;
    for (std::size_t i = 0; i < rest_.size(); ++i) rest_[i] &= ~other.rest_[i];
    return *this;
  }

  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  bool operator==(const VertexSet& other) const {
    return universe_ == other.universe_ && w0_ == other.w0_ && rest_ == other.rest_;
  }

  // First member >= from, or universe() when there is none.
  Vertex next_member(Vertex from) const {
    if (from >= universe_) return universe_;
    std::size_t wi = from >> 6;
    std::uint64_t w = word(wi) >> (from & 63);
    if (w != 0) return from + std::countr_zero(w);
    for (++wi; wi < word_count(); ++wi) {
      if (word(wi) != 0)
        return static_cast<Vertex>((wi << 6) + std::countr_zero(word(wi)));
    }
    return universe_;
  }

  class const_iterator {
   public:
    using value_type = Vertex;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::forward_iterator_tag;

    const_iterator() = default;
    const_iterator(const VertexSet* set, Vertex pos) : set_(set), pos_(pos) {}

    Vertex operator*() const { return pos_; }
    const_iterator& operator++() {
      pos_ = set_->next_member(pos_ + 1);
      return *this;
    }
    const_iterator operator++(int) {
      const_iterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const const_iterator& o) const { return pos_ == o.pos_; }

   private:
    const VertexSet* set_ = nullptr;
    Vertex pos_ = 0;
  };

  const_iterator begin() const { return {this, next_member(0)}; }
  const_iterator end() const { return {this, universe_}; }

  // "0 2 3" style, ascending.
  std::string to_string() const {
    std::string out;
    for (Vertex v : *this) {
      if (!out.empty()) out += ' ';
      out += std::to_string(v);
    }
    return out;
  }

 private:
  std::size_t word_count() const { return (static_cast<std::size_t>(universe_) + 63) >> 6; }

  std::uint64_t word(std::size_t i) const { return i == 0 ? w0_ : rest_[i - 1]; }
  std::uint64_t& word_ref(std::size_t i) { return i == 0 ? w0_ : rest_[i - 1]; }

  void check_vertex(Vertex v) const {
    if (v >= universe_)
      throw OutOfRangeError("vertex " + std::to_string(v) +
                            " outside universe of size " + std::to_string(universe_));
  }

  void require_same_universe(const VertexSet& other) const {
    if (universe_ != other.universe_)
      throw OutOfRangeError("vertex sets over different universes (" +
                            std::to_string(universe_) + " vs " +
                            std::to_string(other.universe_) + ")");
  }

  // Clear bits at positions >= universe_.
  void trim() {
    if (universe_ == 0) {
      w0_ = 0;
      return;
    }
    std::uint32_t used = universe_ & 63;
    if (used != 0) word_ref(word_count() - 1) &= (~std::uint64_t{0}) >> (64 - used);
  }

  std::uint32_t universe_ = 0;
  std::uint64_t w0_ = 0;
  std::vector<std::uint64_t> rest_;
};

}  // namespace qk
