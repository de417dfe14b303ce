#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "qk/digraph.hpp"
#include "qk/errors.hpp"

namespace qk {

// Canonical integer id of a labeled digraph on n vertices. Arc (u, v), u != v,
// occupies bit u*(n-1) + (v < u ? v : v-1), so codes range over
// [0, 2^(n(n-1))). Codes are stored in a 64-bit word, which limits encodable
// digraphs to n <= 8.
struct GraphEncoding {
  std::uint32_t n = 0;
  std::uint64_t code = 0;

  bool operator==(const GraphEncoding&) const = default;
  auto operator<=>(const GraphEncoding&) const = default;
};

inline constexpr std::uint32_t kMaxEncodableOrder = 8;

inline std::uint32_t arc_bit_count(std::uint32_t n) {
  if (n > kMaxEncodableOrder)
    throw CapExceededError("graph encodings support at most " +
                           std::to_string(kMaxEncodableOrder) + " vertices, got " +
                           std::to_string(n));
  return n == 0 ? 0 : n * (n - 1);
}

// Number of labeled digraphs on n vertices: 2^(n(n-1)).
inline std::uint64_t graph_count(std::uint32_t n) {
  return std::uint64_t{1} << arc_bit_count(n);
}

inline std::uint32_t arc_bit(std::uint32_t n, Vertex u, Vertex v) {
  return u * (n - 1) + (v < u ? v : v - 1);
}

inline GraphEncoding encode(const Digraph& g) {
  std::uint32_t n = g.order();
  arc_bit_count(n);
  GraphEncoding enc{n, 0};
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.out(u)) enc.code |= std::uint64_t{1} << arc_bit(n, u, v);
  return enc;
}

inline Digraph decode(const GraphEncoding& enc) {
  std::uint32_t n = enc.n;
  std::uint32_t bits = arc_bit_count(n);
  if (bits < 64 && enc.code >= (std::uint64_t{1} << bits))
    throw OutOfRangeError("encoding " + std::to_string(enc.code) +
                          " out of range for n = " + std::to_string(n));
  std::vector<VertexSet> out;
  out.reserve(n);
  // Row u of the code holds u's out-neighbors with the diagonal bit removed;
  // splice a zero back in at position u to recover the neighbor mask.
  for (Vertex u = 0; u < n; ++u) {
    std::uint64_t row = (enc.code >> (u * (n - 1))) & ((std::uint64_t{1} << (n - 1)) - 1);
    std::uint64_t low = row & ((std::uint64_t{1} << u) - 1);
    std::uint64_t high = row >> u;
    out.push_back(VertexSet::from_mask(n, low | (high << (u + 1))));
  }
  return Digraph::from_out_sets(std::move(out));
}

// Range over all 2^(n(n-1)) labeled digraphs on n vertices in ascending code
// order. The default cap keeps accidental 2^42-step loops out of reach.
class GraphEnumeration {
 public:
  explicit GraphEnumeration(std::uint32_t n, std::uint32_t cap = 6) : n_(n) {
    if (n > cap)
      throw CapExceededError("enumeration over n = " + std::to_string(n) +
                             " exceeds cap " + std::to_string(cap));
    count_ = graph_count(n);
  }

  class iterator {
   public:
    using value_type = std::pair<GraphEncoding, Digraph>;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(std::uint32_t n, std::uint64_t code) : enc_{n, code} {}

    value_type operator*() const { return {enc_, decode(enc_)}; }
    iterator& operator++() {
      ++enc_.code;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const iterator& o) const { return enc_ == o.enc_; }

   private:
    GraphEncoding enc_;
  };

  iterator begin() const { return {n_, 0}; }
  iterator end() const { return {n_, count_}; }
  std::uint64_t size() const { return count_; }

 private:
  std::uint32_t n_;
  std::uint64_t count_;
};

inline GraphEnumeration enumerate_all(std::uint32_t n, std::uint32_t cap = 6) {
  return GraphEnumeration(n, cap);
}

}  // namespace qk
