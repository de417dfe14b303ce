#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qk/errors.hpp"
#include "qk/vertex_set.hpp"

namespace qk {

using Arc = std::pair<Vertex, Vertex>;

inline constexpr Vertex kNoVertex = ~Vertex{0};

// Finite loop-free digraph over vertices {0, ..., n-1}. Immutable after
// construction; out- and in-neighbor sets are both materialized so either
// direction is O(1) to query.
class Digraph {
 public:
  Digraph() = default;

  static Digraph build(std::uint32_t n, std::span<const Arc> arcs) {
    std::vector<VertexSet> out(n, VertexSet(n));
    for (const auto& [u, v] : arcs) {
      if (u >= n || v >= n)
        throw OutOfRangeError("arc (" + std::to_string(u) + ", " + std::to_string(v) +
                              ") outside vertex range [0, " + std::to_string(n) + ")");
      if (u == v) throw SelfLoopError("self-loop at vertex " + std::to_string(u));
      out[u].insert(v);  // duplicates collapse
    }
    return Digraph(n, std::move(out));
  }

  static Digraph build(std::uint32_t n, std::initializer_list<Arc> arcs) {
    return build(n, std::span<const Arc>(arcs.begin(), arcs.size()));
  }

  // Adopts per-vertex out-neighbor sets directly. Each set must range over a
  // universe of exactly n vertices.
  static Digraph from_out_sets(std::vector<VertexSet> out) {
    auto n = static_cast<std::uint32_t>(out.size());
    for (Vertex u = 0; u < n; ++u) {
      if (out[u].universe() != n)
        throw OutOfRangeError("out-neighbor set universe mismatch");
      if (out[u].contains(u)) throw SelfLoopError("self-loop at vertex " + std::to_string(u));
    }
    return Digraph(n, std::move(out));
  }

  std::uint32_t order() const { return n_; }

  std::size_t arc_count() const {
    std::size_t m = 0;
    for (const auto& s : out_) m += s.size();
    return m;
  }

  bool has_arc(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    return out_[u].contains(v);
  }

  const VertexSet& out(Vertex u) const {
    check_vertex(u);
    return out_[u];
  }

  const VertexSet& in(Vertex u) const {
    check_vertex(u);
    return in_[u];
  }

  // Arcs in lexicographic (u, v) order.
  std::vector<Arc> arcs() const {
    std::vector<Arc> result;
    result.reserve(arc_count());
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : out_[u]) result.emplace_back(u, v);
    return result;
  }

  // Every vertex has at least one ingoing arc. Vacuously true for n = 0.
  bool is_source_free() const {
    for (const auto& s : in_) {
      if (s.empty()) return false;
    }
    return true;
  }

  // A vertex with no ingoing arc, if any.
  std::optional<Vertex> source_vertex() const {
    for (Vertex v = 0; v < n_; ++v) {
      if (in_[v].empty()) return v;
    }
    return std::nullopt;
  }

  bool operator==(const Digraph& other) const {
    return n_ == other.n_ && out_ == other.out_;
  }

 private:
  Digraph(std::uint32_t n, std::vector<VertexSet> out) : n_(n), out_(std::move(out)) {
    in_.assign(n_, VertexSet(n_));
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : out_[u]) in_[v].insert(u);
  }

  void check_vertex(Vertex u) const {
    if (u >= n_)
      throw OutOfRangeError("vertex " + std::to_string(u) + " outside digraph of order " +
                            std::to_string(n_));
  }

  std::uint32_t n_ = 0;
  std::vector<VertexSet> out_;
  std::vector<VertexSet> in_;
};

enum class Direction { out, in };

inline const VertexSet& neighbors(const Digraph& g, Vertex u, Direction d) {
  return d == Direction::out ? g.out(u) : g.in(u);
}

struct InducedSubgraph {
  Digraph graph;
  std::vector<Vertex> old_to_new;  // size = original order, kNoVertex where dropped
  std::vector<Vertex> new_to_old;  // ascending original ids
};

// Subgraph induced by `keep`; new ids are assigned in ascending old-id order.
inline InducedSubgraph induced_subgraph(const Digraph& g, const VertexSet& keep) {
  if (keep.universe() != g.order())
    throw OutOfRangeError("induced_subgraph: set universe does not match digraph order");
  InducedSubgraph result;
  result.old_to_new.assign(g.order(), kNoVertex);
  result.new_to_old = keep.members();
  auto m = static_cast<std::uint32_t>(result.new_to_old.size());
  for (Vertex i = 0; i < m; ++i) result.old_to_new[result.new_to_old[i]] = i;

  std::vector<VertexSet> out(m, VertexSet(m));
  for (Vertex i = 0; i < m; ++i) {
    for (Vertex w : g.out(result.new_to_old[i]) & keep)
      out[i].insert(result.old_to_new[w]);
  }
  result.graph = Digraph::from_out_sets(std::move(out));
  return result;
}

}  // namespace qk
