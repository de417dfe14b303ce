#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "qk/digraph.hpp"
#include "qk/errors.hpp"
#include "qk/vertex_set.hpp"

namespace qk {

namespace detail {

inline void check_set(const Digraph& g, const VertexSet& s) {
  if (s.universe() != g.order())
    throw OutOfRangeError("vertex set universe " + std::to_string(s.universe()) +
                          " does not match digraph order " + std::to_string(g.order()));
}

}  // namespace detail

// An arc between two distinct members of s, if any.
inline std::optional<Arc> independence_violation(const Digraph& g, const VertexSet& s) {
  detail::check_set(g, s);
  for (Vertex u : s) {
    VertexSet hit = g.out(u) & s;
    if (!hit.empty()) return Arc{u, *hit.begin()};
  }
  return std::nullopt;
}

inline bool is_independent(const Digraph& g, const VertexSet& s) {
  return !independence_violation(g, s).has_value();
}

// A vertex outside k with no in-neighbor in k, if any. Ignores independence.
inline std::optional<Vertex> undominated_vertex(const Digraph& g, const VertexSet& k) {
  detail::check_set(g, k);
  for (Vertex v = 0; v < g.order(); ++v) {
    if (k.contains(v)) continue;
    if (!g.in(v).intersects(k)) return v;
  }
  return std::nullopt;
}

// Independent set reaching every other vertex in one step.
inline bool is_kernel(const Digraph& g, const VertexSet& k) {
  return is_independent(g, k) && !undominated_vertex(g, k).has_value();
}

// Vertices at directed distance <= 2 from q: q itself, its out-neighbors, and
// their out-neighbors.
inline VertexSet covered_within_two(const Digraph& g, const VertexSet& q) {
  detail::check_set(g, q);
  VertexSet layer1(g.order());
  for (Vertex u : q) layer1 |= g.out(u);
  VertexSet layer2(g.order());
  for (Vertex w : layer1) layer2 |= g.out(w);
  return q | layer1 | layer2;
}

// A vertex at directed distance > 2 from q, if any. Ignores independence.
inline std::optional<Vertex> uncovered_vertex(const Digraph& g, const VertexSet& q) {
  VertexSet covered = covered_within_two(g, q);
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!covered.contains(v)) return v;
  }
  return std::nullopt;
}

// Independent set reaching every vertex in at most two steps.
inline bool is_quasi_kernel(const Digraph& g, const VertexSet& q) {
  return is_independent(g, q) && covered_within_two(g, q).size() == g.order();
}

// External private out-neighbors of u with regard to s: out-neighbors outside
// s whose only in-neighbor inside s is u itself.
inline VertexSet epons(const Digraph& g, const VertexSet& s, Vertex u) {
  detail::check_set(g, s);
  if (!s.contains(u))
    throw NotAMemberError("vertex " + std::to_string(u) + " is not a member of the set");
  VertexSet result(g.order());
  for (Vertex v : g.out(u)) {
    if (s.contains(v)) continue;
    // u itself always hits v, so privacy means exactly one hitter in s.
    if ((g.in(v) & s).size() == 1) result.insert(v);
  }
  return result;
}

inline bool has_epon(const Digraph& g, const VertexSet& s, Vertex u) {
  detail::check_set(g, s);
  if (!s.contains(u))
    throw NotAMemberError("vertex " + std::to_string(u) + " is not a member of the set");
  for (Vertex v : g.out(u)) {
    if (s.contains(v)) continue;
    if ((g.in(v) & s).size() == 1) return true;
  }
  return false;
}

// A pair (v, w) with w in q, v outside q, v -> w, and no member of q hitting
// v, if any.
inline std::optional<std::pair<Vertex, Vertex>> inward_domination_violation(const Digraph& g,
                                                                            const VertexSet& q) {
  detail::check_set(g, q);
  for (Vertex w : q) {
    for (Vertex v : g.in(w) - q) {
      if (!g.in(v).intersects(q)) return std::make_pair(v, w);
    }
  }
  return std::nullopt;
}

// Every external in-neighbor of a member of q is itself hit by some member.
inline bool is_inward_dominated(const Digraph& g, const VertexSet& q) {
  return !inward_domination_violation(g, q).has_value();
}

// Members of k without an external private out-neighbor with regard to k.
inline VertexSet non_epon_members(const Digraph& g, const VertexSet& k) {
  detail::check_set(g, k);
  VertexSet result(g.order());
  for (Vertex u : k) {
    if (!has_epon(g, k, u)) result.insert(u);
  }
  return result;
}

// Total injective map from members to chosen private out-neighbors. Privacy
// makes any choice injective; picking the minimum id makes it deterministic.
using EponWitnessMap = std::map<Vertex, Vertex>;

struct EponInjectionResult {
  EponWitnessMap witness;               // total on the set when it succeeded
  std::optional<Vertex> failed_member;  // least member with no private out-neighbor

  bool success() const { return !failed_member.has_value(); }
};

// Succeeds iff every member of s has an external private out-neighbor. A
// successful witness certifies 2|s| <= n: the range is pairwise distinct and
// disjoint from s.
inline EponInjectionResult epon_injection(const Digraph& g, const VertexSet& s) {
  detail::check_set(g, s);
  EponInjectionResult result;
  for (Vertex u : s) {
    VertexSet choices = epons(g, s, u);
    if (choices.empty()) {
      result.failed_member = u;
      result.witness.clear();
      return result;
    }
    result.witness.emplace(u, *choices.begin());
  }
  return result;
}

}  // namespace qk
