#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qk/digraph.hpp"
#include "qk/errors.hpp"
#include "qk/prng.hpp"

namespace qk {

enum class GraphKind { cycle, tournament, random_source_free, path_of_2cycles };

inline const char* to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::cycle: return "cycle";
    case GraphKind::tournament: return "tournament";
    case GraphKind::random_source_free: return "random-source-free";
    case GraphKind::path_of_2cycles: return "path-of-2cycles";
  }
  return "?";
}

// Deterministic generators: identical (kind, n, seed, arc_prob) always yields
// an identical digraph.
//
//   cycle             directed n-cycle 0 -> 1 -> ... -> 0 (n = 1 impossible)
//   tournament        one arc per unordered pair, orientation drawn from the
//                     seeded PRNG in lexicographic pair order
//   random_source_free  each ordered pair kept with probability arc_prob,
//                     then every in-degree-0 vertex gets one arc from a
//                     seeded-random other vertex
//   path_of_2cycles   vertices in a path, consecutive pairs joined by arcs in
//                     both directions (source-free for n >= 2)
inline Digraph generate(GraphKind kind, std::uint32_t n, std::uint64_t seed = 0,
                        double arc_prob = 0.5) {
  std::vector<Arc> arcs;
  switch (kind) {
    case GraphKind::cycle: {
      if (n == 1) throw UnsatisfiableError("a 1-cycle would be a self-loop");
      for (Vertex u = 0; u < n; ++u) arcs.emplace_back(u, (u + 1) % n);
      break;
    }
    case GraphKind::tournament: {
      SplitMix64 rng(seed);
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
          if (rng.next() & 1)
            arcs.emplace_back(u, v);
          else
            arcs.emplace_back(v, u);
        }
      break;
    }
    case GraphKind::random_source_free: {
      if (n == 1)
        throw UnsatisfiableError("no source-free digraph on one vertex exists without self-loops");
      SplitMix64 rng(seed);
      std::vector<std::uint32_t> in_degree(n, 0);
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v) {
          if (u == v) continue;
          if (rng.next_bernoulli(arc_prob)) {
            arcs.emplace_back(u, v);
            ++in_degree[v];
          }
        }
      for (Vertex v = 0; v < n; ++v) {
        if (in_degree[v] != 0) continue;
        auto k = static_cast<Vertex>(rng.next_below(n - 1));
        Vertex u = k >= v ? k + 1 : k;  // skip v itself
        arcs.emplace_back(u, v);
      }
      break;
    }
    case GraphKind::path_of_2cycles: {
      for (Vertex u = 0; u + 1 < n; ++u) {
        arcs.emplace_back(u, u + 1);
        arcs.emplace_back(u + 1, u);
      }
      break;
    }
  }
  return Digraph::build(n, arcs);
}

}  // namespace qk
