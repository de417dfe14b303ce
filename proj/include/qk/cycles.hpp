#pragma once

#include <cstdint>
#include <vector>

#include "qk/digraph.hpp"

namespace qk {

// Strongly connected components, iterative Tarjan. Returns one component id
// per vertex; ids are dense but otherwise carry no ordering promise.
inline std::vector<std::uint32_t> strongly_connected_components(const Digraph& g,
                                                                std::uint32_t* count_out = nullptr) {
  const std::uint32_t n = g.order();
  constexpr std::uint32_t kUnvisited = ~std::uint32_t{0};
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<Vertex> stack;
  std::vector<bool> on_stack(n, false);
  std::uint32_t next_index = 0, comp_count = 0;

  struct Frame {
    Vertex v;
    VertexSet::const_iterator it, end;
  };
  std::vector<Frame> frames;

  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.push_back({root, g.out(root).begin(), g.out(root).end()});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.it != f.end) {
        Vertex w = *f.it;
        ++f.it;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, g.out(w).begin(), g.out(w).end()});
        } else if (on_stack[w] && index[w] < low[f.v]) {
          low[f.v] = index[w];
        }
      } else {
        Vertex v = f.v;
        frames.pop_back();
        if (!frames.empty() && low[v] < low[frames.back().v]) low[frames.back().v] = low[v];
        if (low[v] == index[v]) {
          Vertex w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = comp_count;
          } while (w != v);
          ++comp_count;
        }
      }
    }
  }
  if (count_out) *count_out = comp_count;
  return comp;
}

// True iff the digraph contains a directed cycle of odd length. Within each
// strongly connected component every arc lies on a closed directed walk, so
// the component has an odd directed cycle exactly when the underlying
// undirected graph of its internal arcs is not 2-colorable.
inline bool has_odd_directed_cycle(const Digraph& g) {
  const std::uint32_t n = g.order();
  std::vector<std::uint32_t> comp = strongly_connected_components(g);

  std::vector<std::int8_t> color(n, -1);
  std::vector<Vertex> queue;
  for (Vertex start = 0; start < n; ++start) {
    if (color[start] != -1) continue;
    color[start] = 0;
    queue.assign(1, start);
    while (!queue.empty()) {
      Vertex v = queue.back();
      queue.pop_back();
      for (Direction d : {Direction::out, Direction::in}) {
        for (Vertex w : neighbors(g, v, d)) {
          if (comp[w] != comp[v]) continue;
          if (color[w] == -1) {
            color[w] = static_cast<std::int8_t>(1 - color[v]);
            queue.push_back(w);
          } else if (color[w] == color[v]) {
            return true;
          }
        }
      }
    }
  }
  return false;
}

}  // namespace qk
