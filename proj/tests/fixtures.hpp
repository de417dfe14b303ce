#pragma once

#include "qk/digraph.hpp"

// Shared canonical test graphs.

inline qk::Digraph c2() { return qk::Digraph::build(2, {{0, 1}, {1, 0}}); }
inline qk::Digraph c3() { return qk::Digraph::build(3, {{0, 1}, {1, 2}, {2, 0}}); }
inline qk::Digraph c4() { return qk::Digraph::build(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

// Two vertices feeding one hub that feeds both back.
inline qk::Digraph shared_sink() {
  return qk::Digraph::build(3, {{0, 2}, {1, 2}, {2, 0}, {2, 1}});
}

// Has the kernel {3} yet contains the directed 3-cycle 0->1->2->0: the witness
// that an odd directed cycle does not preclude a kernel.
inline qk::Digraph domc3() {
  return qk::Digraph::build(4, {{3, 0}, {3, 1}, {3, 2}, {0, 1}, {1, 2}, {2, 0}, {0, 3}});
}

// Source-free, every kernel has 3 > floor(5/2) members ({0,1,2} and {0,1,4}),
// yet {2} is a one-vertex quasi-kernel. Shrinking from {0,1,2} exercises both
// selection branches: step one removes 1 (no private out-neighbor w.r.t. S),
// step two falls back to removing 0 (sole member of S, owns a private
// out-neighbor w.r.t. S).
inline qk::Digraph kernel5() {
  return qk::Digraph::build(5, {{0, 3}, {2, 3}, {2, 4}, {3, 0}, {3, 1}, {3, 4}, {4, 2}});
}
