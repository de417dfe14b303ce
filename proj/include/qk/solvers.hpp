#pragma once

#include <chrono>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qk/digraph.hpp"
#include "qk/domination.hpp"
#include "qk/errors.hpp"
#include "qk/vertex_set.hpp"

namespace qk {

struct SolveLimits {
  std::uint32_t max_n_bruteforce = 24;
  std::optional<std::chrono::milliseconds> time_budget;
};

namespace detail {

inline void check_bruteforce_cap(const Digraph& g, const SolveLimits& limits) {
  if (limits.max_n_bruteforce > 64)
    throw CapExceededError("brute-force cap " + std::to_string(limits.max_n_bruteforce) +
                           " exceeds the 64-vertex subset-mask limit");
  if (g.order() > limits.max_n_bruteforce)
    throw CapExceededError("order " + std::to_string(g.order()) +
                           " exceeds brute-force cap " +
                           std::to_string(limits.max_n_bruteforce));
}

class TimeBudget {
 public:
  explicit TimeBudget(const std::optional<std::chrono::milliseconds>& budget) {
    if (budget) deadline_ = std::chrono::steady_clock::now() + *budget;
  }

  void tick() {
    if (deadline_ && (++ticks_ & 0xFFF) == 0 &&
        std::chrono::steady_clock::now() > *deadline_)
      throw CapExceededError("time budget exceeded");
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint64_t ticks_ = 0;
};

// Visits every subset of {0..n-1} ordered by (size, lexicographic on the
// ascending member list). fn returns false to stop early.
template <typename Fn>
void for_each_subset(std::uint32_t n, Fn&& fn) {
  if (!fn(VertexSet(n))) return;
  std::vector<Vertex> c;
  for (std::uint32_t k = 1; k <= n; ++k) {
    c.resize(k);
    std::iota(c.begin(), c.end(), Vertex{0});
    while (true) {
      VertexSet s(n);
      for (Vertex v : c) s.insert(v);
      if (!fn(s)) return;
      // Advance to the next k-combination in lexicographic order.
      std::uint32_t i = k;
      while (i > 0 && c[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++c[i - 1];
      for (std::uint32_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
  }
}

}  // namespace detail

// All kernels, ordered by (size, lexicographic).
inline std::vector<VertexSet> enumerate_kernels(const Digraph& g,
                                                const SolveLimits& limits = {}) {
  detail::check_bruteforce_cap(g, limits);
  detail::TimeBudget budget(limits.time_budget);
  std::vector<VertexSet> result;
  detail::for_each_subset(g.order(), [&](const VertexSet& s) {
    budget.tick();
    if (is_kernel(g, s)) result.push_back(s);
    return true;
  });
  return result;
}

// First kernel in (size, lexicographic) order, hence minimum-size.
inline std::optional<VertexSet> find_kernel(const Digraph& g,
                                            const SolveLimits& limits = {}) {
  detail::check_bruteforce_cap(g, limits);
  detail::TimeBudget budget(limits.time_budget);
  std::optional<VertexSet> found;
  detail::for_each_subset(g.order(), [&](const VertexSet& s) {
    budget.tick();
    if (is_kernel(g, s)) {
      found = s;
      return false;
    }
    return true;
  });
  return found;
}

// First quasi-kernel in (size, lexicographic) order, hence minimum-size.
// Every digraph has one, so this always succeeds.
inline VertexSet min_quasi_kernel(const Digraph& g, const SolveLimits& limits = {}) {
  detail::check_bruteforce_cap(g, limits);
  detail::TimeBudget budget(limits.time_budget);
  std::optional<VertexSet> found;
  detail::for_each_subset(g.order(), [&](const VertexSet& s) {
    budget.tick();
    if (is_quasi_kernel(g, s)) {
      found = s;
      return false;
    }
    return true;
  });
  if (!found)
    throw UnsatisfiableError("no quasi-kernel found; the digraph structure is corrupt");
  return *found;
}

// Recursive quasi-kernel construction: peel the lowest-id vertex v and its
// out-neighborhood, solve the rest, then add v back unless the sub-solution
// already reaches it in one step. Runs in polynomial time, no cap needed.
inline VertexSet chvatal_quasi_kernel(const Digraph& g) {
  if (g.order() == 0) return VertexSet(0);
  const Vertex v = 0;
  VertexSet keep = VertexSet::full(g.order());
  keep.erase(v);
  keep -= g.out(v);
  InducedSubgraph sub = induced_subgraph(g, keep);
  VertexSet sub_q = chvatal_quasi_kernel(sub.graph);
  VertexSet q(g.order());
  for (Vertex u : sub_q) q.insert(sub.new_to_old[u]);
  for (Vertex u : q) {
    if (g.has_arc(u, v)) return q;
  }
  q.insert(v);
  return q;
}

struct RemovalStep {
  Vertex vertex = 0;  // member removed from the working set
  VertexSet s_set;    // members without a private out-neighbor at that step

  bool operator==(const RemovalStep&) const = default;
};

struct ShrinkVerdicts {
  bool independent = false;
  bool quasi_kernel = false;
  bool inward_dominated = false;
  bool size_bound = false;

  bool all() const { return independent && quasi_kernel && inward_dominated && size_bound; }
  bool operator==(const ShrinkVerdicts&) const = default;
};

struct ShrinkCertificate {
  std::uint32_t n = 0;
  std::vector<Arc> arcs;
  VertexSet initial_kernel;
  std::vector<RemovalStep> removals;
  VertexSet final_set;
  EponWitnessMap witness;
  ShrinkVerdicts verdicts;

  bool operator==(const ShrinkCertificate&) const = default;
};

// Raised when a step of the shrinking loop lands in a state the argument for
// the size bound says cannot happen. Carries everything computed so far, so
// the offending instance can be reproduced and reported.
class InvariantViolationError : public Error {
 public:
  InvariantViolationError(const std::string& what, ShrinkCertificate partial)
      : Error(what), certificate(std::move(partial)) {}

  ShrinkCertificate certificate;
};

struct ShrinkOptions {
  // When set, every removal is followed by a full re-check of the loop
  // invariants; violations raise InvariantViolationError instead of
  // propagating a bad set. Costs roughly a constant factor.
  bool verify = true;
};

namespace detail {

inline ShrinkVerdicts compute_verdicts(const Digraph& g, const VertexSet& q) {
  ShrinkVerdicts v;
  v.independent = is_independent(g, q);
  v.quasi_kernel = is_quasi_kernel(g, q);
  v.inward_dominated = is_inward_dominated(g, q);
  v.size_bound = q.size() <= g.order() / 2;
  return v;
}

[[noreturn]] inline void shrink_violation(const Digraph& g, ShrinkCertificate cert,
                                          const VertexSet& q, const std::string& what) {
  cert.final_set = q;
  cert.witness.clear();
  cert.verdicts = compute_verdicts(g, q);
  throw InvariantViolationError(what, std::move(cert));
}

}  // namespace detail

// Shrinks a kernel to a quasi-kernel of size at most floor(n/2) and returns
// the full removal trace plus a private-out-neighbor witness for the bound.
//
// Loop: S := members of the working set without a private out-neighbor. If S
// is empty, every member has one, the choice map is injective into the
// complement, and the size bound follows. Otherwise remove one member of S --
// preferably one without a private out-neighbor with regard to S itself, the
// least member of S when no such vertex exists -- and repeat. Removal keeps
// the working set an independent quasi-kernel, keeps it inward dominated, and
// strictly shrinks S; verification mode re-checks all three after every step.
inline ShrinkCertificate shrink_kernel(const Digraph& g, const VertexSet& k,
                                       const ShrinkOptions& options = {}) {
  if (!g.is_source_free()) throw PreconditionError(PreconditionError::Kind::not_source_free);
  if (!is_kernel(g, k)) throw PreconditionError(PreconditionError::Kind::not_a_kernel);

  ShrinkCertificate cert;
  cert.n = g.order();
  cert.arcs = g.arcs();
  cert.initial_kernel = k;

  VertexSet q = k;
  VertexSet s = non_epon_members(g, q);
  while (!s.empty()) {
    Vertex u = kNoVertex;
    for (Vertex cand : s) {
      if (!has_epon(g, s, cand)) {
        u = cand;
        break;
      }
    }
    if (u == kNoVertex) u = *s.begin();  // every member of S has one; see README
    cert.removals.push_back({u, s});
    q.erase(u);
    VertexSet next_s = non_epon_members(g, q);
    if (options.verify) {
      const std::string after = " after removing vertex " + std::to_string(u);
      if (!is_independent(g, q))
        detail::shrink_violation(g, cert, q, "working set not independent" + after);
      if (!is_quasi_kernel(g, q))
        detail::shrink_violation(g, cert, q, "working set not a quasi-kernel" + after);
      if (!is_inward_dominated(g, q))
        detail::shrink_violation(g, cert, q, "working set not inward dominated" + after);
      if (next_s.size() >= s.size())
        detail::shrink_violation(g, cert, q,
                                 "set of members without a private out-neighbor did not shrink" +
                                     after);
    }
    s = std::move(next_s);
  }

  EponInjectionResult injection = epon_injection(g, q);
  if (!injection.success())
    detail::shrink_violation(g, cert, q,
                             "vertex " + std::to_string(*injection.failed_member) +
                                 " lost its private out-neighbor at the terminal step");
  cert.final_set = q;
  cert.witness = std::move(injection.witness);
  cert.verdicts = detail::compute_verdicts(g, q);
  if (options.verify && !cert.verdicts.all())
    throw InvariantViolationError("final set fails a certificate verdict", cert);
  return cert;
}

struct VerificationReport {
  bool ok = true;
  std::string failed_check;  // empty when ok
  std::string detail;        // empty when ok

  explicit operator bool() const { return ok; }
};

// Recomputes every certificate claim from the graph alone. Checks run in a
// fixed order and the report names the first one that fails: graph,
// initial_kernel, removals, independence, quasi_kernel, inward_dominated,
// size_bound, witness, final_set.
inline VerificationReport verify_certificate(const Digraph& g, const ShrinkCertificate& cert) {
  auto fail = [](const std::string& check, const std::string& detail) {
    return VerificationReport{false, check, detail};
  };

  if (cert.n != g.order())
    return fail("graph", "certificate order " + std::to_string(cert.n) +
                             " does not match digraph order " + std::to_string(g.order()));
  if (cert.arcs != g.arcs()) return fail("graph", "certificate arcs do not match the digraph");

  if (cert.initial_kernel.universe() != g.order() ||
      !is_kernel(g, cert.initial_kernel))
    return fail("initial_kernel", "claimed initial set is not a kernel");

  VertexSet q = cert.initial_kernel;
  for (std::size_t i = 0; i < cert.removals.size(); ++i) {
    const RemovalStep& step = cert.removals[i];
    VertexSet s = non_epon_members(g, q);
    const std::string where = "step " + std::to_string(i);
    if (step.s_set != s)
      return fail("removals", where + ": recorded S-set does not match the recomputed one");
    if (!s.contains(step.vertex))
      return fail("removals", where + ": removed vertex " + std::to_string(step.vertex) +
                                  " is not in S");
    q.erase(step.vertex);
  }

  const VertexSet& final_set = cert.final_set;
  if (final_set.universe() != g.order())
    return fail("final_set", "final set universe does not match the digraph order");
  if (auto arc = independence_violation(g, final_set))
    return fail("independence", "arc " + std::to_string(arc->first) + " -> " +
                                    std::to_string(arc->second) + " joins two members");
  if (auto v = uncovered_vertex(g, final_set))
    return fail("quasi_kernel",
                "vertex " + std::to_string(*v) + " is more than two steps from the set");
  if (auto pair = inward_domination_violation(g, final_set))
    return fail("inward_dominated", "in-neighbor " + std::to_string(pair->first) +
                                        " of member " + std::to_string(pair->second) +
                                        " is not reached by the set");
  if (final_set.size() > g.order() / 2)
    return fail("size_bound", "final set has " + std::to_string(final_set.size()) +
                                  " members, above the bound " +
                                  std::to_string(g.order() / 2));

  VertexSet seen_targets(g.order());
  for (Vertex u : final_set) {
    auto it = cert.witness.find(u);
    if (it == cert.witness.end())
      return fail("witness", "member " + std::to_string(u) + " has no witness entry");
    const Vertex v = it->second;
    if (v >= g.order() || !epons(g, final_set, u).contains(v))
      return fail("witness", "witness of member " + std::to_string(u) +
                                 " is not one of its private out-neighbors");
    if (seen_targets.contains(v))
      return fail("witness", "witness vertex " + std::to_string(v) + " is used twice");
    seen_targets.insert(v);
  }
  if (cert.witness.size() != final_set.size())
    return fail("witness", "witness map has entries for non-members");

  if (q != final_set)
    return fail("final_set", "initial kernel minus removals does not equal the final set");

  return VerificationReport{};
}

}  // namespace qk
