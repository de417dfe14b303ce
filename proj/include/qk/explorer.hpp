#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qk/cycles.hpp"
#include "qk/digraph.hpp"
#include "qk/domination.hpp"
#include "qk/encoding.hpp"
#include "qk/errors.hpp"
#include "qk/json_io.hpp"
#include "qk/prng.hpp"
#include "qk/solvers.hpp"
#include "qk/vertex_set.hpp"

// Scans of labeled-digraph space. Every graph on n vertices is visited either
// exhaustively (by ascending encoding) or by seeded sampling, and pushed
// through the solver pipeline: size-bound checks from the minimum kernel,
// minimum quasi-kernel bound checks, kernel existence on odd-cycle-free
// graphs, and (under verification) the full per-kernel property suite.
// Reports are deterministic: a config fully determines the report, across
// thread counts and shard partitionings alike.

namespace qk {

enum class ScanMode { exhaustive, random };

inline const char* to_string(ScanMode m) {
  return m == ScanMode::exhaustive ? "exhaustive" : "random";
}

inline ScanMode scan_mode_from_string(const std::string& s) {
  if (s == "exhaustive") return ScanMode::exhaustive;
  if (s == "random") return ScanMode::random;
  throw ParseError("unknown scan mode \"" + s + "\"");
}

enum class GraphFilter {
  source_free,
  has_kernel,
  kernel_free,
  odd_cycle_free,
  has_odd_cycle,
};

inline const char* to_string(GraphFilter f) {
  switch (f) {
    case GraphFilter::source_free: return "source-free";
    case GraphFilter::has_kernel: return "has-kernel";
    case GraphFilter::kernel_free: return "kernel-free";
    case GraphFilter::odd_cycle_free: return "odd-cycle-free";
    case GraphFilter::has_odd_cycle: return "has-odd-cycle";
  }
  return "?";
}

inline GraphFilter graph_filter_from_string(const std::string& s) {
  for (GraphFilter f : {GraphFilter::source_free, GraphFilter::has_kernel,
                        GraphFilter::kernel_free, GraphFilter::odd_cycle_free,
                        GraphFilter::has_odd_cycle}) {
    if (s == to_string(f)) return f;
  }
  throw ParseError("unknown graph filter \"" + s + "\"");
}

struct ScanConfig {
  std::uint32_t n_lo = 2;
  std::uint32_t n_hi = 5;
  ScanMode mode = ScanMode::exhaustive;
  std::uint64_t sample_count = 0;  // random mode: samples per n
  std::uint64_t seed = 0;          // random mode: stream seed
  std::vector<GraphFilter> filters;  // conjunction; scanned graphs must pass all
  bool verification = true;        // per-kernel property suite + certificate re-checks
  std::uint32_t shard_index = 0;   // this run covers shard shard_index of shard_total
  std::uint32_t shard_total = 1;
  std::uint32_t exhaustive_cap = 5;  // largest n an exhaustive scan will accept
  bool list_matches = false;       // record the encoding of every filter match

  bool operator==(const ScanConfig&) const = default;
};

// Counters for one vertex count. "checked" counts instances where a property's
// premise held; "passes" counts those where its conclusion held too.
struct PerNTally {
  std::uint32_t n = 0;
  std::uint64_t scanned = 0;  // graphs decoded (before filters)
  std::uint64_t matched = 0;  // graphs passing all filters; everything below counts these
  std::uint64_t source_free = 0;
  std::uint64_t with_kernel = 0;
  std::uint64_t kernel_and_odd_cycle = 0;
  std::uint64_t odd_cycle_free = 0;
  std::uint64_t richardson_checked = 0;  // no odd directed cycle => some kernel
  std::uint64_t richardson_passes = 0;
  std::uint64_t theorem_checked = 0;  // shrink from the minimum kernel meets the bound
  std::uint64_t theorem_passes = 0;
  std::uint64_t conjecture_checked = 0;  // minimum quasi-kernel meets the bound
  std::uint64_t conjecture_passes = 0;
  std::uint64_t chvatal_checked = 0;  // recursive construction yields a quasi-kernel
  std::uint64_t chvatal_passes = 0;
  std::uint64_t ordering_checked = 0;  // min qk <= shrink final <= min kernel; min qk <= recursive
  std::uint64_t ordering_passes = 0;
  std::uint64_t lemma1_checked = 0;  // kernel => inward dominated quasi-kernel
  std::uint64_t lemma1_passes = 0;
  std::uint64_t lemma2_checked = 0;  // epon w.r.t. T and S subset of T => epon w.r.t. S
  std::uint64_t lemma2_passes = 0;
  std::uint64_t lemma3_checked = 0;  // successful injection => 2|S| <= n, witness injective
  std::uint64_t lemma3_passes = 0;
  std::uint64_t certificates_checked = 0;  // independent re-verification of shrink output
  std::uint64_t certificates_passes = 0;

  bool operator==(const PerNTally&) const = default;

  PerNTally& operator+=(const PerNTally& o) {
    scanned += o.scanned;
    matched += o.matched;
    source_free += o.source_free;
    with_kernel += o.with_kernel;
    kernel_and_odd_cycle += o.kernel_and_odd_cycle;
    odd_cycle_free += o.odd_cycle_free;
    richardson_checked += o.richardson_checked;
    richardson_passes += o.richardson_passes;
    theorem_checked += o.theorem_checked;
    theorem_passes += o.theorem_passes;
    conjecture_checked += o.conjecture_checked;
    conjecture_passes += o.conjecture_passes;
    chvatal_checked += o.chvatal_checked;
    chvatal_passes += o.chvatal_passes;
    ordering_checked += o.ordering_checked;
    ordering_passes += o.ordering_passes;
    lemma1_checked += o.lemma1_checked;
    lemma1_passes += o.lemma1_passes;
    lemma2_checked += o.lemma2_checked;
    lemma2_passes += o.lemma2_passes;
    lemma3_checked += o.lemma3_checked;
    lemma3_passes += o.lemma3_passes;
    certificates_checked += o.certificates_checked;
    certificates_passes += o.certificates_passes;
    return *this;
  }
};

// One failed check, with enough context to re-run the instance standalone.
// reason "conjecture" marks a legitimate research finding; every other reason
// marks a violated proof obligation, i.e. an implementation bug.
struct Counterexample {
  std::uint32_t n = 0;
  std::uint64_t code = 0;
  std::string reason;
  json witness;

  bool operator==(const Counterexample&) const = default;
};

// A source-free digraph whose minimum kernel is larger than floor(n/2).
struct ExtremalEntry {
  std::uint32_t n = 0;
  std::uint64_t code = 0;
  std::uint32_t min_kernel_size = 0;
  std::uint32_t min_quasi_kernel_size = 0;

  bool operator==(const ExtremalEntry&) const = default;
};

struct SearchReport {
  ScanConfig config;
  std::vector<PerNTally> per_n;
  std::vector<Counterexample> counterexamples;
  std::vector<ExtremalEntry> extremal;
  std::vector<GraphEncoding> matches;  // filled only with config.list_matches
  double elapsed_seconds = 0.0;

  bool operator==(const SearchReport&) const = default;

  // True when some counterexample marks a violated proof obligation (anything
  // but a bound-conjecture finding).
  bool theorem_violation() const {
    for (const Counterexample& c : counterexamples) {
      if (c.reason != "conjecture") return true;
    }
    return false;
  }
};

namespace detail {

inline ScanConfig normalized(ScanConfig config) {
  std::sort(config.filters.begin(), config.filters.end());
  config.filters.erase(std::unique(config.filters.begin(), config.filters.end()),
                       config.filters.end());
  if (config.mode == ScanMode::exhaustive) {
    config.sample_count = 0;
    config.seed = 0;
  }
  return config;
}

inline bool same_scan_modulo_shard(ScanConfig a, ScanConfig b) {
  a.shard_index = b.shard_index = 0;
  a.shard_total = b.shard_total = 1;
  return normalized(a) == normalized(b);
}

}  // namespace detail

// 64-bit FNV-1a over the canonical config text, shard fields excluded, so all
// shards of one scan agree on the hash.
inline std::uint64_t config_hash(const ScanConfig& config) {
  ScanConfig c = detail::normalized(config);
  std::string text = "n_lo=" + std::to_string(c.n_lo) + ";n_hi=" + std::to_string(c.n_hi) +
                     ";mode=" + to_string(c.mode) +
                     ";samples=" + std::to_string(c.sample_count) +
                     ";seed=" + std::to_string(c.seed) + ";filters=";
  for (std::size_t i = 0; i < c.filters.size(); ++i) {
    if (i > 0) text += ',';
    text += to_string(c.filters[i]);
  }
  text += ";verification=" + std::to_string(c.verification ? 1 : 0) +
          ";cap=" + std::to_string(c.exhaustive_cap) +
          ";list_matches=" + std::to_string(c.list_matches ? 1 : 0);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char byte : text) {
    h ^= byte;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace detail {

// Largest kernel for which the subset-monotonicity suite enumerates all
// (S subset of T subset of K, u) triples; 3^(size-1) pairs per member.
inline constexpr std::uint32_t kLemma2MaxKernel = 10;

struct ScanAccumulator {
  std::vector<PerNTally> per_n;
  std::vector<Counterexample> counterexamples;
  std::vector<ExtremalEntry> extremal;
  std::vector<GraphEncoding> matches;
};

inline void validate_scan_config(const ScanConfig& config) {
  if (config.n_lo < 1 || config.n_lo > config.n_hi)
    throw ParseError("vertex-count range must satisfy 1 <= lo <= hi");
  if (config.n_hi > kMaxEncodableOrder)
    throw CapExceededError("scans support at most " + std::to_string(kMaxEncodableOrder) +
                           " vertices, got " + std::to_string(config.n_hi));
  if (config.mode == ScanMode::exhaustive && config.n_hi > config.exhaustive_cap)
    throw CapExceededError("exhaustive scan over n = " + std::to_string(config.n_hi) +
                           " exceeds cap " + std::to_string(config.exhaustive_cap));
  if (config.shard_total == 0 || config.shard_index >= config.shard_total)
    throw ShardConflictError("shard index " + std::to_string(config.shard_index) +
                             " is not below shard total " +
                             std::to_string(config.shard_total));
}

// Contiguous sub-range [lo, hi) of [0, domain) assigned to shard index/total.
inline std::pair<std::uint64_t, std::uint64_t> shard_range(std::uint64_t domain,
                                                           std::uint32_t index,
                                                           std::uint32_t total) {
  std::uint64_t base = domain / total;
  std::uint64_t rem = domain % total;
  std::uint64_t lo = base * index + std::min<std::uint64_t>(index, rem);
  return {lo, lo + base + (index < rem ? 1 : 0)};
}

// Lazily computed per-graph facts shared by the filter and pipeline stages.
class GraphFacts {
 public:
  GraphFacts(const Digraph& g, bool want_all_kernels) : g_(g), all_(want_all_kernels) {}

  bool source_free() {
    if (!src_) src_ = g_.is_source_free();
    return *src_;
  }

  bool odd_cycle() {
    if (!odd_) odd_ = has_odd_directed_cycle(g_);
    return *odd_;
  }

  const std::optional<VertexSet>& min_kernel() {
    ensure_kernels();
    return min_kernel_;
  }

  // Empty unless constructed with want_all_kernels.
  const std::vector<VertexSet>& kernels() {
    ensure_kernels();
    return kernels_;
  }

 private:
  void ensure_kernels() {
    if (kernels_done_) return;
    kernels_done_ = true;
    if (all_) {
      kernels_ = enumerate_kernels(g_);
      if (!kernels_.empty()) min_kernel_ = kernels_.front();
    } else {
      min_kernel_ = find_kernel(g_);
    }
  }

  const Digraph& g_;
  bool all_;
  std::optional<bool> src_;
  std::optional<bool> odd_;
  bool kernels_done_ = false;
  std::vector<VertexSet> kernels_;
  std::optional<VertexSet> min_kernel_;
};

inline bool passes_filter(GraphFilter f, GraphFacts& facts) {
  switch (f) {
    case GraphFilter::source_free: return facts.source_free();
    case GraphFilter::has_kernel: return facts.min_kernel().has_value();
    case GraphFilter::kernel_free: return !facts.min_kernel().has_value();
    case GraphFilter::odd_cycle_free: return !facts.odd_cycle();
    case GraphFilter::has_odd_cycle: return facts.odd_cycle();
  }
  return false;
}

inline json ordering_witness(const VertexSet& min_qk, const VertexSet& shrink_final,
                             const VertexSet& min_kernel, const VertexSet& recursive) {
  json w;
  w["min_quasi_kernel"] = set_to_json(min_qk);
  w["shrink_final"] = set_to_json(shrink_final);
  w["min_kernel"] = set_to_json(min_kernel);
  w["recursive"] = set_to_json(recursive);
  return w;
}

// Lemma suite for one kernel. Returns per-lemma (checked, passed) deltas via
// the tally and appends counterexamples on failure.
inline void check_kernel_properties(const Digraph& g, const GraphEncoding& enc,
                                    const VertexSet& k, PerNTally& tally,
                                    std::vector<Counterexample>& out) {
  // Kernel => inward dominated quasi-kernel.
  ++tally.lemma1_checked;
  if (is_quasi_kernel(g, k) && is_inward_dominated(g, k)) {
    ++tally.lemma1_passes;
  } else {
    json w;
    w["kernel"] = set_to_json(k);
    out.push_back({enc.n, enc.code, "lemma1", std::move(w)});
  }

  // Subset monotonicity: a private out-neighbor w.r.t. T stays private w.r.t.
  // any S subset of T containing the owner. Enumerated over subsets of k.
  if (k.size() <= kLemma2MaxKernel) {
    std::vector<Vertex> members(k.begin(), k.end());
    for (Vertex u : members) {
      std::vector<Vertex> others;
      for (Vertex v : members) {
        if (v != u) others.push_back(v);
      }
      const std::uint32_t m = static_cast<std::uint32_t>(others.size());
      for (std::uint64_t tmask = 0; tmask < (std::uint64_t{1} << m); ++tmask) {
        VertexSet t(g.order(), {u});
        for (std::uint32_t i = 0; i < m; ++i) {
          if (tmask >> i & 1) t.insert(others[i]);
        }
        if (!has_epon(g, t, u)) continue;
        std::uint64_t smask = tmask;
        while (true) {
          VertexSet s(g.order(), {u});
          for (std::uint32_t i = 0; i < m; ++i) {
            if (smask >> i & 1) s.insert(others[i]);
          }
          ++tally.lemma2_checked;
          if (has_epon(g, s, u)) {
            ++tally.lemma2_passes;
          } else {
            json w;
            w["kernel"] = set_to_json(k);
            w["t"] = set_to_json(t);
            w["s"] = set_to_json(s);
            w["u"] = u;
            out.push_back({enc.n, enc.code, "lemma2", std::move(w)});
          }
          if (smask == 0) break;
          smask = (smask - 1) & tmask;
        }
      }
    }
  }

  // A successful private-out-neighbor injection certifies 2|S| <= n.
  EponInjectionResult inj = epon_injection(g, k);
  if (inj.success()) {
    ++tally.lemma3_checked;
    bool ok = 2 * static_cast<std::uint64_t>(k.size()) <= g.order() &&
              inj.witness.size() == k.size();
    VertexSet seen(g.order());
    for (const auto& [u, v] : inj.witness) {
      if (!k.contains(u) || !epons(g, k, u).contains(v) || seen.contains(v)) ok = false;
      if (!seen.contains(v)) seen.insert(v);
    }
    if (ok) {
      ++tally.lemma3_passes;
    } else {
      json w;
      w["set"] = set_to_json(k);
      json wit = json::object();
      for (const auto& [u, v] : inj.witness) wit[std::to_string(u)] = v;
      w["witness"] = std::move(wit);
      out.push_back({enc.n, enc.code, "lemma3", std::move(w)});
    }
  }
}

inline void process_graph(const ScanConfig& config, const GraphEncoding& enc,
                          PerNTally& tally, ScanAccumulator& acc) {
  ++tally.scanned;
  Digraph g = decode(enc);
  GraphFacts facts(g, config.verification);
  for (GraphFilter f : config.filters) {
    if (!passes_filter(f, facts)) return;
  }
  ++tally.matched;
  if (config.list_matches) acc.matches.push_back(enc);

  const std::uint32_t n = enc.n;
  const std::uint64_t bound = n / 2;
  const bool src = facts.source_free();
  const bool odd = facts.odd_cycle();
  const std::optional<VertexSet>& min_k = facts.min_kernel();

  if (src) ++tally.source_free;
  if (min_k) ++tally.with_kernel;
  if (min_k && odd) ++tally.kernel_and_odd_cycle;
  if (!odd) {
    ++tally.odd_cycle_free;
    ++tally.richardson_checked;
    if (min_k) {
      ++tally.richardson_passes;
    } else {
      acc.counterexamples.push_back(
          {n, enc.code, "richardson", json::object({{"odd_cycle", false}})});
    }
  }

  std::optional<VertexSet> min_qk;
  if (src) {
    min_qk = min_quasi_kernel(g);
    ++tally.conjecture_checked;
    if (min_qk->size() <= bound) {
      ++tally.conjecture_passes;
    } else {
      json w;
      w["min_quasi_kernel"] = set_to_json(*min_qk);
      w["bound"] = bound;
      acc.counterexamples.push_back({n, enc.code, "conjecture", std::move(w)});
    }
  }

  std::optional<ShrinkCertificate> cert;
  if (src && min_k) {
    ++tally.theorem_checked;
    try {
      cert = shrink_kernel(g, *min_k, ShrinkOptions{config.verification});
      if (cert->verdicts.all()) {
        ++tally.theorem_passes;
      } else {
        acc.counterexamples.push_back(
            {n, enc.code, "theorem", certificate_to_json(*cert)});
      }
      if (config.verification) {
        ++tally.certificates_checked;
        VerificationReport rep = verify_certificate(g, *cert);
        if (rep.ok) {
          ++tally.certificates_passes;
        } else {
          json w;
          w["failed_check"] = rep.failed_check;
          w["detail"] = rep.detail;
          acc.counterexamples.push_back({n, enc.code, "certificate", std::move(w)});
        }
      }
    } catch (const InvariantViolationError& e) {
      json w;
      w["error"] = e.what();
      w["certificate"] = certificate_to_json(e.certificate);
      acc.counterexamples.push_back({n, enc.code, "theorem", std::move(w)});
    }

    if (min_k->size() > bound)
      acc.extremal.push_back({n, enc.code, static_cast<std::uint32_t>(min_k->size()),
                              static_cast<std::uint32_t>(min_qk->size())});
  }

  if (config.verification) {
    VertexSet recursive = chvatal_quasi_kernel(g);
    ++tally.chvatal_checked;
    if (is_quasi_kernel(g, recursive)) {
      ++tally.chvatal_passes;
    } else {
      json w;
      w["result"] = set_to_json(recursive);
      acc.counterexamples.push_back({n, enc.code, "chvatal", std::move(w)});
    }

    if (src && min_k && cert) {
      ++tally.ordering_checked;
      if (min_qk->size() <= cert->final_set.size() &&
          cert->final_set.size() <= min_k->size() && min_qk->size() <= recursive.size()) {
        ++tally.ordering_passes;
      } else {
        acc.counterexamples.push_back(
            {n, enc.code, "ordering",
             ordering_witness(*min_qk, cert->final_set, *min_k, recursive)});
      }
    }

    for (const VertexSet& k : facts.kernels())
      check_kernel_properties(g, enc, k, tally, acc.counterexamples);
  }
}

inline void sort_report_lists(SearchReport& report) {
  std::sort(report.counterexamples.begin(), report.counterexamples.end(),
            [](const Counterexample& a, const Counterexample& b) {
              return std::tie(a.n, a.code, a.reason) < std::tie(b.n, b.code, b.reason);
            });
  std::sort(report.extremal.begin(), report.extremal.end(),
            [](const ExtremalEntry& a, const ExtremalEntry& b) {
              return std::tie(a.n, a.code) < std::tie(b.n, b.code);
            });
  std::sort(report.matches.begin(), report.matches.end());
}

}  // namespace detail

// Runs one scan shard. The report depends only on the config: worker count
// affects wall time, never content.
inline SearchReport scan(const ScanConfig& raw_config, unsigned threads = 1) {
  ScanConfig config = detail::normalized(raw_config);
  detail::validate_scan_config(config);
  if (threads == 0) threads = 1;
  const auto started = std::chrono::steady_clock::now();

  SearchReport report;
  report.config = config;

  for (std::uint32_t n = config.n_lo; n <= config.n_hi; ++n) {
    const std::uint64_t domain =
        config.mode == ScanMode::exhaustive ? graph_count(n) : config.sample_count;
    const auto [lo, hi] = detail::shard_range(domain, config.shard_index, config.shard_total);

    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(hi - lo, 1)));
    std::vector<PerNTally> tallies(workers);
    std::vector<detail::ScanAccumulator> accs(workers);
    for (PerNTally& t : tallies) t.n = n;

    std::atomic<std::uint64_t> next{lo};
    constexpr std::uint64_t kChunk = 1024;
    auto worker = [&](unsigned w) {
      while (true) {
        const std::uint64_t start = next.fetch_add(kChunk);
        if (start >= hi) break;
        const std::uint64_t end = std::min(start + kChunk, hi);
        for (std::uint64_t idx = start; idx < end; ++idx) {
          std::uint64_t code = idx;
          if (config.mode == ScanMode::random) {
            SplitMix64 stream = seeded_stream(config.seed, (std::uint64_t{n} << 48) + idx);
            code = stream.next_below(graph_count(n));
          }
          detail::process_graph(config, GraphEncoding{n, code}, tallies[w], accs[w]);
        }
      }
    };

    if (workers == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker, w);
      for (std::thread& t : pool) t.join();
    }

    PerNTally total;
    total.n = n;
    for (const PerNTally& t : tallies) total += t;
    report.per_n.push_back(total);
    for (detail::ScanAccumulator& a : accs) {
      std::move(a.counterexamples.begin(), a.counterexamples.end(),
                std::back_inserter(report.counterexamples));
      std::move(a.extremal.begin(), a.extremal.end(), std::back_inserter(report.extremal));
      std::move(a.matches.begin(), a.matches.end(), std::back_inserter(report.matches));
    }
  }

  detail::sort_report_lists(report);
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

// Exhaustive hunt for source-free digraphs whose minimum kernel exceeds
// floor(n/2); read the result off report.extremal.
inline SearchReport find_extremal_kernels(std::uint32_t n_lo, std::uint32_t n_hi,
                                          unsigned threads = 1) {
  ScanConfig config;
  config.n_lo = n_lo;
  config.n_hi = n_hi;
  config.mode = ScanMode::exhaustive;
  config.filters = {GraphFilter::source_free, GraphFilter::has_kernel};
  config.verification = true;
  return scan(config, threads);
}

// Combines the reports of all shards of one scan into the report the
// unsharded scan would have produced. Requires a complete, non-overlapping
// set of shards; the empty list merges to an empty report.
inline SearchReport merge_reports(const std::vector<SearchReport>& parts) {
  if (parts.empty()) return SearchReport{};

  const std::uint32_t total = parts.front().config.shard_total;
  std::vector<bool> seen(total, false);
  for (const SearchReport& part : parts) {
    if (!detail::same_scan_modulo_shard(part.config, parts.front().config))
      throw ShardConflictError("shard reports come from different scan configs");
    if (part.config.shard_total != total)
      throw ShardConflictError("shard reports disagree on the shard total");
    const std::uint32_t idx = part.config.shard_index;
    if (idx >= total || seen[idx])
      throw ShardConflictError("duplicate shard index " + std::to_string(idx));
    seen[idx] = true;
  }
  if (parts.size() != total)
    throw ShardConflictError("expected " + std::to_string(total) + " shards, got " +
                             std::to_string(parts.size()));

  SearchReport merged;
  merged.config = detail::normalized(parts.front().config);
  merged.config.shard_index = 0;
  merged.config.shard_total = 1;
  for (const SearchReport& part : parts) {
    if (part.per_n.size() != parts.front().per_n.size())
      throw ShardConflictError("shard reports disagree on the vertex-count range");
  }
  for (std::size_t i = 0; i < parts.front().per_n.size(); ++i) {
    PerNTally total_tally;
    total_tally.n = parts.front().per_n[i].n;
    for (const SearchReport& part : parts) {
      if (part.per_n[i].n != total_tally.n)
        throw ShardConflictError("shard reports disagree on the vertex-count range");
      total_tally += part.per_n[i];
    }
    merged.per_n.push_back(total_tally);
  }
  for (const SearchReport& part : parts) {
    merged.counterexamples.insert(merged.counterexamples.end(), part.counterexamples.begin(),
                                  part.counterexamples.end());
    merged.extremal.insert(merged.extremal.end(), part.extremal.begin(), part.extremal.end());
    merged.matches.insert(merged.matches.end(), part.matches.begin(), part.matches.end());
    merged.elapsed_seconds += part.elapsed_seconds;
  }
  detail::sort_report_lists(merged);
  return merged;
}

inline json report_to_json(const SearchReport& report, bool include_timing = false) {
  json j;
  json cfg;
  cfg["n_lo"] = report.config.n_lo;
  cfg["n_hi"] = report.config.n_hi;
  cfg["mode"] = to_string(report.config.mode);
  cfg["sample_count"] = report.config.sample_count;
  cfg["seed"] = report.config.seed;
  json filters = json::array();
  for (GraphFilter f : report.config.filters) filters.push_back(to_string(f));
  cfg["filters"] = std::move(filters);
  cfg["verification"] = report.config.verification;
  cfg["shard_index"] = report.config.shard_index;
  cfg["shard_total"] = report.config.shard_total;
  cfg["exhaustive_cap"] = report.config.exhaustive_cap;
  cfg["list_matches"] = report.config.list_matches;
  j["config"] = std::move(cfg);

  json per_n = json::array();
  for (const PerNTally& t : report.per_n) {
    json row;
    row["n"] = t.n;
    row["scanned"] = t.scanned;
    row["matched"] = t.matched;
    row["source_free"] = t.source_free;
    row["with_kernel"] = t.with_kernel;
    row["kernel_and_odd_cycle"] = t.kernel_and_odd_cycle;
    row["odd_cycle_free"] = t.odd_cycle_free;
    row["richardson_checked"] = t.richardson_checked;
    row["richardson_passes"] = t.richardson_passes;
    row["theorem_checked"] = t.theorem_checked;
    row["theorem_passes"] = t.theorem_passes;
    row["conjecture_checked"] = t.conjecture_checked;
    row["conjecture_passes"] = t.conjecture_passes;
    row["chvatal_checked"] = t.chvatal_checked;
    row["chvatal_passes"] = t.chvatal_passes;
    row["ordering_checked"] = t.ordering_checked;
    row["ordering_passes"] = t.ordering_passes;
    row["lemma1_checked"] = t.lemma1_checked;
    row["lemma1_passes"] = t.lemma1_passes;
    row["lemma2_checked"] = t.lemma2_checked;
    row["lemma2_passes"] = t.lemma2_passes;
    row["lemma3_checked"] = t.lemma3_checked;
    row["lemma3_passes"] = t.lemma3_passes;
    row["certificates_checked"] = t.certificates_checked;
    row["certificates_passes"] = t.certificates_passes;
    per_n.push_back(std::move(row));
  }
  j["per_n"] = std::move(per_n);

  json cx = json::array();
  for (const Counterexample& c : report.counterexamples) {
    json row;
    row["n"] = c.n;
    row["code"] = c.code;
    row["reason"] = c.reason;
    row["witness"] = c.witness;
    cx.push_back(std::move(row));
  }
  j["counterexamples"] = std::move(cx);

  json ex = json::array();
  for (const ExtremalEntry& e : report.extremal) {
    json row;
    row["n"] = e.n;
    row["code"] = e.code;
    row["min_kernel_size"] = e.min_kernel_size;
    row["min_quasi_kernel_size"] = e.min_quasi_kernel_size;
    ex.push_back(std::move(row));
  }
  j["extremal"] = std::move(ex);

  json matches = json::array();
  for (const GraphEncoding& enc : report.matches) {
    json row;
    row["n"] = enc.n;
    row["code"] = enc.code;
    matches.push_back(std::move(row));
  }
  j["matches"] = std::move(matches);

  if (include_timing) j["elapsed_seconds"] = report.elapsed_seconds;
  return j;
}

inline SearchReport report_from_json(const json& j) {
  if (!j.is_object() || !j.contains("config") || !j.contains("per_n"))
    throw ParseError("not a scan report document");
  SearchReport report;
  const json& cfg = j["config"];
  report.config.n_lo = cfg.at("n_lo").get<std::uint32_t>();
  report.config.n_hi = cfg.at("n_hi").get<std::uint32_t>();
  report.config.mode = scan_mode_from_string(cfg.at("mode").get<std::string>());
  report.config.sample_count = cfg.at("sample_count").get<std::uint64_t>();
  report.config.seed = cfg.at("seed").get<std::uint64_t>();
  for (const json& f : cfg.at("filters"))
    report.config.filters.push_back(graph_filter_from_string(f.get<std::string>()));
  report.config.verification = cfg.at("verification").get<bool>();
  report.config.shard_index = cfg.at("shard_index").get<std::uint32_t>();
  report.config.shard_total = cfg.at("shard_total").get<std::uint32_t>();
  report.config.exhaustive_cap = cfg.at("exhaustive_cap").get<std::uint32_t>();
  report.config.list_matches = cfg.at("list_matches").get<bool>();

  for (const json& row : j["per_n"]) {
    PerNTally t;
    t.n = row.at("n").get<std::uint32_t>();
    t.scanned = row.at("scanned").get<std::uint64_t>();
    t.matched = row.at("matched").get<std::uint64_t>();
    t.source_free = row.at("source_free").get<std::uint64_t>();
    t.with_kernel = row.at("with_kernel").get<std::uint64_t>();
    t.kernel_and_odd_cycle = row.at("kernel_and_odd_cycle").get<std::uint64_t>();
    t.odd_cycle_free = row.at("odd_cycle_free").get<std::uint64_t>();
    t.richardson_checked = row.at("richardson_checked").get<std::uint64_t>();
    t.richardson_passes = row.at("richardson_passes").get<std::uint64_t>();
    t.theorem_checked = row.at("theorem_checked").get<std::uint64_t>();
    t.theorem_passes = row.at("theorem_passes").get<std::uint64_t>();
    t.conjecture_checked = row.at("conjecture_checked").get<std::uint64_t>();
    t.conjecture_passes = row.at("conjecture_passes").get<std::uint64_t>();
    t.chvatal_checked = row.at("chvatal_checked").get<std::uint64_t>();
    t.chvatal_passes = row.at("chvatal_passes").get<std::uint64_t>();
    t.ordering_checked = row.at("ordering_checked").get<std::uint64_t>();
    t.ordering_passes = row.at("ordering_passes").get<std::uint64_t>();
    t.lemma1_checked = row.at("lemma1_checked").get<std::uint64_t>();
    t.lemma1_passes = row.at("lemma1_passes").get<std::uint64_t>();
    t.lemma2_checked = row.at("lemma2_checked").get<std::uint64_t>();
    t.lemma2_passes = row.at("lemma2_passes").get<std::uint64_t>();
    t.lemma3_checked = row.at("lemma3_checked").get<std::uint64_t>();
    t.lemma3_passes = row.at("lemma3_passes").get<std::uint64_t>();
    t.certificates_checked = row.at("certificates_checked").get<std::uint64_t>();
    t.certificates_passes = row.at("certificates_passes").get<std::uint64_t>();
    report.per_n.push_back(t);
  }
  for (const json& row : j["counterexamples"]) {
    Counterexample c;
    c.n = row.at("n").get<std::uint32_t>();
    c.code = row.at("code").get<std::uint64_t>();
    c.reason = row.at("reason").get<std::string>();
    c.witness = row.at("witness");
    report.counterexamples.push_back(std::move(c));
  }
  for (const json& row : j["extremal"]) {
    ExtremalEntry e;
    e.n = row.at("n").get<std::uint32_t>();
    e.code = row.at("code").get<std::uint64_t>();
    e.min_kernel_size = row.at("min_kernel_size").get<std::uint32_t>();
    e.min_quasi_kernel_size = row.at("min_quasi_kernel_size").get<std::uint32_t>();
    report.extremal.push_back(e);
  }
  for (const json& row : j["matches"])
    report.matches.push_back(
        {row.at("n").get<std::uint32_t>(), row.at("code").get<std::uint64_t>()});
  if (j.contains("elapsed_seconds"))
    report.elapsed_seconds = j["elapsed_seconds"].get<double>();
  return report;
}

// One row per vertex count, matching the per_n JSON fields.
inline std::string report_to_csv(const SearchReport& report) {
  std::ostringstream out;
  out << "n,scanned,matched,source_free,with_kernel,kernel_and_odd_cycle,odd_cycle_free,"
         "richardson_checked,richardson_passes,theorem_checked,theorem_passes,"
         "conjecture_checked,conjecture_passes,chvatal_checked,chvatal_passes,"
         "ordering_checked,ordering_passes,lemma1_checked,lemma1_passes,"
         "lemma2_checked,lemma2_passes,lemma3_checked,lemma3_passes,"
         "certificates_checked,certificates_passes\n";
  for (const PerNTally& t : report.per_n) {
    out << t.n << ',' << t.scanned << ',' << t.matched << ',' << t.source_free << ','
        << t.with_kernel << ',' << t.kernel_and_odd_cycle << ',' << t.odd_cycle_free << ','
        << t.richardson_checked << ',' << t.richardson_passes << ',' << t.theorem_checked
        << ',' << t.theorem_passes << ',' << t.conjecture_checked << ','
        << t.conjecture_passes << ',' << t.chvatal_checked << ',' << t.chvatal_passes << ','
        << t.ordering_checked << ',' << t.ordering_passes << ',' << t.lemma1_checked << ','
        << t.lemma1_passes << ',' << t.lemma2_checked << ',' << t.lemma2_passes << ','
        << t.lemma3_checked << ',' << t.lemma3_passes << ',' << t.certificates_checked << ','
        << t.certificates_passes << '\n';
  }
  return out.str();
}

// --- Checkpointed multi-shard runs ------------------------------------------
//
// A checkpoint file records completed shards, one per line: `index total
// config-hash` (hash in hex). Each completed shard's report lives next to it
// in `<checkpoint>.partI.json`. Re-running with the same config skips
// completed shards; any line from a different config aborts the run.

struct CheckpointEntry {
  std::uint32_t index = 0;
  std::uint32_t total = 0;
  std::uint64_t hash = 0;
};

inline std::string shard_part_path(const std::string& checkpoint_path, std::uint32_t index) {
  return checkpoint_path + ".part" + std::to_string(index) + ".json";
}

inline std::vector<CheckpointEntry> read_checkpoint(const std::string& path) {
  std::vector<CheckpointEntry> entries;
  std::ifstream in(path);
  if (!in) return entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    CheckpointEntry e;
    if (!(fields >> e.index >> e.total >> std::hex >> e.hash))
      throw ParseError(line_no, "malformed checkpoint line");
    entries.push_back(e);
  }
  return entries;
}

inline void append_checkpoint(const std::string& path, const CheckpointEntry& entry) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("cannot open checkpoint file " + path);
  out << entry.index << ' ' << entry.total << ' ' << std::hex << entry.hash << '\n';
}

// Splits the scan into shard_count shards, runs the ones the checkpoint does
// not already cover, and merges everything. With an empty checkpoint path this
// is just a sharded scan-and-merge in one process.
inline SearchReport run_search(const ScanConfig& base, std::uint32_t shard_count,
                               unsigned threads = 1, const std::string& checkpoint_path = "") {
  if (shard_count == 0) shard_count = 1;
  if (base.shard_total != 1 || base.shard_index != 0)
    throw ShardConflictError("checkpointed runs manage shards themselves; "
                             "pass an unsharded config");
  const std::uint64_t hash = config_hash(base);

  std::vector<bool> done(shard_count, false);
  if (!checkpoint_path.empty()) {
    for (const CheckpointEntry& e : read_checkpoint(checkpoint_path)) {
      if (e.total != shard_count || e.hash != hash)
        throw ShardConflictError("checkpoint file " + checkpoint_path +
                                 " belongs to a different scan");
      if (e.index >= shard_count)
        throw ShardConflictError("checkpoint shard index out of range");
      done[e.index] = true;
    }
  }

  std::vector<SearchReport> parts;
  parts.reserve(shard_count);
  for (std::uint32_t i = 0; i < shard_count; ++i) {
    ScanConfig shard = base;
    shard.shard_index = i;
    shard.shard_total = shard_count;
    if (!checkpoint_path.empty() && done[i]) {
      std::ifstream in(shard_part_path(checkpoint_path, i));
      if (!in)
        throw ShardConflictError("checkpoint lists shard " + std::to_string(i) +
                                 " but its report file is missing");
      json j = json::parse(in, nullptr, true);
      SearchReport part = report_from_json(j);
      if (!detail::same_scan_modulo_shard(part.config, shard) ||
          part.config.shard_index != i || part.config.shard_total != shard_count)
        throw ShardConflictError("shard report " + shard_part_path(checkpoint_path, i) +
                                 " does not match the requested scan");
      parts.push_back(std::move(part));
      continue;
    }
    SearchReport part = scan(shard, threads);
    if (!checkpoint_path.empty()) {
      std::ofstream out(shard_part_path(checkpoint_path, i));
      if (!out)
        throw Error("cannot write shard report " + shard_part_path(checkpoint_path, i));
      out << report_to_json(part).dump(2) << '\n';
      out.flush();
      append_checkpoint(checkpoint_path, {i, shard_count, hash});
    }
    parts.push_back(std::move(part));
  }
  return merge_reports(parts);
}

}  // namespace qk
