// Command-line front end. Every subcommand is a thin wrapper over the library;
// outputs are the library's values, printed plainly or as JSON with --json.
//
// Exit codes: 0 success / property holds; 1 property fails or a proof
// obligation was violated; 2 usage or parse error; 3 resource cap exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qk/cycles.hpp"
#include "qk/digraph.hpp"
#include "qk/domination.hpp"
#include "qk/encoding.hpp"
#include "qk/errors.hpp"
#include "qk/explorer.hpp"
#include "qk/generate.hpp"
#include "qk/io.hpp"
#include "qk/json_io.hpp"
#include "qk/solvers.hpp"
#include "qk/vertex_set.hpp"

namespace {

using qk::json;
using qk::Vertex;
using qk::VertexSet;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw qk::Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw qk::Error("cannot write " + path);
  out << content;
}

qk::Digraph load_graph(const std::string& path) {
  return qk::parse_edge_list(read_input(path));
}

std::vector<Vertex> parse_vertex_list(const std::string& text) {
  std::vector<Vertex> result;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw qk::ParseError("empty entry in vertex list \"" + text + "\"");
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      throw qk::ParseError("\"" + item + "\" is not a vertex id");
    }
    if (pos != item.size()) throw qk::ParseError("\"" + item + "\" is not a vertex id");
    result.push_back(static_cast<Vertex>(v));
  }
  return result;
}

VertexSet to_set(const qk::Digraph& g, const std::vector<Vertex>& vertices) {
  VertexSet s(g.order());
  for (Vertex v : vertices) s.insert(v);  // throws on out-of-range ids
  return s;
}

std::string set_text(const VertexSet& s) { return s.to_string(); }

struct GlobalFlags {
  bool json_out = false;
  unsigned threads = 1;
  bool verify = false;  // turns per-step shrink verification on in the fast paths
};

// ---- check ------------------------------------------------------------------

int cmd_check(const std::string& file, const std::string& property,
              const std::string& set_text_arg, const GlobalFlags& flags) {
  qk::Digraph g = load_graph(file);
  bool result = false;
  std::string witness_text;
  json witness;

  auto arc_witness = [&](const qk::Arc& a) {
    witness_text = "arc " + std::to_string(a.first) + " -> " + std::to_string(a.second) +
                   " joins two members";
    witness = json{{"kind", "independence_arc"}, {"tail", a.first}, {"head", a.second}};
  };

  if (property == "source-free") {
    auto src = g.source_vertex();
    result = !src.has_value();
    if (!result) {
      witness_text = "vertex " + std::to_string(*src) + " has no in-neighbor";
      witness = json{{"kind", "source"}, {"vertex", *src}};
    }
  } else {
    VertexSet s = to_set(g, parse_vertex_list(set_text_arg));
    if (property == "independent") {
      auto arc = qk::independence_violation(g, s);
      result = !arc.has_value();
      if (arc) arc_witness(*arc);
    } else if (property == "kernel") {
      if (auto arc = qk::independence_violation(g, s)) {
        arc_witness(*arc);
      } else if (auto v = qk::undominated_vertex(g, s)) {
        witness_text = "vertex " + std::to_string(*v) + " not dominated";
        witness = json{{"kind", "undominated"}, {"vertex", *v}};
      } else {
        result = true;
      }
    } else if (property == "quasi-kernel") {
      if (auto arc = qk::independence_violation(g, s)) {
        arc_witness(*arc);
      } else if (auto v = qk::uncovered_vertex(g, s)) {
        witness_text = "vertex " + std::to_string(*v) + " not covered within two steps";
        witness = json{{"kind", "uncovered"}, {"vertex", *v}};
      } else {
        result = true;
      }
    } else if (property == "inward-dominated") {
      auto pair = qk::inward_domination_violation(g, s);
      result = !pair.has_value();
      if (pair) {
        witness_text = "in-neighbor " + std::to_string(pair->first) + " of member " +
                       std::to_string(pair->second) + " is not reached by the set";
        witness = json{{"kind", "inward"},
                       {"in_neighbor", pair->first},
                       {"member", pair->second}};
      }
    } else {
      throw qk::ParseError("unknown property \"" + property + "\"");
    }
  }

  if (flags.json_out) {
    json out;
    out["property"] = property;
    out["result"] = result;
    if (!result) out["witness"] = witness;
    std::cout << out.dump() << '\n';
  } else if (result) {
    std::cout << "true\n";
  } else {
    std::cout << "false: " << witness_text << '\n';
  }
  return result ? 0 : 1;
}

// ---- solve ------------------------------------------------------------------

int cmd_solve(const std::string& file, const std::string& what, const std::string& dot_path,
              const GlobalFlags& flags) {
  qk::Digraph g = load_graph(file);
  std::optional<VertexSet> result;
  bool found = true;
  if (what == "kernel") {
    result = qk::find_kernel(g);
    found = result.has_value();
  } else if (what == "min-qk") {
    result = qk::min_quasi_kernel(g);
  } else if (what == "qk-chvatal") {
    result = qk::chvatal_quasi_kernel(g);
  } else {
    throw qk::ParseError("unknown solve target \"" + what + "\"");
  }

  if (!dot_path.empty()) {
    const VertexSet* highlight = result ? &*result : nullptr;
    write_output(dot_path, qk::to_dot(g, highlight));
  }

  if (flags.json_out) {
    json out;
    out["what"] = what;
    out["found"] = found;
    out["set"] = result ? qk::detail::set_to_json(*result) : json(nullptr);
    std::cout << out.dump() << '\n';
  } else if (found) {
    std::cout << set_text(*result) << '\n';
  } else {
    std::cout << "none\n";
  }
  return found ? 0 : 1;
}

// ---- shrink -----------------------------------------------------------------

int cmd_shrink(const std::string& file, const std::string& kernel_arg,
               const std::string& trace_out, const GlobalFlags& flags) {
  qk::Digraph g = load_graph(file);
  VertexSet kernel(g.order());
  if (!kernel_arg.empty()) {
    kernel = to_set(g, parse_vertex_list(kernel_arg));
  } else {
    auto found = qk::find_kernel(g);
    if (!found) {
      std::cerr << "precondition failed: no kernel exists\n";
      return 1;
    }
    kernel = *found;
  }

  qk::ShrinkCertificate cert = qk::shrink_kernel(g, kernel, qk::ShrinkOptions{flags.verify});
  if (!trace_out.empty()) write_output(trace_out, qk::certificate_to_json(cert).dump(2) + "\n");

  if (flags.json_out) {
    std::cout << qk::certificate_to_json(cert).dump() << '\n';
  } else {
    std::cout << set_text(cert.final_set) << " (size " << cert.final_set.size() << " ≤ "
              << g.order() / 2 << ")\n";
  }
  return 0;
}

// ---- gen --------------------------------------------------------------------

int cmd_gen(const std::string& kind_arg, std::uint32_t n, std::uint64_t seed, double arc_prob,
            const std::string& out_path, const std::string& dot_path,
            const GlobalFlags& flags) {
  qk::GraphKind kind;
  if (kind_arg == "cycle") {
    kind = qk::GraphKind::cycle;
  } else if (kind_arg == "tournament") {
    kind = qk::GraphKind::tournament;
  } else if (kind_arg == "random-source-free") {
    kind = qk::GraphKind::random_source_free;
  } else if (kind_arg == "path-of-2cycles") {
    kind = qk::GraphKind::path_of_2cycles;
  } else {
    throw qk::ParseError("unknown generator kind \"" + kind_arg + "\"");
  }

  qk::Digraph g = qk::generate(kind, n, seed, arc_prob);
  if (!dot_path.empty()) write_output(dot_path, qk::to_dot(g));

  if (flags.json_out) {
    json out;
    out["kind"] = kind_arg;
    out["n"] = g.order();
    json arcs = json::array();
    for (const qk::Arc& a : g.arcs()) arcs.push_back(json::array({a.first, a.second}));
    out["arcs"] = std::move(arcs);
    std::string text = out.dump() + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      write_output(out_path, text);
    }
  } else {
    std::string text = qk::serialize_edge_list(g);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      write_output(out_path, text);
    }
  }
  return 0;
}

// ---- verify-cert ------------------------------------------------------------

int cmd_verify_cert(const std::string& graph_file, const std::string& cert_file,
                    const GlobalFlags& flags) {
  qk::Digraph g = load_graph(graph_file);
  json doc = json::parse(read_input(cert_file));
  qk::ShrinkCertificate cert = qk::certificate_from_json(doc);
  qk::VerificationReport report = qk::verify_certificate(g, cert);

  if (flags.json_out) {
    json out;
    out["ok"] = report.ok;
    if (!report.ok) {
      out["failed_check"] = report.failed_check;
      out["detail"] = report.detail;
    }
    std::cout << out.dump() << '\n';
  } else if (report.ok) {
    std::cout << "ok\n";
  } else {
    std::cout << "mismatch: " << report.failed_check << '\n';
  }
  return report.ok ? 0 : 1;
}

// ---- search -----------------------------------------------------------------

std::pair<std::uint32_t, std::uint32_t> parse_n_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      std::size_t pos = 0;
      unsigned long n = std::stoul(text, &pos);
      if (pos != text.size()) throw qk::ParseError("");
      return {static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n)};
    }
    std::size_t pos_lo = 0, pos_hi = 0;
    const std::string lo_text = text.substr(0, dots);
    const std::string hi_text = text.substr(dots + 2);
    unsigned long lo = std::stoul(lo_text, &pos_lo);
    unsigned long hi = std::stoul(hi_text, &pos_hi);
    if (pos_lo != lo_text.size() || pos_hi != hi_text.size()) throw qk::ParseError("");
    return {static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi)};
  } catch (const std::exception&) {
    throw qk::ParseError("\"" + text + "\" is not a vertex-count range (use LO..HI or N)");
  }
}

void print_search_summary(const qk::SearchReport& report) {
  for (const qk::PerNTally& t : report.per_n) {
    std::cout << "n=" << t.n << " scanned=" << t.scanned << " matched=" << t.matched
              << " source-free=" << t.source_free << " with-kernel=" << t.with_kernel
              << " theorem=" << t.theorem_passes << "/" << t.theorem_checked
              << " conjecture=" << t.conjecture_passes << "/" << t.conjecture_checked
              << "\n";
  }
  std::size_t theorem_violations = 0;
  for (const qk::Counterexample& c : report.counterexamples) {
    if (c.reason != "conjecture") ++theorem_violations;
  }
  std::cout << "counterexamples: " << report.counterexamples.size()
            << " (proof-obligation violations: " << theorem_violations
            << "), extremal: " << report.extremal.size() << "\n";
}

int cmd_search(const qk::ScanConfig& config, std::uint32_t shards,
               const std::string& checkpoint, const std::string& report_path,
               const std::string& csv_path, const std::vector<std::string>& merge_files,
               const GlobalFlags& flags) {
  qk::SearchReport report;
  if (!merge_files.empty()) {
    std::vector<qk::SearchReport> parts;
    parts.reserve(merge_files.size());
    for (const std::string& path : merge_files)
      parts.push_back(qk::report_from_json(json::parse(read_input(path))));
    report = qk::merge_reports(parts);
  } else if (shards > 1 || !checkpoint.empty()) {
    report = qk::run_search(config, shards, flags.threads, checkpoint);
  } else {
    report = qk::scan(config, flags.threads);
  }

  if (!report_path.empty())
    write_output(report_path, qk::report_to_json(report).dump(2) + "\n");
  if (!csv_path.empty()) write_output(csv_path, qk::report_to_csv(report));

  if (flags.json_out) {
    std::cout << qk::report_to_json(report).dump() << '\n';
  } else {
    print_search_summary(report);
    std::cerr << "elapsed: " << report.elapsed_seconds << "s\n";
  }
  return report.theorem_violation() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalFlags flags;
  CLI::App app{"kernel and quasi-kernel toolbox for small digraphs"};
  app.require_subcommand(1);
  app.add_flag("--json", flags.json_out, "machine-readable JSON on stdout");
  app.add_option("--threads", flags.threads, "worker threads for search")
      ->default_val(1)
      ->check(CLI::Range(1u, 1024u));
  app.add_flag("--verify", flags.verify,
               "re-check every shrink step (search verifies by default)");

  std::string file, property, set_arg, what, kernel_arg, trace_out, dot_path;
  std::string gen_kind, out_path, n_range_text, mode_text = "exhaustive", filters_text;
  std::string shard_text, checkpoint, report_path, csv_path;
  std::vector<std::string> merge_files;
  std::uint32_t gen_n = 0, shards = 1;
  std::uint64_t seed = 0, samples = 1000;
  double arc_prob = 0.5;
  bool allow_n6 = false, list_matches = false, no_verify = false;

  CLI::App* check = app.add_subcommand("check", "test a property of a vertex set");
  check->add_option("file", file, "edge-list file, or - for stdin")->required();
  check->add_option("--property", property,
                    "independent|kernel|quasi-kernel|inward-dominated|source-free")
      ->required();
  check->add_option("--set", set_arg, "comma-separated vertex ids");

  CLI::App* solve = app.add_subcommand("solve", "compute a kernel or quasi-kernel");
  solve->add_option("file", file, "edge-list file, or - for stdin")->required();
  solve->add_option("what", what, "kernel|min-qk|qk-chvatal")->required();
  solve->add_option("--dot", dot_path, "write DOT with the result highlighted");

  CLI::App* shrink = app.add_subcommand("shrink", "shrink a kernel to a half-size quasi-kernel");
  shrink->add_option("file", file, "edge-list file, or - for stdin")->required();
  shrink->add_option("--kernel", kernel_arg, "starting kernel (default: minimum kernel)");
  shrink->add_option("--trace-out", trace_out, "write the certificate JSON here");

  CLI::App* search = app.add_subcommand("search", "scan digraph space and verify the bounds");
  search->add_option("--n", n_range_text, "vertex-count range, LO..HI or N")->required();
  search->add_option("--mode", mode_text, "exhaustive|random")->default_val("exhaustive");
  search->add_option("--samples", samples, "random mode: graphs per vertex count")
      ->default_val(1000);
  search->add_option("--seed", seed, "random mode: stream seed")->default_val(0);
  search->add_option("--filters", filters_text,
                     "comma-separated: source-free,has-kernel,kernel-free,odd-cycle-free,"
                     "has-odd-cycle");
  search->add_flag("--list-matches", list_matches, "record every matching encoding");
  search->add_flag("--allow-n6", allow_n6, "raise the exhaustive cap to n=6 (~1.1e9 graphs)");
  search->add_flag("--no-verify", no_verify, "skip the per-kernel property suite");
  search->add_option("--shard", shard_text, "process shard I/T of the scan (e.g. 0/4)");
  search->add_option("--shards", shards, "split into this many shards and merge")
      ->default_val(1);
  search->add_option("--checkpoint", checkpoint, "resumable progress file");
  search->add_option("--report", report_path, "write the JSON report here");
  search->add_option("--csv", csv_path, "write the per-n CSV summary here");
  search->add_option("--merge", merge_files, "merge existing shard reports instead of scanning")
      ->expected(-1);
  search->get_option("--shard")->excludes(search->get_option("--shards"));
  search->get_option("--shard")->excludes(search->get_option("--checkpoint"));

  CLI::App* gen = app.add_subcommand("gen", "generate a digraph");
  gen->add_option("kind", gen_kind, "cycle|tournament|random-source-free|path-of-2cycles")
      ->required();
  gen->add_option("n", gen_n, "vertex count")->required();
  gen->add_option("-o,--out", out_path, "output file (default stdout)");
  gen->add_option("--seed", seed, "seed for random kinds")->default_val(0);
  gen->add_option("--arc-prob", arc_prob, "arc probability for random-source-free")
      ->default_val(0.5);
  gen->add_option("--dot", dot_path, "also write DOT here");

  CLI::App* verify_cert = app.add_subcommand("verify-cert", "re-check a shrink certificate");
  verify_cert->add_option("graph", file, "edge-list file, or - for stdin")->required();
  verify_cert->add_option("cert", trace_out, "certificate JSON file, or - for stdin")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(check)) return cmd_check(file, property, set_arg, flags);
    if (app.got_subcommand(solve)) return cmd_solve(file, what, dot_path, flags);
    if (app.got_subcommand(shrink)) return cmd_shrink(file, kernel_arg, trace_out, flags);
    if (app.got_subcommand(gen))
      return cmd_gen(gen_kind, gen_n, seed, arc_prob, out_path, dot_path, flags);
    if (app.got_subcommand(verify_cert)) return cmd_verify_cert(file, trace_out, flags);
    if (app.got_subcommand(search)) {
      qk::ScanConfig config;
      const auto [lo, hi] = parse_n_range(n_range_text);
      config.n_lo = lo;
      config.n_hi = hi;
      config.mode = qk::scan_mode_from_string(mode_text);
      config.sample_count = config.mode == qk::ScanMode::random ? samples : 0;
      config.seed = config.mode == qk::ScanMode::random ? seed : 0;
      if (!filters_text.empty()) {
        std::istringstream in(filters_text);
        std::string name;
        while (std::getline(in, name, ','))
          config.filters.push_back(qk::graph_filter_from_string(name));
      }
      config.verification = !no_verify;
      config.exhaustive_cap = allow_n6 ? 6 : 5;
      config.list_matches = list_matches;
      if (!shard_text.empty()) {
        const auto slash = shard_text.find('/');
        if (slash == std::string::npos)
          throw qk::ParseError("--shard expects I/T, e.g. 0/4");
        try {
          config.shard_index = static_cast<std::uint32_t>(std::stoul(shard_text.substr(0, slash)));
          config.shard_total = static_cast<std::uint32_t>(std::stoul(shard_text.substr(slash + 1)));
        } catch (const std::exception&) {
          throw qk::ParseError("--shard expects I/T, e.g. 0/4");
        }
      }
      return cmd_search(config, shards, checkpoint, report_path, csv_path, merge_files, flags);
    }
  } catch (const qk::CapExceededError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const qk::PreconditionError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const qk::InvariantViolationError& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 1;
  } catch (const qk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
