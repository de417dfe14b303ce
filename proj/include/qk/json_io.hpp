#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "qk/digraph.hpp"
#include "qk/errors.hpp"
#include "qk/solvers.hpp"
#include "qk/vertex_set.hpp"

// JSON (de)serialization for certificates. Field order is part of the format,
// hence ordered_json throughout.

namespace qk {

using json = nlohmann::ordered_json;

namespace detail {

inline json set_to_json(const VertexSet& s) {
  json a = json::array();
  for (Vertex v : s) a.push_back(v);
  return a;
}

inline VertexSet set_from_json(const json& a, std::uint32_t universe) {
  if (!a.is_array()) throw ParseError("expected an array of vertex ids");
  VertexSet s(universe);
  for (const json& item : a) {
    if (!item.is_number_unsigned())
      throw ParseError("vertex ids must be unsigned integers");
    std::uint64_t v = item.get<std::uint64_t>();
    if (v >= universe)
      throw ParseError("vertex id " + std::to_string(v) + " is outside the universe");
    s.insert(static_cast<Vertex>(v));
  }
  return s;
}

inline std::uint32_t order_from_json(const json& j) {
  if (!j.contains("n") || !j["n"].is_number_unsigned())
    throw ParseError("missing or malformed \"n\" field");
  return j["n"].get<std::uint32_t>();
}

}  // namespace detail

inline json certificate_to_json(const ShrinkCertificate& cert) {
  json j;
  j["n"] = cert.n;
  json arcs = json::array();
  for (const Arc& a : cert.arcs) arcs.push_back(json::array({a.first, a.second}));
  j["arcs"] = std::move(arcs);
  j["initial_kernel"] = detail::set_to_json(cert.initial_kernel);
  json removals = json::array();
  for (const RemovalStep& step : cert.removals) {
    json r;
    r["vertex"] = step.vertex;
    r["s_set"] = detail::set_to_json(step.s_set);
    removals.push_back(std::move(r));
  }
  j["removals"] = std::move(removals);
  j["final"] = detail::set_to_json(cert.final_set);
  json witness = json::object();
  for (const auto& [u, v] : cert.witness) witness[std::to_string(u)] = v;
  j["witness"] = std::move(witness);
  json verdicts;
  verdicts["independent"] = cert.verdicts.independent;
  verdicts["quasi_kernel"] = cert.verdicts.quasi_kernel;
  verdicts["inward_dominated"] = cert.verdicts.inward_dominated;
  verdicts["size_bound"] = cert.verdicts.size_bound;
  j["verdicts"] = std::move(verdicts);
  return j;
}

inline ShrinkCertificate certificate_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("certificate must be a JSON object");
  ShrinkCertificate cert;
  cert.n = detail::order_from_json(j);
  if (!j.contains("arcs") || !j["arcs"].is_array())
    throw ParseError("missing or malformed \"arcs\" field");
  for (const json& a : j["arcs"]) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number_unsigned() ||
        !a[1].is_number_unsigned())
      throw ParseError("each arc must be a [tail, head] pair of unsigned integers");
    cert.arcs.emplace_back(a[0].get<Vertex>(), a[1].get<Vertex>());
  }
  if (!j.contains("initial_kernel"))
    throw ParseError("missing \"initial_kernel\" field");
  cert.initial_kernel = detail::set_from_json(j["initial_kernel"], cert.n);
  if (!j.contains("removals") || !j["removals"].is_array())
    throw ParseError("missing or malformed \"removals\" field");
  for (const json& r : j["removals"]) {
    if (!r.is_object() || !r.contains("vertex") || !r["vertex"].is_number_unsigned() ||
        !r.contains("s_set"))
      throw ParseError("each removal must carry \"vertex\" and \"s_set\"");
    RemovalStep step;
    step.vertex = r["vertex"].get<Vertex>();
    step.s_set = detail::set_from_json(r["s_set"], cert.n);
    cert.removals.push_back(std::move(step));
  }
  if (!j.contains("final")) throw ParseError("missing \"final\" field");
  cert.final_set = detail::set_from_json(j["final"], cert.n);
  if (!j.contains("witness") || !j["witness"].is_object())
    throw ParseError("missing or malformed \"witness\" field");
  for (const auto& [key, value] : j["witness"].items()) {
    std::size_t pos = 0;
    unsigned long u = 0;
    try {
      u = std::stoul(key, &pos);
    } catch (const std::exception&) {
      throw ParseError("witness key \"" + key + "\" is not a vertex id");
    }
    if (pos != key.size() || u >= cert.n)
      throw ParseError("witness key \"" + key + "\" is not a vertex id in range");
    if (!value.is_number_unsigned() || value.get<std::uint64_t>() >= cert.n)
      throw ParseError("witness value for key \"" + key + "\" is not a vertex id in range");
    cert.witness[static_cast<Vertex>(u)] = value.get<Vertex>();
  }
  if (!j.contains("verdicts") || !j["verdicts"].is_object())
    throw ParseError("missing or malformed \"verdicts\" field");
  const json& verdicts = j["verdicts"];
  for (const char* field : {"independent", "quasi_kernel", "inward_dominated", "size_bound"}) {
    if (!verdicts.contains(field) || !verdicts[field].is_boolean())
      throw ParseError(std::string("missing or malformed verdict \"") + field + "\"");
  }
  cert.verdicts.independent = verdicts["independent"].get<bool>();
  cert.verdicts.quasi_kernel = verdicts["quasi_kernel"].get<bool>();
  cert.verdicts.inward_dominated = verdicts["inward_dominated"].get<bool>();
  cert.verdicts.size_bound = verdicts["size_bound"].get<bool>();
  return cert;
}

// The graph a certificate talks about, rebuilt from its own arc list.
inline Digraph certificate_graph(const ShrinkCertificate& cert) {
  return Digraph::build(cert.n, cert.arcs);
}

}  // namespace qk
