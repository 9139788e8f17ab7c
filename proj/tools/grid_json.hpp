#pragma once

// JSON forms of grids, signatures and verdict witnesses for the CLI.
//
// Grid document:
//   {"bipartite": bool,
//    "vertices": [{"side": "L"|"R"|"none", "sig": "<literal>"} | {"side": .., "slot": "<id>"}],
//    "edges": [[v, p, w, q], ...],
//    "dangling": [[v, p], ...]}

#include <json.hpp>
#include <string>
#include <variant>

#include "holant/classify.hpp"

namespace holant::cli {

using nlohmann::json;

inline Side parse_side(const std::string& s) {
  if (s == "L") return Side::L;
  if (s == "R") return Side::R;
  if (s == "none" || s.empty()) return Side::None;
  throw ParseError("unknown side '" + s + "'");
}

inline std::string side_name(Side s) {
  switch (s) {
    case Side::L:
      return "L";
    case Side::R:
      return "R";
    default:
      return "none";
  }
}

inline std::string sig_text(const GenSig& f) {
  if (auto s = tensor_to_sym(f)) return render(*s);
  return render(f);
}

inline SignatureGrid grid_from_json(const json& j) {
  try {
    SignatureGrid g;
    g.bipartite = j.value("bipartite", false);
    for (const auto& v : j.at("vertices")) {
      Side side = parse_side(v.value("side", std::string("none")));
      if (v.contains("slot")) {
        g.add_slot(v.at("slot").get<std::string>(), side);
        continue;
      }
      auto sig = parse_signature(v.at("sig").get<std::string>());
      if (auto* s = std::get_if<SymSig>(&sig))
        g.add_vertex(*s, side);
      else
        g.add_vertex(std::get<GenSig>(sig), side);
    }
    if (j.contains("edges"))
      for (const auto& e : j.at("edges")) {
        if (e.size() != 4) throw ParseError("an edge is [v, p, w, q]");
        g.connect(e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int>());
      }
    if (j.contains("dangling"))
      for (const auto& d : j.at("dangling")) {
        if (d.size() < 2) throw ParseError("a dangling edge is [v, p]");
        int v = d[0].get<int>();
        if (v < 0 || v >= static_cast<int>(g.vertices.size())) throw ParseError("dangling edge on a missing vertex");
        g.dangle(v, d[1].get<int>());
      }
    return g;
  } catch (const json::exception& e) {
    throw ParseError(std::string("grid document: ") + e.what());
  }
}

inline json grid_to_json(const SignatureGrid& g) {
  json j;
  j["bipartite"] = g.bipartite;
  j["vertices"] = json::array();
  for (const auto& v : g.vertices) {
    json x{{"side", side_name(v.side)}};
    if (!v.slot.empty())
      x["slot"] = v.slot;
    else
      x["sig"] = sig_text(v.sig);
    j["vertices"].push_back(x);
  }
  j["edges"] = json::array();
  for (const auto& e : g.edges) j["edges"].push_back({e.a.v, e.a.p, e.b.v, e.b.p});
  j["dangling"] = json::array();
  for (const auto& d : g.dangling) j["dangling"].push_back({d.at.v, d.at.p});
  return j;
}

inline json vec_json(const Vec2& v) { return json::array({render(v[0]), render(v[1])}); }

inline json witness_json(const Witness& w) {
  if (const auto* T = std::get_if<Transform2>(&w)) return {{"type", "transform"}, {"matrix", render(*T)}};
  if (const auto* p = std::get_if<SharedPair>(&w)) {
    if (p->case3) return {{"type", "shared-pair"}, {"case3", true}};
    return {{"type", "shared-pair"}, {"case3", false}, {"a", render(p->a)}, {"b", render(p->b)}};
  }
  if (const auto* f = std::get_if<F123Witness>(&w))
    return {{"type", "F123"}, {"family", static_cast<int>(f->family)}, {"lambda", render(f->lambda)}, {"r", f->r}};
  if (const auto* r = std::get_if<Rank2>(&w))
    return {{"type", "rank2"}, {"c1", render(r->c1)}, {"u", vec_json(r->u)}, {"c2", render(r->c2)}, {"v", vec_json(r->v)}};
  return nullptr;
}

inline json verdict_json(const Verdict& v) {
  return {{"outcome", v.tractable() ? "tractable" : "hard"}, {"case", v.case_tag}, {"witness", witness_json(v.witness)}};
}

inline json scalar_approx(const FloatScalar& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace holant::cli
