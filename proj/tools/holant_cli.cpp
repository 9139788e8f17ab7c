// holant_cli: classify signature sets, evaluate grids, build and search
// gadgets, transform grids and interpolate. One JSON document on stdout.
//
// Exit codes: 0 ok, 2 parse error, 3 precondition or capability, 4 guard.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "grid_json.hpp"

using namespace holant;
using namespace holant::cli;

namespace {

// Splits "[1,0,1];[0,1]" or "[1,0,1] [0,1]" at separators outside brackets.
std::vector<std::string> split_top(const std::string& text, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '[' || ch == '(') ++depth;
    if (ch == ']' || ch == ')') --depth;
    if (depth == 0 && seps.find(ch) != std::string::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += ch;
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<SymSig> parse_sym_list(const std::vector<std::string>& args) {
  std::vector<SymSig> out;
  for (const auto& a : args)
    for (const auto& lit : split_top(a, ",; \t\n")) out.push_back(parse_symsig(lit));
  return out;
}

std::vector<GenSig> parse_gen_list(const std::vector<std::string>& args) {
  std::vector<GenSig> out;
  for (const auto& a : args)
    for (const auto& lit : split_top(a, ",; \t\n")) {
      auto s = parse_signature(lit);
      if (auto* f = std::get_if<SymSig>(&s))
        out.push_back(sym_to_tensor(*f));
      else
        out.push_back(std::get<GenSig>(s));
    }
  return out;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::vector<std::string> json_strings(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  try {
    for (const auto& s : j.at(key)) out.push_back(s.get<std::string>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("'") + key + "': " + e.what());
  }
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

struct ClassifyOpts {
  std::string kind;
  std::vector<std::string> sigs, g1, g2;
  std::string file, unary;
  bool eq3 = false, explain = false;
};

void run_classify(const ClassifyOpts& o) {
  std::vector<std::string> sig_args = o.sigs, g1 = o.g1, g2 = o.g2;
  std::string unary = o.unary;
  if (!o.file.empty()) {
    json j = read_json(o.file);
    for (auto& s : json_strings(j, "sigs")) sig_args.push_back(s);
    for (auto& s : json_strings(j, "G1")) g1.push_back(s);
    for (auto& s : json_strings(j, "G2")) g2.push_back(s);
    if (j.contains("y")) sig_args.insert(sig_args.begin(), j.at("y").get<std::string>());
    if (j.contains("u")) unary = j.at("u").get<std::string>();
  }
  Verdict v;
  json extra;
  if (o.kind == "ternary") {
    auto F = parse_sym_list(sig_args);
    if (F.size() != 1) throw PreconditionError("ternary takes exactly one signature");
    v = classify_ternary(F[0]);
  } else if (o.kind == "csp") {
    v = classify_csp(parse_gen_list(sig_args));
  } else if (o.kind == "holantstar") {
    v = classify_holant_star(parse_sym_list(sig_args));
  } else if (o.kind == "holantc") {
    auto F = parse_sym_list(sig_args);
    v = classify_holant_c(F);
    if (o.explain) extra["explain"] = explain_holant_c(F);
  } else {  // bipartite
    auto F = parse_sym_list(sig_args);
    bool eq3 = o.eq3 || !g1.empty() || !g2.empty() || !unary.empty();
    if (!eq3) {
      if (F.size() != 2) throw PreconditionError("bipartite takes [y0,y1,y2] and [x0,x1,x2,x3]");
      v = classify_ternary_bipartite(F[0], F[1]);
    } else {
      if (F.size() != 1) throw PreconditionError("bipartite --eq3 takes exactly one binary y");
      std::optional<SymSig> u;
      if (!unary.empty()) u = parse_symsig(unary);
      v = classify_bipartite_eq3(F[0], parse_gen_list(g1), parse_gen_list(g2), u);
    }
  }
  json out = verdict_json(v);
  if (!extra.is_null()) out.update(extra);
  emit(out);
}

struct EvalOpts {
  std::string file, method = "auto", backend = "exact";
  bool approx = false;
};

void run_eval(const EvalOpts& o) {
  SignatureGrid g = grid_from_json(read_json(o.file));
  if (o.backend == "float") {
    if (o.method != "brute" && o.method != "auto")
      throw PreconditionError("the float backend supports --method brute or auto only");
    emit({{"value", scalar_approx(holant_brute_float(g))}, {"route", "brute"}, {"backend", "float"}});
    return;
  }
  Scalar value;
  std::string route = o.method;
  if (o.method == "auto") {
    auto r = eval_auto(g);
    value = r.value;
    route = route_name(r.route);
  } else if (o.method == "brute") {
    value = holant_brute(g);
  } else if (o.method == "arity2") {
    value = eval_arity2(g);
  } else if (o.method == "vanishing") {
    std::vector<SymSig> F;
    for (const auto& v : g.vertices) {
      auto s = tensor_to_sym(v.sig);
      if (!s) throw PreconditionError("vanishing route needs symmetric signatures");
      F.push_back(*s);
    }
    auto p = find_shared_pair(F);
    if (!p) throw PreconditionError("no shared recurrence pair certifies this grid");
    value = eval_vanishing(g, *p);
  } else if (o.method == "affine") {
    value = eval_affine(to_network(g));
  } else {
    value = eval_product(to_network(g));
  }
  json out{{"value", render(value)}, {"route", route}};
  if (o.approx) out["approx"] = scalar_approx(value.approx());
  emit(out);
}

Params parse_params(const std::vector<std::string>& kv) {
  Params p;
  for (const auto& s : kv) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("parameter '" + s + "' is not k=v");
    p[s.substr(0, eq)] = parse_scalar(s.substr(eq + 1));
  }
  return p;
}

json gadget_json(const SignatureGrid& g) {
  auto gs = gadget_signature(g);
  return {{"signature", gs.symmetric ? render(*gs.symmetric) : render(gs.sig)}, {"grid", grid_to_json(g)}};
}

// Bracketed literals must reach us whole; CLI11 would split "[a,b]" otherwise.
void literal_list(CLI::Option* o) { o->expected(1, 1 << 20)->allow_extra_args(false); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Holant / #CSP toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  int max_edges_opt = max_edges();
  unsigned max_order_opt = max_order();
  app.add_option("--max-edges", max_edges_opt, "brute-force edge guard");
  app.add_option("--max-order", max_order_opt, "largest cyclotomic order");

  ClassifyOpts co;
  std::string classify_backend = "exact";
  auto* cls = app.add_subcommand("classify", "classify a signature set");
  cls->add_option("kind", co.kind, "ternary|csp|holantstar|holantc|bipartite")
      ->required()
      ->check(CLI::IsMember({"ternary", "csp", "holantstar", "holantc", "bipartite"}));
  literal_list(cls->add_option("--sigs", co.sigs, "signature literals"));
  cls->add_option("--file", co.file, "JSON file with \"sigs\" (and y, G1, G2, u for bipartite)");
  literal_list(cls->add_option("--g1", co.g1, "bipartite --eq3: LHS signatures"));
  literal_list(cls->add_option("--g2", co.g2, "bipartite --eq3: RHS signatures"));
  cls->add_option("--unary", co.unary, "bipartite --eq3: unary [a,b] for y = [0,*,0]");
  cls->add_flag("--eq3", co.eq3, "bipartite: Holant(y u G1 | =3 u G2)");
  cls->add_flag("--explain", co.explain, "holantc: add the proof trace");
  cls->add_option("--backend", classify_backend)->check(CLI::IsMember({"exact", "float"}));

  EvalOpts eo;
  auto* ev = app.add_subcommand("eval", "evaluate a closed grid");
  ev->add_option("grid", eo.file, "grid JSON")->required();
  ev->add_option("--method", eo.method)
      ->check(CLI::IsMember({"auto", "brute", "arity2", "vanishing", "affine", "product"}));
  ev->add_option("--backend", eo.backend)->check(CLI::IsMember({"exact", "float"}));
  ev->add_flag("--approx", eo.approx, "add a decimal value");

  auto* gad = app.add_subcommand("gadget", "named gadgets and gadget search");
  gad->require_subcommand(1);
  std::string gname;
  std::vector<std::string> gparams;
  auto* build = gad->add_subcommand("build", "build a named gadget");
  build->add_option("name", gname)->required();
  literal_list(build->add_option("--param", gparams, "k=v"));
  std::string target;
  std::vector<std::string> lhs, rhs;
  int max_vertices = max_search_vertices();
  std::string dside = "L";
  auto* search = gad->add_subcommand("search", "search for a gadget");
  search->add_option("--target", target)->required();
  literal_list(search->add_option("--lhs", lhs));
  literal_list(search->add_option("--rhs", rhs));
  search->add_option("--max-vertices", max_vertices);
  search->add_option("--dangling-side", dside)->check(CLI::IsMember({"L", "R"}));

  std::string matrix, tgrid;
  auto* tr = app.add_subcommand("transform", "holographic transformation of a bipartite grid");
  tr->add_option("--matrix", matrix)->required();
  tr->add_option("grid", tgrid)->required();

  std::string igrid, slot, samples, at;
  auto* ip = app.add_subcommand("interp", "Vandermonde interpolation over a slot");
  ip->add_option("grid", igrid)->required();
  ip->add_option("--slot", slot)->required();
  ip->add_option("--samples", samples)->required();
  ip->add_option("--at", at)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    set_max_edges(max_edges_opt);
    set_max_order(max_order_opt);
    if (*cls) {
      if (classify_backend == "float") throw CapabilityError("classification needs exact (cyclotomic) inputs");
      if (co.sigs.empty() && co.file.empty()) throw ParseError("give --sigs or --file");
      run_classify(co);
    } else if (*ev) {
      run_eval(eo);
    } else if (*build) {
      emit(gadget_json(build_named_gadget(gname, parse_params(gparams))));
    } else if (*search) {
      auto found = search_gadget(parse_symsig(target), parse_sym_list(lhs), parse_sym_list(rhs), max_vertices,
                                 dside == "L" ? Side::L : Side::R);
      if (!found) {
        emit({{"found", false}});
      } else {
        json out = gadget_json(*found);
        out["found"] = true;
        emit(out);
      }
    } else if (*tr) {
      SignatureGrid g = grid_from_json(read_json(tgrid));
      emit(grid_to_json(transform_grid(g, parse_matrix(matrix))));
    } else if (*ip) {
      SignatureGrid g = grid_from_json(read_json(igrid));
      std::vector<Scalar> xs;
      for (const auto& s : split_top(samples, ", ")) xs.push_back(parse_scalar(s));
      emit({{"value", render(interpolate_family(g, slot, xs, parse_scalar(at)))}});
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 3;
  } catch (const CapabilityError& e) {
    std::cerr << "capability: " << e.what() << "\n";
    return 3;
  } catch (const GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return 4;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
