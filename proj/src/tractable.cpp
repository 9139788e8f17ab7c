#include "holant/tractable.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

namespace holant {

void ConstraintNetwork::add(const GenSig& f, std::vector<int> vars) {
  if (static_cast<int>(vars.size()) != f.arity)
    throw PreconditionError("constraint arity does not match its variable tuple");
  for (int v : vars)
    if (v < 0 || v >= nvars) throw PreconditionError("constraint refers to a missing variable");
  constraints.emplace_back(f, std::move(vars));
}

ConstraintNetwork to_network(const SignatureGrid& g) {
  g.validate();
  if (!g.closed()) throw PreconditionError("grid has dangling edges");
  for (const auto& v : g.vertices)
    if (!v.slot.empty()) throw PreconditionError("grid has an unfilled slot '" + v.slot + "'");
  ConstraintNetwork n;
  n.nvars = static_cast<int>(g.edges.size());
  std::vector<std::vector<int>> vars(g.vertices.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) vars[v].assign(g.vertices[v].sig.arity, -1);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    vars[g.edges[e].a.v][g.edges[e].a.p] = static_cast<int>(e);
    vars[g.edges[e].b.v][g.edges[e].b.p] = static_cast<int>(e);
  }
  for (std::size_t v = 0; v < g.vertices.size(); ++v) n.add(g.vertices[v].sig, vars[v]);
  return n;
}

Scalar network_brute(const ConstraintNetwork& n) {
  if (n.nvars > max_edges())
    throw GuardExceeded("network has " + std::to_string(n.nvars) + " variables, guard is " +
                        std::to_string(max_edges()));
  Scalar total;
  std::vector<int> x(n.nvars, 0);
  for (std::size_t a = 0; a < (std::size_t{1} << n.nvars); ++a) {
    for (int v = 0; v < n.nvars; ++v) x[v] = static_cast<int>(a >> v & 1);
    Scalar p(1);
    for (const auto& [f, vars] : n.constraints) {
      std::size_t idx = 0;
      for (int v : vars) idx = (idx << 1) | x[v];
      if (f.at(idx).is_zero()) {
        p = 0;
        break;
      }
      p *= f.at(idx);
    }
    total += p;
  }
  return total;
}

// ----------------------------------------------------------------- arity 2

Scalar eval_arity2(const SignatureGrid& g) {
  g.validate();
  if (!g.closed()) throw PreconditionError("grid has dangling edges");
  const int nv = static_cast<int>(g.vertices.size());
  for (const auto& v : g.vertices) {
    if (v.sig.arity > 2) throw PreconditionError("eval_arity2 needs every vertex of arity <= 2");
    if (!v.slot.empty()) throw PreconditionError("grid has an unfilled slot '" + v.slot + "'");
  }
  std::vector<std::array<Port, 2>> partner(nv);
  for (const auto& e : g.edges) {
    partner[e.a.v][e.a.p] = e.b;
    partner[e.b.v][e.b.p] = e.a;
  }
  std::vector<bool> seen(nv, false);
  Scalar total(1);
  // value at (port q = x, other port = y) of a binary vertex
  auto entry = [&](int v, int q, int x, int y) {
    return g.vertices[v].sig.at(q == 0 ? (x << 1 | y) : (y << 1 | x));
  };
  // Pushes vec through the chain starting at port `from`; returns the final
  // contraction with the unary that ends the path.
  auto walk = [&](std::array<Scalar, 2> vec, Port from) {
    while (true) {
      Port to = partner[from.v][from.p];
      seen[to.v] = true;
      const GenSig& f = g.vertices[to.v].sig;
      if (f.arity == 1) return vec[0] * f.at(0) + vec[1] * f.at(1);
      std::array<Scalar, 2> next;
      for (int y = 0; y < 2; ++y) next[y] = vec[0] * entry(to.v, to.p, 0, y) + vec[1] * entry(to.v, to.p, 1, y);
      vec = next;
      from = {to.v, 1 - to.p};
    }
  };
  for (int v = 0; v < nv; ++v) {
    if (seen[v]) continue;
    const GenSig& f = g.vertices[v].sig;
    if (f.arity == 0) {
      seen[v] = true;
      total *= f.at(0);
    } else if (f.arity == 1) {
      seen[v] = true;
      total *= walk({f.at(0), f.at(1)}, {v, 0});
    }
  }
  // what is left are cycles of binaries
  for (int v = 0; v < nv; ++v) {
    if (seen[v]) continue;
    seen[v] = true;
    // M[x][y]: x on port 0 of v, y on the port that closes the cycle
    std::array<std::array<Scalar, 2>, 2> M;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) M[x][y] = entry(v, 0, x, y);
    Port from{v, 1};
    while (true) {
      Port to = partner[from.v][from.p];
      if (to.v == v) break;  // back at port 0 of v
      seen[to.v] = true;
      std::array<std::array<Scalar, 2>, 2> N;
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          N[x][y] = M[x][0] * entry(to.v, to.p, 0, y) + M[x][1] * entry(to.v, to.p, 1, y);
      M = N;
      from = {to.v, 1 - to.p};
    }
    total *= M[0][0] + M[1][1];
  }
  return total;
}

// ----------------------------------------------------------------- product

Scalar eval_product(const ConstraintNetwork& n) {
  Scalar scale(1);
  std::vector<std::array<Scalar, 2>> w(n.nvars, {Scalar(1), Scalar(1)});
  std::vector<int> parent(n.nvars), parity(n.nvars, 0);
  std::iota(parent.begin(), parent.end(), 0);
  // root of v, with parity of v relative to it
  auto find = [&](int v) {
    int p = 0;
    while (parent[v] != v) {
      p ^= parity[v];
      v = parent[v];
    }
    return std::make_pair(v, p);
  };
  for (const auto& [f, vars] : n.constraints) {
    auto form = in_product(f);
    if (!form) throw PreconditionError("constraint " + render(f) + " is not of product type");
    scale *= form->scale;
    if (scale.is_zero()) return Scalar(0);
    for (const auto& fac : form->factors) {
      int v = vars[fac.v];
      if (fac.kind == ProductFactor::Unary) {
        w[v][0] *= fac.unary[0];
        w[v][1] *= fac.unary[1];
        continue;
      }
      int need = fac.kind == ProductFactor::NotEqual ? 1 : 0;
      auto [ra, pa] = find(v);
      auto [rb, pb] = find(vars[fac.w]);
      if (ra == rb) {
        if ((pa ^ pb) != need) return Scalar(0);
      } else {
        parent[rb] = ra;
        parity[rb] = pa ^ pb ^ need;
      }
    }
  }
  std::map<int, std::array<Scalar, 2>> comp;
  for (int v = 0; v < n.nvars; ++v) {
    auto [r, p] = find(v);
    auto it = comp.try_emplace(r, std::array<Scalar, 2>{Scalar(1), Scalar(1)}).first;
    for (int c = 0; c < 2; ++c) it->second[c] *= w[v][c ^ p];
  }
  Scalar total = scale;
  for (const auto& [r, s] : comp) total *= s[0] + s[1];
  return total;
}

// -------------------------------------------------------------------- auto

std::string route_name(Route r) {
  switch (r) {
    case Route::Arity2:
      return "arity2";
    case Route::Vanishing:
      return "vanishing";
    case Route::Affine:
      return "affine";
    case Route::Product:
      return "product";
    default:
      return "brute";
  }
}

ConstraintNetwork transformed_network(const SignatureGrid& g, const Transform2& T) {
  SignatureGrid b = bipartize(g);
  return to_network(transform_grid(b, T));
}

AutoResult eval_auto(const SignatureGrid& g) {
  g.validate();
  if (!g.closed()) throw PreconditionError("grid has dangling edges");
  for (const auto& v : g.vertices)
    if (!v.slot.empty()) throw PreconditionError("grid has an unfilled slot '" + v.slot + "'");
  AutoResult out;
  if (std::all_of(g.vertices.begin(), g.vertices.end(), [](const Vertex& v) { return v.sig.arity <= 2; })) {
    out.value = eval_arity2(g);
    out.route = Route::Arity2;
    return out;
  }
  std::vector<SymSig> syms;
  bool symmetric = true;
  for (const auto& v : g.vertices) {
    auto s = tensor_to_sym(v.sig);
    if (!s) {
      symmetric = false;
      break;
    }
    syms.push_back(*s);
  }
  if (symmetric) {
    if (auto p = find_shared_pair(syms)) {
      out.value = eval_vanishing(g, *p);
      out.route = Route::Vanishing;
      out.pair = p;
      return out;
    }
  }
  std::vector<Transform2> candidates = {Transform2::identity()};
  for (const auto& T : enumerate_T(true))
    if (!projectively_equal(T, candidates[0])) candidates.push_back(T);
  for (const auto& T : candidates) {
    Transform2 Ti = T.inverse();
    bool ok = std::all_of(g.vertices.begin(), g.vertices.end(), [&](const Vertex& v) {
      return in_affine(transform_gen(v.sig, Ti, Direction::Contravariant)).has_value();
    });
    if (!ok) continue;
    out.value = eval_affine(transformed_network(g, T));
    out.route = Route::Affine;
    out.T = T;
    return out;
  }
  ConstraintNetwork n = to_network(g);
  if (std::all_of(n.constraints.begin(), n.constraints.end(),
                  [](const auto& c) { return in_product(c.first).has_value(); })) {
    out.value = eval_product(n);
    out.route = Route::Product;
    return out;
  }
  out.value = holant_brute(g);
  out.route = Route::Brute;
  return out;
}

}  // namespace holant
