// Holant* cases 2 and 3. Every vertex is rewritten in a basis {u, v} in which
// the edge function [1,0,1] is diagonal or anti-diagonal, or, for a double
// root t = +-i, in the Jordan basis {u, u'} with u = [1,t], u' = [0,1].


#include <algorithm>

#include "holant/linalg.hpp"
#include "holant/tractable.hpp"

namespace holant {

namespace {

Scalar bil(const Vec2& x, const Vec2& y) { return x[0] * y[0] + x[1] * y[1]; }

bool recurrence_holds(const SymSig& f, const SharedPair& p) {
  for (int k = 0; k + 2 <= f.arity(); ++k) {
    Scalar r = p.case3 ? f[k] + f[k + 2] : p.a * f[k] + p.b * f[k + 1] - p.a * f[k + 2];
    if (!r.is_zero()) return false;
  }
  return true;
}

bool exceptional_binary(const SymSig& f, const SharedPair& p) {
  if (f.arity() != 2) return false;
  if (p.case3) return f[1].is_zero() && f[0] == f[2];
  // [2a l, b l, -2a l]
  if (!(f[0] == -f[2])) return false;
  return (f[0] * p.b - 2 * p.a * f[1]).is_zero();
}

// A grid whose degenerate vertices are split into unaries.
struct Node {
  SymSig f;
  std::vector<std::pair<int, int>> nbr;  // per port: (node, port)
};

std::vector<Node> split_nodes(const SignatureGrid& g, Scalar& scale) {
  std::vector<Node> nodes;
  std::vector<std::vector<std::pair<int, int>>> where(g.vertices.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    auto s = tensor_to_sym(g.vertices[v].sig);
    if (!s) throw PreconditionError("eval_vanishing needs symmetric signatures");
    const int k = s->arity();
    if (k == 0) {
      scale *= (*s)[0];
      continue;
    }
    auto d = k >= 2 ? degenerate_form(*s) : std::nullopt;
    if (d) {
      scale *= d->lambda;
      for (int p = 0; p < k; ++p) {
        where[v].push_back({static_cast<int>(nodes.size()), 0});
        nodes.push_back({SymSig{d->vec[0], d->vec[1]}, {{-1, -1}}});
      }
    } else {
      for (int p = 0; p < k; ++p) where[v].push_back({static_cast<int>(nodes.size()), p});
      nodes.push_back({*s, std::vector<std::pair<int, int>>(k, {-1, -1})});
    }
  }
  for (const auto& e : g.edges) {
    auto a = where[e.a.v][e.a.p], b = where[e.b.v][e.b.p];
    nodes[a.first].nbr[a.second] = b;
    nodes[b.first].nbr[b.second] = a;
  }
  return nodes;
}

// Component lists over the node graph.
std::vector<std::vector<int>> components(const std::vector<Node>& nodes) {
  std::vector<int> comp(nodes.size(), -1);
  std::vector<std::vector<int>> out;
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    if (comp[s] >= 0) continue;
    out.push_back({static_cast<int>(s)});
    comp[s] = static_cast<int>(out.size()) - 1;
    for (std::size_t h = 0; h < out.back().size(); ++h)
      for (auto [w, q] : nodes[out.back()[h]].nbr)
        if (comp[w] < 0) {
          comp[w] = comp[s];
          out.back().push_back(w);
        }
  }
  return out;
}

Scalar eval_distinct(const std::vector<Node>& nodes, const Vec2& u, const Vec2& v) {
  const Scalar guu = bil(u, u), guv = bil(u, v), gvv = bil(v, v);
  const bool anti = !guv.is_zero();
  if (anti && !(guu.is_zero() && gvv.is_zero()))
    throw std::logic_error("eval_vanishing: edge function neither diagonal nor anti-diagonal");
  // per node: label s in {0 (u), 1 (v)}, weights w[s], port 1 flipped for
  // anti-diagonal binaries
  const std::size_t n = nodes.size();
  std::vector<std::array<Scalar, 2>> w(n);
  std::vector<int> flip1(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    const SymSig& f = nodes[x].f;
    const int k = f.arity();
    if (k == 2) {
      SymSig uu = power_sig(u, 2), vv = power_sig(v, 2);
      SymSig uv{u[0] * v[0], (u[0] * v[1] + u[1] * v[0]) * Scalar::rational(1, 2), u[1] * v[1]};
      Matrix M;
      for (int j = 0; j < 3; ++j) M.push_back({uu[j], vv[j], uv[j]});
      auto c = solve_unique(M, f.values);
      if (!c) throw std::logic_error("eval_vanishing: basis is degenerate");
      if ((*c)[2].is_zero()) {
        w[x] = {(*c)[0], (*c)[1]};
      } else if ((*c)[0].is_zero() && (*c)[1].is_zero()) {
        // gamma (u(x)v + v(x)u)/2: labels differ across the two ports
        w[x] = {(*c)[2] * Scalar::rational(1, 2), (*c)[2] * Scalar::rational(1, 2)};
        flip1[x] = 1;
      } else {
        throw PreconditionError("binary " + render(f) + " violates the shared recurrence");
      }
    } else {
      SymSig pu = power_sig(u, k), pv = power_sig(v, k);
      Matrix M;
      for (int j = 0; j <= k; ++j) M.push_back({pu[j], pv[j]});
      auto c = solve_unique(M, f.values);
      if (!c) throw PreconditionError("signature " + render(f) + " violates the shared recurrence");
      w[x] = {(*c)[0], (*c)[1]};
    }
  }
  auto flip = [&](int x, int p) { return p == 1 ? flip1[x] : 0; };
  Scalar total(1);
  std::vector<int> par(n, -1);
  for (const auto& comp : components(nodes)) {
    // parity of each node's label relative to the component root
    par[comp[0]] = 0;
    for (int x : comp)
      for (int p = 0; p < nodes[x].f.arity(); ++p) {
        auto [y, q] = nodes[x].nbr[p];
        int rel = flip(x, p) ^ flip(y, q) ^ (anti ? 1 : 0);
        if (par[y] < 0) {
          par[y] = par[x] ^ rel;
        } else if ((par[y] ^ par[x]) != rel) {
          return Scalar(0);
        }
      }
    Scalar sum;
    for (int root = 0; root < 2; ++root) {
      Scalar prod(1);
      for (int x : comp) {
        int s = root ^ par[x];
        prod *= w[x][s];
        for (int p = 0; p < nodes[x].f.arity(); ++p) {
          auto [y, q] = nodes[x].nbr[p];
          if (std::make_pair(y, q) < std::make_pair(x, p)) continue;  // each edge once
          int ls = s ^ flip(x, p);
          prod *= anti ? guv : (ls == 0 ? guu : gvv);
        }
      }
      sum += prod;
    }
    total *= sum;
  }
  return total;
}

Scalar eval_double(const std::vector<Node>& nodes, const Scalar& t) {
  // f = c1 u^k + c2 sum_positions u^{k-1} (x) u'
  const std::size_t n = nodes.size();
  std::vector<Scalar> c1(n), c2(n);
  for (std::size_t x = 0; x < n; ++x) {
    const SymSig& f = nodes[x].f;
    const int k = f.arity();
    c1[x] = f[0];
    c2[x] = f[1] - f[0] * t;
    for (int j = 0; j <= k; ++j) {
      Scalar want = c1[x] * t.pow(j) + (j > 0 ? c2[x] * Scalar(j) * t.pow(j - 1) : Scalar(0));
      if (f[j] != want) throw PreconditionError("signature " + render(f) + " violates the shared recurrence");
    }
  }
  // <u,u> = 0, <u,u'> = t, <u',u'> = 1: every edge needs a u' end, and every
  // vertex has at most one u' port.
  Scalar total(1);
  for (const auto& comp : components(nodes)) {
    long V = static_cast<long>(comp.size()), E2 = 0;
    for (int x : comp) E2 += nodes[x].f.arity();
    long E = E2 / 2;
    Scalar all_c2(1);
    for (int x : comp) all_c2 *= c2[x];
    if (E > V) return Scalar(0);
    if (E == V) {
      // each vertex takes one edge; two orientations of the unique cycle
      total *= 2 * all_c2 * t.pow(E);
    } else {
      // tree: one vertex idle, or one edge taken from both ends
      std::vector<Scalar> pre(comp.size() + 1, Scalar(1)), suf(comp.size() + 1, Scalar(1));
      for (std::size_t i = 0; i < comp.size(); ++i) pre[i + 1] = pre[i] * c2[comp[i]];
      for (std::size_t i = comp.size(); i-- > 0;) suf[i] = suf[i + 1] * c2[comp[i]];
      Scalar idle;
      for (std::size_t i = 0; i < comp.size(); ++i) idle += pre[i] * c1[comp[i]] * suf[i + 1];
      Scalar sum = idle * t.pow(E);
      if (E > 0) sum += Scalar(E) * all_c2 * t.pow(E - 1);
      total *= sum;
    }
  }
  return total;
}

}  // namespace

bool satisfies_pair(const SymSig& f, const SharedPair& p) {
  if (f.arity() <= 1 || is_degenerate(f)) return true;
  return recurrence_holds(f, p) || exceptional_binary(f, p);
}

std::optional<SharedPair> find_shared_pair(const std::vector<SymSig>& F) {
  std::vector<SymSig> core;
  for (const auto& f : F)
    if (f.arity() >= 2 && !is_degenerate(f)) core.push_back(f);
  auto all_ok = [&](const SharedPair& p) {
    return std::all_of(core.begin(), core.end(), [&](const SymSig& f) { return satisfies_pair(f, p); });
  };
  // a (x_k - x_{k+2}) + b x_{k+1} = 0 from every signature of arity >= 3
  Matrix rows;
  for (const auto& f : core)
    if (f.arity() >= 3)
      for (int k = 0; k + 2 <= f.arity(); ++k) rows.push_back({f[k] - f[k + 2], f[k + 1]});
  std::vector<SharedPair> cand;
  auto ker = rows.empty() ? std::vector<std::vector<Scalar>>{{1, 0}, {0, 1}} : kernel(rows, 2);
  if (ker.size() == 1) {
    cand.push_back({false, ker[0][0], ker[0][1]});
  } else if (ker.size() == 2) {
    for (const auto& f : core) {
      if (f.arity() != 2) continue;
      if (!(f[1].is_zero() && (f[0] - f[2]).is_zero())) cand.push_back({false, f[1], f[2] - f[0]});
      if (f[0] == -f[2] && !(f[0].is_zero() && f[1].is_zero())) cand.push_back({false, f[0], 2 * f[1]});
    }
    cand.push_back({false, 1, 0});
    cand.push_back({false, 0, 1});
  }
  for (const auto& p : cand)
    if (!(p.a.is_zero() && p.b.is_zero()) && all_ok(p)) return p;
  SharedPair three{true, 0, 0};
  if (all_ok(three)) return three;
  return std::nullopt;
}

Scalar eval_vanishing(const SignatureGrid& g, const SharedPair& p) {
  g.validate();
  if (!g.closed()) throw PreconditionError("grid has dangling edges");
  if (!p.case3 && p.a.is_zero() && p.b.is_zero()) throw PreconditionError("shared pair is (0,0)");
  for (const auto& v : g.vertices) {
    if (!v.slot.empty()) throw PreconditionError("grid has an unfilled slot '" + v.slot + "'");
    auto s = tensor_to_sym(v.sig);
    if (!s) throw PreconditionError("eval_vanishing needs symmetric signatures");
    if (!satisfies_pair(*s, p))
      throw PreconditionError("signature " + render(*s) + " violates the shared recurrence");
  }
  Scalar scale(1);
  auto nodes = split_nodes(g, scale);
  if (scale.is_zero()) return scale;
  const Scalar i = Scalar::i();
  if (p.case3) return scale * eval_distinct(nodes, {1, i}, {1, -i});
  if (p.a.is_zero()) return scale * eval_distinct(nodes, {1, 0}, {0, 1});
  // roots of a + b t - a t^2
  Scalar disc = p.b * p.b + 4 * p.a * p.a;
  Scalar inv2a = (2 * p.a).inverse();
  if (disc.is_zero()) return scale * eval_double(nodes, p.b * inv2a);
  Scalar s = adjoin_sqrt(disc);
  return scale * eval_distinct(nodes, {1, (p.b + s) * inv2a}, {1, (p.b - s) * inv2a});
}

}  // namespace holant
