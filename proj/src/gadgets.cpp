#include <algorithm>
#include <functional>

#include "holant/grid.hpp"

namespace holant {

namespace {

// Multiples of the target with a nonzero factor.
bool proportional(const GenSig& g, const GenSig& t) {
  if (g.arity != t.arity) return false;
  std::size_t i = 0;
  while (i < t.table.size() && t.table[i].is_zero()) ++i;
  if (i == t.table.size()) return false;
  if (g.table[i].is_zero()) return false;
  Scalar lambda = g.table[i] / t.table[i];
  for (std::size_t j = 0; j < t.table.size(); ++j)
    if (g.table[j] != lambda * t.table[j]) return false;
  return true;
}

// All multisets of size n over types 0..t-1, as nondecreasing sequences.
void multisets(int n, int t, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int x = cur.empty() ? 0 : cur.back(); x < t; ++x) {
    cur.push_back(x);
    multisets(n, t, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> multisets(int n, int t) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (t > 0 || n == 0) multisets(n, t, cur, out);
  return out;
}

int ports_of(const std::vector<int>& types, const std::vector<SymSig>& parts) {
  int s = 0;
  for (int x : types) s += parts[x].arity();
  return s;
}

// Bipartite: every port on side A is matched to a port on side B; B's
// leftover ports dangle.
bool search_bipartite(const GenSig& target, const std::vector<SymSig>& pa,
                      const std::vector<int>& ta, Side sa, const std::vector<SymSig>& pb,
                      const std::vector<int>& tb, Side sb, std::optional<SignatureGrid>& found) {
  SignatureGrid g;
  g.bipartite = true;
  for (int x : tb) g.add_vertex(pb[x], sb);
  const int nb = static_cast<int>(tb.size());
  for (int x : ta) g.add_vertex(pa[x], sa);
  std::vector<int> next_free(nb, 0);
  std::vector<std::pair<int, int>> aports;
  for (int i = 0; i < static_cast<int>(ta.size()); ++i)
    for (int p = 0; p < pa[ta[i]].arity(); ++p) aports.push_back({nb + i, p});
  std::vector<int> chosen(aports.size(), -1);

  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == aports.size()) {
      SignatureGrid h = g;
      for (int b = 0; b < nb; ++b)
        for (int p = next_free[b]; p < pb[tb[b]].arity(); ++p) h.dangle(b, p);
      if (proportional(gadget_signature(h).sig, target)) {
        found = std::move(h);
        return true;
      }
      return false;
    }
    auto [v, p] = aports[k];
    int lo = p > 0 ? chosen[k - 1] : 0;
    for (int b = lo; b < nb; ++b) {
      if (next_free[b] >= pb[tb[b]].arity()) continue;
      // untouched B vertices of one type are interchangeable
      if (next_free[b] == 0 && b > 0 && tb[b - 1] == tb[b] && next_free[b - 1] == 0) continue;
      chosen[k] = b;
      g.connect(v, p, b, next_free[b]++);
      bool ok = rec(k + 1);
      g.edges.pop_back();
      --next_free[b];
      if (ok) return true;
    }
    return false;
  };
  return rec(0);
}

// Untyped: ports are paired or left dangling, k of them dangling.
bool search_untyped(const GenSig& target, const std::vector<SymSig>& parts,
                    const std::vector<int>& types, std::optional<SignatureGrid>& found) {
  SignatureGrid g;
  for (int x : types) g.add_vertex(parts[x]);
  const int n = static_cast<int>(types.size());
  std::vector<int> next_free(n, 0);
  int dangling_left = target.arity;

  std::function<bool()> rec = [&]() -> bool {
    int v = 0;
    while (v < n && next_free[v] >= parts[types[v]].arity()) ++v;
    if (v == n) {
      if (dangling_left != 0) return false;
      if (proportional(gadget_signature(g).sig, target)) {
        found = g;
        return true;
      }
      return false;
    }
    int p = next_free[v]++;
    if (dangling_left > 0) {
      --dangling_left;
      g.dangle(v, p);
      bool ok = rec();
      g.dangling.pop_back();
      ++dangling_left;
      if (ok) return true;
    }
    for (int w = v; w < n; ++w) {
      if (next_free[w] >= parts[types[w]].arity()) continue;
      if (w != v && next_free[w] == 0 && types[w - 1] == types[w] && next_free[w - 1] == 0)
        continue;
      g.connect(v, p, w, next_free[w]++);
      bool ok = rec();
      g.edges.pop_back();
      --next_free[w];
      if (ok) return true;
    }
    --next_free[v];
    return false;
  };
  return rec();
}

long param_int(const Params& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw PreconditionError("missing parameter '" + key + "'");
  const Scalar& s = it->second;
  if (s.has_radical() || !s.base_part().is_rational() || s.base_part().denominator() != 1)
    throw PreconditionError("parameter '" + key + "' must be an integer");
  return s.base_part().numerators()[0].get_si();
}

Scalar param(const Params& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw PreconditionError("missing parameter '" + key + "'");
  return it->second;
}

long param_sign(const Params& params) {
  long s = params.count("s") ? param_int(params, "s") : 1;
  if (s != 1 && s != -1) throw PreconditionError("parameter 's' must be 1 or -1");
  return s;
}

// Hooks a binary on side L between R ports, allocating R ports in order.
struct Builder {
  SignatureGrid g;
  std::vector<int> used;
  int add(const SymSig& f, Side s) {
    used.push_back(0);
    return g.add_vertex(f, s);
  }
  int port(int v) { return used[v]++; }
  void link(int x, int y, const SymSig& binary) {
    int w = add(binary, Side::L);
    g.connect(x, port(x), w, port(w));
    g.connect(w, port(w), y, port(y));
  }
};

SignatureGrid triangle(const Scalar& v) {
  SignatureGrid g;
  SymSig f{v, 1, 0, 0};
  for (int i = 0; i < 3; ++i) g.add_vertex(f);
  for (int i = 0; i < 3; ++i) g.connect(i, 0, (i + 1) % 3, 1);
  for (int i = 0; i < 3; ++i) g.dangle(i, 2);
  return g;
}

// 2k copies of =3 on a path v0..v_{2k-1} with chords (v0,v1), (v2,v3), ...;
// every edge, and both end danglings, pass through a [1,0,a] on L.
SignatureGrid ladder(const Scalar& a, long k) {
  if (k < 1) throw PreconditionError("fig-gp1 needs k >= 1");
  Builder b;
  SymSig bin{1, 0, a};
  std::vector<int> r;
  for (long i = 0; i < 2 * k; ++i) r.push_back(b.add(SymSig::equality(3), Side::R));
  for (long i = 0; i + 1 < 2 * k; ++i) b.link(r[i], r[i + 1], bin);
  for (long i = 0; i < k; ++i) b.link(r[2 * i], r[2 * i + 1], bin);
  for (int end : {r.front(), r.back()}) {
    int w = b.add(bin, Side::L);
    b.g.connect(end, b.port(end), w, b.port(w));
    b.g.dangle(w, b.port(w));
  }
  b.g.bipartite = true;
  return b.g;
}

// A ring of m copies of [1,0,0,c] with (m-3)/2 chords, all through [1,0,1]
// on L; three ring vertices keep a dangling edge.
SignatureGrid ring(const Scalar& c, long m) {
  if (m < 3 || m % 2 == 0) throw PreconditionError("fig-gp2 needs odd m >= 3");
  Builder b;
  SymSig eq2{1, 0, 1};
  std::vector<int> r;
  for (long i = 0; i < m; ++i) r.push_back(b.add(SymSig{1, 0, 0, c}, Side::R));
  for (long i = 0; i < m; ++i) b.link(r[i], r[(i + 1) % m], eq2);
  for (long i = 3; i + 1 < m; i += 2) b.link(r[i], r[i + 1], eq2);
  for (int i = 0; i < 3; ++i) b.g.dangle(r[i], b.port(r[i]));
  b.g.bipartite = true;
  return b.g;
}

// Pinned results of search_gadget([0,1,0], {binary}, {=3}, n). fig-gt1:
// two =3 on R and four [1,+-i,1] on L (n = 6). fig-gt2: four =3 on R and
// seven [1,+-1,-1] on L (n = 11). Two binaries keep a dangling edge each.
SignatureGrid disequality(const SymSig& binary, bool large) {
  SignatureGrid g;
  g.bipartite = true;
  const int nl = large ? 7 : 4, nr = large ? 4 : 2;
  for (int i = 0; i < nl; ++i) g.add_vertex(binary, Side::L);
  for (int i = 0; i < nr; ++i) g.add_vertex(SymSig::equality(3), Side::R);
  static const int small_edges[][4] = {{4, 0, 0, 0}, {4, 1, 0, 1}, {4, 2, 1, 0},
                                       {5, 0, 1, 1}, {5, 1, 2, 0}, {5, 2, 3, 0}};
  static const int large_edges[][4] = {{7, 0, 0, 0},  {7, 1, 0, 1},  {7, 2, 1, 0},
                                       {8, 0, 1, 1},  {8, 1, 2, 0},  {8, 2, 3, 0},
                                       {9, 0, 2, 1},  {9, 1, 4, 0},  {9, 2, 4, 1},
                                       {10, 0, 3, 1}, {10, 1, 5, 0}, {10, 2, 6, 0}};
  if (large) {
    for (const auto& e : large_edges) g.connect(e[0], e[1], e[2], e[3]);
    g.dangle(5, 1);
    g.dangle(6, 1);
  } else {
    for (const auto& e : small_edges) g.connect(e[0], e[1], e[2], e[3]);
    g.dangle(2, 1);
    g.dangle(3, 1);
  }
  return g;
}

// =3 on R with a unary [1,a] and two [0,1,0] on L, the binaries dangling.
SignatureGrid equal_010(const Scalar& a) {
  SignatureGrid g;
  g.bipartite = true;
  int e = g.add_vertex(SymSig::equality(3), Side::R);
  int u = g.add_vertex(SymSig{1, a}, Side::L);
  int x = g.add_vertex(SymSig{0, 1, 0}, Side::L);
  int y = g.add_vertex(SymSig{0, 1, 0}, Side::L);
  g.connect(e, 0, u, 0);
  g.connect(e, 1, x, 0);
  g.connect(e, 2, y, 0);
  g.dangle(x, 1);
  g.dangle(y, 1);
  return g;
}

Scalar ipow(const Scalar& x, long e) { return x.pow(e); }

}  // namespace

std::vector<std::string> named_gadgets() {
  return {"fig-g0", "fig-gp1", "fig-gp2", "fig-gt1", "fig-gt2", "lemma-equal-010"};
}

SymSig named_gadget_claim(const std::string& name, const Params& params) {
  if (name == "fig-g0") {
    Scalar v = param(params, "v");
    return {v * v * v + 3 * v, v * v + 1, v, 1};
  }
  if (name == "fig-gp1") {
    Scalar a = param(params, "a");
    return {1, 0, ipow(a, 3 * param_int(params, "k") + 1)};
  }
  if (name == "fig-gp2") {
    Scalar c = param(params, "c");
    long m = param_int(params, "m");
    if (m < 3 || m % 2 == 0) throw PreconditionError("fig-gp2 needs odd m >= 3");
    return {1, 0, 0, ipow(c, m)};
  }
  if (name == "fig-gt1" || name == "fig-gt2") {
    param_sign(params);
    return {0, 1, 0};
  }
  if (name == "lemma-equal-010") return {param(params, "a"), 0, 1};
  throw PreconditionError("unknown gadget '" + name + "'");
}

SignatureGrid build_named_gadget(const std::string& name, const Params& params) {
  SymSig claim = named_gadget_claim(name, params);
  SignatureGrid g;
  bool up_to_scalar = false;
  if (name == "fig-g0") {
    g = triangle(param(params, "v"));
  } else if (name == "fig-gp1") {
    g = ladder(param(params, "a"), param_int(params, "k"));
  } else if (name == "fig-gp2") {
    g = ring(param(params, "c"), param_int(params, "m"));
  } else if (name == "fig-gt1") {
    g = disequality(SymSig{1, Scalar(param_sign(params)) * Scalar::i(), 1}, false);
    up_to_scalar = true;
  } else if (name == "fig-gt2") {
    g = disequality(SymSig{1, Scalar(param_sign(params)), -1}, true);
    up_to_scalar = true;
  } else {
    g = equal_010(param(params, "a"));
  }
  GenSig s = gadget_signature(g).sig;
  GenSig t = sym_to_tensor(claim);
  if (up_to_scalar ? !proportional(s, t) : s != t)
    throw std::logic_error("gadget " + name + " does not realize " + render(claim) + ", got " +
                           render(s));
  return g;
}

std::optional<SignatureGrid> search_gadget(const SymSig& target, const std::vector<SymSig>& lhs,
                                           const std::vector<SymSig>& rhs, int max_vertices,
                                           Side dangling_side) {
  if (max_vertices > max_search_vertices())
    throw GuardExceeded("search bound " + std::to_string(max_vertices) + " exceeds guard " +
                        std::to_string(max_search_vertices()));
  GenSig t = sym_to_tensor(target);
  if (target.is_zero()) return std::nullopt;
  std::optional<SignatureGrid> found;
  if (rhs.empty()) {
    for (int n = 1; n <= max_vertices; ++n)
      for (const auto& types : multisets(n, static_cast<int>(lhs.size()))) {
        int ports = ports_of(types, lhs);
        if (ports < t.arity || (ports - t.arity) % 2) continue;
        if (search_untyped(t, lhs, types, found)) return found;
      }
    return std::nullopt;
  }
  if (dangling_side == Side::None) throw PreconditionError("typed search needs a dangling side");
  const auto& pb = dangling_side == Side::L ? lhs : rhs;
  const auto& pa = dangling_side == Side::L ? rhs : lhs;
  Side sb = dangling_side, sa = dangling_side == Side::L ? Side::R : Side::L;
  for (int n = 1; n <= max_vertices; ++n)
    for (int na = 0; na <= n; ++na)
      for (const auto& ta : multisets(na, static_cast<int>(pa.size())))
        for (const auto& tb : multisets(n - na, static_cast<int>(pb.size()))) {
          if (ports_of(tb, pb) - ports_of(ta, pa) != t.arity) continue;
          if (search_bipartite(t, pa, ta, sa, pb, tb, sb, found)) return found;
        }
  return std::nullopt;
}

}  // namespace holant
