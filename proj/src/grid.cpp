#include "holant/grid.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <queue>

#include "holant/linalg.hpp"

namespace holant {

namespace {

std::atomic<int> g_max_edges{24};
std::atomic<int> g_max_search{8};

const char* side_name(Side s) { return s == Side::L ? "L" : s == Side::R ? "R" : "untyped"; }

bool is_zero_value(const Scalar& s) { return s.is_zero(); }
bool is_zero_value(const FloatScalar& s) { return s == FloatScalar(0); }

template <typename V>
V convert(const Scalar& s);
template <>
Scalar convert<Scalar>(const Scalar& s) {
  return s;
}
template <>
FloatScalar convert<FloatScalar>(const Scalar& s) {
  return s.approx();
}

// Enumerates every assignment of the dangling and internal edges and sums
// the vertex products per dangling assignment.
template <typename V>
class Enumerator {
 public:
  explicit Enumerator(const SignatureGrid& g) : g_(g) {
    for (const auto& v : g.vertices)
      if (!v.slot.empty()) throw PreconditionError("grid has an unfilled slot '" + v.slot + "'");
    const int nv = static_cast<int>(g.vertices.size());
    // vertex order: BFS over internal edges so vertices complete early
    std::vector<std::vector<int>> adj(nv);
    for (const auto& e : g.edges) {
      adj[e.a.v].push_back(e.b.v);
      adj[e.b.v].push_back(e.a.v);
    }
    std::vector<int> pos(nv, -1);
    int next = 0;
    for (int s = 0; s < nv; ++s) {
      if (pos[s] >= 0) continue;
      std::queue<int> q;
      q.push(s);
      pos[s] = next++;
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v])
          if (pos[w] < 0) {
            pos[w] = next++;
            q.push(w);
          }
      }
    }
    std::vector<int> order(g.edges.size());
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](int e) {
      int x = pos[g.edges[e].a.v], y = pos[g.edges[e].b.v];
      return std::make_pair(std::max(x, y), std::min(x, y));
    };
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return key(x) < key(y); });

    port_var_.resize(nv);
    for (int v = 0; v < nv; ++v) port_var_[v].assign(g.vertices[v].sig.arity, -1);
    nd_ = static_cast<int>(g.dangling.size());
    for (int d = 0; d < nd_; ++d) port_var_[g.dangling[d].at.v][g.dangling[d].at.p] = d;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const auto& e = g.edges[order[i]];
      port_var_[e.a.v][e.a.p] = nd_ + static_cast<int>(i);
      port_var_[e.b.v][e.b.p] = nd_ + static_cast<int>(i);
    }
    nvars_ = nd_ + static_cast<int>(g.edges.size());
    completes_.assign(nvars_ + 1, {});
    tables_.resize(nv);
    for (int v = 0; v < nv; ++v) {
      int last = -1;
      for (int var : port_var_[v]) last = std::max(last, var);
      completes_[last + 1].push_back(v);  // slot 0: arity-0 vertices
      for (const auto& s : g.vertices[v].sig.table) tables_[v].push_back(convert<V>(s));
    }
  }

  std::vector<V> run() {
    std::vector<V> out(std::size_t{1} << nd_, V(0));
    assign_.assign(nvars_, 0);
    V acc(1);
    for (int v : completes_[0]) acc = acc * tables_[v][0];
    if (!is_zero_value(acc)) rec(0, acc, out);
    return out;
  }

 private:
  void rec(int t, const V& acc, std::vector<V>& out) {
    if (t == nvars_) {
      std::size_t idx = 0;
      for (int d = 0; d < nd_; ++d) idx = (idx << 1) | assign_[d];
      out[idx] = out[idx] + acc;
      return;
    }
    for (int bit = 0; bit < 2; ++bit) {
      assign_[t] = bit;
      V a = acc;
      bool zero = false;
      for (int v : completes_[t + 1]) {
        std::size_t idx = 0;
        for (int var : port_var_[v]) idx = (idx << 1) | assign_[var];
        const V& x = tables_[v][idx];
        if (is_zero_value(x)) {
          zero = true;
          break;
        }
        a = a * x;
      }
      if (!zero) rec(t + 1, a, out);
    }
  }

  const SignatureGrid& g_;
  std::vector<std::vector<int>> port_var_;
  std::vector<std::vector<int>> completes_;
  std::vector<std::vector<V>> tables_;
  std::vector<int> assign_;
  int nd_ = 0, nvars_ = 0;
};

SymSig binary_eq() { return SymSig{1, 0, 1}; }

}  // namespace

// ------------------------------------------------------------- grid basics

int max_edges() noexcept { return g_max_edges.load(); }
void set_max_edges(int n) noexcept { g_max_edges.store(n); }
int max_search_vertices() noexcept { return g_max_search.load(); }
void set_max_search_vertices(int n) noexcept { g_max_search.store(n); }

int SignatureGrid::add_vertex(const SymSig& f, Side side) {
  return add_vertex(sym_to_tensor(f), side);
}

int SignatureGrid::add_vertex(const GenSig& f, Side side) {
  vertices.push_back({f, side, {}});
  return static_cast<int>(vertices.size()) - 1;
}

int SignatureGrid::add_slot(const std::string& id, Side side) {
  if (id.empty()) throw PreconditionError("slot id must be non-empty");
  vertices.push_back({sym_to_tensor(binary_eq()), side, id});
  return static_cast<int>(vertices.size()) - 1;
}

void SignatureGrid::validate() const {
  const int nv = static_cast<int>(vertices.size());
  std::vector<std::vector<int>> used(nv);
  for (int v = 0; v < nv; ++v) {
    used[v].assign(vertices[v].sig.arity, 0);
    if (!vertices[v].slot.empty() && vertices[v].sig.arity != 2)
      throw PreconditionError("slot vertices must be binary");
    if (bipartite && vertices[v].side == Side::None)
      throw PreconditionError("bipartite grid has a vertex without a side");
  }
  auto mark = [&](const Port& p) {
    if (p.v < 0 || p.v >= nv) throw PreconditionError("edge refers to a missing vertex");
    if (p.p < 0 || p.p >= vertices[p.v].sig.arity)
      throw PreconditionError("port " + std::to_string(p.p) + " out of range at vertex " +
                              std::to_string(p.v));
    if (used[p.v][p.p]++)
      throw PreconditionError("port " + std::to_string(p.p) + " of vertex " + std::to_string(p.v) +
                              " used twice");
  };
  for (const auto& e : edges) {
    mark(e.a);
    mark(e.b);
    if (bipartite && vertices[e.a.v].side == vertices[e.b.v].side)
      throw PreconditionError("bipartite grid has an edge inside one side");
  }
  for (const auto& d : dangling) {
    mark(d.at);
    Side vs = vertices[d.at.v].side;
    if (d.side != Side::None && d.side != vs)
      throw PreconditionError(std::string("dangling edge tagged ") + side_name(d.side) +
                              " leaves a vertex on side " + side_name(vs));
    if (bipartite && d.side == Side::None)
      throw PreconditionError("bipartite grid has an untyped dangling edge");
  }
  for (int v = 0; v < nv; ++v)
    for (int p = 0; p < vertices[v].sig.arity; ++p)
      if (!used[v][p])
        throw PreconditionError("port " + std::to_string(p) + " of vertex " + std::to_string(v) +
                                " is unused");
}

Scalar holant_brute(const SignatureGrid& g) {
  g.validate();
  if (!g.closed()) throw PreconditionError("holant_brute needs a closed grid");
  if (static_cast<int>(g.edges.size()) > max_edges())
    throw GuardExceeded("grid has " + std::to_string(g.edges.size()) + " edges, guard is " +
                        std::to_string(max_edges()));
  return Enumerator<Scalar>(g).run()[0];
}

FloatScalar holant_brute_float(const SignatureGrid& g) {
  g.validate();
  if (!g.closed()) throw PreconditionError("holant_brute needs a closed grid");
  if (static_cast<int>(g.edges.size()) > max_edges())
    throw GuardExceeded("grid has " + std::to_string(g.edges.size()) + " edges, guard is " +
                        std::to_string(max_edges()));
  return Enumerator<FloatScalar>(g).run()[0];
}

GadgetSignature gadget_signature(const SignatureGrid& g) {
  g.validate();
  if (static_cast<int>(g.edges.size() + g.dangling.size()) > max_edges())
    throw GuardExceeded("gadget has " + std::to_string(g.edges.size() + g.dangling.size()) +
                        " edges, guard is " + std::to_string(max_edges()));
  GenSig s(static_cast<int>(g.dangling.size()), Enumerator<Scalar>(g).run());
  return {s, tensor_to_sym(s)};
}

SignatureGrid compose(const SignatureGrid& g1, const SignatureGrid& g2,
                      const std::vector<std::pair<int, int>>& pairs) {
  std::vector<bool> used1(g1.dangling.size()), used2(g2.dangling.size());
  SignatureGrid out;
  out.bipartite = g1.bipartite && g2.bipartite;
  out.vertices = g1.vertices;
  const int off = static_cast<int>(g1.vertices.size());
  for (const auto& v : g2.vertices) out.vertices.push_back(v);
  out.edges = g1.edges;
  for (auto e : g2.edges) {
    e.a.v += off;
    e.b.v += off;
    out.edges.push_back(e);
  }
  for (auto [i, j] : pairs) {
    if (i < 0 || i >= static_cast<int>(used1.size()) || j < 0 || j >= static_cast<int>(used2.size()))
      throw PreconditionError("pairing refers to a missing dangling edge");
    if (used1[i] || used2[j]) throw PreconditionError("dangling edge paired twice");
    used1[i] = used2[j] = true;
    Side s1 = g1.dangling[i].side, s2 = g2.dangling[j].side;
    if (s1 != Side::None && s1 == s2)
      throw PreconditionError(std::string("cannot pair two ") + side_name(s1) + " dangling edges");
    Port b = g2.dangling[j].at;
    b.v += off;
    out.edges.push_back({g1.dangling[i].at, b});
  }
  for (std::size_t i = 0; i < used1.size(); ++i)
    if (!used1[i]) out.dangling.push_back(g1.dangling[i]);
  for (std::size_t j = 0; j < used2.size(); ++j)
    if (!used2[j]) {
      Dangling d = g2.dangling[j];
      d.at.v += off;
      out.dangling.push_back(d);
    }
  return out;
}

SignatureGrid bipartize(const SignatureGrid& g) {
  SignatureGrid out;
  out.bipartite = true;
  out.vertices = g.vertices;
  for (auto& v : out.vertices) v.side = Side::R;
  for (const auto& e : g.edges) {
    int w = out.add_vertex(binary_eq(), Side::L);
    out.connect(e.a.v, e.a.p, w, 0);
    out.connect(w, 1, e.b.v, e.b.p);
  }
  for (auto d : g.dangling) {
    d.side = Side::R;
    out.dangling.push_back(d);
  }
  return out;
}

SignatureGrid transform_grid(const SignatureGrid& g, const Transform2& T) {
  if (!g.bipartite) throw PreconditionError("transform_grid needs a bipartite grid");
  if (!T.invertible()) throw PreconditionError("transform_grid needs an invertible matrix");
  Transform2 Ti = T.inverse();
  SignatureGrid out = g;
  for (auto& v : out.vertices) {
    if (!v.slot.empty()) throw PreconditionError("cannot transform a grid with unfilled slots");
    if (v.side == Side::L)
      v.sig = transform_gen(v.sig, T, Direction::Covariant);
    else if (v.side == Side::R)
      v.sig = transform_gen(v.sig, Ti, Direction::Contravariant);
    else
      throw PreconditionError("bipartite grid has a vertex without a side");
  }
  return out;
}

SignatureGrid fill_slot(const SignatureGrid& g, const std::string& slot, const SymSig& f) {
  if (f.arity() != 2) throw PreconditionError("slot signatures must be binary");
  SignatureGrid out = g;
  for (auto& v : out.vertices)
    if (v.slot == slot) {
      v.sig = sym_to_tensor(f);
      v.slot.clear();
    }
  return out;
}

int slot_count(const SignatureGrid& g, const std::string& slot) {
  return static_cast<int>(std::count_if(g.vertices.begin(), g.vertices.end(),
                                        [&](const Vertex& v) { return v.slot == slot; }));
}

Scalar interpolate_values(int m, const std::vector<Scalar>& xs, const std::vector<Scalar>& values,
                          const Scalar& at) {
  if (static_cast<int>(xs.size()) < m + 1)
    throw PreconditionError("interpolation of degree " + std::to_string(m) + " needs " +
                            std::to_string(m + 1) + " samples, got " + std::to_string(xs.size()));
  Matrix V;
  for (const auto& x : xs) {
    std::vector<Scalar> row;
    Scalar p(1);
    for (int j = 0; j <= m; ++j) {
      row.push_back(p);
      p *= x;
    }
    V.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (xs[i] == xs[j]) throw PreconditionError("repeated sample points: singular Vandermonde system");
  auto c = solve_unique(V, values);
  if (!c) throw PreconditionError("samples are inconsistent with a polynomial of the expected degree");
  Scalar acc, p(1);
  for (const auto& cj : *c) {
    acc += cj * p;
    p *= at;
  }
  return acc;
}

Scalar interpolate_family(const SignatureGrid& tmpl, const std::string& slot,
                          const std::vector<Scalar>& samples, const Scalar& at) {
  const int m = slot_count(tmpl, slot);
  if (m == 0) throw PreconditionError("template has no slot '" + slot + "'");
  if (static_cast<int>(samples.size()) < m + 1)
    throw PreconditionError("slot occurs " + std::to_string(m) + " times; need at least " +
                            std::to_string(m + 1) + " samples");
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j)
      if (samples[i] == samples[j])
        throw PreconditionError("repeated sample points: singular Vandermonde system");
  std::vector<Scalar> values;
  for (const auto& x : samples)
    values.push_back(holant_brute(fill_slot(tmpl, slot, SymSig{Scalar(1), Scalar(0), x})));
  return interpolate_values(m, samples, values, at);
}

}  // namespace holant
