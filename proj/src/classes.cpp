#include "holant/classes.hpp"

#include <algorithm>
#include <cstdint>

#include "holant/linalg.hpp"

namespace holant {

namespace {

using Mask = std::uint32_t;

int bit(Mask x, int j, int k) { return static_cast<int>((x >> (k - 1 - j)) & 1u); }

// Exponent e with r == i^e, or -1.
int i_power(const Scalar& r) {
  static const Scalar units[4] = {Scalar(1), Scalar::i(), Scalar(-1), -Scalar::i()};
  for (int e = 0; e < 4; ++e)
    if (r == units[e]) return e;
  return -1;
}

// GF(2) basis in reduced echelon form; piv[i] is the highest set bit of b[i].
struct Gf2Basis {
  std::vector<Mask> b;
  std::vector<Mask> piv;
  Mask reduce(Mask x) const {
    for (std::size_t i = 0; i < b.size(); ++i)
      if (x & piv[i]) x ^= b[i];
    return x;
  }
  bool add(Mask x) {
    x = reduce(x);
    if (!x) return false;
    Mask p = Mask{1} << (31 - __builtin_clz(x));
    for (auto& y : b)
      if (y & p) y ^= x;
    b.push_back(x);
    piv.push_back(p);
    return true;
  }
};

}  // namespace

// ------------------------------------------------------------------ affine

Scalar AffineForm::evaluate(const std::vector<int>& bits) const {
  auto dot = [&](const std::vector<int>& row) {
    int s = row[arity];
    for (int j = 0; j < arity; ++j) s ^= row[j] & bits[j];
    return s;
  };
  for (const auto& row : A)
    if (dot(row)) return Scalar(0);
  int e = 0;
  for (const auto& a : alphas) e += dot(a);
  static const Scalar units[4] = {Scalar(1), Scalar::i(), Scalar(-1), -Scalar::i()};
  return scale * units[e % 4];
}

std::optional<AffineForm> in_affine(const GenSig& f) {
  const int k = f.arity;
  const Mask n = Mask{1} << k;
  AffineForm out;
  out.arity = k;
  std::vector<Mask> support;
  for (Mask x = 0; x < n; ++x)
    if (!f.at(x).is_zero()) support.push_back(x);
  if (support.empty()) {
    out.scale = 0;
    return out;
  }
  // (1) affine support
  Gf2Basis basis;
  for (Mask x : support) basis.add(x ^ support[0]);
  if (support.size() != (std::size_t{1} << basis.b.size())) return std::nullopt;
  Mask x0 = basis.reduce(support[0]);  // zero on every pivot coordinate
  if (f.at(x0).is_zero()) return std::nullopt;
  const int m = static_cast<int>(basis.b.size());
  auto point = [&](Mask t) {
    Mask x = x0;
    for (int i = 0; i < m; ++i)
      if (t >> i & 1u) x ^= basis.b[i];
    return x;
  };
  for (Mask t = 0; t < (Mask{1} << m); ++t)
    if (f.at(point(t)).is_zero()) return std::nullopt;
  // (2) values are i-power multiples of f(x0)
  const Scalar v0 = f.at(x0), inv0 = v0.inverse();
  std::vector<int> e(std::size_t{1} << m);
  for (Mask t = 0; t < (Mask{1} << m); ++t)
    if ((e[t] = i_power(f.at(point(t)) * inv0)) < 0) return std::nullopt;
  // (3) quadratic fit, then verification
  std::vector<int> lam(m);
  std::vector<std::vector<int>> mu(m, std::vector<int>(m, 0));
  for (int i = 0; i < m; ++i) lam[i] = e[Mask{1} << i];
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      int d = ((e[(Mask{1} << i) | (Mask{1} << j)] - lam[i] - lam[j]) % 4 + 4) % 4;
      if (d % 2) return std::nullopt;
      mu[i][j] = d / 2;
    }
  for (Mask t = 0; t < (Mask{1} << m); ++t) {
    int q = 0;
    for (int i = 0; i < m; ++i) {
      if (!(t >> i & 1u)) continue;
      q += lam[i];
      for (int j = i + 1; j < m; ++j)
        if (t >> j & 1u) q += 2 * mu[i][j];
    }
    if (q % 4 != e[t]) return std::nullopt;
  }
  // (4) witness; parameter t_i is the pivot coordinate of basis vector i
  std::vector<int> pcoord(m);
  for (int i = 0; i < m; ++i) pcoord[i] = k - 1 - (31 - __builtin_clz(basis.piv[i]));
  std::vector<bool> is_piv(k, false);
  for (int c : pcoord) is_piv[c] = true;
  for (int j = 0; j < k; ++j) {
    if (is_piv[j]) continue;
    std::vector<int> row(k + 1, 0);
    row[j] = 1;
    for (int i = 0; i < m; ++i) row[pcoord[i]] = bit(basis.b[i], j, k);
    row[k] = bit(x0, j, k);
    out.A.push_back(row);
  }
  auto unit = [&](std::initializer_list<int> cs) {
    std::vector<int> a(k + 1, 0);
    for (int c : cs) a[c] = 1;
    return a;
  };
  // 2xy = x + y + 3(x xor y) mod 4
  for (int i = 0; i < m; ++i) {
    int c = lam[i];
    for (int j = 0; j < m; ++j)
      if (mu[std::min(i, j)][std::max(i, j)] && i != j) ++c;
    for (int r = 0; r < c % 4; ++r) out.alphas.push_back(unit({pcoord[i]}));
    for (int j = i + 1; j < m; ++j)
      if (mu[i][j])
        for (int r = 0; r < 3; ++r) out.alphas.push_back(unit({pcoord[i], pcoord[j]}));
  }
  out.scale = v0;
  return out;
}

std::optional<AffineForm> in_affine(const SymSig& f) { return in_affine(sym_to_tensor(f)); }

// ----------------------------------------------------------------- product

Scalar ProductForm::evaluate(const std::vector<int>& bits) const {
  Scalar acc = scale;
  for (const auto& fac : factors) {
    switch (fac.kind) {
      case ProductFactor::Unary:
        acc *= fac.unary[bits[fac.v]];
        break;
      case ProductFactor::Equal:
        if (bits[fac.v] != bits[fac.w]) return Scalar(0);
        break;
      case ProductFactor::NotEqual:
        if (bits[fac.v] == bits[fac.w]) return Scalar(0);
        break;
    }
  }
  return acc;
}

namespace {

// A factor of f on the variables vars.
struct Sub {
  std::vector<int> vars;
  std::vector<Scalar> table;  // index bit (|vars|-1-j) is vars[j]
};

// Splits g into g1(S) g2(rest) when the reshaped matrix has rank one.
std::optional<std::pair<Sub, Sub>> split(const Sub& g, Mask S) {
  const int n = static_cast<int>(g.vars.size());
  std::vector<int> in, out;
  for (int j = 0; j < n; ++j) (S >> j & 1u ? in : out).push_back(j);
  auto index = [&](Mask s, Mask t) {
    Mask x = 0;
    for (std::size_t a = 0; a < in.size(); ++a)
      if (s >> (in.size() - 1 - a) & 1u) x |= Mask{1} << (n - 1 - in[a]);
    for (std::size_t b = 0; b < out.size(); ++b)
      if (t >> (out.size() - 1 - b) & 1u) x |= Mask{1} << (n - 1 - out[b]);
    return x;
  };
  const Mask ns = Mask{1} << in.size(), nt = Mask{1} << out.size();
  Mask s0 = 0, t0 = 0;
  bool found = false;
  for (Mask s = 0; s < ns && !found; ++s)
    for (Mask t = 0; t < nt && !found; ++t)
      if (!g.table[index(s, t)].is_zero()) {
        s0 = s;
        t0 = t;
        found = true;
      }
  if (!found) return std::nullopt;
  const Scalar& p = g.table[index(s0, t0)];
  for (Mask s = 0; s < ns; ++s)
    for (Mask t = 0; t < nt; ++t)
      if (g.table[index(s, t)] * p != g.table[index(s, t0)] * g.table[index(s0, t)])
        return std::nullopt;
  Sub a, b;
  for (int j : in) a.vars.push_back(g.vars[j]);
  for (int j : out) b.vars.push_back(g.vars[j]);
  Scalar pinv = p.inverse();
  for (Mask s = 0; s < ns; ++s) a.table.push_back(g.table[index(s, t0)]);
  for (Mask t = 0; t < nt; ++t) b.table.push_back(g.table[index(s0, t)] * pinv);
  return std::make_pair(a, b);
}

}  // namespace

std::optional<ProductForm> in_product(const GenSig& f) {
  ProductForm out;
  out.arity = f.arity;
  out.scale = 1;
  bool zero = std::all_of(f.table.begin(), f.table.end(), [](const Scalar& x) { return x.is_zero(); });
  if (zero) {
    out.scale = 0;
    return out;
  }
  Sub rest;
  for (int j = 0; j < f.arity; ++j) rest.vars.push_back(j);
  rest.table = f.table;
  // peel off the smallest block containing the first remaining variable
  while (!rest.vars.empty()) {
    const int n = static_cast<int>(rest.vars.size());
    Sub block = rest, tail;
    tail.table = {Scalar(1)};
    std::vector<Mask> subsets;
    for (Mask S = 1; S < (Mask{1} << n) - 1; S += 2) subsets.push_back(S);  // contain var 0
    std::stable_sort(subsets.begin(), subsets.end(),
                     [](Mask x, Mask y) { return __builtin_popcount(x) < __builtin_popcount(y); });
    for (Mask S : subsets)
      if (auto parts = split(rest, S)) {
        block = parts->first;
        tail = parts->second;
        break;
      }
    const int bn = static_cast<int>(block.vars.size());
    if (bn == 1) {
      out.factors.push_back({ProductFactor::Unary, block.vars[0], 0, {block.table[0], block.table[1]}});
    } else {
      std::vector<Mask> supp;
      for (Mask x = 0; x < block.table.size(); ++x)
        if (!block.table[x].is_zero()) supp.push_back(x);
      const Mask full = (Mask{1} << bn) - 1;
      if (supp.size() != 2 || (supp[0] ^ supp[1]) != full) return std::nullopt;
      Mask z = supp[0];  // first variable is 0 here
      for (int j = 1; j < bn; ++j) {
        bool same = bit(z, 0, bn) == bit(z, j, bn);
        out.factors.push_back({same ? ProductFactor::Equal : ProductFactor::NotEqual,
                               block.vars[0], block.vars[j], {}});
      }
      out.factors.push_back({ProductFactor::Unary, block.vars[0], 0, {block.table[z], block.table[supp[1]]}});
    }
    rest = tail;
  }
  out.scale = rest.table[0];
  return out;
}

std::optional<ProductForm> in_product(const SymSig& f) { return in_product(sym_to_tensor(f)); }

// -------------------------------------------------------------------- F123

namespace {

std::array<Vec2, 2> family_pair(Family fam) {
  switch (fam) {
    case Family::F1:
      return {Vec2{1, 0}, Vec2{0, 1}};
    case Family::F2:
      return {Vec2{1, 1}, Vec2{1, -1}};
    default:
      return {Vec2{1, Scalar::i()}, Vec2{1, -Scalar::i()}};
  }
}

}  // namespace

SymSig F123Witness::rebuild() const {
  auto [u, v] = family_pair(family);
  SymSig a = power_sig(u, k, lambda), b = power_sig(v, k, lambda * Scalar::i().pow(r));
  for (int j = 0; j <= k; ++j) a[j] += b[j];
  return a;
}

std::optional<F123Witness> in_F123(const SymSig& f) {
  const int k = f.arity();
  if (k < 1) throw PreconditionError("in_F123 needs arity >= 1");
  if (f.is_zero()) return F123Witness{Family::F1, Scalar(0), 0, k};
  for (Family fam : {Family::F1, Family::F2, Family::F3}) {
    auto [u, v] = family_pair(fam);
    SymSig pu = power_sig(u, k), pv = power_sig(v, k);
    Matrix M;
    for (int j = 0; j <= k; ++j) M.push_back({pu[j], pv[j]});
    auto sol = solve_unique(M, f.values);
    if (!sol || (*sol)[0].is_zero()) continue;
    int r = i_power((*sol)[1] / (*sol)[0]);
    if (r < 0) continue;
    return F123Witness{fam, (*sol)[0], r, k};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------- T

bool projectively_equal(const Transform2& x, const Transform2& y) {
  const Scalar xs[4] = {x.a, x.b, x.c, x.d}, ys[4] = {y.a, y.b, y.c, y.d};
  int p = 0;
  while (p < 4 && xs[p].is_zero()) ++p;
  if (p == 4) return y == x;
  if (ys[p].is_zero()) return false;
  Scalar c = ys[p] / xs[p];
  for (int j = 0; j < 4; ++j)
    if (ys[j] != c * xs[j]) return false;
  return true;
}

std::vector<Transform2> enumerate_T(bool closed) {
  const Scalar i = Scalar::i(), a = Scalar::zeta(8), a3 = a.pow(3);
  const Scalar r2 = Scalar::zeta(8) + Scalar::zeta(8, 7);
  std::vector<Transform2> base = {
      // [1,0,1]
      {1, 1, 1, -1}, {1, 1, -1, 1}, {1, -1, 1, 1}, {1, -1, -1, -1}, {1, 0, 0, 1}, {1, 0, 0, -1},
      // [1,0,i]
      {1, 1, a3, a}, {1, 1, -a3, -a}, {1, -1, a3, -a}, {1, -1, -a3, a},
      {1, i, a, -a}, {1, i, -a, a}, {1, 0, 0, a}, {1, 0, 0, -a},
      // [1,i,1]
      {1, 1, -a3, a3}, {1, 1, a3, -a3}, {1, -1, a, a}, {1, -1, -a, -a},
      {1, i, 0, r2}, {1, i, 0, -r2}, {r2, 0, i, 1}, {r2, 0, -i, 1},
      // [0,1,0]
      {1, 1, i, -i}, {1, 1, -i, i}, {1, -1, -i, -i}, {1, -1, i, i}, {1, i, -i, -1}, {1, i, i, 1}};
  if (!closed) return base;
  std::vector<Transform2> group = {Transform2::identity()};
  const Transform2 gens[2] = {{0, 1, 1, 0}, Transform2::diag(1, i)};
  for (std::size_t n = 0; n < group.size(); ++n)
    for (const auto& g : gens) {
      Transform2 h = group[n] * g;
      if (std::none_of(group.begin(), group.end(),
                       [&](const Transform2& x) { return projectively_equal(x, h); }))
        group.push_back(h);
    }
  std::vector<Transform2> out;
  for (const auto& g : group)
    for (const auto& T : base) {
      Transform2 h = T * g;
      if (std::none_of(out.begin(), out.end(),
                       [&](const Transform2& x) { return projectively_equal(x, h); }))
        out.push_back(h);
    }
  return out;
}

bool in_T(const Transform2& T) {
  return in_F123(transform_sym(SymSig{1, 0, 1}, T, Direction::Covariant)) &&
         in_F123(SymSig{T.a, T.b}) && in_F123(SymSig{T.c, T.d});
}

std::vector<Transform2> solve_T(const SymSig& y, const SymSig& u) {
  if (y.arity() != 2 || u.arity() != 1) throw PreconditionError("solve_T needs a binary and a unary");
  // T^T T = gamma Y and row 1 = u, so M = gamma Y - u^T u = r2^T r2 has rank one.
  Scalar detY = y[0] * y[2] - y[1] * y[1];
  if (detY.is_zero()) return {};
  Scalar q = u[0] * u[0] * y[2] - 2 * u[0] * u[1] * y[1] + u[1] * u[1] * y[0];
  Scalar gamma = q / detY;
  if (gamma.is_zero()) return {};
  Scalar m00 = gamma * y[0] - u[0] * u[0], m01 = gamma * y[1] - u[0] * u[1],
         m11 = gamma * y[2] - u[1] * u[1];
  Vec2 r2;
  if (!m00.is_zero()) {
    Scalar s = adjoin_sqrt(m00);
    r2 = {s, m01 / s};
  } else if (!m11.is_zero()) {
    r2 = {0, adjoin_sqrt(m11)};
  } else {
    return {};
  }
  std::vector<Transform2> out;
  for (int sign : {1, -1}) {
    Transform2 T{u[0], u[1], r2[0] * sign, r2[1] * sign};
    if (T.invertible() && in_F123(SymSig{T.c, T.d})) out.push_back(T);
  }
  return out;
}

bool covered_by(const SymSig& f, const Transform2& T) {
  SymSig g = transform_sym(f, T.inverse(), Direction::Contravariant);
  if (g.arity() >= 1 && in_F123(g)) return true;
  return in_affine(g).has_value();
}

std::optional<Transform2> check_T_cover(const std::vector<SymSig>& F,
                                        const std::vector<Transform2>& extra) {
  std::vector<Transform2> candidates = {Transform2::identity()};
  for (const auto& T : enumerate_T(true))
    if (!projectively_equal(T, candidates[0])) candidates.push_back(T);
  candidates.insert(candidates.end(), extra.begin(), extra.end());
  for (const auto& T : candidates) {
    if (!T.invertible()) continue;
    if (std::all_of(F.begin(), F.end(), [&](const SymSig& f) { return covered_by(f, T); }))
      return T;
  }
  return std::nullopt;
}

}  // namespace holant
