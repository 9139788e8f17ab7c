// Sum of lambda * chi_{AX=0} * i^{Q(X)} over an affine network, by solving
// the linear system over F2 and eliminating variables from the Gauss sum.

#include <cstdint>

#include "holant/tractable.hpp"

namespace holant {

namespace {

// F2 affine form c + sum_{s in S} t_s, as a dense bit vector.
struct Xor {
  int c = 0;
  std::vector<std::uint8_t> s;
};

// Z4 quadratic form c + sum L_a t_a + 2 sum_{a<b} M_ab t_a t_b.
struct Quad {
  int c = 0;
  std::vector<int> L;
  std::vector<std::vector<std::uint8_t>> M;  // symmetric, zero diagonal
  explicit Quad(int n) : L(n, 0), M(n, std::vector<std::uint8_t>(n, 0)) {}

  void add_linear(int a, int k) { L[a] = ((L[a] + k) % 4 + 4) % 4; }
  void add_pair(int a, int b, int k) {  // adds 2k t_a t_b
    if (a == b) {
      add_linear(a, 2 * k);
    } else {
      M[a][b] ^= k & 1;
      M[b][a] ^= k & 1;
    }
  }
  // k * lift(x), with lift(b_1 xor ... xor b_m) = sum b - 2 sum_{j<l} b_j b_l
  void add_lift(const Xor& x, int k) {
    std::vector<int> idx;
    for (std::size_t a = 0; a < x.s.size(); ++a)
      if (x.s[a]) idx.push_back(static_cast<int>(a));
    c = ((c + k * x.c) % 4 + 4) % 4;
    for (int a : idx) add_linear(a, k - 2 * k * x.c);
    for (std::size_t j = 0; j < idx.size(); ++j)
      for (std::size_t l = j + 1; l < idx.size(); ++l) add_pair(idx[j], idx[l], k);
  }
  // 2 * x * y (products taken mod 2)
  void add_product(const Xor& x, const Xor& y) {
    c = (c + 2 * (x.c & y.c)) % 4;
    for (std::size_t a = 0; a < x.s.size(); ++a) {
      if (x.s[a] && y.c) add_linear(static_cast<int>(a), 2);
      if (y.s[a] && x.c) add_linear(static_cast<int>(a), 2);
    }
    for (std::size_t a = 0; a < x.s.size(); ++a)
      if (x.s[a])
        for (std::size_t b = 0; b < y.s.size(); ++b)
          if (y.s[b]) add_pair(static_cast<int>(a), static_cast<int>(b), 1);
  }
  // Replaces t_p by x (which must not mention p).
  void substitute(int p, const Xor& x) {
    int lp = L[p];
    std::vector<int> partners;
    for (std::size_t b = 0; b < M[p].size(); ++b)
      if (M[p][b]) partners.push_back(static_cast<int>(b));
    L[p] = 0;
    for (int b : partners) M[p][b] = M[b][p] = 0;
    add_lift(x, lp);
    for (int b : partners) {
      Xor tb;
      tb.s.assign(x.s.size(), 0);
      tb.s[b] = 1;
      add_product(x, tb);
    }
  }
};

const Scalar& unit(int e) {
  static const Scalar u[4] = {Scalar(1), Scalar::i(), Scalar(-1), -Scalar::i()};
  return u[((e % 4) + 4) % 4];
}

}  // namespace

Scalar eval_affine(const ConstraintNetwork& net) {
  const int n = net.nvars;
  Scalar scale(1);
  Quad q(n);
  std::vector<Xor> rows;  // each says: row(x) = 0
  for (const auto& [f, vars] : net.constraints) {
    auto form = in_affine(f);
    if (!form) throw PreconditionError("constraint " + render(f) + " is not affine");
    scale *= form->scale;
    if (scale.is_zero()) return Scalar(0);
    auto globalize = [&](const std::vector<int>& local) {
      Xor x;
      x.s.assign(n, 0);
      x.c = local[f.arity];
      for (int j = 0; j < f.arity; ++j)
        if (local[j]) x.s[vars[j]] ^= 1;
      return x;
    };
    for (const auto& r : form->A) rows.push_back(globalize(r));
    for (const auto& a : form->alphas) q.add_lift(globalize(a), 1);
  }
  // Gauss-Jordan over F2; a pivot variable becomes an affine form of free ones.
  std::vector<int> pivot_of_row;
  std::vector<bool> is_pivot(n, false);
  std::size_t r = 0;
  for (int col = 0; col < n && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && !rows[piv].s[col]) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || !rows[i].s[col]) continue;
      for (int j = 0; j < n; ++j) rows[i].s[j] ^= rows[r].s[j];
      rows[i].c ^= rows[r].c;
    }
    pivot_of_row.push_back(col);
    is_pivot[col] = true;
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (rows[i].c) return Scalar(0);  // 0 = 1
  for (std::size_t i = 0; i < r; ++i) {
    int p = pivot_of_row[i];
    Xor x = rows[i];  // x_p + rest + c = 0, so x_p = rest + c
    x.s[p] = 0;
    q.substitute(p, x);
  }
  // Gauss sum over the free variables, lowest index first.
  std::vector<bool> gone(is_pivot);
  Scalar acc(1);
  for (int a = 0; a < n; ++a) {
    if (gone[a]) continue;
    gone[a] = true;
    Xor ell;  // the form multiplying 2 t_a
    ell.s.assign(n, 0);
    for (int b = 0; b < n; ++b)
      if (q.M[a][b]) ell.s[b] = 1;
    int la = q.L[a];
    q.L[a] = 0;
    for (int b = 0; b < n; ++b) q.M[a][b] = q.M[b][a] = 0;
    if (la % 2 == 0) {
      // 1 + (-1)^{la/2 + ell}: 2 when ell = la/2, else 0
      int p = -1;
      for (int b = 0; b < n && p < 0; ++b)
        if (ell.s[b]) p = b;
      if (p < 0) {
        if (la / 2) return Scalar(0);
        acc *= 2;
        continue;
      }
      Xor x = ell;  // t_p = la/2 + (ell - t_p)
      x.s[p] = 0;
      x.c = la / 2;
      q.substitute(p, x);
      gone[p] = true;
      acc *= 2;
    } else {
      // 1 + i^{la} (-1)^ell = (1 + i^{la}) i^{(4-la) ell}
      acc *= 1 + unit(la);
      q.add_lift(ell, 4 - la);
    }
  }
  return scale * acc * unit(q.c);
}

}  // namespace holant
