#include <gtest/gtest.h>

#include <random>

#include "holant/classes.hpp"

using namespace holant;

namespace {

Scalar S(const char* s) { return parse_scalar(s); }

std::vector<int> bits_of(std::size_t x, int k) {
  std::vector<int> b(k);
  for (int j = 0; j < k; ++j) b[j] = static_cast<int>(x >> (k - 1 - j) & 1);
  return b;
}

void expect_affine_sound(const GenSig& f, const AffineForm& a) {
  for (std::size_t x = 0; x < f.table.size(); ++x)
    EXPECT_EQ(a.evaluate(bits_of(x, f.arity)), f.at(x)) << render(f) << " at " << x;
}

void expect_product_sound(const GenSig& f, const ProductForm& p) {
  for (std::size_t x = 0; x < f.table.size(); ++x)
    EXPECT_EQ(p.evaluate(bits_of(x, f.arity)), f.at(x)) << render(f) << " at " << x;
}

// All symmetric signatures of arity k with entries from vals.
std::vector<SymSig> all_sym(int k, const std::vector<Scalar>& vals) {
  std::vector<SymSig> out;
  std::vector<std::size_t> idx(k + 1, 0);
  while (true) {
    SymSig f;
    for (auto j : idx) f.values.push_back(vals[j]);
    out.push_back(f);
    std::size_t p = 0;
    while (p <= static_cast<std::size_t>(k) && ++idx[p] == vals.size()) idx[p++] = 0;
    if (p > static_cast<std::size_t>(k)) break;
  }
  return out;
}

}  // namespace

TEST(Affine, Equality3) {
  auto f = sym_to_tensor(SymSig{1, 0, 0, 1});
  auto a = in_affine(f);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->A.size(), 2u);
  EXPECT_TRUE(a->alphas.empty());
  expect_affine_sound(f, *a);
}

TEST(Affine, Rejects) {
  EXPECT_FALSE(in_affine(SymSig{1, 1, 0}));
  EXPECT_FALSE(in_affine(SymSig{1, 1, 1, -1}));
  EXPECT_FALSE(in_affine(SymSig{1, 0, S("i"), 0}));
  EXPECT_FALSE(in_affine(SymSig{1, 2}));
}

TEST(Affine, Accepts) {
  for (auto f : {SymSig{1, 0, 1, 0}, SymSig{1, S("i")}, SymSig{1, 1, -1}, SymSig{0, 1, 0},
                 SymSig{1, 0, 0}, SymSig{1, S("i"), 1, S("i")}, SymSig{0, 0, 0}}) {
    auto t = sym_to_tensor(f);
    auto a = in_affine(t);
    ASSERT_TRUE(a) << render(f);
    expect_affine_sound(t, *a);
  }
}

TEST(Affine, GeneralTables) {
  // i^{x1 x2 + x2 x3 ... } style quadratic forms are affine
  GenSig g(3, {1, S("i"), 1, -S("i"), S("i"), -1, -S("i"), -1});
  auto a = in_affine(g);
  if (a) expect_affine_sound(g, *a);
  std::mt19937 rng(5);
  const Scalar units[4] = {1, S("i"), -1, -S("i")};
  int accepted = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int k = 1 + trial % 4;
    // random quadratic form over a random affine subspace, scaled
    std::uniform_int_distribution<int> b(0, 1), q(0, 3);
    std::vector<int> lam(k), cons(k);
    std::vector<std::vector<int>> mu(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i) {
      lam[i] = q(rng);
      cons[i] = b(rng) && b(rng);
      for (int j = 0; j < k; ++j) mu[i][j] = b(rng);
    }
    std::vector<Scalar> t(std::size_t{1} << k);
    for (std::size_t x = 0; x < t.size(); ++x) {
      auto xs = bits_of(x, k);
      // constraint: x_i = x_{i-1} for marked i
      bool ok = true;
      for (int i = 1; i < k; ++i)
        if (cons[i] && xs[i] != xs[i - 1]) ok = false;
      int e = 0;
      for (int i = 0; i < k; ++i) {
        e += lam[i] * xs[i];
        for (int j = i + 1; j < k; ++j) e += 2 * mu[i][j] * xs[i] * xs[j];
      }
      t[x] = ok ? units[e % 4] * 3 : Scalar(0);
    }
    GenSig f(k, t);
    auto a = in_affine(f);
    ASSERT_TRUE(a);
    expect_affine_sound(f, *a);
    ++accepted;
  }
  EXPECT_EQ(accepted, 300);
}

TEST(Product, Examples) {
  auto eq = in_product(SymSig{1, 0, 0, 1});
  ASSERT_TRUE(eq);
  int eqs = 0;
  for (const auto& f : eq->factors) eqs += f.kind == ProductFactor::Equal;
  EXPECT_EQ(eqs, 2);
  expect_product_sound(sym_to_tensor(SymSig{1, 0, 0, 1}), *eq);
  auto ne = in_product(SymSig{0, 1, 0});
  ASSERT_TRUE(ne);
  EXPECT_EQ(ne->factors[0].kind, ProductFactor::NotEqual);
  EXPECT_FALSE(in_product(SymSig{1, 1, 1, -1}));
  EXPECT_TRUE(in_product(SymSig{1, 0, 1}));
}

TEST(Product, Sound) {
  for (auto f : {SymSig{2, 0, 0, S("w(5)")}, SymSig{1, 3, 9}, SymSig{0, 1, 0}, SymSig{0, 0, 0},
                 SymSig{1, 0, 0, 0, 7}}) {
    auto t = sym_to_tensor(f);
    auto p = in_product(t);
    ASSERT_TRUE(p) << render(f);
    expect_product_sound(t, *p);
  }
  // [1,0]x[0,1] with =(0,2) and a weight
  GenSig g(3, {2, 0, 0, 0, 0, 0, 0, 5});
  GenSig h(3, {0, 0, 0, 0, 0, 2, 0, 0});
  for (const auto& x : {g, h}) {
    auto p = in_product(x);
    ASSERT_TRUE(p);
    expect_product_sound(x, *p);
  }
  EXPECT_FALSE(in_product(SymSig{1, 1, 0}));
  EXPECT_FALSE(in_product(GenSig(2, {1, 1, 1, 2})));
}

TEST(F123, Examples) {
  auto w = in_F123(SymSig{1, 0, 0, 1});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->family, Family::F1);
  EXPECT_EQ(w->lambda, Scalar(1));
  EXPECT_EQ(w->r, 0);
  auto w2 = in_F123(SymSig{2, 0, 2, 0});
  ASSERT_TRUE(w2);
  EXPECT_EQ(w2->family, Family::F2);
  EXPECT_EQ(w2->lambda, Scalar(1));
  EXPECT_EQ(w2->r, 0);
  EXPECT_FALSE(in_F123(SymSig{1, 1, 0, 0}));
  EXPECT_THROW(in_F123(SymSig{Scalar(1)}), PreconditionError);
}

TEST(F123, RebuildAndScaling) {
  for (auto f : {SymSig{1, 0, S("i")}, SymSig{1, S("i"), 1}, SymSig{0, 1, 0}, SymSig{1, -1},
                 SymSig{1, 0}, SymSig{1, 0, 0, S("i")}}) {
    auto w = in_F123(f);
    ASSERT_TRUE(w) << render(f);
    EXPECT_EQ(w->rebuild(), f);
    auto ws = in_F123(f.scaled(S("3+w(5)")));
    ASSERT_TRUE(ws);
    EXPECT_EQ(ws->rebuild(), f.scaled(S("3+w(5)")));
  }
}

TEST(F123, IdentityWithAffineNonDegenerate) {
  // The identity holds away from degenerate signatures; see the acceptance run
  // for the full count.
  std::vector<Scalar> vals = {0, 1, -1, S("i"), -S("i")};
  int mism_nondeg = 0, mism_deg = 0;
  for (int k = 1; k <= 3; ++k)
    for (const auto& f : all_sym(k, vals)) {
      bool a = in_F123(f).has_value(), b = in_affine(f).has_value();
      if (a != b) (is_degenerate(f) ? mism_deg : mism_nondeg)++;
    }
  EXPECT_EQ(mism_nondeg, 0);
  EXPECT_GT(mism_deg, 0);  // e.g. [1,0,0] is in A but in no F_j
}

TEST(T, BaseList) {
  auto base = enumerate_T();
  ASSERT_EQ(base.size(), 28u);
  for (const auto& T : base) EXPECT_TRUE(in_T(T)) << render(T);
  EXPECT_TRUE(projectively_equal(base[0], Transform2{1, 1, 1, -1}));
  EXPECT_TRUE(std::any_of(base.begin(), base.end(), [](const Transform2& T) {
    return projectively_equal(T, Transform2::diag(1, Scalar::zeta(8)));
  }));
}

TEST(T, ClosedList) {
  auto all = enumerate_T(true);
  EXPECT_GT(all.size(), 28u);
  for (const auto& T : all) EXPECT_TRUE(in_T(T)) << render(T);
}

TEST(T, SolveMatchesList) {
  const Scalar i = Scalar::i();
  std::vector<SymSig> ys = {{1, 0, 1}, {1, 0, i}, {1, i, 1}, {0, 1, 0}};
  std::vector<SymSig> us = {{1, 1}, {1, -1}, {1, i}, {1, 0}};
  auto base = enumerate_T();
  std::size_t solutions = 0, matched = 0;
  for (const auto& y : ys)
    for (const auto& u : us)
      for (const auto& T : solve_T(y, u)) {
        EXPECT_TRUE(in_T(T));
        ++solutions;
        if (std::any_of(base.begin(), base.end(),
                        [&](const Transform2& B) { return projectively_equal(B, T); }))
          ++matched;
        else  // listed as [[sqrt2,0],[-i,1]], which yields [1,-i,1]
          EXPECT_TRUE(projectively_equal(T, base[21] * Transform2::diag(1, -1))) << render(T);
      }
  EXPECT_EQ(solutions, 28u);
  EXPECT_EQ(matched, 27u);
  EXPECT_EQ(transform_sym(SymSig{1, 0, 1}, base[21], Direction::Covariant), (SymSig{1, -i, 1}));
  EXPECT_TRUE(solve_T({1, 0, 1}, {1, i}).empty());
  EXPECT_TRUE(solve_T({0, 1, 0}, {1, 0}).empty());
}

TEST(Cover, Examples) {
  auto T = check_T_cover({SymSig{1, 0, Scalar::i(), 0}});
  ASSERT_TRUE(T);
  EXPECT_TRUE(covered_by(SymSig{1, 0, Scalar::i(), 0}, *T));
  auto I = check_T_cover({SymSig{1, 0, 0, 1}, SymSig{0, 1, 0}});
  ASSERT_TRUE(I);
  EXPECT_TRUE(projectively_equal(*I, Transform2::identity()));
  EXPECT_FALSE(check_T_cover({SymSig{1, 2, 4}}));
}
