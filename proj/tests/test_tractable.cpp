#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "random_instances.hpp"

using namespace holant;
using namespace holant::testing;

namespace {

Scalar S(const char* s) { return parse_scalar(s); }

SignatureGrid cycle(const SymSig& f, int n) {
  SignatureGrid g;
  for (int i = 0; i < n; ++i) g.add_vertex(f);
  for (int i = 0; i < n; ++i) g.connect(i, 1, (i + 1) % n, 0);
  return g;
}

SignatureGrid k4(const SymSig& f) {
  SignatureGrid g;
  for (int i = 0; i < 4; ++i) g.add_vertex(f);
  int port[4] = {0, 0, 0, 0};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) g.connect(a, port[a]++, b, port[b]++);
  return g;
}

SignatureGrid theta(const SymSig& f) {
  SignatureGrid g;
  g.add_vertex(f);
  g.add_vertex(f);
  for (int p = 0; p < 3; ++p) g.connect(0, p, 1, p);
  return g;
}

// Cubic prism-like graph: a ring of n vertices with chords i -- i + n/2.
SignatureGrid ring_with_chords(const SymSig& f, int n) {
  SignatureGrid g;
  for (int i = 0; i < n; ++i) g.add_vertex(f);
  for (int i = 0; i < n; ++i) g.connect(i, 1, (i + 1) % n, 0);
  for (int i = 0; i < n / 2; ++i) g.connect(i, 2, i + n / 2, 2);
  return g;
}

Scalar unit_power(int e) {
  const Scalar u[4] = {Scalar(1), Scalar::i(), Scalar(-1), -Scalar::i()};
  return u[e % 4];
}

Scalar pow2(int e) {
  Scalar r(1);
  for (int j = 0; j < e; ++j) r *= 2;
  return r;
}

}  // namespace

TEST(Arity2, Cycles) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(eval_arity2(cycle(SymSig{1, 0, 1}, n)), Scalar(2));
    EXPECT_EQ(eval_arity2(cycle(SymSig{0, 1, 0}, n)), Scalar(n % 2 ? 0 : 2));
  }
}

TEST(Arity2, Path) {
  SignatureGrid g;
  g.add_vertex(SymSig{1, 1});
  g.add_vertex(SymSig{1, 0, 1});
  g.add_vertex(SymSig{1, 1});
  g.connect(0, 0, 1, 0);
  g.connect(1, 1, 2, 0);
  EXPECT_EQ(eval_arity2(g), Scalar(2));
}

TEST(Arity2, RandomAgainstBrute) {
  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    SignatureGrid g;
    std::vector<Port> ports;
    int nv = 1 + static_cast<int>(rng() % 7);
    for (int v = 0; v < nv; ++v) {
      int k = 1 + static_cast<int>(rng() % 2);
      std::vector<Scalar> tab(std::size_t{1} << k);
      for (auto& x : tab) x = small_entry(rng);
      g.add_vertex(GenSig(k, tab));
      for (int p = 0; p < k; ++p) ports.push_back({v, p});
    }
    if (ports.size() % 2) {
      g.add_vertex(SymSig{small_entry(rng), small_entry(rng)});
      ports.push_back({nv, 0});
    }
    std::shuffle(ports.begin(), ports.end(), rng);
    for (std::size_t i = 0; i < ports.size(); i += 2) g.connect(ports[i].v, ports[i].p, ports[i + 1].v, ports[i + 1].p);
    EXPECT_EQ(eval_arity2(g), holant_brute(g)) << t;
  }
}

TEST(Arity2, RejectsTernary) { EXPECT_THROW(eval_arity2(k4(SymSig{1, 0, 1, 0})), PreconditionError); }

TEST(Vanishing, Examples) {
  SharedPair p{false, Scalar(1), Scalar(0)};
  EXPECT_EQ(eval_vanishing(k4(SymSig{1, 0, 1, 0}), p), Scalar(8));
  EXPECT_EQ(eval_vanishing(k4(SymSig{2, 0, -2, 0}), find_shared_pair({SymSig{2, 0, -2, 0}}).value()), Scalar(0));
  EXPECT_EQ(eval_vanishing(theta(SymSig{1, 0, 1, 0}), p), Scalar(4));
}

TEST(Vanishing, SatisfiesPair) {
  SharedPair p{false, Scalar(1), Scalar(0)};
  EXPECT_TRUE(satisfies_pair(SymSig{1, 0, 1, 0}, p));
  EXPECT_TRUE(satisfies_pair(SymSig{2, 0, -2}, p));
  EXPECT_FALSE(satisfies_pair(SymSig{1, 0, 0, 1}, p));
  SharedPair c3{true, Scalar(0), Scalar(0)};
  EXPECT_TRUE(satisfies_pair(SymSig{1, 2, -1, -2}, c3));
  EXPECT_TRUE(satisfies_pair(SymSig{3, 0, 3}, c3));
  EXPECT_FALSE(satisfies_pair(SymSig{1, 0, 2}, SharedPair{false, Scalar(1), Scalar(1)}));
}

TEST(Vanishing, FindSharedPair) {
  auto p = find_shared_pair({SymSig{1, 0, 1, 0}, SymSig{0, 1, 0, 1}});
  ASSERT_TRUE(p);
  for (const auto& f : {SymSig{1, 0, 1, 0}, SymSig{0, 1, 0, 1}}) EXPECT_TRUE(satisfies_pair(f, *p));
  EXPECT_TRUE(find_shared_pair({SymSig{1, 0, 0, 1}}));  // a = 0: generalized equality
  EXPECT_FALSE(find_shared_pair({SymSig{0, 1, 0, 0}}));
  EXPECT_FALSE(find_shared_pair({SymSig{1, 0, 1, 0}, SymSig{1, 0, 0, 1}}));
  auto c3 = find_shared_pair({SymSig{1, S("i"), -1, S("-i")}, SymSig{1, 2, -1, -2}});
  ASSERT_TRUE(c3);
  EXPECT_TRUE(satisfies_pair(SymSig{1, 2, -1, -2}, *c3));
}

TEST(Vanishing, RandomAgainstBrute) {
  std::mt19937 rng(5);
  std::vector<SharedPair> pairs = {
      {false, Scalar(1), Scalar(0)},       {false, Scalar(1), Scalar(1)},  {false, Scalar(1), Scalar(2)},
      {false, Scalar(1), S("2*i")},        {false, Scalar(1), S("-2*i")},  {false, Scalar(0), Scalar(1)},
      {false, Scalar(2), S("1+i")},        {true, Scalar(0), Scalar(0)},
  };
  for (const auto& p : pairs) {
    for (int t = 0; t < 40; ++t) {
      std::vector<SymSig> pool;
      for (int k = 2; k <= 4; ++k) pool.push_back(random_vanishing_sig(rng, p, k));
      for (const auto& f : pool) ASSERT_TRUE(satisfies_pair(f, p)) << render(f);
      SignatureGrid g = random_closed_grid(rng, pool, 4, 14);
      EXPECT_EQ(eval_vanishing(g, p), holant_brute(g)) << render(pool[1]) << " " << t;
    }
  }
}

TEST(Vanishing, RejectsUncertified) {
  EXPECT_THROW(eval_vanishing(k4(SymSig{1, 0, 0, 1}), SharedPair{false, Scalar(1), Scalar(0)}), PreconditionError);
}

TEST(Vanishing, LargeGrid) {
  // [1,0,1,0] on a connected cubic graph counts even subgraphs: 2^{E-V+1}.
  const int n = 6668;
  auto g = ring_with_chords(SymSig{1, 0, 1, 0}, n);
  ASSERT_GE(g.edges.size(), 10000u);
  auto t0 = std::chrono::steady_clock::now();
  Scalar v = eval_vanishing(g, SharedPair{false, Scalar(1), Scalar(0)});
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_EQ(v, pow2(static_cast<int>(g.edges.size()) - n + 1));
  EXPECT_LT(secs, 1.0);
}

TEST(Affine, Examples) {
  ConstraintNetwork eq;
  eq.nvars = 1;
  eq.add(SymSig{1, 0, 1}, {0, 0});
  EXPECT_EQ(eval_affine(eq), Scalar(2));
  ConstraintNetwork un;
  un.nvars = 1;
  un.add(SymSig{1, S("i")}, {0});
  EXPECT_EQ(eval_affine(un), S("1+i"));
  ConstraintNetwork x3;
  x3.nvars = 3;
  x3.add(SymSig{1, 0, 1, 0}, {0, 1, 2});
  EXPECT_EQ(eval_affine(x3), Scalar(4));
  ConstraintNetwork empty;
  EXPECT_EQ(eval_affine(empty), Scalar(1));
}

TEST(Affine, RejectsNonAffine) {
  ConstraintNetwork n;
  n.nvars = 2;
  n.add(SymSig{1, 2, 3}, {0, 1});
  EXPECT_THROW(eval_affine(n), PreconditionError);
}

TEST(Affine, RandomAgainstBrute) {
  std::mt19937 rng(17);
  auto pool = affine_pool();
  ASSERT_GT(pool.size(), 20u);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int t = 0; t < 400; ++t) {
    ConstraintNetwork n;
    n.nvars = 1 + static_cast<int>(rng() % 10);
    int m = 1 + static_cast<int>(rng() % 8);
    for (int c = 0; c < m; ++c) {
      const SymSig& f = pool[pick(rng)];
      std::vector<int> vars;
      for (int j = 0; j < f.arity(); ++j) vars.push_back(static_cast<int>(rng() % n.nvars));
      n.add(f, vars);
    }
    EXPECT_EQ(eval_affine(n), network_brute(n)) << t;
  }
}

TEST(Affine, GeneralSignatures) {
  // non-symmetric affine constraints: x1 + x2 + x3 = 1 with i^{x1 + 2 x2 x3}
  std::vector<Scalar> tab(8);
  for (int a = 0; a < 8; ++a) {
    int x1 = a >> 2 & 1, x2 = a >> 1 & 1, x3 = a & 1;
    tab[a] = (x1 ^ x2 ^ x3) ? unit_power(x1 + 2 * x2 * x3) : Scalar(0);
  }
  GenSig f(3, tab);
  ASSERT_TRUE(in_affine(f));
  std::mt19937 rng(3);
  for (int t = 0; t < 100; ++t) {
    ConstraintNetwork n;
    n.nvars = 6;
    for (int c = 0; c < 3; ++c)
      n.add(f, {static_cast<int>(rng() % 6), static_cast<int>(rng() % 6), static_cast<int>(rng() % 6)});
    n.add(SymSig{1, S("-i")}, {static_cast<int>(rng() % 6)});
    EXPECT_EQ(eval_affine(n), network_brute(n)) << t;
  }
}

TEST(Affine, HundredVariables) {
  std::mt19937 rng(23);
  auto pool = affine_pool();
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  ConstraintNetwork n;
  n.nvars = 100;
  for (int c = 0; c < 200; ++c) {
    const SymSig& f = pool[pick(rng)];
    std::vector<int> vars;
    for (int j = 0; j < f.arity(); ++j) vars.push_back(static_cast<int>(rng() % 100));
    n.add(f, vars);
  }
  auto t0 = std::chrono::steady_clock::now();
  Scalar v = eval_affine(n);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(secs, 1.0);
  // relabelling the variables must not change the value
  std::vector<int> perm(100);
  for (int j = 0; j < 100; ++j) perm[j] = j;
  std::shuffle(perm.begin(), perm.end(), rng);
  ConstraintNetwork m;
  m.nvars = 100;
  for (auto c : n.constraints) {
    for (auto& x : c.second) x = perm[x];
    m.add(c.first, c.second);
  }
  EXPECT_EQ(eval_affine(m), v);
}

TEST(Product, Examples) {
  ConstraintNetwork n;
  n.nvars = 3;
  n.add(SymSig{1, 0, 1}, {0, 1});
  n.add(SymSig{0, 1, 0}, {1, 2});
  n.add(SymSig{1, 3}, {0});
  EXPECT_EQ(eval_product(n), Scalar(4));
  ConstraintNetwork tri;
  tri.nvars = 3;
  tri.add(SymSig{0, 1, 0}, {0, 1});
  tri.add(SymSig{0, 1, 0}, {1, 2});
  tri.add(SymSig{0, 1, 0}, {2, 0});
  EXPECT_EQ(eval_product(tri), Scalar(0));
  ConstraintNetwork empty;
  EXPECT_EQ(eval_product(empty), Scalar(1));
}

TEST(Product, RandomAgainstBrute) {
  std::mt19937 rng(29);
  auto pool = product_pool();
  ASSERT_GT(pool.size(), 10u);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int t = 0; t < 300; ++t) {
    ConstraintNetwork n;
    n.nvars = 1 + static_cast<int>(rng() % 9);
    int m = 1 + static_cast<int>(rng() % 7);
    for (int c = 0; c < m; ++c) {
      const SymSig& f = pool[pick(rng)];
      std::vector<int> vars;
      for (int j = 0; j < f.arity(); ++j) vars.push_back(static_cast<int>(rng() % n.nvars));
      n.add(f, vars);
    }
    EXPECT_EQ(eval_product(n), network_brute(n)) << t;
  }
}

TEST(Network, FromGrid) {
  auto g = k4(SymSig{1, 0, 1, 0});
  auto n = to_network(g);
  EXPECT_EQ(n.nvars, 6);
  EXPECT_EQ(n.constraints.size(), 4u);
  EXPECT_EQ(network_brute(n), Scalar(8));
  EXPECT_THROW(n.add(SymSig{1, 1}, {7}), PreconditionError);
  EXPECT_THROW(n.add(SymSig{1, 1}, {0, 1}), PreconditionError);
}

TEST(Auto, Routes) {
  auto r = eval_auto(k4(SymSig{1, 0, 1, 0}));
  EXPECT_EQ(r.route, Route::Vanishing);
  EXPECT_EQ(r.value, Scalar(8));

  auto g = k4(SymSig{1, 0, S("i"), 0});
  auto a = eval_auto(g);
  EXPECT_EQ(a.route, Route::Affine);
  ASSERT_TRUE(a.T);
  EXPECT_EQ(a.value, holant_brute(g));

  auto c = eval_auto(cycle(SymSig{1, 0, 1}, 5));
  EXPECT_EQ(c.route, Route::Arity2);
  EXPECT_EQ(c.value, Scalar(2));

  // (x1 = x2) * [1,2](x3), not symmetric
  GenSig f(3, {1, 2, 0, 0, 0, 0, 1, 2});
  SignatureGrid pg;
  for (int i = 0; i < 4; ++i) pg.add_vertex(f);
  int port[4] = {0, 0, 0, 0};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) pg.connect(a, port[a]++, b, port[b]++);
  auto p = eval_auto(pg);
  EXPECT_EQ(p.route, Route::Product);
  EXPECT_EQ(p.value, holant_brute(pg));

  auto gq = eval_auto(k4(SymSig{2, 0, 0, 3}));
  EXPECT_EQ(gq.route, Route::Vanishing);
  EXPECT_EQ(gq.value, Scalar(16 + 81));

  auto b = eval_auto(k4(SymSig{1, 2, 3, 7}));
  EXPECT_EQ(b.route, Route::Brute);
  EXPECT_EQ(b.value, holant_brute(k4(SymSig{1, 2, 3, 7})));
}

TEST(Auto, GuardOnBruteRoute) {
  auto g = ring_with_chords(SymSig{0, 1, 0, 0}, 20);  // 30 edges, #PM-like
  EXPECT_THROW(eval_auto(g), GuardExceeded);
}

TEST(Auto, RandomAffineUnderT) {
  // signatures in T A for T = [[1,1],[i,-i]] are evaluated on the affine route
  std::mt19937 rng(41);
  std::vector<SymSig> pool = {SymSig{1, 0, S("i"), 0}, SymSig{1, 0, S("i")}, SymSig{0, 1, 0, S("-i")}};
  for (int t = 0; t < 30; ++t) {
    auto g = random_closed_grid(rng, pool, 4, 14);
    auto r = eval_auto(g);
    EXPECT_EQ(r.value, holant_brute(g)) << t;
  }
}

TEST(Auto, RouteConsistency) {
  // equality-type and parity signatures lie in several classes at once
  std::mt19937 rng(43);
  std::vector<SymSig> multi = {SymSig{1, 0, 0, 1}, SymSig{1, 0, 1}, SymSig{0, 1, 0}, SymSig{1, 0, 0, 0, -1}};
  for (int t = 0; t < 40; ++t) {
    auto g = random_closed_grid(rng, multi, 4, 16);
    Scalar brute = holant_brute(g);
    auto n = to_network(g);
    EXPECT_EQ(eval_auto(g).value, brute);
    EXPECT_EQ(eval_affine(n), brute);
    EXPECT_EQ(eval_product(n), brute);
    EXPECT_EQ(eval_vanishing(g, SharedPair{false, Scalar(0), Scalar(1)}), brute);
  }
  std::vector<SymSig> parity = {SymSig{1, 0, 1, 0}, SymSig{1, 0, 1}, SymSig{1, 0, 1, 0, 1}};
  for (int t = 0; t < 40; ++t) {
    auto g = random_closed_grid(rng, parity, 4, 16);
    Scalar brute = holant_brute(g);
    EXPECT_EQ(eval_auto(g).value, brute);
    EXPECT_EQ(eval_affine(to_network(g)), brute);
    EXPECT_EQ(eval_vanishing(g, SharedPair{false, Scalar(1), Scalar(0)}), brute);
  }
}
