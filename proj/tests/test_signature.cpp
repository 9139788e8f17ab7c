#include <gtest/gtest.h>

#include <random>

#include "holant/signature.hpp"

using namespace holant;

namespace {

SymSig sig(const char* s) { return parse_symsig(s); }
Scalar S(const char* s) { return parse_scalar(s); }

Transform2 M(const char* s) { return parse_matrix(s); }

}  // namespace

TEST(SymToTensor, Examples) {
  GenSig t = sym_to_tensor(sig("[1,0,1]"));
  EXPECT_EQ(render(t), "table:[1,0,0,1]");
  GenSig u = sym_to_tensor(sig("[0,1,0,0]"));
  for (std::size_t b = 0; b < 8; ++b) EXPECT_EQ(u.at(b), Scalar(std::popcount(b) == 1 ? 1 : 0));
  GenSig e = sym_to_tensor(sig("[1,0,0,1]"));
  for (std::size_t b = 0; b < 8; ++b) EXPECT_EQ(e.at(b), Scalar(b == 0 || b == 7 ? 1 : 0));
  EXPECT_EQ(*tensor_to_sym(e), sig("[1,0,0,1]"));
}

TEST(IsDegenerate, Examples) {
  auto d = degenerate_form(sig("[1,1,1,1]"));
  ASSERT_TRUE(d);
  EXPECT_EQ(d->lambda, Scalar(1));
  EXPECT_EQ(d->vec[1], Scalar(1));
  EXPECT_FALSE(is_degenerate(sig("[1,0,0,1]")));
  auto z = degenerate_form(sig("[0,0,1]"));
  ASSERT_TRUE(z);
  EXPECT_TRUE(z->vec[0].is_zero());
  EXPECT_EQ(z->vec[1], Scalar(1));
  EXPECT_TRUE(is_degenerate(sig("[2,2*i,-2]")));
  EXPECT_FALSE(is_degenerate(sig("[0,1,0]")));
  EXPECT_TRUE(is_degenerate(sym_to_tensor(sig("[1,2,4,8]"))));
  EXPECT_FALSE(is_degenerate(sym_to_tensor(sig("[1,0,1]"))));
}

TEST(RecurrenceSpace, Examples) {
  auto r = recurrence_space(sig("[1,0,0,1]"));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r[0][0].is_zero());
  EXPECT_FALSE(r[0][1].is_zero());
  EXPECT_TRUE(r[0][2].is_zero());
  auto p = recurrence_space(sig("[0,1,0,0]"));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_TRUE(p[0][0].is_zero() && p[0][1].is_zero());
  EXPECT_EQ(recurrence_space(sig("[1,1,1,1]")).size(), 2u);
}

TEST(CategorizeTernary, GenericWithEighthRoots) {
  auto c = categorize_ternary(sig("[1,0,i,0]"));
  auto g = std::get_if<Generic>(&c);
  ASSERT_TRUE(g);
  EXPECT_EQ(g->form.c1, Scalar::rational(1, 2));
  EXPECT_EQ(g->form.c2, Scalar::rational(1, 2));
  Scalar l1 = *g->lambda1(), l2 = *g->lambda2();
  EXPECT_EQ(l1 * l1, Scalar::i());
  EXPECT_EQ(l1, -l2);
  EXPECT_TRUE(l1 == Scalar::zeta(8) || l1 == -Scalar::zeta(8));
  EXPECT_EQ(reconstruct(c), sig("[1,0,i,0]"));
}

TEST(CategorizeTernary, DoubleRoots) {
  auto c = categorize_ternary(sig("[1,1,0,0]"));
  auto d = std::get_if<DoubleRoot>(&c);
  ASSERT_TRUE(d);
  EXPECT_TRUE(d->alpha.is_zero());
  EXPECT_EQ(d->A, Scalar(1));
  EXPECT_EQ(d->B, Scalar(1));
  auto r = categorize_ternary(sig("[0,0,1,1]"));
  auto rd = std::get_if<ReverseDoubleRoot>(&r);
  ASSERT_TRUE(rd);
  EXPECT_TRUE(rd->alpha.is_zero());
  EXPECT_EQ(rd->A, Scalar(1));
  EXPECT_EQ(rd->B, Scalar(1));
  EXPECT_EQ(reconstruct(r), sig("[0,0,1,1]"));
  auto e = categorize_ternary(sig("[0,1,4,12]"));
  auto de = std::get_if<DoubleRoot>(&e);
  ASSERT_TRUE(de);
  EXPECT_EQ(de->alpha, Scalar(2));
  EXPECT_EQ(de->A, Scalar(1));
  EXPECT_TRUE(de->B.is_zero());
}

TEST(CategorizeTernary, DiagonalAndReversedGeneric) {
  auto c = categorize_ternary(sig("[2,0,0,3]"));
  auto g = std::get_if<Generic>(&c);
  ASSERT_TRUE(g);
  EXPECT_EQ(g->form.c1, Scalar(2));
  EXPECT_EQ(g->form.c2, Scalar(3));
  EXPECT_FALSE(g->lambda2().has_value());
  for (const char* t : {"[0,1,1,0]", "[0,0,1,2]", "[0,1,0,0]", "[1,2,3,5]", "[1,0,1,0]"}) {
    auto k = categorize_ternary(sig(t));
    EXPECT_EQ(reconstruct(k), sig(t)) << t;
  }
  EXPECT_THROW(categorize_ternary(sig("[1,1,1,1]")), PreconditionError);
  EXPECT_THROW(categorize_ternary(sig("[1,0,1]")), PreconditionError);
}

TEST(CategorizeTernary, RandomReconstruction) {
  std::mt19937 rng(11);
  const char* pool[] = {"0", "1", "-1", "2", "i", "-i", "1+i", "3", "w(3)", "1/2"};
  int done = 0;
  while (done < 200) {
    SymSig f;
    for (int j = 0; j < 4; ++j) f.values.push_back(S(pool[rng() % 10]));
    if (is_degenerate(f)) continue;
    ++done;
    EXPECT_EQ(reconstruct(categorize_ternary(f)), f) << render(f);
  }
}

TEST(NormalizeBinary, Examples) {
  auto n = normalize_binary(sig("[1,0,w(3)]"));
  EXPECT_EQ(n.T, Transform2::diag(1, Scalar::zeta(3)));
  EXPECT_EQ(n.sig, sig("[1,0,1]"));
  auto m = normalize_binary(sig("[1,0,i]"));
  EXPECT_EQ(m.T, Transform2::identity());
  auto z = normalize_binary(sig("[0,1,0]"));
  EXPECT_EQ(z.T, Transform2::identity());
  for (const char* t : {"[1,2,w(3)^2]", "[1,0,w(12)]", "[2,1,2*w(6)]", "[1,1,w(15)^2]"}) {
    auto r = normalize_binary(sig(t));
    EXPECT_TRUE(is_normalized(r.sig)) << t;
    EXPECT_EQ(transform_sym(sig(t), r.T, Direction::Covariant), r.sig);
  }
  EXPECT_FALSE(is_normalized(sig("[1,0,w(12)]")));
  EXPECT_TRUE(is_normalized(sig("[1,0,w(9)]")));  // t = 9 has 3 | t'
}

TEST(NormalizeUnary, Examples) {
  auto n = normalize_unary(sig("[1,w(3)]"));
  EXPECT_EQ(n.sig, sig("[1,1]"));
  auto m = normalize_unary(sig("[1,2]"));
  EXPECT_EQ(m.T, Transform2::identity());
  EXPECT_TRUE(is_normalized(normalize_unary(sig("[1,w(6)]")).sig));
}

TEST(Pin, Examples) {
  EXPECT_EQ(pin(sig("[1,0,0,1]"), sig("[1,0]")), sig("[1,0,0]"));
  EXPECT_EQ(pin(sig("[0,1,4,12]"), sig("[1,1]")), sig("[1,5,16]"));
  EXPECT_EQ(pin(sig("[1,0,i,0]"), sig("[0,1]")), sig("[0,i,0]"));
  EXPECT_THROW(pin(sig("[1]"), sig("[1,0]")), PreconditionError);
}

TEST(TransformSym, Examples) {
  Transform2 H = M("[[1,1],[1,-1]]");
  EXPECT_EQ(transform_sym(sig("[1,0,0,1]"), H, Direction::Contravariant), sig("[2,0,2,0]"));
  EXPECT_EQ(transform_sym(sig("[1,0,1]"), H, Direction::Covariant), sig("[2,0,2]"));
  EXPECT_EQ(transform_sym(sig("[1,2,3,4]"), Transform2::identity(), Direction::Contravariant),
            sig("[1,2,3,4]"));
}

TEST(TransformSym, AgreesWithTensorAndInverts) {
  std::mt19937 rng(5);
  const char* pool[] = {"0", "1", "-1", "2", "i", "1+i", "w(3)", "1/3"};
  for (int t = 0; t < 40; ++t) {
    Transform2 T{S(pool[rng() % 8]), S(pool[rng() % 8]), S(pool[rng() % 8]), S(pool[rng() % 8])};
    SymSig f;
    int k = 1 + rng() % 4;
    for (int j = 0; j <= k; ++j) f.values.push_back(S(pool[rng() % 8]));
    for (auto dir : {Direction::Contravariant, Direction::Covariant}) {
      EXPECT_EQ(sym_to_tensor(transform_sym(f, T, dir)), transform_gen(sym_to_tensor(f), T, dir));
    }
    if (T.invertible()) {
      EXPECT_EQ(transform_sym(transform_sym(f, T, Direction::Contravariant), T.inverse(),
                              Direction::Contravariant),
                f);
    }
  }
}

TEST(DecomposeRank2, Examples) {
  auto r = decompose_rank2(sig("[1,0,1,0]"));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->c1, Scalar::rational(1, 2));
  EXPECT_EQ(r->u[1], Scalar(1));
  EXPECT_EQ(r->c2, Scalar::rational(1, 2));
  EXPECT_EQ(r->v[1], Scalar(-1));
  auto d = decompose_rank2(sig("[2,0,0,2*i]"));
  ASSERT_TRUE(d);
  EXPECT_EQ(d->c1, Scalar(2));
  EXPECT_EQ(d->u[0], Scalar(1));
  EXPECT_TRUE(d->u[1].is_zero());
  EXPECT_EQ(d->c2, S("2*i"));
  EXPECT_TRUE(d->v[0].is_zero());
  EXPECT_FALSE(decompose_rank2(sig("[1,1,1,1]")));
  EXPECT_FALSE(decompose_rank2(sig("[1,1,0,0]")));  // double root: rank 3
  EXPECT_FALSE(decompose_rank2(sig("[1,0,0,0,0,1,0]")));
  for (const char* t : {"[0,1,0]", "[1,2,5]", "[0,1,3]", "[1,0,0,0,1]", "[3,1,3,1,3]"}) {
    auto x = decompose_rank2(sig(t));
    ASSERT_TRUE(x) << t;
    SymSig a = power_sig(x->u, sig(t).arity(), x->c1), b = power_sig(x->v, sig(t).arity(), x->c2);
    for (std::size_t j = 0; j < a.values.size(); ++j) a[j] += b[j];
    EXPECT_EQ(a, sig(t)) << t;
  }
}

TEST(BinaryFactor, Examples) {
  auto check = [](const char* t) {
    Transform2 T = binary_factor(sig(t));
    EXPECT_EQ(transform_sym(sig("[1,0,1]"), T, Direction::Covariant), sig(t)) << t;
    return T;
  };
  EXPECT_EQ(check("[1,0,1]"), Transform2::identity());
  EXPECT_EQ(check("[2,0,2]"), M("[[1,1],[1,-1]]"));
  EXPECT_EQ(check("[0,1,0]"), M("[[1,1/2],[i,-i/2]]"));
  for (const char* t : {"[1,2,3]", "[0,1,1]", "[3,1,0]", "[i,0,1]", "[2,1,5]", "[7,1,2]"}) check(t);
  EXPECT_THROW(binary_factor(sig("[1,1,1]")), PreconditionError);
}

TEST(OrthogonalReduce, Examples) {
  auto r = orthogonal_reduce(sig("[0,1,4,12]"));
  EXPECT_EQ(r.z, Scalar(-6));
  ASSERT_TRUE(r.exact());
  SymSig t = transform_sym(sig("[0,1,4,12]"), *r.T, Direction::Contravariant);
  EXPECT_TRUE(t[2].is_zero() && t[3].is_zero());
  EXPECT_EQ(t[0] / t[1], Scalar(-6));
  EXPECT_EQ(*r.T * *r.T, Transform2::identity());
  auto s = orthogonal_reduce(sig("[1,1,0,0]"));
  EXPECT_EQ(s.z, Scalar(-1));
  EXPECT_EQ(*s.T, M("[[1,0],[0,-1]]"));
  EXPECT_THROW(orthogonal_reduce(sig("[1,i,-1,-i]")), PreconditionError);
  EXPECT_THROW(orthogonal_reduce(sig("[0,1,2*i,-3]")), PreconditionError);
}

TEST(Literals, ParseAndRender) {
  EXPECT_EQ(render(sig("[ 1 , 0, i ,w(8)^3 ]")), "[1,0,i,w(8)^3]");
  auto g = parse_signature("table:[1,0,0,1]");
  ASSERT_TRUE(std::holds_alternative<GenSig>(g));
  EXPECT_EQ(std::get<GenSig>(g).arity, 2);
  EXPECT_EQ(std::get<SymSig>(parse_signature("=3")), sig("[1,0,0,1]"));
  EXPECT_THROW(parse_signature("table:[1,0,0]"), ParseError);
  EXPECT_THROW(parse_signature("1,2"), ParseError);
  EXPECT_THROW(parse_signature("[]"), ParseError);
  EXPECT_EQ(render(M("[[1,i],[0,w(3)]]")), "[[1,i],[0,w(3)]]");
}
