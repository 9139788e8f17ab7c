#pragma once

/**
 * @file classes.hpp
 * @brief Membership tests for the affine class A, the product class P, the
 * symmetric affine families F1, F2, F3, and the transformation family T.
 */

#include <optional>
#include <vector>

#include "holant/signature.hpp"

namespace holant {

/// lambda * chi_{AX=0} * i^{sum_j <alpha_j, X>} with X = (x_1..x_k, 1).
struct AffineForm {
  int arity = 0;
  std::vector<std::vector<int>> A;       // rows of length arity+1 over F2
  std::vector<std::vector<int>> alphas;  // vectors of length arity+1 over F2
  Scalar scale;
  Scalar evaluate(const std::vector<int>& bits) const;
};

std::optional<AffineForm> in_affine(const GenSig& f);
std::optional<AffineForm> in_affine(const SymSig& f);

struct ProductFactor {
  enum Kind { Unary, Equal, NotEqual } kind = Unary;
  int v = 0, w = 0;  // variables; w unused for Unary
  Vec2 unary;        // values at x_v = 0, 1
};

struct ProductForm {
  int arity = 0;
  std::vector<ProductFactor> factors;
  Scalar scale;
  Scalar evaluate(const std::vector<int>& bits) const;
};

std::optional<ProductForm> in_product(const GenSig& f);
std::optional<ProductForm> in_product(const SymSig& f);

enum class Family { F1 = 1, F2 = 2, F3 = 3 };

struct F123Witness {
  Family family = Family::F1;
  Scalar lambda;
  int r = 0;
  int k = 0;
  SymSig rebuild() const;
};

/// First witness in order F1, F2, F3; arity must be >= 1.
std::optional<F123Witness> in_F123(const SymSig& f);

/// The 28 representatives listed in the appendix, in order; with closed,
/// followed by their images under right multiplication by the group
/// generated by [[0,1],[1,0]] and diag(1,i), deduplicated up to scalars.
std::vector<Transform2> enumerate_T(bool closed = false);

/// [1,0,1]T^{(x)2}, [1,0]T and [0,1]T all in F1 u F2 u F3.
bool in_T(const Transform2& T);

/// Every T (up to scalars) with [1,0,1]T^{(x)2} proportional to y and
/// first row proportional to u whose second row is a unary of F1 u F2 u F3.
std::vector<Transform2> solve_T(const SymSig& y, const SymSig& u);

/// Same projective point: x = c y for some c != 0.
bool projectively_equal(const Transform2& x, const Transform2& y);

/// First T (identity, closed list, then extra candidates) with (T^{-1})^{(x)k} f in A
/// for every f in F.
std::optional<Transform2> check_T_cover(const std::vector<SymSig>& F,
                                        const std::vector<Transform2>& extra = {});
/// (T^{-1})^{(x)k} f is symmetric affine.
bool covered_by(const SymSig& f, const Transform2& T);

}  // namespace holant
