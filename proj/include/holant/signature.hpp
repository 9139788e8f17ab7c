#pragma once

/**
 * @file signature.hpp
 * @brief Symmetric and general Boolean signatures, 2x2 transformations and
 * the single-signature algebra used by the classifiers.
 *
 * Index convention for GenSig: in a table index b, variable j (0-based) is
 * bit (k-1-j), i.e. variable 0 is the most significant bit.
 */

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "holant/scalar.hpp"

namespace holant {

using Vec2 = std::array<Scalar, 2>;

struct SymSig {
  std::vector<Scalar> values;  // f_0 .. f_k

  SymSig() = default;
  explicit SymSig(std::vector<Scalar> v) : values(std::move(v)) {}
  SymSig(std::initializer_list<Scalar> v) : values(v) {}

  int arity() const { return static_cast<int>(values.size()) - 1; }
  const Scalar& operator[](std::size_t j) const { return values[j]; }
  Scalar& operator[](std::size_t j) { return values[j]; }
  bool is_zero() const;
  SymSig reversed() const;
  SymSig scaled(const Scalar& c) const;
  /// [1,0,...,0,1] of the given arity.
  static SymSig equality(int k);
  friend bool operator==(const SymSig& a, const SymSig& b) { return a.values == b.values; }
};

struct GenSig {
  int arity = 0;
  std::vector<Scalar> table;  // 2^arity entries

  GenSig() : table{Scalar(1)} {}
  GenSig(int k, std::vector<Scalar> t);
  const Scalar& at(std::size_t idx) const { return table[idx]; }
  /// Value at an assignment given as one bit per variable.
  const Scalar& at(const std::vector<int>& bits) const;
  friend bool operator==(const GenSig& a, const GenSig& b) {
    return a.arity == b.arity && a.table == b.table;
  }
};

/// Row-major 2x2 matrix [[a, b], [c, d]].
struct Transform2 {
  Scalar a{1}, b{0}, c{0}, d{1};

  static Transform2 identity() { return {}; }
  static Transform2 diag(Scalar x, Scalar y) { return {std::move(x), 0, 0, std::move(y)}; }
  Scalar det() const { return a * d - b * c; }
  bool invertible() const { return !det().is_zero(); }
  Transform2 inverse() const;
  Transform2 transpose() const { return {a, c, b, d}; }
  Transform2 scaled(const Scalar& s) const { return {a * s, b * s, c * s, d * s}; }
  Vec2 apply(const Vec2& v) const { return {a * v[0] + b * v[1], c * v[0] + d * v[1]}; }
  friend Transform2 operator*(const Transform2& x, const Transform2& y);
  friend bool operator==(const Transform2& x, const Transform2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

enum class Direction { Contravariant, Covariant };

GenSig sym_to_tensor(const SymSig& f);
/// The symmetric form of a general signature, if it is symmetric.
std::optional<SymSig> tensor_to_sym(const GenSig& f);
/// Symmetric signature of lambda * v^{(x)k}.
SymSig power_sig(const Vec2& v, int k, const Scalar& lambda = Scalar(1));

struct Degenerate {
  Scalar lambda;
  Vec2 vec;  // first nonzero coordinate is 1
};
/// f = lambda [x,y]^{(x)k} when the Hankel matrix of f has rank <= 1.
std::optional<Degenerate> degenerate_form(const SymSig& f);
bool is_degenerate(const SymSig& f);
/// General signatures: degenerate iff a tensor product of unaries.
bool is_degenerate(const GenSig& f);

/// Kernel basis of a x_j + b x_{j+1} + c x_{j+2} = 0 (j = 0..k-2).
std::vector<std::array<Scalar, 3>> recurrence_space(const SymSig& f);

/// f = c1 u^{(x)k} + c2 v^{(x)k}, vectors normalized (first nonzero = 1).
struct Rank2 {
  Scalar c1;
  Vec2 u;
  Scalar c2;
  Vec2 v;
};

struct Generic {
  Rank2 form;
  /// lambda = u1/u0, or nullopt for u = [0,1].
  std::optional<Scalar> lambda1() const;
  std::optional<Scalar> lambda2() const;
};
struct DoubleRoot {
  Scalar alpha, A, B;  // x_k = A k alpha^{k-1} + B alpha^k
};
struct ReverseDoubleRoot {
  Scalar alpha, A, B;  // x_k = A (3-k) alpha^{2-k} + B alpha^{3-k}
};
using TernaryCategory = std::variant<Generic, DoubleRoot, ReverseDoubleRoot>;

TernaryCategory categorize_ternary(const SymSig& f);
/// Rebuilds the ternary signature described by a category.
SymSig reconstruct(const TernaryCategory& c);

struct Normalized {
  Transform2 T;  // element of T3: I, diag(1,w3) or diag(1,w3^2)
  SymSig sig;
};
/// y' = y T^{(x)2} with y' normalized.
Normalized normalize_binary(const SymSig& y);
/// [x0,x1] T with the result normalized.
Normalized normalize_unary(const SymSig& x);
bool is_normalized(const SymSig& y);

/// g_j = u0 f_j + u1 f_{j+1}.
SymSig pin(const SymSig& f, const SymSig& u);

SymSig transform_sym(const SymSig& f, const Transform2& T, Direction dir);
GenSig transform_gen(const GenSig& f, const Transform2& T, Direction dir);

std::optional<Rank2> decompose_rank2(const SymSig& f);

/// T0 with [1,0,1] T0^{(x)2} = y (Gram factorization T0^T T0 = [[y0,y1],[y1,y2]]).
Transform2 binary_factor(const SymSig& y);

struct OrthogonalReduction {
  Scalar z;
  /// The orthogonal T, when sqrt(1+alpha^2) is exactly representable.
  std::optional<Transform2> T;
  std::array<FloatScalar, 4> T_float;
  bool exact() const { return T.has_value(); }
};
/// For a DoubleRoot ternary with alpha != +-i: T^{(x)3} f is proportional to [z,1,0,0].
OrthogonalReduction orthogonal_reduce(const SymSig& f);

/// Signature literal "[e0, e1, ...]" (symmetric) or "table:[...]" (general).
std::variant<SymSig, GenSig> parse_signature(std::string_view text);
SymSig parse_symsig(std::string_view text);
std::string render(const SymSig& f);
std::string render(const GenSig& f);
std::string render(const Transform2& T);
/// Matrix literal "[[a,b],[c,d]]".
Transform2 parse_matrix(std::string_view text);

}  // namespace holant
