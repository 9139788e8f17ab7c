#pragma once

/**
 * @file tractable.hpp
 * @brief Polynomial-time evaluators: arity <= 2 grids, vanishing (shared
 * recurrence) grids, affine and product-type constraint networks, and a
 * dispatcher that picks an applicable route.
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holant/classes.hpp"
#include "holant/grid.hpp"

namespace holant {

struct ConstraintNetwork {
  int nvars = 0;
  std::vector<std::pair<GenSig, std::vector<int>>> constraints;
  void add(const GenSig& f, std::vector<int> vars);
  void add(const SymSig& f, std::vector<int> vars) { add(sym_to_tensor(f), std::move(vars)); }
};

/// Variables are the edges of a closed grid; each vertex is one constraint.
ConstraintNetwork to_network(const SignatureGrid& g);
/// Sum over all assignments; nvars is checked against max_edges().
Scalar network_brute(const ConstraintNetwork& n);

/// Case 2 of the Holant* theorem: a x_k + b x_{k+1} - a x_{k+2} = 0, or a
/// binary [2a l, b l, -2a l]. Case 3 (case3 set, a and b unused):
/// x_k + x_{k+2} = 0, or a binary [l, 0, l].
struct SharedPair {
  bool case3 = false;
  Scalar a, b;
};

/// Whether f may appear in a grid certified by p.
bool satisfies_pair(const SymSig& f, const SharedPair& p);
/// A pair certifying every non-degenerate signature of arity >= 2 in F.
std::optional<SharedPair> find_shared_pair(const std::vector<SymSig>& F);

Scalar eval_arity2(const SignatureGrid& g);
Scalar eval_vanishing(const SignatureGrid& g, const SharedPair& p);
Scalar eval_affine(const ConstraintNetwork& n);
Scalar eval_product(const ConstraintNetwork& n);

enum class Route { Arity2, Vanishing, Affine, Product, Brute };
std::string route_name(Route r);

struct AutoResult {
  Scalar value;
  Route route = Route::Brute;
  std::optional<SharedPair> pair;
  std::optional<Transform2> T;  // affine route: the covering transformation
};

/// Tries arity-2, shared-pair vanishing, T-cover + affine and product, in
/// that order, then brute force under the edge guard.
AutoResult eval_auto(const SignatureGrid& g);

/// The all-affine network Holant(=2 T^{(x)2} | T^{-1} F) for a closed grid.
ConstraintNetwork transformed_network(const SignatureGrid& g, const Transform2& T);

}  // namespace holant
