#pragma once

/**
 * @file grid.hpp
 * @brief Signature grids and gadgets: brute-force evaluation, composition,
 * bipartization, grid-level holographic transformation, named gadgets,
 * bounded gadget search and Vandermonde interpolation.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holant/signature.hpp"

namespace holant {

enum class Side { None, L, R };

struct Port {
  int v = 0, p = 0;
  friend bool operator==(const Port&, const Port&) = default;
};

struct Vertex {
  GenSig sig;
  Side side = Side::None;
  /// Non-empty for a placeholder binary filled in later (interpolation).
  std::string slot;
};

struct Edge {
  Port a, b;
};

struct Dangling {
  Port at;
  Side side = Side::None;
};

struct SignatureGrid {
  bool bipartite = false;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Dangling> dangling;

  int add_vertex(const SymSig& f, Side side = Side::None);
  int add_vertex(const GenSig& f, Side side = Side::None);
  int add_slot(const std::string& id, Side side = Side::None);
  void connect(int v, int p, int w, int q) { edges.push_back({{v, p}, {w, q}}); }
  /// The dangling edge takes the side of its vertex.
  void dangle(int v, int p) { dangling.push_back({{v, p}, vertices.at(v).side}); }
  bool closed() const { return dangling.empty(); }
  /// Throws PreconditionError describing the first violated invariant.
  void validate() const;
};

enum class Backend { Exact, Float };

/// Largest number of edges brute-force enumeration accepts (default 24).
int max_edges() noexcept;
void set_max_edges(int n) noexcept;

Scalar holant_brute(const SignatureGrid& g);
FloatScalar holant_brute_float(const SignatureGrid& g);

struct GadgetSignature {
  GenSig sig;
  std::optional<SymSig> symmetric;
};
/// Contraction over internal edges with dangling edges free, in dangling order.
GadgetSignature gadget_signature(const SignatureGrid& g);

/// Joins g1 and g2, turning each pair (dangling index in g1, in g2) into an
/// internal edge. Remaining danglings: g1's first, then g2's.
SignatureGrid compose(const SignatureGrid& g1, const SignatureGrid& g2,
                      const std::vector<std::pair<int, int>>& pairs);

/// Subdivides every internal edge by a [1,0,1] vertex on L; originals go to R.
SignatureGrid bipartize(const SignatureGrid& g);

/// L vertices become G T^{(x)r}, R vertices (T^{-1})^{(x)g} G.
SignatureGrid transform_grid(const SignatureGrid& g, const Transform2& T);

using Params = std::map<std::string, Scalar>;
/// fig-g0 (v), fig-gp1 (a, k), fig-gp2 (c, m odd), fig-gt1 (s = +-1),
/// fig-gt2 (s = +-1), lemma-equal-010 (a). The result is checked against
/// the claimed signature before it is returned.
SignatureGrid build_named_gadget(const std::string& name, const Params& params);
/// The signature each named gadget is claimed to realize.
SymSig named_gadget_claim(const std::string& name, const Params& params);
std::vector<std::string> named_gadgets();

/// Largest gadget search accepts (default 8 vertices).
int max_search_vertices() noexcept;
void set_max_search_vertices(int n) noexcept;

/// Smallest gadget (by vertex count, deterministic order) built from the
/// given parts whose signature is a nonzero multiple of target. With both
/// sides given the gadget is bipartite and its dangling edges leave from
/// `dangling_side`; with rhs empty the search is over untyped multigraphs.
std::optional<SignatureGrid> search_gadget(const SymSig& target, const std::vector<SymSig>& lhs,
                                           const std::vector<SymSig>& rhs, int max_vertices,
                                           Side dangling_side = Side::L);

/// Copy of g with every slot vertex named `slot` replaced by f.
SignatureGrid fill_slot(const SignatureGrid& g, const std::string& slot, const SymSig& f);
int slot_count(const SignatureGrid& g, const std::string& slot);

/// Holant of the template with [1,0,x] in the slot, recovered at x = at from
/// evaluations at the sample points by solving a Vandermonde system.
Scalar interpolate_family(const SignatureGrid& tmpl, const std::string& slot,
                          const std::vector<Scalar>& samples, const Scalar& at);
/// Same, with the sample values supplied by the caller; degree <= m.
Scalar interpolate_values(int m, const std::vector<Scalar>& xs, const std::vector<Scalar>& values,
                          const Scalar& at);

}  // namespace holant
