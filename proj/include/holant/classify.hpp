#pragma once

/**
 * @file classify.hpp
 * @brief Dichotomy classifiers: ternary Holant, 2-3 bipartite Holant, #CSP,
 * Holant*, bipartite Holant with =3, the ternary extractor and Holant^c.
 */

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "holant/classes.hpp"
#include "holant/tractable.hpp"

namespace holant {

enum class Outcome { Tractable, Hard };

using Witness = std::variant<std::monostate, Transform2, SharedPair, F123Witness, Rank2>;

struct Verdict {
  Outcome outcome = Outcome::Hard;
  std::string case_tag;
  Witness witness;
  bool tractable() const { return outcome == Outcome::Tractable; }
};

/// Conditions (1)-(4) of Holant([y0,y1,y2] | =3) for y = [1,0,1] T^{(x)2}
/// (or Y T^{(x)2}) where T has columns c1^{1/3} u, c2^{1/3} v. Evaluated
/// without the cube roots.
std::array<bool, 4> cai_conditions(const Rank2& x, const SymSig& Y = SymSig{1, 0, 1});

Verdict classify_ternary(const SymSig& X);
Verdict classify_ternary_bipartite(const SymSig& Y, const SymSig& X);
Verdict classify_csp(const std::vector<GenSig>& F);
Verdict classify_holant_star(const std::vector<SymSig>& F);
/// Holant(y u G1 | =3 u G2). When y = [0,*,0] a unary u = [a,b], ab != 0,
/// taken as a member of G1, is required.
Verdict classify_bipartite_eq3(const SymSig& y, const std::vector<GenSig>& G1,
                               const std::vector<GenSig>& G2,
                               const std::optional<SymSig>& u = std::nullopt);

struct ExceptionReport {
  int which = 1;  // trivial case of the ternary-existence lemma
};
/// A non-degenerate ternary realizable from F with [1,0] and [0,1] available.
std::variant<SymSig, ExceptionReport> find_ternary(const std::vector<SymSig>& F);

Verdict classify_holant_c(const std::vector<SymSig>& F);
/// Human-readable trace of the proof route for F (diagnostic only).
std::vector<std::string> explain_holant_c(const std::vector<SymSig>& F);

/// Evaluates a closed grid over the classified set along the route named by
/// the verdict's witness. PreconditionError when the verdict has no route.
Scalar replay(const Verdict& v, const SignatureGrid& g);

}  // namespace holant
