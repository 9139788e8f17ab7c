#include "holant/classify.hpp"

#include <algorithm>

namespace holant {

namespace {

// Y(p, q) for the symmetric bilinear form [[y0,y1],[y1,y2]].
Scalar bilinear(const SymSig& Y, const Vec2& p, const Vec2& q) {
  return Y[0] * p[0] * q[0] + Y[1] * (p[0] * q[1] + p[1] * q[0]) + Y[2] * p[1] * q[1];
}

Verdict tractable(std::string tag, Witness w = {}) {
  return {Outcome::Tractable, std::move(tag), std::move(w)};
}
Verdict hard(std::string tag) { return {Outcome::Hard, std::move(tag), {}}; }

SharedPair normalized_pair(SharedPair p) {
  if (p.case3) return {true, Scalar(0), Scalar(0)};
  if (!p.a.is_zero()) return {false, Scalar(1), p.b / p.a};
  return {false, Scalar(0), Scalar(1)};
}

// Column u of the double-root form and the exact T with X = T^{(x)3}[1,1,0,0].
Transform2 double_root_T(const DoubleRoot& d) {
  // columns t0 = [1, alpha], t1 = q t0 + A [0,1] with 1 + 3q = B
  Scalar q = (d.B - 1) / 3;
  return {Scalar(1), q, d.alpha, q * d.alpha + d.A};
}

Transform2 swap_conj(const Transform2& S) { return {S.d, S.c, S.b, S.a}; }

bool alpha_is_pm_i(const Scalar& alpha) { return (alpha * alpha + 1).is_zero(); }

std::optional<SharedPair> pair_for(const SymSig& X) {
  auto p = find_shared_pair({X});
  if (p) return normalized_pair(*p);
  return std::nullopt;
}

// Splits degenerate symmetric vertices into unaries (plus an arity-0 scale).
SignatureGrid split_degenerate(const SignatureGrid& g) {
  SignatureGrid out;
  std::vector<std::vector<Port>> where(g.vertices.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const GenSig& f = g.vertices[v].sig;
    auto s = tensor_to_sym(f);
    std::optional<Degenerate> d;
    if (f.arity >= 2 && s) d = degenerate_form(*s);
    if (!d) {
      int w = out.add_vertex(f);
      for (int p = 0; p < f.arity; ++p) where[v].push_back({w, p});
      continue;
    }
    out.add_vertex(GenSig(0, {d->lambda}));
    for (int p = 0; p < f.arity; ++p) where[v].push_back({out.add_vertex(SymSig{d->vec[0], d->vec[1]}), 0});
  }
  for (const auto& e : g.edges) {
    Port a = where[e.a.v][e.a.p], b = where[e.b.v][e.b.p];
    out.connect(a.v, a.p, b.v, b.p);
  }
  return out;
}

}  // namespace

std::array<bool, 4> cai_conditions(const Rank2& x, const SymSig& Y) {
  if (Y.arity() != 2) throw PreconditionError("cai_conditions needs a binary signature");
  Scalar yuu = bilinear(Y, x.u, x.u), yuv = bilinear(Y, x.u, x.v), yvv = bilinear(Y, x.v, x.v);
  std::array<bool, 4> c{};
  c[0] = (yuv * yuv - yuu * yvv).is_zero();
  c[1] = !yuv.is_zero() && (yuu * yvv + yuv * yuv).is_zero() &&
         (x.c1.pow(4) * yuu.pow(12) - x.c2.pow(4) * yuv.pow(12)).is_zero();
  c[2] = yuv.is_zero();
  c[3] = yuu.is_zero() && yvv.is_zero();
  return c;
}

Verdict classify_ternary(const SymSig& X) {
  if (X.arity() != 3) throw PreconditionError("classify_ternary needs an arity-3 signature");
  if (is_degenerate(X)) return tractable("degenerate");
  auto cat = categorize_ternary(X);
  if (auto* g = std::get_if<Generic>(&cat)) {
    auto c = cai_conditions(g->form);
    if (c[2]) return tractable("lemma-cai-3", *pair_for(X));
    if (c[3]) return tractable("lemma-cai-4", *pair_for(X));
    if (c[1]) {
      if (auto T = check_T_cover({X})) return tractable("lemma-cai-2", *T);
      return tractable("lemma-cai-2", g->form);
    }
    return hard("lemma-cai-hard");
  }
  const Scalar& alpha =
      std::holds_alternative<DoubleRoot>(cat) ? std::get<DoubleRoot>(cat).alpha : std::get<ReverseDoubleRoot>(cat).alpha;
  if (alpha_is_pm_i(alpha)) return tractable("double-root-±i", *pair_for(X));
  return hard("double-root-hard");
}

Verdict classify_ternary_bipartite(const SymSig& Y, const SymSig& X) {
  if (Y.arity() != 2 || X.arity() != 3)
    throw PreconditionError("classify_ternary_bipartite needs arities 2 and 3");
  if (is_degenerate(X)) return tractable("degenerate");
  auto cat = categorize_ternary(X);
  if (auto* g = std::get_if<Generic>(&cat)) {
    auto c = cai_conditions(g->form, Y);
    if (c[0] || c[1] || c[2] || c[3]) return tractable("bipartite-2", g->form);
    return hard("bipartite-hard");
  }
  if (auto* d = std::get_if<DoubleRoot>(&cat)) {
    if (bilinear(Y, {Scalar(1), d->alpha}, {Scalar(1), d->alpha}).is_zero())
      return tractable("bipartite-3", double_root_T(*d));
    return hard("bipartite-hard");
  }
  const auto& r = std::get<ReverseDoubleRoot>(cat);
  if (bilinear(Y, {r.alpha, Scalar(1)}, {r.alpha, Scalar(1)}).is_zero())
    return tractable("bipartite-4", swap_conj(double_root_T({r.alpha, r.A, r.B})));
  return hard("bipartite-hard");
}

Verdict classify_csp(const std::vector<GenSig>& F) {
  if (std::all_of(F.begin(), F.end(), [](const GenSig& f) { return in_affine(f).has_value(); }))
    return tractable("subset-A");
  if (std::all_of(F.begin(), F.end(), [](const GenSig& f) { return in_product(f).has_value(); }))
    return tractable("subset-P");
  return hard("csp-hard");
}

Verdict classify_holant_star(const std::vector<SymSig>& F) {
  std::vector<SymSig> core;
  for (const auto& f : F)
    if (f.arity() >= 2 && !is_degenerate(f)) core.push_back(f);
  if (core.empty()) return tractable("degenerate");
  if (std::all_of(core.begin(), core.end(), [](const SymSig& f) { return f.arity() <= 2; }))
    return tractable("holant-star-case-1");
  if (auto p = find_shared_pair(core)) {
    SharedPair n = normalized_pair(*p);
    return tractable(n.case3 ? "holant-star-case-3" : "holant-star-case-2", n);
  }
  return hard("holant-star-hard");
}

Verdict classify_bipartite_eq3(const SymSig& y, const std::vector<GenSig>& G1, const std::vector<GenSig>& G2,
                               const std::optional<SymSig>& u) {
  if (y.arity() != 2) throw PreconditionError("y must be binary");
  if (is_degenerate(y)) throw PreconditionError("y must be non-degenerate");
  Normalized ny = normalize_binary(y);
  const SymSig& yn = ny.sig;
  Transform2 Ti = ny.T.inverse();
  std::vector<GenSig> all = {sym_to_tensor(yn)};
  for (const auto& g : G1) all.push_back(transform_gen(g, ny.T, Direction::Covariant));
  for (const auto& g : G2) all.push_back(transform_gen(g, Ti, Direction::Contravariant));
  if (yn[0].is_zero() && yn[2].is_zero()) {
    if (!u || u->arity() != 1 || u->values[0].is_zero() || u->values[1].is_zero())
      throw PreconditionError("y = [0,*,0] needs a unary [a,b] with ab != 0");
    // the unary joined to =3 and two copies of y realizes [b,0,a] (up to scale)
    SymSig un = transform_sym(*u, ny.T, Direction::Covariant);
    SymSig reduced{un[1], Scalar(0), un[0]};
    all.push_back(sym_to_tensor(un));
    std::vector<GenSig> rest(all.begin() + 1, all.end());
    Verdict v = classify_bipartite_eq3(reduced, rest, {});
    if (v.tractable()) return classify_csp(all);
    return v;
  }
  bool in_cai = !yn[1].is_zero()
                    ? ((yn[0] * yn[2] + yn[1] * yn[1]).is_zero() && (yn[0].pow(12) - yn[1].pow(12)).is_zero())
                    : true;
  if (!in_cai) return hard("lemma-cai-hard");
  return classify_csp(all);
}

std::variant<SymSig, ExceptionReport> find_ternary(const std::vector<SymSig>& F) {
  std::optional<SymSig> mixed;  // a realizable unary [a,b] with ab != 0
  for (const auto& f : F)
    for (int j = 0; j + 1 <= f.arity() && !mixed; ++j)
      if (!f[j].is_zero() && !f[j + 1].is_zero()) mixed = SymSig{f[j], f[j + 1]};
  bool big = false;
  std::optional<SymSig> spread;  // [x0,0,...,0,xm], m > 3
  for (const auto& f : F) {
    if (f.arity() < 3 || is_degenerate(f)) continue;
    big = true;
    for (int j = 0; j + 3 <= f.arity(); ++j) {
      SymSig w{f[j], f[j + 1], f[j + 2], f[j + 3]};
      if (!is_degenerate(w)) return w;
    }
    if (!spread) spread = f;
  }
  if (!big) return ExceptionReport{1};
  if (mixed) {
    SymSig g = *spread;
    while (g.arity() > 3) g = pin(g, *mixed);
    return g;
  }
  return ExceptionReport{2};
}

Verdict classify_holant_c(const std::vector<SymSig>& F) {
  Verdict star = classify_holant_star(F);
  if (star.tractable()) return star;
  if (auto T = check_T_cover(F)) return tractable("T-cover", *T);
  return hard("hard");
}

std::vector<std::string> explain_holant_c(const std::vector<SymSig>& F) {
  std::vector<std::string> out;
  Verdict star = classify_holant_star(F);
  out.push_back("condition 1 (Holant*): " + std::string(star.tractable() ? "holds, " : "fails, ") + star.case_tag);
  auto T = check_T_cover(F);
  out.push_back("condition 2 (T-cover): " + (T ? "T = " + render(*T) : std::string("no T in the list")));
  auto t = find_ternary(F);
  if (auto* e = std::get_if<ExceptionReport>(&t)) {
    out.push_back("lm-exist-ternary: trivial case " + std::to_string(e->which) + ", Holant* is tractable");
    return out;
  }
  const SymSig& X = std::get<SymSig>(t);
  out.push_back("ternary X = " + render(X));
  auto cat = categorize_ternary(X);
  if (std::holds_alternative<Generic>(cat)) {
    out.push_back("generic X = T^{(x)3}[1,0,0,1]: thm-bipartite applies to ([1,0,1]T^{(x)2}, [1,0]T, [0,1]T | =3, T^{-1}F)");
    out.push_back("thm-bipartite: tractable iff T^{-1}F is in P (Holant*) or in A together with the unaries (T-cover)");
    return out;
  }
  const Scalar& alpha =
      std::holds_alternative<DoubleRoot>(cat) ? std::get<DoubleRoot>(cat).alpha : std::get<ReverseDoubleRoot>(cat).alpha;
  if (!alpha_is_pm_i(alpha)) {
    out.push_back("double root alpha = " + render(alpha) + ": Holant(X) is #P-hard (lemma-dichotomy-double-root)");
    return out;
  }
  // x_{k+2} + beta x_{k+1} - x_k = 0 with beta = -2 alpha (root alpha), or its reversal
  Scalar beta = std::holds_alternative<DoubleRoot>(cat) ? -2 * alpha : -2 / alpha;
  out.push_back("double root alpha = " + render(alpha) + ": Eq. (1) with coefficient " + render(beta));
  for (const auto& f : F) {
    if (f.arity() != 2 || is_degenerate(f)) continue;
    if (!(f[2] + beta * f[1] - f[0]).is_zero())
      out.push_back("lemma-double-root: " + render(f) + " violates y2 + a y1 - y0 = 0, #P-hard");
  }
  return out;
}

Scalar replay(const Verdict& v, const SignatureGrid& g) {
  if (!v.tractable()) throw PreconditionError("hard verdicts have no tractable route");
  if (const auto* p = std::get_if<SharedPair>(&v.witness)) return eval_vanishing(g, *p);
  if (const auto* T = std::get_if<Transform2>(&v.witness)) {
    if (v.case_tag == "T-cover" || v.case_tag == "lemma-cai-2") return eval_affine(transformed_network(g, *T));
  }
  if (v.case_tag == "degenerate" || v.case_tag == "holant-star-case-1") return eval_arity2(split_degenerate(g));
  if (v.case_tag == "subset-A") return eval_affine(to_network(g));
  if (v.case_tag == "subset-P") return eval_product(to_network(g));
  throw PreconditionError("verdict '" + v.case_tag + "' has no replayable witness");
}

}  // namespace holant
