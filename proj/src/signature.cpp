#include "holant/signature.hpp"

#include <algorithm>
#include <numeric>

#include "holant/linalg.hpp"

namespace holant {

namespace {

Scalar binom(int n, int k) {
  if (k < 0 || k > n) return Scalar(0);
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Scalar(r);
}

// Canonical pair order: descending under canonical_less on (v0, v1).
bool vec_less(const Vec2& x, const Vec2& y) {
  if (!(x[0] == y[0])) return canonical_less(x[0], y[0]);
  return canonical_less(x[1], y[1]);
}

void order_pair(Rank2& r) {
  if (vec_less(r.u, r.v)) {
    std::swap(r.u, r.v);
    std::swap(r.c1, r.c2);
  }
}

// Projective roots (p, q) of a p^2 + b p q + c q^2 = 0, i.e. vectors whose
// tensor powers satisfy the recurrence. Returns one vector for a double root.
std::vector<Vec2> recurrence_roots(const std::array<Scalar, 3>& r) {
  const Scalar &a = r[0], &b = r[1], &c = r[2];
  Scalar disc = b * b - Scalar(4) * a * c;
  if (!c.is_zero()) {
    Scalar two_c = Scalar(2) * c;
    if (disc.is_zero()) return {Vec2{Scalar(1), -b / two_c}};
    Scalar s = adjoin_sqrt(disc);
    return {Vec2{Scalar(1), (-b + s) / two_c}, Vec2{Scalar(1), (-b - s) / two_c}};
  }
  // c = 0: p (a p + b q) = 0
  if (b.is_zero()) return {Vec2{Scalar(0), Scalar(1)}};
  return {Vec2{Scalar(0), Scalar(1)}, Vec2{Scalar(1), -a / b}};
}

// Solves f = c1 u^k + c2 v^k for independent u, v and verifies every entry.
std::optional<Rank2> fit_pair(const SymSig& f, const Vec2& u, const Vec2& v) {
  const int k = f.arity();
  SymSig pu = power_sig(u, k), pv = power_sig(v, k);
  Matrix m;
  std::vector<Scalar> rhs;
  for (int j = 0; j <= k; ++j) {
    m.push_back({pu[j], pv[j]});
    rhs.push_back(f[j]);
  }
  auto sol = solve_unique(m, rhs);
  if (!sol) return std::nullopt;
  Rank2 r{(*sol)[0], u, (*sol)[1], v};
  order_pair(r);
  return r;
}

}  // namespace

// ------------------------------------------------------------- basic types

bool SymSig::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const Scalar& s) { return s.is_zero(); });
}

SymSig SymSig::reversed() const {
  return SymSig(std::vector<Scalar>(values.rbegin(), values.rend()));
}

SymSig SymSig::scaled(const Scalar& c) const {
  SymSig r = *this;
  for (auto& x : r.values) x *= c;
  return r;
}

SymSig SymSig::equality(int k) {
  std::vector<Scalar> v(k + 1, Scalar(0));
  v.front() = 1;
  v.back() = 1;
  return SymSig(std::move(v));
}

GenSig::GenSig(int k, std::vector<Scalar> t) : arity(k), table(std::move(t)) {
  if (k < 0 || table.size() != (std::size_t{1} << k))
    throw PreconditionError("table length must be 2^arity");
}

const Scalar& GenSig::at(const std::vector<int>& bits) const {
  std::size_t idx = 0;
  for (int b : bits) idx = (idx << 1) | (b & 1);
  return table[idx];
}

Transform2 Transform2::inverse() const {
  Scalar dt = det();
  if (dt.is_zero()) throw PreconditionError("singular transformation");
  Scalar inv = dt.inverse();
  return {d * inv, -b * inv, -c * inv, a * inv};
}

Transform2 operator*(const Transform2& x, const Transform2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

GenSig sym_to_tensor(const SymSig& f) {
  const int k = f.arity();
  std::vector<Scalar> t(std::size_t{1} << k);
  for (std::size_t b = 0; b < t.size(); ++b) t[b] = f[std::popcount(b)];
  return GenSig(k, std::move(t));
}

std::optional<SymSig> tensor_to_sym(const GenSig& f) {
  std::vector<std::optional<Scalar>> v(f.arity + 1);
  for (std::size_t b = 0; b < f.table.size(); ++b) {
    auto& slot = v[std::popcount(b)];
    if (!slot)
      slot = f.table[b];
    else if (!(*slot == f.table[b]))
      return std::nullopt;
  }
  SymSig s;
  for (auto& x : v) s.values.push_back(*x);
  return s;
}

SymSig power_sig(const Vec2& v, int k, const Scalar& lambda) {
  SymSig s;
  for (int j = 0; j <= k; ++j) s.values.push_back(lambda * v[0].pow(k - j) * v[1].pow(j));
  return s;
}

// ------------------------------------------------------------- degeneracy

std::optional<Degenerate> degenerate_form(const SymSig& f) {
  const int k = f.arity();
  if (k < 0) return std::nullopt;
  Degenerate d;
  if (!f[0].is_zero()) {
    d.lambda = f[0];
    d.vec = {Scalar(1), f.arity() >= 1 ? f[1] / f[0] : Scalar(0)};
  } else {
    d.lambda = f[k];
    d.vec = {Scalar(0), Scalar(1)};
    if (k == 0) d.vec = {Scalar(1), Scalar(0)};
  }
  if (power_sig(d.vec, k, d.lambda) == f) return d;
  return std::nullopt;
}

bool is_degenerate(const SymSig& f) { return degenerate_form(f).has_value(); }

bool is_degenerate(const GenSig& f) {
  // rank-1 across every single-variable cut
  const int k = f.arity;
  for (int j = 0; j < k; ++j) {
    std::size_t bit = std::size_t{1} << (k - 1 - j);
    // rows indexed by x_j, columns by the rest; rank <= 1
    std::vector<std::pair<std::size_t, std::size_t>> cols;
    for (std::size_t b = 0; b < f.table.size(); ++b)
      if (!(b & bit)) cols.push_back({b, b | bit});
    for (std::size_t p = 0; p < cols.size(); ++p)
      for (std::size_t q = p + 1; q < cols.size(); ++q) {
        const Scalar& x0 = f.table[cols[p].first];
        const Scalar& x1 = f.table[cols[p].second];
        const Scalar& y0 = f.table[cols[q].first];
        const Scalar& y1 = f.table[cols[q].second];
        if (!(x0 * y1 == x1 * y0)) return false;
      }
  }
  // single-variable cuts of rank <= 1 for every variable force a full product
  return true;
}

std::vector<std::array<Scalar, 3>> recurrence_space(const SymSig& f) {
  const int k = f.arity();
  if (k < 2) throw PreconditionError("recurrence_space needs arity >= 2");
  Matrix m;
  for (int j = 0; j + 2 <= k; ++j) m.push_back({f[j], f[j + 1], f[j + 2]});
  std::vector<std::array<Scalar, 3>> out;
  for (auto& v : kernel(m, 3)) out.push_back({v[0], v[1], v[2]});
  return out;
}

// ------------------------------------------------------------- categories

std::optional<Scalar> Generic::lambda1() const {
  if (form.u[0].is_zero()) return std::nullopt;
  return form.u[1] / form.u[0];
}

std::optional<Scalar> Generic::lambda2() const {
  if (form.v[0].is_zero()) return std::nullopt;
  return form.v[1] / form.v[0];
}

TernaryCategory categorize_ternary(const SymSig& f) {
  if (f.arity() != 3) throw PreconditionError("categorize_ternary needs arity 3");
  if (is_degenerate(f)) throw PreconditionError("categorize_ternary needs a non-degenerate signature");
  auto space = recurrence_space(f);
  const auto& r = space.front();
  auto roots = recurrence_roots(r);
  if (roots.size() == 2) {
    auto fit = fit_pair(f, roots[0], roots[1]);
    if (!fit) throw std::logic_error("recurrence roots do not fit the signature");
    return Generic{*fit};
  }
  if (!r[2].is_zero()) {
    Scalar alpha = roots[0][1];
    Scalar B = f[0];
    Scalar A = f[1] - B * alpha;
    return DoubleRoot{alpha, A, B};
  }
  // double root at [0,1]: the reversal has a double root at 0
  SymSig rev = f.reversed();
  Scalar B = rev[0];
  Scalar A = rev[1];
  return ReverseDoubleRoot{Scalar(0), A, B};
}

SymSig reconstruct(const TernaryCategory& c) {
  if (auto g = std::get_if<Generic>(&c)) {
    SymSig a = power_sig(g->form.u, 3, g->form.c1), b = power_sig(g->form.v, 3, g->form.c2);
    for (int j = 0; j <= 3; ++j) a[j] += b[j];
    return a;
  }
  auto dr = [](const Scalar& alpha, const Scalar& A, const Scalar& B) {
    // k * alpha^{k-1} is taken as 0 at k = 0, and alpha^0 = 1
    SymSig s;
    for (int k = 0; k <= 3; ++k) {
      Scalar term = k == 0 ? Scalar(0) : Scalar(k) * A * alpha.pow(k - 1);
      s.values.push_back(term + B * alpha.pow(k));
    }
    return s;
  };
  if (auto d = std::get_if<DoubleRoot>(&c)) return dr(d->alpha, d->A, d->B);
  const auto& rd = std::get<ReverseDoubleRoot>(c);
  return dr(rd.alpha, rd.A, rd.B).reversed();
}

// ------------------------------------------------------------- normalization

namespace {

// Exponent j in {0,1,2} with ratio * w3^j normalized, for a ratio x1/x0
// (unary, power 1) or y2/y0 (binary, power 2).
int normalizing_exponent(const Scalar& ratio, int power) {
  auto t = root_of_unity_order(ratio);
  if (!t || *t % 3 != 0 || (*t / 3) % 3 == 0) return 0;
  long tt = static_cast<long>(*t), tp = tt / 3;
  long s = 1;
  for (; s < tt; ++s)
    if (std::gcd(s, tt) == 1 && Scalar::zeta(static_cast<unsigned>(tt), s) == ratio) break;
  // 1 = 3u + t'v
  long v = 0;
  for (long cand = 0; cand < 3; ++cand)
    if (((tp * cand) % 3 + 3) % 3 == 1) v = cand;
  long k = ((s * v) % 3 + 3) % 3;  // ratio = w3^k * w_{t'}^l
  // multiply the ratio by w3^{power*j}; need k + power*j = 0 mod 3
  for (int j = 0; j < 3; ++j)
    if ((k + power * j) % 3 == 0) return j;
  return 0;
}

}  // namespace

bool is_normalized(const SymSig& y) {
  if (y[0].is_zero()) return true;
  const Scalar& last = y[y.arity()];
  auto t = root_of_unity_order(last / y[0]);
  return !(t && *t % 3 == 0 && (*t / 3) % 3 != 0);
}

Normalized normalize_binary(const SymSig& y) {
  if (y.arity() != 2) throw PreconditionError("normalize_binary needs arity 2");
  if (y[0].is_zero()) return {Transform2::identity(), y};
  int j = normalizing_exponent(y[2] / y[0], 2);
  Transform2 T = Transform2::diag(1, Scalar::zeta(3, j));
  return {T, transform_sym(y, T, Direction::Covariant)};
}

Normalized normalize_unary(const SymSig& x) {
  if (x.arity() != 1) throw PreconditionError("normalize_unary needs arity 1");
  if (x[0].is_zero()) return {Transform2::identity(), x};
  int j = normalizing_exponent(x[1] / x[0], 1);
  Transform2 T = Transform2::diag(1, Scalar::zeta(3, j));
  return {T, transform_sym(x, T, Direction::Covariant)};
}

// ------------------------------------------------------------- pinning, transforms

SymSig pin(const SymSig& f, const SymSig& u) {
  if (f.arity() < 1) throw PreconditionError("cannot pin an arity-0 signature");
  if (u.arity() != 1) throw PreconditionError("pin needs a unary signature");
  SymSig g;
  for (int j = 0; j < f.arity(); ++j) g.values.push_back(u[0] * f[j] + u[1] * f[j + 1]);
  return g;
}

SymSig transform_sym(const SymSig& f, const Transform2& T0, Direction dir) {
  const Transform2 T = dir == Direction::Covariant ? T0.transpose() : T0;
  const int k = f.arity();
  // f'_j = sum_{s,t} C(k-j,s) C(j,t) a^{k-j-s} b^s c^{j-t} d^t f_{s+t}
  std::vector<Scalar> pa(k + 1), pb(k + 1), pc(k + 1), pd(k + 1);
  pa[0] = pb[0] = pc[0] = pd[0] = 1;
  for (int e = 1; e <= k; ++e) {
    pa[e] = pa[e - 1] * T.a;
    pb[e] = pb[e - 1] * T.b;
    pc[e] = pc[e - 1] * T.c;
    pd[e] = pd[e - 1] * T.d;
  }
  SymSig out;
  for (int j = 0; j <= k; ++j) {
    Scalar acc;
    for (int s = 0; s <= k - j; ++s) {
      Scalar left = binom(k - j, s) * pa[k - j - s] * pb[s];
      if (left.is_zero()) continue;
      for (int t = 0; t <= j; ++t) {
        if (f[s + t].is_zero()) continue;
        Scalar right = binom(j, t) * pc[j - t] * pd[t];
        if (right.is_zero()) continue;
        acc += left * right * f[s + t];
      }
    }
    out.values.push_back(acc);
  }
  return out;
}

GenSig transform_gen(const GenSig& f, const Transform2& T0, Direction dir) {
  const Transform2 T = dir == Direction::Covariant ? T0.transpose() : T0;
  const int k = f.arity;
  std::vector<Scalar> cur = f.table;
  for (int j = 0; j < k; ++j) {
    std::size_t bit = std::size_t{1} << (k - 1 - j);
    std::vector<Scalar> next(cur.size());
    for (std::size_t b = 0; b < cur.size(); ++b) {
      if (b & bit) continue;
      const Scalar& x0 = cur[b];
      const Scalar& x1 = cur[b | bit];
      next[b] = T.a * x0 + T.b * x1;
      next[b | bit] = T.c * x0 + T.d * x1;
    }
    cur = std::move(next);
  }
  return GenSig(k, std::move(cur));
}

}  // namespace holant

namespace holant {

// ------------------------------------------------------------- rank two

std::optional<Rank2> decompose_rank2(const SymSig& f) {
  const int k = f.arity();
  if (k < 2) throw PreconditionError("decompose_rank2 needs arity >= 2");
  if (is_degenerate(f)) return std::nullopt;
  if (k == 2) {
    Rank2 r;
    if (!f[0].is_zero()) {
      r = {f[0], {Scalar(1), f[1] / f[0]}, f[2] - f[1] * f[1] / f[0], {Scalar(0), Scalar(1)}};
    } else if (!f[2].is_zero()) {
      // f = f2 [t,1]^2 - f2 t^2 [1,0]^2 with t = f1/f2 (t != 0, else degenerate)
      Scalar t = f[1] / f[2];
      r = {f[2] * t * t, {Scalar(1), t.inverse()}, -f[2] * t * t, {Scalar(1), Scalar(0)}};
    } else {
      Scalar h = f[1] / Scalar(2);
      r = {h, {Scalar(1), Scalar(1)}, -h, {Scalar(1), Scalar(-1)}};
    }
    order_pair(r);
    return r;
  }
  auto space = recurrence_space(f);
  if (space.size() != 1) return std::nullopt;
  auto roots = recurrence_roots(space.front());
  if (roots.size() != 2) return std::nullopt;
  return fit_pair(f, roots[0], roots[1]);
}

// ------------------------------------------------------------- Gram factorization

namespace {

Transform2 from_columns(const Vec2& c0, const Vec2& c1) { return {c0[0], c1[0], c0[1], c1[1]}; }

std::optional<Scalar> same_field_sqrt(const Scalar& x) {
  if (x.has_radical()) return std::nullopt;
  if (auto s = sqrt_in_field(x.base_part(), x.base_part().order())) return Scalar(*s);
  return std::nullopt;
}

}  // namespace

Transform2 binary_factor(const SymSig& y) {
  if (y.arity() != 2) throw PreconditionError("binary_factor needs arity 2");
  if (is_degenerate(y)) throw PreconditionError("binary_factor needs a non-degenerate signature");
  const Scalar &y0 = y[0], &y1 = y[1], &y2 = y[2];
  if (y0.is_zero() && y2.is_zero()) {
    Scalar h = y1 / Scalar(2);
    return from_columns({Scalar(1), Scalar::i()}, {h, -h * Scalar::i()});
  }
  if (y0.is_zero()) {
    // factor the mirrored signature and swap the columns
    Transform2 m = binary_factor(y.reversed());
    return {m.b, m.a, m.d, m.c};
  }
  Scalar det = y0 * y2 - y1 * y1;
  Scalar rdet = adjoin_sqrt(det);
  if (auto s = same_field_sqrt(y0)) {
    return from_columns({*s, Scalar(0)}, {y1 / *s, rdet / *s});
  }
  if (auto s = same_field_sqrt(y0 / Scalar(2))) {
    Vec2 c0{*s, *s};
    Scalar r = y1 / y0, beta = rdet / (Scalar(2) * *s);
    return from_columns(c0, {r * c0[0] + beta, r * c0[1] - beta});
  }
  // radical-free first column: p^2 + q^2 = y0
  Scalar p = (y0 + Scalar(1)) / Scalar(2);
  Scalar q = (y0 - Scalar(1)) / (Scalar(2) * Scalar::i());
  Scalar r = y1 / y0, beta = rdet / y0;
  return from_columns({p, q}, {r * p - beta * q, r * q + beta * p});
}

// ------------------------------------------------------------- orthogonal reduction

OrthogonalReduction orthogonal_reduce(const SymSig& f) {
  if (f.arity() != 3) throw PreconditionError("orthogonal_reduce needs arity 3");
  auto cat = categorize_ternary(f);
  auto d = std::get_if<DoubleRoot>(&cat);
  if (!d) throw PreconditionError("orthogonal_reduce needs a double-root ternary");
  const Scalar &alpha = d->alpha, &A = d->A, &B = d->B;
  Scalar one_a2 = Scalar(1) + alpha * alpha;
  if (one_a2.is_zero()) throw PreconditionError("orthogonal_reduce needs alpha != +-i");
  OrthogonalReduction out;
  // z = (u + 3w)/v with u^2 = 1 + alpha^2, the radical cancels
  out.z = -(B * one_a2 + Scalar(3) * alpha * A) / A;
  FloatScalar fa = alpha.approx();
  FloatScalar fu = std::sqrt(FloatScalar(1) + fa * fa);
  out.T_float = {FloatScalar(1) / fu, fa / fu, fa / fu, FloatScalar(-1) / fu};
  try {
    Scalar u = adjoin_sqrt(one_a2);
    Scalar ui = u.inverse();
    out.T = Transform2{ui, alpha * ui, alpha * ui, -ui};
  } catch (const CapabilityError&) {
    out.T.reset();
  }
  return out;
}

// ------------------------------------------------------------- text forms

namespace {

std::vector<std::string_view> split_top(std::string_view s) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_brackets(std::string_view s, std::string_view what) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError(std::string(what) + " must be written as [..]: '" + std::string(s) + "'");
  return s.substr(1, s.size() - 2);
}

std::vector<Scalar> parse_list(std::string_view s) {
  std::string_view body = strip_brackets(s, "signature");
  std::vector<Scalar> out;
  if (trim(body).empty()) throw ParseError("empty signature");
  for (auto part : split_top(body)) out.push_back(parse_scalar(trim(part)));
  return out;
}

}  // namespace

SymSig parse_symsig(std::string_view text) { return SymSig(parse_list(text)); }

std::variant<SymSig, GenSig> parse_signature(std::string_view text) {
  text = trim(text);
  if (text.substr(0, 6) == "table:") {
    auto v = parse_list(text.substr(6));
    std::size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0) throw ParseError("table length must be a power of two");
    int k = std::countr_zero(n);
    return GenSig(k, std::move(v));
  }
  if (text.size() > 1 && text[0] == '=') {
    std::string digits(trim(text.substr(1)));
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 3)
      throw ParseError("bad equality name '" + std::string(text) + "'");
    return SymSig::equality(std::stoi(digits));
  }
  return parse_symsig(text);
}

std::string render(const SymSig& f) {
  std::string s = "[";
  for (std::size_t j = 0; j < f.values.size(); ++j) {
    if (j) s += ',';
    s += render(f.values[j]);
  }
  return s + "]";
}

std::string render(const GenSig& f) {
  std::string s = "table:[";
  for (std::size_t j = 0; j < f.table.size(); ++j) {
    if (j) s += ',';
    s += render(f.table[j]);
  }
  return s + "]";
}

std::string render(const Transform2& T) {
  return "[[" + render(T.a) + "," + render(T.b) + "],[" + render(T.c) + "," + render(T.d) + "]]";
}

Transform2 parse_matrix(std::string_view text) {
  auto rows = split_top(strip_brackets(text, "matrix"));
  if (rows.size() != 2) throw ParseError("matrix must have two rows");
  auto r0 = parse_list(rows[0]), r1 = parse_list(rows[1]);
  if (r0.size() != 2 || r1.size() != 2) throw ParseError("matrix rows must have two entries");
  return {r0[0], r0[1], r1[0], r1[1]};
}

}  // namespace holant
