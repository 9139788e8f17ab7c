#include <cctype>

#include "holant/scalar.hpp"

namespace holant {

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view s) : s_(s) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("scalar '" + std::string(s_) + "': " + what + " at offset " +
                     std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat_word(std::string_view w) {
    skip();
    if (s_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(s_.substr(start, pos_ - start));
  }

  Scalar expr() {
    Scalar v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  Scalar term() {
    Scalar v = factor();
    for (;;) {
      if (eat('*')) {
        v *= factor();
      } else if (eat('/')) {
        Scalar d = factor();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  Scalar factor() {
    Scalar base = atom();
    if (!eat('^')) return base;
    bool neg = eat('-');
    std::string e = digits();
    if (e.size() > 6) fail("exponent too large");
    long k = std::stol(e);
    if (neg && base.is_zero()) fail("division by zero");
    return base.pow(neg ? -k : k);
  }

  Scalar atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return Scalar(BigInt(digits()));
    if (eat('-')) return -atom();
    if (eat('(')) {
      Scalar v = expr();
      expect(')');
      return v;
    }
    if (eat_word("sqrt2")) return Cyclo::zeta(8) + Cyclo::zeta(8, 7);
    if (eat_word("sqrt(")) {
      Scalar v = expr();
      expect(')');
      return adjoin_sqrt(v);
    }
    if (eat_word("w(")) {
      std::string n = digits();
      expect(')');
      if (n.size() > 6) fail("root of unity order too large");
      unsigned k = static_cast<unsigned>(std::stoul(n));
      if (k == 0) fail("w(0) is not a root of unity");
      return Scalar::zeta(k);
    }
    if (eat('i')) return Scalar::i();
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text) { return ScalarParser(text).parse(); }

std::string render(const Scalar& z) {
  std::string a = z.base_part().to_string();
  if (!z.has_radical()) return a;
  std::string b = z.radical_coefficient().to_string();
  std::string d = z.radicand().to_string();
  std::string r = b == "1" ? "sqrt(" + d + ")" : "(" + b + ")*sqrt(" + d + ")";
  if (z.base_part().is_zero()) return r;
  return a + "+" + r;
}

}  // namespace holant
