#include <cctype>
#include <string>

#include "qfp/error.hpp"
#include "qfp/poly.hpp"

namespace qfp {

namespace {

struct Alias {
  std::string text;
  int var;
};

// x1 <-> x_1: a trailing index may be written with or without an underscore.
std::vector<Alias> build_aliases(const std::vector<std::string>& vars) {
  std::vector<Alias> out;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const std::string& name = vars[v];
    out.push_back({name, static_cast<int>(v)});
    std::size_t k = name.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(name[k - 1]))) --k;
    if (k == 0 || k == name.size()) continue;
    if (name[k - 1] == '_') {
      out.push_back({name.substr(0, k - 1) + name.substr(k), static_cast<int>(v)});
    } else {
      out.push_back({name.substr(0, k) + "_" + name.substr(k), static_cast<int>(v)});
    }
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Ring& ring, std::vector<Alias> aliases)
      : s_(text), ring_(ring), aliases_(std::move(aliases)) {}

  Polynomial run() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty polynomial", pos_);
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    term(negative);
    for (;;) {
      skip();
      if (pos_ >= s_.size()) break;
      char c = peek();
      if (c != '+' && c != '-') throw ParseError(std::string("unexpected character '") + c + "'", pos_);
      ++pos_;
      term(c == '-');
    }
    return Polynomial::from_terms(ring_, std::move(terms_));
  }

 private:
  char peek() const { return s_[pos_]; }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::uint64_t natural(std::uint64_t modulus, bool* overflow) {
    std::uint64_t v = 0, exact = 0;
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      unsigned d = static_cast<unsigned>(s_[pos_] - '0');
      v = modulus ? (v * 10 + d) % modulus : v;
      if (exact <= 0xFFFFFFFFull) exact = exact * 10 + d;
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a natural number", pos_);
    if (overflow) *overflow = exact > 0xFFFF;
    return modulus ? v : exact;
  }

  bool at_factor() {
    skip();
    return pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_');
  }

  void factor(Monomial& m) {
    skip();
    std::size_t best = 0;
    int var = -1;
    for (const auto& a : aliases_) {
      if (a.text.size() > best && s_.compare(pos_, a.text.size(), a.text) == 0) {
        best = a.text.size();
        var = a.var;
      }
    }
    if (var < 0) {
      std::size_t end = pos_;
      while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
      throw ParseError("unknown variable '" + std::string(s_.substr(pos_, end - pos_)) + "'", pos_);
    }
    pos_ += best;
    std::uint64_t e = 1;
    skip();
    if (pos_ < s_.size() && peek() == '^') {
      ++pos_;
      skip();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(peek()))) {
        throw ParseError("malformed exponent", pos_);
      }
      std::size_t at = pos_;
      bool overflow = false;
      e = natural(0, &overflow);
      if (overflow) throw ParseError("exponent too large", at);
    }
    std::uint64_t total = m[var] + e;
    if (total > 0xFFFF) throw ParseError("exponent too large", pos_);
    m.set(var, static_cast<std::uint32_t>(total));
  }

  void term(bool negative) {
    skip();
    if (pos_ >= s_.size()) throw ParseError("expected a term", pos_);
    std::uint64_t coeff = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = natural(ring_.modulus(), nullptr);
      have_coeff = true;
    }
    Monomial m;
    bool have_factor = false;
    for (;;) {
      skip();
      bool star = false;
      if (pos_ < s_.size() && peek() == '*') {
        if (!have_coeff && !have_factor) throw ParseError("unexpected '*'", pos_);
        ++pos_;
        star = true;
      }
      if (!at_factor()) {
        if (star) throw ParseError("expected a variable after '*'", pos_);
        break;
      }
      factor(m);
      have_factor = true;
    }
    if (!have_coeff && !have_factor) throw ParseError("expected a term", pos_);
    std::uint64_t mod = ring_.modulus();
    coeff %= mod;
    if (negative) coeff = (mod - coeff) % mod;
    terms_.push_back({m, static_cast<std::uint32_t>(coeff)});
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  Ring ring_;
  std::vector<Alias> aliases_;
  std::vector<Term> terms_;
};

}  // namespace

Polynomial parse_poly(std::string_view text, Prime p, const std::vector<std::string>& vars) {
  if (vars.empty()) throw ArgumentError("no variables declared");
  Ring ring(p, static_cast<int>(vars.size()), CoeffRing::ModP, vars);
  return Parser(text, ring, build_aliases(vars)).run();
}

}  // namespace qfp
