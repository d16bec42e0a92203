#include "p1/cli/expr.hpp"

#include <cctype>

#include "p1/error.hpp"

namespace p1::cli {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Real parse() {
    Real v = sum();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw DomainError("expression: " + msg + " at position " + std::to_string(i_));
  }

  Real sum() {
    Real v = product();
    for (;;) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }
  Real product() {
    Real v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) {
        const Real d = unary();
        if (d == 0) fail("division by zero");
        v /= d;
      } else return v;
    }
  }
  Real unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }
  Real primary() {
    skip();
    if (eat('(')) {
      Real v = sum();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) return number();
    if (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) {
      std::string id;
      while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) id += s_[i_++];
      if (id == "pi") return kPi;
      if (id == "e") return exp(Real(1));
      if (!eat('(')) fail("expected '(' after " + id);
      const Real a = sum();
      if (!eat(')')) fail("expected ')'");
      if (id == "exp") return exp(a);
      if (id == "sqrt") {
        if (a < 0) fail("sqrt of a negative number");
        return sqrt(a);
      }
      if (id == "ln") {
        if (!(a > 0)) fail("ln of a non-positive number");
        return log(a);
      }
      fail("unknown function " + id);
    }
    fail("expected a number");
  }
  Real number() {
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) ++i_;
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      std::size_t j = i_ + 1;
      if (j < s_.size() && (s_[j] == '+' || s_[j] == '-')) ++j;
      if (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
        i_ = j;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      }
    }
    return parse_real(s_.substr(start, i_ - start));
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

Real eval_expr(const std::string& text) { return Parser(text).parse(); }

}  // namespace p1::cli
