#include "hardy/expression_parser.hpp"

#include <cctype>
#include <string>

#include "hardy/errors.hpp"
#include "hardy/literals.hpp"

namespace hardy::literals {
namespace {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  AlgebraExpression parse() {
    AlgebraExpression e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

private:
  AlgebraExpression expression() {
    AlgebraExpression acc = term();
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  AlgebraExpression term() {
    AlgebraExpression acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  AlgebraExpression factor() {
    AlgebraExpression e = primary();
    while (accept('\'')) e = adjoint(e);
    return e;
  }

  AlgebraExpression primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      AlgebraExpression e = expression();
      expect(')');
      return e;
    }
    if (c == '[') {
      ++pos_;
      AlgebraExpression a = expression();
      expect(',');
      AlgebraExpression b = expression();
      expect(']');
      return commutator(a, b);
    }
    if (c == '{') {
      ++pos_;
      const auto close = text_.find('}', pos_);
      if (close == std::string_view::npos) fail("unterminated scalar");
      const Complex factor_value = parse_complex(text_.substr(pos_, close - pos_));
      pos_ = close + 1;
      return factor_value * factor();
    }
    ++pos_;
    switch (c) {
      case 'I': return AlgebraExpression::identity();
      case 'T': return AlgebraExpression::toeplitz(parse_boundary_symbol(bracketed()));
      case 'D': return AlgebraExpression::multiplier(parse_multiplier(bracketed()));
      case 'C': return AlgebraExpression::composition(parse_eta(bracketed()));
      case 'P': return AlgebraExpression::composition(ParabolicParam(parse_complex(bracketed())));
      default: --pos_; fail("unknown generator");
    }
  }

  /// Contents of a balanced [...] group following a generator letter.
  std::string_view bracketed() {
    if (pos_ >= text_.size() || text_[pos_] != '[') fail("expected '['");
    const std::size_t start = ++pos_;
    int depth = 1;
    for (; pos_ < text_.size(); ++pos_) {
      if (text_[pos_] == '[') ++depth;
      if (text_[pos_] == ']' && --depth == 0) return text_.substr(start, pos_++ - start);
    }
    fail("unterminated '['");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ArgumentError(what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgebraExpression parse_expression(std::string_view text) { return Parser(text).parse(); }

}  // namespace hardy::literals
