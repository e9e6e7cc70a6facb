#include "hardy/literals.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "hardy/errors.hpp"

namespace hardy::literals {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

[[noreturn]] void fail(std::string_view what, std::string_view text) {
  throw ArgumentError(std::string(what) + ": '" + std::string(text) + "'");
}

double parse_signed(std::string_view text, std::string_view whole) {
  double sign = 1.0;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    sign = text.front() == '-' ? -1.0 : 1.0;
    text.remove_prefix(1);
  }
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) fail("bad number", whole);
  return sign * v;
}

/// Splits "head:rest" at the first ':'.
std::pair<std::string_view, std::string_view> head(std::string_view s) {
  const auto pos = s.find(':');
  if (pos == std::string_view::npos) return {s, {}};
  return {s.substr(0, pos), s.substr(pos + 1)};
}

std::vector<Complex> complex_list(std::string_view text) {
  std::vector<Complex> out;
  for (auto item : split(text, ',')) out.push_back(parse_complex(item));
  return out;
}

}  // namespace

double parse_real(std::string_view text) { return parse_signed(trim(text), text); }

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) fail("empty complex literal", text);
  if (s.back() != 'i') return {parse_signed(s, text), 0.0};

  const std::string_view body = s.substr(0, s.size() - 1);
  // split before the last sign that is not an exponent sign or the leading one
  std::size_t split_at = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  auto imag_of = [&](std::string_view t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_signed(t, text);
  };
  if (split_at == std::string_view::npos) return {0.0, imag_of(body)};
  return {parse_signed(body.substr(0, split_at), text), imag_of(body.substr(split_at))};
}

PiecewiseSymbol parse_boundary_symbol(std::string_view text) {
  const std::string_view s = trim(text);
  const auto factors = split(s, '*');
  if (factors.size() > 1) {
    PiecewiseSymbol acc = parse_boundary_symbol(factors.front());
    for (std::size_t i = 1; i < factors.size(); ++i) acc = acc * parse_boundary_symbol(factors[i]);
    return acc;
  }

  const auto [kind, rest] = head(s);
  if (kind == "const") return PiecewiseSymbol::constant(parse_complex(rest));
  if (kind == "mono") {
    const double n = parse_real(rest);
    if (n != std::floor(n) || std::abs(n) > 1e6) fail("monomial degree must be an integer", text);
    return PiecewiseSymbol::monomial(static_cast<int>(n));
  }
  if (kind == "step") {
    const auto parts = split(rest, ':');
    if (parts.empty() || parts.size() > 2) fail("expected step:angle[:height]", text);
    const Complex h = parts.size() == 2 ? parse_complex(parts[1]) : Complex{1.0, 0.0};
    return PiecewiseSymbol::step(parse_real(parts[0]), h);
  }
  if (kind == "poly") return PiecewiseSymbol::trig_polynomial(0, complex_list(rest));
  if (kind == "trig") {
    const auto [low, coeffs] = head(rest);
    const double n = parse_real(low);
    if (n != std::floor(n)) fail("lowest index must be an integer", text);
    return PiecewiseSymbol::trig_polynomial(static_cast<int>(n), complex_list(coeffs));
  }
  fail("unknown boundary symbol", text);
}

MultiplierSymbol parse_multiplier(std::string_view text) {
  const std::string_view s = trim(text);
  const auto [kind, rest] = head(s);
  if (kind == "const") return MultiplierSymbol::constant(parse_complex(rest));
  if (kind == "exp") return MultiplierSymbol::exponential(parse_complex(rest));
  if (kind == "series") {
    const auto parts = split(rest, ':');
    if (parts.size() != 2) fail("expected series:n:alpha", text);
    const double n = parse_real(parts[0]);
    if (n < 0 || n != std::floor(n) || n > 1e6) fail("series index must be a nonnegative integer", text);
    return MultiplierSymbol::series_term(static_cast<unsigned>(n), parse_real(parts[1]));
  }
  if (kind == "rational") {
    const auto parts = split(rest, '/');
    if (parts.size() != 2) fail("expected rational:p0,p1,.../q0,q1,...", text);
    return MultiplierSymbol::rational(complex_list(parts[0]), complex_list(parts[1]));
  }
  fail("unknown multiplier symbol", text);
}

EtaMap parse_eta(std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "eta-exp") return EtaMap::exp_cusp();
  const auto [kind, rest] = head(s);
  if (kind == "const") return EtaMap::constant(parse_complex(rest));
  if (kind == "poly") {
    const auto at = rest.find('@');
    if (at == std::string_view::npos) return EtaMap::polynomial(complex_list(rest));
    return EtaMap::polynomial(complex_list(rest.substr(0, at)), parse_real(rest.substr(at + 1)));
  }
  fail("unknown eta map", text);
}

}  // namespace hardy::literals
