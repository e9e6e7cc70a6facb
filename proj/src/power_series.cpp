#include "hardy/power_series.hpp"

#include <algorithm>

#include "hardy/errors.hpp"

namespace hardy::series {

Series truncate(std::span<const Complex> a, std::size_t order) {
  Series out(order, Complex{});
  std::copy_n(a.begin(), std::min(order, a.size()), out.begin());
  return out;
}

Series add(std::span<const Complex> a, std::span<const Complex> b, std::size_t order) {
  Series out = truncate(a, order);
  for (std::size_t i = 0; i < std::min(order, b.size()); ++i) out[i] += b[i];
  return out;
}

Series scale(std::span<const Complex> a, Complex c, std::size_t order) {
  Series out = truncate(a, order);
  for (auto& v : out) v *= c;
  return out;
}

Series multiply(std::span<const Complex> a, std::span<const Complex> b, std::size_t order) {
  Series out(order, Complex{});
  const std::size_t na = std::min(order, a.size());
  const std::size_t nb = std::min(order, b.size());
  for (std::size_t i = 0; i < na; ++i) {
    if (a[i] == Complex{}) continue;
    const std::size_t limit = std::min(nb, order - i);
    for (std::size_t j = 0; j < limit; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Series reciprocal(std::span<const Complex> a, std::size_t order) {
  if (a.empty() || a[0] == Complex{})
    throw ArgumentError("power series reciprocal needs a nonzero constant term");
  Series out(order, Complex{});
  if (order == 0) return out;
  const Complex inv0 = 1.0 / a[0];
  out[0] = inv0;
  for (std::size_t n = 1; n < order; ++n) {
    Complex acc{};
    for (std::size_t k = 1; k <= std::min(n, a.size() - 1); ++k) acc += a[k] * out[n - k];
    out[n] = -acc * inv0;
  }
  return out;
}

Series divide(std::span<const Complex> num, std::span<const Complex> den, std::size_t order) {
  return multiply(num, reciprocal(den, order), order);
}

Series exp(std::span<const Complex> a, std::size_t order) {
  Series out(order, Complex{});
  if (order == 0) return out;
  out[0] = std::exp(a.empty() ? Complex{} : a[0]);
  for (std::size_t n = 1; n < order; ++n) {
    Complex acc{};
    for (std::size_t k = 1; k <= std::min(n, a.size() - 1); ++k)
      acc += static_cast<double>(k) * a[k] * out[n - k];
    out[n] = acc / static_cast<double>(n);
  }
  return out;
}

Series power(std::span<const Complex> a, unsigned n, std::size_t order) {
  Series out(order, Complex{});
  if (order == 0) return out;
  out[0] = 1.0;
  Series base = truncate(a, order);
  while (n > 0) {
    if (n & 1u) out = multiply(out, base, order);
    n >>= 1u;
    if (n > 0) base = multiply(base, base, order);
  }
  return out;
}

Complex evaluate(std::span<const Complex> a, Complex z) {
  Complex acc{};
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace hardy::series
