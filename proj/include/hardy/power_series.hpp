#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hardy/types.hpp"

/// Truncated power series arithmetic. A series is a coefficient vector
/// c[0] + c[1] z + ... + c[n-1] z^(n-1); every operation keeps the first
/// `order` coefficients.
namespace hardy::series {

using Series = std::vector<Complex>;

Series truncate(std::span<const Complex> a, std::size_t order);
Series add(std::span<const Complex> a, std::span<const Complex> b, std::size_t order);
Series scale(std::span<const Complex> a, Complex c, std::size_t order);
Series multiply(std::span<const Complex> a, std::span<const Complex> b, std::size_t order);
/// 1/a; requires a[0] != 0.
Series reciprocal(std::span<const Complex> a, std::size_t order);
Series divide(std::span<const Complex> num, std::span<const Complex> den, std::size_t order);
/// exp(a) through the recurrence n e_n = Σ k a_k e_{n-k}.
Series exp(std::span<const Complex> a, std::size_t order);
Series power(std::span<const Complex> a, unsigned n, std::size_t order);
/// Horner evaluation of the (finite) series at z.
Complex evaluate(std::span<const Complex> a, Complex z);

}  // namespace hardy::series
