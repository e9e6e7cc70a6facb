#include "hardy/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace hardy {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string format_complex(Complex c) {
  std::string out = format_double(c.real());
  const double im = c.imag() == 0.0 ? 0.0 : c.imag();
  if (!(im < 0.0) && !std::isnan(im)) out += '+';
  out += format_double(im);
  out += 'i';
  return out;
}

}  // namespace hardy
