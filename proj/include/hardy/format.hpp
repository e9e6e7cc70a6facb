#pragma once

#include <string>

#include "hardy/types.hpp"

namespace hardy {

/// 17 significant digits, locale independent.
std::string format_double(double v);
/// `RE+IMi` / `RE-IMi`, the form accepted by literals::parse_complex.
std::string format_complex(Complex c);

}  // namespace hardy
