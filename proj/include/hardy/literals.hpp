#pragma once

#include <string_view>

#include "hardy/symbols.hpp"

/// Text forms used by the command line and the Python module.
///
///   complex     `1`, `-2.5`, `0+1i`, `1-2i`, `3i`, `i`
///   boundary    `const:C`, `mono:n`, `step:angle:C`, `poly:c0,c1,...`,
///               and products `A*B` of those
///   multiplier  `const:C`, `exp:A` (e^{iAt}), `series:n:alpha`,
///               `rational:p0,p1,.../q0,q1,...` (ascending in t)
///   eta map     `const:C`, `poly:c0,c1,...[@eps]`, `eta-exp`
///
/// Parse failures throw ArgumentError.
namespace hardy::literals {

Complex parse_complex(std::string_view text);
double parse_real(std::string_view text);
PiecewiseSymbol parse_boundary_symbol(std::string_view text);
MultiplierSymbol parse_multiplier(std::string_view text);
EtaMap parse_eta(std::string_view text);

}  // namespace hardy::literals
