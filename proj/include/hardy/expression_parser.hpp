#pragma once

#include <string_view>

#include "hardy/operators.hpp"

namespace hardy::literals {

/// Expression literals:
///
///   expr    := term (('+' | '-') term)*
///   term    := factor ('*' factor)*
///   factor  := primary '\''*            (postfix ' is the adjoint)
///   primary := 'I' | 'T[' boundary ']' | 'D[' multiplier ']'
///            | 'C[' eta ']' | 'P[' complex ']' (parabolic C_{φ_a})
///            | '{' complex '}' factor     (scalar multiple)
///            | '(' expr ')' | '[' expr ',' expr ']' (commutator)
///
/// e.g. `[T[step:0:1], D[rational:1/1,1]]`, `T[const:1]*C[const:0+1i]`.
AlgebraExpression parse_expression(std::string_view text);

}  // namespace hardy::literals
