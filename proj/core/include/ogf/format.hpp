#pragma once

#include <string>

#include "ogf/complexhp.hpp"
#include "ogf/real.hpp"

namespace ogf {

// Decimal digits that faithfully carry `bits` of mantissa.
int decimal_digits_for_bits(int bits);

// Scientific-notation rendering with the digit count implied by `bits`.
// Deterministic: same value and bits always produce the same bytes.
std::string format_real(const Real& x, int bits);
std::string format_double(double x);

}  // namespace ogf
