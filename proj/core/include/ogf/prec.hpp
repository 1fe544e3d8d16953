#pragma once

#include "ogf/errors.hpp"

namespace ogf {

// All numeric operations take their precision from one of these. Results
// are rounded to `bits`; internally everything runs at bits + guard_bits.
struct PrecisionContext {
  int bits = 128;
  int guard_bits = 32;

  int work() const { return bits + guard_bits; }
};

inline PrecisionContext make_precision(int bits, int guard_bits = 32) {
  if (bits < 53) throw DomainError("precision must be at least 53 bits");
  if (guard_bits < 0) throw DomainError("guard bits must be nonnegative");
  return PrecisionContext{bits, guard_bits};
}

}  // namespace ogf
