#include "ogf/format.hpp"

#include <cmath>
#include <cstdio>

namespace ogf {

int decimal_digits_for_bits(int bits) {
  return static_cast<int>(std::ceil(bits * 0.3010299956639812)) + 1;
}

std::string format_real(const Real& x, int bits) {
  if (x.is_nan()) return "nan";
  if (x.is_inf()) return x.sign() > 0 ? "inf" : "-inf";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", decimal_digits_for_bits(bits), x.raw());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace ogf
