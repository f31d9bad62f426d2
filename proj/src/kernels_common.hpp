#pragma once

#include <cmath>

namespace nlslab::kernels::detail {

// Exponent fast paths shared by both backends so equivalence tests compare
// like against like.  q is the exponent on |v|; m2 = |v|^2.
enum class PowKind { Mod2, Mod4, Mod1, Mod3, General };

inline PowKind classify_pow(double q) {
  if (q == 2.0) return PowKind::Mod2;
  if (q == 4.0) return PowKind::Mod4;
  if (q == 1.0) return PowKind::Mod1;
  if (q == 3.0) return PowKind::Mod3;
  return PowKind::General;
}

inline double pow_from_mod2(double m2, double q, PowKind kind) {
  switch (kind) {
    case PowKind::Mod2: return m2;
    case PowKind::Mod4: return m2 * m2;
    case PowKind::Mod1: return std::sqrt(m2);
    case PowKind::Mod3: return m2 * std::sqrt(m2);
    case PowKind::General: break;
  }
  return std::pow(m2, 0.5 * q);
}

}  // namespace nlslab::kernels::detail
