#pragma once

#include <cstdint>
#include <limits>
#include <numeric>

#include "bfree/errors.hpp"

namespace bfree {

using i64 = long long;
using u64 = unsigned long long;
using u32 = unsigned int;
using i128 = __int128;

inline bool fits_i64(i128 v) {
  return v >= std::numeric_limits<i64>::min() && v <= std::numeric_limits<i64>::max();
}

inline i64 narrow_i64(i128 v, const char* what) {
  if (!fits_i64(v)) fail(errc::overflow, what);
  return static_cast<i64>(v);
}

inline i64 checked_add(i64 a, i64 b) { return narrow_i64(i128(a) + b, "integer add"); }
inline i64 checked_sub(i64 a, i64 b) { return narrow_i64(i128(a) - b, "integer sub"); }
inline i64 checked_mul(i64 a, i64 b) { return narrow_i64(i128(a) * b, "integer mul"); }

// Floor/ceil division with sign-correct rounding.
inline i64 floor_div(i64 a, i64 b) {
  i64 q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

// Remainder with the sign of b; for b > 0 this is the representative in [0, b).
inline i64 mod_floor(i64 a, i64 b) {
  i64 m = a % b;
  if (m != 0 && ((m < 0) != (b < 0))) m += b;
  return m;
}

// g = gcd(a,b) >= 0 and x,y with a*x + b*y = g.
inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  i64 old_r = a, r = b;
  i64 old_x = 1, xx = 0;
  i64 old_y = 0, yy = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 t = old_r - q * r; old_r = r; r = t;
    t = old_x - q * xx; old_x = xx; xx = t;
    t = old_y - q * yy; old_y = yy; yy = t;
  }
  if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
  x = old_x; y = old_y;
  return old_r;
}

}  // namespace bfree
