#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "bfree/errors.hpp"
#include "bfree/int_util.hpp"

namespace bfree {

using Int = mpz_class;
using Rat = mpq_class;

inline Int pow2(unsigned long k) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

// mpz_class lacks long long constructors; on this platform long is 64-bit.
inline Int zi(i64 v) { return Int(static_cast<long>(v)); }

inline Rat rat(i64 num, i64 den = 1) {
  Rat q{zi(num), zi(den)};
  q.canonicalize();
  return q;
}

inline i64 to_i64(const Int& v, const char* what = "big integer") {
  if (!v.fits_slong_p()) fail(errc::overflow, what);
  return static_cast<i64>(v.get_si());
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Decimal rendering of an exact rational, rounded half away from zero at
// `digits` places after the point. Report layer only; never used in math.
inline std::string decimal_string(const Rat& q, int digits) {
  Int num = q.get_num(), den = q.get_den();
  bool neg = num < 0;
  if (neg) num = -num;
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // round(num*scale/den), half away from zero
  Int scaled = num * scale * 2 + den;
  scaled /= den * 2;
  Int ipart = scaled / scale, fpart = scaled % scale;
  std::string out = neg && scaled != 0 ? "-" : "";
  out += ipart.get_str();
  if (digits > 0) {
    std::string f = fpart.get_str();
    out += "." + std::string(static_cast<size_t>(digits) - f.size(), '0') + f;
  }
  return out;
}

// Exact bracket on log2(n) for n >= 1: returns [lo, hi] with
// 2^lo <= n <= 2^hi and hi - lo <= 2^-frac_bits (earlier if the directed
// fixed-point interval becomes ambiguous, still a valid bracket).
// No floating point anywhere: fixed-point interval squaring.
inline std::pair<Rat, Rat> log2_bracket(const Int& n, int frac_bits = 32) {
  require(n >= 1, errc::invalid_argument, "log2 of nonpositive integer");
  const unsigned long e = mpz_sizeinbase(n.get_mpz_t(), 2) - 1;  // floor(log2 n)
  Int p2e = pow2(e);
  if (n == p2e) {
    Rat exact(static_cast<long>(e));
    return {exact, exact};
  }
  const unsigned long F = 2ul * static_cast<unsigned long>(frac_bits) + 16;
  // x = n/2^e in (1,2), as fixed point X/2^F with certified bounds
  Int numer = n << F;
  Int xlo = numer >> e;
  Int xhi = xlo + ((numer & (p2e - 1)) != 0 ? 1 : 0);
  Int two_fp = pow2(F + 1);
  Int acc = 0;  // emitted fraction bits
  int bits = 0;
  for (int i = 0; i < frac_bits; ++i) {
    xlo = (xlo * xlo) >> F;
    xhi = (xhi * xhi + pow2(F) - 1) >> F;
    if (xlo >= two_fp) {
      acc = acc * 2 + 1;
      xlo >>= 1;
      xhi = (xhi + 1) >> 1;
    } else if (xhi < two_fp) {
      acc = acc * 2;
    } else {
      break;  // interval straddles 2: stop with the bracket so far
    }
    ++bits;
  }
  Int denom = pow2(static_cast<unsigned long>(bits));
  Rat lo(Int(e) * denom + acc, denom);
  Rat hi(Int(e) * denom + acc + 1, denom);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

}  // namespace bfree
