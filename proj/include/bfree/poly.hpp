#pragma once

// Polynomial utilities: arithmetic over Z and F_p, factorization over F_p
// (squarefree decomposition, distinct-degree and equal-degree splitting),
// Sylvester resultants/discriminants, and a Zassenhaus-style irreducibility
// test over Q for small degrees. Coefficients are stored lowest degree first.

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "bfree/bigint.hpp"
#include "bfree/errors.hpp"
#include "bfree/int_util.hpp"

namespace bfree {

using ZPoly = std::vector<Int>;   // empty vector = zero polynomial
using FpPoly = std::vector<i64>;  // coefficients in [0, p)

// ---------------------------------------------------------------------------
// Z[x]

inline void zp_trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int zp_deg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

inline ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  zp_trim(c);
  return c;
}

inline ZPoly zp_derivative(const ZPoly& f) {
  ZPoly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
  zp_trim(d);
  return d;
}

// Exact division of f by monic g; returns quotient, sets ok=false if the
// remainder is nonzero.
inline ZPoly zp_div_monic(const ZPoly& f, const ZPoly& g, bool& ok) {
  ok = true;
  ZPoly r = f, q;
  int dg = zp_deg(g);
  if (zp_deg(r) < dg) {
    for (const Int& c : r)
      if (c != 0) { ok = false; break; }
    return {};
  }
  q.assign(static_cast<size_t>(zp_deg(r) - dg) + 1, Int(0));
  for (int i = zp_deg(r); i >= dg; --i) {
    Int c = r[static_cast<size_t>(i)];
    if (c == 0) continue;
    q[static_cast<size_t>(i - dg)] = c;
    for (int j = 0; j <= dg; ++j) r[static_cast<size_t>(i - dg + j)] -= c * g[static_cast<size_t>(j)];
  }
  for (const Int& c : r)
    if (c != 0) { ok = false; break; }
  zp_trim(q);
  return q;
}

// Determinant by fraction-free (Bareiss) elimination; exact over Z.
inline Int bareiss_det(std::vector<std::vector<Int>> m) {
  size_t n = m.size();
  if (n == 0) return 1;
  Int prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

// Sylvester resultant Res(f, g).
inline Int zp_resultant(const ZPoly& f, const ZPoly& g) {
  int df = zp_deg(f), dg = zp_deg(g);
  if (df < 0 || dg < 0) return 0;
  if (df == 0) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), f[0].get_mpz_t(), static_cast<unsigned long>(dg));
    return r;
  }
  if (dg == 0) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), g[0].get_mpz_t(), static_cast<unsigned long>(df));
    return r;
  }
  size_t n = static_cast<size_t>(df + dg);
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
  for (int row = 0; row < dg; ++row)
    for (int j = 0; j <= df; ++j) m[static_cast<size_t>(row)][static_cast<size_t>(row + j)] = f[static_cast<size_t>(df - j)];
  for (int row = 0; row < df; ++row)
    for (int j = 0; j <= dg; ++j) m[static_cast<size_t>(dg + row)][static_cast<size_t>(row + j)] = g[static_cast<size_t>(dg - j)];
  return bareiss_det(std::move(m));
}

// Discriminant of a monic polynomial.
inline Int zp_discriminant_monic(const ZPoly& f) {
  int d = zp_deg(f);
  require(d >= 1, errc::invalid_argument, "discriminant of constant");
  if (d == 1) return 1;
  Int res = zp_resultant(f, zp_derivative(f));
  return (d % 4 == 2 || d % 4 == 3) ? -res : res;  // (-1)^{d(d-1)/2}
}

// ---------------------------------------------------------------------------
// F_p[x]  (p an odd or even prime below 2^31; coefficients in [0, p))

inline void fp_trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int fp_deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

inline FpPoly fp_from_z(const ZPoly& f, i64 p) {
  FpPoly r(f.size());
  Int pp(static_cast<long>(p));
  for (size_t i = 0; i < f.size(); ++i) {
    Int m = f[i] % pp;
    if (m < 0) m += pp;
    r[i] = static_cast<i64>(m.get_si());
  }
  fp_trim(r);
  return r;
}

inline FpPoly fp_add(const FpPoly& a, const FpPoly& b, i64 p) {
  FpPoly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    i64 v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    c[i] = v >= p ? v - p : v;
  }
  fp_trim(c);
  return c;
}

inline FpPoly fp_sub(const FpPoly& a, const FpPoly& b, i64 p) {
  FpPoly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    i64 v = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
    c[i] = v < 0 ? v + p : v;
  }
  fp_trim(c);
  return c;
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, i64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + i128(a[i]) * b[j]) % p;
  }
  fp_trim(c);
  return c;
}

inline i64 fp_inv(i64 a, i64 p) {
  i64 x, y;
  i64 g = ext_gcd(mod_floor(a, p), p, x, y);
  require(g == 1, errc::invalid_argument, "not invertible mod p");
  return mod_floor(x, p);
}

inline FpPoly fp_scale(const FpPoly& a, i64 c, i64 p) {
  FpPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = static_cast<i64>(i128(a[i]) * c % p);
  fp_trim(r);
  return r;
}

inline FpPoly fp_monic(const FpPoly& a, i64 p) {
  if (a.empty()) return a;
  return fp_scale(a, fp_inv(a.back(), p), p);
}

// quotient/remainder by nonzero divisor
inline std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b, i64 p) {
  int db = fp_deg(b);
  require(db >= 0, errc::invalid_argument, "division by zero polynomial");
  FpPoly r = a, q;
  if (fp_deg(r) < db) return {q, r};
  q.assign(static_cast<size_t>(fp_deg(r) - db) + 1, 0);
  i64 inv_lead = fp_inv(b.back(), p);
  for (int i = fp_deg(r); i >= db; --i) {
    i64 c = static_cast<i64>(i128(r[static_cast<size_t>(i)]) * inv_lead % p);
    if (c == 0) continue;
    q[static_cast<size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      size_t k = static_cast<size_t>(i - db + j);
      r[k] = static_cast<i64>(((i128)r[k] - i128(c) * b[static_cast<size_t>(j)]) % p);
      if (r[k] < 0) r[k] += p;
    }
  }
  fp_trim(r);
  fp_trim(q);
  return {q, r};
}

inline FpPoly fp_mod(const FpPoly& a, const FpPoly& b, i64 p) { return fp_divmod(a, b, p).second; }
inline FpPoly fp_div(const FpPoly& a, const FpPoly& b, i64 p) { return fp_divmod(a, b, p).first; }

inline FpPoly fp_gcd(FpPoly a, FpPoly b, i64 p) {
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, i64 p) {
  return fp_mod(fp_mul(a, b, p), m, p);
}

inline FpPoly fp_powmod(FpPoly base, const Int& exp, const FpPoly& m, i64 p) {
  FpPoly result{1};
  base = fp_mod(base, m, p);
  size_t nbits = mpz_sizeinbase(exp.get_mpz_t(), 2);
  if (exp == 0) return result;
  for (size_t i = nbits; i-- > 0;) {
    result = fp_mulmod(result, result, m, p);
    if (mpz_tstbit(exp.get_mpz_t(), i)) result = fp_mulmod(result, base, m, p);
  }
  return result;
}

// extended gcd: g monic with s*a + t*b = g
inline void fp_ext_gcd(const FpPoly& a, const FpPoly& b, i64 p, FpPoly& g, FpPoly& s, FpPoly& t) {
  FpPoly old_r = a, r = b;
  FpPoly old_s{1}, cur_s{};
  FpPoly old_t{}, cur_t{1};
  while (!r.empty()) {
    auto [q, rem] = fp_divmod(old_r, r, p);
    old_r = std::move(r);
    r = std::move(rem);
    FpPoly ns = fp_sub(old_s, fp_mul(q, cur_s, p), p);
    old_s = std::move(cur_s);
    cur_s = std::move(ns);
    FpPoly nt = fp_sub(old_t, fp_mul(q, cur_t, p), p);
    old_t = std::move(cur_t);
    cur_t = std::move(nt);
  }
  i64 lead = old_r.empty() ? 1 : old_r.back();
  i64 inv = fp_inv(lead, p);
  g = fp_scale(old_r, inv, p);
  s = fp_scale(old_s, inv, p);
  t = fp_scale(old_t, inv, p);
}

inline FpPoly fp_derivative(const FpPoly& f, i64 p) {
  FpPoly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(static_cast<i64>(i128(f[i]) * (i % p) % p));
  fp_trim(d);
  return d;
}

// f with f' = 0, i.e. f in F_p[x^p]: the unique p-th root (Frobenius fixes F_p).
inline FpPoly fp_pth_root(const FpPoly& f, i64 p) {
  FpPoly r;
  for (size_t i = 0; i < f.size(); i += static_cast<size_t>(p)) r.push_back(f[i]);
  fp_trim(r);
  return r;
}

// Squarefree decomposition in characteristic p: f = prod g_e^e with the g_e
// squarefree and pairwise coprime. f must be monic and nonconstant.
inline std::vector<std::pair<FpPoly, int>> fp_squarefree_decomp(const FpPoly& f, i64 p) {
  std::vector<std::pair<FpPoly, int>> out;
  if (fp_deg(f) <= 0) return out;
  FpPoly fd = fp_derivative(f, p);
  if (fd.empty()) {
    for (auto& [g, e] : fp_squarefree_decomp(fp_pth_root(f, p), p)) out.emplace_back(g, e * static_cast<int>(p));
    return out;
  }
  FpPoly a = fp_gcd(f, fd, p);
  FpPoly b = fp_div(f, a, p);
  int i = 1;
  while (fp_deg(b) > 0) {
    FpPoly c = fp_gcd(b, a, p);
    FpPoly d = fp_div(b, c, p);
    if (fp_deg(d) > 0) out.emplace_back(fp_monic(d, p), i);
    ++i;
    b = std::move(c);
    a = fp_div(a, b, p);
  }
  if (fp_deg(a) > 0) {
    for (auto& [g, e] : fp_squarefree_decomp(fp_pth_root(a, p), p)) out.emplace_back(g, e * static_cast<int>(p));
  }
  return out;
}

// Distinct-degree splitting of a squarefree monic g: (product, degree) pairs.
inline std::vector<std::pair<FpPoly, int>> fp_ddf(FpPoly g, i64 p) {
  std::vector<std::pair<FpPoly, int>> out;
  FpPoly x{0, 1};
  FpPoly h = fp_mod(x, g, p);
  int i = 0;
  while (fp_deg(g) >= 2 * (i + 1)) {
    ++i;
    h = fp_powmod(h, Int(static_cast<long>(p)), g, p);
    FpPoly d = fp_gcd(fp_sub(h, x, p), g, p);
    if (fp_deg(d) > 0) {
      out.emplace_back(d, i);
      g = fp_div(g, d, p);
      h = fp_mod(h, g, p);
    }
  }
  if (fp_deg(g) > 0) out.emplace_back(g, fp_deg(g));
  return out;
}

// Equal-degree splitting (Cantor-Zassenhaus) of h = product of distinct monic
// irreducibles of degree k. Deterministically seeded.
inline void fp_edf(const FpPoly& h, int k, i64 p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (fp_deg(h) == k) {
    out.push_back(h);
    return;
  }
  int n = fp_deg(h);
  while (true) {
    FpPoly a(static_cast<size_t>(n), 0);
    for (auto& c : a) c = static_cast<i64>(rng() % static_cast<u64>(p));
    fp_trim(a);
    if (fp_deg(a) < 1) continue;
    FpPoly d;
    if (p == 2) {
      FpPoly b = a, t = a;
      for (int i = 1; i < k; ++i) {
        t = fp_mulmod(t, t, h, p);
        b = fp_add(b, t, p);
      }
      d = fp_gcd(b, h, p);
    } else {
      Int e;
      mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
      e = (e - 1) / 2;
      FpPoly b = fp_powmod(a, e, h, p);
      d = fp_gcd(fp_sub(b, FpPoly{1}, p), h, p);
    }
    if (fp_deg(d) > 0 && fp_deg(d) < fp_deg(h)) {
      fp_edf(d, k, p, rng, out);
      fp_edf(fp_div(h, d, p), k, p, rng, out);
      return;
    }
  }
}

// Full factorization of a monic nonconstant f over F_p into monic
// irreducibles with multiplicities, deterministically ordered.
inline std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& f, i64 p) {
  require(fp_deg(f) >= 1, errc::invalid_argument, "factor of constant polynomial");
  require(f.back() == 1, errc::invalid_argument, "factor requires monic input");
  std::vector<std::pair<FpPoly, int>> out;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ static_cast<u64>(p));
  for (auto& [sq, mult] : fp_squarefree_decomp(f, p)) {
    for (auto& [prod, k] : fp_ddf(sq, p)) {
      std::vector<FpPoly> irr;
      fp_edf(prod, k, p, rng, irr);
      for (auto& g : irr) out.emplace_back(std::move(g), mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  // sanity: the product must reconstruct f
  FpPoly check{1};
  for (auto& [g, e] : out)
    for (int i = 0; i < e; ++i) check = fp_mul(check, g, p);
  require(check == f, errc::invalid_argument, "internal: mod-p factorization check failed");
  return out;
}

// ---------------------------------------------------------------------------
// Irreducibility over Q for monic integer polynomials (small degree):
// squarefree test via the discriminant, factorization mod a good prime,
// linear Hensel lifting past twice the Mignotte bound, subset recombination.

namespace detail {

inline ZPoly zmod_reduce(const ZPoly& f, const Int& q) {
  ZPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    r[i] = f[i] % q;
    if (r[i] < 0) r[i] += q;
  }
  zp_trim(r);
  return r;
}

inline ZPoly zmod_mul(const ZPoly& a, const ZPoly& b, const Int& q) { return zmod_reduce(zp_mul(a, b), q); }

inline ZPoly z_from_fp(const FpPoly& f) {
  ZPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = Int(static_cast<long>(f[i]));
  return r;
}

// One linear Hensel step per iteration: from f = G*H (mod p^m) to mod p^{m+1}.
// G, H monic; s*G + t*H = 1 (mod p).
inline void hensel_pair(const ZPoly& f, ZPoly& G, ZPoly& H, const FpPoly& s, const FpPoly& t, i64 p,
                        int steps) {
  Int pm(static_cast<long>(p));
  for (int m = 1; m < steps; ++m) {
    Int pm1 = pm * static_cast<long>(p);
    // e = (f - G*H)/p^m mod p
    ZPoly diff = zp_mul(G, H);
    ZPoly e_fp(std::max(f.size(), diff.size()), Int(0));
    for (size_t i = 0; i < e_fp.size(); ++i) {
      Int v = (i < f.size() ? f[i] : Int(0)) - (i < diff.size() ? diff[i] : Int(0));
      v /= pm;  // exact by induction
      e_fp[i] = v;
    }
    FpPoly e = fp_from_z(e_fp, p);
    FpPoly g_p = fp_from_z(G, p), h_p = fp_from_z(H, p);
    auto [q_te, u] = fp_divmod(fp_mul(t, e, p), g_p, p);
    FpPoly v = fp_mod(fp_add(fp_mul(s, e, p), fp_mul(q_te, h_p, p), p), h_p, p);
    // v reduced mod H keeps deg v < deg H (deg e < deg f ensures consistency)
    ZPoly du = z_from_fp(u), dv = z_from_fp(v);
    if (G.size() < du.size() + 0) G.resize(du.size(), Int(0));
    for (size_t i = 0; i < du.size(); ++i) G[i] += pm * du[i];
    if (H.size() < dv.size() + 0) H.resize(dv.size(), Int(0));
    for (size_t i = 0; i < dv.size(); ++i) H[i] += pm * dv[i];
    G = zmod_reduce(G, pm1);
    H = zmod_reduce(H, pm1);
    // monic leading coefficients survive reduction: deg u < deg G, deg v < deg H
    pm = pm1;
  }
}

// Lift the factorization f = prod g_i (mod p) to mod p^steps.
inline std::vector<ZPoly> hensel_lift_all(const ZPoly& f, const std::vector<FpPoly>& gs, i64 p, int steps) {
  Int q(static_cast<long>(p));
  Int qa;
  mpz_pow_ui(qa.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(steps));
  if (gs.size() == 1) return {zmod_reduce(f, qa)};
  FpPoly rest{1};
  for (size_t i = 1; i < gs.size(); ++i) rest = fp_mul(rest, gs[i], p);
  FpPoly g, s, t;
  fp_ext_gcd(gs[0], rest, p, g, s, t);  // s*gs0 + t*rest = 1
  require(fp_deg(g) == 0, errc::invalid_argument, "internal: hensel factors not coprime");
  ZPoly G = z_from_fp(gs[0]), H = z_from_fp(rest);
  hensel_pair(f, G, H, s, t, p, steps);
  std::vector<FpPoly> rest_gs(gs.begin() + 1, gs.end());
  std::vector<ZPoly> lifted = hensel_lift_all(H, rest_gs, p, steps);
  lifted.insert(lifted.begin(), std::move(G));
  return lifted;
}

}  // namespace detail

// Monic f of degree >= 1 with integer coefficients: is it irreducible over Q?
inline bool zp_is_irreducible_monic(const ZPoly& f, std::vector<i64>* witness_primes = nullptr) {
  int d = zp_deg(f);
  require(d >= 1 && f.back() == 1, errc::invalid_argument, "irreducibility test requires monic input");
  if (d == 1) return true;
  Int disc = zp_discriminant_monic(f);
  if (disc == 0) return false;  // not squarefree over Q
  // choose a prime not dividing the discriminant
  i64 p = 0;
  for (i64 cand = 2;; cand = (cand == 2 ? 3 : cand + 2)) {
    bool prime = cand >= 2;
    for (i64 q = 2; q * q <= cand; ++q)
      if (cand % q == 0) { prime = false; break; }
    if (!prime) continue;
    if (disc % static_cast<long>(cand) != 0) {
      p = cand;
      break;
    }
    require(cand < (1 << 22), errc::invalid_argument, "internal: no good prime found");
  }
  if (witness_primes) witness_primes->push_back(p);
  auto factors = fp_factor(fp_from_z(f, p), p);
  if (factors.size() == 1 && factors[0].second == 1 && fp_deg(factors[0].first) == d) return true;
  // Mignotte-style bound: |coeff of any monic factor| <= 2^d * (||f||_2 + 1)
  Int norm2 = 0;
  for (const Int& c : f) norm2 += c * c;
  Int bound = pow2(static_cast<unsigned long>(d)) * (sqrt(norm2) + 1);
  int steps = 1;
  Int qa(static_cast<long>(p));
  while (qa <= 2 * bound) {
    qa *= static_cast<long>(p);
    ++steps;
  }
  std::vector<FpPoly> gs;
  for (auto& [g, e] : factors) gs.push_back(g);  // squarefree mod p: all e == 1
  std::vector<ZPoly> lifted = detail::hensel_lift_all(detail::zmod_reduce(f, qa), gs, p, steps);
  size_t r = lifted.size();
  Int half = qa / 2;
  for (u64 mask = 1; mask + 1 < (1ull << r); ++mask) {
    ZPoly cand{Int(1)};
    for (size_t i = 0; i < r; ++i)
      if (mask & (1ull << i)) cand = detail::zmod_mul(cand, lifted[i], qa);
    for (Int& c : cand)
      if (c > half) c -= qa;  // symmetric range
    if (zp_deg(cand) == d || zp_deg(cand) == 0) continue;
    bool ok = false;
    zp_div_monic(f, cand, ok);
    if (ok) return false;
  }
  return true;
}

}  // namespace bfree

