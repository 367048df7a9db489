#pragma once

// A monogenic order Z[theta] = Z[x]/(f) for monic irreducible f, with exact
// element arithmetic in the power basis 1, theta, ..., theta^{d-1}.
// Coordinates are 64-bit with overflow detection; construction-time data
// (reduction table, discriminant) is computed exactly in big integers.

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "bfree/bigint.hpp"
#include "bfree/errors.hpp"
#include "bfree/int_util.hpp"
#include "bfree/poly.hpp"

namespace bfree {

class FieldOrder;
using OrderHandle = std::shared_ptr<const FieldOrder>;

class FieldOrder {
 public:
  static constexpr int kDefaultDegreeCap = 6;

  // f_coeffs lowest degree first; monic, irreducible over Q, degree in [1, cap].
  static OrderHandle make(const std::vector<i64>& f_coeffs, int degree_cap = kDefaultDegreeCap) {
    require(!f_coeffs.empty() && f_coeffs.size() >= 2, errc::invalid_argument,
            "polynomial must have degree >= 1");
    int d = static_cast<int>(f_coeffs.size()) - 1;
    require(f_coeffs.back() == 1, errc::not_monic, "leading coefficient must be 1");
    require(d <= degree_cap, errc::degree_too_large,
            "degree " + std::to_string(d) + " exceeds cap " + std::to_string(degree_cap));
    ZPoly f(f_coeffs.size());
    for (size_t i = 0; i < f_coeffs.size(); ++i) f[i] = zi(f_coeffs[i]);
    require(zp_is_irreducible_monic(f), errc::reducible, "polynomial factors over the rationals");
    return OrderHandle(new FieldOrder(f_coeffs, d));
  }

  int degree() const { return d_; }
  const std::vector<i64>& poly() const { return f_; }
  const Int& discriminant() const { return disc_; }

  // theta^k in the power basis, 0 <= k <= 2(d-1)
  const std::vector<i64>& theta_power(int k) const { return pow_red_[static_cast<size_t>(k)]; }

  // structure constants: theta^i * theta^j, i,j < d
  const std::vector<i64>& mul_entry(int i, int j) const { return pow_red_[static_cast<size_t>(i + j)]; }

  bool same_as(const FieldOrder& other) const { return f_ == other.f_; }

 private:
  FieldOrder(std::vector<i64> f, int d) : f_(std::move(f)), d_(d) {
    ZPoly zf(f_.size());
    for (size_t i = 0; i < f_.size(); ++i) zf[i] = zi(f_[i]);
    disc_ = zp_discriminant_monic(zf);
    // theta^k reduced mod f, exact big-integer computation, stored as i64
    std::vector<ZPoly> pows;
    ZPoly cur{Int(1)};
    for (int k = 0; k <= 2 * (d_ - 1); ++k) {
      pows.push_back(cur);
      // multiply by theta: shift, then reduce the degree-d term via theta^d = -(f_0 + ... + f_{d-1} theta^{d-1})
      ZPoly next(cur.size() + 1, Int(0));
      for (size_t i = 0; i < cur.size(); ++i) next[i + 1] = cur[i];
      while (zp_deg(next) >= d_) {
        Int lead = next.back();
        next.pop_back();
        int dn = static_cast<int>(next.size());
        for (int i = 0; i < d_; ++i) {
          if (i >= dn) next.resize(static_cast<size_t>(i) + 1, Int(0));
          next[static_cast<size_t>(i)] -= lead * zi(f_[static_cast<size_t>(i)]);
        }
        zp_trim(next);
      }
      cur = std::move(next);
    }
    for (auto& pw : pows) {
      std::vector<i64> row(static_cast<size_t>(d_), 0);
      for (size_t i = 0; i < pw.size(); ++i) row[i] = to_i64(pw[i], "reduction table entry");
      pow_red_.push_back(std::move(row));
    }
  }

  std::vector<i64> f_;
  int d_;
  Int disc_;
  std::vector<std::vector<i64>> pow_red_;
};

inline void require_same_order(const OrderHandle& a, const OrderHandle& b) {
  require(a && b && (a.get() == b.get() || a->same_as(*b)), errc::invalid_argument,
          "elements belong to different orders");
}

class RingElement {
 public:
  RingElement(OrderHandle order, std::vector<i64> coords) : order_(std::move(order)), coords_(std::move(coords)) {
    require(static_cast<int>(coords_.size()) == order_->degree(), errc::invalid_argument,
            "coordinate vector length must equal the order degree");
  }

  static RingElement zero(const OrderHandle& o) { return {o, std::vector<i64>(static_cast<size_t>(o->degree()), 0)}; }

  static RingElement integer(const OrderHandle& o, i64 n) {
    std::vector<i64> c(static_cast<size_t>(o->degree()), 0);
    c[0] = n;
    return {o, std::move(c)};
  }

  static RingElement theta(const OrderHandle& o) {
    std::vector<i64> c(static_cast<size_t>(o->degree()), 0);
    if (o->degree() >= 2)
      c[1] = 1;
    else
      c[0] = -o->poly()[0];  // in a degree-1 order theta is the rational integer -f_0
    return {o, std::move(c)};
  }

  const OrderHandle& order() const { return order_; }
  const std::vector<i64>& coords() const { return coords_; }
  i64 coord(int i) const { return coords_[static_cast<size_t>(i)]; }

  bool is_zero() const {
    for (i64 c : coords_)
      if (c != 0) return false;
    return true;
  }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.order_->same_as(*b.order_) && a.coords_ == b.coords_;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < order_->degree(); ++i) {
      i64 c = coords_[static_cast<size_t>(i)];
      if (c == 0) continue;
      if (!first && c > 0) os << "+";
      if (i == 0) {
        os << c;
      } else {
        if (c == -1)
          os << "-";
        else if (c != 1)
          os << c << "*";
        os << "theta";
        if (i > 1) os << "^" << i;
      }
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  OrderHandle order_;
  std::vector<i64> coords_;
};

inline RingElement elem_add(const RingElement& a, const RingElement& b) {
  require_same_order(a.order(), b.order());
  std::vector<i64> c(a.coords().size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = checked_add(a.coords()[i], b.coords()[i]);
  return {a.order(), std::move(c)};
}

inline RingElement elem_sub(const RingElement& a, const RingElement& b) {
  require_same_order(a.order(), b.order());
  std::vector<i64> c(a.coords().size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = checked_sub(a.coords()[i], b.coords()[i]);
  return {a.order(), std::move(c)};
}

inline RingElement elem_neg(const RingElement& a) {
  std::vector<i64> c(a.coords().size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = checked_sub(0, a.coords()[i]);
  return {a.order(), std::move(c)};
}

// Product reduced mod f via the precomputed reduction table; exact, with
// overflow detection on the 64-bit result coordinates.
inline RingElement elem_mul(const RingElement& a, const RingElement& b) {
  require_same_order(a.order(), b.order());
  const FieldOrder& ord = *a.order();
  int d = ord.degree();
  std::vector<i128> conv(static_cast<size_t>(2 * d - 1), 0);
  for (int i = 0; i < d; ++i) {
    if (a.coord(i) == 0) continue;
    for (int j = 0; j < d; ++j) conv[static_cast<size_t>(i + j)] += i128(a.coord(i)) * b.coord(j);
  }
  std::vector<i128> acc(static_cast<size_t>(d), 0);
  for (int k = 0; k < 2 * d - 1; ++k) {
    if (conv[static_cast<size_t>(k)] == 0) continue;
    const auto& red = ord.theta_power(k);
    for (int t = 0; t < d; ++t) acc[static_cast<size_t>(t)] += conv[static_cast<size_t>(k)] * red[static_cast<size_t>(t)];
  }
  std::vector<i64> c(static_cast<size_t>(d));
  for (int t = 0; t < d; ++t) c[static_cast<size_t>(t)] = narrow_i64(acc[static_cast<size_t>(t)], "product coordinate");
  return {a.order(), std::move(c)};
}

// Determinant of the multiplication-by-a matrix: the field norm N(a).
inline Int elem_field_norm(const RingElement& a) {
  const FieldOrder& ord = *a.order();
  int d = ord.degree();
  std::vector<std::vector<Int>> m(static_cast<size_t>(d), std::vector<Int>(static_cast<size_t>(d), Int(0)));
  RingElement col = a;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = zi(col.coord(i));
    if (j + 1 < d) col = elem_mul(col, RingElement::theta(a.order()));
  }
  return bareiss_det(std::move(m));
}

}  // namespace bfree
