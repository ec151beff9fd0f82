#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "bbx/numbers.hpp"

namespace bbx {

// GF(p^k) as polynomial residues modulo a fixed monic irreducible polynomial.
// Elements are vectors of k residues mod p, little-endian in the indeterminate.
// The modulus is deterministic for fixed (p, k): the lexicographically least
// monic irreducible, found by exhaustive search (desk scale keeps this cheap).
class Field {
 public:
  using Elem = std::vector<uint64_t>;

  uint64_t p = 0;
  unsigned k = 0;
  std::vector<uint64_t> mod_low;  // modulus = x^k + sum mod_low[i] x^i
  Bigint q;                       // p^k

  static Field make(uint64_t p, unsigned k);

  Elem zero() const { return Elem(k, 0); }
  Elem one() const {
    Elem e(k, 0);
    e[0] = 1 % p;
    return e;
  }
  Elem from_int(uint64_t v) const {
    Elem e(k, 0);
    e[0] = v % p;
    return e;
  }
  // Encode/decode an element as an integer in [0, p^k), base-p little-endian.
  Elem decode(uint64_t code) const {
    Elem e(k, 0);
    for (unsigned i = 0; i < k; ++i) {
      e[i] = code % p;
      code /= p;
    }
    return e;
  }
  uint64_t encode(const Elem& a) const {
    uint64_t code = 0;
    for (unsigned i = k; i-- > 0;) code = code * p + a[i];
    return code;
  }

  bool is_zero(const Elem& a) const {
    return std::all_of(a.begin(), a.end(), [](uint64_t c) { return c == 0; });
  }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(k);
    for (unsigned i = 0; i < k; ++i) r[i] = addm(a[i], b[i]);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(k);
    for (unsigned i = 0; i < k; ++i) r[i] = subm(a[i], b[i]);
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r(k);
    for (unsigned i = 0; i < k; ++i) r[i] = a[i] ? p - a[i] : 0;
    return r;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    // Schoolbook product, then reduction by the monic modulus.
    std::vector<uint64_t> prod(2 * k - 1, 0);
    for (unsigned i = 0; i < k; ++i) {
      if (!a[i]) continue;
      for (unsigned j = 0; j < k; ++j) {
        if (!b[j]) continue;
        prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
      }
    }
    for (unsigned d = 2 * k - 2; d >= k; --d) {
      uint64_t c = prod[d];
      if (c) {
        prod[d] = 0;
        for (unsigned j = 0; j < k; ++j) {
          if (mod_low[j])
            prod[d - k + j] = subm(prod[d - k + j], c * mod_low[j] % p);
        }
      }
      if (d == k) break;
    }
    prod.resize(k);
    return prod;
  }

  Elem inv(const Elem& a) const {
    if (is_zero(a)) throw Precondition("field inverse of zero");
    if (k == 1) return Elem{inv_mod_p(a[0])};
    // Extended Euclid over GF(p)[x] against the modulus.
    std::vector<uint64_t> r0 = full_modulus(), r1 = trim(a);
    std::vector<uint64_t> s0 = {0}, s1 = {1};
    while (!(r1.size() == 1 && r1[0] == 0)) {
      auto [quot, rem] = poly_divmod(r0, r1);
      auto s2 = poly_sub(s0, poly_mul(quot, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 is now a nonzero constant gcd.
    uint64_t c = inv_mod_p(r0[0]);
    Elem out(k, 0);
    for (size_t i = 0; i < s0.size() && i < k; ++i) out[i] = s0[i] * c % p;
    return out;
  }

  Elem pow(Elem base, Bigint e) const {
    if (e < 0) {
      base = inv(base);
      e = -e;
    }
    Elem acc = one();
    while (e > 0) {
      if (boost::multiprecision::bit_test(e, 0)) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  // Least primitive element of GF(q)*, deterministic.  Uses trial-division
  // factoring of q-1, which is fine at desk scale (backend side only).
  Elem primitive_element() const {
    FactoredInteger f = factor_small(q - 1, q);
    for (uint64_t code = 1;; ++code) {
      Elem g = decode(code);
      if (is_zero(g)) continue;
      bool prim = true;
      for (const auto& [r, e] : f.factors) {
        (void)e;
        if (eq(pow(g, (q - 1) / r), one())) {
          prim = false;
          break;
        }
      }
      if (prim) return g;
    }
  }

 private:
  uint64_t addm(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  uint64_t subm(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }

  uint64_t inv_mod_p(uint64_t a) const {
    // Extended Euclid on integers.
    int64_t t = 0, nt = 1;
    int64_t r = int64_t(p), nr = int64_t(a % p);
    while (nr != 0) {
      int64_t qq = r / nr;
      std::swap(t -= qq * nt, nt);
      std::swap(r -= qq * nr, nr);
    }
    if (r != 1) throw Precondition("not invertible mod p");
    return uint64_t(t < 0 ? t + int64_t(p) : t);
  }

  // --- dense polynomial helpers over GF(p), used by inv() and make() -------
  static std::vector<uint64_t> trim(std::vector<uint64_t> v) {
    while (v.size() > 1 && v.back() == 0) v.pop_back();
    return v;
  }
  std::vector<uint64_t> full_modulus() const {
    std::vector<uint64_t> f(mod_low);
    f.push_back(1);
    return f;
  }
  std::vector<uint64_t> poly_mul(const std::vector<uint64_t>& a,
                                 const std::vector<uint64_t>& b) const {
    std::vector<uint64_t> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (size_t j = 0; j < b.size(); ++j)
        r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return trim(r);
  }
  std::vector<uint64_t> poly_sub(const std::vector<uint64_t>& a,
                                 const std::vector<uint64_t>& b) const {
    std::vector<uint64_t> r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
      uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
      r[i] = subm(x, y);
    }
    return trim(r);
  }
  std::pair<std::vector<uint64_t>, std::vector<uint64_t>> poly_divmod(
      std::vector<uint64_t> a, const std::vector<uint64_t>& b) const {
    a = trim(a);
    std::vector<uint64_t> bb = trim(b);
    if (bb.size() == 1 && bb[0] == 0) throw Precondition("poly division by zero");
    std::vector<uint64_t> quot(
        a.size() >= bb.size() ? a.size() - bb.size() + 1 : 1, 0);
    uint64_t lead_inv = inv_mod_p(bb.back());
    while (a.size() >= bb.size() && !(a.size() == 1 && a[0] == 0)) {
      size_t shift = a.size() - bb.size();
      uint64_t c = a.back() * lead_inv % p;
      if (c) {
        quot[shift] = c;
        for (size_t i = 0; i < bb.size(); ++i)
          a[shift + i] = subm(a[shift + i], c * bb[i] % p);
      }
      a = trim(a);
      if (a.size() == 1 && a[0] == 0) break;
      if (a.size() < bb.size()) break;
    }
    return {trim(quot), trim(a)};
  }
  std::vector<uint64_t> poly_gcd(std::vector<uint64_t> a,
                                 std::vector<uint64_t> b) const {
    a = trim(a);
    b = trim(b);
    while (!(b.size() == 1 && b[0] == 0)) {
      auto [q_, r_] = poly_divmod(a, b);
      (void)q_;
      a = std::move(b);
      b = std::move(r_);
    }
    return a;
  }
  std::vector<uint64_t> poly_mulmod(const std::vector<uint64_t>& a,
                                    const std::vector<uint64_t>& b,
                                    const std::vector<uint64_t>& f) const {
    return poly_divmod(poly_mul(a, b), f).second;
  }
  std::vector<uint64_t> poly_powmod(std::vector<uint64_t> base, Bigint e,
                                    const std::vector<uint64_t>& f) const {
    std::vector<uint64_t> acc = {1};
    base = poly_divmod(base, f).second;
    while (e > 0) {
      if (boost::multiprecision::bit_test(e, 0)) acc = poly_mulmod(acc, base, f);
      base = poly_mulmod(base, base, f);
      e >>= 1;
    }
    return acc;
  }

  // Rabin's test: f of degree k is irreducible over GF(p) iff
  // x^(p^k) = x mod f and gcd(x^(p^(k/r)) - x, f) = 1 for every prime r | k.
  bool irreducible(const std::vector<uint64_t>& f) const {
    unsigned deg = unsigned(f.size() - 1);
    std::vector<uint64_t> x = {0, 1};
    std::vector<uint64_t> xq = poly_powmod(x, bigpow(p, deg), f);
    if (trim(poly_sub(xq, x)) != std::vector<uint64_t>{0}) return false;
    for (unsigned r = 2; r <= deg; ++r) {
      if (deg % r) continue;
      if (!is_prime_u64(r)) continue;
      auto xe = poly_powmod(x, bigpow(p, deg / r), f);
      auto g = poly_gcd(f, poly_sub(xe, x));
      if (g.size() != 1) return false;
    }
    return true;
  }

  friend Field field_make_impl(uint64_t, unsigned);
};

inline Field field_make_impl(uint64_t p, unsigned k) {
  Field F;
  F.p = p;
  F.k = k;
  F.q = bigpow(p, k);
  if (k == 1) {
    F.mod_low = {0};  // modulus x - 0; prime field fast path
    return F;
  }
  // Candidates ordered by their base-p encoding of the low coefficients;
  // the first irreducible wins, so the choice is reproducible everywhere.
  uint64_t span = 1;
  for (unsigned i = 0; i < k; ++i) span *= p;
  for (uint64_t code = 0; code < span; ++code) {
    std::vector<uint64_t> low(k);
    uint64_t c = code;
    for (unsigned i = 0; i < k; ++i) {
      low[i] = c % p;
      c /= p;
    }
    std::vector<uint64_t> f = low;
    f.push_back(1);
    if (F.irreducible(f)) {
      F.mod_low = low;
      return F;
    }
  }
  throw Error("no irreducible polynomial found (impossible)");
}

inline Field Field::make(uint64_t p, unsigned k) {
  if (!is_prime_u64(p)) throw Precondition("field characteristic must be prime");
  if (p == 2) throw Precondition("field characteristic must be odd");
  if (k < 1) throw Precondition("field degree must be positive");
  return field_make_impl(p, k);
}

}  // namespace bbx
