#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bbx/field.hpp"

namespace bbx {

// Square matrix over GF(p^k).  Entries are stored row-major, each entry as k
// consecutive residues (the field element limbs).  All operations take the
// Field explicitly; Matrix itself is a dumb value type.
struct Matrix {
  unsigned dim = 0;
  std::vector<uint64_t> a;  // dim*dim*k limbs

  bool operator==(const Matrix& o) const = default;
};

namespace mat {

inline Field::Elem get(const Field& F, const Matrix& m, unsigned r, unsigned c) {
  const uint64_t* base = m.a.data() + (size_t(r) * m.dim + c) * F.k;
  return Field::Elem(base, base + F.k);
}

inline void set(const Field& F, Matrix& m, unsigned r, unsigned c,
                const Field::Elem& v) {
  uint64_t* base = m.a.data() + (size_t(r) * m.dim + c) * F.k;
  for (unsigned i = 0; i < F.k; ++i) base[i] = v[i];
}

inline Matrix zero(const Field& F, unsigned dim) {
  Matrix m;
  m.dim = dim;
  m.a.assign(size_t(dim) * dim * F.k, 0);
  return m;
}

inline Matrix identity(const Field& F, unsigned dim) {
  Matrix m = zero(F, dim);
  for (unsigned i = 0; i < dim; ++i) set(F, m, i, i, F.one());
  return m;
}

inline Matrix scalar(const Field& F, unsigned dim, const Field::Elem& s) {
  Matrix m = zero(F, dim);
  for (unsigned i = 0; i < dim; ++i) set(F, m, i, i, s);
  return m;
}

inline bool is_identity(const Field& F, const Matrix& m) {
  return m == identity(F, m.dim);
}

inline Matrix mul(const Field& F, const Matrix& x, const Matrix& y) {
  const unsigned d = x.dim;
  Matrix r = zero(F, d);
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) {
      Field::Elem acc = F.zero();
      for (unsigned l = 0; l < d; ++l) {
        Field::Elem xe = get(F, x, i, l);
        if (F.is_zero(xe)) continue;
        acc = F.add(acc, F.mul(xe, get(F, y, l, j)));
      }
      set(F, r, i, j, acc);
    }
  return r;
}

inline Matrix transpose(const Field& F, const Matrix& x) {
  Matrix r = zero(F, x.dim);
  for (unsigned i = 0; i < x.dim; ++i)
    for (unsigned j = 0; j < x.dim; ++j) set(F, r, j, i, get(F, x, i, j));
  return r;
}

inline Matrix scalar_mul(const Field& F, const Field::Elem& s, const Matrix& x) {
  Matrix r = zero(F, x.dim);
  for (unsigned i = 0; i < x.dim; ++i)
    for (unsigned j = 0; j < x.dim; ++j)
      set(F, r, i, j, F.mul(s, get(F, x, i, j)));
  return r;
}

// Gauss-Jordan inverse.  Throws on singular input (group elements are always
// invertible, so this signals backend misuse).
inline Matrix inverse(const Field& F, const Matrix& x) {
  const unsigned d = x.dim;
  Matrix left = x;
  Matrix right = identity(F, d);
  for (unsigned col = 0; col < d; ++col) {
    unsigned piv = col;
    while (piv < d && F.is_zero(get(F, left, piv, col))) ++piv;
    if (piv == d) throw Precondition("matrix not invertible");
    if (piv != col) {
      for (unsigned j = 0; j < d; ++j) {
        auto t = get(F, left, piv, j);
        set(F, left, piv, j, get(F, left, col, j));
        set(F, left, col, j, t);
        t = get(F, right, piv, j);
        set(F, right, piv, j, get(F, right, col, j));
        set(F, right, col, j, t);
      }
    }
    Field::Elem pinv = F.inv(get(F, left, col, col));
    for (unsigned j = 0; j < d; ++j) {
      set(F, left, col, j, F.mul(pinv, get(F, left, col, j)));
      set(F, right, col, j, F.mul(pinv, get(F, right, col, j)));
    }
    for (unsigned r = 0; r < d; ++r) {
      if (r == col) continue;
      Field::Elem c = get(F, left, r, col);
      if (F.is_zero(c)) continue;
      for (unsigned j = 0; j < d; ++j) {
        set(F, left, r, j, F.sub(get(F, left, r, j), F.mul(c, get(F, left, col, j))));
        set(F, right, r, j,
            F.sub(get(F, right, r, j), F.mul(c, get(F, right, col, j))));
      }
    }
  }
  return right;
}

inline Matrix pow(const Field& F, Matrix base, Bigint e) {
  if (e < 0) {
    base = inverse(F, base);
    e = -e;
  }
  Matrix acc = identity(F, base.dim);
  while (e > 0) {
    if (boost::multiprecision::bit_test(e, 0)) acc = mul(F, acc, base);
    base = mul(F, base, base);
    e >>= 1;
  }
  return acc;
}

// 2x2 convenience builders for the Steinberg matrices u(t), h(t), n(t).
inline Matrix sl2(const Field& F, const Field::Elem& a, const Field::Elem& b,
                  const Field::Elem& c, const Field::Elem& d) {
  Matrix m = zero(F, 2);
  set(F, m, 0, 0, a);
  set(F, m, 0, 1, b);
  set(F, m, 1, 0, c);
  set(F, m, 1, 1, d);
  return m;
}
inline Matrix sl2_u(const Field& F, const Field::Elem& t) {
  return sl2(F, F.one(), t, F.zero(), F.one());
}
inline Matrix sl2_v(const Field& F, const Field::Elem& t) {
  return sl2(F, F.one(), F.zero(), t, F.one());
}
inline Matrix sl2_h(const Field& F, const Field::Elem& t) {
  return sl2(F, t, F.zero(), F.zero(), F.inv(t));
}
inline Matrix sl2_n(const Field& F, const Field::Elem& t) {
  return sl2(F, F.zero(), t, F.neg(F.inv(t)), F.zero());
}

inline std::string key(const Field& F, const Matrix& m) {
  std::string s;
  s.reserve(m.a.size() * 4);
  for (uint64_t v : m.a) {
    // entries are residues < p < 2^32 at desk scale
    s.push_back(char(v & 0xff));
    s.push_back(char((v >> 8) & 0xff));
    s.push_back(char((v >> 16) & 0xff));
    s.push_back(char((v >> 24) & 0xff));
  }
  return s;
}

}  // namespace mat
}  // namespace bbx
