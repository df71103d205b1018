#pragma once

// Two-dimensional algebras as 2x4 structure-constant matrices and the
// GL(2) change-of-basis action on them.  For a basis (e1, e2) the matrix
//
//     A = ( a1 a2 a3 a4 )
//         ( b1 b2 b3 b4 )
//
// lists the products column by column over the pairs (1,1),(1,2),(2,1),(2,2):
// ei * ej = A1_ij e1 + A2_ij e2.  A basis change by g in GL(2) acts as
// A |-> g A (g^{-1} (x) g^{-1}), computed here with exact matrix products.

#include <array>

#include "field.hpp"

namespace alg2d {

struct Vec2 {
  FieldElement x, y;
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  bool is_zero() const { return x.is_zero() && y.is_zero(); }
};

struct MSC {
  // Row-major: e[0..3] = a1..a4, e[4..7] = b1..b4.
  std::array<FieldElement, 8> e;

  const Field* field() const { return e[0].field(); }

  const FieldElement& a1() const { return e[0]; }
  const FieldElement& a2() const { return e[1]; }
  const FieldElement& a3() const { return e[2]; }
  const FieldElement& a4() const { return e[3]; }
  const FieldElement& b1() const { return e[4]; }
  const FieldElement& b2() const { return e[5]; }
  const FieldElement& b3() const { return e[6]; }
  const FieldElement& b4() const { return e[7]; }

  bool is_zero() const {
    for (const auto& v : e)
      if (!v.is_zero()) return false;
    return true;
  }

  static MSC zero(const Field* f) {
    MSC m;
    for (auto& v : m.e) v = f->zero();
    return m;
  }
  static MSC from_ints(const Field* f, const std::array<long, 8>& vals) {
    MSC m;
    for (std::size_t i = 0; i < 8; ++i) m.e[i] = f->from_int(vals[i]);
    return m;
  }

  friend bool operator==(const MSC& a, const MSC& b) { return a.e == b.e; }
  friend bool operator!=(const MSC& a, const MSC& b) { return !(a == b); }
};

inline MSC embed(const MSC& m, const Field* target) {
  MSC out;
  for (std::size_t i = 0; i < 8; ++i) out.e[i] = embed(m.e[i], target);
  return out;
}

// Invertible basis change; stores the forward matrix and its inverse so the
// action and its reversal are both exact single products.
class GL2 {
 public:
  FieldElement a, b, c, d;      // forward matrix g, row-major
  FieldElement ia, ib, ic, id;  // g^{-1}

  static GL2 identity(const Field* f) {
    return from_matrix(f->one(), f->zero(), f->zero(), f->one());
  }

  static GL2 from_matrix(const FieldElement& a, const FieldElement& b,
                         const FieldElement& c, const FieldElement& d) {
    const Field* f = a.field();
    if (b.field() != f || c.field() != f || d.field() != f)
      throw std::invalid_argument("GL2: mixed fields");
    FieldElement det = a * d - b * c;
    if (det.is_zero()) throw std::invalid_argument("GL2: singular matrix");
    FieldElement di = det.inv();
    GL2 g;
    g.a = a;
    g.b = b;
    g.c = c;
    g.d = d;
    g.ia = d * di;
    g.ib = -(b * di);
    g.ic = -(c * di);
    g.id = a * di;
    return g;
  }

  // Build from the entries of the inverse (xi1, eta1; xi2, eta2).
  static GL2 from_inverse(const FieldElement& xi1, const FieldElement& eta1,
                          const FieldElement& xi2, const FieldElement& eta2) {
    GL2 inv = from_matrix(xi1, eta1, xi2, eta2);
    return inv.inverse();
  }

  GL2 inverse() const {
    GL2 g;
    g.a = ia;
    g.b = ib;
    g.c = ic;
    g.d = id;
    g.ia = a;
    g.ib = b;
    g.ic = c;
    g.id = d;
    return g;
  }

  // Matrix product; inverse is the reversed product of inverses.
  friend GL2 operator*(const GL2& g, const GL2& h) {
    GL2 r;
    r.a = g.a * h.a + g.b * h.c;
    r.b = g.a * h.b + g.b * h.d;
    r.c = g.c * h.a + g.d * h.c;
    r.d = g.c * h.b + g.d * h.d;
    r.ia = h.ia * g.ia + h.ib * g.ic;
    r.ib = h.ia * g.ib + h.ib * g.id;
    r.ic = h.ic * g.ia + h.id * g.ic;
    r.id = h.ic * g.ib + h.id * g.id;
    return r;
  }

  Vec2 apply(const Vec2& u) const { return {a * u.x + b * u.y, c * u.x + d * u.y}; }

  const Field* field() const { return a.field(); }

  friend bool operator==(const GL2& g, const GL2& h) {
    return g.a == h.a && g.b == h.b && g.c == h.c && g.d == h.d;
  }
};

// Kronecker square M (x) M of a 2x2 matrix, row-major 4x4:
// K[2i+j][2r+s] = M[i][r] * M[j][s].
inline std::array<FieldElement, 16> kron2(const FieldElement& m00, const FieldElement& m01,
                                          const FieldElement& m10, const FieldElement& m11) {
  std::array<const FieldElement*, 4> m{&m00, &m01, &m10, &m11};
  std::array<FieldElement, 16> k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
          k[static_cast<std::size_t>(4 * (2 * i + j) + (2 * r + s))] =
              (*m[static_cast<std::size_t>(2 * i + r)]) * (*m[static_cast<std::size_t>(2 * j + s)]);
  return k;
}

// Basis change: B = g * A * (g^{-1} (x) g^{-1}).  Left action:
// transform(transform(A, h), g) == transform(A, g * h).
inline MSC transform(const MSC& A, const GL2& g) {
  if (A.field() != g.field()) throw std::invalid_argument("transform: field mismatch");
  auto K = kron2(g.ia, g.ib, g.ic, g.id);
  std::array<FieldElement, 8> ak;
  for (int r = 0; r < 2; ++r)
    for (int j = 0; j < 4; ++j) {
      FieldElement acc = A.field()->zero();
      for (int t = 0; t < 4; ++t)
        acc = acc + A.e[static_cast<std::size_t>(4 * r + t)] * K[static_cast<std::size_t>(4 * t + j)];
      ak[static_cast<std::size_t>(4 * r + j)] = acc;
    }
  MSC B;
  for (int j = 0; j < 4; ++j) {
    auto top = static_cast<std::size_t>(j);
    auto bot = static_cast<std::size_t>(4 + j);
    B.e[top] = g.a * ak[top] + g.b * ak[bot];
    B.e[bot] = g.c * ak[top] + g.d * ak[bot];
  }
  return B;
}

struct TracePair {
  Vec2 tr1, tr2;
};

// Both trace forms; each transforms as a row vector times g^{-1}.
inline TracePair traces(const MSC& A) {
  return {{A.a1() + A.b3(), A.a2() + A.b4()}, {A.a1() + A.b2(), A.a3() + A.b4()}};
}

// Row vector times 2x2 matrix.
inline Vec2 row_times(const Vec2& v, const FieldElement& m00, const FieldElement& m01,
                      const FieldElement& m10, const FieldElement& m11) {
  return {v.x * m00 + v.y * m10, v.x * m01 + v.y * m11};
}

// The five trace-based strata, disjoint and exhaustive:
//   1: tr1, tr2 linearly independent
//   2: dependent, both nonzero (tr2 = lambda * tr1, lambda != 0)
//   3: tr1 != 0, tr2 = 0 (lambda = 0)
//   4: tr1 = 0, tr2 != 0
//   5: tr1 = tr2 = 0
// lambda is meaningful for indices 2 and 3 only; it is 0 elsewhere.
struct SubsetInfo {
  int index;
  FieldElement lambda;
};

inline SubsetInfo subset_of(const MSC& A) {
  TracePair t = traces(A);
  const Field* f = A.field();
  bool z1 = t.tr1.is_zero(), z2 = t.tr2.is_zero();
  if (z1 && z2) return {5, f->zero()};
  if (z1) return {4, f->zero()};
  if (z2) return {3, f->zero()};
  FieldElement det = t.tr1.x * t.tr2.y - t.tr1.y * t.tr2.x;
  if (!det.is_zero()) return {1, f->zero()};
  FieldElement lambda = !t.tr1.x.is_zero() ? t.tr2.x / t.tr1.x : t.tr2.y / t.tr1.y;
  return {2, lambda};
}

// Stacked trace matrix P(A) = (tr1; tr2) and its determinant; invertible
// exactly on subset 1, where it is the canonical basis change.
struct PMatrix {
  std::array<FieldElement, 4> m;  // row-major (tr1; tr2)
  FieldElement det;
};

inline PMatrix p_matrix(const MSC& A) {
  TracePair t = traces(A);
  PMatrix p;
  p.m = {t.tr1.x, t.tr1.y, t.tr2.x, t.tr2.y};
  p.det = t.tr1.x * t.tr2.y - t.tr1.y * t.tr2.x;
  return p;
}

// Product of algebra elements given by coordinates: A * (u (x) v).
inline Vec2 multiply(const MSC& A, const Vec2& u, const Vec2& v) {
  if (u.x.field() != A.field() || v.x.field() != A.field())
    throw std::invalid_argument("multiply: field mismatch");
  std::array<FieldElement, 4> w{u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y};
  Vec2 out{A.field()->zero(), A.field()->zero()};
  for (int j = 0; j < 4; ++j) {
    out.x = out.x + A.e[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j)];
    out.y = out.y + A.e[static_cast<std::size_t>(4 + j)] * w[static_cast<std::size_t>(j)];
  }
  return out;
}

// Swap the two middle columns (the (1,2) and (2,1) products).  Commutes with
// every basis change and exchanges tr1 with tr2, which turns the tr1-based
// reduction into the tr2-based one.
inline MSC swap23(const MSC& A) {
  MSC B = A;
  std::swap(B.e[1], B.e[2]);
  std::swap(B.e[5], B.e[6]);
  return B;
}

}  // namespace alg2d
