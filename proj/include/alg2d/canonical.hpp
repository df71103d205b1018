#pragma once

// Canonical forms for two-dimensional algebras under basis change.  Every
// nonzero structure matrix reduces, after at most a cubic and a quadratic
// field extension, to exactly one member of twelve parametric families (per
// characteristic class: general, two, three); the zero matrix is its own
// trivial class.  canonicalize() returns the family label, the canonical
// matrix, the field where the reduction lands, and an explicit invertible
// witness g with transform(embed(input), g) == canonical.

#include <numeric>
#include <optional>
#include <vector>

#include "msc.hpp"

namespace alg2d {

enum class LabelClass { general, char2, char3, trivial };

inline LabelClass class_for(const Field* f) {
  if (f->p() == 2) return LabelClass::char2;
  if (f->p() == 3) return LabelClass::char3;
  return LabelClass::general;
}

inline const char* to_string(LabelClass c) {
  switch (c) {
    case LabelClass::general: return "general";
    case LabelClass::char2: return "char2";
    case LabelClass::char3: return "char3";
    case LabelClass::trivial: return "trivial";
  }
  return "?";
}

// (class, family, params) names one canonical algebra.  Family 0 with class
// trivial is the zero algebra; families 1..12 follow the fixed tables in
// materialize().  Parameters may live in an extension of the input field.
struct FamilyLabel {
  LabelClass cls = LabelClass::trivial;
  int family = 0;  // 0 = trivial, else 1..12
  std::vector<FieldElement> params;
};

inline int param_count(int family) {
  switch (family) {
    case 1: return 4;
    case 2: return 3;
    case 3:
    case 4:
    case 6: return 2;
    case 5:
    case 7:
    case 8: return 1;
    default: return 0;  // trivial and 9..12
  }
}

// Labels are field-blind for comparison: parameters over different extensions
// of the same prime field compare through a common extension.  Families 2 and
// 6 outside characteristic two identify b1 with -b1 (element order is not
// preserved by embeddings, so the identification must live in the comparison,
// not only in the normalized representative).
inline bool operator==(const FamilyLabel& x, const FamilyLabel& y) {
  if (x.cls != y.cls || x.family != y.family || x.params.size() != y.params.size())
    return false;
  if (x.params.empty()) return true;
  const Field* fx = x.params[0].field();
  const Field* fy = y.params[0].field();
  if (fx->p() != fy->p()) return false;
  const Field* fc = fx;
  if (fx != fy) {
    int kc = std::lcm(fx->k(), fy->k());
    if (kc > kMaxDegree) throw cap_error("label comparison needs an extension beyond the cap");
    fc = Field::get(fx->p(), kc);
  }
  bool flip_slot_ok = (x.family == 2 || x.family == 6) && x.cls != LabelClass::char2;
  for (std::size_t i = 0; i < x.params.size(); ++i) {
    FieldElement xi = embed(x.params[i], fc);
    FieldElement yi = embed(y.params[i], fc);
    if (xi != yi && !(flip_slot_ok && i == 1 && xi == -yi)) return false;
  }
  return true;
}
inline bool operator!=(const FamilyLabel& x, const FamilyLabel& y) { return !(x == y); }

// The two families with a residual symmetry identify (a, b, ...) with
// (a, -b, ...); the representative takes the smaller of b, -b in the element
// order.  Characteristic two is already symmetric.
inline FamilyLabel normalize_label(FamilyLabel L) {
  if ((L.family == 2 || L.family == 6) && L.cls != LabelClass::char2) {
    FieldElement b = L.params[1];
    FieldElement nb = -b;
    if (nb < b) L.params[1] = nb;
  }
  return L;
}

// Exact matrix of a labeled family member.  Throws if the label's class does
// not match the field characteristic, the parameter count is wrong, or a
// parameter lives in a different field.
inline MSC materialize(const FamilyLabel& L, const Field* f) {
  if (L.cls == LabelClass::trivial) {
    if (L.family != 0 || !L.params.empty())
      throw std::invalid_argument("trivial label carries no family or params");
    return MSC::zero(f);
  }
  if (class_for(f) != L.cls)
    throw std::invalid_argument("label class does not match field characteristic");
  if (L.family < 1 || L.family > 12) throw std::invalid_argument("family out of range");
  if (static_cast<int>(L.params.size()) != param_count(L.family))
    throw std::invalid_argument("wrong parameter count for family");
  for (const auto& x : L.params)
    if (x.field() != f) throw std::invalid_argument("parameter not in target field");

  const FieldElement o = f->one(), z = f->zero();
  const bool c2 = L.cls == LabelClass::char2;
  const bool c3 = L.cls == LabelClass::char3;
  auto P = [&](int i) { return L.params[static_cast<std::size_t>(i)]; };
  auto rows = [&](FieldElement a1, FieldElement a2, FieldElement a3, FieldElement a4,
                  FieldElement b1, FieldElement b2, FieldElement b3, FieldElement b4) {
    return MSC{{a1, a2, a3, a4, b1, b2, b3, b4}};
  };

  switch (L.family) {
    case 1:
      return rows(P(0), P(1), P(1) + o, P(2), P(3), -P(0), o - P(0), -P(1));
    case 2:
      return rows(P(0), z, z, o, P(1), P(2), o - P(0), z);
    case 3:
      if (c2) return rows(P(0), o, o, z, z, P(1), o - P(0), o);
      return rows(z, o, o, z, P(0), P(1), o, -o);
    case 4:
      return rows(P(0), z, z, z, z, P(1), o - P(0), z);
    case 5:
      return rows(P(0), z, z, z, o, f->from_int(2) * P(0) - o, o - P(0), z);
    case 6:
      return rows(P(0), z, z, o, P(1), o - P(0), -P(0), z);
    case 7:
      if (c2) return rows(P(0), o, o, z, z, o - P(0), -P(0), -o);
      return rows(z, o, o, z, P(0), o, z, -o);
    case 8:
      return rows(P(0), z, z, z, z, o - P(0), -P(0), z);
    case 9: {
      if (c2) return rows(o, z, z, z, o, z, o, z);
      if (c3) return rows(z, o, o, z, o, z, z, -o);
      FieldElement third = f->from_int(3).inv();
      return rows(third, z, z, z, o, f->from_int(2) * third, -third, z);
    }
    case 10:
      return rows(z, o, o, z, z, z, z, -o);
    case 11:
      if (c2) return rows(o, o, o, z, z, -o, -o, -o);
      if (c3) return rows(o, z, z, z, o, -o, -o, z);
      return rows(z, o, o, z, o, z, z, -o);
    case 12:
      return rows(z, z, z, z, o, z, z, z);
  }
  throw std::logic_error("unreachable");
}

struct ClassResult {
  FamilyLabel label;
  GL2 witness;                // transform(embed(input, result_field), witness) == canonical
  const Field* result_field;  // input field or a cubic/quadratic tower over it
  MSC canonical;              // == materialize(label, result_field)
};

namespace detail {

// Internal signal: the pipeline needs a root that only exists in the
// extension of the stated absolute degree; the caller re-embeds the original
// input there and reruns, so every branch sees coherently embedded data.
struct NeedExtension {
  int target_degree;
};

inline FieldElement root_or_extend(const FieldElement& c0, const FieldElement& c1,
                                   const FieldElement& c2, const FieldElement& c3) {
  auto roots = poly_roots(c0, c1, c2, c3);
  if (!roots.empty()) return roots.front();
  auto se = splitting_extension(c0, c1, c2, c3, c0.field());
  throw NeedExtension{se.field->k()};
}

inline FieldElement sqrt_or_extend(const FieldElement& x) {
  if (auto r = sqrt_min(x)) return *r;
  const Field* f = x.field();
  auto se = splitting_extension(-x, f->zero(), f->one(), f->zero(), f);
  throw NeedExtension{se.field->k()};
}

// Sign-flip witness diag(1, -1): negates the b1 slot of families 2 and 6.
inline GL2 flip_witness(const Field* f) {
  return GL2::from_matrix(f->one(), f->zero(), f->zero(), f->from_int(-1));
}

// Fixed bridge witness (0, 1; -1, 0): carries (1,0,0,0 | 0,-1,-1,0) to the
// family-10 representative in every characteristic.
inline GL2 bridge_witness(const Field* f) {
  return GL2::from_matrix(f->zero(), f->one(), f->from_int(-1), f->zero());
}

// Independent traces: the stacked trace matrix itself is the witness.
inline ClassResult canon_subset1(const MSC& A) {
  const Field* f = A.field();
  PMatrix P = p_matrix(A);
  GL2 g = GL2::from_matrix(P.m[0], P.m[1], P.m[2], P.m[3]);
  MSC C = transform(A, g);
  FamilyLabel label{class_for(f), 1, {C.a1(), C.a2(), C.a4(), C.b1()}};
  return {label, g, f, C};
}

// Dependent traces with tr1 != 0 (lambda = tr2/tr1, possibly 0): normalize
// tr1 to (1,0), then kill the tail of the first row with a unipotent-scaled
// residual move.  Lands in families 2..5.
inline ClassResult canon_subset23(const MSC& A, const FieldElement& lambda) {
  const Field* f = A.field();
  const bool c2 = f->p() == 2;
  const FieldElement o = f->one(), z = f->zero();

  TracePair t = traces(A);
  GL2 g0 = !t.tr1.x.is_zero() ? GL2::from_matrix(t.tr1.x, t.tr1.y, z, o)
                              : GL2::from_matrix(t.tr1.x, t.tr1.y, o, z);
  MSC B = transform(A, g0);
  GL2 w = g0;
  auto residual = [&](const FieldElement& xi2, const FieldElement& eta2) {
    GL2 g = GL2::from_inverse(o, z, xi2, eta2);
    B = transform(B, g);
    w = g * w;
  };

  int fam;
  std::vector<FieldElement> params;
  if (!B.a4().is_zero()) {
    FieldElement xi2 = -(B.a2() / B.a4());
    FieldElement r = sqrt_or_extend(B.a4());
    residual(xi2, r.inv());
    fam = 2;
    params = {B.a1(), B.b1(), B.b2()};
  } else if (!B.a2().is_zero()) {
    if (!c2) {
      residual(-(B.a1() / (f->from_int(2) * B.a2())), B.a2().inv());
      fam = 3;
      params = {B.b1(), B.b2()};
    } else {
      FieldElement c1 = o + lambda - f->from_int(3) * B.a1();
      FieldElement s = root_or_extend(B.b1(), c1, B.a2(), z);
      residual(s, B.a2().inv());
      fam = 3;
      params = {B.a1(), B.b2()};
    }
  } else {
    FieldElement c = o + lambda - f->from_int(3) * B.a1();
    if (!c.is_zero()) {
      residual(-(B.b1() / c), o);
      fam = 4;
      params = {B.a1(), B.b2()};
    } else if (!B.b1().is_zero()) {
      residual(z, B.b1());
      fam = 5;
      params = {B.a1()};
    } else {
      fam = 4;
      params = {B.a1(), B.b2()};
    }
  }

  ClassResult res{FamilyLabel{class_for(f), fam, params}, w, f, B};
  if (fam == 2 && !c2) {
    FieldElement nb = -res.label.params[1];
    if (nb < res.label.params[1]) {
      GL2 flip = flip_witness(f);
      res.canonical = transform(res.canonical, flip);
      res.witness = flip * res.witness;
      res.label.params[1] = nb;
    }
  }
  return res;
}

// tr1 = 0, tr2 != 0: swapping the middle columns exchanges the trace forms
// and commutes with every basis change, so the tr1 reduction applies to the
// swapped matrix and the result swaps back.  Families shift 2,3,4,5 ->
// 6,7,8,9 and lose their last (now forced) parameter.
inline ClassResult canon_subset4(const MSC& A) {
  MSC asw = swap23(A);
  SubsetInfo s = subset_of(asw);
  ClassResult r = canon_subset23(asw, s.lambda);
  r.label.family += 4;
  r.label.params.pop_back();
  r.canonical = swap23(r.canonical);
  return r;
}

// Both traces zero: first kill a4 with a cubic root, then scale into the
// parameter-free families 9 (char 3 only), 10, 11, 12.
inline ClassResult canon_subset5(const MSC& A) {
  const Field* f = A.field();
  const long p = f->p();
  const FieldElement o = f->one(), z = f->zero();

  MSC B = A;
  GL2 w = GL2::identity(f);
  if (!B.a4().is_zero()) {
    FieldElement t = root_or_extend(B.b1(), f->from_int(-3) * B.a1(),
                                    f->from_int(-3) * B.a2(), -B.a4());
    GL2 g = GL2::from_inverse(z, o, f->from_int(-1), t);
    B = transform(B, g);
    w = g * w;
  }

  auto residual = [&](const FieldElement& xi1, const FieldElement& xi2,
                      const FieldElement& eta2) {
    GL2 g = GL2::from_inverse(xi1, z, xi2, eta2);
    B = transform(B, g);
    w = g * w;
  };
  auto bridge = [&]() {
    GL2 g = bridge_witness(f);
    B = transform(B, g);
    w = g * w;
  };

  const FieldElement a1 = B.a1(), a2 = B.a2(), b1 = B.b1();
  int fam;
  if (p == 2) {
    if (a1.is_zero() && a2.is_zero()) {
      residual(o, z, b1);
      fam = 12;
    } else {
      FieldElement s = root_or_extend(b1, a1, a2, z);
      FieldElement xi1 = a1.is_zero() ? o : a1.inv();
      residual(xi1, s * xi1, a2.is_zero() ? o : a2.inv());
      if (a2.is_zero()) {
        bridge();
        fam = 10;
      } else {
        fam = a1.is_zero() ? 10 : 11;
      }
    }
  } else if (p == 3) {
    if (!a2.is_zero()) {
      FieldElement xi1 = b1.is_zero() ? o : sqrt_or_extend((a2 * b1).inv());
      residual(xi1, a1 * xi1 / a2, a2.inv());
      fam = b1.is_zero() ? 10 : 9;
    } else if (!b1.is_zero()) {
      FieldElement xi1 = a1.is_zero() ? o : a1.inv();
      residual(xi1, z, xi1 * xi1 * b1);
      fam = a1.is_zero() ? 12 : 11;
    } else {
      residual(a1.inv(), z, o);
      bridge();
      fam = 10;
    }
  } else {
    if (!a2.is_zero()) {
      FieldElement D = f->from_int(3) * a1 * a1 + f->from_int(4) * a2 * b1;
      FieldElement xi1 = D.is_zero() ? o : sqrt_or_extend(f->from_int(4) / D);
      FieldElement s = -(a1 / (f->from_int(2) * a2));
      residual(xi1, s * xi1, a2.inv());
      fam = D.is_zero() ? 10 : 11;
    } else if (!a1.is_zero()) {
      FieldElement xi1 = a1.inv();
      residual(xi1, (b1 / (f->from_int(3) * a1)) * xi1, o);
      bridge();
      fam = 10;
    } else {
      residual(o, z, b1);
      fam = 12;
    }
  }
  return {FamilyLabel{class_for(f), fam, {}}, w, f, B};
}

inline ClassResult canonicalize_in(const MSC& A) {
  SubsetInfo s = subset_of(A);
  switch (s.index) {
    case 1: return canon_subset1(A);
    case 2:
    case 3: return canon_subset23(A, s.lambda);
    case 4: return canon_subset4(A);
    default: return canon_subset5(A);
  }
}

}  // namespace detail

// Full reduction.  Restarts from the original input whenever a root forces a
// field extension, so embeddings never stack incoherently; every result is
// verified on the way out (witness transport and table membership).
inline ClassResult canonicalize(const MSC& A0) {
  const Field* base = A0.field();
  if (A0.is_zero())
    return {FamilyLabel{}, GL2::identity(base), base, A0};

  const Field* cur = base;
  for (int attempt = 0; attempt < 4; ++attempt) {
    MSC A = cur == base ? A0 : embed(A0, cur);
    try {
      ClassResult r = detail::canonicalize_in(A);
      MSC expect = materialize(r.label, r.result_field);
      if (!(r.canonical == expect) || !(transform(A, r.witness) == r.canonical))
        throw std::logic_error("canonicalize: result verification failed");
      return r;
    } catch (const detail::NeedExtension& e) {
      cur = Field::get(base->p(), e.target_degree);
    }
  }
  throw std::logic_error("canonicalize: extension chain did not stabilize");
}

struct IsoResult {
  bool isomorphic = false;
  std::optional<GL2> witness;   // over `field` when isomorphic
  const Field* field = nullptr; // common extension where the witness lives
};

// Exact isomorphism test through canonical forms.  Both inputs must share a
// field; a witness, when found, satisfies
// transform(embed(A, field), witness) == embed(B, field).
inline IsoResult is_isomorphic(const MSC& A, const MSC& B) {
  if (A.field() != B.field()) throw std::invalid_argument("is_isomorphic: field mismatch");
  ClassResult ra = canonicalize(A);
  ClassResult rb = canonicalize(B);
  if (ra.label != rb.label) return {};
  if (ra.label.cls == LabelClass::trivial)
    return {true, GL2::identity(A.field()), A.field()};

  int kc = std::lcm(ra.result_field->k(), rb.result_field->k());
  const Field* fc = Field::get(A.field()->p(), kc);
  if (ra.result_field != fc) ra = canonicalize(embed(A, fc));
  if (rb.result_field != fc) rb = canonicalize(embed(B, fc));
  if (ra.result_field != fc || rb.result_field != fc || !(ra.canonical == rb.canonical))
    throw std::logic_error("is_isomorphic: reduction did not stabilize over the join");

  GL2 w = rb.witness.inverse() * ra.witness;
  if (!(transform(embed(A, fc), w) == embed(B, fc)))
    throw std::logic_error("is_isomorphic: composed witness failed verification");
  return {true, w, fc};
}

}  // namespace alg2d
