#pragma once

// Brute-force ground truth, independent of the canonicalizer's case analysis:
// full GL(2,q) enumeration, orbit closure, exhaustive isomorphism search, and
// a whole-space orbit census.  Everything here works on packed index tables
// so the q^4 and q^8 sweeps stay cheap at desk scale (q <= 256 for packing;
// tighter defaults per operation).

#include <functional>
#include <unordered_set>

#include "canonical.hpp"

namespace alg2d {

inline std::uint64_t gl2_count(const Field* f) {
  std::uint64_t q = f->order();
  return (q * q - 1) * (q * q - q);
}

namespace detail {

// Finite field flattened into index tables; indices are enumeration indices
// (element_at), lex_ gives them in the element order.
struct PackedField {
  const Field* f;
  std::uint32_t q;
  std::vector<std::uint8_t> add_, mul_, neg_, inv_;
  std::vector<std::uint32_t> lex_;
  std::vector<FieldElement> elems_;

  explicit PackedField(const Field* fld) : f(fld) {
    if (!fld->order_fits() || fld->order() > 256)
      throw cap_error("oracle tables require q <= 256");
    q = static_cast<std::uint32_t>(fld->order());
    elems_.reserve(q);
    for (std::uint32_t i = 0; i < q; ++i) elems_.push_back(fld->element_at(i));
    add_.resize(static_cast<std::size_t>(q) * q);
    mul_.resize(static_cast<std::size_t>(q) * q);
    neg_.resize(q);
    inv_.resize(q);
    for (std::uint32_t i = 0; i < q; ++i) {
      neg_[i] = static_cast<std::uint8_t>(fld->index_of(-elems_[i]));
      inv_[i] = i == 0 ? 0 : static_cast<std::uint8_t>(fld->index_of(elems_[i].inv()));
      for (std::uint32_t j = 0; j < q; ++j) {
        add_[static_cast<std::size_t>(i) * q + j] =
            static_cast<std::uint8_t>(fld->index_of(elems_[i] + elems_[j]));
        mul_[static_cast<std::size_t>(i) * q + j] =
            static_cast<std::uint8_t>(fld->index_of(elems_[i] * elems_[j]));
      }
    }
    lex_.resize(q);
    for (std::uint32_t i = 0; i < q; ++i) lex_[i] = i;
    std::sort(lex_.begin(), lex_.end(),
              [&](std::uint32_t a, std::uint32_t b) { return elems_[a] < elems_[b]; });
  }

  std::uint8_t add(std::uint8_t a, std::uint8_t b) const {
    return add_[static_cast<std::size_t>(a) * q + b];
  }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const {
    return mul_[static_cast<std::size_t>(a) * q + b];
  }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add(a, neg_[b]); }

  std::array<std::uint8_t, 8> pack(const MSC& m) const {
    std::array<std::uint8_t, 8> out;
    for (std::size_t i = 0; i < 8; ++i)
      out[i] = static_cast<std::uint8_t>(f->index_of(m.e[i]));
    return out;
  }
  MSC unpack(const std::array<std::uint8_t, 8>& a) const {
    MSC m;
    for (std::size_t i = 0; i < 8; ++i) m.e[i] = elems_[a[i]];
    return m;
  }
  static std::uint64_t key(const std::array<std::uint8_t, 8>& a) {
    std::uint64_t k = 0;
    for (int i = 7; i >= 0; --i) k = (k << 8) | a[static_cast<std::size_t>(i)];
    return k;
  }
};

// Packed basis change: B = g * A * (ginv (x) ginv); identical formula to the
// exact transform(), checked against it in the test suite.
inline std::array<std::uint8_t, 8> ptransform(const PackedField& P,
                                              const std::array<std::uint8_t, 8>& A,
                                              const std::array<std::uint8_t, 4>& g,
                                              const std::array<std::uint8_t, 4>& gi) {
  std::uint8_t K[16];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
          K[4 * (2 * i + j) + (2 * r + s)] = P.mul(gi[static_cast<std::size_t>(2 * i + r)],
                                                   gi[static_cast<std::size_t>(2 * j + s)]);
  std::uint8_t ak[8];
  for (int r = 0; r < 2; ++r)
    for (int j = 0; j < 4; ++j) {
      std::uint8_t acc = 0;
      for (int t = 0; t < 4; ++t)
        acc = P.add(acc, P.mul(A[static_cast<std::size_t>(4 * r + t)], K[4 * t + j]));
      ak[4 * r + j] = acc;
    }
  std::array<std::uint8_t, 8> B;
  for (int j = 0; j < 4; ++j) {
    B[static_cast<std::size_t>(j)] =
        P.add(P.mul(g[0], ak[j]), P.mul(g[1], ak[4 + j]));
    B[static_cast<std::size_t>(4 + j)] =
        P.add(P.mul(g[2], ak[j]), P.mul(g[3], ak[4 + j]));
  }
  return B;
}

// A small generating set of GL(2,q): both transvections, the column swap, and
// (for q > 2) the two diagonal scalings by a primitive element.  Closure under
// these equals closure under the full group.
inline std::vector<std::pair<std::array<std::uint8_t, 4>, std::array<std::uint8_t, 4>>>
gl2_generators(const PackedField& P) {
  const Field* f = P.f;
  std::vector<GL2> gens;
  FieldElement o = f->one(), z = f->zero();
  gens.push_back(GL2::from_matrix(o, o, z, o));
  gens.push_back(GL2::from_matrix(o, z, o, o));
  gens.push_back(GL2::from_matrix(z, o, o, z));
  if (P.q > 2) {
    FieldElement w = o;
    for (std::uint32_t i = 2; i < P.q; ++i) {
      FieldElement cand = P.elems_[i];
      std::uint64_t ord = 1;
      FieldElement acc = cand;
      while (!(acc == o)) {
        acc = acc * cand;
        ++ord;
      }
      if (ord == P.q - 1) {
        w = cand;
        break;
      }
    }
    gens.push_back(GL2::from_matrix(w, z, z, o));
    gens.push_back(GL2::from_matrix(o, z, z, w));
  }
  std::vector<std::pair<std::array<std::uint8_t, 4>, std::array<std::uint8_t, 4>>> out;
  for (const auto& g : gens) {
    auto ix = [&](const FieldElement& e) { return static_cast<std::uint8_t>(f->index_of(e)); };
    out.push_back({{ix(g.a), ix(g.b), ix(g.c), ix(g.d)},
                   {ix(g.ia), ix(g.ib), ix(g.ic), ix(g.id)}});
  }
  return out;
}

}  // namespace detail

// Visit every invertible 2x2 matrix over F exactly once, lexicographically on
// (a, b, c, d) under the element order; returns the count and checks it equals
// (q^2 - 1)(q^2 - q).
inline std::uint64_t gl2_enumerate(const Field* f, const std::function<void(const GL2&)>& fn) {
  detail::PackedField P(f);
  std::uint64_t count = 0;
  for (auto a : P.lex_)
    for (auto b : P.lex_)
      for (auto c : P.lex_)
        for (auto d : P.lex_) {
          FieldElement det = P.elems_[a] * P.elems_[d] - P.elems_[b] * P.elems_[c];
          if (det.is_zero()) continue;
          ++count;
          if (fn) fn(GL2::from_matrix(P.elems_[a], P.elems_[b], P.elems_[c], P.elems_[d]));
        }
  if (count != gl2_count(f)) throw std::logic_error("gl2_enumerate: count mismatch");
  return count;
}

struct OrbitReport {
  MSC representative;
  std::uint64_t size;
  SubsetInfo subset;
  FamilyLabel label;  // closure label from the canonicalizer
};

// Full GL(2,q)-orbit of A by forward closure under generators.
inline OrbitReport orbit(const MSC& A, std::uint64_t max_q = 64) {
  const Field* f = A.field();
  if (!f->order_fits() || f->order() > max_q)
    throw cap_error("orbit enumeration bounded at q <= " + std::to_string(max_q));
  detail::PackedField P(f);
  auto gens = detail::gl2_generators(P);
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::array<std::uint8_t, 8>> frontier{P.pack(A)};
  seen.insert(detail::PackedField::key(frontier[0]));
  while (!frontier.empty()) {
    auto cur = frontier.back();
    frontier.pop_back();
    for (const auto& [g, gi] : gens) {
      auto nxt = detail::ptransform(P, cur, g, gi);
      if (seen.insert(detail::PackedField::key(nxt)).second) frontier.push_back(nxt);
    }
  }
  return {A, seen.size(), subset_of(A), canonicalize(A).label};
}

// First change of basis carrying A to B over `field` (inputs are embedded
// into it first), in the gl2_enumerate order; nullopt when none exists.
inline std::optional<GL2> brute_isomorphic(const MSC& A, const MSC& B, const Field* field) {
  detail::PackedField P(field);
  auto pa = P.pack(embed(A, field));
  auto pb = P.pack(embed(B, field));
  for (auto a : P.lex_)
    for (auto b : P.lex_)
      for (auto c : P.lex_)
        for (auto d : P.lex_) {
          std::uint8_t det = P.sub(P.mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(d)),
                                   P.mul(static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c)));
          if (det == 0) continue;
          std::uint8_t di = P.inv_[det];
          std::array<std::uint8_t, 4> g{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                                        static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)};
          std::array<std::uint8_t, 4> gi{P.mul(g[3], di), P.neg_[P.mul(g[1], di)],
                                         P.neg_[P.mul(g[2], di)], P.mul(g[0], di)};
          if (detail::ptransform(P, pa, g, gi) == pb)
            return GL2::from_matrix(P.elems_[a], P.elems_[b], P.elems_[c], P.elems_[d]);
        }
  return std::nullopt;
}

struct CensusTable {
  const Field* field;
  std::uint64_t total;  // q^8
  std::vector<OrbitReport> rows;
  // Groups (by row index) of distinct orbits carrying equal labels: same
  // closure class, not conjugate over the base field.
  std::vector<std::vector<std::size_t>> shared_labels;
};

// Whole-space orbit decomposition of all q^8 matrices.  Representatives are
// the first unvisited matrices in enumeration order; every orbit member is
// canonicalized and label constancy is enforced.
inline CensusTable census(const Field* f, std::uint64_t max_q = 3, bool check_labels = true) {
  if (!f->order_fits() || f->order() > max_q)
    throw cap_error("field too large for full census (q <= " + std::to_string(max_q) + ")");
  detail::PackedField P(f);
  const std::uint64_t q = P.q;
  std::uint64_t total = 1;
  for (int i = 0; i < 8; ++i) total *= q;

  auto dense = [&](const std::array<std::uint8_t, 8>& a) {
    std::uint64_t k = 0;
    for (int i = 7; i >= 0; --i) k = k * q + a[static_cast<std::size_t>(i)];
    return k;
  };
  auto undense = [&](std::uint64_t n) {
    std::array<std::uint8_t, 8> a;
    for (std::size_t i = 0; i < 8; ++i) {
      a[i] = static_cast<std::uint8_t>(n % q);
      n /= q;
    }
    return a;
  };

  auto gens = detail::gl2_generators(P);
  std::vector<bool> visited(total, false);
  CensusTable table{f, total, {}, {}};
  for (std::uint64_t n = 0; n < total; ++n) {
    if (visited[n]) continue;
    std::vector<std::array<std::uint8_t, 8>> members{undense(n)};
    visited[n] = true;
    std::vector<std::array<std::uint8_t, 8>> frontier = members;
    while (!frontier.empty()) {
      auto cur = frontier.back();
      frontier.pop_back();
      for (const auto& [g, gi] : gens) {
        auto nxt = detail::ptransform(P, cur, g, gi);
        std::uint64_t dn = dense(nxt);
        if (!visited[dn]) {
          visited[dn] = true;
          members.push_back(nxt);
          frontier.push_back(nxt);
        }
      }
    }
    MSC rep = P.unpack(members.front());
    FamilyLabel label = canonicalize(rep).label;
    if (check_labels)
      for (std::size_t i = 1; i < members.size(); ++i)
        if (canonicalize(P.unpack(members[i])).label != label)
          throw std::logic_error("census: orbit with heterogeneous labels");
    table.rows.push_back({rep, members.size(), subset_of(rep), label});
  }
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    std::vector<std::size_t> group{i};
    bool earlier = false;
    for (std::size_t j = 0; j < i && !earlier; ++j)
      earlier = table.rows[j].label == table.rows[i].label;
    if (earlier) continue;
    for (std::size_t j = i + 1; j < table.rows.size(); ++j)
      if (table.rows[j].label == table.rows[i].label) group.push_back(j);
    if (group.size() > 1) table.shared_labels.push_back(group);
  }
  return table;
}

}  // namespace alg2d
