// Canonical families: materialization tables, label normalization and
// equality, the canonicalizer pipeline, and the isomorphism decision.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "alg2d/canonical.hpp"

using namespace alg2d;

namespace {

MSC rand_msc(const Field* f, std::mt19937_64& rng) {
  MSC m;
  for (auto& v : m.e) v = f->element_at(rng() % f->order());
  return m;
}

GL2 rand_gl2(const Field* f, std::mt19937_64& rng) {
  for (;;) {
    FieldElement a = f->element_at(rng() % f->order());
    FieldElement b = f->element_at(rng() % f->order());
    FieldElement c = f->element_at(rng() % f->order());
    FieldElement d = f->element_at(rng() % f->order());
    if (!(a * d - b * c).is_zero()) return GL2::from_matrix(a, b, c, d);
  }
}

FamilyLabel label_of(const Field* f, int family, std::vector<long> params) {
  FamilyLabel L;
  L.cls = class_for(f);
  L.family = family;
  for (long v : params) L.params.push_back(f->from_int(v));
  return L;
}

}  // namespace

TEST_CASE("parameter arities", "[canonical]") {
  CHECK(param_count(1) == 4);
  CHECK(param_count(2) == 3);
  CHECK(param_count(3) == 2);
  CHECK(param_count(4) == 2);
  CHECK(param_count(5) == 1);
  CHECK(param_count(6) == 2);
  CHECK(param_count(7) == 1);
  CHECK(param_count(8) == 1);
  for (int fam = 9; fam <= 12; ++fam) CHECK(param_count(fam) == 0);
  CHECK(param_count(0) == 0);
}

TEST_CASE("materialized family tables over GF(7)", "[canonical]") {
  const Field* f = Field::get(7, 1);
  auto M = [&](int fam, std::vector<long> params) { return materialize(label_of(f, fam, std::move(params)), f); };
  CHECK(M(1, {2, 3, 4, 5}) == MSC::from_ints(f, {2, 3, 4, 4, 5, 5, 6, 4}));
  CHECK(M(2, {2, 3, 4}) == MSC::from_ints(f, {2, 0, 0, 1, 3, 4, 6, 0}));
  CHECK(M(3, {2, 3}) == MSC::from_ints(f, {0, 1, 1, 0, 2, 3, 1, 6}));
  CHECK(M(4, {2, 3}) == MSC::from_ints(f, {2, 0, 0, 0, 0, 3, 6, 0}));
  CHECK(M(5, {2}) == MSC::from_ints(f, {2, 0, 0, 0, 1, 3, 6, 0}));
  CHECK(M(6, {2, 3}) == MSC::from_ints(f, {2, 0, 0, 1, 3, 6, 5, 0}));
  CHECK(M(7, {2}) == MSC::from_ints(f, {0, 1, 1, 0, 2, 1, 0, 6}));
  CHECK(M(8, {2}) == MSC::from_ints(f, {2, 0, 0, 0, 0, 6, 5, 0}));
  CHECK(M(9, {}) == MSC::from_ints(f, {5, 0, 0, 0, 1, 3, 2, 0}));  // 1/3 = 5 mod 7
  CHECK(M(10, {}) == MSC::from_ints(f, {0, 1, 1, 0, 0, 0, 0, 6}));
  CHECK(M(11, {}) == MSC::from_ints(f, {0, 1, 1, 0, 1, 0, 0, 6}));
  CHECK(M(12, {}) == MSC::from_ints(f, {0, 0, 0, 0, 1, 0, 0, 0}));
}

TEST_CASE("materialized family tables in characteristic 2 and 3", "[canonical]") {
  const Field* f2 = Field::get(2, 1);
  auto M2 = [&](int fam, std::vector<long> params) { return materialize(label_of(f2, fam, std::move(params)), f2); };
  CHECK(M2(3, {1, 1}) == MSC::from_ints(f2, {1, 1, 1, 0, 0, 1, 0, 1}));
  CHECK(M2(7, {1}) == MSC::from_ints(f2, {1, 1, 1, 0, 0, 0, 1, 1}));
  CHECK(M2(9, {}) == MSC::from_ints(f2, {1, 0, 0, 0, 1, 0, 1, 0}));
  CHECK(M2(11, {}) == MSC::from_ints(f2, {1, 1, 1, 0, 0, 1, 1, 1}));

  const Field* f3 = Field::get(3, 1);
  auto M3 = [&](int fam, std::vector<long> params) { return materialize(label_of(f3, fam, std::move(params)), f3); };
  CHECK(M3(9, {}) == MSC::from_ints(f3, {0, 1, 1, 0, 1, 0, 0, 2}));
  CHECK(M3(11, {}) == MSC::from_ints(f3, {1, 0, 0, 0, 1, 2, 2, 0}));
  CHECK(M3(10, {}) == MSC::from_ints(f3, {0, 1, 1, 0, 0, 0, 0, 2}));
}

TEST_CASE("materialize validates its label", "[canonical]") {
  const Field* f7 = Field::get(7, 1);
  const Field* f2 = Field::get(2, 1);
  CHECK_THROWS_AS(materialize(label_of(f7, 2, {1, 0, 0}), f2), std::invalid_argument);
  CHECK_THROWS_AS(materialize(label_of(f7, 2, {1, 0}), f7), std::invalid_argument);
  CHECK_THROWS_AS(materialize(label_of(f7, 13, {}), f7), std::invalid_argument);
  FamilyLabel trivial;  // class trivial, family 0
  CHECK(materialize(trivial, f7) == MSC::zero(f7));
  trivial.family = 3;
  CHECK_THROWS_AS(materialize(trivial, f7), std::invalid_argument);
  // Parameter element from a different field.
  FamilyLabel wrong = label_of(f7, 5, {});
  wrong.params.push_back(Field::get(7, 2)->one());
  CHECK_THROWS_AS(materialize(wrong, f7), std::invalid_argument);
}

TEST_CASE("label normalization folds the residual sign symmetry", "[canonical]") {
  const Field* f7 = Field::get(7, 1);
  FamilyLabel L = label_of(f7, 2, {1, 5, 0});
  FamilyLabel N = normalize_label(L);
  CHECK(N.params[1] == f7->from_int(2));  // min(5, -5=2) in element order
  CHECK(N.params[0] == f7->one());
  L = label_of(f7, 2, {1, 2, 0});
  CHECK(normalize_label(L).params[1] == f7->from_int(2));  // already minimal
  L = label_of(f7, 6, {1, 4});
  CHECK(normalize_label(L).params[1] == f7->from_int(3));
  // Families without the symmetry are untouched.
  L = label_of(f7, 3, {5, 6});
  CHECK(normalize_label(L).params == L.params);
  // Characteristic 2 is symmetric already: no change.
  const Field* f2 = Field::get(2, 1);
  L = label_of(f2, 2, {1, 1, 1});
  CHECK(normalize_label(L).params == L.params);
}

TEST_CASE("label equality is field-blind and sign-aware", "[canonical]") {
  const Field* f7 = Field::get(7, 1);
  const Field* f49 = Field::get(7, 2);
  // Same data, different representative of the sign orbit.
  CHECK(label_of(f7, 2, {1, 2, 0}) == label_of(f7, 2, {1, 5, 0}));
  CHECK(label_of(f7, 6, {1, 3}) == label_of(f7, 6, {1, 4}));
  // The sign fold applies only to the second slot of families 2 and 6.
  CHECK(label_of(f7, 3, {2, 0}) != label_of(f7, 3, {5, 0}));
  CHECK(label_of(f7, 2, {2, 0, 0}) != label_of(f7, 2, {5, 0, 0}));
  // Equal after embedding into a common extension.
  FamilyLabel over49 = label_of(f49, 2, {1, 2, 0});
  CHECK(label_of(f7, 2, {1, 2, 0}) == over49);
  CHECK(label_of(f7, 2, {1, 5, 0}) == over49);
  // Distinct data stays distinct.
  CHECK(label_of(f7, 2, {1, 2, 0}) != label_of(f7, 2, {1, 3, 0}));
  CHECK(label_of(f7, 10, {}) != label_of(f7, 11, {}));
  CHECK(label_of(f7, 10, {}) != label_of(Field::get(3, 1), 10, {}));
  FamilyLabel trivial;
  CHECK(trivial == FamilyLabel{});
  CHECK(trivial != label_of(f7, 12, {}));
}

TEST_CASE("canonicalize: frozen examples over GF(7)", "[canonical]") {
  const Field* f7 = Field::get(7, 1);

  ClassResult r = canonicalize(MSC::zero(f7));
  CHECK(r.label.cls == LabelClass::trivial);
  CHECK(r.label.family == 0);
  CHECK(r.result_field == f7);
  CHECK(r.witness == GL2::identity(f7));
  CHECK(r.canonical == MSC::zero(f7));

  // e1*e1 = e1 + ..., the worked unit-family example.
  r = canonicalize(MSC::from_ints(f7, {1, 0, 0, 1, 0, 0, 0, 0}));
  CHECK(r.label.family == 2);
  REQUIRE(r.label.params.size() == 3);
  CHECK(r.label.params[0] == f7->one());
  CHECK(r.label.params[1] == f7->zero());
  CHECK(r.label.params[2] == f7->zero());
  CHECK(r.result_field == f7);

  // The bridge input lands in family 10.
  r = canonicalize(MSC::from_ints(f7, {1, 0, 0, 0, 0, -1, -1, 0}));
  CHECK(r.label.family == 10);
  CHECK(r.result_field == f7);

  r = canonicalize(MSC::from_ints(f7, {0, 1, 1, 0, 1, 0, 0, -1}));
  CHECK(r.label.family == 11);

  // A table member is its own canonical form with the identity witness.
  MSC nine = materialize(label_of(f7, 9, {}), f7);
  r = canonicalize(nine);
  CHECK(r.label.family == 9);
  CHECK(r.witness == GL2::identity(f7));
  CHECK(r.canonical == nine);
}

TEST_CASE("canonicalize extends the field exactly when needed", "[canonical][extension]") {
  const Field* f7 = Field::get(7, 1);
  const Field* f49 = Field::get(7, 2);
  // a4 = 3 is not a square mod 7, so the normalizing move lives over GF(49).
  MSC A = MSC::from_ints(f7, {1, 0, 0, 3, 0, 0, 0, 0});
  ClassResult r = canonicalize(A);
  CHECK(r.result_field == f49);
  CHECK(r.label.family == 2);
  REQUIRE(r.label.params.size() == 3);
  CHECK(r.label.params[0] == f49->one());
  CHECK(r.label.params[1] == f49->zero());
  CHECK(r.label.params[2] == f49->zero());
  CHECK(transform(embed(A, f49), r.witness) == r.canonical);

  // Same closure label as the square-free variant...
  MSC B = MSC::from_ints(f7, {1, 0, 0, 1, 0, 0, 0, 0});
  CHECK(canonicalize(B).label == r.label);
  // ...hence isomorphic over the extension, with a checked witness...
  IsoResult iso = is_isomorphic(A, B);
  CHECK(iso.isomorphic);
  CHECK(iso.field == f49);
  REQUIRE(iso.witness.has_value());
  CHECK(transform(embed(A, f49), *iso.witness) == embed(B, f49));

  // A subset-1 input never leaves its field: the witness is its own P-matrix.
  std::mt19937_64 rng(59);
  int seen = 0;
  while (seen < 50) {
    MSC C = rand_msc(f7, rng);
    if (subset_of(C).index != 1) continue;
    ++seen;
    ClassResult rc = canonicalize(C);
    CHECK(rc.result_field == f7);
    CHECK(rc.label.family == 1);
    PMatrix P = p_matrix(C);
    CHECK(rc.witness == GL2::from_matrix(P.m[0], P.m[1], P.m[2], P.m[3]));
  }
}

TEST_CASE("canonicalize: exhaustive family census over GF(2) and GF(3)", "[canonical][exhaustive]") {
  // Frozen family histograms (index 0 = trivial, then families 1..12).
  const std::array<long, 13> expect2 = {1, 96, 48, 24, 18, 6, 24, 12, 9, 3, 6, 6, 3};
  const std::array<long, 13> expect3 = {1, 3888, 1296, 432, 168, 48, 432, 144, 72, 48, 8, 16, 8};

  for (auto [p, expect] : {std::pair{2L, expect2}, std::pair{3L, expect3}}) {
    const Field* f = Field::get(p, 1);
    std::array<long, 13> hist{};
    const std::uint64_t total = [&] {
      std::uint64_t t = 1;
      for (int i = 0; i < 8; ++i) t *= f->order();
      return t;
    }();
    for (std::uint64_t n = 0; n < total; ++n) {
      MSC A;
      std::uint64_t t = n;
      for (auto& v : A.e) {
        v = f->element_at(t % f->order());
        t /= f->order();
      }
      // canonicalize() self-checks witness transport and table agreement;
      // reaching the counter below certifies both.
      ClassResult r = canonicalize(A);
      hist[static_cast<std::size_t>(r.label.family)] += 1;
    }
    INFO("GF(" << p << ")");
    for (int i = 0; i < 13; ++i) {
      INFO("family " << i);
      CHECK(hist[static_cast<std::size_t>(i)] == expect[static_cast<std::size_t>(i)]);
    }
  }
}

TEST_CASE("canonicalize is invariant on orbits", "[canonical][property]") {
  std::mt19937_64 rng(61);
  for (const Field* f : {Field::get(7, 1), Field::get(2, 3), Field::get(3, 2), Field::get(2, 2)}) {
    for (int i = 0; i < 120; ++i) {
      MSC A = rand_msc(f, rng);
      GL2 g = rand_gl2(f, rng);
      ClassResult ra = canonicalize(A);
      ClassResult rb = canonicalize(transform(A, g));
      CHECK(ra.label == rb.label);
    }
  }
}

TEST_CASE("canonicalize output contract", "[canonical][property]") {
  std::mt19937_64 rng(67);
  const std::map<int, std::set<int>> allowed_subset = {
      {0, {5}},  {1, {1}},  {2, {2, 3}}, {3, {2, 3}}, {4, {2, 3}}, {5, {2, 3}}, {6, {4}},
      {7, {4}},  {8, {4}},  {9, {4}},    {10, {5}},   {11, {5}},   {12, {5}}};
  for (const Field* f : {Field::get(7, 1), Field::get(5, 1), Field::get(2, 3), Field::get(3, 2)}) {
    for (int i = 0; i < 100; ++i) {
      MSC A = rand_msc(f, rng);
      ClassResult r = canonicalize(A);
      // Result field is the base or a bounded tower over it.
      REQUIRE(r.result_field->k() % f->k() == 0);
      int d = r.result_field->k() / f->k();
      CHECK((d == 1 || d == 2 || d == 3 || d == 6));
      // The label is normalized, its class matches the result field, the
      // canonical matrix is the label's table row, and the witness transports.
      CHECK(r.label == normalize_label(r.label));
      if (r.label.family != 0) CHECK(r.label.cls == class_for(r.result_field));
      CHECK(r.canonical == materialize(r.label, r.result_field));
      CHECK(transform(embed(A, r.result_field), r.witness) == r.canonical);
      CHECK(allowed_subset.at(r.label.family).count(subset_of(r.canonical).index) == 1);
    }
  }
}

TEST_CASE("materialized members classify into the expected subsets", "[canonical]") {
  const Field* f7 = Field::get(7, 1);
  auto sub = [&](int fam, std::vector<long> params) {
    return subset_of(materialize(label_of(f7, fam, std::move(params)), f7)).index;
  };
  CHECK(sub(1, {0, 0, 0, 0}) == 1);
  CHECK(sub(1, {3, 1, 4, 2}) == 1);
  CHECK(sub(2, {1, 0, 0}) == 2);   // lambda = a1 + b2 = 1
  CHECK(sub(2, {1, 0, 6}) == 3);   // lambda = 0 boundary member
  CHECK(sub(3, {2, 5}) == 2);
  CHECK(sub(4, {1, 2}) == 2);
  CHECK(sub(5, {2}) == 2);
  CHECK(sub(6, {1, 3}) == 4);
  CHECK(sub(7, {4}) == 4);
  CHECK(sub(8, {3}) == 4);
  CHECK(sub(9, {}) == 4);
  CHECK(sub(10, {}) == 5);
  CHECK(sub(11, {}) == 5);
  CHECK(sub(12, {}) == 5);
}

TEST_CASE("extension towers over GF(8): exhaustive trace-free sweep", "[canonical][extension]") {
  // Every trace-free shape (a1, a2, a2, a4 | b1, a1, a1, a2) over GF(8).
  // In characteristic 2 the root found by the cubic step zeroes the constant
  // term of the follow-up equation, so the quadratic step never extends:
  // the tower degrees are exactly {3, 6, 9}, never 18.
  const Field* f8 = Field::get(2, 3);
  std::map<int, long> degrees;
  std::map<int, long> families;
  for (std::uint64_t n = 0; n < 8 * 8 * 8 * 8; ++n) {
    std::uint64_t t = n;
    FieldElement a1 = f8->element_at(t % 8);
    FieldElement a2 = f8->element_at((t /= 8) % 8);
    FieldElement a4 = f8->element_at((t /= 8) % 8);
    FieldElement b1 = f8->element_at((t /= 8) % 8);
    MSC A;
    A.e = {a1, a2, a2, a4, b1, a1, a1, a2};  // -x = x in characteristic 2
    REQUIRE(subset_of(A).index == 5);
    ClassResult r = canonicalize(A);
    degrees[r.result_field->k()] += 1;
    families[r.label.family] += 1;
  }
  CHECK(degrees == std::map<int, long>{{3, 1156}, {6, 1764}, {9, 1176}});
  CHECK(families == std::map<int, long>{{0, 1}, {10, 504}, {11, 3528}, {12, 63}});
}

TEST_CASE("sextic tower in odd characteristic", "[canonical][extension]") {
  // Over GF(7) the trace-free branch can need an irreducible cubic step and
  // then a square root that only exists after one more quadratic step, for a
  // total degree of 6.  Frozen slice a1 = a2 = 0 (49 inputs).
  const Field* f7 = Field::get(7, 1);
  std::map<int, long> degrees;
  std::map<int, long> families;
  for (long a4 = 0; a4 < 7; ++a4)
    for (long b1 = 0; b1 < 7; ++b1) {
      MSC A = MSC::from_ints(f7, {0, 0, 0, a4, b1, 0, 0, 0});
      ClassResult r = canonicalize(A);
      degrees[r.result_field->k()] += 1;
      families[r.label.family] += 1;
    }
  CHECK(degrees == std::map<int, long>{{1, 13}, {2, 12}, {6, 24}});
  CHECK(families == std::map<int, long>{{0, 1}, {11, 36}, {12, 12}});

  // One pinned representative of the full tower.
  MSC deep = MSC::from_ints(f7, {0, 0, 0, 1, 2, 0, 0, 0});
  ClassResult r = canonicalize(deep);
  CHECK(r.result_field == Field::get(7, 6));
  CHECK(r.label.family == 11);
  CHECK(transform(embed(deep, r.result_field), r.witness) == r.canonical);
}

TEST_CASE("is_isomorphic verdicts and witnesses", "[canonical][isom]") {
  const Field* f7 = Field::get(7, 1);
  MSC A = materialize(label_of(f7, 2, {1, 2, 0}), f7);
  MSC B = materialize(label_of(f7, 2, {1, 5, 0}), f7);
  IsoResult iso = is_isomorphic(A, B);
  CHECK(iso.isomorphic);
  CHECK(iso.field == f7);
  REQUIRE(iso.witness.has_value());
  CHECK(transform(A, *iso.witness) == B);

  CHECK_FALSE(is_isomorphic(materialize(label_of(f7, 10, {}), f7),
                            materialize(label_of(f7, 11, {}), f7))
                  .isomorphic);
  CHECK_FALSE(is_isomorphic(A, materialize(label_of(f7, 4, {1, 2}), f7)).isomorphic);
  CHECK_FALSE(is_isomorphic(MSC::zero(f7), A).isomorphic);

  IsoResult z = is_isomorphic(MSC::zero(f7), MSC::zero(f7));
  CHECK(z.isomorphic);
  REQUIRE(z.witness.has_value());
  CHECK(*z.witness == GL2::identity(f7));

  CHECK_THROWS_AS(is_isomorphic(A, MSC::zero(Field::get(3, 1))), std::invalid_argument);

  // Random conjugate pairs are always detected, with transporting witnesses.
  std::mt19937_64 rng(73);
  for (const Field* f : {Field::get(7, 1), Field::get(3, 2), Field::get(2, 3)}) {
    for (int i = 0; i < 60; ++i) {
      MSC M = rand_msc(f, rng);
      GL2 g = rand_gl2(f, rng);
      MSC N = transform(M, g);
      IsoResult res = is_isomorphic(M, N);
      CHECK(res.isomorphic);
      REQUIRE(res.witness.has_value());
      CHECK(transform(embed(M, res.field), *res.witness) == embed(N, res.field));
    }
  }
}

TEST_CASE("sign-flip conjugacy inside families 2 and 6", "[canonical][isom]") {
  // diag(1, -1) realizes the identification (a, b, ...) ~ (a, -b, ...).
  for (const Field* f : {Field::get(7, 1), Field::get(3, 2)}) {
    GL2 flip = GL2::from_matrix(f->one(), f->zero(), f->zero(), f->from_int(-1));
    std::mt19937_64 rng(79);
    for (int i = 0; i < 40; ++i) {
      FieldElement a = f->element_at(rng() % f->order());
      FieldElement b = f->element_at(rng() % f->order());
      FieldElement c = f->element_at(rng() % f->order());
      FamilyLabel L2;
      L2.cls = class_for(f);
      L2.family = 2;
      L2.params = {a, b, c};
      MSC M = materialize(L2, f);
      FamilyLabel L2n = L2;
      L2n.params[1] = -b;
      CHECK(transform(M, flip) == materialize(L2n, f));
      CHECK(canonicalize(M).label == canonicalize(materialize(L2n, f)).label);

      FamilyLabel L6;
      L6.cls = class_for(f);
      L6.family = 6;
      L6.params = {a, b};
      FamilyLabel L6n = L6;
      L6n.params[1] = -b;
      CHECK(transform(materialize(L6, f), flip) == materialize(L6n, f));
    }
  }
}
