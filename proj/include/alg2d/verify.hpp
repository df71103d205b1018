#pragma once

// Self-check suites behind the `verify` CLI verb: trace equivariance, action
// laws, the canonical-form idempotence grid, and exhaustive census agreement.
// The transform and canonicalize entry points are injectable so the test
// suite can seed faults and confirm the suites catch them; production callers
// use the defaults.

#include <functional>
#include <ostream>
#include <random>

#include "oracle.hpp"

namespace alg2d {

inline constexpr std::uint64_t kDefaultSeed = 12345;

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
};

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  int samples = 2000;  // per field, for the randomized suites
  std::function<MSC(const MSC&, const GL2&)> transform_fn;
  std::function<ClassResult(const MSC&)> canonicalize_fn;
};

namespace detail {

inline MSC random_msc(const Field* f, std::mt19937_64& rng) {
  MSC m;
  for (auto& v : m.e) v = f->element_at(rng() % f->order());
  return m;
}

inline GL2 random_gl2(const Field* f, std::mt19937_64& rng) {
  for (;;) {
    FieldElement a = f->element_at(rng() % f->order());
    FieldElement b = f->element_at(rng() % f->order());
    FieldElement c = f->element_at(rng() % f->order());
    FieldElement d = f->element_at(rng() % f->order());
    if (!(a * d - b * c).is_zero()) return GL2::from_matrix(a, b, c, d);
  }
}

inline const std::array<const Field*, 3>& verify_fields() {
  static const std::array<const Field*, 3> fields{Field::get(7, 1), Field::get(2, 3),
                                                  Field::get(3, 2)};
  return fields;
}

}  // namespace detail

// Both trace forms transform as row vectors times g^{-1}.
inline SuiteResult verify_eq21(const VerifyOptions& opt) {
  auto tf = opt.transform_fn ? opt.transform_fn
                             : [](const MSC& A, const GL2& g) { return transform(A, g); };
  SuiteResult res{"eq21"};
  std::mt19937_64 rng(opt.seed);
  for (const Field* f : detail::verify_fields())
    for (int i = 0; i < opt.samples; ++i) {
      MSC A = detail::random_msc(f, rng);
      GL2 g = detail::random_gl2(f, rng);
      TracePair before = traces(A);
      TracePair after = traces(tf(A, g));
      ++res.checks;
      if (!(after.tr1 == row_times(before.tr1, g.ia, g.ib, g.ic, g.id)) ||
          !(after.tr2 == row_times(before.tr2, g.ia, g.ib, g.ic, g.id)))
        ++res.failures;
    }
  return res;
}

// Left action laws: identity, composition, inversion.
inline SuiteResult verify_action(const VerifyOptions& opt) {
  auto tf = opt.transform_fn ? opt.transform_fn
                             : [](const MSC& A, const GL2& g) { return transform(A, g); };
  SuiteResult res{"action"};
  std::mt19937_64 rng(opt.seed + 1);
  for (const Field* f : detail::verify_fields())
    for (int i = 0; i < opt.samples; ++i) {
      MSC A = detail::random_msc(f, rng);
      GL2 g = detail::random_gl2(f, rng);
      GL2 h = detail::random_gl2(f, rng);
      ++res.checks;
      if (!(tf(A, GL2::identity(f)) == A) || !(tf(tf(A, h), g) == tf(A, g * h)) ||
          !(tf(tf(A, g), g.inverse()) == A))
        ++res.failures;
    }
  return res;
}

// Every table member over the {0,1,2} parameter grid canonicalizes to its own
// (normalized) label without leaving the base field.
inline SuiteResult verify_idempotence(const VerifyOptions& opt) {
  auto cf = opt.canonicalize_fn ? opt.canonicalize_fn
                                : [](const MSC& A) { return canonicalize(A); };
  SuiteResult res{"idempotence"};
  struct Cls {
    LabelClass cls;
    const Field* f;
  };
  const std::array<Cls, 3> classes{Cls{LabelClass::general, Field::get(7, 1)},
                                   Cls{LabelClass::char2, Field::get(2, 1)},
                                   Cls{LabelClass::char3, Field::get(3, 1)}};
  for (const auto& [cls, f] : classes) {
    std::vector<FieldElement> grid;
    for (long v = 0; v < 3 && v < f->p(); ++v) grid.push_back(f->from_int(v));
    for (int fam = 1; fam <= 12; ++fam) {
      int n = param_count(fam);
      std::vector<std::size_t> ix(static_cast<std::size_t>(n), 0);
      for (;;) {
        std::vector<FieldElement> params;
        for (int i = 0; i < n; ++i) params.push_back(grid[ix[static_cast<std::size_t>(i)]]);
        FamilyLabel L{cls, fam, params};
        FamilyLabel want = normalize_label(L);
        ++res.checks;
        bool ok = false;
        try {
          ClassResult r = cf(materialize(L, f));
          ok = r.result_field == f && r.label.cls == want.cls &&
               r.label.family == want.family && r.label.params.size() == want.params.size();
          if (ok)
            for (std::size_t i = 0; i < want.params.size(); ++i)
              if (r.label.params[i] != want.params[i]) ok = false;
        } catch (const std::exception&) {
          ok = false;
        }
        if (!ok) ++res.failures;
        int pos = n - 1;
        while (pos >= 0 && ++ix[static_cast<std::size_t>(pos)] == grid.size()) {
          ix[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    }
  }
  return res;
}

// Exhaustive orbit decomposition over GF(2) and GF(3) agrees with the
// classifier: partition of the whole space, label-constant orbits, orbit
// sizes dividing the group order, the zero orbit a singleton.
inline SuiteResult verify_census(const VerifyOptions& opt) {
  (void)opt;
  SuiteResult res{"census"};
  for (long p : {2L, 3L}) {
    const Field* f = Field::get(p, 1);
    ++res.checks;
    try {
      CensusTable t = census(f);  // throws on label-heterogeneous orbits
      std::uint64_t sum = 0;
      bool ok = true;
      for (const auto& r : t.rows) {
        sum += r.size;
        if (gl2_count(f) % r.size != 0) ok = false;
      }
      if (sum != t.total || !t.rows[0].representative.is_zero() || t.rows[0].size != 1)
        ok = false;
      if (!ok) ++res.failures;
    } catch (const std::exception&) {
      ++res.failures;
    }
  }
  return res;
}

// Runs the named suite ("all" for every one); prints one line per suite.
inline std::vector<SuiteResult> run_verify(const std::string& suite, const VerifyOptions& opt,
                                           std::ostream* out) {
  std::vector<SuiteResult> results;
  if (suite == "all" || suite == "eq21") results.push_back(verify_eq21(opt));
  if (suite == "all" || suite == "action") results.push_back(verify_action(opt));
  if (suite == "all" || suite == "idempotence") results.push_back(verify_idempotence(opt));
  if (suite == "all" || suite == "census") results.push_back(verify_census(opt));
  if (results.empty()) throw std::invalid_argument("unknown suite: " + suite);
  if (out)
    for (const auto& r : results)
      *out << "suite " << r.name << ": " << r.checks << " checks, " << r.failures
           << " failures\n";
  return results;
}

}  // namespace alg2d
