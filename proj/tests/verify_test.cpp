// Self-check suites: a clean build passes them all, and injected faults in
// the action or the classifier are actually detected (the suites are live).

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "alg2d/verify.hpp"

using namespace alg2d;

TEST_CASE("all verification suites pass on the real implementation", "[verify]") {
  VerifyOptions opt;
  opt.samples = 800;
  std::ostringstream out;
  auto results = run_verify("all", opt, &out);
  REQUIRE(results.size() == 4);
  for (const auto& r : results) {
    INFO(r.name);
    CHECK(r.checks > 0);
    CHECK(r.failures == 0);
  }
  CHECK(out.str().find("suite eq21:") != std::string::npos);
  CHECK(out.str().find("0 failures") != std::string::npos);
}

TEST_CASE("suite selection", "[verify]") {
  VerifyOptions opt;
  opt.samples = 50;
  auto one = run_verify("action", opt, nullptr);
  REQUIRE(one.size() == 1);
  CHECK(one[0].name == "action");
  CHECK_THROWS_AS(run_verify("nonsense", opt, nullptr), std::invalid_argument);
}

TEST_CASE("a corrupted action is detected by eq21 and the action laws", "[verify]") {
  VerifyOptions opt;
  opt.samples = 400;
  int calls = 0;
  opt.transform_fn = [&calls](const MSC& A, const GL2& g) {
    MSC r = transform(A, g);
    if (++calls % 5 == 0) r.e[0] = r.e[0] + A.field()->one();  // sporadic corruption
    return r;
  };
  auto eq = run_verify("eq21", opt, nullptr);
  CHECK(eq[0].failures > 0);
  calls = 0;
  auto act = run_verify("action", opt, nullptr);
  CHECK(act[0].failures > 0);
}

TEST_CASE("a mislabeling classifier is detected by the idempotence suite", "[verify]") {
  VerifyOptions opt;
  opt.canonicalize_fn = [](const MSC& A) {
    ClassResult r = canonicalize(A);
    if (r.label.family == 4 && !r.label.params.empty())
      r.label.params[0] = r.label.params[0] + r.result_field->one();
    return r;
  };
  auto idem = run_verify("idempotence", opt, nullptr);
  CHECK(idem[0].failures > 0);
  // The honest classifier passes the same grid.
  VerifyOptions clean;
  auto ok = run_verify("idempotence", clean, nullptr);
  CHECK(ok[0].failures == 0);
}
