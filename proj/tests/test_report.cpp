#include <gtest/gtest.h>

#include <random>

#include "bpsw/bpsw.hpp"
#include "bpsw/report.hpp"

using namespace bpsw;

namespace {

PipelineOptions bare() {
  PipelineOptions o;
  o.sieve_bound = 0;
  return o;
}

}  // namespace

TEST(Report, JsonRoundTripsAcrossVerdicts) {
  std::vector<PipelineReport> reports;
  for (std::uint64_t n : {0u, 1u, 2u, 9u, 25u, 341u, 913u, 2047u, 5459u, 104729u}) {
    reports.push_back(run_pipeline(n, bare()));
    reports.push_back(run_pipeline(n, {}));
  }
  auto o = bare();
  o.skip_step1 = true;
  o.variant = Variant::Original;
  reports.push_back(run_pipeline(913, o));
  o.params = LucasParams::from_pq(27, 47);
  reports.push_back(run_pipeline(341, o));
  reports.push_back(run_pipeline(Natural::parse("170141183460469231731687303715884105727"), {}));
  PipelineOptions t;
  t.params = theorem1_params(0);  // Q = 1/2
  reports.push_back(run_pipeline(2047, t));

  for (const auto& r : reports) {
    EXPECT_EQ(report_from_json(to_json(r)), r) << to_json(r);
    EXPECT_EQ(report_from_json(to_json(r, 2)), r);
  }
}

TEST(Report, RandomComposites) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const Natural n((rng() >> 20) | 1);
    const auto r = run_pipeline(n, bare());
    ASSERT_EQ(report_from_json(to_json(r)), r);
    if (r.certificate) {
      EXPECT_EQ(certificate_from_json(to_json(*r.certificate)), *r.certificate);
    }
  }
}

TEST(Report, ParamsRoundTrip) {
  for (unsigned k = 0; k < 4; ++k) {
    const auto p = theorem1_params(k);
    EXPECT_EQ(params_from_json(to_json(p)), p);
  }
  const auto p = LucasParams::from_pq(Integer("-123456789012345678901234567890"), 7, Method::R);
  EXPECT_EQ(params_from_json(to_json(p)), p);
}

TEST(Report, RejectsMalformedInput) {
  EXPECT_THROW(report_from_json("{"), std::invalid_argument);
  EXPECT_THROW(report_from_json(R"({"n":"5"})"), std::invalid_argument);
  EXPECT_THROW(certificate_from_json(R"({"kind":"nope","n":"9"})"), std::invalid_argument);
  EXPECT_THROW(certificate_from_json(R"({"kind":"small-factor","n":"-9"})"), std::invalid_argument);
}

TEST(Report, TextNamesTheFailedStep) {
  const auto text = to_text(run_pipeline(2047, bare()));
  EXPECT_NE(text.find("verdict: composite"), std::string::npos);
  EXPECT_NE(text.find("step 3"), std::string::npos);
  EXPECT_NE(text.find("failed-slprp"), std::string::npos);
}
