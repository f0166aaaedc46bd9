#include <doctest.h>

#include <sstream>

#include "md5fol/verify.hpp"

using namespace md5fol;

namespace {

const ToleranceConfig kTol;

std::string render(const std::optional<FamilyId>& scope, const RunConfig& cfg) {
  std::ostringstream os;
  render_report(run_verification(scope, cfg), scope, cfg, os);
  return os.str();
}

}  // namespace

TEST_CASE("run config validation") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.n_samples = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.n_samples = 10;
  cfg.tolerances.residual_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("dimension suite passes and counts draws times points") {
  const PropertyReport rep = run_md_rank_suite(FamilyId::G5_4_3, 9, 3, 30, kTol);
  CHECK(rep.suite == "md-rank");
  CHECK(rep.subject == "G5_4_3");
  CHECK(rep.n_samples == 90);
  CHECK(rep.pass());
  CHECK(rep.max_residual == 0.0);
}

TEST_CASE("tangency suite passes on sampled leaves") {
  const PropertyReport rep = run_tangency_suite(FamilyId::G5_4_8, 9, 4, 40, kTol);
  CHECK(rep.suite == "tangency");
  CHECK(rep.n_samples == 40);
  CHECK(rep.pass());
  CHECK(rep.max_residual < kTol.residual_tol);
}

TEST_CASE("flow oracle suite confirms the closed-form charts") {
  const PropertyReport rep =
      run_flow_oracle_suite(FamilyId::G5_4_12, 9, 2, 10, 400, kTol);
  CHECK(rep.suite == "flow-oracle");
  CHECK(rep.n_samples == 10);
  CHECK(rep.pass());
}

TEST_CASE("round-trip and leaf-to-leaf suites share stream structure") {
  const auto rt = run_round_trip_suites(FamilyId::G5_4_10, 9, 4, 40, 1e-9, kTol);
  const auto ll = run_leaf_to_leaf_suites(FamilyId::G5_4_10, 9, 4, 40, kTol);
  REQUIRE(rt.size() == 6);  // main stream plus five pinned strata
  REQUIRE(ll.size() == 6);
  for (std::size_t i = 0; i < rt.size(); ++i) {
    CHECK(rt[i].suite == "round-trip");
    CHECK(ll[i].suite == "leaf-to-leaf");
    CHECK(rt[i].subject == ll[i].subject);
    CHECK(rt[i].n_samples == ll[i].n_samples);
    CHECK(rt[i].pass());
    CHECK(ll[i].pass());
  }
  CHECK(rt[1].subject == "G5_4_10[beta=0]");
}

TEST_CASE("fibration suite identifies leaves with fibers") {
  const PropertyReport rep = run_fibration_suite(9, 50, 1e-9, kTol);
  CHECK(rep.suite == "fibration");
  CHECK(rep.subject == "G5_4_5");
  CHECK(rep.n_samples == 50);
  CHECK(rep.pass());
}

TEST_CASE("action suites identify orbits with leaves") {
  const PropertyReport a12 = run_action_suite(FamilyId::G5_4_12, 9, 50, kTol);
  CHECK(a12.suite == "action-rho-412");
  CHECK(a12.pass());
  const PropertyReport a14 = run_action_suite(FamilyId::G5_4_14, 9, 50, kTol);
  CHECK(a14.suite == "action-rho-414");
  CHECK(a14.pass());
  CHECK_THROWS_AS(run_action_suite(FamilyId::G5_4_1, 9, 10, kTol),
                  std::invalid_argument);
}

TEST_CASE("scoped verification composes the expected suite list") {
  RunConfig cfg;
  cfg.seed = 11;
  cfg.n_samples = 60;
  const VerifyOutcome outcome =
      run_verification(FamilyId::G5_4_13, cfg);
  // md-rank, tangency, flow-oracle, then round-trip and leaf-to-leaf over
  // the main stream plus three pinned strata
  CHECK(outcome.reports.size() == 11);
  CHECK(outcome.all_pass());
  CHECK(outcome.failures() == 0);
}

TEST_CASE("verification reports are byte-identical across runs") {
  RunConfig cfg;
  cfg.seed = 5;
  cfg.n_samples = 50;
  const std::string one = render(FamilyId::G5_4_2, cfg);
  const std::string two = render(FamilyId::G5_4_2, cfg);
  CHECK(one == two);
  CHECK(one.find("SUITE md-rank") != std::string::npos);
  CHECK(one.find("RESULT: PASS") != std::string::npos);

  cfg.format = ReportFormat::json;
  const std::string j1 = render(FamilyId::G5_4_2, cfg);
  const std::string j2 = render(FamilyId::G5_4_2, cfg);
  CHECK(j1 == j2);
  CHECK(j1.find("\"result\"") != std::string::npos);
  CHECK(j1.find("RESULT: PASS") != std::string::npos);

  // a different seed must change at least the sampled residuals
  RunConfig other = cfg;
  other.format = ReportFormat::text;
  other.seed = 6;
  CHECK(render(FamilyId::G5_4_2, other) != one);
}

TEST_CASE("an unattainable tolerance is reported as failure with evidence") {
  RunConfig cfg;
  cfg.seed = 5;
  cfg.n_samples = 40;
  cfg.tolerances.membership_tol = 1e-18;
  const VerifyOutcome outcome = run_verification(FamilyId::G5_4_6, cfg);
  CHECK_FALSE(outcome.all_pass());
  CHECK(outcome.failures() > 0);
  std::ostringstream os;
  render_report(outcome, FamilyId::G5_4_6, cfg, os);
  const std::string text = os.str();
  CHECK(text.find("RESULT: FAIL") != std::string::npos);
  CHECK(text.find("  CE residual=") != std::string::npos);
  bool has_counterexample = false;
  for (const PropertyReport& r : outcome.reports)
    if (!r.counterexamples.empty() && !r.counterexamples.front().input.empty())
      has_counterexample = true;
  CHECK(has_counterexample);
}
