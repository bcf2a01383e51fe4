// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "datatest/audit.hpp"
#include "datatest/data_io.hpp"
#include "datatest/errors.hpp"

using namespace datatest;
using audit::AnalysisTrace;
using audit::Classification;
using audit::Event;
using audit::EventKind;
using audit::FindingCode;
using audit::Phase;

namespace {

AnalysisTrace golden(const std::string& name) {
  return data_io::read_trace_file(std::string(DATATEST_FIXTURE_DIR) + "/" +
                                  name);
}

Event ev(Phase phase, EventKind kind,
         std::map<std::string, std::string> attrs = {}) {
  return Event::make(phase, kind, std::move(attrs));
}

std::vector<FindingCode> codes_of(const std::vector<audit::AuditFinding>& fs) {
  std::vector<FindingCode> codes;
  for (const auto& f : fs) codes.push_back(f.code);
  return codes;
}

}  // namespace

TEST_CASE("golden traces classify as the three canonical workflows") {
  CHECK(audit::classify(golden("trace_pure_fisher.txt")) ==
        Classification::PureFisher);
  CHECK(audit::classify(golden("trace_pure_np.txt")) ==
        Classification::PureNeymanPearson);
  CHECK(audit::classify(golden("trace_roving.txt")) ==
        Classification::NPLeaningNHST);
}

TEST_CASE("classification is a deletion distance over offending events") {
  // One alpha declaration inside otherwise-significance vocabulary: one
  // deletion restores purity on the significance side, two on the
  // acceptance side.
  const AnalysisTrace leaning = AnalysisTrace::from_events({
      ev(Phase::Apriori, EventKind::SetSignificanceLadder),
      ev(Phase::Apriori, EventKind::SetAlpha, {{"level", "0.05"}}),
      ev(Phase::Aposteriori, EventKind::RunTest),
      ev(Phase::Aposteriori, EventKind::ObserveP, {{"p", "0.02"}}),
      ev(Phase::Aposteriori, EventKind::ClaimConclusion,
         {{"claim", "reject_h0"}}),
  });
  CHECK(audit::fisher_offense_count(leaning) == 1);
  CHECK(audit::np_offense_count(leaning) == 2);
  CHECK(audit::classify(leaning) == Classification::FisherLeaningNHST);

  // Equal distances from both pure forms: incoherent.
  const AnalysisTrace tie = AnalysisTrace::from_events({
      ev(Phase::Apriori, EventKind::SetAlpha, {{"level", "0.05"}}),
      ev(Phase::Apriori, EventKind::SetSignificanceLadder),
  });
  CHECK(audit::fisher_offense_count(tie) == 1);
  CHECK(audit::np_offense_count(tie) == 1);
  CHECK(audit::classify(tie) == Classification::Incoherent);

  // The quartet alone is not enough for purity; an a-posteriori correction
  // is an acceptance-side offense.
  const AnalysisTrace corrected = AnalysisTrace::from_events({
      ev(Phase::Apriori, EventKind::SetAlpha, {{"level", "0.05"}}),
      ev(Phase::Apriori, EventKind::SetBeta, {{"level", "0.2"}}),
      ev(Phase::Apriori, EventKind::DeclareEffectSize, {{"d", "0.5"}}),
      ev(Phase::Apriori, EventKind::JustifySampleSize,
         {{"n", "51"}, {"method", "power"}}),
      ev(Phase::Aposteriori, EventKind::CorrectionApplied,
         {{"method", "holm"}}),
      ev(Phase::Aposteriori, EventKind::ClaimConclusion,
         {{"claim", "accept_ha"}}),
  });
  CHECK(audit::np_offense_count(corrected) == 1);
  CHECK(audit::classify(corrected) != Classification::PureNeymanPearson);

  // An a-priori correction plan is not.
  const AnalysisTrace planned = AnalysisTrace::from_events({
      ev(Phase::Apriori, EventKind::SetAlpha, {{"level", "0.05"}}),
      ev(Phase::Apriori, EventKind::SetBeta, {{"level", "0.2"}}),
      ev(Phase::Apriori, EventKind::DeclareEffectSize, {{"d", "0.5"}}),
      ev(Phase::Apriori, EventKind::JustifySampleSize,
         {{"n", "51"}, {"method", "power"}}),
      ev(Phase::Apriori, EventKind::CorrectionApplied, {{"method", "bonferroni"}}),
      ev(Phase::Aposteriori, EventKind::ClaimConclusion,
         {{"claim", "accept_ha"}}),
  });
  CHECK(audit::classify(planned) == Classification::PureNeymanPearson);

  CHECK_THROWS_AS(audit::classify(AnalysisTrace::from_events({})),
                  precondition_error);
  CHECK_THROWS_AS(audit::audit(AnalysisTrace::from_events({})),
                  precondition_error);
}

TEST_CASE("golden traces: findings") {
  CHECK(audit::audit(golden("trace_pure_fisher.txt")).empty());
  CHECK(audit::audit(golden("trace_pure_np.txt")).empty());

  const auto findings = audit::audit(golden("trace_roving.txt"));
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].code == FindingCode::ROVING_ALPHA);
  CHECK(findings[0].severity == audit::Severity::Incoherent);
  CHECK(findings[0].registry_ref == "roving_compensation");
  CHECK(findings[0].explanation.find("0.05") != std::string::npos);
  CHECK(findings[0].explanation.find("0.01") != std::string::npos);
}

TEST_CASE("a roved alpha without a design draws the retrofit findings too") {
  const AnalysisTrace trace = AnalysisTrace::from_events({
      ev(Phase::Apriori, EventKind::SetAlpha, {{"level", "0.05"}}),
      ev(Phase::Aposteriori, EventKind::ObserveP, {{"p", "0.01"}}),
      ev(Phase::Aposteriori, EventKind::AdjustAlpha,
         {{"old", "0.05"}, {"new", "0.01"}}),
      ev(Phase::Aposteriori, EventKind::ClaimConclusion,
         {{"claim", "accept_ha"}}),
  });
  CHECK(audit::classify(trace) == Classification::NPLeaningNHST);
  CHECK(codes_of(audit::audit(trace)) ==
        std::vector<FindingCode>{FindingCode::ROVING_ALPHA,
                                 FindingCode::NO_EFFECT_SIZE,
                                 FindingCode::NO_POWER_DESIGN});
}

TEST_CASE("each detector has a minimal trigger and a negative control") {
  SUBCASE("P_AS_TYPE1 fires when the reported rate is the observed p") {
    const AnalysisTrace bad = AnalysisTrace::from_events({
        ev(Phase::Apriori, EventKind::SetAlpha, {{"level", "0.05"}}),
        ev(Phase::Apriori, EventKind::DeclareEffectSize, {{"d", "0.5"}}),
        ev(Phase::Apriori, EventKind::JustifySampleSize, {{"n", "51"}}),
        ev(Phase::Aposteriori, EventKind::ObserveP, {{"p", "0.016"}}),
        ev(Phase::Aposteriori, EventKind::ClaimConclusion,
           {{"claim", "accept_ha"}, {"reported_type1", "0.016"}}),
    });
    const auto codes = codes_of(audit::audit(bad));
    CHECK(std::count(codes.begin(), codes.end(), FindingCode::P_AS_TYPE1) == 1);
  }
  SUBCASE("P_AS_TYPE1 stays quiet when the declared alpha is reported") {
    const AnalysisTrace fine = AnalysisTrace::from_events({
        ev(Phase::Apriori, EventKind::SetAlpha, {{"level", "0.05"}}),
        ev(Phase::Apriori, EventKind::DeclareEffectSize, {{"d", "0.5"}}),
        ev(Phase::Apriori, EventKind::JustifySampleSize, {{"n", "51"}}),
        ev(Phase::Aposteriori, EventKind::ObserveP, {{"p", "0.016"}}),
        ev(Phase::Aposteriori, EventKind::ClaimConclusion,
           {{"claim", "accept_ha"}, {"reported_type1", "0.05"}}),
    });
    const auto codes = codes_of(audit::audit(fine));
    CHECK(std::count(codes.begin(), codes.end(), FindingCode::P_AS_TYPE1) == 0);
    // Even when p happens to equal the declared alpha, the declaration wins.
    const AnalysisTrace ambiguous = AnalysisTrace::from_events({
        ev(Phase::Apriori, EventKind::SetAlpha, {{"level", "0.05"}}),
        ev(Phase::Apriori, EventKind::DeclareEffectSize, {{"d", "0.5"}}),
        ev(Phase::Apriori, EventKind::JustifySampleSize, {{"n", "51"}}),
        ev(Phase::Aposteriori, EventKind::ObserveP, {{"p", "0.05"}}),
        ev(Phase::Aposteriori, EventKind::ClaimConclusion,
           {{"claim", "accept_ha"}, {"reported_type1", "0.05"}}),
    });
    const auto codes2 = codes_of(audit::audit(ambiguous));
    CHECK(std::count(codes2.begin(), codes2.end(), FindingCode::P_AS_TYPE1) ==
          0);
  }
  SUBCASE("GRADATED_ALPHA") {
    const AnalysisTrace bad = AnalysisTrace::from_events({
        ev(Phase::Aposteriori, EventKind::ObserveP, {{"p", "0.0005"}}),
        ev(Phase::Aposteriori, EventKind::GradateAlpha, {{"level", "0.001"}}),
    });
    const auto codes = codes_of(audit::audit(bad));
    CHECK(std::count(codes.begin(), codes.end(), FindingCode::GRADATED_ALPHA) ==
          1);
  }
  SUBCASE("ACCEPT_H0_WITHOUT_POWER needs the a-priori beta and n") {
    const AnalysisTrace bad = AnalysisTrace::from_events({
        ev(Phase::Aposteriori, EventKind::RunTest),
        ev(Phase::Aposteriori, EventKind::ClaimConclusion,
           {{"claim", "accept_h0"}}),
    });
    auto codes = codes_of(audit::audit(bad));
    CHECK(std::count(codes.begin(), codes.end(),
                     FindingCode::ACCEPT_H0_WITHOUT_POWER) == 1);

    const AnalysisTrace fine = AnalysisTrace::from_events({
        ev(Phase::Apriori, EventKind::SetAlpha, {{"level", "0.05"}}),
        ev(Phase::Apriori, EventKind::SetBeta, {{"level", "0.2"}}),
        ev(Phase::Apriori, EventKind::DeclareEffectSize, {{"d", "0.8"}}),
        ev(Phase::Apriori, EventKind::JustifySampleSize, {{"n", "21"}}),
        ev(Phase::Aposteriori, EventKind::RunTest),
        ev(Phase::Aposteriori, EventKind::ClaimConclusion,
           {{"claim", "accept_h0"}}),
    });
    CHECK(audit::audit(fine).empty());
    CHECK(audit::classify(fine) == Classification::PureNeymanPearson);
  }
  SUBCASE("PROOF_CLAIM for either proof direction") {
    for (const char* claim : {"prove_ha", "disprove_h0"}) {
      const AnalysisTrace bad = AnalysisTrace::from_events({
          ev(Phase::Aposteriori, EventKind::RunTest),
          ev(Phase::Aposteriori, EventKind::ClaimConclusion,
             {{"claim", claim}}),
      });
      const auto codes = codes_of(audit::audit(bad));
      CHECK(std::count(codes.begin(), codes.end(), FindingCode::PROOF_CLAIM) ==
            1);
    }
  }
  SUBCASE("PARADIGM_MIX needs vocabulary from both sides") {
    const AnalysisTrace mixed = AnalysisTrace::from_events({
        ev(Phase::Apriori, EventKind::SetSignificanceLadder),
        ev(Phase::Aposteriori, EventKind::ClaimConclusion,
           {{"claim", "accept_ha"}}),
    });
    auto codes = codes_of(audit::audit(mixed));
    CHECK(std::count(codes.begin(), codes.end(), FindingCode::PARADIGM_MIX) ==
          1);
    const AnalysisTrace pure = AnalysisTrace::from_events({
        ev(Phase::Apriori, EventKind::SetSignificanceLadder),
        ev(Phase::Aposteriori, EventKind::ClaimConclusion,
           {{"claim", "reject_h0"}}),
    });
    codes = codes_of(audit::audit(pure));
    CHECK(std::count(codes.begin(), codes.end(), FindingCode::PARADIGM_MIX) ==
          0);
  }
  SUBCASE("POSTHOC_ALPHA") {
    const AnalysisTrace bad = AnalysisTrace::from_events({
        ev(Phase::Aposteriori, EventKind::ObserveP, {{"p", "0.03"}}),
        ev(Phase::Aposteriori, EventKind::SetAlpha, {{"level", "0.05"}}),
    });
    const auto codes = codes_of(audit::audit(bad));
    CHECK(std::count(codes.begin(), codes.end(), FindingCode::POSTHOC_ALPHA) ==
          1);
  }
}

TEST_CASE("findings are emitted in fixed rule order") {
  const AnalysisTrace sink = AnalysisTrace::from_events({
      ev(Phase::Aposteriori, EventKind::SetAlpha, {{"level", "0.05"}}),
      ev(Phase::Aposteriori, EventKind::SetSignificanceLadder),
      ev(Phase::Aposteriori, EventKind::GradateAlpha, {{"level", "0.01"}}),
      ev(Phase::Aposteriori, EventKind::ObserveP, {{"p", "0.016"}}),
      ev(Phase::Aposteriori, EventKind::AdjustAlpha,
         {{"old", "0.05"}, {"new", "0.016"}}),
      ev(Phase::Aposteriori, EventKind::ClaimConclusion,
         {{"claim", "accept_h0"}, {"reported_type1", "0.016"}}),
      ev(Phase::Aposteriori, EventKind::ClaimConclusion,
         {{"claim", "prove_ha"}}),
  });
  CHECK(codes_of(audit::audit(sink)) ==
        std::vector<FindingCode>{
            FindingCode::ROVING_ALPHA, FindingCode::P_AS_TYPE1,
            FindingCode::GRADATED_ALPHA, FindingCode::NO_EFFECT_SIZE,
            FindingCode::NO_POWER_DESIGN,
            FindingCode::ACCEPT_H0_WITHOUT_POWER, FindingCode::PROOF_CLAIM,
            FindingCode::PARADIGM_MIX, FindingCode::POSTHOC_ALPHA});
}

TEST_CASE("adding offending events never removes findings") {
  std::vector<Event> base = golden("trace_roving.txt").events();
  const auto before = codes_of(audit::audit(AnalysisTrace::from_events(base)));

  std::vector<Event> more = base;
  more.push_back(
      ev(Phase::Aposteriori, EventKind::GradateAlpha, {{"level", "0.005"}}));
  more.push_back(ev(Phase::Aposteriori, EventKind::ClaimConclusion,
                    {{"claim", "prove_ha"}}));
  const auto after = codes_of(audit::audit(AnalysisTrace::from_events(more)));

  for (FindingCode code : before)
    CHECK(std::count(after.begin(), after.end(), code) >= 1);
  CHECK(after.size() > before.size());
}

TEST_CASE("the contrast registry is complete and internally linked") {
  const auto& registry = audit::contrast_registry();
  REQUIRE(registry.size() == 15);

  int concept_rows = 0;
  int compensations = 0;
  std::set<std::string> ids;
  for (const auto& entry : registry) {
    CHECK(ids.insert(entry.id).second);  // unique ids
    if (entry.kind == audit::RegistryEntry::Kind::ConceptRow) {
      ++concept_rows;
      CHECK_FALSE(entry.topic.empty());
      CHECK_FALSE(entry.fisher_entry.empty());
      CHECK_FALSE(entry.np_entry.empty());
      CHECK_FALSE(entry.hybrid_entry.empty());
    } else {
      ++compensations;
      CHECK_FALSE(entry.note.empty());
    }
    if (entry.non_goal) {
      CHECK(entry.rules.empty());
      CHECK_FALSE(entry.note.empty());
    }
  }
  CHECK(concept_rows == 13);
  CHECK(compensations == 2);

  // Every detector code is policed by at least one registry row.
  for (int c = 0; c <= static_cast<int>(FindingCode::POSTHOC_ALPHA); ++c) {
    const auto code = static_cast<FindingCode>(c);
    bool covered = false;
    for (const auto& entry : registry)
      covered = covered || std::count(entry.rules.begin(), entry.rules.end(),
                                      code) > 0;
    CHECK_MESSAGE(covered, "uncovered finding: ", audit::to_string(code));
  }

  CHECK(audit::find_registry_entry("cut_off_point") != nullptr);
  CHECK(audit::find_registry_entry("no_such_row") == nullptr);
}

TEST_CASE("every emitted finding cites a resolvable registry row") {
  const AnalysisTrace sink = AnalysisTrace::from_events({
      ev(Phase::Aposteriori, EventKind::SetAlpha, {{"level", "0.05"}}),
      ev(Phase::Aposteriori, EventKind::SetSignificanceLadder),
      ev(Phase::Aposteriori, EventKind::GradateAlpha, {{"level", "0.01"}}),
      ev(Phase::Aposteriori, EventKind::ObserveP, {{"p", "0.016"}}),
      ev(Phase::Aposteriori, EventKind::AdjustAlpha,
         {{"old", "0.05"}, {"new", "0.016"}}),
      ev(Phase::Aposteriori, EventKind::ClaimConclusion,
         {{"claim", "accept_h0"}, {"reported_type1", "0.016"}}),
      ev(Phase::Aposteriori, EventKind::ClaimConclusion,
         {{"claim", "prove_ha"}}),
  });
  const auto findings = audit::audit(sink);
  REQUIRE(findings.size() == 9);
  for (const auto& f : findings) {
    const auto* entry = audit::find_registry_entry(f.registry_ref);
    REQUIRE(entry != nullptr);
    CHECK(std::count(entry->rules.begin(), entry->rules.end(), f.code) == 1);
    CHECK_FALSE(f.explanation.empty());
  }
  // The expected citations, finding by finding.
  CHECK(findings[0].registry_ref == "roving_compensation");
  CHECK(findings[1].registry_ref == "error_probability");
  CHECK(findings[2].registry_ref == "cut_off_point");
  CHECK(findings[3].registry_ref == "effect_size_power_repair");
  CHECK(findings[4].registry_ref == "effect_size_power_repair");
  CHECK(findings[5].registry_ref == "result_vs_critical_region");
  CHECK(findings[6].registry_ref == "interpretation_in_cr");
  CHECK(findings[7].registry_ref == "research_goal");
  CHECK(findings[8].registry_ref == "approach");
}

TEST_CASE("effect-size/power retrofit on a bare significance trace") {
  const auto bundle = audit::fisher_repair(golden("trace_pure_fisher.txt"));
  REQUIRE(bundle.items.size() == 2);
  CHECK(bundle.used_defaults);
  REQUIRE(bundle.recommended_n.has_value());
  CHECK(*bundle.recommended_n == 51);  // d=0.5, alpha=.05, beta=.20, 1-tailed
  CHECK(bundle.items[1].detail.find("defaults used") != std::string::npos);
}

TEST_CASE("retrofit honors declared parameters") {
  // Declared d with no sample-size justification: only the n item remains,
  // solved at the declared effect size.
  const AnalysisTrace declared_d = AnalysisTrace::from_events({
      ev(Phase::Apriori, EventKind::SetSignificanceLadder),
      ev(Phase::Apriori, EventKind::DeclareEffectSize, {{"d", "0.8"}}),
      ev(Phase::Aposteriori, EventKind::ObserveP, {{"p", "0.002"}}),
      ev(Phase::Aposteriori, EventKind::ClaimConclusion,
         {{"claim", "reject_h0"}}),
  });
  CHECK(audit::classify(declared_d) == Classification::PureFisher);
  const auto bundle = audit::fisher_repair(declared_d);
  REQUIRE(bundle.items.size() == 1);
  CHECK(*bundle.recommended_n == 21);
  CHECK(bundle.used_defaults);  // alpha and beta still defaulted

  // All three declared: the solved n must match a direct solve (wiring
  // check; the solver itself is oracle-tested elsewhere).
  const AnalysisTrace declared_all = AnalysisTrace::from_events({
      ev(Phase::Apriori, EventKind::SetSignificanceLadder),
      ev(Phase::Apriori, EventKind::SetAlpha, {{"level", "0.05"}}),
      ev(Phase::Apriori, EventKind::SetBeta, {{"level", "0.10"}}),
      ev(Phase::Apriori, EventKind::DeclareEffectSize, {{"d", "0.5"}}),
      ev(Phase::Aposteriori, EventKind::ObserveP, {{"p", "0.002"}}),
      ev(Phase::Aposteriori, EventKind::CorrectionApplied,
         {{"method", "holm"}}),
      ev(Phase::Aposteriori, EventKind::ClaimConclusion,
         {{"claim", "reject_h0"}}),
  });
  CHECK(audit::classify(declared_all) == Classification::FisherLeaningNHST);
  const auto full = audit::fisher_repair(declared_all);
  CHECK_FALSE(full.used_defaults);
  CHECK(*full.recommended_n ==
        np::required_sample_size(np::EffectSize::custom(0.5), 0.05, 0.10,
                                 np::Tails::One, np::TestKind::TwoSampleT));
}

TEST_CASE("retrofit keeps the beta floor when a large alpha is declared") {
  const AnalysisTrace loose = AnalysisTrace::from_events({
      ev(Phase::Apriori, EventKind::SetSignificanceLadder),
      ev(Phase::Apriori, EventKind::SetAlpha, {{"level", "0.30"}}),
      ev(Phase::Aposteriori, EventKind::ObserveP, {{"p", "0.002"}}),
      ev(Phase::Aposteriori, EventKind::ClaimConclusion,
         {{"claim", "reject_h0"}}),
  });
  CHECK(audit::classify(loose) == Classification::FisherLeaningNHST);
  // Default beta .20 < declared alpha .30 would violate the floor; the
  // repair lifts beta to alpha instead of failing.
  const auto bundle = audit::fisher_repair(loose);
  CHECK(*bundle.recommended_n ==
        np::required_sample_size(np::EffectSize::custom(0.5), 0.30, 0.30,
                                 np::Tails::One, np::TestKind::TwoSampleT));
}

TEST_CASE("retrofit is a no-op when both pieces are present") {
  const AnalysisTrace complete = AnalysisTrace::from_events({
      ev(Phase::Apriori, EventKind::DeclareEffectSize, {{"d", "0.5"}}),
      ev(Phase::Apriori, EventKind::JustifySampleSize, {{"n", "51"}}),
      ev(Phase::Aposteriori, EventKind::ObserveP, {{"p", "0.01"}}),
      ev(Phase::Aposteriori, EventKind::ClaimConclusion,
         {{"claim", "reject_h0"}}),
  });
  CHECK(audit::classify(complete) == Classification::PureFisher);
  const auto bundle = audit::fisher_repair(complete);
  CHECK(bundle.items.empty());
  CHECK_FALSE(bundle.used_defaults);
  CHECK_FALSE(bundle.recommended_n.has_value());
}

TEST_CASE("retrofit refuses acceptance-leaning traces") {
  CHECK_THROWS_AS(audit::fisher_repair(golden("trace_pure_np.txt")),
                  precondition_error);
  CHECK_THROWS_AS(audit::fisher_repair(golden("trace_roving.txt")),
                  precondition_error);
}

TEST_CASE("roving-beta compensation") {
  const auto report = audit::roving_beta(0.05, 0.01, np::EffectSize::medium(),
                                         51, np::Tails::One);
  CHECK(report.original_alpha == 0.05);
  CHECK(report.roved_alpha == 0.01);
  CHECK(report.roved_beta == doctest::Approx(0.434732).epsilon(1e-4));
  CHECK(report.roving_power == doctest::Approx(1.0 - report.roved_beta));
  CHECK_FALSE(report.instruction.empty());

  // No rove: the pair collapses to the design's own beta.
  const auto same = audit::roving_beta(0.05, 0.05, np::EffectSize::medium(), 51,
                                       np::Tails::One);
  CHECK(same.roved_beta == doctest::Approx(0.194101).epsilon(1e-4));
}

TEST_CASE("roving-beta preconditions") {
  CHECK_THROWS_AS(audit::roving_beta(0.01, 0.05, np::EffectSize::medium(), 51,
                                     np::Tails::One),
                  parameter_error);  // upward rove
  CHECK_THROWS_AS(audit::roving_beta(0.05, 0.01, np::EffectSize::custom(0.0),
                                     51, np::Tails::One),
                  parameter_error);
  CHECK_THROWS_AS(audit::roving_beta(0.05, 0.01, np::EffectSize::medium(), 1,
                                     np::Tails::One),
                  parameter_error);
  CHECK_THROWS_AS(audit::roving_beta(0.0, 0.0, np::EffectSize::medium(), 51,
                                     np::Tails::One),
                  parameter_error);
}

TEST_CASE("event attribute accessors validate their input") {
  const Event no_level = ev(Phase::Apriori, EventKind::SetAlpha);
  CHECK_THROWS_AS(no_level.level(), parse_error);
  const Event bad_level =
      ev(Phase::Apriori, EventKind::SetAlpha, {{"level", "abc"}});
  CHECK_THROWS_AS(bad_level.level(), parse_error);
  const Event no_claim = ev(Phase::Aposteriori, EventKind::ClaimConclusion);
  CHECK_THROWS_AS(no_claim.claim(), parse_error);
  const Event bad_claim = ev(Phase::Aposteriori, EventKind::ClaimConclusion,
                             {{"claim", "assert_victory"}});
  CHECK_THROWS_AS(bad_claim.claim(), parse_error);
  const Event frac_n =
      ev(Phase::Apriori, EventKind::JustifySampleSize, {{"n", "12.5"}});
  CHECK_THROWS_AS(frac_n.n(), parse_error);
  const Event fine =
      ev(Phase::Apriori, EventKind::JustifySampleSize,
         {{"n", "33"}, {"method", "power"}});
  CHECK(fine.n() == 33);
  CHECK(fine.method().value() == "power");
  CHECK_FALSE(ev(Phase::Aposteriori, EventKind::ClaimConclusion,
                 {{"claim", "reject_h0"}})
                  .reported_type1()
                  .has_value());
}

TEST_CASE("trace construction rejects out-of-order phases") {
  CHECK_THROWS_AS(AnalysisTrace::from_events({
                      ev(Phase::Aposteriori, EventKind::RunTest),
                      ev(Phase::Apriori, EventKind::SetAlpha,
                         {{"level", "0.05"}}),
                  }),
                  parse_error);
}

TEST_CASE("names round-trip through their string forms") {
  using audit::ClaimKind;
  for (int k = 0; k <= static_cast<int>(EventKind::CorrectionApplied); ++k) {
    const auto kind = static_cast<EventKind>(k);
    CHECK(audit::event_kind_from_name(audit::to_string(kind)) == kind);
  }
  for (int k = 0; k <= static_cast<int>(ClaimKind::ConcludeNothing); ++k) {
    const auto kind = static_cast<ClaimKind>(k);
    CHECK(audit::claim_kind_from_name(audit::to_string(kind)) == kind);
  }
  CHECK(audit::phase_from_name("apriori") == Phase::Apriori);
  CHECK(audit::phase_from_name("aposteriori") == Phase::Aposteriori);
  CHECK_THROWS_AS(audit::phase_from_name("posterior"), parse_error);
  CHECK_THROWS_AS(audit::event_kind_from_name("wish_upon_star"), parse_error);
}
