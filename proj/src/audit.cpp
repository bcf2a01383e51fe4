// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#include "datatest/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "datatest/errors.hpp"

namespace datatest::audit {

namespace {

double parse_double_attr(const std::map<std::string, std::string>& attrs,
                         const std::string& key, const char* context) {
  const auto it = attrs.find(key);
  if (it == attrs.end())
    throw parse_error(std::string(context) + ": missing attribute '" + key + "'");
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw parse_error(std::string(context) + ": attribute '" + key +
                      "' is not a number: " + it->second);
  }
}

std::string two_places(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string four_places(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

bool is_np_style_claim(ClaimKind k) {
  return k == ClaimKind::AcceptH0 || k == ClaimKind::AcceptHA ||
         k == ClaimKind::ConcludeNothing || k == ClaimKind::ProveHA ||
         k == ClaimKind::DisproveH0;
}

bool is_proof_claim(ClaimKind k) {
  return k == ClaimKind::ProveHA || k == ClaimKind::DisproveH0;
}

bool fisher_offense(const Event& e) {
  switch (e.kind) {
    case EventKind::SetAlpha:
    case EventKind::SetBeta:
    case EventKind::GradateAlpha:
      return true;
    case EventKind::ClaimConclusion:
      return is_np_style_claim(e.claim());
    default:
      return false;
  }
}

bool np_offense(const Event& e) {
  switch (e.kind) {
    case EventKind::SetSignificanceLadder:
    case EventKind::GradateAlpha:
    case EventKind::AdjustAlpha:
      return true;
    case EventKind::CorrectionApplied:
      return e.phase == Phase::Aposteriori;
    case EventKind::ClaimConclusion: {
      const ClaimKind k = e.claim();
      return k == ClaimKind::RejectH0 || is_proof_claim(k);
    }
    default:
      return false;
  }
}

bool has_event(const AnalysisTrace& trace, EventKind kind,
               std::optional<Phase> phase = std::nullopt) {
  for (const Event& e : trace.events())
    if (e.kind == kind && (!phase || e.phase == *phase)) return true;
  return false;
}

const Event* find_event(const AnalysisTrace& trace, EventKind kind,
                        std::optional<Phase> phase = std::nullopt) {
  for (const Event& e : trace.events())
    if (e.kind == kind && (!phase || e.phase == *phase)) return &e;
  return nullptr;
}

bool uses_alpha(const AnalysisTrace& trace) {
  return has_event(trace, EventKind::SetAlpha) ||
         has_event(trace, EventKind::AdjustAlpha) ||
         has_event(trace, EventKind::GradateAlpha);
}

}  // namespace

double Event::level() const { return parse_double_attr(attrs, "level", "level event"); }
double Event::old_level() const { return parse_double_attr(attrs, "old", "adjust_alpha"); }
double Event::new_level() const { return parse_double_attr(attrs, "new", "adjust_alpha"); }
double Event::d() const { return parse_double_attr(attrs, "d", "declare_effect_size"); }
double Event::p() const { return parse_double_attr(attrs, "p", "observe_p"); }

int Event::n() const {
  const double v = parse_double_attr(attrs, "n", "justify_sample_size");
  if (v < 1.0 || v != std::floor(v))
    throw parse_error("justify_sample_size: n must be a positive integer");
  return static_cast<int>(v);
}

ClaimKind Event::claim() const {
  const auto it = attrs.find("claim");
  if (it == attrs.end()) throw parse_error("claim_conclusion: missing attribute 'claim'");
  return claim_kind_from_name(it->second);
}

std::optional<double> Event::reported_type1() const {
  if (attrs.find("reported_type1") == attrs.end()) return std::nullopt;
  return parse_double_attr(attrs, "reported_type1", "claim_conclusion");
}

std::optional<std::string> Event::method() const {
  const auto it = attrs.find("method");
  if (it == attrs.end()) return std::nullopt;
  return it->second;
}

Event Event::make(Phase phase, EventKind kind,
                  std::map<std::string, std::string> attrs) {
  Event e;
  e.phase = phase;
  e.kind = kind;
  e.attrs = std::move(attrs);
  return e;
}

AnalysisTrace AnalysisTrace::from_events(std::vector<Event> events) {
  bool seen_aposteriori = false;
  for (const Event& e : events) {
    if (e.phase == Phase::Aposteriori) seen_aposteriori = true;
    else if (seen_aposteriori)
      throw parse_error(
          "invalid trace: an a-priori event follows an a-posteriori one");
  }
  AnalysisTrace trace;
  trace.events_ = std::move(events);
  return trace;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::PureFisher: return "pure_fisher";
    case Classification::PureNeymanPearson: return "pure_neyman_pearson";
    case Classification::FisherLeaningNHST: return "fisher_leaning_nhst";
    case Classification::NPLeaningNHST: return "np_leaning_nhst";
    case Classification::Incoherent: return "incoherent";
  }
  return "?";
}

std::string to_string(Phase phase) {
  return phase == Phase::Apriori ? "apriori" : "aposteriori";
}

Phase phase_from_name(const std::string& name) {
  if (name == "apriori") return Phase::Apriori;
  if (name == "aposteriori") return Phase::Aposteriori;
  throw parse_error("unknown phase: " + name);
}

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::SetAlpha: return "set_alpha";
    case EventKind::SetSignificanceLadder: return "set_significance_ladder";
    case EventKind::SetBeta: return "set_beta";
    case EventKind::DeclareEffectSize: return "declare_effect_size";
    case EventKind::JustifySampleSize: return "justify_sample_size";
    case EventKind::ObserveP: return "observe_p";
    case EventKind::AdjustAlpha: return "adjust_alpha";
    case EventKind::GradateAlpha: return "gradate_alpha";
    case EventKind::ClaimConclusion: return "claim_conclusion";
    case EventKind::RunTest: return "run_test";
    case EventKind::CorrectionApplied: return "correction_applied";
  }
  return "?";
}

EventKind event_kind_from_name(const std::string& name) {
  static const std::map<std::string, EventKind> table = {
      {"set_alpha", EventKind::SetAlpha},
      {"set_significance_ladder", EventKind::SetSignificanceLadder},
      {"set_beta", EventKind::SetBeta},
      {"declare_effect_size", EventKind::DeclareEffectSize},
      {"justify_sample_size", EventKind::JustifySampleSize},
      {"observe_p", EventKind::ObserveP},
      {"adjust_alpha", EventKind::AdjustAlpha},
      {"gradate_alpha", EventKind::GradateAlpha},
      {"claim_conclusion", EventKind::ClaimConclusion},
      {"run_test", EventKind::RunTest},
      {"correction_applied", EventKind::CorrectionApplied},
  };
  const auto it = table.find(name);
  if (it == table.end()) throw parse_error("unknown trace event: " + name);
  return it->second;
}

std::string to_string(ClaimKind kind) {
  switch (kind) {
    case ClaimKind::RejectH0: return "reject_h0";
    case ClaimKind::AcceptH0: return "accept_h0";
    case ClaimKind::AcceptHA: return "accept_ha";
    case ClaimKind::ProveHA: return "prove_ha";
    case ClaimKind::DisproveH0: return "disprove_h0";
    case ClaimKind::ConcludeNothing: return "conclude_nothing";
  }
  return "?";
}

ClaimKind claim_kind_from_name(const std::string& name) {
  static const std::map<std::string, ClaimKind> table = {
      {"reject_h0", ClaimKind::RejectH0},   {"accept_h0", ClaimKind::AcceptH0},
      {"accept_ha", ClaimKind::AcceptHA},   {"prove_ha", ClaimKind::ProveHA},
      {"disprove_h0", ClaimKind::DisproveH0},
      {"conclude_nothing", ClaimKind::ConcludeNothing},
  };
  const auto it = table.find(name);
  if (it == table.end()) throw parse_error("unknown claim kind: " + name);
  return it->second;
}

int fisher_offense_count(const AnalysisTrace& trace) {
  int count = 0;
  for (const Event& e : trace.events())
    if (fisher_offense(e)) ++count;
  return count;
}

int np_offense_count(const AnalysisTrace& trace) {
  int count = 0;
  for (const Event& e : trace.events())
    if (np_offense(e)) ++count;
  return count;
}

Classification classify(const AnalysisTrace& trace) {
  if (trace.empty()) throw precondition_error("cannot classify an empty trace");
  const int d_fisher = fisher_offense_count(trace);
  const int d_np = np_offense_count(trace);
  const bool apriori_quartet =
      has_event(trace, EventKind::SetAlpha, Phase::Apriori) &&
      has_event(trace, EventKind::SetBeta, Phase::Apriori) &&
      has_event(trace, EventKind::DeclareEffectSize, Phase::Apriori) &&
      has_event(trace, EventKind::JustifySampleSize, Phase::Apriori);
  if (d_np == 0 && apriori_quartet) return Classification::PureNeymanPearson;
  if (d_fisher == 0) return Classification::PureFisher;
  if (d_fisher < d_np) return Classification::FisherLeaningNHST;
  if (d_np < d_fisher) return Classification::NPLeaningNHST;
  return Classification::Incoherent;
}

std::string to_string(FindingCode code) {
  switch (code) {
    case FindingCode::ROVING_ALPHA: return "ROVING_ALPHA";
    case FindingCode::P_AS_TYPE1: return "P_AS_TYPE1";
    case FindingCode::GRADATED_ALPHA: return "GRADATED_ALPHA";
    case FindingCode::NO_EFFECT_SIZE: return "NO_EFFECT_SIZE";
    case FindingCode::NO_POWER_DESIGN: return "NO_POWER_DESIGN";
    case FindingCode::ACCEPT_H0_WITHOUT_POWER: return "ACCEPT_H0_WITHOUT_POWER";
    case FindingCode::PROOF_CLAIM: return "PROOF_CLAIM";
    case FindingCode::PARADIGM_MIX: return "PARADIGM_MIX";
    case FindingCode::POSTHOC_ALPHA: return "POSTHOC_ALPHA";
  }
  return "?";
}

std::string to_string(Severity severity) {
  switch (severity) {
    case Severity::Incoherent: return "incoherent";
    case Severity::Damaging: return "damaging";
    case Severity::Advisory: return "advisory";
  }
  return "?";
}

std::vector<AuditFinding> audit(const AnalysisTrace& trace) {
  if (trace.empty()) throw precondition_error("cannot audit an empty trace");
  std::vector<AuditFinding> findings;
  const auto add = [&](FindingCode code, Severity severity, std::string ref,
                       std::string explanation) {
    findings.push_back(
        AuditFinding{code, severity, std::move(ref), std::move(explanation)});
  };

  // Roved alpha: any a-posteriori adjustment of the error rate.
  if (const Event* e =
          find_event(trace, EventKind::AdjustAlpha, Phase::Aposteriori)) {
    add(FindingCode::ROVING_ALPHA, Severity::Incoherent, "roving_compensation",
        "alpha adjusted from " + two_places(e->old_level()) + " to " +
            two_places(e->new_level()) +
            " after the data were seen; a long-run error rate cannot follow "
            "an observed p");
  }

  // An observed p reported as the Type I error rate of this single study.
  for (const Event& e : trace.events()) {
    if (e.kind != EventKind::ClaimConclusion) continue;
    const auto reported = e.reported_type1();
    if (!reported) continue;
    bool matches_observed_p = false;
    for (const Event& o : trace.events())
      if (o.kind == EventKind::ObserveP &&
          std::fabs(o.p() - *reported) < 1e-9)
        matches_observed_p = true;
    bool is_declared_alpha = false;
    for (const Event& o : trace.events())
      if (o.kind == EventKind::SetAlpha && o.phase == Phase::Apriori &&
          std::fabs(o.level() - *reported) < 1e-9)
        is_declared_alpha = true;
    if (matches_observed_p && !is_declared_alpha) {
      add(FindingCode::P_AS_TYPE1, Severity::Incoherent, "error_probability",
          "conclusion reports the observed p (" + four_places(*reported) +
              ") as the Type I error rate; a single study's p is not a "
              "long-run error probability");
      break;
    }
  }

  if (has_event(trace, EventKind::GradateAlpha)) {
    add(FindingCode::GRADATED_ALPHA, Severity::Incoherent, "cut_off_point",
        "alpha treated as a gradable evidence scale; the acceptance cut-off "
        "admits no gradation");
  }

  if (uses_alpha(trace)) {
    if (!has_event(trace, EventKind::DeclareEffectSize)) {
      add(FindingCode::NO_EFFECT_SIZE, Severity::Damaging,
          "effect_size_power_repair",
          "alpha is in play but no expected effect size was declared");
    }
    if (!has_event(trace, EventKind::JustifySampleSize)) {
      add(FindingCode::NO_POWER_DESIGN, Severity::Damaging,
          "effect_size_power_repair",
          "alpha is in play but the sample size was never justified by a "
          "power calculation");
    }
  }

  const bool power_design =
      has_event(trace, EventKind::SetBeta, Phase::Apriori) &&
      has_event(trace, EventKind::JustifySampleSize, Phase::Apriori);
  for (const Event& e : trace.events()) {
    if (e.kind == EventKind::ClaimConclusion &&
        e.claim() == ClaimKind::AcceptH0 && !power_design) {
      add(FindingCode::ACCEPT_H0_WITHOUT_POWER, Severity::Damaging,
          "result_vs_critical_region",
          "the null was accepted without a power design; acceptance requires "
          "good power, otherwise nothing can be concluded");
      break;
    }
  }

  for (const Event& e : trace.events()) {
    if (e.kind == EventKind::ClaimConclusion && is_proof_claim(e.claim())) {
      add(FindingCode::PROOF_CLAIM, Severity::Incoherent,
          "interpretation_in_cr",
          "a test outcome was reported as proof (" + to_string(e.claim()) +
              "); neither hypothesis can be proved or disproved by the test");
      break;
    }
  }

  bool fisher_vocab = has_event(trace, EventKind::SetSignificanceLadder);
  bool np_vocab = has_event(trace, EventKind::SetAlpha) ||
                  has_event(trace, EventKind::SetBeta);
  for (const Event& e : trace.events()) {
    if (e.kind != EventKind::ClaimConclusion) continue;
    const ClaimKind k = e.claim();
    if (k == ClaimKind::RejectH0) fisher_vocab = true;
    if (k == ClaimKind::AcceptHA || k == ClaimKind::AcceptH0 ||
        k == ClaimKind::ConcludeNothing)
      np_vocab = true;
  }
  if (fisher_vocab && np_vocab) {
    add(FindingCode::PARADIGM_MIX, Severity::Advisory, "research_goal",
        "significance vocabulary and acceptance vocabulary appear in the "
        "same analysis");
  }

  if (has_event(trace, EventKind::SetAlpha, Phase::Aposteriori)) {
    add(FindingCode::POSTHOC_ALPHA, Severity::Incoherent, "approach",
        "alpha was fixed after the data were seen; an acceptance error rate "
        "is an a-priori commitment");
  }

  // Findings arrive grouped by rule; emit in declaration order of the codes.
  std::stable_sort(findings.begin(), findings.end(),
                   [](const AuditFinding& a, const AuditFinding& b) {
                     return static_cast<int>(a.code) < static_cast<int>(b.code);
                   });
  return findings;
}

const std::vector<RegistryEntry>& contrast_registry() {
  static const std::vector<RegistryEntry> registry = {
      {"test_object", RegistryEntry::Kind::ConceptRow, "Test object",
       "data: P(D|H0)", "data: P(D|HM)",
       "data as if testing a falsifiable hypothesis: P(H0|D)",
       {},
       true,
       "an epistemic posterior claim; nothing in an analysis trace can "
       "verify or refute it, so no detection rule is registered"},
      {"approach", RegistryEntry::Kind::ConceptRow, "Approach", "a posteriori",
       "a priori", "a posteriori, sometimes both (partly)",
       {FindingCode::POSTHOC_ALPHA},
       false,
       ""},
      {"research_goal", RegistryEntry::Kind::ConceptRow, "Research goal",
       "statistical significance of research results",
       "deciding between competing hypotheses",
       "statistical significance, also used for deciding between hypotheses",
       {FindingCode::PARADIGM_MIX},
       false,
       ""},
      {"hypotheses_under_test", RegistryEntry::Kind::ConceptRow,
       "Hypotheses under test", "H0, to be nullified with evidence",
       "HM, to be favored against HA", "both (H0 = HM)",
       {FindingCode::ACCEPT_H0_WITHOUT_POWER},
       false,
       ""},
      {"alternative_hypothesis", RegistryEntry::Kind::ConceptRow,
       "Alternative hypothesis", "not needed (implicitly, 'no H0')",
       "needed; provides the effect size and beta",
       "HA posed as 'no H0' (effect size and beta sometimes considered, "
       "partly)",
       {FindingCode::NO_EFFECT_SIZE},
       false,
       ""},
      {"test_distribution", RegistryEntry::Kind::ConceptRow,
       "Probability distribution of the test", "as appropriate for H0",
       "as appropriate for HM", "as appropriate for H0",
       {},
       true,
       "both paradigms draw on the same distribution kernel; a trace carries "
       "no signal to check here"},
      {"cut_off_point", RegistryEntry::Kind::ConceptRow, "Cut-off point",
       "sig identifies noteworthy results; can be gradated; can be corrected "
       "a posteriori",
       "common to the critical value, alpha, beta and the minimum effect "
       "size; cannot be gradated; cannot be corrected a posteriori",
       "sig = alpha, can be gradated, can be corrected a posteriori (partly)",
       {FindingCode::GRADATED_ALPHA, FindingCode::ROVING_ALPHA},
       false,
       ""},
      {"sample_size_calculator", RegistryEntry::Kind::ConceptRow,
       "Sample size calculator", "none",
       "based on the test, effect size, alpha and power", "either",
       {FindingCode::NO_POWER_DESIGN},
       false,
       ""},
      {"statistic_of_interest", RegistryEntry::Kind::ConceptRow,
       "Statistic of interest", "p-value, as evidence against H0",
       "critical value (the p-value has no inherent meaning but can serve as "
       "a proxy)",
       "p-value, used both as evidence against H0 and as a proxy to accept "
       "HA",
       {FindingCode::P_AS_TYPE1},
       false,
       ""},
      {"error_probability", RegistryEntry::Kind::ConceptRow,
       "Error probability",
       "alpha possible, but irrelevant with single studies (partly)",
       "alpha = Type I error probability; beta = Type II error probability",
       "p-value = alpha = Type I error in single studies (beta sometimes "
       "considered, partly)",
       {FindingCode::P_AS_TYPE1, FindingCode::ROVING_ALPHA},
       false,
       ""},
      {"result_vs_critical_region", RegistryEntry::Kind::ConceptRow,
       "Result vs critical region",
       "outside: ignore the result as not significant; inside: reject H0",
       "outside: accept HM if good power, conclude nothing otherwise; "
       "inside: accept HA (reject HM in favor of HA)",
       "outside: ignore as not significant, accept H0, or conclude nothing; "
       "inside: either",
       {FindingCode::ACCEPT_H0_WITHOUT_POWER},
       false,
       ""},
      {"interpretation_in_cr", RegistryEntry::Kind::ConceptRow,
       "Interpretation of results in the critical region",
       "either a rare event occurred or H0 does not explain the research "
       "data",
       "HA explains the research data better than HM does (given alpha)",
       "HA has been proved / is true; or H0 has been disproved / is false; "
       "or both",
       {FindingCode::PROOF_CLAIM},
       false,
       ""},
      {"next_steps", RegistryEntry::Kind::ConceptRow, "Next steps",
       "rejecting H0 does not automatically justify 'not H0'; replication "
       "needed",
       "impossible to know whether an alpha error was made; repeated "
       "sampling of the same population needed",
       "none: results taken as definitive, especially if significant "
       "(partly)",
       {FindingCode::PROOF_CLAIM},
       false,
       ""},
      {"effect_size_power_repair", RegistryEntry::Kind::Compensation,
       "Retrofit effect size and a-priori sample size", "", "", "",
       {FindingCode::NO_EFFECT_SIZE, FindingCode::NO_POWER_DESIGN},
       false,
       "significance-leaning repair: declare expected and observed effect "
       "sizes, and justify n for adequate power before collecting data"},
      {"roving_compensation", RegistryEntry::Kind::Compensation,
       "Compensate roved alphas with roved betas", "", "", "",
       {FindingCode::ROVING_ALPHA},
       false,
       "a downward-roved alpha changes the implied long-run Type II rate; "
       "report the (roved alpha, roved beta) pair for each test"},
  };
  return registry;
}

const RegistryEntry* find_registry_entry(const std::string& id) {
  for (const RegistryEntry& entry : contrast_registry())
    if (entry.id == id) return &entry;
  return nullptr;
}

RepairBundle fisher_repair(const AnalysisTrace& trace) {
  const Classification c = classify(trace);
  if (c != Classification::PureFisher && c != Classification::FisherLeaningNHST)
    throw precondition_error(
        "effect-size/power retrofit applies to significance-leaning traces "
        "only; this trace classifies as " +
        to_string(c));

  RepairBundle bundle;
  const bool has_es = has_event(trace, EventKind::DeclareEffectSize);
  const bool has_n = has_event(trace, EventKind::JustifySampleSize);
  if (has_es && has_n) return bundle;

  if (!has_es) {
    bundle.items.push_back(
        {"report effect sizes",
         "declare the expected standardized effect size a priori and report "
         "the observed one a posteriori, so importance is weighed over bare "
         "significance"});
  }
  if (!has_n) {
    double d = 0.5;
    bool d_defaulted = true;
    if (const Event* e = find_event(trace, EventKind::DeclareEffectSize)) {
      d = e->d();
      d_defaulted = false;
    }
    double alpha = 0.05;
    bool alpha_defaulted = true;
    if (const Event* e = find_event(trace, EventKind::SetAlpha, Phase::Apriori)) {
      alpha = e->level();
      alpha_defaulted = false;
    }
    double beta = 0.20;
    bool beta_defaulted = true;
    if (const Event* e = find_event(trace, EventKind::SetBeta)) {
      beta = e->level();
      beta_defaulted = false;
    }
    if (beta < alpha) beta = alpha;  // keep the floor when defaults collide
    const int n = np::required_sample_size(np::EffectSize::custom(d), alpha,
                                           beta, np::Tails::One,
                                           np::TestKind::TwoSampleT);
    bundle.recommended_n = n;
    bundle.used_defaults = d_defaulted || alpha_defaulted || beta_defaulted;
    std::ostringstream detail;
    detail << "collect n = " << n << " per group for expected d = " << d
           << " at alpha = " << two_places(alpha) << ", beta = "
           << two_places(beta) << ", one-tailed";
    if (bundle.used_defaults) detail << " (defaults used where undeclared)";
    bundle.items.push_back({"justify the sample size a priori", detail.str()});
  }
  return bundle;
}

RovingBetaReport roving_beta(double original_alpha, double roved_alpha,
                             const np::EffectSize& expected_es, int n_per_group,
                             np::Tails tails) {
  if (!(original_alpha > 0.0 && original_alpha < 1.0) ||
      !(roved_alpha > 0.0 && roved_alpha < 1.0))
    throw parameter_error("alpha levels must lie in (0,1)");
  if (roved_alpha > original_alpha)
    throw parameter_error(
        "roving is downward: the roved alpha must not exceed the original");
  if (expected_es.d == 0.0)
    throw parameter_error(
        "cannot compensate a roved alpha without a nonzero expected effect "
        "size; supply the design parameters");
  if (n_per_group < 2)
    throw parameter_error(
        "cannot compensate a roved alpha without the per-group n; supply the "
        "design parameters");
  const double power = np::achieved_power(expected_es, n_per_group, roved_alpha,
                                          tails, np::TestKind::TwoSampleT);
  RovingBetaReport report;
  report.original_alpha = original_alpha;
  report.roved_alpha = roved_alpha;
  report.roved_beta = 1.0 - power;
  report.roving_power = power;
  report.instruction =
      "report both roving alphas and roving betas for each test, and take "
      "them into account when interpreting the results";
  return report;
}

}  // namespace datatest::audit
