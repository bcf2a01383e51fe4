// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DATATEST_AUDIT_HPP
#define DATATEST_AUDIT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "datatest/neyman_pearson.hpp"

// Auditor for analysis traces: classifies what a researcher actually did as
// pure significance testing, pure acceptance testing, or a hybrid; flags
// construct mixing against a registry contrasting the two paradigms row by
// row; and proposes repairs (effect-size/power retrofitting for
// significance-leaning traces, roving-beta compensation for roved alphas).
namespace datatest::audit {

enum class Phase { Apriori, Aposteriori };

enum class EventKind {
  SetAlpha,
  SetSignificanceLadder,
  SetBeta,
  DeclareEffectSize,
  JustifySampleSize,
  ObserveP,
  AdjustAlpha,
  GradateAlpha,
  ClaimConclusion,
  RunTest,
  CorrectionApplied,
};

enum class ClaimKind {
  RejectH0,
  AcceptH0,
  AcceptHA,
  ProveHA,
  DisproveH0,
  ConcludeNothing,
};

struct Event {
  Phase phase = Phase::Aposteriori;
  EventKind kind = EventKind::RunTest;
  std::map<std::string, std::string> attrs;

  // Typed attribute accessors; throw parse_error when the attribute is
  // missing or malformed for the event kind.
  double level() const;
  double old_level() const;
  double new_level() const;
  double d() const;
  int n() const;
  double p() const;
  ClaimKind claim() const;
  std::optional<double> reported_type1() const;
  std::optional<std::string> method() const;

  static Event make(Phase phase, EventKind kind,
                    std::map<std::string, std::string> attrs = {});
};

// Ordered event log; every a-posteriori event follows every a-priori one.
class AnalysisTrace {
 public:
  static AnalysisTrace from_events(std::vector<Event> events);
  const std::vector<Event>& events() const { return events_; }
  bool empty() const { return events_.empty(); }

 private:
  std::vector<Event> events_;
};

enum class Classification {
  PureFisher,
  PureNeymanPearson,
  FisherLeaningNHST,
  NPLeaningNHST,
  Incoherent,
};

std::string to_string(Classification c);
std::string to_string(Phase phase);
std::string to_string(EventKind kind);
std::string to_string(ClaimKind kind);
Phase phase_from_name(const std::string& name);
EventKind event_kind_from_name(const std::string& name);
ClaimKind claim_kind_from_name(const std::string& name);

// Pure acceptance testing requires the full a-priori quartet (alpha, beta,
// effect size, justified n) and no gradation or adjustment events; pure
// significance testing requires no alpha/beta vocabulary and rejection-only
// claims. Everything else is classified by which pure form is fewer event
// deletions away; ties are incoherent.
Classification classify(const AnalysisTrace& trace);

// Offense counts behind classify(); exposed so the deletion-distance
// semantics are directly testable.
int fisher_offense_count(const AnalysisTrace& trace);
int np_offense_count(const AnalysisTrace& trace);

// Declaration order is the emission order of audit().
enum class FindingCode {
  ROVING_ALPHA,
  P_AS_TYPE1,
  GRADATED_ALPHA,
  NO_EFFECT_SIZE,
  NO_POWER_DESIGN,
  ACCEPT_H0_WITHOUT_POWER,
  PROOF_CLAIM,
  PARADIGM_MIX,
  POSTHOC_ALPHA,
};

enum class Severity { Incoherent, Damaging, Advisory };

std::string to_string(FindingCode code);
std::string to_string(Severity severity);

struct AuditFinding {
  FindingCode code;
  Severity severity;
  std::string registry_ref;  // resolves to a contrast_registry() entry id
  std::string explanation;
};

// One finding per violated rule, in fixed rule order.
std::vector<AuditFinding> audit(const AnalysisTrace& trace);

// Row of the paradigm-contrast registry: how each paradigm treats one
// concept, which detection rules police it, or why it is out of scope.
struct RegistryEntry {
  enum class Kind { ConceptRow, Compensation };
  std::string id;
  Kind kind;
  std::string topic;
  std::string fisher_entry;
  std::string np_entry;
  std::string hybrid_entry;
  std::vector<FindingCode> rules;
  bool non_goal = false;
  std::string note;
};

// 13 concept rows plus the two compensation entries the repairs cite.
const std::vector<RegistryEntry>& contrast_registry();
const RegistryEntry* find_registry_entry(const std::string& id);

struct RepairItem {
  std::string action;
  std::string detail;
};

struct RepairBundle {
  std::vector<RepairItem> items;
  bool used_defaults = false;
  std::optional<int> recommended_n;
};

// Retrofits effect-size reporting and an a-priori sample size onto a
// significance-leaning trace. Precondition: classify() is PureFisher or
// FisherLeaningNHST. Parameters default to d = 0.5, alpha = .05, beta = .20
// when the trace declares nothing; defaults are labeled as such.
RepairBundle fisher_repair(const AnalysisTrace& trace);

struct RovingBetaReport {
  double original_alpha;
  double roved_alpha;
  double roved_beta;
  double roving_power;
  std::string instruction;
};

// Compensates a downward-roved alpha with the beta it implies at the
// design's effect size and n. Requires roved <= original, d != 0, n >= 2.
RovingBetaReport roving_beta(double original_alpha, double roved_alpha,
                             const np::EffectSize& expected_es, int n_per_group,
                             np::Tails tails);

}  // namespace datatest::audit

#endif  // DATATEST_AUDIT_HPP
