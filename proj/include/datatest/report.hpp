// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DATATEST_REPORT_HPP
#define DATATEST_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "datatest/audit.hpp"
#include "datatest/fisher.hpp"
#include "datatest/longrun.hpp"
#include "datatest/neyman_pearson.hpp"

// Report construction and the paradigm vocabulary partition. Significance
// reports never say "alpha", "accept H0", or "power"; acceptance reports
// never say "significant"/"significance" or "reject H0". The partition is
// enforced when a report is rendered, over both the human text and the
// machine rendering.
namespace datatest::report {

struct Report {
  std::string paradigm;  // fisher | neyman-pearson | design | correction | audit | simulation
  nlohmann::ordered_json machine;
  std::string human;
};

// p-values as 4 decimals with the leading zero stripped: .0160
std::string format_p(double p);
// Fixed-decimal rendering for statistics (2) and critical values (3).
std::string format_fixed(double x, int decimals);

// Throws contract_error when a fisher/neyman-pearson report violates the
// vocabulary partition. Other paradigms deliberately mix vocabularies.
void enforce_vocabulary(const Report& report);

Report render_fisher_test(const fisher::TestResult& result,
                          const fisher::Gradation& gradation,
                          const fisher::Interpretation& interpretation,
                          const fisher::SignificanceLadder& ladder,
                          const std::string& data_source);

Report render_np_test(const np::AcceptanceDesign& design,
                      const np::ResearchValue& rv, const np::Decision& decision,
                      const std::string& data_source);

Report render_design(const np::AcceptanceDesign& design, bool n_was_forced);

Report render_correction(const std::string& method, double level,
                         const std::vector<double>& p_values,
                         const std::vector<bool>& decisions,
                         const std::vector<double>& per_test_levels);

Report render_audit(audit::Classification classification,
                    const std::vector<audit::AuditFinding>& findings,
                    const std::optional<audit::RepairBundle>& repair,
                    const std::optional<audit::RovingBetaReport>& roving);

Report render_simulation(const longrun::SimulationSpec& spec,
                         const longrun::SimulationReport& sim);

}  // namespace datatest::report

#endif  // DATATEST_REPORT_HPP
