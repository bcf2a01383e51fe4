// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#include "datatest/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "datatest/errors.hpp"

namespace datatest::report {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool contains_token(const std::string& haystack_lower, const std::string& token) {
  return haystack_lower.find(token) != std::string::npos;
}

std::string format_df(double df) {
  if (df == std::floor(df)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", df);
    return buf;
  }
  return format_fixed(df, 1);
}

std::string tails_name(fisher::Tails tails) {
  return tails == fisher::Tails::One ? "1-tailed" : "2-tailed";
}

std::string outcome_name(np::Outcome outcome) {
  switch (outcome) {
    case np::Outcome::AcceptHA: return "accept_ha";
    case np::Outcome::AcceptHM: return "accept_hm";
    case np::Outcome::ConcludeNothing: return "conclude_nothing";
  }
  return "?";
}

std::string test_name(fisher::TestKind kind) {
  return kind == fisher::TestKind::TwoSampleT ? "t2" : "chi2_independence";
}

// "t(30) = 2.25, p = .0160, 1-tailed" / "chi2(1) = 6.67, p = .0098"
std::string fisher_report_line(const fisher::TestResult& r) {
  std::ostringstream line;
  if (r.test_kind == fisher::TestKind::TwoSampleT) {
    line << "t(" << format_df(r.df) << ") = " << format_fixed(r.statistic, 2)
         << ", p = " << format_p(r.p_value) << ", " << tails_name(r.tails);
  } else {
    line << "chi2(" << format_df(r.df) << ") = " << format_fixed(r.statistic, 2)
         << ", p = " << format_p(r.p_value);
  }
  return line.str();
}

// "t(64) = 3.31, 1-tailed > CV_t = 2.386, thus accept H_A"
std::string np_report_line(const np::AcceptanceDesign& design,
                           const np::ResearchValue& rv,
                           const np::Decision& decision) {
  std::ostringstream line;
  if (decision.via_p_proxy) {
    line << "p = " << format_p(decision.rv)
         << (decision.outcome == np::Outcome::AcceptHA ? " <= " : " > ")
         << "alpha = " << format_p(design.alpha());
  } else {
    const bool two = design.tails() == np::Tails::Two;
    line << (two ? "|t(" : "t(") << format_df(rv.df) << (two ? ")| = " : ") = ")
         << format_fixed(two ? std::fabs(rv.rv) : rv.rv, 2) << ", "
         << tails_name(design.tails())
         << (decision.outcome == np::Outcome::AcceptHA ? " > " : " <= ")
         << "CV_t = " << format_fixed(decision.cv, 3);
  }
  switch (decision.outcome) {
    case np::Outcome::AcceptHA:
      line << ", thus accept H_A";
      break;
    case np::Outcome::AcceptHM:
      line << ", thus accept H_M (power " << format_fixed(decision.power_at_decision, 2)
           << ")";
      break;
    case np::Outcome::ConcludeNothing:
      line << "; low power (" << format_fixed(decision.power_at_decision, 2)
           << "), conclude nothing";
      break;
  }
  return line.str();
}

nlohmann::ordered_json design_json(const np::AcceptanceDesign& design) {
  nlohmann::ordered_json j;
  j["test"] = test_name(design.test_kind());
  j["tails"] = tails_name(design.tails());
  j["expected_d"] = design.expected_es().d;
  j["alpha"] = design.alpha();
  j["beta_target"] = design.beta_target();
  j["beta"] = design.beta();
  j["power"] = design.power();
  j["n_per_group"] = design.n_per_group();
  j["df"] = design.df();
  j["mes"] = design.mes();
  j["critical_value"] = design.critical_value();
  j["low_power"] = design.low_power();
  j["frozen"] = true;
  return j;
}

}  // namespace

std::string format_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", p);
  std::string s(buf);
  if (s.size() > 1 && s[0] == '0') s.erase(s.begin());
  return s;
}

std::string format_fixed(double x, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

void enforce_vocabulary(const Report& report) {
  static const std::vector<std::string> fisher_forbidden = {"alpha", "accept h0",
                                                            "power"};
  static const std::vector<std::string> np_forbidden = {"significance",
                                                        "significant", "reject h0"};
  const std::vector<std::string>* forbidden = nullptr;
  if (report.paradigm == "fisher") forbidden = &fisher_forbidden;
  if (report.paradigm == "neyman-pearson") forbidden = &np_forbidden;
  if (!forbidden) return;
  const std::string text = lower(report.human) + "\n" + lower(report.machine.dump());
  for (const std::string& token : *forbidden)
    if (contains_token(text, token))
      throw contract_error("vocabulary partition violated: a " + report.paradigm +
                           " report contains the token '" + token + "'");
}

Report render_fisher_test(const fisher::TestResult& result,
                          const fisher::Gradation& gradation,
                          const fisher::Interpretation& interpretation,
                          const fisher::SignificanceLadder& ladder,
                          const std::string& data_source) {
  Report report;
  report.paradigm = "fisher";
  const std::string line = fisher_report_line(result);

  nlohmann::ordered_json j;
  j["paradigm"] = "fisher";
  j["inputs"] = {{"data", data_source},
                 {"ladder_levels", ladder.levels},
                 {"ladder_labels", ladder.labels}};
  j["test"] = test_name(result.test_kind);
  j["statistic"] = result.statistic;
  j["df"] = result.df;
  j["p_value"] = result.p_value;
  j["tails"] = tails_name(result.tails);
  j["direction_observed"] = result.direction_observed;
  j["n_effective"] = result.n_effective;
  j["gradation"] = {{"significant", gradation.significant},
                    {"label", gradation.label}};
  if (interpretation.dual) {
    j["interpretation"] = {
        {"rare_event_branch", interpretation.dual->rare_event_branch},
        {"inadequate_null_branch", interpretation.dual->inadequate_null_branch}};
  } else if (interpretation.non_significant) {
    j["interpretation"] = {
        {"direction_observed", interpretation.non_significant->direction_observed},
        {"note", interpretation.non_significant->note}};
  }
  j["report_line"] = line;
  report.machine = j;

  std::ostringstream human;
  human << "test of significance\n";
  human << "data: " << data_source << "\n";
  human << line << "\n";
  if (gradation.significant) {
    human << "gradation: " << gradation.label << " (p = " << format_p(gradation.p)
          << ")\n";
  } else {
    human << "gradation: not significant at any ladder level (p = "
          << format_p(gradation.p) << ")\n";
  }
  if (interpretation.dual) {
    human << "interpretation: either " << interpretation.dual->rare_event_branch
          << ", or " << interpretation.dual->inadequate_null_branch << "\n";
  } else if (interpretation.non_significant) {
    human << "interpretation: " << interpretation.non_significant->note << "\n";
  }
  report.human = human.str();
  enforce_vocabulary(report);
  return report;
}

Report render_np_test(const np::AcceptanceDesign& design,
                      const np::ResearchValue& rv, const np::Decision& decision,
                      const std::string& data_source) {
  Report report;
  report.paradigm = "neyman-pearson";
  const std::string line = np_report_line(design, rv, decision);

  nlohmann::ordered_json j;
  j["paradigm"] = "neyman-pearson";
  j["inputs"] = {{"data", data_source}};
  j["design"] = design_json(design);
  j["rv"] = rv.rv;
  j["df"] = rv.df;
  j["cv"] = decision.cv;
  j["decision"] = outcome_name(decision.outcome);
  j["power_at_decision"] = decision.power_at_decision;
  j["via_p_proxy"] = decision.via_p_proxy;
  j["protocol_deviation"] = rv.protocol_deviation;
  if (rv.protocol_deviation) j["deviation_note"] = rv.deviation_note;
  j["report_line"] = line;
  report.machine = j;

  std::ostringstream human;
  human << "test of acceptance\n";
  human << "data: " << data_source << "\n";
  human << "design: n = " << design.n_per_group() << " per group, alpha = "
        << format_p(design.alpha()) << ", beta = " << format_fixed(design.beta(), 4)
        << ", power = " << format_fixed(design.power(), 4)
        << ", MES d = " << format_fixed(design.mes(), 3)
        << ", CV_t = " << format_fixed(design.critical_value(), 3) << ", "
        << tails_name(design.tails()) << ", expected d = "
        << format_fixed(design.expected_es().d, 2) << "\n";
  if (rv.protocol_deviation) human << "warning: " << rv.deviation_note << "\n";
  human << line << "\n";
  report.human = human.str();
  enforce_vocabulary(report);
  return report;
}

Report render_design(const np::AcceptanceDesign& design, bool n_was_forced) {
  Report report;
  report.paradigm = "neyman-pearson";

  nlohmann::ordered_json j;
  j["paradigm"] = "neyman-pearson";
  j["design"] = design_json(design);
  j["n_was_forced"] = n_was_forced;
  j["mes_note"] =
      std::string("MES is the ") +
      (design.tails() == np::Tails::One ? "one-tailed" : "two-tailed") +
      " normal-approximation boundary of the critical region in d units, "
      "z(1-alpha" +
      (design.tails() == np::Tails::One ? "" : "/2") + ") * sqrt(2/n)";
  const bool beta_mismatch =
      n_was_forced && std::fabs(design.beta() - design.beta_target()) > 0.01;
  if (beta_mismatch) {
    j["beta_note"] = "declared beta " + format_fixed(design.beta_target(), 2) +
                     " is not what this design achieves: at n = " +
                     std::to_string(design.n_per_group()) + " and alpha = " +
                     format_p(design.alpha()) + " the implied beta is " +
                     format_p(design.beta());
  }
  report.machine = j;

  std::ostringstream human;
  human << "acceptance design (frozen)\n";
  human << "n = " << design.n_per_group() << " per group"
        << (n_was_forced ? " (forced)" : " (solved for the beta target)") << "\n";
  human << "expected d = " << format_fixed(design.expected_es().d, 2)
        << ", alpha = " << format_p(design.alpha())
        << ", beta target = " << format_fixed(design.beta_target(), 2) << "\n";
  human << "achieved power = " << format_fixed(design.power(), 4)
        << ", beta = " << format_p(design.beta()) << "\n";
  human << "MES d = " << format_fixed(design.mes(), 3)
        << ", CV_t = " << format_fixed(design.critical_value(), 3) << " ("
        << tails_name(design.tails()) << ", df = " << format_df(design.df())
        << ")\n";
  human << "note: " << j["mes_note"].get<std::string>() << "\n";
  if (beta_mismatch) human << "note: " << j["beta_note"].get<std::string>() << "\n";
  if (design.low_power()) {
    human << "warning: power " << format_fixed(design.power(), 4)
          << " is below 0.80; there is little justification for carrying out "
             "a study with low power\n";
  }
  report.human = human.str();
  enforce_vocabulary(report);
  return report;
}

Report render_correction(const std::string& method, double level,
                         const std::vector<double>& p_values,
                         const std::vector<bool>& decisions,
                         const std::vector<double>& per_test_levels) {
  Report report;
  report.paradigm = "fisher";

  nlohmann::ordered_json j;
  j["paradigm"] = "fisher";
  j["method"] = method;
  j["family_level"] = level;
  j["p_values"] = p_values;
  nlohmann::ordered_json tests = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < p_values.size(); ++i) {
    nlohmann::ordered_json t;
    t["p"] = p_values[i];
    t["level"] = per_test_levels[i];
    t["decision"] = decisions[i] ? (method == "bh" ? "discovery" : "reject")
                                 : (method == "bh" ? "no_discovery" : "retain");
    tests.push_back(t);
  }
  j["tests"] = tests;
  report.machine = j;

  std::ostringstream human;
  human << "multiple-test correction: " << method << ", family level "
        << format_p(level) << "\n";
  for (std::size_t i = 0; i < p_values.size(); ++i) {
    human << "test " << (i + 1) << ": p = " << format_p(p_values[i])
          << " vs level " << format_p(per_test_levels[i]) << " -> "
          << tests[i]["decision"].get<std::string>() << "\n";
  }
  report.human = human.str();
  enforce_vocabulary(report);
  return report;
}

Report render_audit(audit::Classification classification,
                    const std::vector<audit::AuditFinding>& findings,
                    const std::optional<audit::RepairBundle>& repair,
                    const std::optional<audit::RovingBetaReport>& roving) {
  Report report;
  report.paradigm = "audit";

  nlohmann::ordered_json j;
  j["paradigm"] = "audit";
  j["classification"] = audit::to_string(classification);
  nlohmann::ordered_json fj = nlohmann::ordered_json::array();
  for (const auto& f : findings) {
    nlohmann::ordered_json one;
    one["code"] = audit::to_string(f.code);
    one["severity"] = audit::to_string(f.severity);
    one["registry_ref"] = f.registry_ref;
    one["explanation"] = f.explanation;
    fj.push_back(one);
  }
  j["findings"] = fj;
  if (repair) {
    nlohmann::ordered_json rj;
    rj["used_defaults"] = repair->used_defaults;
    if (repair->recommended_n) rj["recommended_n"] = *repair->recommended_n;
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    for (const auto& item : repair->items)
      items.push_back({{"action", item.action}, {"detail", item.detail}});
    rj["items"] = items;
    j["repair"] = rj;
  }
  if (roving) {
    j["roving"] = {{"original_alpha", roving->original_alpha},
                   {"roved_alpha", roving->roved_alpha},
                   {"roved_beta", roving->roved_beta},
                   {"roving_power", roving->roving_power},
                   {"instruction", roving->instruction}};
  }
  report.machine = j;

  std::ostringstream human;
  human << "analysis audit\n";
  human << "classification: " << audit::to_string(classification) << "\n";
  if (findings.empty()) {
    human << "findings: none\n";
  } else {
    human << "findings (" << findings.size() << "):\n";
    for (const auto& f : findings) {
      human << "  [" << audit::to_string(f.severity) << "] "
            << audit::to_string(f.code) << " (" << f.registry_ref
            << "): " << f.explanation << "\n";
    }
  }
  if (repair && !repair->items.empty()) {
    human << "repair:\n";
    for (const auto& item : repair->items)
      human << "  " << item.action << ": " << item.detail << "\n";
  }
  if (roving) {
    human << "roving compensation: alpha roved " << format_p(roving->original_alpha)
          << " -> " << format_p(roving->roved_alpha) << ", roved beta = "
          << format_p(roving->roved_beta) << " (roving power = "
          << format_p(roving->roving_power) << ")\n";
    human << "  " << roving->instruction << "\n";
  }
  report.human = human.str();
  enforce_vocabulary(report);
  return report;
}

Report render_simulation(const longrun::SimulationSpec& spec,
                         const longrun::SimulationReport& sim) {
  Report report;
  report.paradigm = "simulation";

  const char* scenario_name = "";
  switch (spec.scenario) {
    case longrun::Scenario::Type1Rate: scenario_name = "type1"; break;
    case longrun::Scenario::PowerRate: scenario_name = "power"; break;
    case longrun::Scenario::PDance: scenario_name = "pdance"; break;
    case longrun::Scenario::FamilywiseInflation: scenario_name = "familywise"; break;
  }

  nlohmann::ordered_json j;
  j["paradigm"] = "simulation";
  j["scenario"] = scenario_name;
  j["replications"] = spec.replications;
  j["seed"] = spec.seed;
  j["true_effect"] = spec.true_effect;
  if (spec.scenario == longrun::Scenario::FamilywiseInflation) {
    j["m_tests"] = spec.m_tests;
    j["sig_level"] = spec.sig_level;
    j["n_per_group"] = spec.n_per_group;
    j["correction"] = spec.correction == longrun::Correction::None
                          ? "none"
                          : (spec.correction == longrun::Correction::Bonferroni
                                 ? "bonferroni"
                                 : "holm");
  }
  j["observed_rate"] = sim.observed_rate;
  j["expected_rate"] = sim.expected_rate;
  j["mc_standard_error"] = sim.mc_standard_error;
  if (sim.p_quantiles) {
    j["p_quantiles"] = {{"min", (*sim.p_quantiles)[0]},
                        {"q25", (*sim.p_quantiles)[1]},
                        {"median", (*sim.p_quantiles)[2]},
                        {"q75", (*sim.p_quantiles)[3]},
                        {"max", (*sim.p_quantiles)[4]}};
  }
  j["pass"] = sim.pass;
  report.machine = j;

  std::ostringstream human;
  human << "long-run simulation: " << scenario_name << "\n";
  human << "replications = " << spec.replications << ", seed = " << spec.seed
        << "\n";
  human << "observed rate = " << format_fixed(sim.observed_rate, 5)
        << ", expected = " << format_fixed(sim.expected_rate, 5)
        << ", mc s.e. = " << format_fixed(sim.mc_standard_error, 5) << "\n";
  if (sim.p_quantiles) {
    human << "p quantiles: min = " << format_p((*sim.p_quantiles)[0])
          << ", q25 = " << format_p((*sim.p_quantiles)[1])
          << ", median = " << format_p((*sim.p_quantiles)[2])
          << ", q75 = " << format_p((*sim.p_quantiles)[3])
          << ", max = " << format_p((*sim.p_quantiles)[4]) << "\n";
  }
  human << (sim.pass ? "pass" : "fail") << " at the 3 s.e. tolerance\n";
  report.human = human.str();
  enforce_vocabulary(report);
  return report;
}

}  // namespace datatest::report
