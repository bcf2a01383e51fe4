// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "datatest/audit.hpp"
#include "datatest/data_io.hpp"
#include "datatest/errors.hpp"
#include "datatest/fisher.hpp"
#include "datatest/longrun.hpp"
#include "datatest/neyman_pearson.hpp"
#include "datatest/report.hpp"
#include "datatest/statdist.hpp"

namespace {

// Exit codes: 0 ok, 2 bad input, 3 low power / power-blocked decision,
// 4 audit findings, 5 simulation outside tolerance.
constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kLowPower = 3;
constexpr int kAuditFindings = 4;
constexpr int kSimulationFail = 5;

using namespace datatest;

void print_report(const report::Report& rep, bool as_json) {
  if (as_json)
    std::cout << rep.machine.dump(2) << "\n";
  else
    std::cout << rep.human;
}

std::uint64_t env_seed_or(std::uint64_t fallback) {
  const char* env = std::getenv("DATATEST_SEED");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    throw parameter_error("DATATEST_SEED is not an unsigned integer");
  return static_cast<std::uint64_t>(value);
}

np::EffectSize effect_from_flags(const std::string& label, double d,
                                 bool d_given) {
  if (!label.empty()) {
    np::EffectSize es;
    if (label == "small") es = np::EffectSize::small();
    else if (label == "medium") es = np::EffectSize::medium();
    else if (label == "large") es = np::EffectSize::large();
    else throw parameter_error("unknown effect label: " + label);
    if (d_given && d != es.d)
      throw parameter_error("--d conflicts with --effect " + label);
    return es;
  }
  if (!d_given)
    throw parameter_error("an expected effect size is required (--d or --effect)");
  return np::EffectSize::custom(d);
}

struct DesignArgs {
  std::string test = "t2";
  int tails = 1;
  double d = 0.0;
  bool d_given = false;
  std::string effect;
  double alpha = 0.05;
  double beta = 0.20;
  std::optional<int> forced_n;
  std::string out_path;
  bool json = false;
};

int run_design(const DesignArgs& args) {
  if (args.test != "t2")
    throw parameter_error("design supports --test t2 only");
  const np::Tails tails = args.tails == 1 ? np::Tails::One : np::Tails::Two;
  const np::EffectSize es = effect_from_flags(args.effect, args.d, args.d_given);
  const np::AcceptanceDesign design =
      np::build_design(fisher::TestKind::TwoSampleT, tails, es, args.alpha,
                       args.beta, args.forced_n);
  if (!args.out_path.empty()) data_io::write_design_file(design, args.out_path);
  print_report(report::render_design(design, args.forced_n.has_value()),
               args.json);
  return design.low_power() ? kLowPower : kOk;
}

struct TestArgs {
  std::string mode;
  std::string data_path;
  std::string counts_path;
  std::string design_path;
  double null_value = 0.0;
  std::string direction = "two";
  bool pooled = false;
  bool use_p = false;
  bool json = false;
};

int run_fisher_test(const TestArgs& args) {
  const fisher::SignificanceLadder ladder = fisher::SignificanceLadder::defaults();
  fisher::TestResult result{};
  std::string source;
  if (!args.counts_path.empty()) {
    source = args.counts_path;
    result = fisher::independence_test(data_io::read_counts_file(source));
  } else {
    if (args.data_path.empty())
      throw parameter_error("fisher mode needs --data or --counts");
    source = args.data_path;
    const data_io::GroupData data = data_io::read_group_file(source);
    if (data.names.size() != 2)
      throw data_error(source + ": the t test needs exactly two groups, got " +
                       std::to_string(data.names.size()));
    fisher::NullHypothesis h0;
    h0.contrast = fisher::Contrast::MeanDifference;
    h0.null_value = args.null_value;
    if (args.direction == "two")
      h0.directionality = fisher::Directionality::NonDirectional;
    else if (args.direction == "greater")
      h0.directionality = fisher::Directionality::DirectionalPositive;
    else if (args.direction == "less")
      h0.directionality = fisher::Directionality::DirectionalNegative;
    else
      throw parameter_error("--direction must be two, greater, or less");
    result = fisher::significance_test(
        data.groups[0], data.groups[1], h0,
        args.pooled ? fisher::VarianceRule::Pooled : fisher::VarianceRule::Welch);
  }
  const fisher::Gradation gradation =
      fisher::assess_significance(result.p_value, ladder);
  const fisher::Interpretation interpretation = fisher::interpret(result, ladder);
  print_report(
      report::render_fisher_test(result, gradation, interpretation, ladder, source),
      args.json);
  return kOk;
}

int run_np_test(const TestArgs& args) {
  if (args.design_path.empty())
    throw parameter_error("an a priori design is required (--design)");
  if (args.data_path.empty()) throw parameter_error("np mode needs --data");
  const np::AcceptanceDesign design = data_io::read_design_file(args.design_path);
  const data_io::GroupData data = data_io::read_group_file(args.data_path);
  if (data.names.size() != 2)
    throw data_error(args.data_path +
                     ": the acceptance test needs exactly two groups, got " +
                     std::to_string(data.names.size()));
  const np::ResearchValue rv =
      np::research_value(design, data.groups[0], data.groups[1]);
  np::Decision decision{};
  if (args.use_p) {
    const int dir = design.expected_es().d >= 0.0 ? 1 : -1;
    const statdist::Distribution dist = statdist::StudentT{design.df()};
    const double p = design.tails() == np::Tails::One
                         ? fisher::p_value(dir * rv.rv, dist, fisher::Tails::One,
                                           fisher::TailDirection::Upper)
                         : fisher::p_value(rv.rv, dist, fisher::Tails::Two,
                                           fisher::TailDirection::Upper);
    decision = np::decide_by_p(design, p, rv.power_at_decision);
  } else {
    decision = np::decide(design, rv.rv, rv.power_at_decision);
  }
  print_report(report::render_np_test(design, rv, decision, args.data_path),
               args.json);
  return decision.outcome == np::Outcome::ConcludeNothing ? kLowPower : kOk;
}

struct CorrectArgs {
  std::string pvalues_path;
  std::string method = "bonferroni";
  double level = 0.05;
  bool json = false;
};

int run_correct(const CorrectArgs& args) {
  const std::vector<double> ps = data_io::read_p_values_file(args.pvalues_path);
  const int m = static_cast<int>(ps.size());
  std::vector<bool> decisions;
  std::vector<double> per_levels(ps.size(), 0.0);
  if (args.method == "bonferroni") {
    const double per = fisher::bonferroni(args.level, m);
    per_levels.assign(ps.size(), per);
    decisions.reserve(ps.size());
    for (double p : ps) decisions.push_back(p <= per);
  } else if (args.method == "holm") {
    decisions = fisher::holm_adjust(ps, args.level);
    std::vector<std::size_t> order(ps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return ps[a] < ps[b]; });
    for (std::size_t k = 0; k < order.size(); ++k)
      per_levels[order[k]] = args.level / static_cast<double>(ps.size() - k);
  } else if (args.method == "bh") {
    decisions = fisher::benjamini_hochberg(ps, args.level);
    std::vector<std::size_t> order(ps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return ps[a] < ps[b]; });
    for (std::size_t k = 0; k < order.size(); ++k)
      per_levels[order[k]] =
          static_cast<double>(k + 1) * args.level / static_cast<double>(ps.size());
  } else {
    throw parameter_error("--method must be bonferroni, holm, or bh");
  }
  print_report(report::render_correction(args.method, args.level, ps, decisions,
                                         per_levels),
               args.json);
  return kOk;
}

struct AuditArgs {
  std::string trace_path;
  bool force_repair = false;
  bool json = false;
};

int run_audit(const AuditArgs& args) {
  const audit::AnalysisTrace trace = data_io::read_trace_file(args.trace_path);
  const audit::Classification classification = audit::classify(trace);
  const std::vector<audit::AuditFinding> findings = audit::audit(trace);

  const auto has = [&](audit::FindingCode code) {
    for (const auto& f : findings)
      if (f.code == code) return true;
    return false;
  };

  std::optional<audit::RepairBundle> repair;
  const bool fisher_side =
      classification == audit::Classification::PureFisher ||
      classification == audit::Classification::FisherLeaningNHST;
  if (fisher_side && (args.force_repair ||
                      has(audit::FindingCode::NO_EFFECT_SIZE) ||
                      has(audit::FindingCode::NO_POWER_DESIGN)))
    repair = audit::fisher_repair(trace);

  std::optional<audit::RovingBetaReport> roving;
  if (has(audit::FindingCode::ROVING_ALPHA)) {
    std::optional<double> original, roved, d;
    std::optional<int> n;
    for (const auto& e : trace.events()) {
      if (e.phase == audit::Phase::Apriori &&
          e.kind == audit::EventKind::SetAlpha && !original)
        original = e.level();
      if (e.phase == audit::Phase::Apriori &&
          e.kind == audit::EventKind::DeclareEffectSize)
        d = e.d();
      if (e.phase == audit::Phase::Apriori &&
          e.kind == audit::EventKind::JustifySampleSize)
        n = e.n();
      if (e.phase == audit::Phase::Aposteriori &&
          e.kind == audit::EventKind::AdjustAlpha)
        roved = e.new_level();
    }
    if (original && roved && d && n && *roved <= *original) {
      try {
        roving = audit::roving_beta(*original, *roved, np::EffectSize::custom(*d),
                                    *n, np::Tails::One);
      } catch (const datatest::error&) {
        // Not computable for this trace; the finding alone stands.
      }
    }
  }

  print_report(report::render_audit(classification, findings, repair, roving),
               args.json);
  return findings.empty() ? kOk : kAuditFindings;
}

struct SimulateArgs {
  std::string scenario;
  std::string design_path;
  double true_d = 0.0;
  bool true_d_given = false;
  int reps = 100000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int m_tests = 10;
  std::string correction = "none";
  double level = 0.05;
  int n_per_group = 10;
  int workers = 0;
  bool json = false;
};

int run_simulate(const SimulateArgs& args) {
  longrun::SimulationSpec spec;
  if (args.scenario == "type1") spec.scenario = longrun::Scenario::Type1Rate;
  else if (args.scenario == "power") spec.scenario = longrun::Scenario::PowerRate;
  else if (args.scenario == "pdance") spec.scenario = longrun::Scenario::PDance;
  else if (args.scenario == "familywise")
    spec.scenario = longrun::Scenario::FamilywiseInflation;
  else
    throw parameter_error(
        "--scenario must be type1, power, pdance, or familywise");

  if (spec.scenario != longrun::Scenario::FamilywiseInflation) {
    if (args.design_path.empty())
      throw parameter_error("this scenario needs a frozen design (--design)");
    spec.design = data_io::read_design_file(args.design_path);
    if (spec.scenario == longrun::Scenario::Type1Rate)
      spec.true_effect = 0.0;
    else
      spec.true_effect =
          args.true_d_given ? args.true_d : spec.design->expected_es().d;
  } else {
    spec.m_tests = args.m_tests;
    spec.sig_level = args.level;
    spec.n_per_group = args.n_per_group;
    if (args.correction == "none") spec.correction = longrun::Correction::None;
    else if (args.correction == "bonferroni")
      spec.correction = longrun::Correction::Bonferroni;
    else if (args.correction == "holm")
      spec.correction = longrun::Correction::Holm;
    else
      throw parameter_error("--correction must be none, bonferroni, or holm");
  }
  spec.replications = args.reps;
  spec.seed = args.seed_given ? args.seed : env_seed_or(0);
  spec.workers = args.workers;

  const longrun::SimulationReport sim = longrun::run(spec);
  print_report(report::render_simulation(spec, sim), args.json);
  return sim.pass ? kOk : kSimulationFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"datatest: significance testing, acceptance testing, analysis "
               "auditing, and long-run error-rate simulation"};
  app.require_subcommand(1);

  DesignArgs design_args;
  CLI::App* design_cmd =
      app.add_subcommand("design", "Freeze an a priori acceptance design");
  design_cmd->add_option("--test", design_args.test, "Test kind (t2)");
  design_cmd->add_option("--tails", design_args.tails, "1 or 2")
      ->check(CLI::IsMember({1, 2}));
  CLI::Option* d_opt =
      design_cmd->add_option("--d", design_args.d, "Expected effect size d");
  design_cmd->add_option("--effect", design_args.effect,
                         "Conventional effect size: small|medium|large");
  design_cmd->add_option("--alpha", design_args.alpha, "Type I error rate");
  design_cmd->add_option("--beta", design_args.beta, "Type II error ceiling");
  int forced_n = 0;
  CLI::Option* n_opt = design_cmd->add_option(
      "--n", forced_n, "Force n per group instead of solving for it");
  design_cmd->add_option("--out", design_args.out_path,
                         "Write the frozen design to this JSON file");
  design_cmd->add_flag("--json", design_args.json, "Machine-readable output");

  TestArgs test_args;
  CLI::App* test_cmd = app.add_subcommand("test", "Run a test on data");
  test_cmd->add_option("--mode", test_args.mode, "fisher | np")->required();
  test_cmd->add_option("--data", test_args.data_path,
                       "Group data CSV (wide, or long with a group,value header)");
  test_cmd->add_option("--counts", test_args.counts_path,
                       "Contingency counts file (fisher mode)");
  test_cmd->add_option("--design", test_args.design_path,
                       "Frozen design JSON (np mode)");
  test_cmd->add_option("--null", test_args.null_value,
                       "Null value of the mean difference (fisher mode)");
  test_cmd->add_option("--direction", test_args.direction,
                       "two | greater | less (fisher mode)");
  test_cmd->add_flag("--pooled", test_args.pooled,
                     "Pooled variance rule (default Welch; fisher mode)");
  test_cmd->add_flag("--use-p", test_args.use_p,
                     "Compare p to the frozen type I rate as a proxy (np mode)");
  test_cmd->add_flag("--json", test_args.json, "Machine-readable output");

  CorrectArgs correct_args;
  CLI::App* correct_cmd =
      app.add_subcommand("correct", "Multiple-test corrections over p-values");
  correct_cmd->add_option("--pvalues", correct_args.pvalues_path, "p-values file")
      ->required();
  correct_cmd->add_option("--method", correct_args.method,
                          "bonferroni | holm | bh");
  correct_cmd->add_option("--level", correct_args.level, "Family level");
  correct_cmd->add_flag("--json", correct_args.json, "Machine-readable output");

  AuditArgs audit_args;
  CLI::App* audit_cmd =
      app.add_subcommand("audit", "Classify an analysis trace and flag hybrids");
  audit_cmd->add_option("--trace", audit_args.trace_path, "Trace file")
      ->required();
  audit_cmd->add_flag("--repair", audit_args.force_repair,
                      "Attach the retrofit repair even without findings");
  audit_cmd->add_flag("--json", audit_args.json, "Machine-readable output");

  SimulateArgs sim_args;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Long-run error-rate simulation");
  sim_cmd->add_option("--scenario", sim_args.scenario,
                      "type1 | power | pdance | familywise")
      ->required();
  sim_cmd->add_option("--design", sim_args.design_path, "Frozen design JSON");
  CLI::Option* true_d_opt = sim_cmd->add_option(
      "--true-d", sim_args.true_d, "True standardized separation of the groups");
  sim_cmd->add_option("--reps", sim_args.reps, "Replications");
  CLI::Option* seed_opt = sim_cmd->add_option(
      "--seed", sim_args.seed, "RNG seed (default: DATATEST_SEED or 0)");
  sim_cmd->add_option("--m", sim_args.m_tests, "Tests per family (familywise)");
  sim_cmd->add_option("--correction", sim_args.correction,
                      "none | bonferroni | holm (familywise)");
  sim_cmd->add_option("--level", sim_args.level,
                      "Per-family significance level (familywise)");
  sim_cmd->add_option("--n", sim_args.n_per_group, "n per group (familywise)");
  sim_cmd->add_option("--workers", sim_args.workers,
                      "Worker threads; 0 = hardware");
  sim_cmd->add_flag("--json", sim_args.json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*design_cmd) {
      design_args.d_given = d_opt->count() > 0;
      if (n_opt->count() > 0) design_args.forced_n = forced_n;
      return run_design(design_args);
    }
    if (*test_cmd) {
      if (test_args.mode == "fisher") return run_fisher_test(test_args);
      if (test_args.mode == "np") return run_np_test(test_args);
      throw parameter_error("--mode must be fisher or np");
    }
    if (*correct_cmd) return run_correct(correct_args);
    if (*audit_cmd) return run_audit(audit_args);
    if (*sim_cmd) {
      sim_args.true_d_given = true_d_opt->count() > 0;
      sim_args.seed_given = seed_opt->count() > 0;
      return run_simulate(sim_args);
    }
  } catch (const datatest::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
