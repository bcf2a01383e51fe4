// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DATATEST_NEYMAN_PEARSON_HPP
#define DATATEST_NEYMAN_PEARSON_HPP

#include <optional>
#include <string>
#include <vector>

#include "datatest/fisher.hpp"

// Tests of acceptance: everything that matters is fixed a priori — expected
// effect size, alpha, beta, the sample size that buys the power, and the
// critical value. Data only ever meet a frozen design. Decisions are a
// three-way choice with no evidence strength attached; p-values, when used
// at all, act as a bare proxy for the critical-value comparison.
namespace datatest::np {

using fisher::Tails;
using fisher::TestKind;

enum class Convention { Small, Medium, Large };  // d = 0.2 / 0.5 / 0.8

struct EffectSize {
  double d = 0.0;
  std::optional<Convention> label;

  static EffectSize small();
  static EffectSize medium();
  static EffectSize large();
  static EffectSize custom(double d);

  // Throws when a label is present but does not match |d|.
  void validate() const;
};

// Anything below this power carries a low-power flag and blocks acceptance
// of the main hypothesis.
inline constexpr double kGoodPowerFloor = 0.80;

// Recommended ceiling for beta; designs beyond it are flagged, not rejected.
inline constexpr double kBetaCeiling = 0.20;

int required_sample_size(const EffectSize& expected_es, double alpha, double beta,
                         Tails tails, TestKind test_kind);

// Exact power from the noncentral t at ncp = d * sqrt(n/2); real-valued n
// supported so deviating designs can be re-evaluated at a harmonic-mean n.
double achieved_power(const EffectSize& expected_es, double n_per_group,
                      double alpha, Tails tails, TestKind test_kind);

double critical_value(double alpha, double df, Tails tails, TestKind test_kind);

// The rejection-region boundary in effect-size units: the smallest
// standardized difference that falls inside the critical region, under the
// one-tailed normal approximation z(1-alpha) * sqrt(2/n) (two-tailed uses
// z(1-alpha/2)).
double mes_from_design(int n_per_group, double alpha, Tails tails);

// Frozen a priori bundle. Only build_design() constructs one; there is no
// mutating interface. beta and power always satisfy power = 1 - beta; the
// requested beta ceiling is kept separately for reporting.
class AcceptanceDesign {
 public:
  TestKind test_kind() const { return test_kind_; }
  Tails tails() const { return tails_; }
  const EffectSize& expected_es() const { return expected_es_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double beta_target() const { return beta_target_; }
  int n_per_group() const { return n_per_group_; }
  double power() const { return power_; }
  double mes() const { return mes_; }
  double critical_value() const { return critical_value_; }
  double df() const { return df_; }
  bool low_power() const { return power_ < kGoodPowerFloor; }
  bool frozen() const { return true; }

 private:
  friend AcceptanceDesign build_design(TestKind, Tails, const EffectSize&, double,
                                       double, std::optional<int>);
  friend AcceptanceDesign restore_design(TestKind, Tails, const EffectSize&,
                                         double, double, int);
  AcceptanceDesign() = default;

  TestKind test_kind_ = TestKind::TwoSampleT;
  Tails tails_ = Tails::One;
  EffectSize expected_es_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double beta_target_ = 0.0;
  int n_per_group_ = 0;
  double power_ = 0.0;
  double mes_ = 0.0;
  double critical_value_ = 0.0;
  double df_ = 0.0;
};

// Solves for n (unless forced), computes power/MES/CV, freezes. Enforces the
// beta >= alpha floor; a design whose power lands below 0.80 is returned
// with its low-power flag set rather than rejected.
AcceptanceDesign build_design(TestKind test_kind, Tails tails,
                              const EffectSize& expected_es, double alpha,
                              double beta,
                              std::optional<int> forced_n = std::nullopt);

// Rebuilds a frozen design from stored parameters (design-file loading).
AcceptanceDesign restore_design(TestKind test_kind, Tails tails,
                                const EffectSize& expected_es, double alpha,
                                double beta_target, int n_per_group);

struct ResearchValue {
  double rv;
  double df;
  bool protocol_deviation;      // group sizes differ from the frozen n
  double power_at_decision;     // design power, re-derived on deviation
  std::string deviation_note;   // empty when the protocol was followed
};

// The test statistic of the acceptance test. Shares the statistic code path
// with fisher::two_sample_t (pooled rule), so identical data give an
// identical value in both workflows.
ResearchValue research_value(const AcceptanceDesign& design,
                             const std::vector<double>& group_a,
                             const std::vector<double>& group_b);

enum class Outcome { AcceptHA, AcceptHM, ConcludeNothing };

struct Decision {
  Outcome outcome;
  double rv;
  double cv;
  double power_at_decision;
  bool via_p_proxy = false;
};

// Inside the critical region: accept H_A. Outside with good power: accept
// H_M. Outside with low power: conclude nothing.
Decision decide(const AcceptanceDesign& design, double rv,
                std::optional<double> power_override = std::nullopt);

// p-as-proxy variant: compares p against the frozen alpha and yields the
// identical decision; the p carries no evidential weight and is never
// gradated.
Decision decide_by_p(const AcceptanceDesign& design, double p,
                     std::optional<double> power_override = std::nullopt);

}  // namespace datatest::np

#endif  // DATATEST_NEYMAN_PEARSON_HPP
