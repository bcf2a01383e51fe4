// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DATATEST_FISHER_HPP
#define DATATEST_FISHER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "datatest/statdist.hpp"

// Tests of significance: a posteriori, evidence-gradating, correction-aware.
// The workflow is: select a test, set up the null hypothesis, compute the
// cumulative p-value, assess it against a gradated ladder of significance
// levels, and interpret the outcome as a dual statement. No alpha, beta, or
// power concepts appear in this module's vocabulary.
namespace datatest::fisher {

enum class Contrast { MeanDifference, Independence };
enum class Directionality { NonDirectional, DirectionalPositive, DirectionalNegative };
enum class TestKind { TwoSampleT, ChiSquareIndependence };
enum class Tails { One, Two };
enum class TailDirection { Upper, Lower };
enum class VarianceRule { Pooled, Welch };
enum class Goal { CompareCounts, CompareScores };
enum class Measurement { Nominal, IntervalOrRatio };

// The tested population quantity. The null value may be non-nil; directional
// hypotheses are realized as one-tailed tests of the boundary value.
struct NullHypothesis {
  Contrast contrast = Contrast::MeanDifference;
  double null_value = 0.0;
  Directionality directionality = Directionality::NonDirectional;

  // Throws on non-finite null_value or a directional/non-nil independence
  // contrast (independence tests are one-sided chi-square by construction).
  void validate() const;
};

// Descending significance levels with matching gradation labels.
struct SignificanceLadder {
  std::vector<double> levels;
  std::vector<std::string> labels;

  static SignificanceLadder defaults();  // .05/.01/.001
  void validate() const;
};

struct TestResult {
  TestKind test_kind;
  double statistic;
  double df;
  double p_value;
  Tails tails;
  int direction_observed;  // sign of the sample contrast
  int n_effective;
};

struct Gradation {
  bool significant;
  std::string label;  // empty when not significant
  double p;
};

// Both disjuncts of the significance interpretation: either a rare event of
// probability at most p occurred, or the null hypothesis does not explain
// the data satisfactorily. Nothing is ever proved or falsified.
struct DualStatement {
  double p;
  std::string rare_event_branch;
  std::string inadequate_null_branch;
};

struct NonSignificantNote {
  int direction_observed;
  std::string note;
};

struct Interpretation {
  bool significant;
  std::optional<DualStatement> dual;
  std::optional<NonSignificantNote> non_significant;
};

struct PermutationMode {
  bool exact = true;
  int reps = 10000;        // MonteCarlo only
  std::uint64_t seed = 0;  // MonteCarlo only
  int enumeration_cap = 20;

  static PermutationMode exact_mode() { return PermutationMode{}; }
  static PermutationMode monte_carlo(int reps, std::uint64_t seed);
};

TestKind select_test(Goal goal, Measurement measurement);

// Statistic and df for the mean comparison; statistic is
// ((meanA - meanB) - null_value) / standard error under the variance rule.
std::pair<double, double> two_sample_t(const std::vector<double>& group_a,
                                       const std::vector<double>& group_b,
                                       VarianceRule rule, double null_value);

std::pair<double, double> chi_square_independence(
    const std::vector<std::vector<double>>& counts);

// Cumulative probability of the observed statistic or anything more extreme.
// Two-tailed doubles the smaller tail area, capped at 1.
double p_value(double statistic, const statdist::Distribution& dist, Tails tails,
               TailDirection direction);

Gradation assess_significance(double p, const SignificanceLadder& ladder);

double bonferroni(double ladder_level, int m);

// Step-down familywise control; true = reject, mapped to input order.
std::vector<bool> holm_adjust(const std::vector<double>& p_values,
                              double family_level);

// Step-up false-discovery control; true = discovery, mapped to input order.
std::vector<bool> benjamini_hochberg(const std::vector<double>& p_values,
                                     double q);

double permutation_p_value(const std::vector<double>& group_a,
                           const std::vector<double>& group_b, Tails tails,
                           const PermutationMode& mode);

Interpretation interpret(const TestResult& result, const SignificanceLadder& ladder);

// Convenience pipeline: run the t test implied by the hypothesis, derive
// tails from directionality, and compute the cumulative p.
TestResult significance_test(const std::vector<double>& group_a,
                             const std::vector<double>& group_b,
                             const NullHypothesis& h0,
                             VarianceRule rule = VarianceRule::Welch);

TestResult independence_test(const std::vector<std::vector<double>>& counts);

}  // namespace datatest::fisher

#endif  // DATATEST_FISHER_HPP
