// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#include "datatest/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "datatest/errors.hpp"

namespace datatest::fisher {

namespace {

double mean(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(const std::vector<double>& xs, double m) {
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

std::string brief_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", p);
  std::string s(buf);
  if (s.size() > 1 && s[0] == '0') s.erase(s.begin());
  return s;
}

// Mean difference (A minus B) for the assignment encoded by mask over the
// combined sample; mask true = group A.
double masked_mean_difference(const std::vector<double>& combined,
                              const std::vector<char>& mask) {
  double sum_a = 0.0;
  double sum_all = 0.0;
  int n_a = 0;
  for (std::size_t i = 0; i < combined.size(); ++i) {
    sum_all += combined[i];
    if (mask[i]) {
      sum_a += combined[i];
      ++n_a;
    }
  }
  const int n_b = static_cast<int>(combined.size()) - n_a;
  return sum_a / n_a - (sum_all - sum_a) / n_b;
}

}  // namespace

void NullHypothesis::validate() const {
  if (!std::isfinite(null_value))
    throw parameter_error("null value must be finite");
  if (contrast == Contrast::Independence &&
      (directionality != Directionality::NonDirectional || null_value != 0.0))
    throw contract_error(
        "independence contrasts are non-directional with a zero null value");
}

SignificanceLadder SignificanceLadder::defaults() {
  return SignificanceLadder{
      {0.05, 0.01, 0.001},
      {"significant", "highly significant", "extremely significant"}};
}

void SignificanceLadder::validate() const {
  if (levels.empty() || levels.size() != labels.size())
    throw parameter_error("ladder needs matching, non-empty levels and labels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0 && levels[i] < 1.0))
      throw parameter_error("ladder levels must lie in (0,1)");
    if (i > 0 && !(levels[i] < levels[i - 1]))
      throw parameter_error("ladder levels must be strictly decreasing");
  }
}

PermutationMode PermutationMode::monte_carlo(int reps, std::uint64_t seed) {
  PermutationMode mode;
  mode.exact = false;
  mode.reps = reps;
  mode.seed = seed;
  return mode;
}

TestKind select_test(Goal goal, Measurement measurement) {
  if (goal == Goal::CompareCounts && measurement == Measurement::Nominal)
    return TestKind::ChiSquareIndependence;
  if (goal == Goal::CompareScores && measurement == Measurement::IntervalOrRatio)
    return TestKind::TwoSampleT;
  const char* g = goal == Goal::CompareCounts ? "comparing counts" : "comparing scores";
  const char* m = measurement == Measurement::Nominal ? "nominal" : "interval-or-ratio";
  throw parameter_error(std::string("no test covers ") + g + " on a " + m +
                        " measurement scale");
}

std::pair<double, double> two_sample_t(const std::vector<double>& group_a,
                                       const std::vector<double>& group_b,
                                       VarianceRule rule, double null_value) {
  if (group_a.size() < 2 || group_b.size() < 2)
    throw data_error("each group needs at least 2 observations");
  if (!std::isfinite(null_value))
    throw parameter_error("null value must be finite");
  const double na = static_cast<double>(group_a.size());
  const double nb = static_cast<double>(group_b.size());
  const double ma = mean(group_a);
  const double mb = mean(group_b);
  const double va = sample_variance(group_a, ma);
  const double vb = sample_variance(group_b, mb);
  if (va <= 0.0 && vb <= 0.0)
    throw data_error("degenerate data: no variance in either group");

  double se;
  double df;
  if (rule == VarianceRule::Pooled) {
    const double pooled = ((na - 1.0) * va + (nb - 1.0) * vb) / (na + nb - 2.0);
    se = std::sqrt(pooled * (1.0 / na + 1.0 / nb));
    df = na + nb - 2.0;
  } else {
    const double ua = va / na;
    const double ub = vb / nb;
    se = std::sqrt(ua + ub);
    df = (ua + ub) * (ua + ub) /
         (ua * ua / (na - 1.0) + ub * ub / (nb - 1.0));
  }
  return {((ma - mb) - null_value) / se, df};
}

std::pair<double, double> chi_square_independence(
    const std::vector<std::vector<double>>& counts) {
  const std::size_t rows = counts.size();
  if (rows < 2) throw data_error("counts table needs at least 2 rows");
  const std::size_t cols = counts.front().size();
  if (cols < 2) throw data_error("counts table needs at least 2 columns");
  for (const auto& row : counts) {
    if (row.size() != cols) throw data_error("ragged counts table");
    for (double c : row)
      if (c < 0.0 || !std::isfinite(c))
        throw data_error("counts must be non-negative and finite");
  }
  std::vector<double> row_sum(rows, 0.0);
  std::vector<double> col_sum(cols, 0.0);
  double total = 0.0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      row_sum[r] += counts[r][c];
      col_sum[c] += counts[r][c];
      total += counts[r][c];
    }
  for (double s : row_sum)
    if (s <= 0.0) throw data_error("zero row marginal");
  for (double s : col_sum)
    if (s <= 0.0) throw data_error("zero column marginal");

  double statistic = 0.0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double expected = row_sum[r] * col_sum[c] / total;
      const double diff = counts[r][c] - expected;
      statistic += diff * diff / expected;
    }
  const double df = static_cast<double>((rows - 1) * (cols - 1));
  return {statistic, df};
}

double p_value(double statistic, const statdist::Distribution& dist, Tails tails,
               TailDirection direction) {
  const bool is_chi = std::holds_alternative<statdist::ChiSquare>(dist);
  if (is_chi && (tails == Tails::Two || direction == TailDirection::Lower))
    throw contract_error("chi-square tests are one-tailed upper only");
  const double lower = statdist::cdf(dist, statistic);
  if (tails == Tails::One)
    return direction == TailDirection::Upper ? 1.0 - lower : lower;
  return std::min(1.0, 2.0 * std::min(lower, 1.0 - lower));
}

Gradation assess_significance(double p, const SignificanceLadder& ladder) {
  ladder.validate();
  if (!(p > 0.0 && p <= 1.0)) throw parameter_error("p must lie in (0,1]");
  Gradation g{false, "", p};
  for (std::size_t i = 0; i < ladder.levels.size(); ++i) {
    if (p <= ladder.levels[i]) {
      g.significant = true;
      g.label = ladder.labels[i];
    }
  }
  return g;
}

double bonferroni(double ladder_level, int m) {
  if (!(ladder_level > 0.0 && ladder_level < 1.0))
    throw parameter_error("level must lie in (0,1)");
  if (m < 1) throw parameter_error("number of tests must be at least 1");
  return ladder_level / static_cast<double>(m);
}

std::vector<bool> holm_adjust(const std::vector<double>& p_values,
                              double family_level) {
  if (p_values.empty()) throw parameter_error("empty p-value list");
  for (double p : p_values)
    if (!(p > 0.0 && p <= 1.0)) throw parameter_error("p must lie in (0,1]");
  const std::size_t m = p_values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
  std::vector<bool> reject(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    const double threshold = family_level / static_cast<double>(m - i);
    if (p_values[order[i]] <= threshold)
      reject[order[i]] = true;
    else
      break;  // step-down: first failure retains everything after it
  }
  return reject;
}

std::vector<bool> benjamini_hochberg(const std::vector<double>& p_values,
                                     double q) {
  if (p_values.empty()) throw parameter_error("empty p-value list");
  const std::size_t m = p_values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
  std::size_t largest_k = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (p_values[order[i]] <=
        (static_cast<double>(i + 1) / static_cast<double>(m)) * q)
      largest_k = i + 1;
  }
  std::vector<bool> discover(m, false);
  for (std::size_t i = 0; i < largest_k; ++i) discover[order[i]] = true;
  return discover;
}

double permutation_p_value(const std::vector<double>& group_a,
                           const std::vector<double>& group_b, Tails tails,
                           const PermutationMode& mode) {
  if (group_a.empty() || group_b.empty())
    throw data_error("permutation test needs non-empty groups");
  std::vector<double> combined = group_a;
  combined.insert(combined.end(), group_b.begin(), group_b.end());
  const int n = static_cast<int>(combined.size());
  const int n_a = static_cast<int>(group_a.size());
  const double observed = mean(group_a) - mean(group_b);
  // Floating tolerance so the observed assignment always counts itself even
  // when re-summation reorders additions.
  const double eps = 1e-12 * std::max(1.0, std::fabs(observed));
  const auto at_least_as_extreme = [&](double diff) {
    if (tails == Tails::Two) return std::fabs(diff) >= std::fabs(observed) - eps;
    return observed >= 0.0 ? diff >= observed - eps : diff <= observed + eps;
  };

  if (mode.exact) {
    if (n > mode.enumeration_cap)
      throw data_error(
          "combined sample exceeds the exact enumeration cap; use Monte Carlo "
          "mode");
    std::vector<char> mask(static_cast<std::size_t>(n), 0);
    std::fill(mask.begin(), mask.begin() + n_a, 1);
    long long extreme = 0;
    long long total = 0;
    do {
      ++total;
      if (at_least_as_extreme(masked_mean_difference(combined, mask))) ++extreme;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return static_cast<double>(extreme) / static_cast<double>(total);
  }

  if (mode.reps < 1) throw parameter_error("Monte Carlo mode needs reps >= 1");
  rng::Stream stream = rng::derive_stream(mode.seed, 0x7065726Dull);
  std::vector<std::size_t> idx(combined.size());
  long long extreme = 0;
  for (int r = 0; r < mode.reps; ++r) {
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < n_a; ++i) {
      const int j =
          i + static_cast<int>(stream.next_double() * static_cast<double>(n - i));
      std::swap(idx[i], idx[std::min(j, n - 1)]);
    }
    double sum_a = 0.0;
    for (int i = 0; i < n_a; ++i) sum_a += combined[idx[i]];
    const double sum_all = std::accumulate(combined.begin(), combined.end(), 0.0);
    const double diff = sum_a / n_a - (sum_all - sum_a) / (n - n_a);
    if (at_least_as_extreme(diff)) ++extreme;
  }
  return static_cast<double>(extreme + 1) / static_cast<double>(mode.reps + 1);
}

Interpretation interpret(const TestResult& result, const SignificanceLadder& ladder) {
  const Gradation g = assess_significance(result.p_value, ladder);
  Interpretation out;
  out.significant = g.significant;
  if (g.significant) {
    DualStatement dual;
    dual.p = result.p_value;
    dual.rare_event_branch = "a rare result that occurs only with probability " +
                             brief_p(result.p_value) + " (or lower) just happened";
    dual.inadequate_null_branch =
        "the null hypothesis does not explain the research results "
        "satisfactorily";
    out.dual = dual;
  } else {
    NonSignificantNote note;
    note.direction_observed = result.direction_observed;
    note.note =
        "not significant at any ladder level; the observed direction and "
        "magnitude can still provide useful information";
    out.non_significant = note;
  }
  return out;
}

TestResult significance_test(const std::vector<double>& group_a,
                             const std::vector<double>& group_b,
                             const NullHypothesis& h0, VarianceRule rule) {
  h0.validate();
  if (h0.contrast != Contrast::MeanDifference)
    throw contract_error("significance_test on scores requires a mean-difference contrast");
  const auto [statistic, df] = two_sample_t(group_a, group_b, rule, h0.null_value);
  Tails tails = Tails::Two;
  TailDirection direction = TailDirection::Upper;
  switch (h0.directionality) {
    case Directionality::NonDirectional:
      break;
    case Directionality::DirectionalPositive:
      tails = Tails::One;
      direction = TailDirection::Upper;
      break;
    case Directionality::DirectionalNegative:
      tails = Tails::One;
      direction = TailDirection::Lower;
      break;
  }
  const double p =
      p_value(statistic, statdist::StudentT{df}, tails, direction);
  return TestResult{TestKind::TwoSampleT,
                    statistic,
                    df,
                    p,
                    tails,
                    sign_of(statistic),
                    static_cast<int>(group_a.size() + group_b.size())};
}

TestResult independence_test(const std::vector<std::vector<double>>& counts) {
  const auto [statistic, df] = chi_square_independence(counts);
  const double p = p_value(statistic, statdist::ChiSquare{df}, Tails::One,
                           TailDirection::Upper);
  double total = 0.0;
  for (const auto& row : counts)
    for (double c : row) total += c;
  return TestResult{TestKind::ChiSquareIndependence,
                    statistic,
                    df,
                    p,
                    Tails::One,
                    0,
                    static_cast<int>(total)};
}

}  // namespace datatest::fisher
