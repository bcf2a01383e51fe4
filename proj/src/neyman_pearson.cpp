// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#include "datatest/neyman_pearson.hpp"

#include <cmath>

#include "datatest/errors.hpp"
#include "datatest/statdist.hpp"

namespace datatest::np {

namespace {

void require_probability(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0))
    throw parameter_error(std::string(name) + " must lie in (0,1)");
}

void require_t_kind(TestKind kind) {
  if (kind != TestKind::TwoSampleT)
    throw parameter_error(
        "power analysis covers the two-sample t test only; chi-square "
        "acceptance designs are out of scope");
}

double conventional_d(Convention c) {
  switch (c) {
    case Convention::Small: return 0.2;
    case Convention::Medium: return 0.5;
    case Convention::Large: return 0.8;
  }
  throw parameter_error("unknown effect-size convention");
}

}  // namespace

EffectSize EffectSize::small() { return EffectSize{0.2, Convention::Small}; }
EffectSize EffectSize::medium() { return EffectSize{0.5, Convention::Medium}; }
EffectSize EffectSize::large() { return EffectSize{0.8, Convention::Large}; }
EffectSize EffectSize::custom(double d) { return EffectSize{d, std::nullopt}; }

void EffectSize::validate() const {
  if (!std::isfinite(d)) throw parameter_error("effect size must be finite");
  if (label && std::fabs(std::fabs(d) - conventional_d(*label)) > 1e-12)
    throw parameter_error("effect-size label does not match |d|");
}

double achieved_power(const EffectSize& expected_es, double n_per_group,
                      double alpha, Tails tails, TestKind test_kind) {
  require_t_kind(test_kind);
  expected_es.validate();
  require_probability(alpha, "alpha");
  if (!(n_per_group >= 2.0))
    throw parameter_error("n per group must be at least 2");
  const double d = std::fabs(expected_es.d);
  const double df = 2.0 * n_per_group - 2.0;
  const double ncp = d * std::sqrt(n_per_group / 2.0);
  const double cv = critical_value(alpha, df, tails, test_kind);
  if (tails == Tails::One) return statdist::noncentral_t_sf(cv, df, ncp);
  return statdist::noncentral_t_sf(cv, df, ncp) +
         statdist::noncentral_t_cdf(-cv, df, ncp);
}

int required_sample_size(const EffectSize& expected_es, double alpha, double beta,
                         Tails tails, TestKind test_kind) {
  require_t_kind(test_kind);
  expected_es.validate();
  require_probability(alpha, "alpha");
  require_probability(beta, "beta");
  if (!(alpha <= beta))
    throw parameter_error(
        "beta must not be smaller than alpha; if it needed to be, the "
        "alternative hypothesis should be the main hypothesis instead");
  if (expected_es.d == 0.0)
    throw parameter_error(
        "a zero effect size admits no finite sample size for the requested "
        "power");
  const double d = std::fabs(expected_es.d);
  const double target = 1.0 - beta;

  // Normal-approximation bracket for the search start:
  // n ~ 2 * (z_{1-a} + z_{1-b})^2 / d^2.
  const double za = statdist::normal_quantile(
      tails == Tails::One ? 1.0 - alpha : 1.0 - alpha / 2.0);
  const double zb = statdist::normal_quantile(1.0 - beta);
  const double approx = 2.0 * (za + zb) * (za + zb) / (d * d);

  // Power is increasing in n: exponential climb, then bisect for minimality.
  int lo = 2;
  int hi = std::max(2, static_cast<int>(std::ceil(approx)));
  while (achieved_power(expected_es, hi, alpha, tails, test_kind) < target) {
    lo = hi + 1;
    hi *= 2;
    if (hi > 100000000)
      throw parameter_error("sample-size search exceeded 1e8 per group");
  }
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (achieved_power(expected_es, mid, alpha, tails, test_kind) >= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

double critical_value(double alpha, double df, Tails tails, TestKind test_kind) {
  require_probability(alpha, "alpha");
  if (test_kind == TestKind::ChiSquareIndependence) {
    if (tails == Tails::Two)
      throw contract_error("chi-square tests are one-tailed upper only");
    return statdist::chi_square_quantile(1.0 - alpha, df);
  }
  const double p = tails == Tails::One ? 1.0 - alpha : 1.0 - alpha / 2.0;
  return statdist::students_t_quantile(p, df);
}

double mes_from_design(int n_per_group, double alpha, Tails tails) {
  require_probability(alpha, "alpha");
  if (n_per_group < 2) throw parameter_error("n per group must be at least 2");
  const double z = statdist::normal_quantile(
      tails == Tails::One ? 1.0 - alpha : 1.0 - alpha / 2.0);
  return z * std::sqrt(2.0 / static_cast<double>(n_per_group));
}

AcceptanceDesign build_design(TestKind test_kind, Tails tails,
                              const EffectSize& expected_es, double alpha,
                              double beta, std::optional<int> forced_n) {
  require_t_kind(test_kind);
  expected_es.validate();
  require_probability(alpha, "alpha");
  require_probability(beta, "beta");
  if (!(alpha <= beta))
    throw parameter_error(
        "beta must not be smaller than alpha (beta >= alpha floor); if beta "
        "needed to be smaller than alpha, the alternative hypothesis should "
        "be the main hypothesis instead");

  AcceptanceDesign design;
  design.test_kind_ = test_kind;
  design.tails_ = tails;
  design.expected_es_ = expected_es;
  design.alpha_ = alpha;
  design.beta_target_ = beta;
  design.n_per_group_ =
      forced_n ? *forced_n
               : required_sample_size(expected_es, alpha, beta, tails, test_kind);
  if (design.n_per_group_ < 2)
    throw parameter_error("n per group must be at least 2");
  design.df_ = 2.0 * design.n_per_group_ - 2.0;
  design.power_ =
      achieved_power(expected_es, design.n_per_group_, alpha, tails, test_kind);
  design.beta_ = 1.0 - design.power_;
  design.mes_ = mes_from_design(design.n_per_group_, alpha, tails);
  design.critical_value_ = critical_value(alpha, design.df_, tails, test_kind);
  return design;
}

AcceptanceDesign restore_design(TestKind test_kind, Tails tails,
                                const EffectSize& expected_es, double alpha,
                                double beta_target, int n_per_group) {
  return build_design(test_kind, tails, expected_es, alpha, beta_target,
                      n_per_group);
}

ResearchValue research_value(const AcceptanceDesign& design,
                             const std::vector<double>& group_a,
                             const std::vector<double>& group_b) {
  // Same statistic code path as the significance workflow; identical data
  // produce an identical value in both.
  const auto [rv, df] =
      fisher::two_sample_t(group_a, group_b, fisher::VarianceRule::Pooled, 0.0);
  ResearchValue out;
  out.rv = rv;
  out.df = df;
  out.protocol_deviation =
      group_a.size() != static_cast<std::size_t>(design.n_per_group()) ||
      group_b.size() != static_cast<std::size_t>(design.n_per_group());
  out.power_at_decision = design.power();
  if (out.protocol_deviation) {
    // Re-derive at the harmonic-mean n so the deviation is visible, not fatal.
    const double na = static_cast<double>(group_a.size());
    const double nb = static_cast<double>(group_b.size());
    const double n_h = 2.0 * na * nb / (na + nb);
    out.power_at_decision = achieved_power(design.expected_es(), n_h,
                                           design.alpha(), design.tails(),
                                           design.test_kind());
    out.deviation_note =
        "group sizes deviate from the frozen design n; power re-derived at "
        "the harmonic-mean n";
  }
  return out;
}

Decision decide(const AcceptanceDesign& design, double rv,
                std::optional<double> power_override) {
  if (!std::isfinite(rv)) throw parameter_error("research value must be finite");
  const double cv = design.critical_value();
  const int dir = design.expected_es().d < 0.0 ? -1 : 1;
  const bool in_critical_region =
      design.tails() == Tails::One ? dir * rv >= cv : std::fabs(rv) >= cv;
  const double power = power_override.value_or(design.power());
  Decision decision;
  decision.rv = rv;
  decision.cv = cv;
  decision.power_at_decision = power;
  if (in_critical_region)
    decision.outcome = Outcome::AcceptHA;
  else if (power >= kGoodPowerFloor)
    decision.outcome = Outcome::AcceptHM;
  else
    decision.outcome = Outcome::ConcludeNothing;
  return decision;
}

Decision decide_by_p(const AcceptanceDesign& design, double p,
                     std::optional<double> power_override) {
  if (!(p > 0.0 && p <= 1.0)) throw parameter_error("p must lie in (0,1]");
  // Bare proxy: p <= alpha stands in for the critical-value comparison and
  // carries no evidential weight. Same three-way rule, same decision.
  const bool in_region = p <= design.alpha();
  const double power = power_override.value_or(design.power());
  Decision decision;
  decision.rv = p;  // the compared quantity in proxy mode
  decision.cv = design.alpha();
  decision.power_at_decision = power;
  decision.via_p_proxy = true;
  if (in_region)
    decision.outcome = Outcome::AcceptHA;
  else if (power >= kGoodPowerFloor)
    decision.outcome = Outcome::AcceptHM;
  else
    decision.outcome = Outcome::ConcludeNothing;
  return decision;
}

}  // namespace datatest::np
