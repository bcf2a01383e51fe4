// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#include "datatest/longrun.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "datatest/errors.hpp"
#include "datatest/statdist.hpp"

namespace datatest::longrun {

namespace {

int effective_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(rep) for rep in [0, reps) across workers on disjoint contiguous
// ranges. Every replication derives its own stream from (seed, rep), so the
// partitioning cannot affect any result.
template <class Fn>
void for_each_replication(int reps, int workers, const Fn& fn) {
  workers = std::min(std::max(workers, 1), std::max(reps, 1));
  if (workers == 1) {
    for (int r = 0; r < reps; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (reps + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int begin = w * chunk;
    const int end = std::min(reps, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (int r = begin; r < end; ++r) fn(r);
    });
  }
  for (auto& t : pool) t.join();
}

// Pooled two-group t for one replication: group A at mean `effect`, group B
// at zero, unit variances.
double replicate_t(rng::Stream& stream, int n, double effect) {
  double sum_a = 0.0, ssq_a = 0.0, sum_b = 0.0, ssq_b = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = effect + stream.next_normal();
    sum_a += x;
    ssq_a += x * x;
  }
  for (int i = 0; i < n; ++i) {
    const double x = stream.next_normal();
    sum_b += x;
    ssq_b += x * x;
  }
  const double nn = static_cast<double>(n);
  const double mean_a = sum_a / nn;
  const double mean_b = sum_b / nn;
  const double var_a = (ssq_a - nn * mean_a * mean_a) / (nn - 1.0);
  const double var_b = (ssq_b - nn * mean_b * mean_b) / (nn - 1.0);
  const double pooled = 0.5 * (var_a + var_b);
  return (mean_a - mean_b) / std::sqrt(pooled * 2.0 / nn);
}

double interpolated_quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

double binomial_se(double expected, int reps) {
  return std::sqrt(expected * (1.0 - expected) / static_cast<double>(reps));
}

}  // namespace

void SimulationSpec::validate() const {
  if (replications < 1) throw parameter_error("replications must be at least 1");
  switch (scenario) {
    case Scenario::Type1Rate:
      if (!design) throw parameter_error("scenario requires a frozen design");
      if (true_effect != 0.0)
        throw parameter_error("a Type I rate run requires a zero true effect");
      break;
    case Scenario::PowerRate:
    case Scenario::PDance:
      if (!design) throw parameter_error("scenario requires a frozen design");
      break;
    case Scenario::FamilywiseInflation:
      if (m_tests < 1) throw parameter_error("m_tests must be at least 1");
      if (!(sig_level > 0.0 && sig_level < 1.0))
        throw parameter_error("significance level must lie in (0,1)");
      if (n_per_group < 2) throw parameter_error("n per group must be at least 2");
      break;
  }
}

std::vector<double> replicate_p_values(const np::AcceptanceDesign& design,
                                       double true_effect, int replications,
                                       std::uint64_t seed, int workers) {
  const int n = design.n_per_group();
  const double df = design.df();
  const bool one_tailed = design.tails() == np::Tails::One;
  const double effect = std::fabs(true_effect);
  std::vector<double> ps(static_cast<std::size_t>(replications));
  for_each_replication(
      replications, effective_workers(workers), [&](int rep) {
        rng::Stream stream = rng::derive_stream(seed, static_cast<std::uint64_t>(rep));
        const double t = replicate_t(stream, n, effect);
        ps[static_cast<std::size_t>(rep)] =
            one_tailed ? statdist::students_t_sf(t, df)
                       : std::min(1.0, 2.0 * std::min(statdist::students_t_cdf(t, df),
                                                      statdist::students_t_sf(t, df)));
      });
  return ps;
}

SimulationReport run(const SimulationSpec& spec) {
  spec.validate();
  const int reps = spec.replications;
  const int workers = effective_workers(spec.workers);
  SimulationReport report;

  switch (spec.scenario) {
    case Scenario::Type1Rate:
    case Scenario::PowerRate: {
      const np::AcceptanceDesign& design = *spec.design;
      const int n = design.n_per_group();
      const double cv = design.critical_value();
      const bool one_tailed = design.tails() == np::Tails::One;
      const double effect = std::fabs(spec.true_effect);
      std::vector<char> rejected(static_cast<std::size_t>(reps), 0);
      for_each_replication(reps, workers, [&](int rep) {
        rng::Stream stream =
            rng::derive_stream(spec.seed, static_cast<std::uint64_t>(rep));
        const double t = replicate_t(stream, n, effect);
        rejected[static_cast<std::size_t>(rep)] =
            (one_tailed ? t >= cv : std::fabs(t) >= cv) ? 1 : 0;
      });
      long long count = 0;
      for (char c : rejected) count += c;
      report.observed_rate = static_cast<double>(count) / reps;
      report.expected_rate =
          spec.scenario == Scenario::Type1Rate
              ? design.alpha()
              : np::achieved_power(np::EffectSize::custom(effect), n,
                                   design.alpha(), design.tails(),
                                   design.test_kind());
      break;
    }

    case Scenario::PDance: {
      const np::AcceptanceDesign& design = *spec.design;
      std::vector<double> ps =
          replicate_p_values(design, spec.true_effect, reps, spec.seed, workers);
      long long count = 0;
      for (double p : ps)
        if (p <= design.alpha()) ++count;
      report.observed_rate = static_cast<double>(count) / reps;
      report.expected_rate = np::achieved_power(
          np::EffectSize::custom(std::fabs(spec.true_effect)),
          design.n_per_group(), design.alpha(), design.tails(),
          design.test_kind());
      std::sort(ps.begin(), ps.end());
      report.p_quantiles = std::array<double, 5>{
          ps.front(), interpolated_quantile(ps, 0.25),
          interpolated_quantile(ps, 0.50), interpolated_quantile(ps, 0.75),
          ps.back()};
      break;
    }

    case Scenario::FamilywiseInflation: {
      const int m = spec.m_tests;
      const int n = spec.n_per_group;
      const double df = 2.0 * n - 2.0;
      const double sig = spec.sig_level;
      const Correction correction = spec.correction;
      std::vector<char> any_rejection(static_cast<std::size_t>(reps), 0);
      for_each_replication(reps, workers, [&](int rep) {
        rng::Stream stream =
            rng::derive_stream(spec.seed, static_cast<std::uint64_t>(rep));
        std::vector<double> ps(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
          const double t = replicate_t(stream, n, 0.0);
          ps[static_cast<std::size_t>(j)] =
              std::min(1.0, 2.0 * std::min(statdist::students_t_cdf(t, df),
                                           statdist::students_t_sf(t, df)));
        }
        bool any = false;
        switch (correction) {
          case Correction::None:
            for (double p : ps) any = any || p <= sig;
            break;
          case Correction::Bonferroni: {
            const double level = fisher::bonferroni(sig, m);
            for (double p : ps) any = any || p <= level;
            break;
          }
          case Correction::Holm: {
            for (bool r : fisher::holm_adjust(ps, sig)) any = any || r;
            break;
          }
        }
        any_rejection[static_cast<std::size_t>(rep)] = any ? 1 : 0;
      });
      long long count = 0;
      for (char c : any_rejection) count += c;
      report.observed_rate = static_cast<double>(count) / reps;
      // Independent true nulls: P(any rejection) = 1 - (1 - level)^m, where
      // the per-test level is sig/m under Bonferroni and Holm (whose first
      // step decides the any-rejection event under the global null).
      const double per_test =
          correction == Correction::None ? sig : sig / static_cast<double>(m);
      report.expected_rate = 1.0 - std::pow(1.0 - per_test, m);
      break;
    }
  }

  report.mc_standard_error = binomial_se(report.expected_rate, reps);
  bool pass = std::fabs(report.observed_rate - report.expected_rate) <=
              3.0 * report.mc_standard_error;
  if (report.p_quantiles) {
    // The "dance": the middle half of replicated p-values must span at least
    // one order of magnitude.
    const double q25 = (*report.p_quantiles)[1];
    const double q75 = (*report.p_quantiles)[3];
    pass = pass && q25 > 0.0 && q75 / q25 >= 10.0;
  }
  report.pass = pass;
  return report;
}

}  // namespace datatest::longrun
