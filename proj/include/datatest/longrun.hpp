// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DATATEST_LONGRUN_HPP
#define DATATEST_LONGRUN_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "datatest/neyman_pearson.hpp"
#include "datatest/rng.hpp"

// Monte Carlo verification of long-run error-rate semantics: alpha and beta
// are rates across replications, not properties of a single study. Data are
// drawn from two unit-variance normal populations with means 0 and d.
namespace datatest::longrun {

enum class Scenario { Type1Rate, PowerRate, PDance, FamilywiseInflation };
enum class Correction { None, Bonferroni, Holm };

struct SimulationSpec {
  Scenario scenario = Scenario::Type1Rate;
  std::optional<np::AcceptanceDesign> design;  // Type1Rate/PowerRate/PDance
  double true_effect = 0.0;
  int replications = 0;
  std::uint64_t seed = 0;

  // FamilywiseInflation parameters.
  int m_tests = 10;
  Correction correction = Correction::None;
  double sig_level = 0.05;
  int n_per_group = 10;

  // 0 = one worker per hardware thread. The report is bit-identical for any
  // worker count.
  int workers = 0;

  void validate() const;
};

struct SimulationReport {
  double observed_rate = 0.0;
  double expected_rate = 0.0;
  double mc_standard_error = 0.0;
  // PDance only: min, 25%, median, 75%, max of the replicated p-values.
  std::optional<std::array<double, 5>> p_quantiles;
  bool pass = false;
};

SimulationReport run(const SimulationSpec& spec);

// Replicated p-values for a given separation (PDance internals, exposed for
// distribution-level checks such as uniformity under a zero effect).
std::vector<double> replicate_p_values(const np::AcceptanceDesign& design,
                                       double true_effect, int replications,
                                       std::uint64_t seed, int workers = 0);

using rng::derive_stream;

}  // namespace datatest::longrun

#endif  // DATATEST_LONGRUN_HPP
