// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DATATEST_STATDIST_HPP
#define DATATEST_STATDIST_HPP

#include <variant>

#include "datatest/rng.hpp"

namespace datatest::statdist {

// Accuracy contract for cdf() and quantile(); fixed constants of the module.
inline constexpr double kCentralTolerance = 1e-8;
inline constexpr double kNoncentralTolerance = 1e-6;

struct StandardNormal {};
struct StudentT {
  double df;
};
struct NoncentralT {
  double df;
  double ncp;
};
struct ChiSquare {
  double df;
};

using Distribution = std::variant<StandardNormal, StudentT, NoncentralT, ChiSquare>;

// P(X <= x). Accuracy: kCentralTolerance for the central kinds,
// kNoncentralTolerance for NoncentralT. Throws parameter_error on df <= 0 or
// non-finite x.
double cdf(const Distribution& dist, double x);

// Inverse cdf by monotone bisection with bracket expansion; |cdf(q) - p|
// within the kind's tolerance. Requires 0 < p < 1.
double quantile(const Distribution& dist, double p);

// One variate per call; deterministic given the stream state.
double sample(const Distribution& dist, rng::Stream& stream);

// Scalar special functions underlying the CDFs, exposed for direct use and
// for testing.
double log_gamma(double x);
double regularized_incomplete_beta(double a, double b, double x);
double regularized_lower_incomplete_gamma(double a, double x);

double normal_cdf(double z);
double normal_quantile(double p);
double students_t_cdf(double t, double df);
double students_t_sf(double t, double df);
double students_t_quantile(double p, double df);
double chi_square_cdf(double x, double df);
double chi_square_sf(double x, double df);
double chi_square_quantile(double p, double df);
// Poisson-weighted incomplete-beta series; truncated when the remaining
// weight mass can no longer move the result by kNoncentralTolerance / 10.
double noncentral_t_cdf(double t, double df, double ncp);
double noncentral_t_sf(double t, double df, double ncp);

}  // namespace datatest::statdist

#endif  // DATATEST_STATDIST_HPP
