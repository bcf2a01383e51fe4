// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DATATEST_TESTS_ORACLE_QUADRATURE_HPP
#define DATATEST_TESTS_ORACLE_QUADRATURE_HPP

#include <functional>

// Quadrature-based reference values for the central distributions. Nothing
// here shares code with the library: densities come from std::lgamma and the
// cdfs from adaptive Simpson integration of those densities.
namespace oracle {

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12);

double normal_pdf(double x);
double students_t_pdf(double x, double df);
double chi_square_pdf(double x, double df);
// Density of chi (not chi-square) with df degrees of freedom.
double chi_pdf(double u, double df);

double normal_cdf(double x);
double students_t_cdf(double t, double df);
double chi_square_cdf(double x, double df);

// Bisection inverses of the quadrature cdfs.
double normal_quantile(double p);
double students_t_quantile(double p, double df);
double chi_square_quantile(double p, double df);

}  // namespace oracle

#endif  // DATATEST_TESTS_ORACLE_QUADRATURE_HPP
