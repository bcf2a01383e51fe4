// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#include "datatest/statdist.hpp"

#include <cmath>
#include <limits>

#include "datatest/errors.hpp"

namespace datatest::statdist {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488016887242097;
constexpr int kMaxSeriesTerms = 10000;

void require_df(double df) {
  if (!(df > 0.0) || !std::isfinite(df))
    throw parameter_error("degrees of freedom must be positive and finite");
}

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw parameter_error(std::string(name) + " must be finite");
}

// Continued fraction for the regularized incomplete beta, modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 3e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 400; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  return h;  // converged to machine precision in practice well before 400
}

// Series for the regularized lower incomplete gamma, x < a + 1.
double gamma_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 1; n <= 1000; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
}

// Continued fraction for the regularized upper incomplete gamma, x >= a + 1.
double gamma_continued_fraction(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
}

// Expand a bracket around the target quantile, then bisect. The cdf is
// monotone for every supported kind, so plain bisection is robust; the
// interval is shrunk below the kind's tolerance scaled to the local slope by
// running a fixed 200 iterations (interval halves each time, far below any
// representable tolerance long before that) with an early exit.
template <class Cdf>
double invert_monotone_cdf(const Cdf& cdf, double p, double lo, double hi,
                           double tol) {
  double flo = cdf(lo);
  double fhi = cdf(hi);
  for (int i = 0; i < 200 && flo > p; ++i) {
    hi = lo;
    lo = lo < 0 ? lo * 2 : (lo > 0 ? -lo : -1.0);
    flo = cdf(lo);
  }
  for (int i = 0; i < 200 && fhi < p; ++i) {
    lo = hi;
    hi = hi > 0 ? hi * 2 : (hi < 0 ? -hi : 1.0);
    fhi = cdf(hi);
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) return mid;  // interval exhausted in doubles
    const double fmid = cdf(mid);
    if (fmid < p)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < tol * 1e-4 && std::fabs(cdf(0.5 * (lo + hi)) - p) < tol)
      break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw parameter_error("log_gamma requires x > 0");
  // Lanczos approximation, g = 5, 6 coefficients.
  static const double cof[6] = {76.18009172947146,    -86.50532032941677,
                                24.01409824083091,    -1.231739572450155,
                                0.1208650973866179e-2, -0.5395239384953e-5};
  double y = x;
  double tmp = x + 5.5;
  tmp -= (x + 0.5) * std::log(tmp);
  double ser = 1.000000000190015;
  for (int j = 0; j < 6; ++j) ser += cof[j] / ++y;
  return -tmp + std::log(2.5066282746310005 * ser / x);
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw parameter_error("incomplete beta requires a > 0 and b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                          a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double regularized_lower_incomplete_gamma(double a, double x) {
  if (!(a > 0.0)) throw parameter_error("incomplete gamma requires a > 0");
  if (x < 0.0) throw parameter_error("incomplete gamma requires x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_series(a, x);
  return 1.0 - gamma_continued_fraction(a, x);
}

double normal_cdf(double z) {
  require_finite(z, "z");
  return 0.5 * std::erfc(-z / kSqrt2);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw parameter_error("quantile requires 0 < p < 1");
  return invert_monotone_cdf([](double z) { return normal_cdf(z); }, p, -8.0, 8.0,
                             kCentralTolerance);
}

double students_t_cdf(double t, double df) {
  require_df(df);
  require_finite(t, "t");
  const double x = df / (df + t * t);
  const double half_tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, x);
  return t >= 0.0 ? 1.0 - half_tail : half_tail;
}

double students_t_sf(double t, double df) { return students_t_cdf(-t, df); }

double students_t_quantile(double p, double df) {
  require_df(df);
  if (!(p > 0.0 && p < 1.0)) throw parameter_error("quantile requires 0 < p < 1");
  return invert_monotone_cdf([df](double t) { return students_t_cdf(t, df); }, p,
                             -16.0, 16.0, kCentralTolerance);
}

double chi_square_cdf(double x, double df) {
  require_df(df);
  require_finite(x, "x");
  if (x <= 0.0) return 0.0;
  return regularized_lower_incomplete_gamma(0.5 * df, 0.5 * x);
}

double chi_square_sf(double x, double df) { return 1.0 - chi_square_cdf(x, df); }

double chi_square_quantile(double p, double df) {
  require_df(df);
  if (!(p > 0.0 && p < 1.0)) throw parameter_error("quantile requires 0 < p < 1");
  return invert_monotone_cdf([df](double x) { return chi_square_cdf(x, df); }, p,
                             1e-12, df + 16.0, kCentralTolerance);
}

double noncentral_t_cdf(double t, double df, double ncp) {
  require_df(df);
  require_finite(t, "t");
  require_finite(ncp, "ncp");
  if (ncp == 0.0) return students_t_cdf(t, df);
  // Negative t reflects to positive t with the sign of the noncentrality
  // flipped, so the series below only ever runs on t >= 0.
  if (t < 0.0) return 1.0 - noncentral_t_cdf(-t, df, -ncp);

  const double x = t * t / (t * t + df);
  const double lambda = 0.5 * ncp * ncp;
  // P(T <= t) = Phi(-ncp) + (1/2) * sum_j [ p_j I_x(j+1/2, df/2)
  //                                       + q_j I_x(j+1,   df/2) ],
  // p_j Poisson(lambda) mass, q_j its half-integer companion with
  // |q_j| <= p_j * |ncp| / (sqrt(2) * Gamma(3/2)). Every incomplete beta
  // lies in [0,1], so after consuming terms 0..J the truncation error is at
  // most 0.5 * poisson_tail * (1 + |ncp|/(sqrt(2)*Gamma(3/2))); we stop once
  // that bound drops below kNoncentralTolerance / 10.
  const double companion_factor =
      std::fabs(ncp) / (kSqrt2 * std::exp(log_gamma(1.5)));
  double p_weight = std::exp(-lambda);
  double q_weight = ncp * std::exp(-lambda - log_gamma(1.5)) / kSqrt2;
  double p_consumed = p_weight;
  double sum = 0.0;
  if (x > 0.0) {
    for (int j = 0; j < kMaxSeriesTerms; ++j) {
      sum += p_weight * regularized_incomplete_beta(j + 0.5, 0.5 * df, x);
      sum += q_weight * regularized_incomplete_beta(j + 1.0, 0.5 * df, x);
      const double tail_bound =
          0.5 * (1.0 - p_consumed) * (1.0 + companion_factor);
      if (tail_bound < kNoncentralTolerance * 0.1) break;
      p_weight *= lambda / (j + 1.0);
      q_weight *= lambda / (j + 1.5);
      p_consumed += p_weight;
    }
  }
  double value = normal_cdf(-ncp) + 0.5 * sum;
  if (value < 0.0) value = 0.0;
  if (value > 1.0) value = 1.0;
  return value;
}

double noncentral_t_sf(double t, double df, double ncp) {
  return 1.0 - noncentral_t_cdf(t, df, ncp);
}

double cdf(const Distribution& dist, double x) {
  return std::visit(
      [x](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, StandardNormal>) return normal_cdf(x);
        if constexpr (std::is_same_v<T, StudentT>) return students_t_cdf(x, d.df);
        if constexpr (std::is_same_v<T, NoncentralT>)
          return noncentral_t_cdf(x, d.df, d.ncp);
        if constexpr (std::is_same_v<T, ChiSquare>) return chi_square_cdf(x, d.df);
      },
      dist);
}

double quantile(const Distribution& dist, double p) {
  if (!(p > 0.0 && p < 1.0)) throw parameter_error("quantile requires 0 < p < 1");
  return std::visit(
      [p](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, StandardNormal>) return normal_quantile(p);
        if constexpr (std::is_same_v<T, StudentT>)
          return students_t_quantile(p, d.df);
        if constexpr (std::is_same_v<T, NoncentralT>) {
          require_df(d.df);
          const double ncp = d.ncp;
          const double df = d.df;
          return invert_monotone_cdf(
              [df, ncp](double t) { return noncentral_t_cdf(t, df, ncp); }, p,
              ncp - 16.0, ncp + 16.0, kNoncentralTolerance);
        }
        if constexpr (std::is_same_v<T, ChiSquare>)
          return chi_square_quantile(p, d.df);
      },
      dist);
}

double sample(const Distribution& dist, rng::Stream& stream) {
  return std::visit(
      [&stream](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, StandardNormal>)
          return stream.next_normal();
        if constexpr (std::is_same_v<T, StudentT>) {
          require_df(d.df);
          return stream.next_normal() /
                 std::sqrt(stream.next_chi_square(d.df) / d.df);
        }
        if constexpr (std::is_same_v<T, NoncentralT>) {
          require_df(d.df);
          return (stream.next_normal() + d.ncp) /
                 std::sqrt(stream.next_chi_square(d.df) / d.df);
        }
        if constexpr (std::is_same_v<T, ChiSquare>)
          return stream.next_chi_square(d.df);
      },
      dist);
}

}  // namespace datatest::statdist
