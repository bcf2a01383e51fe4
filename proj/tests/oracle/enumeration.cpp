// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracle/enumeration.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace oracle {

namespace {

struct Setup {
  const std::vector<double>* pool;
  double total_sum;
  std::size_t n_a;
  std::size_t n_b;
  double observed;
  double eps;
  bool two_tailed;
  PermutationCount count;

  bool extreme(double diff) const {
    if (two_tailed) return std::fabs(diff) >= std::fabs(observed) - eps;
    return observed >= 0.0 ? diff >= observed - eps : diff <= observed + eps;
  }
};

// Chooses `remaining` further indices for group A from pool[next..], carrying
// the partial A sum; every leaf is one split of the combined sample.
void recurse(Setup& s, std::size_t next, std::size_t remaining, double sum_a) {
  if (remaining == 0) {
    const double diff = sum_a / static_cast<double>(s.n_a) -
                        (s.total_sum - sum_a) / static_cast<double>(s.n_b);
    ++s.count.total;
    if (s.extreme(diff)) ++s.count.at_least_as_extreme;
    return;
  }
  if (next + remaining > s.pool->size()) return;
  recurse(s, next + 1, remaining - 1, sum_a + (*s.pool)[next]);
  recurse(s, next + 1, remaining, sum_a);
}

}  // namespace

PermutationCount enumerate_permutations(const std::vector<double>& group_a,
                                        const std::vector<double>& group_b,
                                        bool two_tailed) {
  if (group_a.empty() || group_b.empty())
    throw std::invalid_argument("both groups must be non-empty");
  std::vector<double> pool = group_a;
  pool.insert(pool.end(), group_b.begin(), group_b.end());

  Setup s{};
  s.pool = &pool;
  s.n_a = group_a.size();
  s.n_b = group_b.size();
  s.two_tailed = two_tailed;
  double sum_a = 0.0;
  for (double x : group_a) sum_a += x;
  s.total_sum = sum_a;
  for (double x : group_b) s.total_sum += x;
  s.observed = sum_a / static_cast<double>(s.n_a) -
               (s.total_sum - sum_a) / static_cast<double>(s.n_b);
  s.eps = 1e-12 * std::max(1.0, std::fabs(s.observed));

  recurse(s, 0, s.n_a, 0.0);
  return s.count;
}

double exact_permutation_p(const std::vector<double>& group_a,
                           const std::vector<double>& group_b,
                           bool two_tailed) {
  const PermutationCount c = enumerate_permutations(group_a, group_b, two_tailed);
  return static_cast<double>(c.at_least_as_extreme) /
         static_cast<double>(c.total);
}

}  // namespace oracle
