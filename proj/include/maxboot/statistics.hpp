#pragma once

#include <vector>

#include "maxboot/types.hpp"

namespace maxboot {

/// Max statistic with shift vector:
///   T = max_j n^{-1/2} sum_i (X_ij - mu_j + t_j).
/// Column sums use compensated (Kahan) accumulation.
double max_statistic(const SampleMatrix& X, const MeanVector& mu,
                     const ShiftVector& t);

/// Absolute-value variant: the max statistic of the 2p-dimensional problem
/// that stacks (X_i - mu + t) on top of -(X_i - mu + t), i.e.
///   max_j |n^{-1/2} sum_i (X_ij - mu_j + t_j)|.
double max_abs_statistic(const SampleMatrix& X, const MeanVector& mu,
                         const ShiftVector& t);

/// gamma-th quantile of the empirical distribution of `samples`:
/// inf{ x : gamma <= F_hat(x) }, i.e. the ceil(gamma*B)-th order statistic
/// of the B samples. Always an element of the multiset. Selection, not a
/// full sort. samples passed by value; move in to avoid the copy.
double empirical_quantile(std::vector<double> samples, double gamma);

/// Sample covariance with divisor n (not n-1):
///   S = n^{-1} sum_i (X_i - Xbar)(X_i - Xbar)'.
CovarianceEstimate covariance_estimate(const SampleMatrix& X);

/// Column means of X (length p).
std::vector<double> column_means(const SampleMatrix& X);

}  // namespace maxboot
