#pragma once

#include <vector>

namespace starkspec {

struct PearsonResult {
  double r = 0.0;
  int n_points = 0;
};

// Normalized covariance. Throws Error(domain) on zero variance,
// Error(invalid_argument) on length mismatch or n < 2.
PearsonResult pearson_r(const std::vector<double>& x,
                        const std::vector<double>& y);

// Sample autocorrelation of the mean-detrended series, biased (1/n)
// normalization so acf[0] is exactly 1. Throws Error(domain) on zero
// variance.
std::vector<double> autocorrelation(const std::vector<double>& series,
                                    int max_lag);

struct FrequencyAcf {
  std::vector<double> acf;
  std::vector<double> lag_mhz;
  // First lag at which the ACF drops below 0.2; NaN when it never does.
  double decorrelation_lag_mhz = 0.0;
};

// Same estimator along the frequency axis of a (single-sign-branch) T1 row
// on a uniform grid.
FrequencyAcf frequency_autocorrelation(const std::vector<double>& t1_row,
                                       double spacing_mhz, int max_lag);

// Welch (unequal variance) two-sample t-test p-value.
double welch_t_test(const std::vector<double>& a, const std::vector<double>& b);

struct RunsTest {
  int runs = 0;
  int n_above = 0;
  int n_below = 0;
  double z = 0.0;
  double p_value = 1.0;
};

// Wald-Wolfowitz runs test dichotomized around the median (ties with the
// median dropped).
RunsTest runs_test(const std::vector<double>& series);

struct MomentsReport {
  double mean = 0.0;
  double stddev = 0.0;
  double skew = 0.0;
  double ex_kurtosis = 0.0;
  double skew_p = 1.0;      // D'Agostino skewness test
  double kurtosis_p = 1.0;  // Anscombe-Glynn kurtosis test
  int n = 0;
};

MomentsReport moments_and_normality(const std::vector<double>& series);

struct ErgodicityPartition {
  int k = 0;        // number of subsets
  int m_max = 0;    // points per subset
  std::vector<double> ensemble_means;    // per re-based index m
  std::vector<double> index_t_pvalues;   // ensemble-at-m vs full series
  std::vector<double> subset_t_pvalues;  // subset vs full series
  std::vector<double> runs_pvalues;      // randomness within each subset
  std::vector<bool> subset_dependent;    // runs test rejected at 5%
};

struct ErgodicityReport {
  std::vector<ErgodicityPartition> partitions;
};

// Partition-ensemble ergodicity test: for each k in [k_min, k_max] the series
// is split into k equal contiguous subsets (tail truncated). Ensembles are
// formed per re-based index; both the per-index ensembles and the subsets
// themselves are t-tested against the full series, and each subset gets a
// runs test.
ErgodicityReport ergodicity_partition_test(const std::vector<double>& series,
                                           int k_min, int k_max);

// Shared helpers (exposed for the stats CLI and tests).
double normal_cdf(double x);
double student_t_two_sided_p(double t, double dof);

}  // namespace starkspec
