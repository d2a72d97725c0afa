#pragma once

#include <vector>

namespace starkspec {

struct AdfResult {
  double t_stat = 0.0;
  double p_value = 1.0;
  int lags_used = 0;
  bool with_trend = false;
};

// Augmented Dickey-Fuller unit-root test on the regression
//   dy_i = rho * y_{i-1} + sum_j phi_j dy_{i-j} + c (+ g*i) + e_i
// t-statistic on rho, p-value from the MacKinnon response-surface
// approximation. Lag order is chosen by BIC over 0..floor(12*(n/100)^(1/4)),
// all candidates compared on the common truncated sample and the winner
// refitted on its maximal sample. max_lag < 0 selects the default rule.
AdfResult adf_test(const std::vector<double>& series, bool with_trend = false,
                   int max_lag = -1);

// MacKinnon (1994) approximate asymptotic p-value for the ADF t-statistic,
// single-series case, with ("ct") or without ("c") a linear trend term.
double adf_mackinnon_pvalue(double t_stat, bool with_trend);

}  // namespace starkspec
