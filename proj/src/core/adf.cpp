#include "core/adf.hpp"

#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/fit.hpp"
#include "core/stats.hpp"

namespace starkspec {

namespace {

// Response-surface constants from MacKinnon, "Approximate asymptotic
// distribution functions for unit-root and cointegration tests" (1994),
// single-series case, as shipped by the statsmodels library. p = Phi(c0 +
// c1*t + c2*t^2 [+ c3*t^3]), with the small-p polynomial used at or below the
// switch point tau_star and hard 0/1 clamps outside [tau_min, tau_max].
struct Surface {
  double tau_star, tau_min, tau_max;
  double smallp[3];
  double largep[4];
};

constexpr Surface kConstOnly = {
    -1.61, -18.83, 2.74,
    {2.1659, 1.4412, 0.038269},
    {1.7339, 0.93202, -0.12745, -0.010368},
};

constexpr Surface kConstTrend = {
    -2.89, -16.18, 0.7,
    {3.2512, 1.6047, 0.049588},
    {2.5261, 0.61654, -0.37956, -0.060285},
};

}  // namespace

double adf_mackinnon_pvalue(double t_stat, bool with_trend) {
  const Surface& s = with_trend ? kConstTrend : kConstOnly;
  if (t_stat > s.tau_max) return 1.0;
  if (t_stat < s.tau_min) return 0.0;
  double z;
  if (t_stat <= s.tau_star) {
    z = s.smallp[0] + t_stat * (s.smallp[1] + t_stat * s.smallp[2]);
  } else {
    z = s.largep[0] +
        t_stat * (s.largep[1] + t_stat * (s.largep[2] + t_stat * s.largep[3]));
  }
  return normal_cdf(z);
}

AdfResult adf_test(const std::vector<double>& series, bool with_trend,
                   int max_lag) {
  const int n = static_cast<int>(series.size());
  if (n < 20)
    throw Error(ErrorCode::invalid_argument, "adf_test: need >= 20 points");

  const int ntrend = with_trend ? 2 : 1;
  if (max_lag < 0)
    max_lag = static_cast<int>(
        std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
  max_lag = std::min(max_lag, n / 2 - ntrend - 1);
  if (max_lag < 0)
    throw Error(ErrorCode::invalid_argument, "adf_test: series too short");

  std::vector<double> diff(n - 1);
  for (int i = 0; i < n - 1; ++i) diff[i] = series[i + 1] - series[i];

  // Fits dy on [level, dy lags, const, trend] using `lags` lag terms and the
  // last `nobs` observations. Returns the OLS result; the level coefficient
  // is always column 0.
  auto fit = [&](int lags, int nobs) {
    std::vector<double> y(diff.end() - nobs, diff.end());
    std::vector<std::vector<double>> cols;
    std::vector<double> level(nobs);
    const int diff_n = n - 1;
    for (int i = 0; i < nobs; ++i)
      level[i] = series[diff_n - nobs + i];  // y_{t-1} aligned with dy_t
    cols.push_back(std::move(level));
    for (int j = 1; j <= lags; ++j) {
      std::vector<double> lagcol(nobs);
      for (int i = 0; i < nobs; ++i) lagcol[i] = diff[diff_n - nobs + i - j];
      cols.push_back(std::move(lagcol));
    }
    cols.push_back(std::vector<double>(nobs, 1.0));
    if (with_trend) {
      std::vector<double> trend(nobs);
      for (int i = 0; i < nobs; ++i) trend[i] = static_cast<double>(i + 1);
      cols.push_back(std::move(trend));
    }
    try {
      return ols(y, cols);
    } catch (const Error& e) {
      throw Error(ErrorCode::invalid_argument,
                  std::string("adf_test: singular regression (") + e.what() + ")");
    }
  };

  // BIC comparison on the common sample trimmed by max_lag.
  const int common_nobs = (n - 1) - max_lag;
  int best_lag = 0;
  double best_bic = std::numeric_limits<double>::infinity();
  for (int lags = 0; lags <= max_lag; ++lags) {
    const OlsResult r = fit(lags, common_nobs);
    if (r.bic < best_bic) {
      best_bic = r.bic;
      best_lag = lags;
    }
  }

  // Refit the winner on its maximal sample.
  const OlsResult final_fit = fit(best_lag, (n - 1) - best_lag);
  const double t_stat = final_fit.coef[0] / final_fit.coef_stderr[0];

  AdfResult out;
  out.t_stat = t_stat;
  out.p_value = adf_mackinnon_pvalue(t_stat, with_trend);
  out.lags_used = best_lag;
  out.with_trend = with_trend;
  return out;
}

}  // namespace starkspec
