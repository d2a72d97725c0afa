#include "core/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "core/errors.hpp"

namespace starkspec {

namespace {

double mean_of(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m += v;
  return m / static_cast<double>(x.size());
}

double sample_variance(const std::vector<double>& x, double mean) {
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(x.size() - 1);
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double student_t_two_sided_p(double t, double dof) {
  if (!std::isfinite(t)) return 0.0;
  boost::math::students_t dist(dof);
  return 2.0 * boost::math::cdf(dist, -std::abs(t));
}

PearsonResult pearson_r(const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size())
    throw Error(ErrorCode::invalid_argument, "pearson_r: length mismatch");
  if (x.size() < 2)
    throw Error(ErrorCode::invalid_argument, "pearson_r: need >= 2 points");
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0)
    throw Error(ErrorCode::domain, "pearson_r: zero variance input");
  PearsonResult out;
  out.r = sxy / std::sqrt(sxx * syy);
  out.r = std::min(1.0, std::max(-1.0, out.r));
  out.n_points = static_cast<int>(x.size());
  return out;
}

std::vector<double> autocorrelation(const std::vector<double>& series,
                                    int max_lag) {
  const int n = static_cast<int>(series.size());
  if (max_lag < 0 || n < max_lag + 2)
    throw Error(ErrorCode::invalid_argument,
                "autocorrelation: need length >= max_lag + 2");
  const double mean = mean_of(series);
  double denom = 0.0;
  for (double v : series) denom += (v - mean) * (v - mean);
  if (denom == 0.0)
    throw Error(ErrorCode::domain, "autocorrelation: zero variance series");
  std::vector<double> acf(max_lag + 1);
  for (int k = 0; k <= max_lag; ++k) {
    double s = 0.0;
    for (int i = 0; i + k < n; ++i)
      s += (series[i] - mean) * (series[i + k] - mean);
    acf[k] = s / denom;
  }
  return acf;
}

FrequencyAcf frequency_autocorrelation(const std::vector<double>& t1_row,
                                       double spacing_mhz, int max_lag) {
  if (!(spacing_mhz > 0.0))
    throw Error(ErrorCode::invalid_argument,
                "frequency_autocorrelation: spacing must be > 0");
  FrequencyAcf out;
  out.acf = autocorrelation(t1_row, max_lag);
  out.lag_mhz.resize(out.acf.size());
  for (std::size_t k = 0; k < out.acf.size(); ++k)
    out.lag_mhz[k] = spacing_mhz * static_cast<double>(k);
  out.decorrelation_lag_mhz = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < out.acf.size(); ++k) {
    if (out.acf[k] < 0.2) {
      out.decorrelation_lag_mhz = out.lag_mhz[k];
      break;
    }
  }
  return out;
}

double welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2)
    throw Error(ErrorCode::invalid_argument,
                "welch_t_test: each sample needs >= 2 points");
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  const double va = sample_variance(a, ma);
  const double vb = sample_variance(b, mb);
  if (va == 0.0 && vb == 0.0) {
    if (ma == mb) return 1.0;  // identical constant samples
    throw Error(ErrorCode::domain, "welch_t_test: both samples have zero variance");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double se2 = va / na + vb / nb;
  const double t = (ma - mb) / std::sqrt(se2);
  const double dof = se2 * se2 /
                     (va * va / (na * na * (na - 1.0)) +
                      vb * vb / (nb * nb * (nb - 1.0)));
  return student_t_two_sided_p(t, dof);
}

RunsTest runs_test(const std::vector<double>& series) {
  std::vector<double> sorted(series);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n < 4)
    throw Error(ErrorCode::invalid_argument, "runs_test: need >= 4 points");
  const double median = (n % 2 == 1)
                            ? sorted[n / 2]
                            : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  RunsTest out;
  int prev = 0;  // 0 = none yet, +1 above, -1 below
  for (double v : series) {
    if (v == median) continue;  // ties dropped
    const int side = v > median ? 1 : -1;
    if (side > 0)
      ++out.n_above;
    else
      ++out.n_below;
    if (side != prev) ++out.runs;
    prev = side;
  }
  const double n1 = out.n_above, n2 = out.n_below;
  if (n1 == 0.0 || n2 == 0.0)
    throw Error(ErrorCode::domain, "runs_test: degenerate dichotomy");
  const double mean = 2.0 * n1 * n2 / (n1 + n2) + 1.0;
  const double var = 2.0 * n1 * n2 * (2.0 * n1 * n2 - n1 - n2) /
                     ((n1 + n2) * (n1 + n2) * (n1 + n2 - 1.0));
  out.z = var > 0.0 ? (out.runs - mean) / std::sqrt(var) : 0.0;
  out.p_value = 2.0 * (1.0 - normal_cdf(std::abs(out.z)));
  return out;
}

MomentsReport moments_and_normality(const std::vector<double>& series) {
  const int n = static_cast<int>(series.size());
  if (n < 20)
    throw Error(ErrorCode::invalid_argument,
                "moments_and_normality: need >= 20 points");
  const double mean = mean_of(series);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : series) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 == 0.0)
    throw Error(ErrorCode::domain, "moments_and_normality: zero variance");

  MomentsReport out;
  out.n = n;
  out.mean = mean;
  out.stddev = std::sqrt(m2 * static_cast<double>(n) / (n - 1.0));
  out.skew = m3 / std::pow(m2, 1.5);
  out.ex_kurtosis = m4 / (m2 * m2) - 3.0;

  // D'Agostino (1970) skewness test.
  {
    const double nn = n;
    const double y =
        out.skew * std::sqrt((nn + 1.0) * (nn + 3.0) / (6.0 * (nn - 2.0)));
    const double beta2 = 3.0 * (nn * nn + 27.0 * nn - 70.0) * (nn + 1.0) *
                         (nn + 3.0) /
                         ((nn - 2.0) * (nn + 5.0) * (nn + 7.0) * (nn + 9.0));
    const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
    const double delta = 1.0 / std::sqrt(0.5 * std::log(w2));
    const double alpha = std::sqrt(2.0 / (w2 - 1.0));
    const double ya = (y == 0.0) ? 0.0 : y / alpha;
    const double z = delta * std::log(ya + std::sqrt(ya * ya + 1.0));
    out.skew_p = 2.0 * (1.0 - normal_cdf(std::abs(z)));
  }

  // Anscombe-Glynn (1983) kurtosis test.
  {
    const double nn = n;
    const double b2 = out.ex_kurtosis + 3.0;
    const double eb2 = 3.0 * (nn - 1.0) / (nn + 1.0);
    const double vb2 = 24.0 * nn * (nn - 2.0) * (nn - 3.0) /
                       ((nn + 1.0) * (nn + 1.0) * (nn + 3.0) * (nn + 5.0));
    const double x = (b2 - eb2) / std::sqrt(vb2);
    const double sqrt_beta1 =
        6.0 * (nn * nn - 5.0 * nn + 2.0) / ((nn + 7.0) * (nn + 9.0)) *
        std::sqrt(6.0 * (nn + 3.0) * (nn + 5.0) / (nn * (nn - 2.0) * (nn - 3.0)));
    const double a =
        6.0 + 8.0 / sqrt_beta1 *
                  (2.0 / sqrt_beta1 + std::sqrt(1.0 + 4.0 / (sqrt_beta1 * sqrt_beta1)));
    const double term = (1.0 - 2.0 / a) / (1.0 + x * std::sqrt(2.0 / (a - 4.0)));
    const double z = (1.0 - 2.0 / (9.0 * a) - std::cbrt(term)) /
                     std::sqrt(2.0 / (9.0 * a));
    out.kurtosis_p = 2.0 * (1.0 - normal_cdf(std::abs(z)));
  }
  return out;
}

ErgodicityReport ergodicity_partition_test(const std::vector<double>& series,
                                           int k_min, int k_max) {
  if (k_min < 2 || k_max < k_min)
    throw Error(ErrorCode::invalid_argument,
                "ergodicity_partition_test: need 2 <= k_min <= k_max");
  const int n = static_cast<int>(series.size());
  if (n < 2 * k_max)
    throw Error(ErrorCode::invalid_argument,
                "ergodicity_partition_test: series shorter than 2*k_max");

  ErgodicityReport report;
  for (int k = k_min; k <= k_max; ++k) {
    ErgodicityPartition part;
    part.k = k;
    part.m_max = n / k;
    if (part.m_max < 2)
      throw Error(ErrorCode::invalid_argument,
                  "ergodicity_partition_test: subsets too short at k = " +
                      std::to_string(k));

    std::vector<std::vector<double>> subsets(k);
    for (int j = 0; j < k; ++j)
      subsets[j].assign(series.begin() + j * part.m_max,
                        series.begin() + (j + 1) * part.m_max);

    for (int m = 0; m < part.m_max; ++m) {
      std::vector<double> ensemble(k);
      for (int j = 0; j < k; ++j) ensemble[j] = subsets[j][m];
      double em = mean_of(ensemble);
      part.ensemble_means.push_back(em);
      part.index_t_pvalues.push_back(welch_t_test(ensemble, series));
    }
    for (int j = 0; j < k; ++j) {
      part.subset_t_pvalues.push_back(welch_t_test(subsets[j], series));
      try {
        const RunsTest rt = runs_test(subsets[j]);
        part.runs_pvalues.push_back(rt.p_value);
        part.subset_dependent.push_back(rt.p_value < 0.05);
      } catch (const Error&) {
        part.runs_pvalues.push_back(std::numeric_limits<double>::quiet_NaN());
        part.subset_dependent.push_back(false);
      }
    }
    report.partitions.push_back(std::move(part));
  }
  return report;
}

}  // namespace starkspec
