#include "core/fit.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "core/errors.hpp"

namespace starkspec {

namespace {

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& columns) {
  const int nobs = static_cast<int>(columns.front().size());
  const int ncol = static_cast<int>(columns.size());
  Eigen::MatrixXd x(nobs, ncol);
  for (int c = 0; c < ncol; ++c)
    for (int r = 0; r < nobs; ++r) x(r, c) = columns[c][r];
  return x;
}

}  // namespace

OlsResult ols(const std::vector<double>& y,
              const std::vector<std::vector<double>>& columns) {
  if (columns.empty() || y.empty())
    throw Error(ErrorCode::invalid_argument, "ols: empty inputs");
  for (const auto& c : columns)
    if (c.size() != y.size())
      throw Error(ErrorCode::invalid_argument, "ols: column length mismatch");
  const int nobs = static_cast<int>(y.size());
  const int k = static_cast<int>(columns.size());
  if (nobs <= k)
    throw Error(ErrorCode::invalid_argument,
                "ols: need more observations than parameters");

  Eigen::MatrixXd x = to_matrix(columns);
  Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), nobs);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < k)
    throw Error(ErrorCode::invalid_argument, "ols: singular design matrix");
  Eigen::VectorXd beta = qr.solve(yv);
  Eigen::VectorXd resid = yv - x * beta;

  OlsResult out;
  out.nobs = nobs;
  out.nparams = k;
  out.ssr = resid.squaredNorm();
  out.coef.assign(beta.data(), beta.data() + k);

  const double sigma2 = out.ssr / static_cast<double>(nobs - k);
  Eigen::MatrixXd xtx_inv =
      (x.transpose() * x).ldlt().solve(Eigen::MatrixXd::Identity(k, k));
  out.coef_stderr.resize(k);
  for (int i = 0; i < k; ++i)
    out.coef_stderr[i] = std::sqrt(sigma2 * xtx_inv(i, i));

  // Gaussian log-likelihood BIC, same convention as common stats packages:
  //   llf = -n/2 (log(2 pi) + log(ssr/n) + 1);  bic = -2 llf + k log(n)
  const double n = static_cast<double>(nobs);
  const double llf =
      -0.5 * n * (std::log(2.0 * M_PI) + std::log(out.ssr / n) + 1.0);
  out.bic = -2.0 * llf + static_cast<double>(k) * std::log(n);
  return out;
}

LmResult levenberg_marquardt(
    std::vector<double> initial,
    const std::function<void(const std::vector<double>&, std::vector<double>&)>&
        residual,
    const std::function<void(const std::vector<double>&, std::vector<double>&)>&
        jacobian,
    int n_residuals, const LmOptions& options) {
  const int np = static_cast<int>(initial.size());
  std::vector<double> r(n_residuals), jbuf(n_residuals * np);

  auto rss_of = [&](const std::vector<double>& p) {
    residual(p, r);
    double s = 0.0;
    for (double v : r) s += v * v;
    return s;
  };

  LmResult out;
  out.params = initial;
  double rss = rss_of(out.params);
  double lambda = 1e-3;

  Eigen::MatrixXd jtj(np, np);
  Eigen::VectorXd jtr(np);
  for (int it = 0; it < options.max_iterations; ++it) {
    out.iterations = it + 1;
    residual(out.params, r);
    jacobian(out.params, jbuf);
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>>
        jmat(jbuf.data(), n_residuals, np);
    Eigen::Map<Eigen::VectorXd> rv(r.data(), n_residuals);
    jtj = jmat.transpose() * jmat;
    jtr = jmat.transpose() * rv;

    bool stepped = false;
    for (int tries = 0; tries < 30; ++tries) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal() *= (1.0 + lambda);
      Eigen::VectorXd step = damped.ldlt().solve(jtr);
      std::vector<double> candidate(np);
      for (int i = 0; i < np; ++i) candidate[i] = out.params[i] - step[i];
      const double new_rss = rss_of(candidate);
      if (std::isfinite(new_rss) && new_rss <= rss) {
        const double improvement = rss - new_rss;
        out.params = candidate;
        rss = new_rss;
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
        if (improvement <= options.tolerance * (rss + options.tolerance)) {
          out.converged = true;
        }
        break;
      }
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
    if (!stepped) {
      out.converged = rss < std::numeric_limits<double>::infinity();
      break;
    }
    if (out.converged) break;
  }

  out.rss = rss;
  // Asymptotic parameter covariance sigma^2 (J^T J)^{-1}.
  residual(out.params, r);
  jacobian(out.params, jbuf);
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                           Eigen::RowMajor>>
      jmat(jbuf.data(), n_residuals, np);
  jtj = jmat.transpose() * jmat;
  const int dof = std::max(1, n_residuals - np);
  const double sigma2 = rss / static_cast<double>(dof);
  Eigen::MatrixXd cov =
      jtj.ldlt().solve(Eigen::MatrixXd::Identity(np, np)) * sigma2;
  out.params_stderr.resize(np);
  for (int i = 0; i < np; ++i)
    out.params_stderr[i] = cov(i, i) > 0.0 ? std::sqrt(cov(i, i)) : 0.0;
  return out;
}

ExpDecayFit fit_exponential_decay(const std::vector<double>& t_us,
                                  const std::vector<double>& p1,
                                  double noise_floor) {
  const int n = static_cast<int>(t_us.size());
  if (n < 3 || p1.size() != t_us.size())
    throw Error(ErrorCode::invalid_argument,
                "fit_exponential_decay: need >= 3 matching samples");
  if (noise_floor > 0.0) {
    bool all_noise = true;
    for (double v : p1)
      if (v >= noise_floor) {
        all_noise = false;
        break;
      }
    if (all_noise)
      throw Error(ErrorCode::fit_failure,
                  "fit_exponential_decay: every sample is below the noise floor");
  }

  // Log-linear seed from the clearly-positive samples.
  std::vector<double> xs, ys;
  for (int i = 0; i < n; ++i) {
    if (p1[i] > 1e-3) {
      xs.push_back(t_us[i]);
      ys.push_back(std::log(p1[i]));
    }
  }
  double a0 = 1.0, t1_0 = t_us[n - 1];
  if (xs.size() >= 2) {
    const auto seed = ols(ys, {std::vector<double>(xs.size(), 1.0), xs});
    if (seed.coef[1] < 0.0) t1_0 = -1.0 / seed.coef[1];
    a0 = std::exp(seed.coef[0]);
  }
  t1_0 = std::min(std::max(t1_0, 1e-3), 1e6);

  auto resid = [&](const std::vector<double>& p, std::vector<double>& r) {
    for (int i = 0; i < n; ++i)
      r[i] = p1[i] - p[0] * std::exp(-t_us[i] / p[1]);
  };
  auto jac = [&](const std::vector<double>& p, std::vector<double>& j) {
    for (int i = 0; i < n; ++i) {
      const double e = std::exp(-t_us[i] / p[1]);
      j[2 * i + 0] = -e;
      j[2 * i + 1] = -p[0] * e * t_us[i] / (p[1] * p[1]);
    }
  };
  const LmResult lm = levenberg_marquardt({a0, t1_0}, resid, jac, n);
  if (!lm.converged || !(lm.params[1] > 0.0) || !std::isfinite(lm.params[1]))
    throw Error(ErrorCode::fit_failure,
                "fit_exponential_decay: optimizer did not converge");
  ExpDecayFit out;
  out.amplitude = lm.params[0];
  out.t1_us = lm.params[1];
  out.t1_stderr_us = lm.params_stderr[1];
  return out;
}

GaussianCountsFit fit_gaussian_counts(const std::vector<double>& centers_mhz,
                                      const std::vector<double>& counts) {
  const int n = static_cast<int>(centers_mhz.size());
  if (n < 4 || counts.size() != centers_mhz.size())
    throw Error(ErrorCode::invalid_argument,
                "fit_gaussian_counts: need >= 4 matching bins");

  // Moment seed. The model variance parameter is sigma^2 in the diffusion
  // convention, i.e. half the distribution variance.
  double wsum = 0.0, mean = 0.0;
  for (int i = 0; i < n; ++i) {
    wsum += counts[i];
    mean += counts[i] * centers_mhz[i];
  }
  if (wsum <= 0.0)
    throw Error(ErrorCode::invalid_argument, "fit_gaussian_counts: empty histogram");
  mean /= wsum;
  double var = 0.0, peak = 0.0;
  for (int i = 0; i < n; ++i) {
    var += counts[i] * (centers_mhz[i] - mean) * (centers_mhz[i] - mean);
    peak = std::max(peak, counts[i]);
  }
  var = std::max(var / wsum, 1e-6);
  const double sigma0 = std::sqrt(var / 2.0);

  auto resid = [&](const std::vector<double>& p, std::vector<double>& r) {
    for (int i = 0; i < n; ++i) {
      const double d = centers_mhz[i] - p[0];
      r[i] = counts[i] - p[2] * std::exp(-d * d / (4.0 * p[1] * p[1]));
    }
  };
  auto jac = [&](const std::vector<double>& p, std::vector<double>& j) {
    for (int i = 0; i < n; ++i) {
      const double d = centers_mhz[i] - p[0];
      const double s2 = p[1] * p[1];
      const double e = std::exp(-d * d / (4.0 * s2));
      j[3 * i + 0] = -p[2] * e * d / (2.0 * s2);
      j[3 * i + 1] = -p[2] * e * d * d / (2.0 * s2 * p[1]);
      j[3 * i + 2] = -e;
    }
  };
  const LmResult lm =
      levenberg_marquardt({mean, sigma0, peak}, resid, jac, n);
  if (!lm.converged || !(std::abs(lm.params[1]) > 0.0))
    throw Error(ErrorCode::fit_failure,
                "fit_gaussian_counts: optimizer did not converge (rss " +
                    std::to_string(lm.rss) + " after " +
                    std::to_string(lm.iterations) + " iterations)");
  GaussianCountsFit out;
  out.center_mhz = lm.params[0];
  out.sigma_mhz = std::abs(lm.params[1]);
  out.amplitude = lm.params[2];
  out.rss = lm.rss;
  return out;
}

PhaseRegression fit_phase_regression(const std::vector<double>& t_us,
                                     const std::vector<double>& re,
                                     const std::vector<double>& im) {
  const int n = static_cast<int>(t_us.size());
  if (n < 2 || re.size() != t_us.size() || im.size() != t_us.size())
    throw Error(ErrorCode::invalid_argument,
                "fit_phase_regression: need >= 2 matching samples");

  // Unwrap: successive phase differences mapped into (-pi, pi].
  std::vector<double> phase(n);
  phase[0] = std::atan2(im[0], re[0]);
  for (int i = 1; i < n; ++i) {
    const double raw = std::atan2(im[i], re[i]);
    double d = raw - std::atan2(im[i - 1], re[i - 1]);
    while (d > M_PI) d -= 2.0 * M_PI;
    while (d <= -M_PI) d += 2.0 * M_PI;
    phase[i] = phase[i - 1] + d;
  }

  const auto fitres = ols(phase, {std::vector<double>(n, 1.0), t_us});
  PhaseRegression out;
  out.freq_mhz = fitres.coef[1] / (2.0 * M_PI);  // MHz * us = one cycle
  out.stderr_mhz = fitres.coef_stderr[1] / (2.0 * M_PI);
  return out;
}

}  // namespace starkspec
