#pragma once

#include <functional>
#include <vector>

namespace starkspec {

// Ordinary least squares on a column-major design matrix.
struct OlsResult {
  std::vector<double> coef;
  std::vector<double> coef_stderr;
  double ssr = 0.0;   // sum of squared residuals
  int nobs = 0;
  int nparams = 0;
  double bic = 0.0;   // Gaussian-likelihood BIC, comparable across fits on
                      // the same response vector
};

OlsResult ols(const std::vector<double>& y,
              const std::vector<std::vector<double>>& columns);

// Levenberg-Marquardt for small dense problems. residual(params, r) fills the
// residual vector; jacobian(params, J) fills J as row-major nres x nparams.
struct LmOptions {
  int max_iterations = 200;
  double tolerance = 1e-12;
};

struct LmResult {
  std::vector<double> params;
  std::vector<double> params_stderr;
  double rss = 0.0;
  int iterations = 0;
  bool converged = false;
};

LmResult levenberg_marquardt(
    std::vector<double> initial,
    const std::function<void(const std::vector<double>&, std::vector<double>&)>&
        residual,
    const std::function<void(const std::vector<double>&, std::vector<double>&)>&
        jacobian,
    int n_residuals, const LmOptions& options = {});

// A exp(-t/T1) fit with free amplitude. Throws Error(fit_failure) when the
// data is all noise-floor or the optimizer diverges.
struct ExpDecayFit {
  double amplitude = 1.0;
  double t1_us = 0.0;
  double t1_stderr_us = 0.0;
};

ExpDecayFit fit_exponential_decay(const std::vector<double>& t_us,
                                  const std::vector<double>& p1,
                                  double noise_floor = 0.0);

// Gaussian in the diffusion convention used for linewidths:
//   counts(w) = amplitude * exp(-(w - center)^2 / (4 sigma^2))
struct GaussianCountsFit {
  double center_mhz = 0.0;
  double sigma_mhz = 0.0;
  double amplitude = 0.0;
  double rss = 0.0;
};

GaussianCountsFit fit_gaussian_counts(const std::vector<double>& centers_mhz,
                                      const std::vector<double>& counts);

// Signed frequency from two quadrature fringes by linear regression on the
// unwrapped phase of re + i*im over time.
struct PhaseRegression {
  double freq_mhz = 0.0;
  double stderr_mhz = 0.0;
};

PhaseRegression fit_phase_regression(const std::vector<double>& t_us,
                                     const std::vector<double>& re,
                                     const std::vector<double>& im);

}  // namespace starkspec
