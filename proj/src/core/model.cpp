#include "core/model.hpp"

#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace starkspec {

double TlsDefect::stationary_std_mhz() const {
  if (theta_per_hr > 0.0) {
    return sigma_mhz_sqrt_hr / std::sqrt(2.0 * theta_per_hr);
  }
  if (sigma_mhz_sqrt_hr == 0.0) return 0.0;
  return std::numeric_limits<double>::infinity();
}

void QubitModel::validate() const {
  if (!(omega_q_ghz > 0.0))
    throw Error(ErrorCode::invalid_argument,
                "qubit '" + id + "': omega_q_ghz must be > 0");
  if (!(delta_q_mhz < 0.0))
    throw Error(ErrorCode::invalid_argument,
                "qubit '" + id + "': delta_q_mhz must be < 0");
  if (!(gamma0_per_us >= 0.0))
    throw Error(ErrorCode::invalid_argument,
                "qubit '" + id + "': gamma0_per_us must be >= 0");
  for (std::size_t j = 0; j < bath.size(); ++j) {
    const TlsDefect& d = bath[j];
    const std::string where =
        "qubit '" + id + "' defect " + std::to_string(j);
    if (!(d.g_mhz >= 0.0))
      throw Error(ErrorCode::invalid_argument, where + ": g_mhz must be >= 0");
    if (!(d.hwhm_mhz > 0.0))
      throw Error(ErrorCode::invalid_argument, where + ": hwhm_mhz must be > 0");
    if (!(d.theta_per_hr >= 0.0))
      throw Error(ErrorCode::invalid_argument,
                  where + ": theta_per_hr must be >= 0");
    if (!(d.sigma_mhz_sqrt_hr >= 0.0))
      throw Error(ErrorCode::invalid_argument,
                  where + ": sigma_mhz_sqrt_hr must be >= 0");
  }
}

double stark_shift(double delta_q_mhz, double omega_s_mhz, double delta_qs_mhz,
                   double pole_guard_mhz) {
  if (std::abs(delta_qs_mhz) < pole_guard_mhz)
    throw Error(ErrorCode::pole,
                "stark_shift: |delta_qs| = " + std::to_string(std::abs(delta_qs_mhz)) +
                    " MHz is inside the " + std::to_string(pole_guard_mhz) +
                    " MHz guard around the 01 pole");
  if (std::abs(delta_q_mhz + delta_qs_mhz) < pole_guard_mhz)
    throw Error(ErrorCode::pole,
                "stark_shift: |delta_q + delta_qs| = " +
                    std::to_string(std::abs(delta_q_mhz + delta_qs_mhz)) +
                    " MHz is inside the " + std::to_string(pole_guard_mhz) +
                    " MHz guard around the 12 pole");
  return delta_q_mhz * omega_s_mhz * omega_s_mhz /
         (2.0 * delta_qs_mhz * (delta_q_mhz + delta_qs_mhz));
}

double amplitude_for_shift(double target_mhz, double delta_q_mhz,
                           double delta_qs_mhz, double pole_guard_mhz) {
  if (target_mhz == 0.0) {
    // Still reject pole placements so the round trip through stark_shift is
    // well defined.
    stark_shift(delta_q_mhz, 0.0, delta_qs_mhz, pole_guard_mhz);
    return 0.0;
  }
  const double denom = 2.0 * delta_qs_mhz * (delta_q_mhz + delta_qs_mhz);
  if (std::abs(delta_qs_mhz) < pole_guard_mhz ||
      std::abs(delta_q_mhz + delta_qs_mhz) < pole_guard_mhz) {
    stark_shift(delta_q_mhz, 0.0, delta_qs_mhz, pole_guard_mhz);  // throws
  }
  const double amp_sq = target_mhz * denom / delta_q_mhz;
  if (amp_sq < 0.0) {
    const char* achievable =
        (delta_q_mhz / denom) > 0.0 ? "positive" : "negative";
    throw Error(ErrorCode::sign_infeasible,
                "amplitude_for_shift: target " + std::to_string(target_mhz) +
                    " MHz is infeasible at delta_qs = " +
                    std::to_string(delta_qs_mhz) +
                    " MHz; only " + achievable + " shifts are achievable");
  }
  return std::sqrt(amp_sq);
}

double relaxation_rate(const QubitModel& qubit, const BathState& bath,
                       double probe_offset_mhz) {
  if (bath.freqs_mhz.size() != qubit.bath.size())
    throw Error(ErrorCode::invalid_argument,
                "relaxation_rate: bath state has " +
                    std::to_string(bath.freqs_mhz.size()) + " entries, qubit '" +
                    qubit.id + "' has " + std::to_string(qubit.bath.size()) +
                    " defects");
  double rate = qubit.gamma0_per_us;
  for (std::size_t j = 0; j < qubit.bath.size(); ++j) {
    const TlsDefect& d = qubit.bath[j];
    const double detuning = probe_offset_mhz - bath.freqs_mhz[j];
    rate += kRatePerUsPerMhz * 2.0 * d.g_mhz * d.g_mhz * d.hwhm_mhz /
            (d.hwhm_mhz * d.hwhm_mhz + detuning * detuning);
  }
  return rate;
}

BathState initial_bath_state(const QubitModel& qubit, RngStream& rng) {
  BathState state;
  state.time_hr = 0.0;
  state.freqs_mhz.reserve(qubit.bath.size());
  for (const TlsDefect& d : qubit.bath) {
    if (d.theta_per_hr > 0.0) {
      state.freqs_mhz.push_back(rng.normal(d.mu_mhz, d.stationary_std_mhz()));
    } else {
      state.freqs_mhz.push_back(d.mu_mhz);
    }
  }
  return state;
}

BathState evolve_bath(const QubitModel& qubit, const BathState& bath,
                      double dt_hr, RngStream& rng) {
  if (!(dt_hr > 0.0))
    throw Error(ErrorCode::invalid_argument, "evolve_bath: dt_hr must be > 0");
  if (bath.freqs_mhz.size() != qubit.bath.size())
    throw Error(ErrorCode::invalid_argument,
                "evolve_bath: bath state size does not match qubit bath");
  BathState next;
  next.time_hr = bath.time_hr + dt_hr;
  next.freqs_mhz.resize(bath.freqs_mhz.size());
  for (std::size_t j = 0; j < qubit.bath.size(); ++j) {
    const TlsDefect& d = qubit.bath[j];
    const double theta = d.theta_per_hr;
    const double sigma2 = d.sigma_mhz_sqrt_hr * d.sigma_mhz_sqrt_hr;
    const double decay = std::exp(-theta * dt_hr);
    const double var = theta > 0.0
                           ? sigma2 * (-std::expm1(-2.0 * theta * dt_hr)) /
                                 (2.0 * theta)
                           : sigma2 * dt_hr;
    const double mean = d.mu_mhz + (bath.freqs_mhz[j] - d.mu_mhz) * decay;
    if (var > 0.0) {
      next.freqs_mhz[j] = rng.normal(mean, std::sqrt(var));
    } else {
      next.freqs_mhz[j] = mean;
    }
  }
  return next;
}

}  // namespace starkspec
