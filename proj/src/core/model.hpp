#pragma once

#include <string>
#include <vector>

#include "core/rng.hpp"

namespace starkspec {

// Couplings and linewidths are cyclic MHz; relaxation rates are 1/us. The two
// are numerically identical (1 MHz = 1 cycle/us), so the conversion constant
// is 1.0. It is applied in exactly one place (relaxation_rate) and kept
// explicit so the unit convention is visible.
inline constexpr double kRatePerUsPerMhz = 1.0;

// Minimum distance from the poles of the Stark-shift map (MHz).
inline constexpr double kDefaultPoleGuardMhz = 1.0;

// One bath defect: a Lorentzian absorber whose center frequency wanders as a
// mean-reverting (Ornstein-Uhlenbeck) process around mu_mhz.
struct TlsDefect {
  double mu_mhz = 0.0;             // mean offset from the qubit frequency
  double g_mhz = 0.0;              // coupling strength
  double hwhm_mhz = 1.0;           // half linewidth Gamma_2
  double theta_per_hr = 0.0;       // mean-reversion rate
  double sigma_mhz_sqrt_hr = 0.0;  // diffusion strength

  // Standard deviation of the stationary frequency distribution; infinite
  // when theta is 0 and sigma > 0 (free diffusion).
  double stationary_std_mhz() const;
};

struct QubitModel {
  std::string id;
  double omega_q_ghz = 5.0;
  double delta_q_mhz = -340.0;   // anharmonicity, negative for transmons
  double gamma0_per_us = 0.01;   // background relaxation rate
  std::vector<TlsDefect> bath;

  // Throws Error(invalid_argument) on a broken invariant, with the offending
  // field named.
  void validate() const;
};

// Off-resonant drive. The envelope fields describe the gaussian-square pulse
// of the measurement protocol; they do not enter the shift map itself.
struct StarkTone {
  double delta_qs_mhz = -50.0;  // omega_q - omega_s, signed
  double omega_s_mhz = 0.0;     // drive amplitude, calibrated MHz units
  double flat_us = 50.0;
  double rise_sigma_ns = 10.0;  // gaussian-square with 2-sigma rise/fall
};

// Snapshot of the bath: one wandering frequency per defect, offsets from the
// qubit frequency in MHz.
struct BathState {
  double time_hr = 0.0;
  std::vector<double> freqs_mhz;
};

// Second-order Stark shift of the 01 transition under an off-resonant tone:
//   delta_q * omega_s^2 / (2 * delta_qs * (delta_q + delta_qs))
// Throws Error(pole) when either detuning factor is within pole_guard_mhz of
// zero.
double stark_shift(double delta_q_mhz, double omega_s_mhz, double delta_qs_mhz,
                   double pole_guard_mhz = kDefaultPoleGuardMhz);

// Drive amplitude that produces the requested shift; exact inverse of
// stark_shift. Throws Error(sign_infeasible) when the target sign cannot be
// reached at this detuning, naming the achievable sign.
double amplitude_for_shift(double target_mhz, double delta_q_mhz,
                           double delta_qs_mhz,
                           double pole_guard_mhz = kDefaultPoleGuardMhz);

// Total relaxation rate seen by the qubit when its transition sits at
// probe_offset_mhz from the bare frequency: background plus one Lorentzian
// golden-rule term 2 g^2 Gamma2 / (Gamma2^2 + detuning^2) per defect.
double relaxation_rate(const QubitModel& qubit, const BathState& bath,
                       double probe_offset_mhz);

// Bath with every defect drawn from its stationary law (or pinned at mu when
// theta = 0).
BathState initial_bath_state(const QubitModel& qubit, RngStream& rng);

// Exact OU transition over dt hours:
//   f' = mu + (f - mu) e^{-theta dt} + eta sqrt(sigma^2 (1 - e^{-2 theta dt}) / (2 theta))
// with the theta -> 0 limit sigma^2 dt handled explicitly.
BathState evolve_bath(const QubitModel& qubit, const BathState& bath,
                      double dt_hr, RngStream& rng);

}  // namespace starkspec
