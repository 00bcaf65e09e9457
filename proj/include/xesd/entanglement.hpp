#pragma once

#include <optional>
#include <variant>

#include "xesd/channels.hpp"
#include "xesd/states.hpp"

namespace xesd {

// Horizon for sudden-death searches, in units of tau = rate * t.
inline constexpr double kDefaultHorizonTau = 60.0;
inline constexpr double kDefaultEsdTol = 1e-12;
inline constexpr int kEsdGridSamples = 512;

struct DiesAt {
  double t;
};
struct AliveAtHorizon {
  double horizon;
  double c_final;
};
struct InitiallySeparable {};

using EsdResult = std::variant<DiesAt, AliveAtHorizon, InitiallySeparable>;

// 2 max{0, |z| - sqrt(ad), |w| - sqrt(bc)}
double concurrence_x(const XState& x);

// Wootters concurrence from the spectrum of rho (sy x sy) rho* (sy x sy).
// Throws NumericalFailure if an eigenvalue has |Im| > 1e-8 or Re < -1e-10.
double concurrence_general(const DensityMatrix4& rho);

// Werner |Psi-> family under equal-rate dephasing. For F = 1 the state
// never disentangles; the result is then AliveAtHorizon at `horizon`
// (physical time, default 60 / rate).
EsdResult esd_time_phase_werner(double fidelity, double rate, std::optional<double> horizon = std::nullopt);

// Werner |Phi-> family under equal-rate amplitude damping; F in (1/2, 1).
EsdResult esd_time_amplitude_phi_werner(double fidelity, double rate);

// First zero of C(t) for x0 evolved under spec: 512 uniform samples on
// [0, horizon], then bisection to a bracket width <= tol. Horizon and tol
// are physical time, same units as propagate_x.
EsdResult esd_time_numeric(const XState& x0, const ChannelSpec& spec, double horizon, double tol = kDefaultEsdTol);

// Positive root of 16F^2 + 4F - 11 = 0: (3 sqrt(5) - 1) / 8.
double critical_fidelity_amplitude();

// Bisects the Werner |Psi-> fidelity separating DiesAt from AliveAtHorizon
// under unit-rate amplitude damping with the given horizon (tau units).
double critical_fidelity_numeric(double horizon_tau = kDefaultHorizonTau, double tol = 1e-13);

}  // namespace xesd
