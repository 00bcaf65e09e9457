#pragma once

// Runs behind the command-line tool: time evolutions, (F, tau) grids,
// sudden-death queries, the critical-fidelity search and the local-unitary
// demonstration. All times here are dimensionless, tau = reference_rate * t.

#include <optional>
#include <string_view>
#include <vector>

#include "xesd/channels.hpp"
#include "xesd/entanglement.hpp"
#include "xesd/states.hpp"

namespace xesd {

enum class StateFamily { WernerPsi, WernerPhi, CustomX };

std::string_view to_string(StateFamily family);
// "werner-psi", "werner-phi", "custom-x"
StateFamily parse_state_family(std::string_view name);

// Inclusive uniform grid of `steps` points.
struct Range {
  double min = 0.0;
  double max = 0.0;
  int steps = 2;

  double at(int i) const;
};

// Throws DomainError unless min <= max (both finite) and steps >= 2.
void check_range(const Range& r, std::string_view what);

struct RunRecord {
  double tau = 0.0;
  double fidelity = 0.0;
  double concurrence = 0.0;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double abs_z = 0.0, abs_w = 0.0;
};

RunRecord make_record(double tau, double fidelity, const XState& x);

// <Psi-| rho |Psi->; equals F for the |Psi-> Werner family.
double singlet_fidelity(const XState& x);

struct StateChoice {
  StateFamily family = StateFamily::WernerPsi;
  double fidelity = 1.0;           // Werner families
  std::optional<XState> custom;    // CustomX

  XState initial() const;
  // Value written to the fidelity column: F for Werner families, the
  // singlet fidelity of the custom state otherwise.
  double reported_fidelity() const;
};

struct EvolveSpec {
  ChannelSpec channel;
  StateChoice state;
  double tau_max = 5.0;
  int steps = 201;
};

std::vector<RunRecord> evolve(const EvolveSpec& spec);

struct SweepSpec {
  ChannelSpec channel;
  StateFamily family = StateFamily::WernerPsi;
  Range fidelity{0.25, 1.0, 101};
  Range tau{0.0, 5.0, 201};
  std::optional<XState> custom;  // CustomX sweeps emit a single row
};

void check_sweep(const SweepSpec& spec);

// Fidelity-major, tau-minor. Rows may be computed on several threads; the
// output order and values do not depend on `threads`.
std::vector<RunRecord> sweep(const SweepSpec& spec, unsigned threads = 1);

// Default tau_max for the figure grids: 5 for dephasing, 10 otherwise.
double default_tau_max(ChannelKind kind);

struct EsdQuery {
  ChannelSpec channel;
  StateChoice state;
  double horizon_tau = kDefaultHorizonTau;
  double tol_tau = kDefaultEsdTol;
};

struct EsdReport {
  std::optional<EsdResult> analytic;  // tau units
  EsdResult numeric;                  // tau units
  std::optional<double> difference;   // |analytic - numeric| when both die
  double horizon_tau = kDefaultHorizonTau;
};

EsdReport run_esd(const EsdQuery& q);

struct CriticalFidelityReport {
  double analytic = 0.0;
  double numeric = 0.0;
  double horizon_tau = kDefaultHorizonTau;
  double gap() const { return numeric - analytic; }
};

CriticalFidelityReport run_critical_fidelity(double horizon_tau = kDefaultHorizonTau);

struct LocalOpsDemo {
  double fidelity = 0.0;
  double c0_psi = 0.0;
  double c0_phi = 0.0;
  double transform_residual = 0.0;  // ||U rho_psi U^H - rho_phi||_inf
  EsdResult fate_psi;               // amplitude noise, tau units
  EsdResult fate_phi;
  std::optional<double> phi_analytic_tau;
  double horizon_tau = kDefaultHorizonTau;
};

// F must lie in (1/2, 1]; unit-rate amplitude damping on both qubits.
LocalOpsDemo run_demo_local_ops(double fidelity, double horizon_tau = kDefaultHorizonTau,
                                double tol_tau = kDefaultEsdTol);

}  // namespace xesd
