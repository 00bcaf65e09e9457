#pragma once

#include <string_view>
#include <vector>

#include "xesd/matcore.hpp"
#include "xesd/states.hpp"

namespace xesd {

inline constexpr double kCompletenessTol = 1e-12;

// Single-qubit decay factors at one instant: gamma = exp(-rate t / 2),
// omega = sqrt(1 - gamma^2).
class DampingFactors {
 public:
  static DampingFactors identity() { return DampingFactors(1.0, 0.0); }

  double gamma() const { return gamma_; }
  double omega() const { return omega_; }

  friend DampingFactors damping(double rate, double t);
  // For tests and direct construction; requires gamma in [0, 1].
  static DampingFactors from_gamma(double gamma);

 private:
  DampingFactors(double g, double w) : gamma_(g), omega_(w) {}
  double gamma_;
  double omega_;
};

// Throws DomainError for negative or non-finite rate or time.
DampingFactors damping(double rate, double t);

enum class ChannelKind { Phase, Amplitude, Equalizing };

std::string_view to_string(ChannelKind kind);
// Accepts "phase", "amplitude", "equalizing"; throws DomainError otherwise.
ChannelKind parse_channel_kind(std::string_view name);

struct ChannelSpec {
  ChannelKind kind = ChannelKind::Phase;
  double rate_a = 1.0;
  double rate_b = 1.0;

  // Rate used to make time dimensionless (tau = reference_rate * t).
  // The larger of the two rates; 1 when both qubits are noiseless.
  double reference_rate() const;
};

// Throws DomainError on negative or non-finite rates.
void check_spec(const ChannelSpec& spec);

struct KrausSet {
  std::vector<Mat4> ops;
};

// ||sum K^H K - I||_inf
double check_cptp(const KrausSet& k);

// Dephasing: per qubit {diag(gamma, 1), diag(omega, 0)}, all pairs.
KrausSet kraus_phase(const DampingFactors& da, const DampingFactors& db);

// Zero-temperature decay |+> -> |->: per qubit {diag(gamma, 1), omega |-><+|}.
KrausSet kraus_amplitude(const DampingFactors& da, const DampingFactors& db);

// Population-equalizing noise on one qubit, four operators with 1/sqrt(2)
// prefactors: diag(gamma,1), omega|-><+|, diag(1,gamma), omega|+><-|.
std::vector<Mat2> kraus_equalizing_1q(const DampingFactors& d);

// All pairwise tensor products, qubit-A index major.
KrausSet product_channel(const std::vector<Mat2>& ops_a, const std::vector<Mat2>& ops_b);

// Full two-qubit Kraus set for spec at physical time t.
KrausSet kraus_for(const ChannelSpec& spec, double t);

// sum_mu K rho K^H. Throws DomainError if check_cptp(k) > kCompletenessTol.
DensityMatrix4 apply(const DensityMatrix4& rho, const KrausSet& k);

// Closed-form evolution of an X state; falls back to apply() with the full
// Kraus set for amplitude or equalizing noise with unequal rates.
XState propagate_x(const XState& x, const ChannelSpec& spec, double t);

// Largest modulus over the eight entries that vanish for an X state.
double x_form_residual(const Mat4& m);

}  // namespace xesd
