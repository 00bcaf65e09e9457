#include "xesd/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "xesd/errors.hpp"

namespace xesd {

namespace {

constexpr double kImagTol = 1e-8;
constexpr double kClampTol = 1e-10;

const Mat4& spin_flip() {
  static const Mat4 sy2 = kron(pauli::y(), pauli::y());
  return sy2;
}

void require_positive_rate(double rate) {
  if (!(std::isfinite(rate) && rate > 0.0)) {
    std::ostringstream os;
    os << "rate must be positive and finite (got " << rate << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

double concurrence_x(const XState& x) {
  const double via_z = std::abs(x.z()) - std::sqrt(x.a() * x.d());
  const double via_w = std::abs(x.w()) - std::sqrt(x.b() * x.c());
  return 2.0 * std::max({0.0, via_z, via_w});
}

double concurrence_general(const DensityMatrix4& rho) {
  const Mat4& m = rho.matrix();
  const Mat4 zeta = m * spin_flip() * conjugate(m) * spin_flip();
  const auto spectrum = eig_spectrum(zeta);

  std::array<double, 4> lambda{};
  for (std::size_t i = 0; i < 4; ++i) {
    const C64 l = spectrum[i];
    if (std::abs(l.imag()) > kImagTol || l.real() < -kClampTol) {
      std::ostringstream os;
      os << "concurrence: eigenvalue " << l << " of rho rho~ is not a non-negative real";
      throw NumericalFailure(os.str());
    }
    lambda[i] = std::max(0.0, l.real());
  }
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  const double c = std::sqrt(lambda[0]) - std::sqrt(lambda[1]) - std::sqrt(lambda[2]) - std::sqrt(lambda[3]);
  return std::max(0.0, c);
}

EsdResult esd_time_phase_werner(double fidelity, double rate, std::optional<double> horizon) {
  const double F = Fidelity(fidelity).value();
  require_positive_rate(rate);
  if (F <= 0.5) return InitiallySeparable{};
  if (F == 1.0) {
    const double h = horizon.value_or(kDefaultHorizonTau / rate);
    const double g2 = std::exp(-rate * h);
    const double c = std::max(0.0, (4.0 * F - 1.0) / 3.0 * g2 - 2.0 * (1.0 - F) / 3.0);
    return AliveAtHorizon{h, c};
  }
  return DiesAt{std::log((4.0 * F - 1.0) / (2.0 - 2.0 * F)) / rate};
}

EsdResult esd_time_amplitude_phi_werner(double fidelity, double rate) {
  if (!(fidelity > 0.5 && fidelity < 1.0)) {
    std::ostringstream os;
    os << "amplitude-noise death time for the |Phi-> Werner family needs F in (1/2, 1), got " << fidelity
       << (fidelity <= 0.5 ? " (separable)" : " (Bell limit never dies)");
    throw DomainError(os.str());
  }
  require_positive_rate(rate);
  return DiesAt{std::log((2.0 * fidelity + 1.0) / (4.0 - 4.0 * fidelity)) / rate};
}

EsdResult esd_time_numeric(const XState& x0, const ChannelSpec& spec, double horizon, double tol) {
  check_spec(spec);
  if (!(std::isfinite(horizon) && horizon > 0.0)) throw DomainError("esd search: horizon must be positive");
  if (!(std::isfinite(tol) && tol > 0.0)) throw DomainError("esd search: tolerance must be positive");

  const auto conc_at = [&](double t) { return concurrence_x(propagate_x(x0, spec, t)); };

  if (conc_at(0.0) <= 0.0) return InitiallySeparable{};

  double prev = 0.0;
  for (int i = 1; i < kEsdGridSamples; ++i) {
    const double t = horizon * static_cast<double>(i) / static_cast<double>(kEsdGridSamples - 1);
    if (conc_at(t) <= 0.0) {
      double lo = prev;
      double hi = t;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (conc_at(mid) > 0.0 ? lo : hi) = mid;
      }
      return DiesAt{0.5 * (lo + hi)};
    }
    prev = t;
  }
  return AliveAtHorizon{horizon, conc_at(horizon)};
}

double critical_fidelity_amplitude() { return (3.0 * std::sqrt(5.0) - 1.0) / 8.0; }

double critical_fidelity_numeric(double horizon_tau, double tol) {
  if (!(std::isfinite(horizon_tau) && horizon_tau > 0.0)) throw DomainError("horizon must be positive");
  const ChannelSpec spec{ChannelKind::Amplitude, 1.0, 1.0};
  const auto survives = [&](double f) {
    return std::holds_alternative<AliveAtHorizon>(esd_time_numeric(werner_psi(Fidelity(f)), spec, horizon_tau));
  };

  // Bracket: just-entangled states die, the Bell state survives.
  double lo = 0.5 + 1e-6;
  double hi = 1.0;
  if (survives(lo) || !survives(hi)) throw NumericalFailure("critical fidelity: boundary not bracketed");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (survives(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace xesd
