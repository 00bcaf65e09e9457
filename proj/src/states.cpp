#include "xesd/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "xesd/errors.hpp"

namespace xesd {

namespace {

std::string describe(double a, double b, double c, double d, C64 z, C64 w) {
  std::ostringstream os;
  os << "(a,b,c,d)=(" << a << "," << b << "," << c << "," << d << "), z=" << z << ", w=" << w;
  return os.str();
}

bool finite(C64 v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Off-X positions: everything not on the diagonal or anti-diagonal.
constexpr std::array<std::array<std::size_t, 2>, 8> kOffX{{
    {0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}}};

}  // namespace

XState::XState(double a, double b, double c, double d, C64 z, C64 w) : a_(a), b_(b), c_(c), d_(d), z_(z), w_(w) {
  const bool ok_finite =
      std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d) && finite(z) && finite(w);
  if (!ok_finite) throw DomainError("XState: non-finite parameter " + describe(a, b, c, d, z, w));
  if (a < -kStateTol || b < -kStateTol || c < -kStateTol || d < -kStateTol)
    throw DomainError("XState: negative population " + describe(a, b, c, d, z, w));
  if (std::abs(a + b + c + d - 1.0) > kStateTol)
    throw DomainError("XState: populations do not sum to 1 " + describe(a, b, c, d, z, w));
  if (std::norm(z) > b * c + kStateTol || std::norm(w) > a * d + kStateTol)
    throw DomainError("XState: coherence exceeds positivity bound " + describe(a, b, c, d, z, w));
}

DensityMatrix4 DensityMatrix4::from_matrix(const Mat4& m) {
  if (!all_finite(m)) throw DomainError("density matrix: non-finite entry");
  const Diagnostics diag = validate(m);
  if (!diag.valid()) {
    std::ostringstream os;
    os << "density matrix invalid: hermiticity residual " << diag.hermiticity << ", trace deviation "
       << diag.trace_deviation << ", min eigenvalue " << diag.min_eigenvalue;
    throw DomainError(os.str());
  }
  return DensityMatrix4(m);
}

Fidelity::Fidelity(double f) : f_(f) {
  if (!(f >= 0.25 && f <= 1.0)) {
    std::ostringstream os;
    os << "fidelity " << f << " outside [1/4, 1]";
    throw DomainError(os.str());
  }
}

namespace {
double unitarity_residual(const Mat2& u) { return inf_norm_diff(dagger(u) * u, Mat2::identity()); }
}  // namespace

LocalUnitary::LocalUnitary(const Mat2& ua, const Mat2& ub) : ua_(ua), ub_(ub) {
  if (!all_finite(ua) || !all_finite(ub)) throw DomainError("local unitary: non-finite entry");
  const double ra = unitarity_residual(ua);
  const double rb = unitarity_residual(ub);
  if (ra > kStateTol || rb > kStateTol) {
    std::ostringstream os;
    os << "local unitary: factor not unitary (residuals " << ra << ", " << rb << ")";
    throw DomainError(os.str());
  }
}

Diagnostics validate(const Mat4& m) {
  Diagnostics out;
  out.hermiticity = inf_norm_diff(m, dagger(m));
  out.trace_deviation = std::abs(trace(m) - 1.0);
  const Mat4 herm = 0.5 * (m + dagger(m));
  const auto spectrum = eig_spectrum(herm);
  double lo = spectrum[0].real();
  for (const C64& l : spectrum) lo = std::min(lo, l.real());
  out.min_eigenvalue = lo;
  return out;
}

XState werner_psi(Fidelity f) {
  const double F = f.value();
  const double outer = (1.0 - F) / 3.0;
  const double inner = (2.0 * F + 1.0) / 6.0;
  return XState(outer, inner, inner, outer, (1.0 - 4.0 * F) / 6.0, 0.0);
}

XState werner_phi(Fidelity f) {
  const double F = f.value();
  const double outer = (2.0 * F + 1.0) / 6.0;
  const double inner = (1.0 - F) / 3.0;
  return XState(outer, inner, inner, outer, 0.0, (1.0 - 4.0 * F) / 6.0);
}

XState bell_psi_minus() { return XState(0.0, 0.5, 0.5, 0.0, -0.5, 0.0); }
XState bell_phi_minus() { return XState(0.5, 0.0, 0.0, 0.5, 0.0, -0.5); }

DensityMatrix4 to_dense(const XState& x) {
  Mat4 m;
  m(0, 0) = x.a();
  m(1, 1) = x.b();
  m(2, 2) = x.c();
  m(3, 3) = x.d();
  m(0, 3) = x.w();
  m(3, 0) = std::conj(x.w());
  m(1, 2) = x.z();
  m(2, 1) = std::conj(x.z());
  return DensityMatrix4::from_matrix(m);
}

XState from_dense(const DensityMatrix4& rho, double tol) {
  for (const auto& [r, c] : kOffX) {
    const double mag = std::abs(rho(r, c));
    if (mag > tol) {
      std::ostringstream os;
      os << "not an X state: |rho(" << r + 1 << "," << c + 1 << ")| = " << mag << " exceeds " << tol;
      throw DomainError(os.str());
    }
  }
  return XState(rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(), rho(3, 3).real(), rho(1, 2), rho(0, 3));
}

DensityMatrix4 apply_local_unitary(const DensityMatrix4& rho, const LocalUnitary& u) {
  const Mat4 full = u.full();
  return DensityMatrix4::from_matrix(full * rho.matrix() * dagger(full));
}

LocalUnitary flip_a_unitary() { return LocalUnitary(kI * pauli::x(), Mat2::identity()); }

XState random_xstate(std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  std::array<double, 4> p{};
  double sum = 0.0;
  for (double& v : p) {
    v = expo(rng);
    sum += v;
  }
  for (double& v : p) v /= sum;
  const auto [a, b, c, d] = p;

  const double zmag = unit(rng) * std::sqrt(b * c);
  const double wmag = unit(rng) * std::sqrt(a * d);
  const C64 z = std::polar(zmag, angle(rng));
  const C64 w = std::polar(wmag, angle(rng));
  return XState(a, b, c, d, z, w);
}

namespace {
Mat2 random_unitary_2(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::array<double, 4> q{};
  double n2 = 0.0;
  for (double& v : q) {
    v = normal(rng);
    n2 += v * v;
  }
  const double inv = 1.0 / std::sqrt(n2);
  const C64 alpha{q[0] * inv, q[1] * inv};
  const C64 beta{q[2] * inv, q[3] * inv};
  const C64 phase = std::polar(1.0, angle(rng));
  return phase * Mat2{alpha, -std::conj(beta), beta, std::conj(alpha)};
}
}  // namespace

LocalUnitary random_local_unitary(std::mt19937_64& rng) {
  const Mat2 ua = random_unitary_2(rng);
  const Mat2 ub = random_unitary_2(rng);
  return LocalUnitary(ua, ub);
}

}  // namespace xesd
