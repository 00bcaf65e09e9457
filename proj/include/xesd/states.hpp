#pragma once

#include <random>

#include "xesd/matcore.hpp"

namespace xesd {

inline constexpr double kStateTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

// Two-qubit density matrix with non-zero entries only on the main diagonal
// (populations a, b, c, d) and anti-diagonal (coherences z for |+-><-+| and
// w for |++><--|).
class XState {
 public:
  // Throws DomainError unless populations are non-negative and sum to one,
  // and |z|^2 <= bc, |w|^2 <= ad (all within kStateTol).
  XState(double a, double b, double c, double d, C64 z, C64 w);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }
  C64 z() const { return z_; }
  C64 w() const { return w_; }

  static XState maximally_mixed() { return XState(0.25, 0.25, 0.25, 0.25, 0.0, 0.0); }

  friend bool operator==(const XState&, const XState&) = default;

 private:
  double a_, b_, c_, d_;
  C64 z_, w_;
};

// Hermitian, unit trace, positive semidefinite 4x4 matrix.
class DensityMatrix4 {
 public:
  // Throws DomainError when any invariant fails (Hermiticity and trace to
  // kStateTol, smallest eigenvalue >= -kPositivityTol).
  static DensityMatrix4 from_matrix(const Mat4& m);

  const Mat4& matrix() const { return m_; }
  C64 operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  explicit DensityMatrix4(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

// Werner fidelity F in [1/4, 1].
class Fidelity {
 public:
  explicit Fidelity(double f);
  double value() const { return f_; }

 private:
  double f_;
};

class LocalUnitary {
 public:
  // Throws DomainError if either factor has ||U^H U - I||_inf > kStateTol.
  LocalUnitary(const Mat2& ua, const Mat2& ub);

  const Mat2& qubit_a() const { return ua_; }
  const Mat2& qubit_b() const { return ub_; }
  Mat4 full() const { return kron(ua_, ub_); }

 private:
  Mat2 ua_, ub_;
};

struct Diagnostics {
  double hermiticity = 0.0;      // ||M - M^H||_inf
  double trace_deviation = 0.0;  // |tr M - 1|
  double min_eigenvalue = 0.0;   // of the Hermitian part (M + M^H)/2

  bool valid() const {
    return hermiticity <= kStateTol && trace_deviation <= kStateTol && min_eigenvalue >= -kPositivityTol;
  }
};

Diagnostics validate(const Mat4& m);

// (1-F)/3 I + (4F-1)/3 |Psi-><Psi-|
XState werner_psi(Fidelity f);
// (1-F)/3 I + (4F-1)/3 |Phi-><Phi-|
XState werner_phi(Fidelity f);

XState bell_psi_minus();
XState bell_phi_minus();

DensityMatrix4 to_dense(const XState& x);

// Throws DomainError if any off-X entry has modulus above tol.
XState from_dense(const DensityMatrix4& rho, double tol = kStateTol);

DensityMatrix4 apply_local_unitary(const DensityMatrix4& rho, const LocalUnitary& u);

// (i sigma_x) on qubit A, identity on qubit B.
LocalUnitary flip_a_unitary();

// Dirichlet-uniform populations, coherence moduli uniform below the block
// positivity bound, uniform phases.
XState random_xstate(std::mt19937_64& rng);

// Haar-distributed single-qubit unitaries on each side.
LocalUnitary random_local_unitary(std::mt19937_64& rng);

}  // namespace xesd
