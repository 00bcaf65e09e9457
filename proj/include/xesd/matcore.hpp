#pragma once

// Fixed-size dense complex matrices for one and two qubits.
//
// Two-qubit operators use the product basis |++>, |+->, |-+>, |--> with
// |+> the excited state, so index = 2*(qubit A is |->) + (qubit B is |->).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>

namespace xesd {

using C64 = std::complex<double>;

inline constexpr C64 kI{0.0, 1.0};

template <std::size_t N>
class SquareMatrix {
 public:
  static constexpr std::size_t kDim = N;

  constexpr SquareMatrix() : e_{} {}

  // Row-major list of N*N entries.
  SquareMatrix(std::initializer_list<C64> row_major) : e_{} {
    std::size_t k = 0;
    for (const C64& v : row_major) {
      if (k == N * N) break;
      e_[k++] = v;
    }
  }

  static SquareMatrix zero() { return SquareMatrix{}; }

  static SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static SquareMatrix diagonal(const std::array<C64, N>& d) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  C64& operator()(std::size_t r, std::size_t c) { return e_[r * N + c]; }
  const C64& operator()(std::size_t r, std::size_t c) const { return e_[r * N + c]; }

  const std::array<C64, N * N>& entries() const { return e_; }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) e_[k] += o.e_[k];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) e_[k] -= o.e_[k];
    return *this;
  }
  SquareMatrix& operator*=(C64 s) {
    for (C64& v : e_) v *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(SquareMatrix a, C64 s) { return a *= s; }
  friend SquareMatrix operator*(C64 s, SquareMatrix a) { return a *= s; }
  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) { return matmul(a, b); }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::array<C64, N * N> e_;
};

using Mat2 = SquareMatrix<2>;
using Mat4 = SquareMatrix<4>;

template <std::size_t N>
SquareMatrix<N> matmul(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  SquareMatrix<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t k = 0; k < N; ++k) {
      const C64 aik = a(i, k);
      if (aik == C64{}) continue;
      for (std::size_t j = 0; j < N; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

// Conjugate transpose.
template <std::size_t N>
SquareMatrix<N> dagger(const SquareMatrix<N>& a) {
  SquareMatrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

// Entrywise complex conjugate (no transpose).
template <std::size_t N>
SquareMatrix<N> conjugate(const SquareMatrix<N>& a) {
  SquareMatrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj(a(i, j));
  return out;
}

template <std::size_t N>
C64 trace(const SquareMatrix<N>& a) {
  C64 t{};
  for (std::size_t i = 0; i < N; ++i) t += a(i, i);
  return t;
}

// Largest entrywise modulus.
template <std::size_t N>
double max_abs(const SquareMatrix<N>& a) {
  double m = 0.0;
  for (const C64& v : a.entries()) m = std::max(m, std::abs(v));
  return m;
}

// max_ij |a_ij - b_ij|
template <std::size_t N>
double inf_norm_diff(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < N * N; ++k) m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  return m;
}

template <std::size_t N>
bool all_finite(const SquareMatrix<N>& a) {
  return std::all_of(a.entries().begin(), a.entries().end(),
                     [](const C64& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

Mat4 kron(const Mat2& a, const Mat2& b);

namespace pauli {
Mat2 x();
Mat2 y();
Mat2 z();
}  // namespace pauli

using Vec4 = std::array<C64, 4>;

struct EigenPair {
  C64 value;
  Vec4 vector;  // unit 2-norm
};

// Eigenvalues of a general (non-Hermitian) 4x4 complex matrix, unordered.
// Throws NumericalFailure if the shifted QR iteration does not converge or
// the input has non-finite entries.
std::array<C64, 4> eig_spectrum(const Mat4& m);

// Same iteration, also returning one unit eigenvector per eigenvalue
// (back-substitution on the Schur form).
std::array<EigenPair, 4> eig_pairs(const Mat4& m);

Vec4 mat_vec(const Mat4& m, const Vec4& v);

}  // namespace xesd
