#include "xesd/matcore.hpp"

#include <limits>
#include <string>

#include "xesd/errors.hpp"

namespace xesd {

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

namespace pauli {
Mat2 x() { return Mat2{0.0, 1.0, 1.0, 0.0}; }
Mat2 y() { return Mat2{0.0, -kI, kI, 0.0}; }
Mat2 z() { return Mat2{1.0, 0.0, 0.0, -1.0}; }
}  // namespace pauli

Vec4 mat_vec(const Mat4& m, const Vec4& v) {
  Vec4 out{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[i] += m(i, j) * v[j];
  return out;
}

namespace {

constexpr std::size_t kN = 4;
constexpr int kMaxIterPerEigenvalue = 60;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double frobenius(const Mat4& m) {
  double s = 0.0;
  for (const C64& v : m.entries()) s += std::norm(v);
  return std::sqrt(s);
}

// Householder reduction to upper Hessenberg form: h <- Q^H h Q, z <- z Q.
void reduce_to_hessenberg(Mat4& h, Mat4& z) {
  for (std::size_t k = 0; k + 2 < kN; ++k) {
    std::array<C64, kN> v{};
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < kN; ++i) {
      v[i] = h(i, k);
      xnorm2 += std::norm(v[i]);
    }
    double tail2 = xnorm2 - std::norm(v[k + 1]);
    if (tail2 == 0.0) continue;  // column already reduced

    const double xnorm = std::sqrt(xnorm2);
    const C64 x0 = v[k + 1];
    const C64 phase = std::abs(x0) == 0.0 ? C64{1.0} : x0 / std::abs(x0);
    const C64 alpha = -phase * xnorm;
    v[k + 1] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < kN; ++i) vnorm2 += std::norm(v[i]);
    const double scale = 1.0 / std::sqrt(vnorm2);
    for (std::size_t i = k + 1; i < kN; ++i) v[i] *= scale;

    // P = I - 2 v v^H, applied as h <- P h P, z <- z P.
    for (std::size_t j = 0; j < kN; ++j) {
      C64 s{};
      for (std::size_t i = k + 1; i < kN; ++i) s += std::conj(v[i]) * h(i, j);
      for (std::size_t i = k + 1; i < kN; ++i) h(i, j) -= 2.0 * v[i] * s;
    }
    for (std::size_t i = 0; i < kN; ++i) {
      C64 s{};
      for (std::size_t j = k + 1; j < kN; ++j) s += h(i, j) * v[j];
      for (std::size_t j = k + 1; j < kN; ++j) h(i, j) -= 2.0 * s * std::conj(v[j]);
      C64 t{};
      for (std::size_t j = k + 1; j < kN; ++j) t += z(i, j) * v[j];
      for (std::size_t j = k + 1; j < kN; ++j) z(i, j) -= 2.0 * t * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < kN; ++i) h(i, k) = 0.0;
  }
}

struct Givens {
  double c;
  C64 s;
};

// Rotation G = [[c, s], [-conj(s), c]] with G * [x; y] = [r; 0].
Givens make_givens(C64 x, C64 y) {
  const double ax = std::abs(x);
  const double n = std::hypot(ax, std::abs(y));
  if (n == 0.0) return {1.0, C64{}};
  if (ax == 0.0) return {0.0, C64{1.0}};
  return {ax / n, (x / ax) * std::conj(y) / n};
}

// Eigenvalue of the trailing 2x2 block [[a, b], [c, d]] closest to d.
C64 wilkinson_shift(C64 a, C64 b, C64 c, C64 d) {
  const C64 half = 0.5 * (a - d);
  const C64 disc = std::sqrt(half * half + b * c);
  const C64 mid = 0.5 * (a + d);
  const C64 mu1 = mid + disc;
  const C64 mu2 = mid - disc;
  return std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
}

// Complex Schur decomposition m = z t z^H with t upper triangular.
void schur(const Mat4& m, Mat4& t, Mat4& z) {
  if (!all_finite(m)) throw NumericalFailure("eigen solver: non-finite matrix entry");
  t = m;
  z = Mat4::identity();
  reduce_to_hessenberg(t, z);

  const double norm = frobenius(t);
  if (norm == 0.0) return;

  std::size_t hi = kN - 1;
  int iter = 0;
  int total = 0;
  while (hi > 0) {
    // Locate the start of the active unreduced block.
    std::size_t lo = hi;
    while (lo > 0) {
      double scale = std::abs(t(lo - 1, lo - 1)) + std::abs(t(lo, lo));
      if (scale == 0.0) scale = norm;
      if (std::abs(t(lo, lo - 1)) <= kEps * scale) {
        t(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > kMaxIterPerEigenvalue) {
      throw NumericalFailure("eigen solver: QR iteration did not converge after " + std::to_string(total) +
                             " sweeps");
    }
    ++total;

    C64 mu;
    if (iter % 10 == 0) {
      // exceptional shift to break cycles
      mu = t(hi, hi) + 0.75 * std::abs(t(hi, hi - 1));
    } else {
      mu = wilkinson_shift(t(hi - 1, hi - 1), t(hi - 1, hi), t(hi, hi - 1), t(hi, hi));
    }

    for (std::size_t k = lo; k <= hi; ++k) t(k, k) -= mu;

    std::array<Givens, kN> rot{};
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens g = make_givens(t(k, k), t(k + 1, k));
      rot[k] = g;
      for (std::size_t j = k; j < kN; ++j) {
        const C64 x = t(k, j);
        const C64 y = t(k + 1, j);
        t(k, j) = g.c * x + g.s * y;
        t(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
      t(k + 1, k) = 0.0;
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens g = rot[k];
      for (std::size_t i = 0; i <= k + 1; ++i) {
        const C64 x = t(i, k);
        const C64 y = t(i, k + 1);
        t(i, k) = g.c * x + std::conj(g.s) * y;
        t(i, k + 1) = -g.s * x + g.c * y;
      }
      for (std::size_t i = 0; i < kN; ++i) {
        const C64 x = z(i, k);
        const C64 y = z(i, k + 1);
        z(i, k) = g.c * x + std::conj(g.s) * y;
        z(i, k + 1) = -g.s * x + g.c * y;
      }
    }

    for (std::size_t k = lo; k <= hi; ++k) t(k, k) += mu;
  }
}

}  // namespace

std::array<C64, 4> eig_spectrum(const Mat4& m) {
  Mat4 t;
  Mat4 z;
  schur(m, t, z);
  return {t(0, 0), t(1, 1), t(2, 2), t(3, 3)};
}

std::array<EigenPair, 4> eig_pairs(const Mat4& m) {
  Mat4 t;
  Mat4 z;
  schur(m, t, z);

  const double small = std::max(kEps * frobenius(t), std::numeric_limits<double>::min());
  std::array<EigenPair, 4> out{};
  for (std::size_t k = 0; k < kN; ++k) {
    const C64 lambda = t(k, k);
    std::array<C64, kN> y{};
    y[k] = 1.0;
    for (std::size_t ii = k; ii-- > 0;) {
      C64 s{};
      for (std::size_t j = ii + 1; j <= k; ++j) s += t(ii, j) * y[j];
      C64 denom = t(ii, ii) - lambda;
      if (std::abs(denom) < small) denom = small;
      y[ii] = -s / denom;
    }
    Vec4 v{};
    double n2 = 0.0;
    for (std::size_t i = 0; i < kN; ++i) {
      for (std::size_t j = 0; j <= k; ++j) v[i] += z(i, j) * y[j];
      n2 += std::norm(v[i]);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (C64& vi : v) vi *= inv;
    out[k] = EigenPair{lambda, v};
  }
  return out;
}

}  // namespace xesd
