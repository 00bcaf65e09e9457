#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "xesd/channels.hpp"
#include "xesd/entanglement.hpp"
#include "xesd/errors.hpp"

using namespace xesd;

namespace {

constexpr std::array<ChannelKind, 3> kKinds{ChannelKind::Phase, ChannelKind::Amplitude, ChannelKind::Equalizing};

DampingFactors at_gamma_squared(double g2) { return DampingFactors::from_gamma(std::sqrt(g2)); }

// Werner |Psi-> populations and coherence under equal-rate amplitude
// damping, written out from the textbook element formulas (independent of
// propagate_x and of the Kraus sum).
XState werner_amplitude_oracle(double F, double g2) {
  const double w2 = 1.0 - g2;
  const double a = (1 - F) / 3 * g2 * g2;
  const double b = (2 * F + 1) / 6 * g2 + (1 - F) / 3 * g2 * w2;
  const double d = (1 - F) / 3 + (2 * F + 1) / 3 * w2 + (1 - F) / 3 * w2 * w2;
  return XState(a, b, b, d, (1 - 4 * F) / 6 * g2, 0.0);
}

double x_diff(const XState& x, const XState& y) {
  return inf_norm_diff(to_dense(x).matrix(), to_dense(y).matrix());
}

}  // namespace

TEST_CASE("damping") {
  const DampingFactors d0 = damping(1.0, 0.0);
  CHECK(d0.gamma() == 1.0);
  CHECK(d0.omega() == 0.0);

  const DampingFactors d = damping(1.0, 2.0 * std::log(2.0));
  CHECK(d.gamma() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d.omega() == doctest::Approx(0.8660254037844386).epsilon(1e-15));

  const DampingFactors none = damping(0.0, 123.0);
  CHECK(none.gamma() == 1.0);
  CHECK(none.omega() == 0.0);

  CHECK_THROWS_AS(damping(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(damping(1.0, -0.1), DomainError);

  for (int i = 0; i <= 100; ++i) {
    const DampingFactors f = damping(1.0, 0.1 * i);
    CHECK(std::abs(f.gamma() * f.gamma() + f.omega() * f.omega() - 1.0) <= 1e-14);
  }
}

TEST_CASE("kraus_phase") {
  const KrausSet id = kraus_phase(DampingFactors::identity(), DampingFactors::identity());
  REQUIRE(id.ops.size() == 4);
  CHECK(id.ops[0] == Mat4::identity());
  for (std::size_t k = 1; k < 4; ++k) CHECK(id.ops[k] == Mat4::zero());

  const DampingFactors half = DampingFactors::from_gamma(0.5);
  CHECK(check_cptp(kraus_phase(half, half)) <= 1e-15);

  // Bell |Psi->, gamma^2 = 1/2: z -> -1/4, populations fixed
  const DampingFactors d = at_gamma_squared(0.5);
  const XState out = from_dense(apply(to_dense(werner_psi(Fidelity(1.0))), kraus_phase(d, d)));
  CHECK(out.z().real() == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(out.b() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(out.a() == 0.0);
}

TEST_CASE("kraus_amplitude") {
  const KrausSet id = kraus_amplitude(DampingFactors::identity(), DampingFactors::identity());
  CHECK(id.ops[0] == Mat4::identity());
  for (std::size_t k = 1; k < 4; ++k) CHECK(id.ops[k] == Mat4::zero());

  // gamma = 0: everything ends in |-->
  const DampingFactors dead = DampingFactors::from_gamma(0.0);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 10; ++i) {
    const DensityMatrix4 out = apply(to_dense(random_xstate(rng)), kraus_amplitude(dead, dead));
    CHECK(std::abs(out(3, 3) - 1.0) <= 1e-15);
  }

  // Bell |Psi->, gamma^2 = 1/2: (0, 1/4, 1/4, 1/2), z = -1/4
  const DampingFactors d = at_gamma_squared(0.5);
  const XState bell = from_dense(apply(to_dense(werner_psi(Fidelity(1.0))), kraus_amplitude(d, d)));
  CHECK(x_diff(bell, XState(0.0, 0.25, 0.25, 0.5, -0.25, 0.0)) <= 1e-15);
}

TEST_CASE("kraus_equalizing_1q") {
  const auto id = kraus_equalizing_1q(DampingFactors::identity());
  REQUIRE(id.size() == 4);
  const double s = 1.0 / std::numbers::sqrt2;
  CHECK(inf_norm_diff(id[0], s * Mat2::identity()) == 0.0);
  CHECK(id[1] == Mat2::zero());
  CHECK(inf_norm_diff(id[2], s * Mat2::identity()) == 0.0);
  CHECK(id[3] == Mat2::zero());

  const auto ops = kraus_equalizing_1q(DampingFactors::from_gamma(0.3));
  Mat2 sum;
  for (const Mat2& g : ops) sum += dagger(g) * g;
  CHECK(inf_norm_diff(sum, Mat2::identity()) <= 1e-14);

  // coherence of a single-qubit state is multiplied by gamma
  const double g = 0.6;
  const Mat2 rho{0.7, C64{0.2, 0.1}, C64{0.2, -0.1}, 0.3};
  Mat2 out;
  for (const Mat2& k : kraus_equalizing_1q(DampingFactors::from_gamma(g))) out += k * rho * dagger(k);
  CHECK(std::abs(out(0, 1) - g * rho(0, 1)) <= 1e-15);
}

TEST_CASE("product_channel") {
  const KrausSet id = product_channel({Mat2::identity()}, {Mat2::identity()});
  REQUIRE(id.ops.size() == 1);
  CHECK(id.ops[0] == Mat4::identity());

  const DampingFactors h = DampingFactors::from_gamma(0.5);
  const KrausSet eq = product_channel(kraus_equalizing_1q(h), kraus_equalizing_1q(h));
  CHECK(eq.ops.size() == 16);
  CHECK(check_cptp(eq) <= 1e-13);

  // gamma^2 = sqrt2 - 1 is the equalizing death point of |Psi->
  const DampingFactors death = at_gamma_squared(std::numbers::sqrt2 - 1.0);
  const KrausSet at_death = product_channel(kraus_equalizing_1q(death), kraus_equalizing_1q(death));
  const DensityMatrix4 out = apply(to_dense(werner_psi(Fidelity(1.0))), at_death);
  CHECK(concurrence_x(from_dense(out)) <= 1e-15);
  CHECK(concurrence_general(out) <= 1e-7);
}

TEST_CASE("apply") {
  std::mt19937_64 rng(4);
  const DensityMatrix4 rho = to_dense(random_xstate(rng));
  const KrausSet id{{Mat4::identity()}};
  CHECK(apply(rho, id).matrix() == rho.matrix());

  const DensityMatrix4 diag = DensityMatrix4::from_matrix(Mat4::diagonal({0.1, 0.2, 0.3, 0.4}));
  const DampingFactors d = damping(1.0, 0.7);
  CHECK(inf_norm_diff(apply(diag, kraus_phase(d, d)).matrix(), diag.matrix()) <= 1e-16);

  // Werner F = 0.8, amplitude, gamma^2 = 1/2: (1/60, 7/30, 7/30, 31/60), z = -11/60
  const DampingFactors h = at_gamma_squared(0.5);
  const XState w = from_dense(apply(to_dense(werner_psi(Fidelity(0.8))), kraus_amplitude(h, h)));
  CHECK(x_diff(w, XState(1.0 / 60, 7.0 / 30, 7.0 / 30, 31.0 / 60, -11.0 / 60, 0.0)) <= 1e-15);
  CHECK(x_diff(w, werner_amplitude_oracle(0.8, 0.5)) <= 1e-15);

  KrausSet broken = id;
  broken.ops[0] *= 1.1;
  CHECK_THROWS_AS(apply(rho, broken), DomainError);
}

TEST_CASE("check_cptp") {
  CHECK(check_cptp(KrausSet{{Mat4::identity()}}) == 0.0);
  for (ChannelKind k : kKinds) {
    for (int i = 0; i < 20; ++i) {
      CHECK(check_cptp(kraus_for(ChannelSpec{k, 1.0, 1.0}, 0.5 * i)) <= 1e-12);
      CHECK(check_cptp(kraus_for(ChannelSpec{k, 0.3, 2.0}, 0.5 * i)) <= 1e-12);
    }
  }
  KrausSet scaled{{Mat4::identity()}};
  scaled.ops[0] *= 1.1;
  CHECK(check_cptp(scaled) == doctest::Approx(0.21).epsilon(1e-12));
}

TEST_CASE("dephasing with diag(0, omega) as the second operator is not trace preserving") {
  // With diag(0, omega) as second factor the (1,1) entry of sum K^H K is gamma_A^2 gamma_B^2.
  const DampingFactors d = DampingFactors::from_gamma(0.5);
  const Mat2 keep = Mat2::diagonal({d.gamma(), 1.0});
  const Mat2 wrong = Mat2::diagonal({0.0, d.omega()});
  const KrausSet unbalanced = product_channel({keep, wrong}, {keep, wrong});
  CHECK(check_cptp(unbalanced) > 0.5);
  CHECK(check_cptp(kraus_phase(d, d)) <= 1e-15);
}

TEST_CASE("x_form_residual") {
  std::mt19937_64 rng(8);
  CHECK(x_form_residual(to_dense(random_xstate(rng)).matrix()) == 0.0);

  Mat4 m = 0.25 * Mat4::identity();
  m(0, 1) = 0.05;
  CHECK(x_form_residual(m) == 0.05);

  DensityMatrix4 rho = to_dense(werner_psi(Fidelity(0.8)));
  const KrausSet step = kraus_for(ChannelSpec{ChannelKind::Amplitude, 1.0, 1.0}, 0.1);
  for (int i = 0; i < 100; ++i) rho = apply(rho, step);
  CHECK(x_form_residual(rho.matrix()) <= 1e-13);
}

TEST_CASE("propagate_x examples") {
  std::mt19937_64 rng(12);
  const XState x = random_xstate(rng);
  for (ChannelKind k : kKinds) CHECK(x_diff(propagate_x(x, ChannelSpec{k, 1.0, 1.0}, 0.0), x) <= 1e-15);

  const ChannelSpec eq{ChannelKind::Equalizing, 1.0, 1.0};
  for (int i = 0; i < 20; ++i) {
    const XState late = propagate_x(random_xstate(rng), eq, 60.0);
    CHECK(std::abs(late.a() - 0.25) <= 1e-12);
    CHECK(std::abs(late.d() - 0.25) <= 1e-12);
    CHECK(std::abs(late.z()) <= 1e-12);
    CHECK(std::abs(late.w()) <= 1e-12);
  }

  // amplitude, Bell |Psi->, gamma^2 = 1/2 at t = ln 2
  const ChannelSpec amp{ChannelKind::Amplitude, 1.0, 1.0};
  const XState bell = propagate_x(werner_psi(Fidelity(1.0)), amp, std::log(2.0));
  CHECK(x_diff(bell, XState(0.0, 0.25, 0.25, 0.5, -0.25, 0.0)) <= 1e-15);
}

TEST_CASE("propagate_x matches the Werner amplitude formulas") {
  const ChannelSpec amp{ChannelKind::Amplitude, 1.0, 1.0};
  for (int i = 0; i <= 20; ++i) {
    const double F = 0.25 + 0.75 * i / 20.0;
    for (double t : {0.1, 0.7, 2.0, 5.0}) {
      CHECK(x_diff(propagate_x(werner_psi(Fidelity(F)), amp, t), werner_amplitude_oracle(F, std::exp(-t))) <=
            1e-14);
    }
  }
}

TEST_CASE("propagate_x agrees with the full Kraus sum") {
  std::mt19937_64 rng(1234);
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const XState x = random_xstate(rng);
    for (ChannelKind k : kKinds) {
      for (const auto& [ra, rb] : {std::pair{1.0, 1.0}, std::pair{0.4, 1.7}}) {
        const ChannelSpec spec{k, ra, rb};
        for (double t : {0.05, 0.5, 1.3, 4.0}) {
          const Mat4 closed = to_dense(propagate_x(x, spec, t)).matrix();
          const Mat4 kraus = apply(to_dense(x), kraus_for(spec, t)).matrix();
          worst = std::max(worst, inf_norm_diff(closed, kraus));
        }
      }
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("semigroup") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> tu(0.0, 3.0);
  for (ChannelKind k : kKinds) {
    for (const auto& [ra, rb] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}}) {
      const ChannelSpec spec{k, ra, rb};
      for (int i = 0; i < 100; ++i) {
        const XState x = random_xstate(rng);
        const double t1 = tu(rng), t2 = tu(rng);
        CHECK(x_diff(propagate_x(propagate_x(x, spec, t1), spec, t2), propagate_x(x, spec, t1 + t2)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("channel specs are validated") {
  CHECK_THROWS_AS(kraus_for(ChannelSpec{ChannelKind::Phase, -1.0, 1.0}, 1.0), DomainError);
  CHECK_THROWS_AS(propagate_x(XState::maximally_mixed(), ChannelSpec{ChannelKind::Phase, 1.0, 1.0}, -1.0),
                  DomainError);
  CHECK(parse_channel_kind("equalizing") == ChannelKind::Equalizing);
  CHECK_THROWS_AS(parse_channel_kind("depolarizing"), DomainError);
  CHECK(ChannelSpec{ChannelKind::Phase, 0.0, 0.0}.reference_rate() == 1.0);
  CHECK(ChannelSpec{ChannelKind::Phase, 0.5, 2.0}.reference_rate() == 2.0);
}
