#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "xesd/entanglement.hpp"
#include "xesd/errors.hpp"

using namespace xesd;

namespace {

const ChannelSpec kPhase{ChannelKind::Phase, 1.0, 1.0};
const ChannelSpec kAmp{ChannelKind::Amplitude, 1.0, 1.0};
const ChannelSpec kEq{ChannelKind::Equalizing, 1.0, 1.0};

double dies_at(const EsdResult& r) {
  REQUIRE(std::holds_alternative<DiesAt>(r));
  return std::get<DiesAt>(r).t;
}

}  // namespace

TEST_CASE("concurrence_x examples") {
  CHECK(concurrence_x(werner_psi(Fidelity(1.0))) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(concurrence_x(XState::maximally_mixed()) == 0.0);
  CHECK(concurrence_x(werner_psi(Fidelity(0.8))) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(concurrence_x(werner_phi(Fidelity(0.8))) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(concurrence_x(werner_psi(Fidelity(0.5))) <= 1e-15);
}

TEST_CASE("concurrence_general on Bell states and the mixed state") {
  CHECK(std::abs(concurrence_general(to_dense(bell_psi_minus())) - 1.0) <= 1e-12);
  CHECK(std::abs(concurrence_general(to_dense(bell_phi_minus())) - 1.0) <= 1e-12);
  CHECK(concurrence_general(to_dense(XState::maximally_mixed())) <= 1e-12);
  CHECK(std::abs(concurrence_general(to_dense(werner_psi(Fidelity(0.8)))) - 0.6) <= 1e-12);
}

TEST_CASE("concurrence_general agrees with the X-state form") {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const XState x = random_xstate(rng);
    worst = std::max(worst, std::abs(concurrence_general(to_dense(x)) - concurrence_x(x)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("concurrence is invariant under local unitaries") {
  std::mt19937_64 rng(31);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const XState x = random_xstate(rng);
    const DensityMatrix4 y = apply_local_unitary(to_dense(x), random_local_unitary(rng));
    worst = std::max(worst, std::abs(concurrence_general(y) - concurrence_x(x)));
  }
  CHECK(worst <= 1e-12);

  // the flip maps the two Werner families exactly
  for (double f : {0.3, 0.6, 0.8, 0.95}) {
    const DensityMatrix4 y = apply_local_unitary(to_dense(werner_psi(Fidelity(f))), flip_a_unitary());
    CHECK(std::abs(concurrence_general(y) - concurrence_x(werner_psi(Fidelity(f)))) <= 1e-12);
  }
}

TEST_CASE("esd_time_phase_werner") {
  CHECK(dies_at(esd_time_phase_werner(0.8, 1.0)) == doctest::Approx(1.7047480922384253).epsilon(1e-14));
  CHECK(dies_at(esd_time_phase_werner(0.6, 1.0)) == doctest::Approx(0.5596157879354227).epsilon(1e-14));
  // rate rescales time
  CHECK(dies_at(esd_time_phase_werner(0.8, 2.0)) == doctest::Approx(1.7047480922384253 / 2).epsilon(1e-14));

  CHECK(std::holds_alternative<InitiallySeparable>(esd_time_phase_werner(0.5, 1.0)));
  CHECK(std::holds_alternative<InitiallySeparable>(esd_time_phase_werner(0.3, 1.0)));

  const EsdResult pure = esd_time_phase_werner(1.0, 1.0);
  REQUIRE(std::holds_alternative<AliveAtHorizon>(pure));
  CHECK(std::get<AliveAtHorizon>(pure).horizon == 60.0);
  CHECK(std::get<AliveAtHorizon>(pure).c_final == doctest::Approx(std::exp(-60.0)));

  CHECK_THROWS_AS(esd_time_phase_werner(1.2, 1.0), DomainError);
  CHECK_THROWS_AS(esd_time_phase_werner(0.8, 0.0), DomainError);
}

TEST_CASE("esd_time_amplitude_phi_werner") {
  CHECK(dies_at(esd_time_amplitude_phi_werner(0.8, 1.0)) == doctest::Approx(1.1786549963416462).epsilon(1e-14));
  CHECK(dies_at(esd_time_amplitude_phi_werner(0.6, 1.0)) == doctest::Approx(0.3184537311185346).epsilon(1e-14));
  CHECK_THROWS_AS(esd_time_amplitude_phi_werner(0.5, 1.0), DomainError);
  CHECK_THROWS_AS(esd_time_amplitude_phi_werner(1.0, 1.0), DomainError);
}

TEST_CASE("esd_time_numeric matches the dephasing closed form") {
  for (int i = 0; i < 9; ++i) {
    const double f = 0.55 + 0.05 * i;
    const double numeric = dies_at(esd_time_numeric(werner_psi(Fidelity(f)), kPhase, 60.0));
    const double analytic = dies_at(esd_time_phase_werner(f, 1.0));
    CHECK(std::abs(numeric - analytic) <= 1e-9);
  }
}

TEST_CASE("esd_time_numeric matches the amplitude |Phi-> closed form") {
  for (double f : {0.6, 0.7, 0.8, 0.9}) {
    const double numeric = dies_at(esd_time_numeric(werner_phi(Fidelity(f)), kAmp, 60.0));
    CHECK(std::abs(numeric - dies_at(esd_time_amplitude_phi_werner(f, 1.0))) <= 1e-9);
  }
}

TEST_CASE("esd_time_numeric amplitude |Psi-> death times") {
  CHECK(dies_at(esd_time_numeric(werner_psi(Fidelity(0.6)), kAmp, 60.0)) == doctest::Approx(0.434510488).epsilon(1e-8));
  CHECK(dies_at(esd_time_numeric(werner_psi(Fidelity(0.65)), kAmp, 60.0)) ==
        doctest::Approx(0.891361190).epsilon(1e-8));
  CHECK(dies_at(esd_time_numeric(werner_psi(Fidelity(0.7)), kAmp, 60.0)) == doctest::Approx(2.292431670).epsilon(1e-8));

  const EsdResult alive = esd_time_numeric(werner_psi(Fidelity(0.9)), kAmp, 60.0);
  REQUIRE(std::holds_alternative<AliveAtHorizon>(alive));
  CHECK(std::get<AliveAtHorizon>(alive).c_final > 0.0);

  CHECK(std::holds_alternative<InitiallySeparable>(esd_time_numeric(XState::maximally_mixed(), kAmp, 60.0)));
}

TEST_CASE("equalizing noise kills every Werner |Psi-> state") {
  const double bell = dies_at(esd_time_numeric(bell_psi_minus(), kEq, 60.0));
  CHECK(bell == doctest::Approx(-std::log(std::numbers::sqrt2 - 1.0)).epsilon(1e-11));
  CHECK(bell == doctest::Approx(0.8813735870195430).epsilon(1e-11));
  for (int i = 0; i < 10; ++i) {
    const double f = 0.55 + 0.045 * i;
    const double t = dies_at(esd_time_numeric(werner_psi(Fidelity(f)), kEq, 60.0));
    CHECK(t > 0.0);
    CHECK(t <= bell + 1e-9);
  }
}

TEST_CASE("esd_time_numeric argument checks") {
  CHECK_THROWS_AS(esd_time_numeric(bell_psi_minus(), kEq, -1.0), DomainError);
  CHECK_THROWS_AS(esd_time_numeric(bell_psi_minus(), kEq, 10.0, 0.0), DomainError);
}

TEST_CASE("critical fidelity") {
  const double fc = critical_fidelity_amplitude();
  CHECK(fc == doctest::Approx((3 * std::sqrt(5.0) - 1) / 8).epsilon(1e-15));
  CHECK(fc == doctest::Approx(0.7135254915624212).epsilon(1e-15));
  CHECK(std::abs(16 * fc * fc + 4 * fc - 11) <= 1e-13);
  CHECK(std::abs(fc - 0.714) <= 5e-4);

  CHECK(std::holds_alternative<DiesAt>(esd_time_numeric(werner_psi(Fidelity(fc - 0.01)), kAmp, 60.0)));
  CHECK(std::holds_alternative<AliveAtHorizon>(esd_time_numeric(werner_psi(Fidelity(fc + 0.01)), kAmp, 60.0)));

  const double numeric = critical_fidelity_numeric();
  CHECK(std::abs(numeric - fc) <= 1e-9);
}

TEST_CASE("a shorter horizon moves the numeric boundary below the true value") {
  const double h10 = critical_fidelity_numeric(10.0);
  CHECK(h10 < critical_fidelity_amplitude());
  CHECK(h10 == doctest::Approx(0.7135196750).epsilon(1e-8));
}
