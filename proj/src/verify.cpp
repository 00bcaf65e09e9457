#include "xesd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <random>

#include "xesd/channels.hpp"
#include "xesd/entanglement.hpp"
#include "xesd/experiments.hpp"
#include "xesd/states.hpp"

namespace xesd {

namespace {

constexpr std::array<ChannelKind, 3> kAllChannels{ChannelKind::Phase, ChannelKind::Amplitude,
                                                  ChannelKind::Equalizing};

CheckResult run_check(const std::string& name, double tol, const std::function<double(std::string&)>& body) {
  CheckResult r{name, 0.0, tol, false, {}};
  try {
    r.max_residual = body(r.detail);
    r.passed = r.max_residual <= tol;
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
    r.passed = false;
  }
  return r;
}

ChannelSpec unit_rates(ChannelKind k) { return ChannelSpec{k, 1.0, 1.0}; }

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const int n = opts.random_states;

  out.push_back(run_check("cptp", kCompletenessTol, [&](std::string& detail) {
    double worst = 0.0;
    for (ChannelKind k : kAllChannels) {
      for (int i = 0; i <= 100; ++i) {
        KrausSet set = kraus_for(unit_rates(k), 0.1 * i);
        set.ops.front() *= opts.fault_scale;
        worst = std::max(worst, check_cptp(set));
      }
    }
    detail = "3 channels x tau in {0, 0.1, ..., 10}";
    return worst;
  }));

  out.push_back(run_check("x-form-invariance", 1e-13, [&](std::string& detail) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_real_distribution<double> tau(0.0, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < n; ++trial) {
      DensityMatrix4 rho = to_dense(random_xstate(rng));
      for (int step = 0; step < 5; ++step) {
        rho = apply(rho, kraus_for(unit_rates(kAllChannels[static_cast<std::size_t>(pick(rng))]), tau(rng)));
        worst = std::max(worst, x_form_residual(rho.matrix()));
      }
    }
    DensityMatrix4 rho = to_dense(werner_psi(Fidelity(0.8)));
    const KrausSet step = kraus_for(unit_rates(ChannelKind::Amplitude), 0.1);
    for (int i = 0; i < 100; ++i) rho = apply(rho, step);
    worst = std::max(worst, x_form_residual(rho.matrix()));
    detail = std::to_string(n) + " random 5-step sequences + 100 amplitude steps";
    return worst;
  }));

  out.push_back(run_check("oracle-equivalence", 1e-12, [&](std::string& detail) {
    std::mt19937_64 rng(opts.seed + 1);
    double worst = 0.0;
    for (int trial = 0; trial < n; ++trial) {
      const XState x = random_xstate(rng);
      const DensityMatrix4 rho = to_dense(x);
      for (ChannelKind k : kAllChannels) {
        for (int i = 1; i <= 10; ++i) {
          const double t = 0.5 * i;
          const Mat4 closed = to_dense(propagate_x(x, unit_rates(k), t)).matrix();
          const Mat4 kraus = apply(rho, kraus_for(unit_rates(k), t)).matrix();
          worst = std::max(worst, inf_norm_diff(closed, kraus));
        }
      }
    }
    detail = std::to_string(n) + " states x 3 channels x 10 times";
    return worst;
  }));

  out.push_back(run_check("concurrence-cross-method", 1e-10, [&](std::string& detail) {
    std::mt19937_64 rng(opts.seed + 2);
    double worst = 0.0;
    for (int trial = 0; trial < n; ++trial) {
      const XState x = random_xstate(rng);
      worst = std::max(worst, std::abs(concurrence_general(to_dense(x)) - concurrence_x(x)));
    }
    detail = std::to_string(n) + " random X states";
    return worst;
  }));

  out.push_back(run_check("semigroup", 1e-12, [&](std::string& detail) {
    std::mt19937_64 rng(opts.seed + 3);
    std::uniform_real_distribution<double> tau(0.0, 3.0);
    double worst = 0.0;
    const int trials = std::max(1, n / 10);
    for (ChannelKind k : kAllChannels) {
      const ChannelSpec spec = unit_rates(k);
      for (int trial = 0; trial < trials; ++trial) {
        const XState x = random_xstate(rng);
        const double t1 = tau(rng);
        const double t2 = tau(rng);
        const Mat4 two_step = to_dense(propagate_x(propagate_x(x, spec, t1), spec, t2)).matrix();
        const Mat4 one_step = to_dense(propagate_x(x, spec, t1 + t2)).matrix();
        worst = std::max(worst, inf_norm_diff(two_step, one_step));
      }
    }
    detail = "3 channels x " + std::to_string(trials) + " random (state, t1, t2)";
    return worst;
  }));

  out.push_back(run_check("record-invariants", 1e-10, [&](std::string& detail) {
    double worst = 0.0;
    std::size_t count = 0;
    for (ChannelKind k : kAllChannels) {
      SweepSpec spec;
      spec.channel = unit_rates(k);
      spec.tau = Range{0.0, default_tau_max(k), 201};
      for (const RunRecord& r : sweep(spec)) {
        worst = std::max(worst, std::abs(r.a + r.b + r.c + r.d - 1.0));
        if (r.concurrence < 0.0 || r.concurrence > 1.0) worst = std::max(worst, 1.0);
        ++count;
      }
    }
    detail = std::to_string(count) + " records from the default werner-psi sweeps";
    return worst;
  }));

  out.push_back(run_check("werner-initial-concurrence", 1e-12, [&](std::string& detail) {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double f = 0.5 + 0.5 * i / 49.0;
      worst = std::max(worst, std::abs(concurrence_x(werner_psi(Fidelity(f))) - (2.0 * f - 1.0)));
    }
    detail = "C(0) = 2F - 1 on 50 points of [1/2, 1]";
    return worst;
  }));

  return out;
}

}  // namespace xesd
