#include "xesd/experiments.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <string>
#include <thread>

#include "xesd/errors.hpp"

namespace xesd {

std::string_view to_string(StateFamily family) {
  switch (family) {
    case StateFamily::WernerPsi:
      return "werner-psi";
    case StateFamily::WernerPhi:
      return "werner-phi";
    case StateFamily::CustomX:
      return "custom-x";
  }
  return "unknown";
}

StateFamily parse_state_family(std::string_view name) {
  if (name == "werner-psi") return StateFamily::WernerPsi;
  if (name == "werner-phi") return StateFamily::WernerPhi;
  if (name == "custom-x") return StateFamily::CustomX;
  throw DomainError("unknown family '" + std::string(name) + "' (expected werner-psi, werner-phi or custom-x)");
}

double Range::at(int i) const {
  if (i == steps - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

void check_range(const Range& r, std::string_view what) {
  if (!(std::isfinite(r.min) && std::isfinite(r.max) && r.min <= r.max) || r.steps < 2) {
    std::ostringstream os;
    os << what << " range invalid: [" << r.min << ", " << r.max << "] with " << r.steps
       << " steps (need min <= max and steps >= 2)";
    throw DomainError(os.str());
  }
}

RunRecord make_record(double tau, double fidelity, const XState& x) {
  return RunRecord{tau, fidelity, concurrence_x(x), x.a(), x.b(), x.c(), x.d(), std::abs(x.z()), std::abs(x.w())};
}

double singlet_fidelity(const XState& x) { return 0.5 * (x.b() + x.c()) - x.z().real(); }

XState StateChoice::initial() const {
  switch (family) {
    case StateFamily::WernerPsi:
      return werner_psi(Fidelity(fidelity));
    case StateFamily::WernerPhi:
      return werner_phi(Fidelity(fidelity));
    case StateFamily::CustomX:
      if (!custom) throw DomainError("custom-x family needs explicit X parameters");
      return *custom;
  }
  throw DomainError("unknown state family");
}

double StateChoice::reported_fidelity() const {
  return family == StateFamily::CustomX ? singlet_fidelity(initial()) : fidelity;
}

namespace {

std::vector<RunRecord> evolve_row(const ChannelSpec& channel, const XState& x0, double reported_f, const Range& tau) {
  const double rate = channel.reference_rate();
  std::vector<RunRecord> out;
  out.reserve(static_cast<std::size_t>(tau.steps));
  for (int i = 0; i < tau.steps; ++i) {
    const double t_tau = tau.at(i);
    out.push_back(make_record(t_tau, reported_f, propagate_x(x0, channel, t_tau / rate)));
  }
  return out;
}

EsdResult to_tau(const EsdResult& r, double rate) {
  if (const auto* d = std::get_if<DiesAt>(&r)) return DiesAt{d->t * rate};
  if (const auto* a = std::get_if<AliveAtHorizon>(&r)) return AliveAtHorizon{a->horizon * rate, a->c_final};
  return r;
}

bool equal_rates(const ChannelSpec& c) { return c.rate_a == c.rate_b && c.rate_a > 0.0; }

}  // namespace

std::vector<RunRecord> evolve(const EvolveSpec& spec) {
  check_spec(spec.channel);
  if (!(std::isfinite(spec.tau_max) && spec.tau_max >= 0.0)) throw DomainError("tau-max must be non-negative");
  const Range tau{0.0, spec.tau_max, spec.steps};
  check_range(tau, "tau");
  return evolve_row(spec.channel, spec.state.initial(), spec.state.reported_fidelity(), tau);
}

void check_sweep(const SweepSpec& spec) {
  check_spec(spec.channel);
  check_range(spec.tau, "tau");
  if (spec.tau.min < 0.0) throw DomainError("tau range must start at or after 0");
  if (spec.family == StateFamily::CustomX) {
    if (!spec.custom) throw DomainError("custom-x sweep needs explicit X parameters");
    return;
  }
  check_range(spec.fidelity, "fidelity");
  Fidelity(spec.fidelity.min);
  Fidelity(spec.fidelity.max);
}

std::vector<RunRecord> sweep(const SweepSpec& spec, unsigned threads) {
  check_sweep(spec);

  std::vector<StateChoice> rows;
  if (spec.family == StateFamily::CustomX) {
    rows.push_back(StateChoice{StateFamily::CustomX, 0.0, spec.custom});
  } else {
    for (int i = 0; i < spec.fidelity.steps; ++i) rows.push_back(StateChoice{spec.family, spec.fidelity.at(i), {}});
  }

  std::vector<std::vector<RunRecord>> results(rows.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t r = next++; r < rows.size(); r = next++) {
      results[r] = evolve_row(spec.channel, rows[r].initial(), rows[r].reported_fidelity(), spec.tau);
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  }

  std::vector<RunRecord> out;
  out.reserve(rows.size() * static_cast<std::size_t>(spec.tau.steps));
  for (auto& row : results) out.insert(out.end(), row.begin(), row.end());
  return out;
}

double default_tau_max(ChannelKind kind) { return kind == ChannelKind::Phase ? 5.0 : 10.0; }

EsdReport run_esd(const EsdQuery& q) {
  check_spec(q.channel);
  const double rate = q.channel.reference_rate();
  const XState x0 = q.state.initial();

  EsdReport report{std::nullopt, InitiallySeparable{}, std::nullopt, q.horizon_tau};
  report.numeric = to_tau(esd_time_numeric(x0, q.channel, q.horizon_tau / rate, q.tol_tau / rate), rate);

  const double f = q.state.fidelity;
  if (equal_rates(q.channel)) {
    if (q.channel.kind == ChannelKind::Phase && q.state.family == StateFamily::WernerPsi) {
      report.analytic = to_tau(esd_time_phase_werner(f, rate, q.horizon_tau / rate), rate);
    } else if (q.channel.kind == ChannelKind::Amplitude && q.state.family == StateFamily::WernerPhi && f > 0.5 &&
               f < 1.0) {
      report.analytic = to_tau(esd_time_amplitude_phi_werner(f, rate), rate);
    }
  }

  if (report.analytic) {
    const auto* a = std::get_if<DiesAt>(&*report.analytic);
    const auto* n = std::get_if<DiesAt>(&report.numeric);
    if (a && n) report.difference = std::abs(a->t - n->t);
  }
  return report;
}

CriticalFidelityReport run_critical_fidelity(double horizon_tau) {
  return CriticalFidelityReport{critical_fidelity_amplitude(), critical_fidelity_numeric(horizon_tau), horizon_tau};
}

LocalOpsDemo run_demo_local_ops(double fidelity, double horizon_tau, double tol_tau) {
  if (!(fidelity > 0.5 && fidelity <= 1.0)) {
    std::ostringstream os;
    os << "demo-local-ops needs F in (1/2, 1], got " << fidelity;
    throw DomainError(os.str());
  }
  const Fidelity f(fidelity);
  const XState psi = werner_psi(f);
  const XState phi = werner_phi(f);
  const ChannelSpec amp{ChannelKind::Amplitude, 1.0, 1.0};

  LocalOpsDemo demo;
  demo.fidelity = fidelity;
  demo.horizon_tau = horizon_tau;
  demo.c0_psi = concurrence_x(psi);
  demo.c0_phi = concurrence_x(phi);
  const DensityMatrix4 flipped = apply_local_unitary(to_dense(psi), flip_a_unitary());
  demo.transform_residual = inf_norm_diff(flipped.matrix(), to_dense(phi).matrix());
  demo.fate_psi = esd_time_numeric(psi, amp, horizon_tau, tol_tau);
  demo.fate_phi = esd_time_numeric(phi, amp, horizon_tau, tol_tau);
  if (fidelity < 1.0) demo.phi_analytic_tau = std::get<DiesAt>(esd_time_amplitude_phi_werner(fidelity, 1.0)).t;
  return demo;
}

}  // namespace xesd
