// xesd: evolve two-qubit X states under local Markovian noise and locate
// entanglement sudden death.
//
// Exit status: 0 success, 2 usage or domain error, 3 numerical failure,
// 4 verification failure.

#include <cstdio>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "xesd/channels.hpp"
#include "xesd/entanglement.hpp"
#include "xesd/errors.hpp"
#include "xesd/experiments.hpp"
#include "xesd/records_io.hpp"
#include "xesd/states.hpp"
#include "xesd/verify.hpp"

namespace {

using namespace xesd;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerify = 4;

struct Options {
  std::string channel = "phase";
  std::string family = "werner-psi";
  double fidelity = 1.0;
  std::string x_params;
  double rate_a = 1.0;
  double rate_b = 1.0;
  std::optional<double> tau_max;
  int steps = 201;
  double fidelity_min = 0.25;
  double fidelity_max = 1.0;
  int fidelity_steps = 101;
  double horizon = kDefaultHorizonTau;
  double tol = kDefaultEsdTol;
  std::string out;
  std::string format = "csv";
  unsigned threads = 1;
  std::uint64_t seed = VerifyOptions{}.seed;
  int random_states = VerifyOptions{}.random_states;
  double fault_scale = 1.0;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ChannelSpec channel_of(const Options& o) {
  ChannelSpec spec{parse_channel_kind(o.channel), o.rate_a, o.rate_b};
  check_spec(spec);
  return spec;
}

XState parse_x_params(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw DomainError("--x-params: cannot parse '" + item + "' as a number");
    }
  }
  if (v.size() != 8) throw DomainError("--x-params needs 8 values: a,b,c,d,re_z,im_z,re_w,im_w");
  return XState(v[0], v[1], v[2], v[3], C64{v[4], v[5]}, C64{v[6], v[7]});
}

StateChoice state_of(const Options& o) {
  StateChoice s{parse_state_family(o.family), o.fidelity, std::nullopt};
  if (s.family == StateFamily::CustomX) {
    if (o.x_params.empty()) throw DomainError("--family custom-x requires --x-params");
    s.custom = parse_x_params(o.x_params);
  }
  return s;
}

void check_format(const Options& o) {
  if (o.format != "csv" && o.format != "json") throw DomainError("--format must be csv or json");
}

// Writes to --out, or stdout when no path is given.
void emit(const Options& o, const std::function<void(std::ostream&)>& body) {
  if (o.out.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw IoError("cannot open output file '" + o.out + "'");
  body(file);
  file.flush();
  if (!file) throw IoError("failed writing output file '" + o.out + "'");
}

void emit_records(const Options& o, const std::vector<RunRecord>& records, const RunMetadata& meta) {
  emit(o, [&](std::ostream& os) {
    if (o.format == "json")
      write_json(os, records, meta);
    else
      write_csv(os, records);
  });
}

std::string describe(const EsdResult& r) {
  if (const auto* d = std::get_if<DiesAt>(&r)) return "dies at tau = " + format_number(d->t);
  if (const auto* a = std::get_if<AliveAtHorizon>(&r))
    return "alive at horizon tau = " + format_number(a->horizon) + " (C = " + format_number(a->c_final) + ")";
  return "initially separable";
}

nlohmann::ordered_json to_json(const EsdResult& r) {
  if (const auto* d = std::get_if<DiesAt>(&r)) return {{"status", "dies"}, {"tau", d->t}};
  if (const auto* a = std::get_if<AliveAtHorizon>(&r))
    return {{"status", "alive-at-horizon"}, {"horizon", a->horizon}, {"c_final", a->c_final}};
  return {{"status", "initially-separable"}};
}

int cmd_evolve(const Options& o) {
  check_format(o);
  EvolveSpec spec;
  spec.channel = channel_of(o);
  spec.state = state_of(o);
  spec.tau_max = o.tau_max.value_or(default_tau_max(spec.channel.kind));
  spec.steps = o.steps;
  const auto records = evolve(spec);
  RunMetadata meta{"evolve", spec.channel, spec.state.family, std::nullopt, Range{0.0, spec.tau_max, spec.steps}};
  emit_records(o, records, meta);
  return kExitOk;
}

int cmd_sweep(const Options& o) {
  check_format(o);
  SweepSpec spec;
  spec.channel = channel_of(o);
  const StateChoice state = state_of(o);
  spec.family = state.family;
  spec.custom = state.custom;
  spec.fidelity = Range{o.fidelity_min, o.fidelity_max, o.fidelity_steps};
  spec.tau = Range{0.0, o.tau_max.value_or(default_tau_max(spec.channel.kind)), o.steps};
  const auto records = sweep(spec, o.threads);
  std::optional<Range> fgrid;
  if (spec.family != StateFamily::CustomX) fgrid = spec.fidelity;
  emit_records(o, records, RunMetadata{"sweep", spec.channel, spec.family, fgrid, spec.tau});
  return kExitOk;
}

int cmd_esd(const Options& o) {
  check_format(o);
  EsdQuery q;
  q.channel = channel_of(o);
  q.state = state_of(o);
  q.horizon_tau = o.horizon;
  q.tol_tau = o.tol;
  const EsdReport r = run_esd(q);
  emit(o, [&](std::ostream& os) {
    if (o.format == "json") {
      nlohmann::ordered_json doc;
      doc["channel"] = o.channel;
      doc["family"] = o.family;
      doc["fidelity"] = q.state.reported_fidelity();
      doc["horizon"] = r.horizon_tau;
      doc["analytic"] = r.analytic ? to_json(*r.analytic) : nlohmann::ordered_json(nullptr);
      doc["numeric"] = to_json(r.numeric);
      doc["difference"] = r.difference ? nlohmann::ordered_json(*r.difference) : nlohmann::ordered_json(nullptr);
      os << doc.dump(2) << '\n';
      return;
    }
    os << "channel: " << o.channel << "\n"
       << "family: " << o.family << "\n"
       << "fidelity: " << format_number(q.state.reported_fidelity()) << "\n"
       << "horizon: tau = " << format_number(r.horizon_tau) << "\n"
       << "analytic: " << (r.analytic ? describe(*r.analytic) : "not available") << "\n"
       << "numeric: " << describe(r.numeric) << "\n";
    if (r.difference) os << "difference: " << format_number(*r.difference) << "\n";
  });
  return kExitOk;
}

int cmd_critical_fidelity(const Options& o) {
  check_format(o);
  const CriticalFidelityReport r = run_critical_fidelity(o.horizon);
  emit(o, [&](std::ostream& os) {
    if (o.format == "json") {
      nlohmann::ordered_json doc{{"analytic", r.analytic},
                                 {"numeric", r.numeric},
                                 {"gap", r.gap()},
                                 {"horizon", r.horizon_tau},
                                 {"channel", "amplitude"},
                                 {"family", "werner-psi"}};
      os << doc.dump(2) << '\n';
      return;
    }
    os << "analytic: " << format_number(r.analytic) << "  ((3*sqrt(5) - 1)/8)\n"
       << "numeric: " << format_number(r.numeric) << "  (Dies/Alive boundary, werner-psi, amplitude noise)\n"
       << "gap: " << format_number(r.gap()) << "\n"
       << "horizon: tau = " << format_number(r.horizon_tau) << "\n";
  });
  return kExitOk;
}

int cmd_demo_local_ops(const Options& o) {
  check_format(o);
  const LocalOpsDemo d = run_demo_local_ops(o.fidelity, o.horizon, o.tol);
  emit(o, [&](std::ostream& os) {
    if (o.format == "json") {
      nlohmann::ordered_json doc{{"fidelity", d.fidelity},
                                 {"transform", "U = i sigma_x (A) x I (B)"},
                                 {"transform_residual", d.transform_residual},
                                 {"c0_psi", d.c0_psi},
                                 {"c0_phi", d.c0_phi},
                                 {"fate_psi", to_json(d.fate_psi)},
                                 {"fate_phi", to_json(d.fate_phi)},
                                 {"horizon", d.horizon_tau}};
      doc["phi_analytic_tau"] =
          d.phi_analytic_tau ? nlohmann::ordered_json(*d.phi_analytic_tau) : nlohmann::ordered_json(nullptr);
      os << doc.dump(2) << '\n';
      return;
    }
    os << "fidelity: " << format_number(d.fidelity) << "\n"
       << "transform: U = i sigma_x (qubit A) x I (qubit B), ||U rho_psi U^H - rho_phi||_inf = "
       << format_number(d.transform_residual) << "\n"
       << "initial concurrence: werner-psi " << format_number(d.c0_psi) << ", werner-phi "
       << format_number(d.c0_phi) << "\n"
       << "amplitude noise, werner-psi: " << describe(d.fate_psi) << "\n"
       << "amplitude noise, werner-phi: " << describe(d.fate_phi);
    if (d.phi_analytic_tau) os << " (analytic " << format_number(*d.phi_analytic_tau) << ")";
    os << "\n";
  });
  return kExitOk;
}

int cmd_verify(const Options& o) {
  VerifyOptions vo;
  vo.seed = o.seed;
  vo.random_states = o.random_states;
  vo.fault_scale = o.fault_scale;
  const auto results = run_verification(vo);
  bool all = true;
  emit(o, [&](std::ostream& os) {
    for (const CheckResult& r : results) {
      all = all && r.passed;
      os << (r.passed ? "PASS " : "FAIL ") << r.name << "  max residual " << format_number(r.max_residual)
         << " (tol " << format_number(r.tolerance) << ")  " << r.detail << "\n";
    }
    os << (all ? "all checks passed" : "verification FAILED") << "\n";
  });
  return all ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement sudden death of two-qubit X states under local Markovian noise"};
  app.set_version_flag("--version", std::string(XESD_VERSION));
  app.set_config("--config", "", "Flat key=value file; keys are flag names, flags override the file");
  app.require_subcommand(1);

  Options o;
  app.add_option("--channel", o.channel, "phase | amplitude | equalizing")->capture_default_str();
  app.add_option("--family", o.family, "werner-psi | werner-phi | custom-x")->capture_default_str();
  app.add_option("--fidelity", o.fidelity, "Werner fidelity F")->capture_default_str();
  app.add_option("--x-params", o.x_params, "custom-x state: a,b,c,d,re_z,im_z,re_w,im_w");
  app.add_option("--rate-a", o.rate_a, "decay rate of qubit A")->capture_default_str();
  app.add_option("--rate-b", o.rate_b, "decay rate of qubit B")->capture_default_str();
  app.add_option("--tau-max", o.tau_max, "last time point, tau = rate * t (default 5 phase, 10 otherwise)");
  app.add_option("--steps", o.steps, "number of time points")->capture_default_str();
  app.add_option("--fidelity-min", o.fidelity_min, "sweep: first fidelity")->capture_default_str();
  app.add_option("--fidelity-max", o.fidelity_max, "sweep: last fidelity")->capture_default_str();
  app.add_option("--fidelity-steps", o.fidelity_steps, "sweep: number of fidelities")->capture_default_str();
  app.add_option("--horizon", o.horizon, "sudden-death search horizon in tau")->capture_default_str();
  app.add_option("--tol", o.tol, "bisection tolerance in tau")->capture_default_str();
  app.add_option("--out", o.out, "output path (default stdout)");
  app.add_option("--format", o.format, "csv | json")->capture_default_str();
  app.add_option("--threads", o.threads, "sweep worker threads")->capture_default_str();
  app.add_option("--seed", o.seed, "verify: random seed")->capture_default_str();
  app.add_option("--random-states", o.random_states, "verify: random states per check")->capture_default_str();
  app.add_option("--inject-fault", o.fault_scale)->group("");

  struct Sub {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const std::vector<Sub> subs{
      {"evolve", "one state, one channel: records over the tau grid", cmd_evolve},
      {"sweep", "(F, tau) concurrence grid for a Werner family", cmd_sweep},
      {"esd", "sudden-death time, analytic where known and numeric always", cmd_esd},
      {"critical-fidelity", "amplitude-noise critical Werner fidelity", cmd_critical_fidelity},
      {"demo-local-ops", "rho_W vs. its local-unitary image under amplitude noise", cmd_demo_local_ops},
      {"verify", "run the invariant checks", cmd_verify},
  };
  for (const Sub& s : subs) app.add_subcommand(s.name, s.help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    for (const Sub& s : subs) {
      if (app.got_subcommand(s.name)) return s.run(o);
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
