#include "xesd/channels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "xesd/errors.hpp"

namespace xesd {

DampingFactors damping(double rate, double t) {
  if (!(std::isfinite(rate) && rate >= 0.0) || !(std::isfinite(t) && t >= 0.0)) {
    std::ostringstream os;
    os << "damping: rate and time must be finite and non-negative (rate=" << rate << ", t=" << t << ")";
    throw DomainError(os.str());
  }
  const double x = rate * t;
  // omega^2 = 1 - exp(-x), via expm1 to keep relative accuracy at small x
  return DampingFactors(std::exp(-0.5 * x), std::sqrt(-std::expm1(-x)));
}

DampingFactors DampingFactors::from_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("damping factor gamma outside [0, 1]");
  return DampingFactors(gamma, std::sqrt((1.0 - gamma) * (1.0 + gamma)));
}

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::Phase:
      return "phase";
    case ChannelKind::Amplitude:
      return "amplitude";
    case ChannelKind::Equalizing:
      return "equalizing";
  }
  return "unknown";
}

ChannelKind parse_channel_kind(std::string_view name) {
  if (name == "phase") return ChannelKind::Phase;
  if (name == "amplitude") return ChannelKind::Amplitude;
  if (name == "equalizing") return ChannelKind::Equalizing;
  throw DomainError("unknown channel '" + std::string(name) + "' (expected phase, amplitude or equalizing)");
}

double ChannelSpec::reference_rate() const {
  const double r = std::max(rate_a, rate_b);
  return r > 0.0 ? r : 1.0;
}

void check_spec(const ChannelSpec& spec) {
  const auto bad = [](double r) { return !(std::isfinite(r) && r >= 0.0); };
  if (bad(spec.rate_a) || bad(spec.rate_b)) {
    std::ostringstream os;
    os << "channel rates must be finite and non-negative (rate_a=" << spec.rate_a << ", rate_b=" << spec.rate_b
       << ")";
    throw DomainError(os.str());
  }
}

double check_cptp(const KrausSet& k) {
  Mat4 sum;
  for (const Mat4& op : k.ops) sum += dagger(op) * op;
  return inf_norm_diff(sum, Mat4::identity());
}

namespace {

Mat2 keep(const DampingFactors& d) { return Mat2::diagonal({d.gamma(), 1.0}); }
Mat2 dephase(const DampingFactors& d) { return Mat2::diagonal({d.omega(), 0.0}); }
// |-><+| scaled by omega: sends the first basis vector to the second.
Mat2 lower(const DampingFactors& d) { return Mat2{0.0, 0.0, d.omega(), 0.0}; }

}  // namespace

KrausSet kraus_phase(const DampingFactors& da, const DampingFactors& db) {
  return product_channel({keep(da), dephase(da)}, {keep(db), dephase(db)});
}

KrausSet kraus_amplitude(const DampingFactors& da, const DampingFactors& db) {
  return product_channel({keep(da), lower(da)}, {keep(db), lower(db)});
}

std::vector<Mat2> kraus_equalizing_1q(const DampingFactors& d) {
  const double s = 1.0 / std::numbers::sqrt2;
  const double g = d.gamma();
  const double w = d.omega();
  return {
      s * Mat2{g, 0.0, 0.0, 1.0},
      s * Mat2{0.0, 0.0, w, 0.0},
      s * Mat2{1.0, 0.0, 0.0, g},
      s * Mat2{0.0, w, 0.0, 0.0},
  };
}

KrausSet product_channel(const std::vector<Mat2>& ops_a, const std::vector<Mat2>& ops_b) {
  KrausSet out;
  out.ops.reserve(ops_a.size() * ops_b.size());
  for (const Mat2& a : ops_a)
    for (const Mat2& b : ops_b) out.ops.push_back(kron(a, b));
  return out;
}

KrausSet kraus_for(const ChannelSpec& spec, double t) {
  check_spec(spec);
  const DampingFactors da = damping(spec.rate_a, t);
  const DampingFactors db = damping(spec.rate_b, t);
  switch (spec.kind) {
    case ChannelKind::Phase:
      return kraus_phase(da, db);
    case ChannelKind::Amplitude:
      return kraus_amplitude(da, db);
    case ChannelKind::Equalizing:
      return product_channel(kraus_equalizing_1q(da), kraus_equalizing_1q(db));
  }
  throw DomainError("kraus_for: unknown channel kind");
}

DensityMatrix4 apply(const DensityMatrix4& rho, const KrausSet& k) {
  const double residual = check_cptp(k);
  if (!(residual <= kCompletenessTol)) {
    std::ostringstream os;
    os << "Kraus set is not trace preserving: ||sum K^H K - I|| = " << residual;
    throw DomainError(os.str());
  }
  Mat4 out;
  for (const Mat4& op : k.ops) out += op * rho.matrix() * dagger(op);
  return DensityMatrix4::from_matrix(out);
}

XState propagate_x(const XState& x, const ChannelSpec& spec, double t) {
  check_spec(spec);
  const DampingFactors da = damping(spec.rate_a, t);
  const DampingFactors db = damping(spec.rate_b, t);

  if (spec.kind == ChannelKind::Phase) {
    const double f = da.gamma() * db.gamma();
    return XState(x.a(), x.b(), x.c(), x.d(), f * x.z(), f * x.w());
  }

  if (spec.rate_a != spec.rate_b) {
    return from_dense(apply(to_dense(x), kraus_for(spec, t)));
  }

  const double g2 = da.gamma() * da.gamma();
  const double w2 = da.omega() * da.omega();

  if (spec.kind == ChannelKind::Amplitude) {
    const double a = g2 * g2 * x.a();
    const double b = g2 * (x.b() + w2 * x.a());
    const double c = g2 * (x.c() + w2 * x.a());
    const double d = 1.0 - a - b - c;
    return XState(a, b, c, d, g2 * x.z(), g2 * x.w());
  }

  // Equalizing, equal rates.
  const double g4 = g2 * g2;
  const double w4 = w2 * w2;
  const double gw = g2 * w2;
  const double bc = x.b() + x.c();
  const double ad = x.a() + x.d();
  const double a = (g4 * x.a() + x.a() + w2 * bc + w4 * x.d() + 2.0 * g2 * x.a() + gw * bc) / 4.0;
  const double b = (2.0 * g2 * x.b() + gw * ad + x.b() + g4 * x.b() + w2 * ad + w4 * x.c()) / 4.0;
  const double c = (2.0 * g2 * x.c() + gw * ad + x.c() + w2 * ad + w4 * x.b() + g4 * x.c()) / 4.0;
  const double d = (x.d() + w2 * bc + w4 * x.a() + g4 * x.d() + 2.0 * g2 * x.d() + gw * bc) / 4.0;
  return XState(a, b, c, d, g2 * x.z(), g2 * x.w());
}

double x_form_residual(const Mat4& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j && i + j != 3) r = std::max(r, std::abs(m(i, j)));
  return r;
}

}  // namespace xesd
