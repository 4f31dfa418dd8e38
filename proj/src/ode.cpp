#include "sepflow/ode.hpp"

#include <algorithm>
#include <cmath>

namespace sepflow {

bool BoundaryCoefficients::curvature_consistent(Real rel_tol) const {
  if (!(delta > 0.0)) return true;  // no geometry attached
  ManifoldSpec m{kind, a};
  const Real want = boundary_curvature_k(m, ObstacleSpec{delta});
  return std::abs(k - want) <= rel_tol * std::max(1.0, std::abs(want));
}

Real rhs_plain(const BoundaryCoefficients& c) {
  return -c.k * c.k * c.alpha1 + c.alpha3 + 2.0 * c.k * c.alpha2 + 2.0 * c.eta;
}

Real rhs_coriolis(const BoundaryCoefficients& c) {
  if (c.beta != 0.0 && c.kind != Manifold::sphere)
    throw PreconditionError("Coriolis parameter requires the sphere");
  // Written as the no-slip right-hand side plus the inflow/rotation terms so
  // the lambda0 = beta = 0 reduction is bit-exact.
  Real out = rhs_plain(c);
  out += c.lambda0 * (-(c.k * c.alpha1) - c.alpha2);
  const Real ad = c.a * c.delta;
  out += c.lambda0 * c.beta * (c.a * std::sin(ad) - c.k * std::cos(ad));
  return out;
}

CoefficientSchedule CoefficientSchedule::constant(Real alpha2, Real alpha3, Real eta) {
  CoefficientSchedule s;
  s.kind_ = Kind::constant;
  s.constant_ = {alpha2, alpha3, eta};
  return s;
}

CoefficientSchedule CoefficientSchedule::polynomial(std::vector<Real> alpha2,
                                                    std::vector<Real> alpha3,
                                                    std::vector<Real> eta) {
  CoefficientSchedule s;
  s.kind_ = Kind::polynomial;
  s.c2_ = std::move(alpha2);
  s.c3_ = std::move(alpha3);
  s.ce_ = std::move(eta);
  return s;
}

CoefficientSchedule CoefficientSchedule::sinusoid(Sinusoid alpha2, Sinusoid alpha3, Sinusoid eta) {
  CoefficientSchedule s;
  s.kind_ = Kind::sinusoid;
  s.s2_ = alpha2;
  s.s3_ = alpha3;
  s.se_ = eta;
  return s;
}

CoefficientSchedule CoefficientSchedule::table(std::vector<Real> t, std::vector<Real> alpha2,
                                               std::vector<Real> alpha3, std::vector<Real> eta) {
  if (t.size() < 2) throw PreconditionError("tabulated schedule needs at least two samples");
  if (t.size() != alpha2.size() || t.size() != alpha3.size() || t.size() != eta.size())
    throw PreconditionError("tabulated schedule columns must have equal length");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw PreconditionError("tabulated schedule times must increase strictly");
  CoefficientSchedule s;
  s.kind_ = Kind::table;
  s.t_ = std::move(t);
  s.c2_ = std::move(alpha2);
  s.c3_ = std::move(alpha3);
  s.ce_ = std::move(eta);
  return s;
}

namespace {

Real eval_poly(const std::vector<Real>& c, Real t) {
  Real acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Real eval_sin(const CoefficientSchedule::Sinusoid& s, Real t) {
  return s.offset + s.amplitude * std::sin(s.omega * t + s.phase);
}

Real interp(const std::vector<Real>& t, const std::vector<Real>& y, Real x) {
  auto hi = std::upper_bound(t.begin(), t.end(), x);
  if (hi == t.begin()) ++hi;
  if (hi == t.end()) --hi;
  const auto i = static_cast<std::size_t>(hi - t.begin());
  const Real w = (x - t[i - 1]) / (t[i] - t[i - 1]);
  return y[i - 1] + w * (y[i] - y[i - 1]);
}

}  // namespace

CoefficientSchedule::Sample CoefficientSchedule::operator()(Real t) const {
  switch (kind_) {
    case Kind::constant:
      return constant_;
    case Kind::polynomial:
      return {eval_poly(c2_, t), eval_poly(c3_, t), eval_poly(ce_, t)};
    case Kind::sinusoid:
      return {eval_sin(s2_, t), eval_sin(s3_, t), eval_sin(se_, t)};
    case Kind::table:
      if (t < t_.front() - 1e-12 || t > t_.back() + 1e-12)
        throw PreconditionError("schedule undefined at requested time");
      return {interp(t_, c2_, t), interp(t_, c3_, t), interp(t_, ce_, t)};
  }
  throw std::logic_error("schedule: bad kind");
}

bool CoefficientSchedule::covers(Real t0, Real t1) const {
  if (kind_ != Kind::table) return true;
  return t_.front() <= t0 + 1e-12 && t_.back() >= t1 - 1e-12;
}

const std::vector<Real>& CoefficientSchedule::poly_or_table(int component) const {
  switch (component) {
    case 0: return c2_;
    case 1: return c3_;
    default: return ce_;
  }
}

const CoefficientSchedule::Sinusoid& CoefficientSchedule::sinusoid_component(int component) const {
  switch (component) {
    case 0: return s2_;
    case 1: return s3_;
    default: return se_;
  }
}

OdeGeometry OdeGeometry::from_specs(const ManifoldSpec& m, const ObstacleSpec& obs, Real lambda0,
                                    Real beta) {
  OdeGeometry g;
  g.k = boundary_curvature_k(m, obs);
  g.a = m.a;
  g.delta = obs.delta;
  g.lambda0 = lambda0;
  g.beta = beta;
  g.kind = m.kind;
  return g;
}

BoundaryCoefficients make_coefficients(const OdeGeometry& g, Real alpha1,
                                       const CoefficientSchedule::Sample& s) {
  BoundaryCoefficients c;
  c.k = g.k;
  c.alpha1 = alpha1;
  c.alpha2 = s.alpha2;
  c.alpha3 = s.alpha3;
  c.eta = s.eta;
  c.lambda0 = g.lambda0;
  c.beta = g.beta;
  c.a = g.a;
  c.delta = g.delta;
  c.kind = g.kind;
  return c;
}

OdeTrace integrate(OdeMode mode, Real alpha1_0, const CoefficientSchedule& sched,
                   const OdeGeometry& geom, Real t_end, Real dt) {
  if (!(alpha1_0 > 0.0)) throw PreconditionError("integrate: alpha1(0) must be positive");
  if (!(dt > 0.0) || !(t_end > 0.0)) throw PreconditionError("integrate: dt and t_end must be positive");
  if (!sched.covers(0.0, t_end)) throw PreconditionError("integrate: schedule undefined on the span");
  const Real rate = mode == OdeMode::coriolis
                        ? std::max(geom.k * geom.k, std::abs(geom.k * (geom.k + geom.lambda0)))
                        : geom.k * geom.k;
  if (!(rate * dt < 1.0))
    throw PreconditionError("integrate: step too large for decay rate (need k^2*dt < 1)");

  const auto f = [&](Real t, Real a1) {
    const BoundaryCoefficients c = make_coefficients(geom, a1, sched(t));
    return mode == OdeMode::coriolis ? rhs_coriolis(c) : rhs_plain(c);
  };

  OdeTrace tr;
  tr.mode = mode;
  Real t = 0.0;
  Real y = alpha1_0;
  tr.times.push_back(t);
  tr.alpha1.push_back(y);
  tr.rhs.push_back(f(t, y));

  std::size_t step = 0;
  while (t < t_end - 1e-15 * std::max(1.0, t_end)) {
    const Real h = std::min(dt, t_end - t);
    const Real k1 = f(t, y);
    const Real k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    const Real k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    const Real k4 = f(t + h, y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
    ++step;
    if (!std::isfinite(y))
      throw NumericError("integrate: non-finite value at step " + std::to_string(step));
    tr.times.push_back(t);
    tr.alpha1.push_back(y);
    tr.rhs.push_back(f(t, y));
  }
  return tr;
}

std::optional<Real> detect_separation(const OdeTrace& trace) {
  if (trace.size() == 0) throw PreconditionError("detect_separation: empty trace");
  if (!(trace.alpha1.front() > 0.0))
    throw PreconditionError("detect_separation: trace must start with alpha1 > 0");
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const Real a = trace.alpha1[i];
    if (a == 0.0) return trace.times[i];
    if (a < 0.0) {
      const Real a0 = trace.alpha1[i - 1];
      const Real t0 = trace.times[i - 1];
      const Real t1 = trace.times[i];
      return t0 + (t1 - t0) * a0 / (a0 - a);
    }
  }
  return std::nullopt;
}

Real asymptotic_fixed_point(const OdeGeometry& g, const CoefficientSchedule::Sample& limit) {
  const Real denom = g.k * (g.k + g.lambda0);
  if (!(denom > 0.0))
    throw PreconditionError("asymptotic_fixed_point: requires k(k+lambda0) > 0");
  const Real ad = g.a * g.delta;
  const Real forcing = g.lambda0 * g.beta * (g.a * std::sin(ad) - g.k * std::cos(ad));
  return ((2.0 * g.k - g.lambda0) * limit.alpha2 + limit.alpha3 + 2.0 * limit.eta + forcing) / denom;
}

StreamlineClass classify_streamlines(Real eta, Real tol) {
  if (eta < -tol) return StreamlineClass::convexing;
  if (eta > tol) return StreamlineClass::concaving;
  return StreamlineClass::parallel;
}

ProfileClass classify_profile(const BoundaryCoefficients& c, Real rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw PreconditionError("classify_profile: rho must lie in (0,1)");
  const Real k = c.k;
  if (c.alpha1 > 0.0 && c.alpha2 < 0.0 && -k * k * c.alpha1 + 2.0 * k * c.alpha2 < 0.0) {
    const Real dominant = std::max(k * k * std::abs(c.alpha1), 2.0 * k * std::abs(c.alpha2));
    if (std::abs(c.alpha3) <= rho * dominant) return ProfileClass::poiseuille;
  }
  if (c.alpha2 > 0.0 && c.alpha3 < 0.0 && 2.0 * k * c.alpha2 + c.alpha3 < 0.0) {
    const Real kp = std::max(k, c.delta > 0.0 ? 1.0 / c.delta : 0.0);
    if (kp > 0.0) {
      const Real dominant = std::max(std::abs(c.alpha2) / kp, std::abs(c.alpha3) / (kp * kp));
      if (std::abs(c.alpha1) <= rho * dominant) return ProfileClass::before_separation;
    }
  }
  return ProfileClass::other;
}

std::string_view to_string(StreamlineClass c) {
  switch (c) {
    case StreamlineClass::convexing: return "convexing";
    case StreamlineClass::parallel: return "parallel";
    case StreamlineClass::concaving: return "concaving";
  }
  throw std::logic_error("bad streamline class");
}

std::string_view to_string(ProfileClass c) {
  switch (c) {
    case ProfileClass::poiseuille: return "poiseuille";
    case ProfileClass::before_separation: return "before_separation";
    case ProfileClass::other: return "other";
  }
  throw std::logic_error("bad profile class");
}

}  // namespace sepflow
