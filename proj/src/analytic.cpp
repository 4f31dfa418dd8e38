#include "sepflow/analytic.hpp"

#include <cmath>
#include <random>

namespace sepflow {

RadialProfile RadialProfile::poly(std::vector<Real> coeffs, Real r0) {
  RadialProfile p;
  p.kind_ = Kind::poly;
  p.coeffs_ = std::move(coeffs);
  p.r0_ = r0;
  return p;
}

RadialProfile RadialProfile::gaussian(Real r0, Real width) {
  RadialProfile p;
  p.kind_ = Kind::gaussian;
  p.r0_ = r0;
  p.width_ = width;
  return p;
}

std::array<Real, 5> RadialProfile::eval(Real r) const {
  std::array<Real, 5> out{};
  const Real x = r - r0_;
  if (kind_ == Kind::poly) {
    // Horner with falling-factorial weights: d-th derivative of sum c_k x^k.
    for (int d = 0; d <= 4; ++d) {
      Real acc = 0.0;
      for (int k = static_cast<int>(coeffs_.size()) - 1; k >= d; --k) {
        Real fac = 1.0;
        for (int q = 0; q < d; ++q) fac *= (k - q);
        acc = acc * x + coeffs_[k] * fac;
      }
      out[d] = acc;
    }
    return out;
  }
  // gaussian: g(z) = exp(-z^2), z = x/width; chain rule by powers of 1/width
  const Real z = x / width_;
  const Real g = std::exp(-z * z);
  const Real w = 1.0 / width_;
  out[0] = g;
  out[1] = -2.0 * z * g * w;
  out[2] = (4.0 * z * z - 2.0) * g * w * w;
  out[3] = (-8.0 * z * z * z + 12.0 * z) * g * w * w * w;
  out[4] = (16.0 * z * z * z * z - 48.0 * z * z + 12.0) * g * w * w * w * w;
  return out;
}

std::array<Real, 4> AngularProfile::eval(Real theta) const {
  std::array<Real, 4> out{mean, 0.0, 0.0, 0.0};
  const int n = static_cast<int>(std::max(cos_coeff.size(), sin_coeff.size()));
  for (int i = 0; i < n; ++i) {
    const Real m = i + 1;
    Real a = i < static_cast<int>(cos_coeff.size()) ? cos_coeff[i] : 0.0;
    Real b = i < static_cast<int>(sin_coeff.size()) ? sin_coeff[i] : 0.0;
    const Real cm = std::cos(m * theta), sm = std::sin(m * theta);
    for (int d = 0; d < 4; ++d) {
      out[d] += a * cm + b * sm;
      const Real na = m * b, nb = -m * a;  // derivative rotates (a, b)
      a = na;
      b = nb;
    }
  }
  return out;
}

Real TimeProfile::value(Real t) const {
  switch (kind) {
    case Kind::constant: return scale;
    case Kind::exponential: return scale * std::exp(rate * t);
    case Kind::sine: return scale * std::sin(omega * t + phase);
  }
  throw std::logic_error("bad time profile");
}

Real TimeProfile::derivative(Real t) const {
  switch (kind) {
    case Kind::constant: return 0.0;
    case Kind::exponential: return rate * scale * std::exp(rate * t);
    case Kind::sine: return scale * omega * std::cos(omega * t + phase);
  }
  throw std::logic_error("bad time profile");
}

FieldJet& FieldJet::operator+=(const FieldJet& o) {
  ur += o.ur; ur_r += o.ur_r; ur_rr += o.ur_rr; ur_th += o.ur_th; ur_thth += o.ur_thth;
  ur_rth += o.ur_rth; ur_time += o.ur_time;
  ut += o.ut; ut_r += o.ut_r; ut_rr += o.ut_rr; ut_rrr += o.ut_rrr; ut_th += o.ut_th;
  ut_rth += o.ut_rth; ut_rthth += o.ut_rthth; ut_time += o.ut_time;
  return *this;
}

AnalyticField& AnalyticField::add_stream(Term term) {
  stream_.push_back(std::move(term));
  return *this;
}
AnalyticField& AnalyticField::add_ur(Term term) {
  ur_.push_back(std::move(term));
  return *this;
}
AnalyticField& AnalyticField::add_utheta(Term term) {
  utheta_.push_back(std::move(term));
  return *this;
}

AnalyticField& AnalyticField::scale(Real factor) {
  for (auto list : {&stream_, &ur_, &utheta_})
    for (auto& term : *list) term.time.scale *= factor;
  return *this;
}

FieldJet AnalyticField::jet(Real r, Real theta, Real t) const {
  FieldJet out;
  const Real s = metric_s(manifold_, r);
  const Real c = metric_c(manifold_, r);
  const Real ric = ricci_factor(manifold_);
  const Real inv_s = 1.0 / s;
  // d/dr of 1/s and its second derivative (s'' = -ric * s).
  const Real d_inv_s = -c * inv_s * inv_s;
  const Real dd_inv_s = ric * inv_s + 2.0 * c * c * inv_s * inv_s * inv_s;

  for (const auto& term : stream_) {
    const auto p = term.radial.eval(r);
    const auto q = term.angular.eval(theta);
    const Real v = term.time.value(t);
    const Real dv = term.time.derivative(t);
    FieldJet j;
    // ur = psi_theta / s
    j.ur = v * p[0] * q[1] * inv_s;
    j.ur_r = v * (p[1] * q[1] * inv_s + p[0] * q[1] * d_inv_s);
    j.ur_rr = v * (p[2] * q[1] * inv_s + 2.0 * p[1] * q[1] * d_inv_s + p[0] * q[1] * dd_inv_s);
    j.ur_th = v * p[0] * q[2] * inv_s;
    j.ur_thth = v * p[0] * q[3] * inv_s;
    j.ur_rth = v * (p[1] * q[2] * inv_s + p[0] * q[2] * d_inv_s);
    j.ur_time = dv * p[0] * q[1] * inv_s;
    // utheta = -psi_r
    j.ut = -v * p[1] * q[0];
    j.ut_r = -v * p[2] * q[0];
    j.ut_rr = -v * p[3] * q[0];
    j.ut_rrr = -v * p[4] * q[0];
    j.ut_th = -v * p[1] * q[1];
    j.ut_rth = -v * p[2] * q[1];
    j.ut_rthth = -v * p[2] * q[2];
    j.ut_time = -dv * p[1] * q[0];
    out += j;
  }
  for (const auto& term : ur_) {
    const auto p = term.radial.eval(r);
    const auto q = term.angular.eval(theta);
    const Real v = term.time.value(t);
    const Real dv = term.time.derivative(t);
    FieldJet j;
    j.ur = v * p[0] * q[0];
    j.ur_r = v * p[1] * q[0];
    j.ur_rr = v * p[2] * q[0];
    j.ur_th = v * p[0] * q[1];
    j.ur_thth = v * p[0] * q[2];
    j.ur_rth = v * p[1] * q[1];
    j.ur_time = dv * p[0] * q[0];
    out += j;
  }
  for (const auto& term : utheta_) {
    const auto p = term.radial.eval(r);
    const auto q = term.angular.eval(theta);
    const Real v = term.time.value(t);
    const Real dv = term.time.derivative(t);
    FieldJet j;
    j.ut = v * p[0] * q[0];
    j.ut_r = v * p[1] * q[0];
    j.ut_rr = v * p[2] * q[0];
    j.ut_rrr = v * p[3] * q[0];
    j.ut_th = v * p[0] * q[1];
    j.ut_rth = v * p[1] * q[1];
    j.ut_rthth = v * p[1] * q[2];
    j.ut_time = dv * p[0] * q[0];
    out += j;
  }
  return out;
}

VelocityField AnalyticField::sample(const AnnulusGrid& g, Real t) const {
  VelocityField f = VelocityField::zero(g);
  for (int i = 0; i < g.nr; ++i)
    for (int j = 0; j < g.ntheta; ++j) {
      const FieldJet jt = jet(g.r[i], g.theta(j), t);
      f.ur(i, j) = jt.ur;
      f.utheta(i, j) = jt.ut;
    }
  return f;
}

OperatorJet exact_operators(const ManifoldSpec& m, Real r, const FieldJet& j) {
  const Real s = metric_s(m, r);
  const Real c = metric_c(m, r);
  OperatorJet o;
  o.div = (c * j.ur + s * j.ur_r + j.ut_th) / s;
  o.vort = (c * j.ut + s * j.ut_r - j.ur_th) / s;
  o.lap_n = (j.ur_thth - c * j.ut_th - s * j.ut_rth) / (s * s);
  o.lap_t = -j.ut / (s * s) + c / s * j.ut_r + j.ut_rr + c / (s * s) * j.ur_th - j.ur_rth / s;
  o.conv_r = j.ur * j.ur_r + j.ut * j.ur_th / s - c / s * j.ut * j.ut;
  o.conv_t = j.ur * j.ut_r + j.ut * j.ur * c / s + j.ut * j.ut_th / s;
  return o;
}

ForcingJet mms_forcing(const ManifoldSpec& m, Real beta, Real r, const FieldJet& j) {
  const OperatorJet o = exact_operators(m, r, j);
  const Real ric = ricci_factor(m);
  const Real c = metric_c(m, r);
  ForcingJet f;
  f.fr = j.ur_time + o.conv_r - o.lap_n - 2.0 * ric * j.ur + beta * c * (-j.ut);
  f.ft = j.ut_time + o.conv_t - o.lap_t - 2.0 * ric * j.ut + beta * c * j.ur;
  return f;
}

BoundaryCoefficients exact_wall_coefficients(const AnalyticField& f, const AnnulusGrid& g, int j,
                                             Real t) {
  const FieldJet jt = f.jet(g.r[0], g.theta(j), t);
  BoundaryCoefficients c;
  c.k = g.wall_curvature();
  c.alpha1 = jt.ut_r;
  c.alpha2 = jt.ut_rr;
  c.alpha3 = jt.ut_rrr;
  c.eta = jt.ut_rthth / (g.s[0] * g.s[0]);
  c.a = g.manifold.a;
  c.delta = g.obstacle.delta;
  c.kind = g.manifold.kind;
  return c;
}

namespace {

AngularProfile random_angular(std::mt19937_64& rng, int max_mode, bool with_mean) {
  std::uniform_real_distribution<Real> u(-1.0, 1.0);
  AngularProfile q;
  q.mean = with_mean ? u(rng) : 0.0;
  q.cos_coeff.resize(max_mode);
  q.sin_coeff.resize(max_mode);
  for (int i = 0; i < max_mode; ++i) {
    // decay with mode number keeps the field resolvable on coarse grids
    const Real w = 1.0 / ((i + 1) * (i + 1));
    q.cos_coeff[i] = w * u(rng);
    q.sin_coeff[i] = w * u(rng);
  }
  return q;
}

RadialProfile noslip_radial(std::mt19937_64& rng, Real delta, Real R) {
  std::uniform_real_distribution<Real> u(-1.0, 1.0);
  const Real L = R - delta;
  // (r-delta)^2 (c0 + c1 x + c2 x^2 + c3 x^3) with x scaled by the gap width
  std::vector<Real> c(6, 0.0);
  for (int k = 0; k <= 3; ++k) c[k + 2] = u(rng) / std::pow(L, k + 2);
  return RadialProfile::poly(std::move(c), delta);
}

// Rescale the time profiles so the sampled speed peaks near one.
void normalize_speed(AnalyticField& f, const ManifoldSpec& m, Real delta, Real R) {
  AnnulusGrid probe(m, ObstacleSpec{delta}, R, 48, 48);
  const VelocityField v = f.sample(probe);
  const Real peak = std::max(v.ur.abs().maxCoeff(), v.utheta.abs().maxCoeff());
  if (peak > 0.0) f.scale(1.0 / peak);
}

}  // namespace

AnalyticField manufactured_noslip(const ManifoldSpec& m, Real delta, Real R, std::uint64_t seed,
                                  int max_mode) {
  std::mt19937_64 rng(seed);
  AnalyticField f(m);
  f.add_stream({noslip_radial(rng, delta, R), random_angular(rng, max_mode, true), TimeProfile::steady()});
  f.add_stream({noslip_radial(rng, delta, R), random_angular(rng, max_mode, false), TimeProfile::steady()});
  normalize_speed(f, m, delta, R);
  return f;
}

AnalyticField manufactured_inflow(const ManifoldSpec& m, Real delta, Real R, Real lambda0,
                                  std::uint64_t seed, int max_mode) {
  std::mt19937_64 rng(seed);
  AnalyticField f(m);
  f.add_stream({noslip_radial(rng, delta, R), random_angular(rng, max_mode, true), TimeProfile::steady()});
  normalize_speed(f, m, delta, R);
  f.add_ur({RadialProfile::gaussian(delta, 0.5 * (R - delta)), AngularProfile::constant(lambda0),
            TimeProfile::steady()});
  return f;
}

AnalyticField driven_initial(const ManifoldSpec& m, Real delta, Real R,
                             const AngularProfile& outer_u) {
  const Real L = R - delta;
  AnalyticField f(m);
  // Mean part: utheta = mean (x/L)^2, a direct stream term with Q = 1.
  // psi = -mean x^3 / (3 L^2) gives utheta = -psi_r = mean x^2/L^2.
  f.add_stream({RadialProfile::poly({0, 0, 0, -outer_u.mean / (3.0 * L * L)}, delta),
                AngularProfile::constant(1.0), TimeProfile::steady()});
  // Per-mode parts: psi = -C(x) (a_m cos + b_m sin) with C = x^3/L^2 - x^2/L,
  // so C(0) = C(L) = C'(0) = 0 and C'(L) = 1; stored as P = -C, Q = +modes.
  const int n = static_cast<int>(std::max(outer_u.cos_coeff.size(), outer_u.sin_coeff.size()));
  for (int i = 0; i < n; ++i) {
    AngularProfile q;
    q.cos_coeff.assign(i + 1, 0.0);
    q.sin_coeff.assign(i + 1, 0.0);
    if (i < static_cast<int>(outer_u.cos_coeff.size())) q.cos_coeff[i] = outer_u.cos_coeff[i];
    if (i < static_cast<int>(outer_u.sin_coeff.size())) q.sin_coeff[i] = outer_u.sin_coeff[i];
    f.add_stream({RadialProfile::poly({0, 0, 1.0 / L, -1.0 / (L * L)}, delta), q,
                  TimeProfile::steady()});
  }
  return f;
}

}  // namespace sepflow
