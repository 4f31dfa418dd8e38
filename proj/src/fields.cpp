#include "sepflow/fields.hpp"

#include <cmath>

#include "sepflow/stencils.hpp"

namespace sepflow {

void check_shape(const VelocityField& f, const AnnulusGrid& g) {
  if (f.ur.rows() != g.nr || f.ur.cols() != g.ntheta || f.utheta.rows() != g.nr ||
      f.utheta.cols() != g.ntheta)
    throw ShapeError("velocity field does not match grid shape");
}

void check_shape(const ScalarField& f, const AnnulusGrid& g) {
  if (f.values.rows() != g.nr || f.values.cols() != g.ntheta)
    throw ShapeError("scalar field does not match grid shape");
}

Array2D d_r(const Array2D& f, Real hr) {
  const auto nr = f.rows();
  Array2D g(nr, f.cols());
  g.row(0) = (-3.0 * f.row(0) + 4.0 * f.row(1) - f.row(2)) / (2.0 * hr);
  for (Eigen::Index i = 1; i + 1 < nr; ++i) g.row(i) = (f.row(i + 1) - f.row(i - 1)) / (2.0 * hr);
  g.row(nr - 1) = (3.0 * f.row(nr - 1) - 4.0 * f.row(nr - 2) + f.row(nr - 3)) / (2.0 * hr);
  return g;
}

Array2D d_rr(const Array2D& f, Real hr) {
  const auto nr = f.rows();
  const Real h2 = hr * hr;
  Array2D g(nr, f.cols());
  g.row(0) = (2.0 * f.row(0) - 5.0 * f.row(1) + 4.0 * f.row(2) - f.row(3)) / h2;
  for (Eigen::Index i = 1; i + 1 < nr; ++i)
    g.row(i) = (f.row(i + 1) - 2.0 * f.row(i) + f.row(i - 1)) / h2;
  g.row(nr - 1) =
      (2.0 * f.row(nr - 1) - 5.0 * f.row(nr - 2) + 4.0 * f.row(nr - 3) - f.row(nr - 4)) / h2;
  return g;
}

Array2D d_theta(const Array2D& f, Real ht) {
  const auto nt = f.cols();
  Array2D g(f.rows(), nt);
  for (Eigen::Index j = 0; j < nt; ++j) {
    const Eigen::Index jp = j + 1 == nt ? 0 : j + 1;
    const Eigen::Index jm = j == 0 ? nt - 1 : j - 1;
    g.col(j) = (f.col(jp) - f.col(jm)) / (2.0 * ht);
  }
  return g;
}

Array2D d_thetatheta(const Array2D& f, Real ht) {
  const auto nt = f.cols();
  const Real h2 = ht * ht;
  Array2D g(f.rows(), nt);
  for (Eigen::Index j = 0; j < nt; ++j) {
    const Eigen::Index jp = j + 1 == nt ? 0 : j + 1;
    const Eigen::Index jm = j == 0 ? nt - 1 : j - 1;
    g.col(j) = (f.col(jp) - 2.0 * f.col(j) + f.col(jm)) / h2;
  }
  return g;
}

namespace {

// f scaled per radial row by v (v has nr entries).
Array2D rowscale(const Array2D& f, const Array1D& v) { return f.colwise() * v; }

}  // namespace

ScalarField divergence(const VelocityField& f, const AnnulusGrid& g) {
  check_shape(f, g);
  Array2D su = rowscale(f.ur, g.s);
  return {rowscale(d_r(su, g.hr) + d_theta(f.utheta, g.htheta), g.s.inverse())};
}

ScalarField vorticity(const VelocityField& f, const AnnulusGrid& g) {
  check_shape(f, g);
  Array2D su = rowscale(f.utheta, g.s);
  return {rowscale(d_r(su, g.hr) - d_theta(f.ur, g.htheta), g.s.inverse())};
}

VelocityField hodge_star_1form(const VelocityField& f) { return {-f.utheta, f.ur}; }

ScalarField laplacian_normal(const VelocityField& f, const AnnulusGrid& g) {
  check_shape(f, g);
  Array2D dt_ut = d_theta(f.utheta, g.htheta);
  Array2D v = d_thetatheta(f.ur, g.htheta) - rowscale(dt_ut, g.c) - rowscale(d_r(dt_ut, g.hr), g.s);
  return {rowscale(v, (g.s * g.s).inverse())};
}

ScalarField laplacian_normal_divfree(const VelocityField& f, const AnnulusGrid& g) {
  check_shape(f, g);
  const Real ric = ricci_factor(g.manifold);
  Array1D inv_s2 = (g.s * g.s).inverse();
  Array2D v = rowscale(d_thetatheta(f.ur, g.htheta), inv_s2) -
              rowscale(d_theta(f.utheta, g.htheta), g.c * inv_s2) - ric * f.ur +
              rowscale(d_r(f.ur, g.hr), 2.0 * g.c / g.s) + d_rr(f.ur, g.hr);
  return {std::move(v)};
}

ScalarField laplacian_tangential(const VelocityField& f, const AnnulusGrid& g) {
  check_shape(f, g);
  Array1D inv_s2 = (g.s * g.s).inverse();
  Array2D v = -rowscale(f.utheta, inv_s2) + rowscale(d_r(f.utheta, g.hr), g.c / g.s) +
              d_rr(f.utheta, g.hr) + rowscale(d_theta(f.ur, g.htheta), g.c * inv_s2) -
              rowscale(d_r(d_theta(f.ur, g.htheta), g.hr), g.s.inverse());
  return {std::move(v)};
}

ScalarField convection_tangential(const VelocityField& f, const AnnulusGrid& g) {
  check_shape(f, g);
  Array2D v = f.ur * d_r(f.utheta, g.hr) + rowscale(f.utheta * f.ur, g.c / g.s) +
              rowscale(f.utheta * d_theta(f.utheta, g.htheta), g.s.inverse());
  return {std::move(v)};
}

VelocityField convection_full(const VelocityField& f, const AnnulusGrid& g) {
  check_shape(f, g);
  Array2D normal = f.ur * d_r(f.ur, g.hr) + rowscale(f.utheta * d_theta(f.ur, g.htheta), g.s.inverse()) -
                   rowscale(f.utheta * f.utheta, g.c / g.s);
  return {std::move(normal), convection_tangential(f, g).values};
}

VelocityField pressure_gradient(const ScalarField& p, const AnnulusGrid& g) {
  check_shape(p, g);
  return {d_r(p.values, g.hr), rowscale(d_theta(p.values, g.htheta), g.s.inverse())};
}

BoundaryCoefficients extract_boundary_coefficients(const VelocityField& f, const AnnulusGrid& g,
                                                   int theta_index) {
  check_shape(f, g);
  if (g.nr < 6) throw PreconditionError("grid too small for requested stencil order");
  if (theta_index < 0 || theta_index >= g.ntheta)
    throw PreconditionError("theta index out of range");

  static const std::vector<Real> w1 = fd_weights_uniform(0, 0, 5, 1.0, 1);
  static const std::vector<Real> w2 = fd_weights_uniform(0, 0, 6, 1.0, 2);
  static const std::vector<Real> w3 = fd_weights_uniform(0, 0, 5, 1.0, 3);

  const int j = theta_index;
  const int jp = g.jp(j), jm = g.jm(j);
  const Real hr = g.hr;

  Real a1 = 0.0, a2 = 0.0, a3 = 0.0, eta_num = 0.0;
  for (int i = 0; i < 5; ++i) {
    const Real ut = f.utheta(i, j);
    a1 += w1[i] * ut;
    a3 += w3[i] * ut;
    const Real tt = (f.utheta(i, jp) - 2.0 * f.utheta(i, j) + f.utheta(i, jm)) /
                    (g.htheta * g.htheta);
    eta_num += w1[i] * tt;
  }
  for (int i = 0; i < 6; ++i) a2 += w2[i] * f.utheta(i, j);

  BoundaryCoefficients c;
  c.k = g.wall_curvature();
  c.alpha1 = a1 / hr;
  c.alpha2 = a2 / (hr * hr);
  c.alpha3 = a3 / (hr * hr * hr);
  c.eta = eta_num / hr / (g.s[0] * g.s[0]);
  c.a = g.manifold.a;
  c.delta = g.obstacle.delta;
  c.kind = g.manifold.kind;
  return c;
}

namespace {

// Fourth-order radial derivative of `f` at row `i`, from a 5- or 6-node
// window clamped to the wall.  Used where a first-pass discrete field gets
// differentiated again: keeping these rows high order preserves the
// second-order convergence of the composed wall quantity.
struct WallStencils {
  // weights[i] = node weights for rows first(i)..first(i)+n-1
  std::vector<std::vector<Real>> d1, d2;
  std::vector<int> first1, first2;

  WallStencils(int rows, int nr, Real hr) {
    d1.resize(rows);
    d2.resize(rows);
    first1.resize(rows);
    first2.resize(rows);
    for (int i = 0; i < rows; ++i) {
      first1[i] = std::max(0, std::min(i - 2, nr - 5));
      first2[i] = std::max(0, std::min(i - 2, nr - 6));
      d1[i] = fd_weights_uniform(i, first1[i], 5, hr, 1);
      d2[i] = fd_weights_uniform(i, first2[i], 6, hr, 2);
    }
  }
};

}  // namespace

IdentityTerms boundary_identity_terms(const VelocityField& f, const AnnulusGrid& g, int theta_index,
                                      const WallSpec& wall, const IdentityOptions& opts) {
  check_shape(f, g);
  if (g.nr < 8) throw PreconditionError("grid too small for wall identity stencils");
  if (theta_index < 0 || theta_index >= g.ntheta)
    throw PreconditionError("theta index out of range");
  if (!f.finite()) throw PreconditionError("wall identity: field has non-finite values");

  // Wall condition must hold exactly (imposed data, not solved data).
  const Real want_ur = wall.kind == WallSpec::Kind::inflow ? wall.lambda0 : 0.0;
  const Real bc_dev = std::max((f.ur.row(0) - want_ur).abs().maxCoeff(),
                               f.utheta.row(0).abs().maxCoeff());
  if (bc_dev > opts.bc_tol)
    throw PreconditionError("wall identity: boundary values violate the wall condition");
  if (wall.kind == WallSpec::Kind::noslip) {
    const Real speed = std::max(f.ur.abs().maxCoeff(), f.utheta.abs().maxCoeff());
    const Real div = max_interior_divergence(f, g);
    if (div > opts.div_tol * (1.0 + speed))
      throw PreconditionError("wall identity: field is not divergence-free to tolerance");
  }

  const int rows = 5;  // wall value plus four layers feed the final radial derivative
  const WallStencils st(rows, g.nr, g.hr);
  static const std::vector<Real> w1_wall = fd_weights_uniform(0, 0, 5, 1.0, 1);

  const int j = theta_index;
  const int jp = g.jp(j), jm = g.jm(j);
  const Real ht = g.htheta;

  // Tangential Laplacian component on the five wall layers, all radial
  // derivatives fourth order.  Needed at columns j-2..j+2 for the final
  // theta differences; computing the full rows keeps the indexing simple.
  Array2D lap_t(rows, g.ntheta);
  Array2D dt_ur = d_theta(f.ur, ht);
  for (int i = 0; i < rows; ++i) {
    for (int col = 0; col < g.ntheta; ++col) {
      Real ut_r = 0.0, ut_rr = 0.0, urth_r = 0.0;
      for (int m = 0; m < 5; ++m) {
        ut_r += st.d1[i][m] * f.utheta(st.first1[i] + m, col);
        urth_r += st.d1[i][m] * dt_ur(st.first1[i] + m, col);
      }
      for (int m = 0; m < 6; ++m) ut_rr += st.d2[i][m] * f.utheta(st.first2[i] + m, col);
      const Real s = g.s[i], c = g.c[i];
      lap_t(i, col) = -f.utheta(i, col) / (s * s) + c / s * ut_r + ut_rr +
                      c / (s * s) * dt_ur(i, col) - urth_r / s;
    }
  }

  // Normal Laplacian component on the wall row.
  Array1D lap_n_wall(g.ntheta);
  Array2D dt_ut = d_theta(f.utheta, ht);
  for (int col = 0; col < g.ntheta; ++col) {
    Real utth_r = 0.0;
    for (int m = 0; m < 5; ++m) utth_r += st.d1[0][m] * dt_ut(st.first1[0] + m, col);
    const Real s0 = g.s[0], c0 = g.c[0];
    const Real urtt = (f.ur(0, g.jp(col)) - 2.0 * f.ur(0, col) + f.ur(0, g.jm(col))) / (ht * ht);
    lap_n_wall[col] = (urtt - c0 * dt_ut(0, col) - s0 * utth_r) / (s0 * s0);
  }

  const Real s0 = g.s[0];
  const Real k = g.wall_curvature();
  const Real ric = ricci_factor(g.manifold);

  // d_r of the tangential Laplacian at the wall.
  Real t1 = 0.0;
  for (int i = 0; i < rows; ++i) t1 += w1_wall[i] * lap_t(i, j);
  t1 /= g.hr;
  // (1/s) d_theta of the normal Laplacian at the wall.
  const Real t2 = (lap_n_wall[jp] - lap_n_wall[jm]) / (2.0 * ht) / s0;
  // curvature times the tangential Laplacian at the wall.
  const Real t3 = k * lap_t(0, j);

  BoundaryCoefficients coeffs = extract_boundary_coefficients(f, g, j);

  IdentityTerms out;
  out.coeffs = coeffs;
  out.raw = t1 - t2 + t3 + 2.0 * ric * coeffs.alpha1;
  if (wall.kind == WallSpec::Kind::inflow) {
    coeffs.lambda0 = wall.lambda0;
    coeffs.beta = wall.beta;
    out.coeffs = coeffs;
    const Real ad = g.manifold.a * g.obstacle.delta;
    out.raw += -k * wall.lambda0 * coeffs.alpha1 - wall.lambda0 * coeffs.alpha2 -
               k * wall.lambda0 * wall.beta * std::cos(ad) +
               g.manifold.a * wall.beta * wall.lambda0 * std::sin(ad);
    out.simplified = rhs_coriolis(coeffs);
  } else {
    out.simplified = rhs_plain(coeffs);
  }
  out.residual = out.raw - out.simplified;

  // Internal check of the tangential-pressure substitution: the theta
  // derivative of the normal Laplacian along the wall must match the theta
  // derivative of d_rr ur there.
  Array1D urr_wall(3);
  int cols[3] = {jm, j, jp};
  for (int q = 0; q < 3; ++q) {
    Real acc = 0.0;
    for (int m = 0; m < 6; ++m) acc += st.d2[0][m] * f.ur(st.first2[0] + m, cols[q]);
    urr_wall[q] = acc;
  }
  const Real t2_sub = (urr_wall[2] - urr_wall[0]) / (2.0 * ht) / s0;
  out.deltae3_gap = t2 - t2_sub;
  const Real scale = std::max({1.0, std::abs(t2), std::abs(t2_sub)});
  const Real gap_tol = opts.assert_factor * (g.hr * g.hr + ht * ht) * scale;
  if (std::abs(out.deltae3_gap) > gap_tol)
    throw PreconditionError("wall identity: tangential-pressure substitution check failed");

  return out;
}

Real boundary_identity_residual(const VelocityField& f, const AnnulusGrid& g, int theta_index,
                                const IdentityOptions& opts) {
  return boundary_identity_terms(f, g, theta_index, WallSpec{}, opts).residual;
}

Real coriolis_identity_residual(const VelocityField& f, const AnnulusGrid& g, int theta_index,
                                Real lambda0, Real beta, const IdentityOptions& opts) {
  WallSpec wall{WallSpec::Kind::inflow, lambda0, beta};
  return boundary_identity_terms(f, g, theta_index, wall, opts).residual;
}

Real max_interior_divergence(const VelocityField& f, const AnnulusGrid& g) {
  const ScalarField div = divergence(f, g);
  if (g.nr <= 2) return 0.0;
  return div.values.block(1, 0, g.nr - 2, g.ntheta).abs().maxCoeff();
}

Real kinetic_energy(const VelocityField& f, const AnnulusGrid& g) {
  check_shape(f, g);
  Array1D row_energy = (f.ur * f.ur + f.utheta * f.utheta).rowwise().sum();
  Real acc = 0.0;
  for (int i = 0; i < g.nr; ++i) {
    const Real w = (i == 0 || i == g.nr - 1) ? 0.5 : 1.0;
    acc += w * row_energy[i] * g.s[i];
  }
  return 0.5 * acc * g.hr * g.htheta;
}

}  // namespace sepflow
