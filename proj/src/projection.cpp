#include "sepflow/projection.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace sepflow {

namespace {

using Cplx = std::complex<Real>;

struct Tridiag {
  std::vector<Real> sub, diag, sup;
  Real first_sup2 = 0.0;  // second superdiagonal of row 0 (wall closure)
  Real last_sub2 = 0.0;   // second subdiagonal of the last row
  std::vector<Cplx> rhs;

  void resize(int n) {
    sub.assign(n, 0.0);
    diag.assign(n, 0.0);
    sup.assign(n, 0.0);
    first_sup2 = last_sub2 = 0.0;
    rhs.assign(n, Cplx(0, 0));
  }

  // Thomas sweep after eliminating the closure rows' wide entries against
  // their interior neighbours; weakly diagonally dominant systems.
  std::vector<Cplx> solve() {
    const int n = static_cast<int>(diag.size());
    if (first_sup2 != 0.0) {
      const Real w = first_sup2 / sup[1];
      diag[0] -= w * sub[1];
      sup[0] -= w * diag[1];
      rhs[0] -= w * rhs[1];
      first_sup2 = 0.0;
    }
    if (last_sub2 != 0.0) {
      const Real w = last_sub2 / sub[n - 2];
      diag[n - 1] -= w * sup[n - 2];
      sub[n - 1] -= w * diag[n - 2];
      rhs[n - 1] -= w * rhs[n - 2];
      last_sub2 = 0.0;
    }
    std::vector<Real> d(diag);
    std::vector<Cplx> y(rhs);
    for (int i = 1; i < n; ++i) {
      const Real w = sub[i] / d[i - 1];
      d[i] -= w * sup[i - 1];
      y[i] -= w * y[i - 1];
    }
    std::vector<Cplx> x(n);
    if (std::abs(d[n - 1]) < 1e-300) throw NumericError("projection: singular tridiagonal pivot");
    x[n - 1] = y[n - 1] / d[n - 1];
    for (int i = n - 2; i >= 0; --i) {
      if (std::abs(d[i]) < 1e-300) throw NumericError("projection: singular tridiagonal pivot");
      x[i] = (y[i] - sup[i] * x[i + 1]) / d[i];
    }
    return x;
  }
};

void filter_nyquist_interior(Array2D& a) {
  const auto nt = a.cols();
  if (nt % 2 != 0) return;
  for (Eigen::Index i = 1; i + 1 < a.rows(); ++i) {
    Real q = 0.0;
    for (Eigen::Index j = 0; j < nt; ++j) q += (j % 2 == 0 ? a(i, j) : -a(i, j));
    q /= static_cast<Real>(nt);
    for (Eigen::Index j = 0; j < nt; ++j) a(i, j) -= (j % 2 == 0 ? q : -q);
  }
}

}  // namespace

void ProjectionSolver::solve_potential(const Array2D& rhs, Array2D& phi) const {
  const AnnulusGrid& g = *grid_;
  const int nr = g.nr, nt = g.ntheta;
  const Real hr = g.hr, ht = g.htheta;

  Eigen::FFT<Real> fft;
  Eigen::ArrayXXcd rhat = Eigen::ArrayXXcd::Zero(nr, nt);
  {
    std::vector<Real> row(nt);
    std::vector<Cplx> spec(nt);
    for (int i = 1; i + 1 < nr; ++i) {
      for (int j = 0; j < nt; ++j) row[j] = rhs(i, j);
      fft.fwd(spec, row);
      for (int j = 0; j < nt; ++j) rhat(i, j) = spec[j];
    }
  }

  Eigen::ArrayXXcd phat = Eigen::ArrayXXcd::Zero(nr, nt);
  const int m_max = nt / 2;
  Tridiag sys;
  for (int m = 0; m <= m_max; ++m) {
    if (nt % 2 == 0 && m == m_max) break;  // Nyquist mode filtered from the data
    const Real sn = std::sin(m * ht);
    const Real sigma = -sn * sn / (ht * ht);
    for (int parity = 0; parity < 2; ++parity) {
      std::vector<int> nodes;
      for (int b = parity; b < nr; b += 2) nodes.push_back(b);
      const int n = static_cast<int>(nodes.size());
      sys.resize(n);
      for (int q = 0; q < n; ++q) {
        const int b = nodes[q];
        if (b >= 1 && b <= nr - 2) {
          const Real base = 1.0 / (4.0 * hr * hr * g.s[b]);
          if (b + 1 <= nr - 2) {
            sys.sup[q] += g.s[b + 1] * base;
            sys.diag[q] -= g.s[b + 1] * base;
          }
          if (b - 1 >= 1) {
            sys.sub[q] += g.s[b - 1] * base;
            sys.diag[q] -= g.s[b - 1] * base;
          }
          sys.diag[q] += sigma / (g.s[b] * g.s[b]);
          sys.rhs[q] = rhat(b, m);
        } else if (b == 0) {
          // second-order one-sided zero-slope closure on the sublattice
          sys.diag[q] = -3.0;
          sys.sup[q] = 4.0;
          sys.first_sup2 = -1.0;
        } else {
          sys.diag[q] = 3.0;
          sys.sub[q] = -4.0;
          sys.last_sub2 = 1.0;
        }
      }
      if (m == 0) {
        // constants are in the kernel: pin one unknown.  Prefer a closure
        // row (dropping it loses nothing); failing that, drop the outermost
        // interior equation, which holds anyway by flux compatibility.
        int pin = -1;
        if (nodes.back() == nr - 1 || nodes.front() == 0)
          pin = nodes.back() == nr - 1 ? n - 1 : 0;
        else
          pin = n - 1;
        sys.sub[pin] = sys.sup[pin] = 0.0;
        if (pin == 0) sys.first_sup2 = 0.0;
        if (pin == n - 1) sys.last_sub2 = 0.0;
        sys.diag[pin] = 1.0;
        sys.rhs[pin] = Cplx(0, 0);
      }
      const std::vector<Cplx> x = sys.solve();
      for (int q = 0; q < n; ++q) phat(nodes[q], m) = x[q];
    }
  }
  // enforce the conjugate symmetry of a real potential
  for (int i = 0; i < nr; ++i) phat(i, 0) = Cplx(phat(i, 0).real(), 0.0);
  for (int m = 1; m < (nt + 1) / 2; ++m)
    for (int i = 0; i < nr; ++i) phat(i, nt - m) = std::conj(phat(i, m));

  {
    std::vector<Real> row(nt);
    std::vector<Cplx> spec(nt);
    for (int i = 0; i < nr; ++i) {
      for (int j = 0; j < nt; ++j) spec[j] = phat(i, j);
      fft.inv(row, spec);
      for (int j = 0; j < nt; ++j) phi(i, j) = row[j];
    }
  }

  // The axisymmetric mode fixes one gauge constant per radial sublattice;
  // align them so the reported potential has no two-row ripple.
  {
    Real t = 0.0;
    for (int i = 0; i + 1 < nr; ++i) {
      const Real jump = (phi.row(i + 1) - phi.row(i)).mean();
      t += ((i + 1) % 2 == 1 ? -jump : jump);
    }
    t /= static_cast<Real>(nr - 1);
    for (int i = 1; i < nr; i += 2) phi.row(i) += t;
  }
}

void ProjectionSolver::apply_correction(VelocityField& v, const Array2D& phi, Real dt) const {
  const AnnulusGrid& g = *grid_;
  for (int i = 1; i + 1 < g.nr; ++i) {
    for (int j = 0; j < g.ntheta; ++j) {
      v.ur(i, j) -= dt * (phi(i + 1, j) - phi(i - 1, j)) / (2.0 * g.hr);
      v.utheta(i, j) -=
          dt * (phi(i, g.jp(j)) - phi(i, g.jm(j))) / (2.0 * g.htheta * g.s[i]);
    }
  }
}

ScalarField ProjectionSolver::project(VelocityField& v, Real dt) const {
  const AnnulusGrid& g = *grid_;
  check_shape(v, g);
  if (!(dt > 0.0)) throw PreconditionError("projection: dt must be positive");
  if (!v.finite()) throw NumericError("projection: non-finite input field");

  filter_nyquist_interior(v.ur);
  filter_nyquist_interior(v.utheta);

  Array2D phi = Array2D::Zero(g.nr, g.ntheta);
  const Real speed = std::max(v.ur.abs().maxCoeff(), v.utheta.abs().maxCoeff());

  // One solve normally suffices; a second pass mops up tridiagonal roundoff.
  for (int pass = 0; pass < 2; ++pass) {
    const Array2D rhs = divergence(v, g).values / dt;
    Array2D incr = Array2D::Zero(g.nr, g.ntheta);
    solve_potential(rhs, incr);
    apply_correction(v, incr, dt);
    phi += incr;
    achieved_ = max_interior_divergence(v, g);
    if (achieved_ <= 1e-11 * (1.0 + speed)) break;
  }
  if (achieved_ > 1e-10 * (1.0 + speed))
    throw NumericError("projection: interior divergence did not reach tolerance");

  // area-weighted mean-zero gauge
  Real mean = 0.0, wsum = 0.0;
  for (int i = 0; i < g.nr; ++i) {
    mean += phi.row(i).sum() * g.s[i];
    wsum += g.s[i] * g.ntheta;
  }
  phi -= mean / wsum;
  return {std::move(phi)};
}

}  // namespace sepflow
