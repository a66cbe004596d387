#include "qfib/random_states.hpp"

#include <cmath>

namespace qfib {

cmat ginibre(int rows, int cols, Rng& rng) {
  cmat g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = cxd(rng.normal(), rng.normal());
  }
  return g;
}

cmat random_hermitian(int d, Rng& rng) {
  const cmat g = ginibre(d, d, rng);
  return hermitize(g);
}

cmat haar_unitary(int d, Rng& rng) {
  const cmat g = ginibre(d, d, rng);
  Eigen::HouseholderQR<cmat> qr(g);
  cmat q = qr.householderQ();
  const cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const cxd diag = r(j, j);
    const double a = std::abs(diag);
    q.col(j) *= (a > 0 ? diag / a : cxd(1.0, 0.0));
  }
  return q;
}

DensityMatrix random_density(int d, Rng& rng, double identity_mix,
                             const ToleranceConfig& tol) {
  const cmat g = ginibre(d, d, rng);
  cmat rho = g * g.adjoint();
  rho /= rho.trace().real();
  if (identity_mix > 0.0) {
    rho = (1.0 - identity_mix) * rho +
          identity_mix / d * cmat::Identity(d, d);
  }
  return DensityMatrix(hermitize(rho), {d}, tol);
}

PureState random_pure(const std::vector<int>& dims, Rng& rng, const ToleranceConfig& tol) {
  int d = 1;
  for (int x : dims) d *= x;
  cvec v(d);
  for (int i = 0; i < d; ++i) v(i) = cxd(rng.normal(), rng.normal());
  v /= v.norm();
  return PureState(v, dims, tol);
}

POVM random_povm(int d, int n_outcomes, Rng& rng, const ToleranceConfig& tol) {
  std::vector<cmat> g;
  cmat sum = cmat::Zero(d, d);
  for (int j = 0; j < n_outcomes; ++j) {
    const cmat a = ginibre(d, d, rng);
    g.push_back(a * a.adjoint());
    sum += g.back();
  }
  // whiten so the effects sum to the identity
  Spectrum s = eig_hermitian(hermitize(sum), tol);
  rvec inv_root = s.eigenvalues.cwiseMax(1e-14).cwiseSqrt().cwiseInverse();
  const cmat w = s.eigenvectors * inv_root.asDiagonal().toDenseMatrix().cast<cxd>() *
                 s.eigenvectors.adjoint();
  std::vector<cmat> effects;
  for (const cmat& e : g) effects.push_back(hermitize(w * e * w));
  return POVM(std::move(effects), {}, tol);
}

KrausChannel random_cptp(int d, int env_dim, Rng& rng) {
  const cmat u = haar_unitary(d * env_dim, rng);
  std::vector<cmat> kraus;
  for (int k = 0; k < env_dim; ++k) {
    cmat kk(d, d);
    // joint index (sys, env) = sys * env_dim + env; environment starts in |0>
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) kk(i, j) = u(i * env_dim + k, j * env_dim + 0);
    }
    kraus.push_back(std::move(kk));
  }
  return KrausChannel(std::move(kraus), {d}, {d});
}

ParametricFamily random_family(const std::vector<int>& dims, std::uint64_t seed,
                               FamilyKind kind, double identity_mix,
                               const ToleranceConfig& tol) {
  int d = 1;
  for (int x : dims) d *= x;
  Rng rng(seed);
  const cmat h = random_hermitian(d, rng);
  Spectrum hs = eig_hermitian(h, tol);

  cmat rho0;
  if (kind == FamilyKind::PureOrbit) {
    const PureState psi = random_pure(dims, rng, tol);
    rho0 = psi.amplitudes() * psi.amplitudes().adjoint();
  } else {
    rho0 = random_density(d, rng, identity_mix, tol).mat();
  }

  auto propagator = [hs, d](double t) {
    cvec phases(d);
    for (int i = 0; i < d; ++i) {
      phases(i) = std::exp(cxd(0.0, -t * hs.eigenvalues(i)));
    }
    return cmat(hs.eigenvectors * phases.asDiagonal() * hs.eigenvectors.adjoint());
  };

  auto state = [propagator, rho0, dims, tol](double t) {
    const cmat u = propagator(t);
    return DensityMatrix(hermitize(u * rho0 * u.adjoint()), dims, tol);
  };
  auto deriv = [propagator, rho0, h](double t) {
    const cmat u = propagator(t);
    const cmat rt = u * rho0 * u.adjoint();
    return cmat(cxd(0.0, -1.0) * commutator(h, rt));
  };
  return ParametricFamily::analytic(Interval{0.0, 6.283185307179586}, state, deriv);
}

}  // namespace qfib
