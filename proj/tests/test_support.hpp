#pragma once

#include <cmath>

#include "qfib/qmat.hpp"
#include "qfib/types.hpp"

namespace qtest {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline qfib::cmat pauli_x() {
  qfib::cmat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline qfib::cmat pauli_y() {
  qfib::cmat m(2, 2);
  m << 0, qfib::cxd(0, -1), qfib::cxd(0, 1), 0;
  return m;
}

inline qfib::cmat pauli_z() {
  qfib::cmat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline qfib::cvec ket(int j, int d) {
  qfib::cvec v = qfib::cvec::Zero(d);
  v(j) = 1.0;
  return v;
}

inline qfib::cvec equatorial_ket(double theta) {
  qfib::cvec v(2);
  v << 1.0 / std::sqrt(2.0), std::exp(qfib::cxd(0, theta)) / std::sqrt(2.0);
  return v;
}

inline qfib::DensityMatrix pure2(const qfib::cvec& psi, std::vector<int> dims) {
  return qfib::DensityMatrix(psi * psi.adjoint(), std::move(dims));
}

// Residual of the SLD defining equation on the solvable sector; the SldResult
// invariant every sld call in the suite must satisfy.
inline double sld_equation_residual(const qfib::DensityMatrix& rho, const qfib::cmat& drho,
                                    const qfib::cmat& sld_op, double rank_cut = 1e-10) {
  qfib::Spectrum s = qfib::eig_hermitian(rho.mat());
  const int d = rho.dim();
  qfib::cmat n = qfib::cmat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (s.eigenvalues(i) <= rank_cut) {
      n += s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
    }
  }
  const qfib::cmat solvable = drho - n * drho * n;
  return (0.5 * (sld_op * rho.mat() + rho.mat() * sld_op) - solvable).norm();
}

}  // namespace qtest
