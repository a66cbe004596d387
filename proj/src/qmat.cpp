#include "qfib/qmat.hpp"

#include <algorithm>
#include <cmath>

namespace qfib {

namespace {

int product(const std::vector<int>& dims) {
  int d = 1;
  for (int x : dims) d *= x;
  return d;
}

void check_dims(const cmat& m, const std::vector<int>& dims) {
  if (dims.empty()) throw InvalidSubsystem("subsystem dimension list is empty");
  for (int d : dims) {
    if (d < 1) throw InvalidSubsystem("subsystem dimensions must be positive");
  }
  if (m.rows() != m.cols()) throw DimensionMismatch("matrix is not square");
  if (m.rows() != product(dims)) {
    throw DimensionMismatch("matrix dimension does not match product of subsystem dims");
  }
}

}  // namespace

cmat tensor(const cmat& a, const cmat& b) {
  cmat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix::DensityMatrix(cmat mat, std::vector<int> dims, const ToleranceConfig& tol)
    : mat_(std::move(mat)), dims_(std::move(dims)) {
  check_dims(mat_, dims_);
  const int d = static_cast<int>(mat_.rows());
  if (herm_defect(mat_) > tol.herm * d) {
    throw NotHermitian("density matrix is not Hermitian within tolerance");
  }
  if (std::abs(mat_.trace().real() - 1.0) > tol.trace ||
      std::abs(mat_.trace().imag()) > tol.trace) {
    throw Error("density matrix trace differs from 1 beyond tolerance");
  }
  Eigen::SelfAdjointEigenSolver<cmat> es(hermitize(mat_), Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -tol.psd) {
    throw NotPSD("density matrix has an eigenvalue below -psd tolerance");
  }
}

PureState::PureState(cvec amplitudes, std::vector<int> dims, const ToleranceConfig& tol)
    : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (amps_.size() != product(dims_)) {
    throw DimensionMismatch("amplitude vector does not match subsystem dims");
  }
  if (std::abs(amps_.norm() - 1.0) > tol.trace) {
    throw Error("pure state is not normalized within tolerance");
  }
}

DensityMatrix PureState::density(const ToleranceConfig& tol) const {
  return DensityMatrix(amps_ * amps_.adjoint(), dims_, tol);
}

Spectrum eig_hermitian(const cmat& a, const ToleranceConfig& tol) {
  if (a.rows() != a.cols()) throw DimensionMismatch("eig_hermitian needs a square matrix");
  const double scale = std::max(1.0, a.norm());
  if (herm_defect(a) > tol.herm * static_cast<double>(a.rows()) * scale) {
    throw NotHermitian("matrix is not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<cmat> es(hermitize(a));
  if (es.info() != Eigen::Success) throw Error("Hermitian eigensolver failed");
  Spectrum s{es.eigenvalues(), es.eigenvectors()};
  const cmat recon = s.eigenvectors * s.eigenvalues.asDiagonal().toDenseMatrix().cast<cxd>() *
                     s.eigenvectors.adjoint();
  const double ref = std::max(1.0, a.norm());
  if ((recon - hermitize(a)).norm() > tol.eig * ref) {
    throw Error("spectral reconstruction residual above tolerance");
  }
  const cmat gram = s.eigenvectors.adjoint() * s.eigenvectors;
  if ((gram - cmat::Identity(a.rows(), a.cols())).norm() > tol.eig * ref) {
    throw Error("eigenvector orthonormality residual above tolerance");
  }
  return s;
}

cmat psd_sqrt(const cmat& a, const ToleranceConfig& tol) {
  Spectrum s = eig_hermitian(a, tol);
  if (s.eigenvalues(0) < -tol.psd) {
    throw NotPSD("matrix has an eigenvalue below -psd tolerance");
  }
  // eigenvalues at the roundoff floor are noise; sqrt would amplify them
  // from ~1e-16 to ~1e-8, so they clamp to zero together with the negatives
  const double noise_floor =
      1e-14 * std::max(1.0, s.eigenvalues.cwiseAbs().maxCoeff());
  rvec roots = s.eigenvalues;
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    roots(i) = roots(i) < noise_floor ? 0.0 : std::sqrt(roots(i));
  }
  cmat out = s.eigenvectors * roots.asDiagonal().toDenseMatrix().cast<cxd>() *
             s.eigenvectors.adjoint();
  return hermitize(out);
}

cmat partial_trace(const cmat& m, const std::vector<int>& dims,
                   const std::vector<int>& keep) {
  check_dims(m, dims);
  if (keep.empty()) throw InvalidSubsystem("keep set must be non-empty");
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw InvalidSubsystem("subsystem index out of range");
    if (kept[k]) throw InvalidSubsystem("duplicate subsystem index");
    kept[k] = true;
  }

  // strides[s] = dimension stride of subsystem s in the flat index
  std::vector<long> strides(n, 1);
  for (int s = n - 2; s >= 0; --s) strides[s] = strides[s + 1] * dims[s + 1];

  std::vector<int> keep_sorted;
  std::vector<int> traced;
  for (int s = 0; s < n; ++s) (kept[s] ? keep_sorted : traced).push_back(s);

  long dk = 1, dt = 1;
  for (int s : keep_sorted) dk *= dims[s];
  for (int s : traced) dt *= dims[s];

  // flat offsets of every kept / traced multi-index
  auto offsets = [&](const std::vector<int>& subs, long count) {
    std::vector<long> off(count, 0);
    for (long idx = 0; idx < count; ++idx) {
      long rem = idx;
      for (int pos = static_cast<int>(subs.size()) - 1; pos >= 0; --pos) {
        const int s = subs[pos];
        off[idx] += (rem % dims[s]) * strides[s];
        rem /= dims[s];
      }
    }
    return off;
  };
  const std::vector<long> koff = offsets(keep_sorted, dk);
  const std::vector<long> toff = offsets(traced, dt);

  cmat out = cmat::Zero(dk, dk);
  for (long r = 0; r < dk; ++r) {
    for (long c = 0; c < dk; ++c) {
      cxd acc = 0.0;
      for (long t = 0; t < dt; ++t) {
        acc += m(koff[r] + toff[t], koff[c] + toff[t]);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep,
                            const ToleranceConfig& tol) {
  cmat m = partial_trace(rho.mat(), rho.dims(), keep);
  std::vector<int> kept_sorted(keep);
  std::sort(kept_sorted.begin(), kept_sorted.end());
  std::vector<int> out_dims;
  for (int s : kept_sorted) out_dims.push_back(rho.dims()[s]);
  return DensityMatrix(std::move(m), std::move(out_dims), tol);
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b,
                     const ToleranceConfig& tol) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix(tensor(a.mat(), b.mat()), std::move(dims), tol);
}

double fidelity(const DensityMatrix& r1, const DensityMatrix& r2,
                const ToleranceConfig& tol) {
  if (r1.dim() != r2.dim()) throw DimensionMismatch("fidelity: dimension mismatch");
  // tr sqrt(sqrt(r1) r2 sqrt(r1)) equals the nuclear norm of
  // sqrt(r1) sqrt(r2); the SVD route avoids squaring small singular values
  const cmat s1 = psd_sqrt(r1.mat(), tol);
  const cmat s2 = psd_sqrt(r2.mat(), tol);
  Eigen::JacobiSVD<cmat> svd(s1 * s2);
  const double a = svd.singularValues().sum();
  return std::clamp(a, 0.0, 1.0);
}

double bures_distance(const DensityMatrix& r1, const DensityMatrix& r2,
                      const ToleranceConfig& tol) {
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * fidelity(r1, r2, tol)));
}

}  // namespace qfib
