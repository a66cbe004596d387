#pragma once

#include <vector>

#include "qfib/types.hpp"

namespace qfib {

// Dense complex linear algebra over multipartite systems. Subsystem 0 is the
// leftmost tensor factor everywhere; the composite row index of a product is
// i_joint = i_a * d_b + i_b.

cmat tensor(const cmat& a, const cmat& b);

// Hermitian, unit-trace, PSD matrix with subsystem-dimension metadata.
// Invariants are checked at construction against the supplied tolerances.
class DensityMatrix {
 public:
  DensityMatrix(cmat mat, std::vector<int> dims, const ToleranceConfig& tol = {});

  const cmat& mat() const { return mat_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  int n_parties() const { return static_cast<int>(dims_.size()); }

 private:
  cmat mat_;
  std::vector<int> dims_;
};

class PureState {
 public:
  PureState(cvec amplitudes, std::vector<int> dims, const ToleranceConfig& tol = {});

  const cvec& amplitudes() const { return amps_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return static_cast<int>(amps_.size()); }
  DensityMatrix density(const ToleranceConfig& tol = {}) const;

 private:
  cvec amps_;
  std::vector<int> dims_;
};

struct Spectrum {
  rvec eigenvalues;   // ascending
  cmat eigenvectors;  // unitary, columns match eigenvalues
};

// Spectral decomposition of a Hermitian matrix. Throws NotHermitian when the
// input defect exceeds tol.herm * dim; validates V Lambda V^dag reconstruction.
Spectrum eig_hermitian(const cmat& a, const ToleranceConfig& tol = {});

// Principal square root of a PSD matrix. Eigenvalues in (-tol.psd, 0) are
// clamped to zero; anything more negative is a hard NotPSD error.
cmat psd_sqrt(const cmat& a, const ToleranceConfig& tol = {});

// Partial trace keeping the listed subsystems (original order preserved).
cmat partial_trace(const cmat& m, const std::vector<int>& dims,
                   const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep,
                            const ToleranceConfig& tol = {});

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b,
                     const ToleranceConfig& tol = {});

// Uhlmann fidelity A(r1, r2) = tr sqrt(sqrt(r1) r2 sqrt(r1)), clamped to [0,1].
double fidelity(const DensityMatrix& r1, const DensityMatrix& r2,
                const ToleranceConfig& tol = {});

// Bures distance sqrt(2 - 2 A).
double bures_distance(const DensityMatrix& r1, const DensityMatrix& r2,
                      const ToleranceConfig& tol = {});

}  // namespace qfib
