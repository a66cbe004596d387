#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qfib {

using cxd = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;

// All numeric tolerances live here and are passed by value wherever a
// decision depends on them, so a report always pins the thresholds it used.
struct ToleranceConfig {
  double herm = 1e-10;   // Hermiticity, scaled by matrix dimension at use sites
  double trace = 1e-10;  // unit-trace / norm checks
  double psd = 1e-10;    // most negative eigenvalue tolerated before NotPSD
  double eig = 1e-9;     // spectral reconstruction residual, relative to ||A||_F
  double povm = 1e-9;    // POVM completeness / Kraus trace preservation
  double rank = 1e-10;   // eigenvalue-pair cutoff in the SLD solve
  double sld = 1e-8;     // SLD defining-equation residual / degeneracy flag
  double prob = 1e-12;   // outcome probabilities below this count as zero
  double opt = 1e-8;     // optimality-condition residual
  double bcast = 1e-6;   // per-party QFI deficit for the broadcast verdict
  double unif = 1e-4;    // uniformness ratio slack
  double prod = 1e-8;    // product-output check in the no-cloning audit
  double comm = 1e-10;   // reduced-state commutator residual
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct InvalidSubsystem : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };
struct NonSmoothPoint : Error { using Error::Error; };
struct DivergentFisher : Error { using Error::Error; };
struct ZeroInformation : Error { using Error::Error; };
struct NonIdentifiable : Error { using Error::Error; };
struct TooManyOutcomes : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };
struct NotProductOutput : Error { using Error::Error; };
struct NotUniformError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

inline double frobenius(const cmat& a) { return a.norm(); }

inline double herm_defect(const cmat& a) { return (a - a.adjoint()).norm(); }

inline cmat hermitize(const cmat& a) { return 0.5 * (a + a.adjoint()); }

inline cmat commutator(const cmat& a, const cmat& b) { return a * b - b * a; }

}  // namespace qfib
