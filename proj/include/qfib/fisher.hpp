#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qfib/qmat.hpp"
#include "qfib/types.hpp"

namespace qfib {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

// A parametric state family theta -> rho_theta over a closed domain, made of
// one or more smooth pieces. Each piece carries its own state map, valid on
// the closed piece interval, and optionally an analytic derivative map; when
// the derivative map is absent a second-order central difference (one-sided
// at piece boundaries) is used. Interior piece boundaries are owned by the
// piece on their left, matching how the built-ins declare their domains.
class ParametricFamily {
 public:
  using StateFn = std::function<DensityMatrix(double)>;
  using DerivFn = std::function<cmat(double)>;

  struct Piece {
    Interval range;
    StateFn state;
    DerivFn deriv;  // empty -> finite differences
  };

  static ParametricFamily analytic(Interval domain, StateFn state, DerivFn deriv);
  static ParametricFamily central_difference(Interval domain, StateFn state,
                                             double step = 1e-5);
  static ParametricFamily piecewise(std::vector<Piece> pieces, double step = 1e-5);

  Interval domain() const;
  int n_pieces() const { return static_cast<int>(pieces_.size()); }
  const Piece& piece(int i) const { return pieces_.at(i); }
  const std::vector<int>& dims() const { return dims_; }
  int dim() const;
  double fd_step() const { return step_; }

  // Owning piece of theta; throws OutOfDomain outside the domain.
  int piece_index(double theta) const;
  bool is_piece_boundary(double theta) const;

  DensityMatrix state_at(double theta, const ToleranceConfig& tol = {}) const;
  DensityMatrix state_at(double theta, int piece, const ToleranceConfig& tol = {}) const;

  // d rho / d theta, Hermitian and traceless within tolerances. Evaluation is
  // restricted to the given piece, one-sided at its closed endpoints.
  cmat derivative(double theta, const ToleranceConfig& tol = {}) const;
  cmat derivative(double theta, int piece, const ToleranceConfig& tol = {}) const;

 private:
  std::vector<Piece> pieces_;
  double step_ = 1e-5;
  std::vector<int> dims_;

  void finalize();
};

// Product family theta -> f(theta) (x) g(theta); both factors must share the
// same piece structure (or one of them must be single-piece spanning it).
ParametricFamily tensor_family(const ParametricFamily& f, const ParametricFamily& g,
                               const ToleranceConfig& tol = {});
ParametricFamily constant_family(const DensityMatrix& rho, Interval domain);
// Single-party reduced family: states by partial trace, derivatives by
// partial trace of the joint derivative (linearity; never re-differenced).
ParametricFamily reduced_family(const ParametricFamily& f, int party,
                                const ToleranceConfig& tol = {});

class POVM {
 public:
  POVM(std::vector<cmat> effects, std::vector<std::string> labels = {},
       const ToleranceConfig& tol = {});

  const std::vector<cmat>& effects() const { return effects_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int n_outcomes() const { return static_cast<int>(effects_.size()); }
  int dim() const { return static_cast<int>(effects_.front().rows()); }

 private:
  std::vector<cmat> effects_;
  std::vector<std::string> labels_;
};

struct SldResult {
  cmat sld;               // Hermitian L, support-restricted convention
  double qfi = 0.0;
  int support_rank = 0;
  double dropped_weight = 0.0;  // Frobenius weight of d rho in the null sector
  bool degenerate = false;
};

// Solve d rho = (L rho + rho L)/2 in the eigenbasis of rho, keeping only
// eigenvalue pairs with lambda_i + lambda_j > tol.rank.
SldResult sld(const DensityMatrix& rho, const cmat& drho, const ToleranceConfig& tol = {});

SldResult sld_at(const ParametricFamily& f, double theta, const ToleranceConfig& tol = {});
SldResult sld_at(const ParametricFamily& f, double theta, int piece,
                 const ToleranceConfig& tol = {});

double qfi(const ParametricFamily& f, double theta, const ToleranceConfig& tol = {});

double classical_fisher(const DensityMatrix& rho, const cmat& drho, const POVM& m,
                        const ToleranceConfig& tol = {});
double classical_fisher(const ParametricFamily& f, double theta, const POVM& m,
                        const ToleranceConfig& tol = {});

// Rank-1 projectors onto the eigenvectors of the SLD.
POVM optimal_measurement(const DensityMatrix& rho, const cmat& drho,
                         const ToleranceConfig& tol = {});

struct OptimalityCheck {
  bool optimal = false;
  double max_residual = 0.0;
  std::vector<double> residuals;
};

// Braunstein-Caves optimality condition
//   M_j^{1/2} L rho^{1/2} = u_j M_j^{1/2} rho^{1/2}
// with u_j the logarithmic derivative of the outcome probability, computed
// from the same SLD via d p_j = tr((L rho + rho L) M_j)/2.
OptimalityCheck check_optimality_condition(const DensityMatrix& rho, const cmat& sld_op,
                                           const POVM& m, const ToleranceConfig& tol = {});

double statistical_distance(const DensityMatrix& r1, const DensityMatrix& r2,
                            const ToleranceConfig& tol = {});

// Cramer-Rao bound 1/(n F); throws ZeroInformation for vanishing F.
double crb(double qfi_value, std::int64_t n_samples);

struct EstimationReport {
  double theta_true = 0.0;
  std::int64_t n_samples = 0;
  std::int64_t n_trials = 0;
  double estimator_variance = 0.0;
  double crb = 0.0;
  std::uint64_t rng_seed = 0;
};

struct EstimationOptions {
  // Half-width of the likelihood search window around theta_true, clamped to
  // the smooth piece. Keeps the search inside the identifiable region of
  // periodic designs.
  double search_halfwidth = 1.5707963267948966;
  int grid_points = 512;
  double golden_xtol = 1e-10;
  int jobs = 1;
};

// Monte Carlo estimation experiment: i.i.d. outcomes from p_{theta_true},
// per-trial maximum-likelihood estimate by grid + golden-section search,
// deterministic given the seed (trial t uses Rng::derive(seed, t)).
EstimationReport simulate_estimation(const ParametricFamily& f, const POVM& m,
                                     double theta_true, std::int64_t n_samples,
                                     std::int64_t n_trials, std::uint64_t seed,
                                     const ToleranceConfig& tol = {},
                                     const EstimationOptions& opts = {});

}  // namespace qfib
