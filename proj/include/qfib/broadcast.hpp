#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qfib/channels.hpp"
#include "qfib/fisher.hpp"

namespace qfib {

// Equatorial qubit states (|0> + e^{i theta}|1>)/sqrt(2) over [0, 2 pi),
// analytic derivative.
ParametricFamily builtin_equatorial();

// Two-qubit pure family psi_yy(-theta) / psi_zz(theta) / psi_xx(theta) on the
// three pieces [-pi/2,-pi/4], (-pi/4,pi/4], (pi/4,pi/2], where
// |psi_ii(t)> = cos t |ii> + sin t |ibar ibar>; continuous at the junctions.
ParametricFamily builtin_piecewise_xyz();

// Classical family diag(cos^2(theta/2), sin^2(theta/2)) over (0, pi);
// commuting, so its QFI is uniform via the computational basis.
ParametricFamily builtin_classical_diagonal();

enum class BroadcastVerdict { Broadcast, NotBroadcast };

struct BroadcastReport {
  std::vector<double> theta_grid;
  std::vector<double> input_qfi;               // defaults to joint_qfi
  std::vector<std::vector<double>> party_qfi;  // [party][theta index]
  std::vector<double> joint_qfi;
  BroadcastVerdict verdict = BroadcastVerdict::NotBroadcast;
  double max_deficit = 0.0;
  std::vector<double> degenerate_points;
};

// Joint and single-party reduced QFI over the grid; verdict Broadcast iff
// every party matches the joint value within tol.bcast away from
// degenerate-flagged points (which are excluded and listed).
BroadcastReport is_qfi_broadcast(const ParametricFamily& f,
                                 const std::vector<double>& grid,
                                 const ToleranceConfig& tol = {}, int jobs = 1);

struct CloningRow {
  double theta = 0.0;
  double f_in = 0.0;
  double f_a = 0.0;
  double f_b = 0.0;
};

struct CloningAudit {
  std::vector<CloningRow> rows;
  bool theorem_holds = true;   // F_a ~ F_in forces F_b ~ 0, both ways
  double max_sum_excess = 0.0; // max over grid of F_a + F_b - F_in
};

// Theorem-1 audit for channels with factorized outputs. Verifies the output
// really is a product state at each grid point first (NotProductOutput
// otherwise, since the theorem only speaks about that case).
CloningAudit no_cloning_audit(const KrausChannel& ch, const ParametricFamily& f,
                              const std::vector<double>& grid,
                              const ToleranceConfig& tol = {});

// Residual of the reduced-state SLD, lifted as L^(k) (x) 1, against the joint
// defining equation restricted to the solvable sector. Theorem 3 predicts
// <= tol.sld for QFI-broadcast families.
double check_sld_lift(const ParametricFamily& f, int party, double theta,
                      const ToleranceConfig& tol = {});

// || [rho^(k), d rho^(k)] ||_F.
double check_reduced_commutativity(const ParametricFamily& f, int party, double theta,
                                   const ToleranceConfig& tol = {});

enum class UniformVerdict { Uniform, NotUniform, Inconclusive };

struct EvalPoint {
  double theta = 0.0;
  int piece = 0;
  bool junction_side = false;
};

struct UniformnessReport {
  std::optional<POVM> candidate;           // set on Uniform
  std::vector<EvalPoint> points;           // grid plus one-sided junction probes
  std::vector<double> per_theta_ratio;     // best candidate's ratios, point order
  UniformVerdict verdict = UniformVerdict::Inconclusive;
  std::optional<std::pair<EvalPoint, EvalPoint>> certificate;  // NotUniform witness
  double certificate_ratio = 1.0;
  std::vector<double> excluded_points;     // degenerate or zero-QFI thetas
};

// Search for one measurement that is optimal everywhere. Candidates are the
// user-supplied POVMs followed by the SLD eigenbasis at every evaluation
// point. Evaluation points are the grid (which must avoid declared piece
// boundaries) plus, for piecewise families, both one-sided probes at each
// interior junction; this is where non-uniformness of the piecewise built-in
// lives. NotUniform needs the positive cross-point certificate: some point's
// optimal measurement drops below 1 - 10 tol.unif at another point.
UniformnessReport check_uniform(const ParametricFamily& f,
                                const std::vector<double>& grid,
                                const std::vector<POVM>& candidates = {},
                                const ToleranceConfig& tol = {}, int jobs = 1);

// Theorem-2 forward direction: requires check_uniform to succeed, then
// broadcasts outcomes of the uniform measurement to n parties.
KrausChannel infinite_broadcast_channel(const ParametricFamily& f,
                                        const std::vector<double>& grid, int n_parties,
                                        const ToleranceConfig& tol = {});

// Independent oracle for max_M F(rho_theta | M) over rank-1 projective qubit
// measurements: Bloch hemisphere grid followed by Nelder-Mead refinement.
double qfi_brute_force_qubit(const ParametricFamily& f, double theta, int n_grid,
                             const ToleranceConfig& tol = {}, int jobs = 1);

// Oracle for Eq.-style statistical distance: maximize arccos of the
// Bhattacharyya overlap over the same measurement grid.
double statistical_distance_brute_force_qubit(const DensityMatrix& r1,
                                              const DensityMatrix& r2, int n_grid,
                                              const ToleranceConfig& tol = {},
                                              int jobs = 1);

}  // namespace qfib
