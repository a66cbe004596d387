#include "qfib/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qfib/parallel.hpp"
#include "qfib/rng.hpp"

namespace qfib {

namespace {

constexpr double kBoundaryEps = 1e-12;

cmat symmetrized(const cmat& d) { return hermitize(d); }

void validate_derivative(const cmat& d, int dim, const ToleranceConfig& tol) {
  if (herm_defect(d) > tol.herm * dim * std::max(1.0, d.norm())) {
    throw NotHermitian("family derivative is not Hermitian within tolerance");
  }
  if (std::abs(d.trace().real()) > 1e-8 || std::abs(d.trace().imag()) > 1e-8) {
    throw Error("family derivative trace differs from 0 beyond 1e-8");
  }
}

}  // namespace

ParametricFamily ParametricFamily::analytic(Interval domain, StateFn state, DerivFn deriv) {
  ParametricFamily f;
  f.pieces_.push_back(Piece{domain, std::move(state), std::move(deriv)});
  f.finalize();
  return f;
}

ParametricFamily ParametricFamily::central_difference(Interval domain, StateFn state,
                                                      double step) {
  ParametricFamily f;
  f.pieces_.push_back(Piece{domain, std::move(state), nullptr});
  f.step_ = step;
  f.finalize();
  return f;
}

ParametricFamily ParametricFamily::piecewise(std::vector<Piece> pieces, double step) {
  if (pieces.empty()) throw Error("piecewise family needs at least one piece");
  ParametricFamily f;
  f.pieces_ = std::move(pieces);
  f.step_ = step;
  f.finalize();
  return f;
}

void ParametricFamily::finalize() {
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    if (pieces_[i].range.hi > pieces_[i + 1].range.lo + kBoundaryEps ||
        pieces_[i].range.hi < pieces_[i + 1].range.lo - kBoundaryEps) {
      throw Error("smooth pieces must be contiguous");
    }
  }
  const Interval d0 = pieces_.front().range;
  dims_ = pieces_.front().state(0.5 * (d0.lo + d0.hi)).dims();
}

Interval ParametricFamily::domain() const {
  return Interval{pieces_.front().range.lo, pieces_.back().range.hi};
}

int ParametricFamily::dim() const {
  int d = 1;
  for (int x : dims_) d *= x;
  return d;
}

int ParametricFamily::piece_index(double theta) const {
  const Interval dom = domain();
  if (theta < dom.lo - kBoundaryEps || theta > dom.hi + kBoundaryEps) {
    throw OutOfDomain("theta outside the family domain");
  }
  // boundaries belong to the piece on their left
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (theta <= pieces_[i].range.hi + kBoundaryEps) return static_cast<int>(i);
  }
  return static_cast<int>(pieces_.size()) - 1;
}

bool ParametricFamily::is_piece_boundary(double theta) const {
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    if (std::abs(theta - pieces_[i].range.hi) <= kBoundaryEps) return true;
  }
  return false;
}

DensityMatrix ParametricFamily::state_at(double theta, const ToleranceConfig& tol) const {
  return state_at(theta, piece_index(theta), tol);
}

DensityMatrix ParametricFamily::state_at(double theta, int piece,
                                         const ToleranceConfig& tol) const {
  (void)tol;
  const Piece& p = pieces_.at(piece);
  if (theta < p.range.lo - kBoundaryEps || theta > p.range.hi + kBoundaryEps) {
    throw OutOfDomain("theta outside the requested smooth piece");
  }
  return p.state(theta);
}

cmat ParametricFamily::derivative(double theta, const ToleranceConfig& tol) const {
  return derivative(theta, piece_index(theta), tol);
}

cmat ParametricFamily::derivative(double theta, int piece, const ToleranceConfig& tol) const {
  const Piece& p = pieces_.at(piece);
  if (theta < p.range.lo - kBoundaryEps || theta > p.range.hi + kBoundaryEps) {
    throw OutOfDomain("theta outside the requested smooth piece");
  }
  cmat d;
  if (p.deriv) {
    d = p.deriv(theta);
  } else {
    const double h = step_;
    if (p.range.width() < 2.0 * h) {
      throw NonSmoothPoint("smooth piece too narrow for a finite-difference stencil");
    }
    auto rho = [&](double t) { return p.state(t).mat(); };
    if (theta - h >= p.range.lo && theta + h <= p.range.hi) {
      d = (rho(theta + h) - rho(theta - h)) / (2.0 * h);
    } else if (theta + 2.0 * h <= p.range.hi) {
      // one-sided second-order forward stencil at the left boundary
      d = (-3.0 * rho(theta) + 4.0 * rho(theta + h) - rho(theta + 2.0 * h)) / (2.0 * h);
    } else if (theta - 2.0 * h >= p.range.lo) {
      d = (3.0 * rho(theta) - 4.0 * rho(theta - h) + rho(theta - 2.0 * h)) / (2.0 * h);
    } else {
      throw NonSmoothPoint("no one-sided stencil fits inside the smooth piece");
    }
    d = symmetrized(d);
  }
  validate_derivative(d, dim(), tol);
  return d;
}

ParametricFamily tensor_family(const ParametricFamily& f, const ParametricFamily& g,
                               const ToleranceConfig& tol) {
  std::vector<ParametricFamily::Piece> pieces;
  const bool g_spans = g.n_pieces() == 1;
  if (!g_spans && g.n_pieces() != f.n_pieces()) {
    throw Error("tensor_family: factors must share the piece structure");
  }
  for (int i = 0; i < f.n_pieces(); ++i) {
    const int gi = g_spans ? 0 : i;
    auto state = [f, g, i, gi, tol](double t) {
      return tensor(f.state_at(t, i, tol), g.state_at(t, gi, tol), tol);
    };
    auto deriv = [f, g, i, gi, tol](double t) {
      const cmat a = f.state_at(t, i, tol).mat();
      const cmat b = g.state_at(t, gi, tol).mat();
      return cmat(tensor(f.derivative(t, i, tol), b) + tensor(a, g.derivative(t, gi, tol)));
    };
    pieces.push_back({f.piece(i).range, state, deriv});
  }
  return ParametricFamily::piecewise(std::move(pieces), f.fd_step());
}

ParametricFamily constant_family(const DensityMatrix& rho, Interval domain) {
  const int d = rho.dim();
  return ParametricFamily::analytic(
      domain, [rho](double) { return rho; },
      [d](double) { return cmat(cmat::Zero(d, d)); });
}

ParametricFamily reduced_family(const ParametricFamily& f, int party,
                                const ToleranceConfig& tol) {
  if (party < 0 || party >= static_cast<int>(f.dims().size())) {
    throw InvalidSubsystem("reduced_family: party index out of range");
  }
  const std::vector<int> dims = f.dims();
  const std::vector<int> keep{party};
  std::vector<ParametricFamily::Piece> pieces;
  for (int i = 0; i < f.n_pieces(); ++i) {
    auto state = [f, keep, i, tol](double t) {
      return partial_trace(f.state_at(t, i, tol), keep, tol);
    };
    auto deriv = [f, dims, keep, i, tol](double t) {
      return partial_trace(f.derivative(t, i, tol), dims, keep);
    };
    pieces.push_back({f.piece(i).range, state, deriv});
  }
  return ParametricFamily::piecewise(std::move(pieces), f.fd_step());
}

POVM::POVM(std::vector<cmat> effects, std::vector<std::string> labels,
           const ToleranceConfig& tol)
    : effects_(std::move(effects)), labels_(std::move(labels)) {
  if (effects_.empty()) throw Error("POVM needs at least one effect");
  const Eigen::Index d = effects_.front().rows();
  cmat sum = cmat::Zero(d, d);
  for (const cmat& e : effects_) {
    if (e.rows() != d || e.cols() != d) {
      throw DimensionMismatch("POVM effects must share one dimension");
    }
    Eigen::SelfAdjointEigenSolver<cmat> es(hermitize(e), Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -tol.psd) throw NotPSD("POVM effect is not PSD");
    sum += e;
  }
  if ((sum - cmat::Identity(d, d)).norm() > tol.povm) {
    throw Error("POVM effects do not sum to identity within tolerance");
  }
  if (labels_.empty()) {
    for (std::size_t j = 0; j < effects_.size(); ++j) labels_.push_back(std::to_string(j));
  }
  if (labels_.size() != effects_.size()) {
    throw ArityMismatch("POVM labels must match effects");
  }
}

SldResult sld(const DensityMatrix& rho, const cmat& drho, const ToleranceConfig& tol) {
  const int d = rho.dim();
  if (drho.rows() != d || drho.cols() != d) {
    throw DimensionMismatch("sld: derivative dimension mismatch");
  }
  if (herm_defect(drho) > tol.herm * d * std::max(1.0, drho.norm())) {
    throw NotHermitian("sld: derivative is not Hermitian");
  }
  Spectrum s = eig_hermitian(rho.mat(), tol);
  const cmat dr = s.eigenvectors.adjoint() * hermitize(drho) * s.eigenvectors;

  cmat lt = cmat::Zero(d, d);
  double qfi_acc = 0.0;
  double dropped_sq = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double lam = s.eigenvalues(i) + s.eigenvalues(j);
      const double w2 = std::norm(dr(i, j));
      if (lam > tol.rank) {
        lt(i, j) = 2.0 * dr(i, j) / lam;
        qfi_acc += 2.0 * w2 / lam;
      } else {
        dropped_sq += w2;
      }
    }
  }

  SldResult out;
  out.sld = hermitize(s.eigenvectors * lt * s.eigenvectors.adjoint());
  out.qfi = qfi_acc;
  out.support_rank = static_cast<int>(
      (s.eigenvalues.array() > tol.rank).count());
  out.dropped_weight = std::sqrt(dropped_sq);
  out.degenerate = out.dropped_weight > tol.sld;
  return out;
}

SldResult sld_at(const ParametricFamily& f, double theta, const ToleranceConfig& tol) {
  return sld_at(f, theta, f.piece_index(theta), tol);
}

SldResult sld_at(const ParametricFamily& f, double theta, int piece,
                 const ToleranceConfig& tol) {
  return sld(f.state_at(theta, piece, tol), f.derivative(theta, piece, tol), tol);
}

double qfi(const ParametricFamily& f, double theta, const ToleranceConfig& tol) {
  return sld_at(f, theta, tol).qfi;
}

double classical_fisher(const DensityMatrix& rho, const cmat& drho, const POVM& m,
                        const ToleranceConfig& tol) {
  if (m.dim() != rho.dim()) {
    throw DimensionMismatch("classical_fisher: POVM dimension mismatch");
  }
  const double dp_floor = std::sqrt(tol.prob);
  double acc = 0.0;
  for (const cmat& e : m.effects()) {
    const double p = (rho.mat() * e).trace().real();
    const double dp = (drho * e).trace().real();
    if (p > tol.prob) {
      acc += dp * dp / p;
    } else if (std::abs(dp) > dp_floor) {
      throw DivergentFisher("outcome with vanishing probability but nonzero derivative");
    }
    // p <= prob and |dp| <= sqrt(prob): 0/0 -> 0
  }
  return acc;
}

double classical_fisher(const ParametricFamily& f, double theta, const POVM& m,
                        const ToleranceConfig& tol) {
  return classical_fisher(f.state_at(theta, tol), f.derivative(theta, tol), m, tol);
}

POVM optimal_measurement(const DensityMatrix& rho, const cmat& drho,
                         const ToleranceConfig& tol) {
  SldResult r = sld(rho, drho, tol);
  Spectrum s = eig_hermitian(r.sld, tol);
  std::vector<cmat> effects;
  for (int i = 0; i < rho.dim(); ++i) {
    const cvec v = s.eigenvectors.col(i);
    effects.push_back(v * v.adjoint());
  }
  return POVM(std::move(effects), {}, tol);
}

OptimalityCheck check_optimality_condition(const DensityMatrix& rho, const cmat& sld_op,
                                           const POVM& m, const ToleranceConfig& tol) {
  const int d = rho.dim();
  if (m.dim() != d || sld_op.rows() != d || sld_op.cols() != d) {
    throw DimensionMismatch("check_optimality_condition: dimension mismatch");
  }
  if (herm_defect(sld_op) > tol.herm * d * std::max(1.0, sld_op.norm())) {
    throw NotHermitian("check_optimality_condition: L is not Hermitian");
  }
  const cmat rho_half = psd_sqrt(rho.mat(), tol);
  const cmat sym = 0.5 * (sld_op * rho.mat() + rho.mat() * sld_op);

  OptimalityCheck out;
  for (const cmat& e : m.effects()) {
    const cmat m_half = psd_sqrt(e, tol);
    const double p = (rho.mat() * e).trace().real();
    const double dp = (sym * e).trace().real();
    const double u = p > tol.prob ? dp / p : 0.0;
    const double res = (m_half * sld_op * rho_half - u * m_half * rho_half).norm();
    out.residuals.push_back(res);
    out.max_residual = std::max(out.max_residual, res);
  }
  out.optimal = out.max_residual <= tol.opt;
  return out;
}

double statistical_distance(const DensityMatrix& r1, const DensityMatrix& r2,
                            const ToleranceConfig& tol) {
  return std::acos(fidelity(r1, r2, tol));
}

double crb(double qfi_value, std::int64_t n_samples) {
  if (n_samples < 1) throw Error("crb: need at least one sample");
  if (qfi_value <= std::numeric_limits<double>::epsilon()) {
    throw ZeroInformation("crb: vanishing Fisher information");
  }
  return 1.0 / (static_cast<double>(n_samples) * qfi_value);
}

namespace {

std::vector<double> outcome_probs(const ParametricFamily& f, double theta, int piece,
                                  const POVM& m, const ToleranceConfig& tol) {
  const cmat rho = f.state_at(theta, piece, tol).mat();
  std::vector<double> p;
  p.reserve(m.n_outcomes());
  for (const cmat& e : m.effects()) p.push_back(std::max(0.0, (rho * e).trace().real()));
  return p;
}

double log_likelihood(const std::vector<std::int64_t>& counts,
                      const std::vector<double>& p) {
  double ll = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] > 0) ll += static_cast<double>(counts[j]) * std::log(std::max(p[j], 1e-300));
  }
  return ll;
}

}  // namespace

EstimationReport simulate_estimation(const ParametricFamily& f, const POVM& m,
                                     double theta_true, std::int64_t n_samples,
                                     std::int64_t n_trials, std::uint64_t seed,
                                     const ToleranceConfig& tol,
                                     const EstimationOptions& opts) {
  if (n_samples < 1 || n_trials < 2) {
    throw Error("simulate_estimation: need n_samples >= 1 and n_trials >= 2");
  }
  const int piece = f.piece_index(theta_true);
  const cmat drho = f.derivative(theta_true, piece, tol);
  const DensityMatrix rho0 = f.state_at(theta_true, piece, tol);

  std::vector<double> p0;
  bool any_dependence = false;
  for (const cmat& e : m.effects()) {
    p0.push_back(std::max(0.0, (rho0.mat() * e).trace().real()));
    if (std::abs((drho * e).trace().real()) > std::sqrt(tol.prob)) any_dependence = true;
  }
  if (!any_dependence) {
    throw NonIdentifiable("all outcome probabilities are parameter-independent");
  }
  const double fisher = classical_fisher(rho0, drho, m, tol);
  if (fisher <= std::numeric_limits<double>::epsilon()) {
    throw NonIdentifiable("classical Fisher information vanishes at theta_true");
  }

  const Interval pr = f.piece(piece).range;
  const double lo = std::max(pr.lo, theta_true - opts.search_halfwidth);
  const double hi = std::min(pr.hi, theta_true + opts.search_halfwidth);

  std::vector<double> estimates(static_cast<std::size_t>(n_trials));
  parallel_for(static_cast<std::size_t>(n_trials), opts.jobs, [&](std::size_t t) {
    Rng rng = Rng::derive(seed, t);
    std::vector<std::int64_t> counts(p0.size(), 0);
    for (std::int64_t s = 0; s < n_samples; ++s) {
      const double u = rng.uniform();
      double acc = 0.0;
      std::size_t pick = p0.size() - 1;
      for (std::size_t j = 0; j < p0.size(); ++j) {
        acc += p0[j];
        if (u < acc) {
          pick = j;
          break;
        }
      }
      ++counts[pick];
    }

    auto nll = [&](double th) {
      return -log_likelihood(counts, outcome_probs(f, th, piece, m, tol));
    };

    // coarse grid, then golden-section inside the bracketing cell
    const int n = opts.grid_points;
    double best = lo, best_val = nll(lo);
    for (int i = 1; i < n; ++i) {
      const double th = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
      const double v = nll(th);
      if (v < best_val) {
        best_val = v;
        best = th;
      }
    }
    const double cell = (hi - lo) / (n - 1);
    double a = std::max(lo, best - cell);
    double b = std::min(hi, best + cell);
    const double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = nll(x1), f2 = nll(x2);
    while (b - a > opts.golden_xtol) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - invphi * (b - a);
        f1 = nll(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + invphi * (b - a);
        f2 = nll(x2);
      }
    }
    estimates[t] = 0.5 * (a + b);
  });

  double mean = 0.0;
  for (double e : estimates) mean += e;
  mean /= static_cast<double>(n_trials);
  double var = 0.0;
  for (double e : estimates) var += (e - mean) * (e - mean);
  var /= static_cast<double>(n_trials - 1);

  EstimationReport rep;
  rep.theta_true = theta_true;
  rep.n_samples = n_samples;
  rep.n_trials = n_trials;
  rep.estimator_variance = var;
  rep.crb = crb(fisher, n_samples);
  rep.rng_seed = seed;
  return rep;
}

}  // namespace qfib
