#include "qfib/broadcast.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qfib/parallel.hpp"

namespace qfib {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

DensityMatrix pure_density(const cvec& psi, std::vector<int> dims,
                           const ToleranceConfig& tol = {}) {
  return DensityMatrix(psi * psi.adjoint(), std::move(dims), tol);
}

cmat pure_drho(const cvec& psi, const cvec& dpsi) {
  return dpsi * psi.adjoint() + psi * dpsi.adjoint();
}

// Support / null projectors of rho at the SLD rank cutoff.
cmat null_projector(const Spectrum& s, double rank_cut) {
  const int d = static_cast<int>(s.eigenvalues.size());
  cmat n = cmat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (s.eigenvalues(i) <= rank_cut) {
      n += s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
    }
  }
  return n;
}

}  // namespace

ParametricFamily builtin_equatorial() {
  auto state = [](double theta) {
    cmat r(2, 2);
    const cxd e = std::exp(cxd(0.0, theta));
    r << 0.5, 0.5 * std::conj(e), 0.5 * e, 0.5;
    return DensityMatrix(r, {2});
  };
  auto deriv = [](double theta) {
    cmat d(2, 2);
    const cxd ie = cxd(0.0, 1.0) * std::exp(cxd(0.0, theta));
    d << 0.0, 0.5 * std::conj(ie), 0.5 * ie, 0.0;
    return d;
  };
  return ParametricFamily::analytic(Interval{0.0, 2.0 * kPi}, state, deriv);
}

ParametricFamily builtin_piecewise_xyz() {
  // +1 eigenvectors of the three Pauli matrices and their partners
  const double s = 1.0 / std::sqrt(2.0);
  cvec xp(2), xm(2), yp(2), ym(2), zp(2), zm(2);
  xp << s, s;
  xm << s, -s;
  yp << s, cxd(0.0, s);
  ym << s, cxd(0.0, -s);
  zp << 1.0, 0.0;
  zm << 0.0, 1.0;

  auto kron_vec = [](const cvec& a, const cvec& b) {
    cvec out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
  };

  struct Basis {
    cvec up;
    cvec dn;
  };
  auto make_piece = [kron_vec](Basis b, bool negate_theta, Interval range) {
    const cvec uu = kron_vec(b.up, b.up);
    const cvec dd = kron_vec(b.dn, b.dn);
    auto psi = [uu, dd](double t) { return cvec(std::cos(t) * uu + std::sin(t) * dd); };
    auto dpsi = [uu, dd](double t) { return cvec(-std::sin(t) * uu + std::cos(t) * dd); };
    auto state = [psi, negate_theta](double theta) {
      const double t = negate_theta ? -theta : theta;
      return pure_density(psi(t), {2, 2});
    };
    auto deriv = [psi, dpsi, negate_theta](double theta) {
      const double t = negate_theta ? -theta : theta;
      const double sign = negate_theta ? -1.0 : 1.0;
      return cmat(sign * pure_drho(psi(t), dpsi(t)));
    };
    return ParametricFamily::Piece{range, state, deriv};
  };

  std::vector<ParametricFamily::Piece> pieces;
  pieces.push_back(make_piece({yp, ym}, true, Interval{-kPi / 2.0, -kPi / 4.0}));
  pieces.push_back(make_piece({zp, zm}, false, Interval{-kPi / 4.0, kPi / 4.0}));
  pieces.push_back(make_piece({xp, xm}, false, Interval{kPi / 4.0, kPi / 2.0}));
  return ParametricFamily::piecewise(std::move(pieces));
}

ParametricFamily builtin_classical_diagonal() {
  auto state = [](double theta) {
    cmat r = cmat::Zero(2, 2);
    const double c = std::cos(0.5 * theta);
    const double sn = std::sin(0.5 * theta);
    r(0, 0) = c * c;
    r(1, 1) = sn * sn;
    return DensityMatrix(r, {2});
  };
  auto deriv = [](double theta) {
    cmat d = cmat::Zero(2, 2);
    d(0, 0) = -0.5 * std::sin(theta);
    d(1, 1) = 0.5 * std::sin(theta);
    return d;
  };
  return ParametricFamily::analytic(Interval{1e-3, kPi - 1e-3}, state, deriv);
}

BroadcastReport is_qfi_broadcast(const ParametricFamily& f,
                                 const std::vector<double>& grid,
                                 const ToleranceConfig& tol, int jobs) {
  const int n_parties = static_cast<int>(f.dims().size());
  if (n_parties < 2) {
    throw InvalidSubsystem("is_qfi_broadcast: family must carry >= 2 subsystems");
  }

  struct Row {
    double joint = 0.0;
    std::vector<double> party;
    bool degenerate = false;
  };
  std::vector<Row> rows(grid.size());

  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    const double theta = grid[i];
    const int piece = f.piece_index(theta);
    const DensityMatrix rho = f.state_at(theta, piece, tol);
    const cmat drho = f.derivative(theta, piece, tol);
    Row row;
    const SldResult joint = sld(rho, drho, tol);
    row.joint = joint.qfi;
    row.degenerate = joint.degenerate;
    for (int k = 0; k < n_parties; ++k) {
      const DensityMatrix rk = partial_trace(rho, {k}, tol);
      const cmat dk = partial_trace(drho, f.dims(), {k});
      const SldResult rs = sld(rk, dk, tol);
      row.party.push_back(rs.qfi);
      row.degenerate = row.degenerate || rs.degenerate;
    }
    rows[i] = std::move(row);
  });

  BroadcastReport rep;
  rep.theta_grid = grid;
  rep.party_qfi.assign(n_parties, std::vector<double>(grid.size(), 0.0));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rep.joint_qfi.push_back(rows[i].joint);
    for (int k = 0; k < n_parties; ++k) rep.party_qfi[k][i] = rows[i].party[k];
    if (rows[i].degenerate) rep.degenerate_points.push_back(grid[i]);
  }
  rep.input_qfi = rep.joint_qfi;

  double max_deficit = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (rows[i].degenerate) continue;
    for (int k = 0; k < n_parties; ++k) {
      max_deficit = std::max(max_deficit, std::abs(rows[i].party[k] - rows[i].joint));
    }
  }
  rep.max_deficit = max_deficit;
  rep.verdict = max_deficit <= tol.bcast ? BroadcastVerdict::Broadcast
                                         : BroadcastVerdict::NotBroadcast;
  return rep;
}

CloningAudit no_cloning_audit(const KrausChannel& ch, const ParametricFamily& f,
                              const std::vector<double>& grid,
                              const ToleranceConfig& tol) {
  if (ch.dims_out().size() != 2) {
    throw DimensionMismatch("no_cloning_audit: channel output must be bipartite");
  }
  if (ch.d_in() != f.dim()) {
    throw DimensionMismatch("no_cloning_audit: channel/family dimension mismatch");
  }

  const double delta = 1e-3;
  CloningAudit audit;
  for (double theta : grid) {
    const int piece = f.piece_index(theta);
    const DensityMatrix rho_in = f.state_at(theta, piece, tol);
    const cmat drho_in = f.derivative(theta, piece, tol);
    const DensityMatrix rho_out = apply(ch, rho_in, tol);
    const cmat drho_out = apply_matrix(ch, drho_in);

    const DensityMatrix ra = partial_trace(rho_out, {0}, tol);
    const DensityMatrix rb = partial_trace(rho_out, {1}, tol);
    if ((rho_out.mat() - tensor(ra.mat(), rb.mat())).norm() > tol.prod) {
      throw NotProductOutput("no_cloning_audit: channel output is not a product state");
    }

    CloningRow row;
    row.theta = theta;
    row.f_in = sld(rho_in, drho_in, tol).qfi;
    row.f_a = sld(ra, partial_trace(drho_out, ch.dims_out(), {0}), tol).qfi;
    row.f_b = sld(rb, partial_trace(drho_out, ch.dims_out(), {1}), tol).qfi;
    audit.rows.push_back(row);

    audit.max_sum_excess = std::max(audit.max_sum_excess, row.f_a + row.f_b - row.f_in);
    const double eta = 1e-3 * row.f_in;
    if (row.f_a >= (1.0 - delta) * row.f_in && row.f_b > eta) audit.theorem_holds = false;
    if (row.f_b >= (1.0 - delta) * row.f_in && row.f_a > eta) audit.theorem_holds = false;
  }
  return audit;
}

double check_sld_lift(const ParametricFamily& f, int party, double theta,
                      const ToleranceConfig& tol) {
  const std::vector<int>& dims = f.dims();
  if (party < 0 || party >= static_cast<int>(dims.size())) {
    throw InvalidSubsystem("check_sld_lift: party index out of range");
  }
  const int piece = f.piece_index(theta);
  const DensityMatrix rho = f.state_at(theta, piece, tol);
  const cmat drho = f.derivative(theta, piece, tol);

  const DensityMatrix rk = partial_trace(rho, {party}, tol);
  const cmat dk = partial_trace(drho, dims, {party});
  const cmat lk = sld(rk, dk, tol).sld;

  int d_pre = 1, d_post = 1;
  for (int s = 0; s < party; ++s) d_pre *= dims[s];
  for (int s = party + 1; s < static_cast<int>(dims.size()); ++s) d_post *= dims[s];
  const cmat lifted = tensor(tensor(cmat(cmat::Identity(d_pre, d_pre)), lk),
                             cmat(cmat::Identity(d_post, d_post)));

  Spectrum s = eig_hermitian(rho.mat(), tol);
  const cmat n = null_projector(s, tol.rank);
  const cmat solvable = drho - n * drho * n;
  return (0.5 * (lifted * rho.mat() + rho.mat() * lifted) - solvable).norm();
}

double check_reduced_commutativity(const ParametricFamily& f, int party, double theta,
                                   const ToleranceConfig& tol) {
  const std::vector<int>& dims = f.dims();
  if (party < 0 || party >= static_cast<int>(dims.size())) {
    throw InvalidSubsystem("check_reduced_commutativity: party index out of range");
  }
  const int piece = f.piece_index(theta);
  const DensityMatrix rk = partial_trace(f.state_at(theta, piece, tol), {party}, tol);
  const cmat dk = partial_trace(f.derivative(theta, piece, tol), dims, {party});
  return commutator(rk.mat(), dk).norm();
}

UniformnessReport check_uniform(const ParametricFamily& f,
                                const std::vector<double>& grid,
                                const std::vector<POVM>& candidates,
                                const ToleranceConfig& tol, int jobs) {
  UniformnessReport rep;

  for (double theta : grid) {
    if (f.is_piece_boundary(theta)) {
      throw Error("check_uniform: grid must avoid declared piece boundaries");
    }
    rep.points.push_back({theta, f.piece_index(theta), false});
  }
  // both one-sided probes at every interior junction
  for (int i = 0; i + 1 < f.n_pieces(); ++i) {
    const double b = f.piece(i).range.hi;
    rep.points.push_back({b, i, true});
    rep.points.push_back({b, i + 1, true});
  }

  const std::size_t n_pts = rep.points.size();
  std::vector<DensityMatrix> states;
  std::vector<cmat> derivs(n_pts);
  std::vector<double> qfis(n_pts, 0.0);
  std::vector<bool> excluded(n_pts, false);
  states.reserve(n_pts);
  for (std::size_t i = 0; i < n_pts; ++i) {
    const EvalPoint& e = rep.points[i];
    states.push_back(f.state_at(e.theta, e.piece, tol));
    derivs[i] = f.derivative(e.theta, e.piece, tol);
    const SldResult r = sld(states[i], derivs[i], tol);
    qfis[i] = r.qfi;
    if (r.degenerate || r.qfi <= 1e-14) {
      excluded[i] = true;
      rep.excluded_points.push_back(e.theta);
    }
  }

  std::vector<POVM> all = candidates;
  std::vector<int> point_of_candidate(candidates.size(), -1);
  for (std::size_t i = 0; i < n_pts; ++i) {
    all.push_back(optimal_measurement(states[i], derivs[i], tol));
    point_of_candidate.push_back(static_cast<int>(i));
  }

  // ratio[c][e] = F(rho_e | M_c) / QFI_e
  std::vector<std::vector<double>> ratio(all.size(), std::vector<double>(n_pts, 1.0));
  parallel_for(n_pts, jobs, [&](std::size_t e) {
    if (excluded[e]) return;
    for (std::size_t c = 0; c < all.size(); ++c) {
      ratio[c][e] = classical_fisher(states[e], derivs[e], all[c], tol) / qfis[e];
    }
  });

  auto min_ratio = [&](std::size_t c) {
    double m = 1.0;
    for (std::size_t e = 0; e < n_pts; ++e) {
      if (!excluded[e]) m = std::min(m, ratio[c][e]);
    }
    return m;
  };

  std::size_t best_c = 0;
  double best_min = -1.0;
  for (std::size_t c = 0; c < all.size(); ++c) {
    const double m = min_ratio(c);
    if (m > best_min) {
      best_min = m;
      best_c = c;
    }
    if (m >= 1.0 - tol.unif) {
      rep.candidate = all[c];
      rep.per_theta_ratio = ratio[c];
      rep.verdict = UniformVerdict::Uniform;
      return rep;
    }
  }

  rep.per_theta_ratio = ratio[best_c];
  // positive certificate: the optimal measurement of one point fails hard at
  // another; mere candidate exhaustion stays Inconclusive
  for (std::size_t c = candidates.size(); c < all.size(); ++c) {
    const int e1 = point_of_candidate[c];
    if (excluded[static_cast<std::size_t>(e1)]) continue;
    for (std::size_t e2 = 0; e2 < n_pts; ++e2) {
      if (excluded[e2]) continue;
      if (ratio[c][e2] < 1.0 - 10.0 * tol.unif) {
        rep.verdict = UniformVerdict::NotUniform;
        rep.certificate = {rep.points[static_cast<std::size_t>(e1)], rep.points[e2]};
        rep.certificate_ratio = ratio[c][e2];
        return rep;
      }
    }
  }
  rep.verdict = UniformVerdict::Inconclusive;
  return rep;
}

KrausChannel infinite_broadcast_channel(const ParametricFamily& f,
                                        const std::vector<double>& grid, int n_parties,
                                        const ToleranceConfig& tol) {
  const UniformnessReport rep = check_uniform(f, grid, {}, tol);
  if (rep.verdict != UniformVerdict::Uniform) {
    throw NotUniformError("infinite_broadcast_channel: family QFI is not uniform");
  }
  const POVM& m = *rep.candidate;
  return outcome_broadcast_channel(m, n_parties, m.n_outcomes(), tol);
}

namespace {

// rank-1 projective qubit measurement along the Bloch direction (alpha, beta)
std::array<cmat, 2> bloch_projectors(double alpha, double beta) {
  const double nx = std::sin(alpha) * std::cos(beta);
  const double ny = std::sin(alpha) * std::sin(beta);
  const double nz = std::cos(alpha);
  cmat ns(2, 2);
  ns << nz, cxd(nx, -ny), cxd(nx, ny), -nz;
  const cmat eye = cmat::Identity(2, 2);
  return {0.5 * (eye + ns), 0.5 * (eye - ns)};
}

double fisher_of_direction(const cmat& rho, const cmat& drho, double alpha, double beta,
                           const ToleranceConfig& tol) {
  const auto projs = bloch_projectors(alpha, beta);
  double acc = 0.0;
  for (const cmat& p : projs) {
    const double prob = (rho * p).trace().real();
    const double dp = (drho * p).trace().real();
    if (prob > tol.prob) acc += dp * dp / prob;
  }
  return acc;
}

double bhattacharyya_of_direction(const cmat& r1, const cmat& r2, double alpha,
                                  double beta) {
  const auto projs = bloch_projectors(alpha, beta);
  double acc = 0.0;
  for (const cmat& p : projs) {
    const double p1 = std::max(0.0, (r1 * p).trace().real());
    const double p2 = std::max(0.0, (r2 * p).trace().real());
    acc += std::sqrt(p1 * p2);
  }
  return acc;
}

// Minimal Nelder-Mead on two parameters.
template <typename Fn>
std::pair<double, std::array<double, 2>> nelder_mead_2d(Fn&& fn, std::array<double, 2> x0,
                                                        double scale, int iters) {
  using Pt = std::array<double, 2>;
  std::array<Pt, 3> xs = {Pt{x0[0], x0[1]}, Pt{x0[0] + scale, x0[1]},
                          Pt{x0[0], x0[1] + scale}};
  std::array<double, 3> fs = {fn(xs[0]), fn(xs[1]), fn(xs[2])};
  auto order = [&]() {
    std::array<int, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    std::array<Pt, 3> nxs = {xs[idx[0]], xs[idx[1]], xs[idx[2]]};
    std::array<double, 3> nfs = {fs[idx[0]], fs[idx[1]], fs[idx[2]]};
    xs = nxs;
    fs = nfs;
  };
  for (int it = 0; it < iters; ++it) {
    order();
    const Pt centroid = {0.5 * (xs[0][0] + xs[1][0]), 0.5 * (xs[0][1] + xs[1][1])};
    auto lerp = [&](double t) {
      return Pt{centroid[0] + t * (centroid[0] - xs[2][0]),
                centroid[1] + t * (centroid[1] - xs[2][1])};
    };
    const Pt refl = lerp(1.0);
    const double fr = fn(refl);
    if (fr < fs[0]) {
      const Pt exp_pt = lerp(2.0);
      const double fe = fn(exp_pt);
      xs[2] = fe < fr ? exp_pt : refl;
      fs[2] = std::min(fe, fr);
    } else if (fr < fs[1]) {
      xs[2] = refl;
      fs[2] = fr;
    } else {
      const Pt contr = lerp(-0.5);
      const double fc = fn(contr);
      if (fc < fs[2]) {
        xs[2] = contr;
        fs[2] = fc;
      } else {
        for (int i = 1; i < 3; ++i) {
          xs[i] = {0.5 * (xs[i][0] + xs[0][0]), 0.5 * (xs[i][1] + xs[0][1])};
          fs[i] = fn(xs[i]);
        }
      }
    }
  }
  order();
  return {fs[0], xs[0]};
}

}  // namespace

double qfi_brute_force_qubit(const ParametricFamily& f, double theta, int n_grid,
                             const ToleranceConfig& tol, int jobs) {
  if (f.dim() != 2) throw DimensionMismatch("qfi_brute_force_qubit: qubit families only");
  const int piece = f.piece_index(theta);
  const cmat rho = f.state_at(theta, piece, tol).mat();
  const cmat drho = f.derivative(theta, piece, tol);

  std::vector<double> values(static_cast<std::size_t>(n_grid) * n_grid);
  parallel_for(static_cast<std::size_t>(n_grid), jobs, [&](std::size_t i) {
    const double alpha = (static_cast<double>(i) + 0.5) / n_grid * (kPi / 2.0);
    for (int j = 0; j < n_grid; ++j) {
      const double beta = (j + 0.5) / n_grid * 2.0 * kPi;
      values[i * n_grid + j] = fisher_of_direction(rho, drho, alpha, beta, tol);
    }
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > values[best]) best = k;
  }
  const double a0 = (static_cast<double>(best / n_grid) + 0.5) / n_grid * (kPi / 2.0);
  const double b0 = (static_cast<double>(best % n_grid) + 0.5) / n_grid * 2.0 * kPi;

  auto neg = [&](std::array<double, 2> x) {
    return -fisher_of_direction(rho, drho, x[0], x[1], tol);
  };
  const double fmin = nelder_mead_2d(neg, {a0, b0}, kPi / (2.0 * n_grid), 200).first;
  return std::max(values[best], -fmin);
}

double statistical_distance_brute_force_qubit(const DensityMatrix& r1,
                                              const DensityMatrix& r2, int n_grid,
                                              const ToleranceConfig& tol, int jobs) {
  if (r1.dim() != 2 || r2.dim() != 2) {
    throw DimensionMismatch("statistical_distance_brute_force_qubit: qubits only");
  }
  (void)tol;
  std::vector<double> values(static_cast<std::size_t>(n_grid) * n_grid);
  parallel_for(static_cast<std::size_t>(n_grid), jobs, [&](std::size_t i) {
    const double alpha = (static_cast<double>(i) + 0.5) / n_grid * (kPi / 2.0);
    for (int j = 0; j < n_grid; ++j) {
      const double beta = (j + 0.5) / n_grid * 2.0 * kPi;
      values[i * n_grid + j] = bhattacharyya_of_direction(r1.mat(), r2.mat(), alpha, beta);
    }
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] < values[best]) best = k;
  }
  const double a0 = (static_cast<double>(best / n_grid) + 0.5) / n_grid * (kPi / 2.0);
  const double b0 = (static_cast<double>(best % n_grid) + 0.5) / n_grid * 2.0 * kPi;

  auto overlap = [&](std::array<double, 2> x) {
    return bhattacharyya_of_direction(r1.mat(), r2.mat(), x[0], x[1]);
  };
  const double omin = nelder_mead_2d(overlap, {a0, b0}, kPi / (2.0 * n_grid), 200).first;
  const double b = std::clamp(std::min(values[best], omin), 0.0, 1.0);
  return std::acos(b);
}

}  // namespace qfib
