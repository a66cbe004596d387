#include "qfib/channels.hpp"

#include <cmath>

namespace qfib {

namespace {

int product(const std::vector<int>& dims) {
  int d = 1;
  for (int x : dims) d *= x;
  return d;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<cmat> kraus, std::vector<int> dims_in,
                           std::vector<int> dims_out)
    : kraus_(std::move(kraus)), dims_in_(std::move(dims_in)), dims_out_(std::move(dims_out)) {
  const int din = product(dims_in_);
  const int dout = product(dims_out_);
  for (const cmat& k : kraus_) {
    if (k.rows() != dout || k.cols() != din) {
      throw DimensionMismatch("Kraus operator shape does not match channel dims");
    }
  }
}

int KrausChannel::d_in() const { return product(dims_in_); }
int KrausChannel::d_out() const { return product(dims_out_); }

CptpCheck is_cptp(const KrausChannel& ch, const ToleranceConfig& tol) {
  const int din = ch.d_in();
  cmat acc = cmat::Zero(din, din);
  for (const cmat& k : ch.kraus()) acc += k.adjoint() * k;
  const double res = (acc - cmat::Identity(din, din)).norm();
  return CptpCheck{!ch.kraus().empty() && res <= tol.povm, res};
}

cmat apply_matrix(const KrausChannel& ch, const cmat& m) {
  if (m.rows() != ch.d_in() || m.cols() != ch.d_in()) {
    throw DimensionMismatch("apply: input dimension mismatch");
  }
  cmat out = cmat::Zero(ch.d_out(), ch.d_out());
  for (const cmat& k : ch.kraus()) out += k * m * k.adjoint();
  return out;
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho,
                    const ToleranceConfig& tol) {
  if (rho.dim() != ch.d_in()) throw DimensionMismatch("apply: input dimension mismatch");
  return DensityMatrix(apply_matrix(ch, rho.mat()), ch.dims_out(), tol);
}

cmat adjoint_apply(const KrausChannel& ch, const cmat& effect) {
  if (effect.rows() != ch.d_out() || effect.cols() != ch.d_out()) {
    throw DimensionMismatch("adjoint_apply: effect dimension mismatch");
  }
  cmat out = cmat::Zero(ch.d_in(), ch.d_in());
  for (const cmat& k : ch.kraus()) out += k.adjoint() * effect * k;
  return out;
}

POVM adjoint_apply(const KrausChannel& ch, const POVM& m, const ToleranceConfig& tol) {
  std::vector<cmat> effects;
  for (const cmat& e : m.effects()) effects.push_back(adjoint_apply(ch, e));
  return POVM(std::move(effects), m.labels(), tol);
}

KrausChannel identity_channel(std::vector<int> dims) {
  const int d = product(dims);
  std::vector<cmat> k{cmat::Identity(d, d)};
  return KrausChannel(std::move(k), dims, dims);
}

KrausChannel unitary_channel(const cmat& u, std::vector<int> dims) {
  if (u.rows() != u.cols() || u.rows() != product(dims)) {
    throw DimensionMismatch("unitary_channel: dimension mismatch");
  }
  std::vector<cmat> k{u};
  return KrausChannel(std::move(k), dims, dims);
}

KrausChannel depolarizing_channel(double p) {
  if (p < 0.0 || p > 4.0 / 3.0) throw Error("depolarizing_channel: p out of range");
  cmat sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, cxd(0, -1), cxd(0, 1), 0;
  sz << 1, 0, 0, -1;
  std::vector<cmat> k;
  k.push_back(std::sqrt(1.0 - 3.0 * p / 4.0) * cmat::Identity(2, 2));
  k.push_back(std::sqrt(p / 4.0) * sx);
  k.push_back(std::sqrt(p / 4.0) * sy);
  k.push_back(std::sqrt(p / 4.0) * sz);
  return KrausChannel(std::move(k), {2}, {2});
}

KrausChannel dephasing_channel(int d) {
  std::vector<cmat> k;
  for (int j = 0; j < d; ++j) {
    cmat proj = cmat::Zero(d, d);
    proj(j, j) = 1.0;
    k.push_back(proj);
  }
  return KrausChannel(std::move(k), {d}, {d});
}

KrausChannel outcome_broadcast_channel(const POVM& m, int n_parties, int pointer_dim,
                                       const ToleranceConfig& tol) {
  if (n_parties < 1) throw Error("outcome_broadcast_channel: need n_parties >= 1");
  if (m.n_outcomes() > pointer_dim) {
    throw TooManyOutcomes("outcome_broadcast_channel: more outcomes than pointer states");
  }
  const int din = m.dim();
  int dout = 1;
  for (int i = 0; i < n_parties; ++i) dout *= pointer_dim;

  std::vector<cmat> kraus;
  for (int j = 0; j < m.n_outcomes(); ++j) {
    const cmat root = psd_sqrt(m.effects()[j], tol);
    // flat index of |j>^(x n) in the pointer register
    long target = 0;
    for (int i = 0; i < n_parties; ++i) target = target * pointer_dim + j;
    for (int phi = 0; phi < din; ++phi) {
      cmat k = cmat::Zero(dout, din);
      k.row(target) = root.row(phi);
      kraus.push_back(std::move(k));
    }
  }
  std::vector<int> dims_out(n_parties, pointer_dim);
  return KrausChannel(std::move(kraus), {din}, std::move(dims_out));
}

KrausChannel hadamard_cnot_broadcaster() {
  const double s = 1.0 / std::sqrt(2.0);
  cmat v = cmat::Zero(4, 2);
  // columns: CNOT (H|c> (x) |0>) for c = 0, 1
  v(0, 0) = s;
  v(3, 0) = s;
  v(0, 1) = s;
  v(3, 1) = -s;
  std::vector<cmat> k{v};
  return KrausChannel(std::move(k), {2}, {2, 2});
}

KrausChannel measure_prepare_channel(const POVM& m,
                                     const std::vector<DensityMatrix>& preparations,
                                     const ToleranceConfig& tol) {
  if (static_cast<int>(preparations.size()) != m.n_outcomes()) {
    throw ArityMismatch("measure_prepare_channel: one preparation per outcome");
  }
  const std::vector<int>& dims_out = preparations.front().dims();
  for (const DensityMatrix& p : preparations) {
    if (p.dims() != dims_out) {
      throw DimensionMismatch("measure_prepare_channel: preparations must share dims");
    }
  }
  const int din = m.dim();
  const int dout = preparations.front().dim();

  std::vector<cmat> kraus;
  for (int j = 0; j < m.n_outcomes(); ++j) {
    const cmat root = psd_sqrt(m.effects()[j], tol);
    Spectrum sp = eig_hermitian(preparations[j].mat(), tol);
    for (int r = 0; r < dout; ++r) {
      const double w = std::max(0.0, sp.eigenvalues(r));
      if (w <= tol.prob) continue;
      const cvec v = std::sqrt(w) * sp.eigenvectors.col(r);
      for (int phi = 0; phi < din; ++phi) {
        // |v_r> <phi| sqrt(M_j)
        cmat k = v * root.row(phi);
        kraus.push_back(std::move(k));
      }
    }
  }
  return KrausChannel(std::move(kraus), {din}, dims_out);
}

KrausChannel channel_tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<cmat> kraus;
  for (const cmat& ka : a.kraus()) {
    for (const cmat& kb : b.kraus()) kraus.push_back(tensor(ka, kb));
  }
  std::vector<int> din = a.dims_in();
  din.insert(din.end(), b.dims_in().begin(), b.dims_in().end());
  std::vector<int> dout = a.dims_out();
  dout.insert(dout.end(), b.dims_out().begin(), b.dims_out().end());
  return KrausChannel(std::move(kraus), std::move(din), std::move(dout));
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (second.d_in() != first.d_out()) {
    throw DimensionMismatch("compose: inner dimensions do not match");
  }
  std::vector<cmat> kraus;
  for (const cmat& k2 : second.kraus()) {
    for (const cmat& k1 : first.kraus()) kraus.push_back(k2 * k1);
  }
  return KrausChannel(std::move(kraus), first.dims_in(), second.dims_out());
}

KrausChannel tensor_with_constant(const DensityMatrix& tau, std::vector<int> dims_in,
                                  bool constant_first, const ToleranceConfig& tol) {
  const int din = product(dims_in);
  Spectrum sp = eig_hermitian(tau.mat(), tol);
  std::vector<cmat> kraus;
  const cmat eye = cmat::Identity(din, din);
  for (int r = 0; r < tau.dim(); ++r) {
    const double w = std::max(0.0, sp.eigenvalues(r));
    if (w <= tol.prob) continue;
    const cmat col = std::sqrt(w) * sp.eigenvectors.col(r);
    kraus.push_back(constant_first ? tensor(col, eye) : tensor(eye, col));
  }
  std::vector<int> dims_out;
  if (constant_first) {
    dims_out = tau.dims();
    dims_out.insert(dims_out.end(), dims_in.begin(), dims_in.end());
  } else {
    dims_out = dims_in;
    dims_out.insert(dims_out.end(), tau.dims().begin(), tau.dims().end());
  }
  return KrausChannel(std::move(kraus), std::move(dims_in), std::move(dims_out));
}

ParametricFamily through_channel(const KrausChannel& ch, const ParametricFamily& f,
                                 const ToleranceConfig& tol) {
  if (ch.d_in() != f.dim()) throw DimensionMismatch("through_channel: dimension mismatch");
  std::vector<ParametricFamily::Piece> pieces;
  for (int i = 0; i < f.n_pieces(); ++i) {
    auto state = [ch, f, i, tol](double t) {
      return apply(ch, f.state_at(t, i, tol), tol);
    };
    auto deriv = [ch, f, i, tol](double t) {
      return apply_matrix(ch, f.derivative(t, i, tol));
    };
    pieces.push_back({f.piece(i).range, state, deriv});
  }
  return ParametricFamily::piecewise(std::move(pieces), f.fd_step());
}

}  // namespace qfib
