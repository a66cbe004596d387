#pragma once

#include <vector>

#include "qfib/fisher.hpp"
#include "qfib/qmat.hpp"
#include "qfib/types.hpp"

namespace qfib {

// CPTP map in Kraus form; operators may be rectangular (d_out x d_in), so
// isometric embeddings are ordinary channels. Construction checks shapes
// only; trace preservation is the is_cptp op, because invalid Kraus lists
// must remain representable for it to report on.
class KrausChannel {
 public:
  KrausChannel(std::vector<cmat> kraus, std::vector<int> dims_in,
               std::vector<int> dims_out);

  const std::vector<cmat>& kraus() const { return kraus_; }
  const std::vector<int>& dims_in() const { return dims_in_; }
  const std::vector<int>& dims_out() const { return dims_out_; }
  int d_in() const;
  int d_out() const;

 private:
  std::vector<cmat> kraus_;
  std::vector<int> dims_in_, dims_out_;
};

struct CptpCheck {
  bool trace_preserving = false;
  double residual = 0.0;  // || sum K^dag K - I ||_F
};

CptpCheck is_cptp(const KrausChannel& ch, const ToleranceConfig& tol = {});

// Schrodinger action sum_k K rho K^dag on an arbitrary matrix (linear) or a
// validated density matrix.
cmat apply_matrix(const KrausChannel& ch, const cmat& m);
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho,
                    const ToleranceConfig& tol = {});

// Heisenberg dual sum_k K^dag M K; maps identity to identity for TP channels.
cmat adjoint_apply(const KrausChannel& ch, const cmat& effect);
POVM adjoint_apply(const KrausChannel& ch, const POVM& m, const ToleranceConfig& tol = {});

KrausChannel identity_channel(std::vector<int> dims);
KrausChannel unitary_channel(const cmat& u, std::vector<int> dims);
KrausChannel depolarizing_channel(double p);
KrausChannel dephasing_channel(int d);

// Measure with m at a fixed parameter point and hand each of n parties a
// pointer copy |j><j| of the outcome:
//   sigma -> sum_j tr(sigma M_j) (|j><j|)^(x n).
KrausChannel outcome_broadcast_channel(const POVM& m, int n_parties, int pointer_dim,
                                       const ToleranceConfig& tol = {});

// Hadamard on the input qubit, then CNOT onto a fresh |0> target: a single
// isometric Kraus operator from dim 2 to dim 4.
KrausChannel hadamard_cnot_broadcaster();

// rho -> sum_j tr(rho M_j) prep_j.
KrausChannel measure_prepare_channel(const POVM& m,
                                     const std::vector<DensityMatrix>& preparations,
                                     const ToleranceConfig& tol = {});

KrausChannel channel_tensor(const KrausChannel& a, const KrausChannel& b);

// second(first(rho)); Kraus products.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);

// sigma -> sigma (x) tau (or tau (x) sigma when constant_first).
KrausChannel tensor_with_constant(const DensityMatrix& tau, std::vector<int> dims_in,
                                  bool constant_first, const ToleranceConfig& tol = {});

// Push a family through a channel; derivatives map by linearity.
ParametricFamily through_channel(const KrausChannel& ch, const ParametricFamily& f,
                                 const ToleranceConfig& tol = {});

}  // namespace qfib
