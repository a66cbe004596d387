#pragma once

#include <cstdint>

#include "qfib/channels.hpp"
#include "qfib/fisher.hpp"
#include "qfib/qmat.hpp"
#include "qfib/rng.hpp"

namespace qfib {

cmat ginibre(int rows, int cols, Rng& rng);
cmat random_hermitian(int d, Rng& rng);
// QR of a Ginibre matrix with the phase convention fixed.
cmat haar_unitary(int d, Rng& rng);
// Hilbert-Schmidt ensemble, optionally mixed with identity to keep the
// spectrum away from zero.
DensityMatrix random_density(int d, Rng& rng, double identity_mix = 0.0,
                             const ToleranceConfig& tol = {});
PureState random_pure(const std::vector<int>& dims, Rng& rng,
                      const ToleranceConfig& tol = {});
POVM random_povm(int d, int n_outcomes, Rng& rng, const ToleranceConfig& tol = {});

// Stinespring sample: Haar unitary on system (x) environment, environment
// prepared in |0> and traced out.
KrausChannel random_cptp(int d, int env_dim, Rng& rng);

enum class FamilyKind { UnitaryOrbit, PureOrbit };

// Smooth single-piece family over [0, 2 pi]: rho_theta = U(theta) rho_0
// U(theta)^dag with U = exp(-i theta H), analytic derivative -i [H, rho].
ParametricFamily random_family(const std::vector<int>& dims, std::uint64_t seed,
                               FamilyKind kind = FamilyKind::UnitaryOrbit,
                               double identity_mix = 0.1,
                               const ToleranceConfig& tol = {});

}  // namespace qfib
