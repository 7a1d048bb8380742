#pragma once

// Exact per-Fourier-mode time evolution. The full mode Hamiltonian is
//   H(k) psi_hat = hbar c k_j (gamma^0 gamma^j) psi_hat
//                + m c^2 gamma^0 Pi(psi_hat),
// a 16x16 superoperator on the flattened bi-spinor satisfying
// H(k)^2 = (hbar c |k|)^2 on every mode (nilpotent of index 2 at k = 0),
// so the step propagator has the closed form
//   exp(-i H dt / hbar) = cos(c|k| dt) - i sin(c|k| dt) H / (hbar c |k|).
// The diagonal variant drops the mass term (massless transport, Hermitian
// on diagonal blocks under <A,B> = tr(A^dag B)).

#include <functional>
#include <vector>

#include "photonwave/field.hpp"

namespace photonwave {

enum class OperatorKind { full, diagonal };

struct ModeOperator {
  Vec3 k = Vec3::Zero();
  OperatorKind kind = OperatorKind::full;
  Eigen::Matrix<Complex, 16, 16> matrix;  // row-major flattening of the 4x4
};

/// 16x16 mode Hamiltonian at wave vector k.
ModeOperator mode_hamiltonian(const Vec3& k, OperatorKind kind,
                              const PhysicsParams& physics);

/// exp(-i matrix dt / hbar), exact via the closed form (k != 0) or the
/// terminating nilpotent series (k = 0).
Eigen::Matrix<Complex, 16, 16> propagator(const ModeOperator& h, double dt,
                                          const PhysicsParams& physics);

/// Apply one exact step to every mode in place (block fast path, no 16x16).
void advance_modes(ModeField& modes, OperatorKind kind, double dt);

struct EvolutionPlan {
  double dt = 0.0;
  int steps = 0;
  OperatorKind which = OperatorKind::full;
  int output_stride = 1;  // emit every stride-th step (plus t0 and the end)

  void validate() const {
    if (!(dt > 0)) throw ValidationError("evolution: dt must be positive");
    if (steps < 1) throw ValidationError("evolution: steps must be >= 1");
    if (output_stride < 1) throw ValidationError("evolution: stride must be >= 1");
  }
};

/// Exact spectral evolution; the sink receives the initial state, every
/// stride-th snapshot and the final state.
void evolve(const PhotonField& psi, const EvolutionPlan& plan,
            const std::function<void(const PhotonField&)>& sink);

std::vector<PhotonField> evolve_collect(const PhotonField& psi, const EvolutionPlan& plan);

/// d psi / dt = -(i/hbar) H psi, evaluated spectrally (no finite differences).
PhotonField time_derivative(const PhotonField& psi, OperatorKind kind = OperatorKind::full);

/// Spectral spatial derivative along one axis.
PhotonField spatial_derivative(const PhotonField& psi, int axis);

// ---- Residuals ------------------------------------------------------------

struct ResidualReport {
  double linf = 0.0;
  double l2 = 0.0;
};

/// Residual of the plane-wave ansatz psi = V exp(i(k.x - w t)):
///   (-hbar w / c) gamma^0 V + hbar k_j gamma^j V + m c Pi V,
/// zero iff the mode Hamiltonian satisfies H V = hbar w V.
Mat4 mode_equation_residual(double omega, const Vec3& k, const Mat4& V,
                            const PhysicsParams& physics);

/// Stationary-structure residual of a snapshot, per Fourier mode. Each mode
/// is split into the two natural frequency branches w = +-c|k| (helicity
/// eigenspaces of the transport operator); within each branch the
/// off-diagonal blocks must balance the mass term sourced by the diagonal
/// blocks. Pure-gauge directions (sigma_0 and sigma.k_hat components of the
/// off-diagonal blocks, arbitrary constant off-diagonal at k = 0) are
/// projected out, so the report is invariant under valid gauge transforms.
/// Normalized by (hbar|k| + m c) times the largest mode amplitude.
ResidualReport equation_residual(const PhotonField& psi);

}  // namespace photonwave
