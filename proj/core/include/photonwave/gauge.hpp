#pragma once

// Gauge transformations psi -> psi + (1 - Pi) Upsilon with Upsilon solving
// the massless mode equation. A single-time generator snapshot is
// representable when each off-diagonal mode block lies in
// span{sigma_0, sigma.k_hat} (scalar potential plus longitudinal vector
// potential); such content splits uniquely into the two +-c|k| frequency
// branches, never touches the diagonal blocks, the field strengths, or any
// gauge-invariant current.

#include <cstdint>

#include "photonwave/field.hpp"

namespace photonwave {

/// Worst per-mode distance of the off-diagonal blocks from the admissible
/// gauge subspace, relative to the generator amplitude (0 for the zero
/// generator). Diagonal blocks are ignored (they are discarded on use).
double gauge_check_residual(const PhotonField& upsilon);

/// psi + (1 - Pi) Upsilon. Throws PreconditionError if the generator fails
/// the massless-mode check beyond tol.
PhotonField gauge_transform(const PhotonField& psi, const PhotonField& upsilon,
                            double tol = 1e-8);

/// Advance a valid generator by dt under its own massless dynamics
/// (branch phases exp(-i s c|k| dt); the k = 0 mode is constant).
PhotonField gauge_evolve(const PhotonField& upsilon, double dt, double tol = 1e-8);

/// Random admissible generator, band-limited, deterministic per seed.
PhotonField random_gauge_generator(std::uint64_t seed, const GridSpec& grid,
                                   const PhysicsParams& physics, double spectrum_cutoff);

}  // namespace photonwave
