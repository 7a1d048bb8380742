#pragma once

// Independent spectral reference solver for the source-free system
//   dt e = c curl b,  dt b = -c curl e,  div e = div b = 0.
// Each Fourier mode rotates exactly in its transversal plane:
//   e(t) = cos(c|k|t) e + i sin(c|k|t) k_hat x b
//   b(t) = cos(c|k|t) b - i sin(c|k|t) k_hat x e.
// Deliberately built only on the FFT layer (no bi-spinor machinery), so it
// can serve as an oracle for the diagonal-sector photon evolution.

#include <functional>
#include <vector>

#include "photonwave/grid.hpp"
#include "photonwave/errors.hpp"

#include <Eigen/Dense>

namespace photonwave {

struct MaxwellState {
  GridSpec grid;
  double time = 0.0;
  std::vector<Eigen::Vector3d> e, b;

  static MaxwellState zero(const GridSpec& grid);
};

/// Spectral L-inf of (div e, div b), normalized by max |k||field|.
double maxwell_divergence_linf(const MaxwellState& s);

/// Remove longitudinal content mode by mode.
MaxwellState maxwell_project_divergence_free(const MaxwellState& s);

/// Exact evolution; throws PreconditionError if the initial divergence
/// residual exceeds 1e-8. The sink receives the initial state and every step.
void maxwell_evolve(const MaxwellState& initial, double c, double dt, int steps,
                    const std::function<void(const MaxwellState&)>& sink);

std::vector<MaxwellState> maxwell_evolve_collect(const MaxwellState& initial, double c,
                                                 double dt, int steps);

}  // namespace photonwave
