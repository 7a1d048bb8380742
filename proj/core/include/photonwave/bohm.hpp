#pragma once

// Guiding trajectories for the probability current: v = c j_vec / j^0,
// trilinear interpolation of the current components on the torus (ratio
// taken after interpolation, which preserves the causal bound under convex
// combination), classical RK4 in time with linear interpolation between
// snapshots, rejection sampling from rho, and Kolmogorov-Smirnov
// equivariance statistics.

#include <array>
#include <cstdint>
#include <vector>

#include "photonwave/currents.hpp"

namespace photonwave {

/// rho is (numerically) zero here; the guiding velocity is undefined.
class NodeRegionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GuidanceField {
  GridSpec grid;
  PhysicsParams physics;
  double t0 = 0.0;
  double dt_snap = 0.0;
  Vec4 X = Vec4::Zero();                // shared Killing vector (first snapshot)
  std::vector<CurrentField> currents;   // one per snapshot
  double rho_floor = 0.0;               // node threshold (absolute)

  double t_last() const { return t0 + dt_snap * (static_cast<double>(currents.size()) - 1.0); }
};

/// Precompute per-snapshot currents from equally spaced field snapshots.
/// X is taken from the first snapshot and reused for the whole series.
/// Throws NullTotalCurrentError if the total current is null.
GuidanceField build_guidance(const std::vector<PhotonField>& snapshots,
                             double rho_floor_rel = 1e-10);

/// Guiding velocity at (t, x); trilinear in space, linear in t between
/// snapshots. Throws NodeRegionError when rho is below the floor and
/// ValidationError when t is outside the snapshot span.
Vec3 velocity_at(const GuidanceField& gf, double t, const Vec3& x);

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec3> positions;   // wrapped into the box
  std::vector<Vec3> velocities;
  bool complete = true;          // false when a node region stopped it
};

struct Ensemble {
  std::vector<Trajectory> trajectories;
  std::uint64_t seed = 0;
};

/// RK4 transport of all starts from t0 through the bracketed span with step
/// dt. Node encounters trigger step halving (up to 8 times), then the
/// trajectory is flagged incomplete.
Ensemble integrate(const GuidanceField& gf, const std::vector<Vec3>& starts, double dt);

/// Number of recorded velocities with |v| > c (1 + tol).
std::size_t subluminal_violations(const Ensemble& ens, double c, double tol = 1e-9);

/// Rejection sampling from rho on the grid (per-cell trilinear envelope),
/// deterministic per seed. Throws NullTotalCurrentError via the current.
std::vector<Vec3> sample_rho(const PhotonField& psi, int n, std::uint64_t seed);

struct EquivarianceReport {
  std::array<double, 3> ks_stat = {0, 0, 0};
  std::array<double, 3> p_value = {1, 1, 1};
};

/// Compare per-axis marginals of the points against the marginals of the
/// field's rho (piecewise-linear marginal density of the trilinear
/// interpolant, evaluated exactly).
EquivarianceReport equivariance_stat(const std::vector<Vec3>& points, const PhotonField& psi);

}  // namespace photonwave
