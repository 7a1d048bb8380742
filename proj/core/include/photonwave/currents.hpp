#pragma once

// Conserved objects: Riesz tensor and its chiral halves, canonical and
// symmetrized stress tensors of both Lagrangians, helicity currents, the
// conserved integrals (E, P, pi, norm), the probability current j = tau X
// with X = pi/|pi|^2, continuity residuals, and the dominant-energy check.
//
// Index conventions: tau and the currents are stored with upper indices;
// the Noether stresses with two lower indices. Time derivatives entering
// any stress are obtained from the mode Hamiltonian, never by differencing.
// Integrals are plain Riemann sums (spectrally exact on the torus) with
// compensated serial summation, so results are thread-count independent.

#include <cstdint>
#include <string>
#include <vector>

#include "photonwave/dynamics.hpp"
#include "photonwave/field.hpp"

namespace photonwave {

enum class StressKind { tau, tau_plus, tau_minus, T, T_prime, theta, theta_prime };

struct StressField {
  GridSpec grid;
  StressKind kind = StressKind::tau;
  std::vector<Eigen::Matrix4d> t;
  double imag_residual = 0.0;  // largest imaginary part dropped, relative

  double symmetry_defect() const;
};

struct CurrentField {
  GridSpec grid;
  std::vector<Vec4> j;  // contravariant components
};

struct ConservedSet {
  double energy = 0.0;              // integral of Theta'_00
  Vec3 momentum = Vec3::Zero();     // integral of Theta'_{0k}
  Vec4 pi = Vec4::Zero();           // integral of tau^{0 mu}
  double norm = 0.0;                // <phi|phi> of the diagonal part
};

/// Electromagnetic-type stress of a real two-form,
/// T^{mu nu} = f^{mu l} f^nu_l - (1/4) eta^{mu nu} f_{ab} f^{ab}.
Eigen::Matrix4d em_stress_tensor(const TwoForm& f);

/// Riesz tensor tau^{mu nu} = (1/4) Re tr(bar(phi) gamma^mu phi gamma^nu)
/// with phi = Pi psi (trace route).
StressField riesz_tensor(const PhotonField& psi);

/// Same tensor assembled from the frame components f+- (independent route).
StressField riesz_tensor_components(const PhotonField& psi);

/// Chiral halves tau+- from the 2x2 blocks; tau = tau+ + tau-.
StressField riesz_tensor_chiral(const PhotonField& psi, Chirality chirality);

struct NoetherStresses {
  StressField T;            // canonical stress of the gauge-invariant Lagrangian
  StressField T_prime;      // canonical stress of the vanishing-on-solutions one
  StressField theta;        // symmetrization of T
  StressField theta_prime;  // symmetrization of T'
};

NoetherStresses noether_stresses(const PhotonField& psi);

struct LagrangianDensities {
  GridSpec grid;
  std::vector<double> l_prime;     // zero along solutions
  std::vector<double> l_gaugeinv;  // gauge-invariant density
};

LagrangianDensities lagrangian_densities(const PhotonField& psi);

/// j_Z^mu = (1/16 pi) tr(bar(psi) gamma^mu psi G), G = a 1 + i b gamma^5.
CurrentField helicity_current(const PhotonField& psi, double a, double b);

ConservedSet conserved_set(const PhotonField& psi);

/// X = pi / |pi|^2. Throws NullTotalCurrentError when
/// |pi|^2 <= eps (pi^0)^2 (the null pathway is not implemented).
Vec4 killing_X(const ConservedSet& set, double eps = 1e-8);

struct ProbabilityCurrent {
  CurrentField current;     // j^mu = tau^{mu nu} eta_{nu l} X^l
  std::vector<double> rho;  // j^0 / c
  Vec4 X = Vec4::Zero();
};

ProbabilityCurrent probability_current(const PhotonField& psi);

/// tau contracted with an arbitrary constant four-vector (the R_(mu)
/// currents are frame-vector contractions).
CurrentField contract_stress(const StressField& tau_upper, const Vec4& y);

struct ContinuityReport {
  double linf = 0.0;
  double l2 = 0.0;
};

/// (1/c) dt j^0 + div j over >= 3 equally spaced snapshots; the time
/// derivative is a centered difference (second order in dt), the divergence
/// spectral. The same contraction vector is used for every snapshot.
ContinuityReport continuity_residual(const std::vector<PhotonField>& series, double dt,
                                     const Vec4& contraction);

/// Contraction with X computed from the first snapshot.
ContinuityReport continuity_residual(const std::vector<PhotonField>& series, double dt);

struct DominantEnergyReport {
  double min_quadratic_margin = 0.0;  // min of X.tau.X over points and samples
  double min_causal_margin = 0.0;     // min of (tau X)^0 - |spatial(tau X)|
  std::uint64_t samples = 0;
  // Both margins normalized by the largest tau^{00} on the grid.
};

/// Random future-causal contractions (every eighth sample exactly null).
DominantEnergyReport dominant_energy_check(const StressField& tau_upper, int n_samples,
                                           std::uint64_t seed);

/// <phi_1|phi_2> = integral of tr((Pi psi_1)^dag (Pi psi_2)).
Complex inner_product(const PhotonField& a, const PhotonField& b);

}  // namespace photonwave
