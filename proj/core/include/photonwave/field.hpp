#pragma once

// Discretized photon wave function on a periodic grid: one rank-two
// bi-spinor (4x4 complex, trace-free diagonal blocks) per grid point,
// its frame-component decomposition, constructors and validation.

#include <cstdint>
#include <vector>

#include "photonwave/algebra.hpp"
#include "photonwave/grid.hpp"

namespace photonwave {

struct PhysicsParams {
  double hbar = 1.0;
  double c = 1.0;
  double m_flash = 1.0;

  void validate() const {
    if (!(hbar > 0) || !(c > 0) || !(m_flash > 0))
      throw ValidationError("physics: hbar, c, m_flash must be positive");
  }
  bool operator==(const PhysicsParams& o) const {
    return hbar == o.hbar && c == o.c && m_flash == o.m_flash;
  }
};

struct PhotonField {
  GridSpec grid;
  PhysicsParams physics;
  double time = 0.0;
  std::vector<Mat4> values;  // one bi-spinor per point, grid.index order

  static PhotonField zero(const GridSpec& grid, const PhysicsParams& physics = {});

  std::size_t size() const { return values.size(); }
  double max_abs() const;

  PhotonField& operator+=(const PhotonField& other);
  PhotonField& operator*=(const Complex& s);
};

PhotonField operator+(PhotonField a, const PhotonField& b);
PhotonField operator*(const Complex& s, PhotonField a);

/// Same shape as PhotonField but holding Fourier coefficients psi_hat(k),
/// indexed by raw FFT mode indices with the grid's index order.
struct ModeField {
  GridSpec grid;
  PhysicsParams physics;
  double time = 0.0;
  std::vector<Mat4> modes;
};

ModeField to_modes(const PhotonField& field);
PhotonField from_modes(const ModeField& modes);

// ---- Frame components ----------------------------------------------------

// psi_plus  =  i sigma.(e+ + i b+)         chi_plus  = phi+ 1 - sigma.a+
// psi_minus = -i sigma.(e- - i b-)         chi_minus = phi- 1 + sigma.a-
struct ComponentFields {
  GridSpec grid;
  std::vector<Vec3> e_plus, b_plus, e_minus, b_minus;  // real field strengths
  std::vector<Complex> phi_plus, phi_minus;            // complex scalar potentials
  std::vector<CVec3> a_plus, a_minus;                  // complex vector potentials

  static ComponentFields zero(const GridSpec& grid);
};

/// Build the bi-spinor field from components (shape-checked).
PhotonField assemble(const ComponentFields& c, const PhysicsParams& physics = {},
                     double time = 0.0);

/// Inverse of assemble. Throws ConstraintError if a diagonal block's trace
/// exceeds tol_trace relative to the field maximum.
ComponentFields disassemble(const PhotonField& psi, double tol_trace = 1e-10);

struct ValidationReport {
  double trace_linf = 0.0;           // max |tr diag block|, relative to max |psi|
  double transversality_linf = 0.0;  // max_k |k.f_hat| / (|k||f_hat| + eps)
};

/// Structural diagnostics (never throws).
ValidationReport validate(const PhotonField& psi);

// ---- Constructors ----------------------------------------------------------

enum class Chirality { plus, minus };

/// Single-mode solution. k must sit on the grid's Fourier lattice; the
/// polarization is projected orthogonal to k (error if nothing remains).
/// with_potentials fills the off-diagonal blocks with the minimal-norm
/// particular solution tied to the diagonal mode.
PhotonField plane_wave_state(const GridSpec& grid, const PhysicsParams& physics,
                             const Vec3& k, Chirality chirality, const CVec3& polarization,
                             bool with_potentials = true);

/// Band-limited Gaussian random transversal field, deterministic per seed.
/// Modes with |k| > spectrum_cutoff (and all Nyquist/zero modes) are empty.
/// Off-diagonal blocks carry the same per-mode particular solve as
/// plane_wave_state.
PhotonField random_field(std::uint64_t seed, const GridSpec& grid,
                         const PhysicsParams& physics, double spectrum_cutoff);

/// Helicity projector content of a diagonal 2x2 block: P_s = (1 + s k_hat.sigma)/2
/// applied on the left. Used by constructors and the dynamics residuals.
Mat2 helicity_project(const Mat2& block, const Vec3& khat, int s);

}  // namespace photonwave
