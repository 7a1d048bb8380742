#pragma once

// Complexified spacetime algebra Cl(1,3) as concrete 4x4 complex matrices
// (Weyl basis), the Pauli layer underneath it, and the vector / two-form
// <-> spinor correspondence maps.
//
// Conventions used throughout the library:
//   metric        eta = diag(1,-1,-1,-1)
//   gamma^0       offdiag(1,1), gamma^k offdiag(-sigma_k, sigma_k)
//   gamma^5       diag(1,1,-1,-1) = i g0 g1 g2 g3
//   sigma(x)      x^0 sigma_0 + x^k sigma_k       (sigma_0 = 1)
//   sigma'(x)     x^0 sigma_0 - x^k sigma_k
//   block layout  psi = [[psi_plus, chi_minus], [chi_plus, psi_minus]]
//   Levi-Civita   eps_{0123} = -1 (so eps^{0123} = +1)

#include <array>
#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "photonwave/errors.hpp"

namespace photonwave {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Vec4 = Eigen::Vector4d;
using CVec4 = Eigen::Vector4cd;

// ---- Minkowski metric -------------------------------------------------

inline const Eigen::Matrix4d& minkowski_metric() {
  static const Eigen::Matrix4d eta = [] {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m.diagonal() << 1.0, -1.0, -1.0, -1.0;
    return m;
  }();
  return eta;
}

inline Complex minkowski_dot(const CVec4& x, const CVec4& y) {
  return x(0) * y(0) - x(1) * y(1) - x(2) * y(2) - x(3) * y(3);
}

inline double minkowski_dot(const Vec4& x, const Vec4& y) {
  return x(0) * y(0) - x(1) * y(1) - x(2) * y(2) - x(3) * y(3);
}

// ---- Pauli layer -------------------------------------------------------

/// Pauli matrix sigma_k, k in 1..3.
const Mat2& pauli(int k);

/// sigma(x) = x^0 1 + x^k sigma_k. Hermitian for real x.
Mat2 sigma_map(const CVec4& x);

/// sigma'(x) = x^0 1 - x^k sigma_k. Hermitian for real x.
Mat2 sigma_prime_map(const CVec4& x);

/// sigma . v for a spatial 3-vector.
Mat2 sigma_dot(const CVec3& v);

/// Solve sigma(y) = m for y (unique; exact for any 2x2 m).
/// Returns y and the Hermiticity defect of m (zero iff y is real).
std::pair<CVec4, double> sigma_components(const Mat2& m);

// ---- Gamma layer -------------------------------------------------------

/// Weyl-representation gamma^mu, mu in 0..3. Usage error outside the range.
const Mat4& gamma(int mu);

/// gamma^5 = diag(1,1,-1,-1).
const Mat4& gamma5();

/// Chiral projections Pi_+ = diag(1,1,0,0), Pi_- = diag(0,0,1,1).
const Mat4& projection(int sign);

/// Two-sided block projection  Pi psi = Pi_+ psi Pi_+ + Pi_- psi Pi_-.
/// Keeps the diagonal 2x2 blocks, zeroes the off-diagonal ones.
Mat4 project_diag(const Mat4& psi);

/// Off-diagonal complement (1 - Pi) psi.
Mat4 project_offdiag(const Mat4& psi);

/// Scalar part a_S = tr(a) / 4.
Complex scalar_part(const Mat4& a);

/// Dirac adjoint  bar(a) = gamma^0 a^dagger gamma^0 (an involution).
Mat4 dirac_adjoint(const Mat4& a);

/// gamma(x) = gamma_mu x^mu (indices lowered with eta), i.e.
/// x^0 gamma^0 - x^k gamma^k. Satisfies gamma(x)^2 = eta(x,x) 1.
Mat4 gamma_slash(const CVec4& x);

// ---- 2x2 block access on the 4x4 layer ---------------------------------

inline Mat2 block_psi_plus(const Mat4& m) { return m.topLeftCorner<2, 2>(); }
inline Mat2 block_chi_minus(const Mat4& m) { return m.topRightCorner<2, 2>(); }
inline Mat2 block_chi_plus(const Mat4& m) { return m.bottomLeftCorner<2, 2>(); }
inline Mat2 block_psi_minus(const Mat4& m) { return m.bottomRightCorner<2, 2>(); }

Mat4 from_blocks(const Mat2& psi_plus, const Mat2& chi_minus,
                 const Mat2& chi_plus, const Mat2& psi_minus);

// ---- Two-forms ----------------------------------------------------------

/// Antisymmetric rank-two tensor f_{mu nu} with complex entries allowed.
struct TwoForm {
  Mat4 f = Mat4::Zero();  // covariant components f_{mu nu}

  /// Largest |f + f^T| entry; exact antisymmetry means zero.
  double antisymmetry_defect() const;
  /// Contravariant components f^{mu nu}.
  Mat4 upper() const;
};

/// Throws ValidationError if f is not antisymmetric to tol.
void require_antisymmetric(const TwoForm& f, double tol = 1e-12);

/// Levi-Civita symbol value for covariant indices, eps_{0123} = -1.
int levi_civita(int a, int b, int c, int d);

/// Faraday-style two-form with f_{0k} = e^k and f_{ij} = -eps_{ijk} b^k,
/// equivalently f^{0k} = -e^k and (*f)^{0k} = -b^k.
TwoForm two_form_from_eb(const CVec3& e, const CVec3& b);

/// Inverse of two_form_from_eb: returns (e, b).
std::pair<CVec3, CVec3> eb_from_two_form(const TwoForm& f);

/// Hodge star, (*f)_{mu nu} = (1/2) eps_{mu nu a b} f^{a b}. Maps
/// (e, b) -> (b, -e) and satisfies ** f = -f.
TwoForm hodge_star(const TwoForm& f);

/// Complex dual  d f = i * f. Idempotent on the self-dual part.
TwoForm hodge_dual(const TwoForm& f);

/// Self-dual / anti-self-dual split: returns (f + i*f, f - i*f), whose
/// average reproduces f.
std::pair<TwoForm, TwoForm> sd_asd_split(const TwoForm& f);

/// Sigma(f): traceless rank-two spinor depending only on the self-dual part.
/// Normalised so that Sigma(two_form_from_eb(e, b)) = i sigma.(e + i b).
Mat2 Sigma_map(const TwoForm& f);

/// Sigma'(f): depends only on the anti-self-dual part;
/// Sigma'(two_form_from_eb(e, b)) = -i sigma.(e - i b) and for real f
/// equals Sigma(f)^dagger.
Mat2 Sigma_prime_map(const TwoForm& f);

}  // namespace photonwave
