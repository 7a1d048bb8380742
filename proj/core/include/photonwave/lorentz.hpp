#pragma once

// Spinorial representation of the full Lorentz group on rank-two bi-spinors:
// L_A = blockdiag(A, A^{-dagger}) for A in SL(2,C), plus the parity and
// time-reversal generators. Lambda is recovered from A by solving
// sigma(Lambda e_mu) = A sigma(e_mu) A^dagger column by column.

#include <Eigen/Dense>

#include "photonwave/algebra.hpp"

namespace photonwave {

struct LorentzPair {
  Mat4 spin = Mat4::Identity();                       // L
  Mat4 spin_inv = Mat4::Identity();                   // L^{-1}
  Eigen::Matrix4d vec = Eigen::Matrix4d::Identity();  // Lambda

  /// max |Lambda^T eta Lambda - eta| entry.
  double metric_defect() const;
};

LorentzPair identity_pair();

/// Proper-group element from A in SL(2,C). Throws if |det A - 1| > 1e-10.
LorentzPair spin_rep(const Mat2& A);

/// Space inversion: L_P = gamma^0, Lambda = diag(1,-1,-1,-1).
LorentzPair parity_rep();

/// Time reversal: L_T = offdiag(-i, i), Lambda = diag(-1,1,1,1).
LorentzPair time_rep();

/// Group product (a then b acts as a.b on bi-spinors: L = La Lb).
LorentzPair compose(const LorentzPair& a, const LorentzPair& b);

LorentzPair inverse(const LorentzPair& l);

/// psi -> L psi L^{-1}. Commutes with project_diag.
Mat4 apply_lorentz(const Mat4& psi, const LorentzPair& l);

/// Lambda x for real or complex four-vectors.
Vec4 lorentz_apply_vec(const LorentzPair& l, const Vec4& x);
CVec4 lorentz_apply_vec(const LorentzPair& l, const CVec4& x);

/// Pure boost with rapidity lambda along the z axis (handy in tests).
LorentzPair boost_z(double rapidity);

}  // namespace photonwave
