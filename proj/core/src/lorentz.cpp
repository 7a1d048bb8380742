#include "photonwave/lorentz.hpp"

#include <cmath>

namespace photonwave {

double LorentzPair::metric_defect() const {
  const Eigen::Matrix4d& eta = minkowski_metric();
  return (vec.transpose() * eta * vec - eta).cwiseAbs().maxCoeff();
}

LorentzPair identity_pair() { return LorentzPair{}; }

LorentzPair spin_rep(const Mat2& A) {
  const Complex det = A.determinant();
  if (std::abs(det - Complex(1.0)) > 1e-10)
    throw ValidationError("spin_rep: matrix is not in SL(2,C)");

  LorentzPair out;
  const Mat2 a_invdag = A.inverse().adjoint();
  out.spin.setZero();
  out.spin.topLeftCorner<2, 2>() = A;
  out.spin.bottomRightCorner<2, 2>() = a_invdag;
  out.spin_inv.setZero();
  out.spin_inv.topLeftCorner<2, 2>() = A.inverse();
  out.spin_inv.bottomRightCorner<2, 2>() = A.adjoint();

  // Column mu of Lambda solves sigma(Lambda e_mu) = A sigma(e_mu) A^dagger.
  for (int mu = 0; mu < 4; ++mu) {
    CVec4 e = CVec4::Zero();
    e(mu) = 1.0;
    const Mat2 m = A * sigma_map(e) * A.adjoint();
    auto [y, defect] = sigma_components(m);
    if (defect > 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff()))
      throw ValidationError("spin_rep: transformed frame vector is not Hermitian");
    out.vec.col(mu) = y.real();
  }
  return out;
}

LorentzPair parity_rep() {
  LorentzPair out;
  out.spin = gamma(0);
  out.spin_inv = gamma(0);
  out.vec = Eigen::Matrix4d::Identity();
  out.vec.diagonal() << 1, -1, -1, -1;
  return out;
}

LorentzPair time_rep() {
  LorentzPair out;
  out.spin.setZero();
  out.spin.topRightCorner<2, 2>() = Complex(0, -1) * Mat2::Identity();
  out.spin.bottomLeftCorner<2, 2>() = Complex(0, 1) * Mat2::Identity();
  out.spin_inv = out.spin;  // L_T^2 = 1
  out.vec = Eigen::Matrix4d::Identity();
  out.vec.diagonal() << -1, 1, 1, 1;
  return out;
}

LorentzPair compose(const LorentzPair& a, const LorentzPair& b) {
  LorentzPair out;
  out.spin = a.spin * b.spin;
  out.spin_inv = b.spin_inv * a.spin_inv;
  out.vec = a.vec * b.vec;
  return out;
}

LorentzPair inverse(const LorentzPair& l) {
  LorentzPair out;
  out.spin = l.spin_inv;
  out.spin_inv = l.spin;
  out.vec = l.vec.inverse();
  return out;
}

Mat4 apply_lorentz(const Mat4& psi, const LorentzPair& l) {
  return l.spin * psi * l.spin_inv;
}

Vec4 lorentz_apply_vec(const LorentzPair& l, const Vec4& x) { return l.vec * x; }

CVec4 lorentz_apply_vec(const LorentzPair& l, const CVec4& x) {
  return l.vec.cast<Complex>() * x;
}

LorentzPair boost_z(double rapidity) {
  Mat2 a = Mat2::Zero();
  a(0, 0) = std::exp(0.5 * rapidity);
  a(1, 1) = std::exp(-0.5 * rapidity);
  return spin_rep(a);
}

}  // namespace photonwave
