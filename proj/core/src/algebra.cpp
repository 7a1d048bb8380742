#include "photonwave/algebra.hpp"

namespace photonwave {

namespace {
const Complex kI(0.0, 1.0);
}

// ---- Pauli layer --------------------------------------------------------

const Mat2& pauli(int k) {
  static const std::array<Mat2, 3> sigmas = [] {
    std::array<Mat2, 3> s;
    s[0] << 0, 1, 1, 0;
    s[1] << 0, Complex(0, -1), Complex(0, 1), 0;
    s[2] << 1, 0, 0, -1;
    return s;
  }();
  if (k < 1 || k > 3) throw ValidationError("pauli: index must be 1..3");
  return sigmas[static_cast<std::size_t>(k - 1)];
}

Mat2 sigma_dot(const CVec3& v) {
  Mat2 m;
  m(0, 0) = v(2);
  m(0, 1) = v(0) - kI * v(1);
  m(1, 0) = v(0) + kI * v(1);
  m(1, 1) = -v(2);
  return m;
}

Mat2 sigma_map(const CVec4& x) {
  return x(0) * Mat2::Identity() + sigma_dot(x.tail<3>());
}

Mat2 sigma_prime_map(const CVec4& x) {
  return x(0) * Mat2::Identity() - sigma_dot(x.tail<3>());
}

std::pair<CVec4, double> sigma_components(const Mat2& m) {
  CVec4 y;
  y(0) = 0.5 * (m(0, 0) + m(1, 1));
  y(3) = 0.5 * (m(0, 0) - m(1, 1));
  y(1) = 0.5 * (m(0, 1) + m(1, 0));
  y(2) = 0.5 * kI * (m(0, 1) - m(1, 0));
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return {y, defect};
}

// ---- Gamma layer --------------------------------------------------------

const Mat4& gamma(int mu) {
  static const std::array<Mat4, 4> gs = [] {
    std::array<Mat4, 4> g;
    for (auto& m : g) m = Mat4::Zero();
    g[0].topRightCorner<2, 2>() = Mat2::Identity();
    g[0].bottomLeftCorner<2, 2>() = Mat2::Identity();
    for (int k = 1; k <= 3; ++k) {
      g[static_cast<std::size_t>(k)].topRightCorner<2, 2>() = -pauli(k);
      g[static_cast<std::size_t>(k)].bottomLeftCorner<2, 2>() = pauli(k);
    }
    return g;
  }();
  if (mu < 0 || mu > 3) throw ValidationError("gamma: index must be 0..3");
  return gs[static_cast<std::size_t>(mu)];
}

const Mat4& gamma5() {
  static const Mat4 g5 = [] {
    Mat4 m = Mat4::Zero();
    m.diagonal() << 1, 1, -1, -1;
    return m;
  }();
  return g5;
}

const Mat4& projection(int sign) {
  static const Mat4 plus = 0.5 * (Mat4::Identity() + gamma5());
  static const Mat4 minus = 0.5 * (Mat4::Identity() - gamma5());
  if (sign > 0) return plus;
  if (sign < 0) return minus;
  throw ValidationError("projection: sign must be nonzero");
}

Mat4 project_diag(const Mat4& psi) {
  Mat4 out = Mat4::Zero();
  out.topLeftCorner<2, 2>() = psi.topLeftCorner<2, 2>();
  out.bottomRightCorner<2, 2>() = psi.bottomRightCorner<2, 2>();
  return out;
}

Mat4 project_offdiag(const Mat4& psi) {
  Mat4 out = Mat4::Zero();
  out.topRightCorner<2, 2>() = psi.topRightCorner<2, 2>();
  out.bottomLeftCorner<2, 2>() = psi.bottomLeftCorner<2, 2>();
  return out;
}

Complex scalar_part(const Mat4& a) { return 0.25 * a.trace(); }

Mat4 dirac_adjoint(const Mat4& a) {
  return gamma(0) * a.adjoint() * gamma(0);
}

Mat4 gamma_slash(const CVec4& x) {
  return x(0) * gamma(0) - x(1) * gamma(1) - x(2) * gamma(2) - x(3) * gamma(3);
}

Mat4 from_blocks(const Mat2& psi_plus, const Mat2& chi_minus,
                 const Mat2& chi_plus, const Mat2& psi_minus) {
  Mat4 m;
  m.topLeftCorner<2, 2>() = psi_plus;
  m.topRightCorner<2, 2>() = chi_minus;
  m.bottomLeftCorner<2, 2>() = chi_plus;
  m.bottomRightCorner<2, 2>() = psi_minus;
  return m;
}

// ---- Two-forms ------------------------------------------------------------

double TwoForm::antisymmetry_defect() const {
  return (f + f.transpose()).cwiseAbs().maxCoeff();
}

Mat4 TwoForm::upper() const {
  const Eigen::Matrix4d& eta = minkowski_metric();
  return eta * f * eta;  // eta is its own inverse
}

void require_antisymmetric(const TwoForm& f, double tol) {
  const double d = f.antisymmetry_defect();
  const double scale = f.f.cwiseAbs().maxCoeff();
  if (d > tol * std::max(1.0, scale))
    throw ValidationError("two-form is not antisymmetric");
}

int levi_civita(int a, int b, int c, int d) {
  const int idx[4] = {a, b, c, d};
  int sign = -1;  // eps_{0123} = -1
  int perm[4] = {idx[0], idx[1], idx[2], idx[3]};
  for (int i = 0; i < 4; ++i)
    if (perm[i] < 0 || perm[i] > 3) throw ValidationError("levi_civita: bad index");
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (perm[i] == perm[j]) return 0;
      if (perm[i] > perm[j]) {
        std::swap(perm[i], perm[j]);
        sign = -sign;
      }
    }
  }
  return sign;
}

TwoForm two_form_from_eb(const CVec3& e, const CVec3& b) {
  TwoForm out;
  Mat4& f = out.f;
  f.setZero();
  for (int k = 0; k < 3; ++k) {
    f(0, k + 1) = e(k);
    f(k + 1, 0) = -e(k);
  }
  // f_{ij} = -eps_{ijk} b^k
  f(1, 2) = -b(2);
  f(2, 1) = b(2);
  f(2, 3) = -b(0);
  f(3, 2) = b(0);
  f(3, 1) = -b(1);
  f(1, 3) = b(1);
  return out;
}

std::pair<CVec3, CVec3> eb_from_two_form(const TwoForm& f) {
  CVec3 e, b;
  for (int k = 0; k < 3; ++k) e(k) = f.f(0, k + 1);
  b(0) = f.f(3, 2);
  b(1) = f.f(1, 3);
  b(2) = f.f(2, 1);
  return {e, b};
}

TwoForm hodge_star(const TwoForm& f) {
  require_antisymmetric(f);
  const Mat4 up = f.upper();
  TwoForm out;
  out.f.setZero();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      Complex s = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const int eps = levi_civita(mu, nu, a, b);
          if (eps != 0) s += 0.5 * static_cast<double>(eps) * up(a, b);
        }
      out.f(mu, nu) = s;
    }
  return out;
}

TwoForm hodge_dual(const TwoForm& f) {
  TwoForm out = hodge_star(f);
  out.f *= kI;
  return out;
}

std::pair<TwoForm, TwoForm> sd_asd_split(const TwoForm& f) {
  const TwoForm d = hodge_dual(f);
  TwoForm sd, asd;
  sd.f = f.f + d.f;
  asd.f = f.f - d.f;
  return {sd, asd};
}

namespace {

// (i/2) f^{mu nu} A_mu B_nu with (A, B) = (sigma, sigma') or (sigma', sigma).
Mat2 spinor_contraction(const TwoForm& f, bool primed_first) {
  require_antisymmetric(f);
  const Mat4 up = f.upper();
  std::array<Mat2, 4> s, sp;
  s[0] = Mat2::Identity();
  sp[0] = Mat2::Identity();
  for (int k = 1; k <= 3; ++k) {
    s[static_cast<std::size_t>(k)] = pauli(k);
    sp[static_cast<std::size_t>(k)] = -pauli(k);
  }
  Mat2 acc = Mat2::Zero();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      if (up(mu, nu) == Complex(0.0)) continue;
      const Mat2 prod = primed_first
                            ? Mat2(sp[static_cast<std::size_t>(mu)] * s[static_cast<std::size_t>(nu)])
                            : Mat2(s[static_cast<std::size_t>(mu)] * sp[static_cast<std::size_t>(nu)]);
      acc += up(mu, nu) * prod;
    }
  return Complex(0.0, 0.5) * acc;
}

}  // namespace

Mat2 Sigma_map(const TwoForm& f) { return spinor_contraction(f, false); }

Mat2 Sigma_prime_map(const TwoForm& f) { return spinor_contraction(f, true); }

}  // namespace photonwave
