#pragma once

// Test-side oracles, independent of the library code paths they check:
// brute-force Levi-Civita duals, reversal-order Dirac adjoints, a
// scaling-and-squaring matrix exponential, and a solution builder driven
// from real potentials.

#include <array>
#include <random>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "photonwave/algebra.hpp"
#include "photonwave/dynamics.hpp"
#include "photonwave/field.hpp"

namespace oracles {

using photonwave::CVec3;
using photonwave::CVec4;
using photonwave::Complex;
using photonwave::Mat2;
using photonwave::Mat4;
using photonwave::Vec3;
using photonwave::Vec4;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Complex random_complex(std::mt19937_64& g) {
  std::normal_distribution<double> d(0.0, 1.0);
  return {d(g), d(g)};
}

inline Mat4 random_mat4(std::mt19937_64& g) {
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = random_complex(g);
  return m;
}

inline Mat4 random_bispinor(std::mt19937_64& g) {
  // Random rank-two bi-spinor with trace-free diagonal blocks.
  Mat4 m = random_mat4(g);
  const Complex tp = 0.5 * m.topLeftCorner<2, 2>().trace();
  const Complex tm = 0.5 * m.bottomRightCorner<2, 2>().trace();
  m(0, 0) -= tp;
  m(1, 1) -= tp;
  m(2, 2) -= tm;
  m(3, 3) -= tm;
  return m;
}

inline Vec3 random_vec3(std::mt19937_64& g) {
  std::normal_distribution<double> d(0.0, 1.0);
  return {d(g), d(g), d(g)};
}

inline Vec4 random_vec4(std::mt19937_64& g) {
  std::normal_distribution<double> d(0.0, 1.0);
  return {d(g), d(g), d(g), d(g)};
}

inline CVec3 random_cvec3(std::mt19937_64& g) {
  return {random_complex(g), random_complex(g), random_complex(g)};
}

inline Mat2 random_sl2(std::mt19937_64& g) {
  Mat2 a;
  for (;;) {
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) a(r, c) = random_complex(g);
    const Complex det = a.determinant();
    if (std::abs(det) > 1e-3) return a / std::sqrt(det);
  }
}

// ---- permutation-sign Levi-Civita via explicit enumeration -----------------

// Sign of a permutation of (0,1,2,3) by direct inversion count, with the
// overall orientation fixed so that (0,1,2,3) -> -1, matching the library's
// eps_{0123} = -1 choice but computed by a different route.
inline int eps_oracle(const std::array<int, 4>& p) {
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[static_cast<std::size_t>(i)] == p[static_cast<std::size_t>(j)]) return 0;
      if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) ++inversions;
    }
  return (inversions % 2 == 0) ? -1 : 1;
}

// (*f)_{mu nu} = (1/2) eps_{mu nu a b} f^{a b}, all indices brute-forced.
inline photonwave::TwoForm star_oracle(const photonwave::TwoForm& f) {
  const Mat4 up = f.upper();
  photonwave::TwoForm out;
  out.f.setZero();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          out.f(mu, nu) += 0.5 * static_cast<double>(eps_oracle({mu, nu, a, b})) * up(a, b);
  return out;
}

// ---- reversal-order Dirac adjoint ------------------------------------------

// The 16 index tuples of the gamma-product basis.
inline const std::vector<std::vector<int>>& basis_tuples() {
  static const std::vector<std::vector<int>> tuples = [] {
    std::vector<std::vector<int>> out;
    out.push_back({});
    for (int a = 0; a < 4; ++a) out.push_back({a});
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) out.push_back({a, b});
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        for (int c = b + 1; c < 4; ++c) out.push_back({a, b, c});
    out.push_back({0, 1, 2, 3});
    return out;
  }();
  return tuples;
}

inline Mat4 gamma_product(const std::vector<int>& tuple, bool reversed) {
  Mat4 m = Mat4::Identity();
  if (!reversed) {
    for (int mu : tuple) m = m * photonwave::gamma(mu);
  } else {
    for (auto it = tuple.rbegin(); it != tuple.rend(); ++it)
      m = m * photonwave::gamma(*it);
  }
  return m;
}

// ---- general-purpose matrix exponential -------------------------------------

// Scaling-and-squaring Pade exponential (Eigen's implementation), used as an
// independent check of the closed-form propagator.
template <typename M>
M expm_oracle(const M& a) {
  return a.exp();
}

// ---- solution snapshot from real potentials ----------------------------------

// Builds a solution-structure snapshot whose potentials are real: per mode,
// a real transversal vector potential with frequency +c|k| for each
// chirality, phi fixed by the Lorenz condition (zero for transversal a),
// and field strengths derived from
//   e = (hbar / m c)(-grad phi - (1/c) dt a),  b = (hbar / m c) curl a.
struct RealPotentialModes {
  std::vector<Vec3> k;          // lattice wave vectors
  std::vector<CVec3> amp_plus;  // complex amplitude of a+ (transversal)
  std::vector<CVec3> amp_minus;
};

inline photonwave::PhotonField real_potential_solution(const photonwave::GridSpec& grid,
                                                       const photonwave::PhysicsParams& ph,
                                                       const RealPotentialModes& modes) {
  using photonwave::ComponentFields;
  ComponentFields c = ComponentFields::zero(grid);
  const double coeff = ph.hbar / (ph.m_flash * ph.c);
  for (std::size_t m = 0; m < modes.k.size(); ++m) {
    const Vec3 k = modes.k[m];
    const double w = ph.c * k.norm();
    for (int ix = 0; ix < grid.n[0]; ++ix)
      for (int iy = 0; iy < grid.n[1]; ++iy)
        for (int iz = 0; iz < grid.n[2]; ++iz) {
          const std::size_t i = grid.index(ix, iy, iz);
          const Vec3 x = grid.point(ix, iy, iz);
          const Complex phase = std::exp(Complex(0.0, k.dot(x)));  // t = 0
          auto add_chirality = [&](const CVec3& amp, std::vector<Vec3>& e,
                                   std::vector<Vec3>& b, std::vector<photonwave::CVec3>& a) {
            const CVec3 a_mode = amp * phase;  // a(t,x) = Re[a_mode e^{-iwt}]
            const Vec3 a_real = a_mode.real();
            const Vec3 dt_a = (Complex(0.0, -w) * a_mode).real();
            const Vec3 i_a = (Complex(0.0, 1.0) * a_mode).real();
            a[i] += a_real.cast<Complex>();
            e[i] += -(coeff / ph.c) * dt_a;       // phi = 0 for transversal a
            b[i] += coeff * Vec3(k.cross(i_a));   // curl Re[a_mode] = k x Re[i a_mode]
          };
          add_chirality(modes.amp_plus[m], c.e_plus, c.b_plus, c.a_plus);
          add_chirality(modes.amp_minus[m], c.e_minus, c.b_minus, c.a_minus);
        }
  }
  return photonwave::assemble(c, ph, 0.0);
}

// ---- potential-relation residuals ------------------------------------------

struct ComponentDerivatives {
  photonwave::ComponentFields c, dc, gx, gy, gz;
};

inline ComponentDerivatives component_derivatives(const photonwave::PhotonField& psi) {
  using namespace photonwave;
  ComponentDerivatives d{disassemble(psi),
                         disassemble(time_derivative(psi, OperatorKind::full), 1e-6),
                         disassemble(spatial_derivative(psi, 0), 1e-6),
                         disassemble(spatial_derivative(psi, 1), 1e-6),
                         disassemble(spatial_derivative(psi, 2), 1e-6)};
  return d;
}

// Combined complex off-diagonal relation, valid for every solution snapshot:
//   i hbar (d0 a + grad phi) + hbar curl a = m c (b - i e)   (each chirality)
inline double combined_potential_residual(const photonwave::PhotonField& psi) {
  using namespace photonwave;
  const PhysicsParams& ph = psi.physics;
  const ComponentDerivatives d = component_derivatives(psi);
  const Complex im(0.0, 1.0);
  double worst = 0.0, scale = 1e-300;
  auto check = [&](auto phi_of, auto a_of, auto e_of, auto b_of) {
    for (std::size_t i = 0; i < psi.size(); ++i) {
      const CVec3 grad_phi(phi_of(d.gx, i), phi_of(d.gy, i), phi_of(d.gz, i));
      const CVec3 ax = a_of(d.gx, i), ay = a_of(d.gy, i), az = a_of(d.gz, i);
      const CVec3 curl_a(ay(2) - az(1), az(0) - ax(2), ax(1) - ay(0));
      const CVec3 lhs = im * ph.hbar * (a_of(d.dc, i) / ph.c + grad_phi) + ph.hbar * curl_a;
      const CVec3 rhs =
          ph.m_flash * ph.c *
          (b_of(d.c, i).template cast<Complex>() - im * e_of(d.c, i).template cast<Complex>());
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
      scale = std::max(scale, rhs.norm() + ph.hbar * curl_a.norm());
    }
  };
  check([](const photonwave::ComponentFields& f, std::size_t i) { return f.phi_plus[i]; },
        [](const photonwave::ComponentFields& f, std::size_t i) { return f.a_plus[i]; },
        [](const photonwave::ComponentFields& f, std::size_t i) { return f.e_plus[i]; },
        [](const photonwave::ComponentFields& f, std::size_t i) { return f.b_plus[i]; });
  return worst / scale;
}

// Split (real-potential) relations: Lorenz condition plus
//   e = (hbar / m c)(-grad phi - (1/c) dt a),   b = (hbar / m c) curl a.
// Strictly stronger than the combined relation; they hold in the
// Hermitian/real-potential gauge.
inline double split_potential_residual(const photonwave::PhotonField& psi) {
  using namespace photonwave;
  const PhysicsParams& ph = psi.physics;
  const ComponentDerivatives d = component_derivatives(psi);
  const double coeff = ph.hbar / (ph.m_flash * ph.c);
  double worst = 0.0, scale = 1e-300;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const CVec3 grad_phi(d.gx.phi_plus[i], d.gy.phi_plus[i], d.gz.phi_plus[i]);
    const CVec3 e_rel = coeff * (-grad_phi - d.dc.a_plus[i] / ph.c);
    const CVec3 curl_a(d.gy.a_plus[i](2) - d.gz.a_plus[i](1),
                       d.gz.a_plus[i](0) - d.gx.a_plus[i](2),
                       d.gx.a_plus[i](1) - d.gy.a_plus[i](0));
    const CVec3 b_rel = coeff * curl_a;
    worst = std::max(worst, (e_rel - d.c.e_plus[i].cast<Complex>()).cwiseAbs().maxCoeff());
    worst = std::max(worst, (b_rel - d.c.b_plus[i].cast<Complex>()).cwiseAbs().maxCoeff());
    const Complex lorenz = d.dc.phi_plus[i] / ph.c + d.gx.a_plus[i](0) +
                           d.gy.a_plus[i](1) + d.gz.a_plus[i](2);
    worst = std::max(worst, std::abs(lorenz) * coeff);
    scale = std::max(scale, d.c.e_plus[i].norm() + d.c.b_plus[i].norm());
  }
  return worst / std::max(scale, 1.0);
}

}  // namespace oracles
