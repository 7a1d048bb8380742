#include "photonwave/currents.hpp"

#include <cmath>
#include <random>

#include "photonwave/parallel.hpp"
#include "photonwave/spectral.hpp"

namespace photonwave {

namespace {

const Complex kI(0.0, 1.0);
constexpr double kPi = 3.14159265358979323846;

// Compensated (Kahan) sum, serial and deterministic.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// gamma_mu (lower index).
const Mat4& gamma_lower(int mu) {
  static const std::array<Mat4, 4> gl = [] {
    std::array<Mat4, 4> g;
    g[0] = gamma(0);
    for (int k = 1; k <= 3; ++k) g[static_cast<std::size_t>(k)] = -gamma(k);
    return g;
  }();
  return gl[static_cast<std::size_t>(mu)];
}

// Raised sigma maps: sigma^mu = (1, -sigma_k), sigma'^mu = (1, +sigma_k).
const Mat2& sigma_upper(int mu) {
  static const std::array<Mat2, 4> s = [] {
    std::array<Mat2, 4> out;
    out[0] = Mat2::Identity();
    for (int k = 1; k <= 3; ++k) out[static_cast<std::size_t>(k)] = -pauli(k);
    return out;
  }();
  return s[static_cast<std::size_t>(mu)];
}

const Mat2& sigma_prime_upper(int mu) {
  static const std::array<Mat2, 4> s = [] {
    std::array<Mat2, 4> out;
    out[0] = Mat2::Identity();
    for (int k = 1; k <= 3; ++k) out[static_cast<std::size_t>(k)] = pauli(k);
    return out;
  }();
  return s[static_cast<std::size_t>(mu)];
}

std::array<PhotonField, 4> covariant_derivatives(const PhotonField& psi) {
  std::array<PhotonField, 4> d;
  d[0] = time_derivative(psi, OperatorKind::full);
  for (auto& v : d[0].values) v *= 1.0 / psi.physics.c;  // d_0 = (1/c) d_t
  for (int k = 0; k < 3; ++k) d[static_cast<std::size_t>(k + 1)] = spatial_derivative(psi, k);
  return d;
}

StressField make_stress(const GridSpec& g, StressKind kind) {
  StressField s;
  s.grid = g;
  s.kind = kind;
  s.t.assign(g.size(), Eigen::Matrix4d::Zero());
  return s;
}

}  // namespace

double StressField::symmetry_defect() const {
  double worst = 0.0, scale = 0.0;
  for (const auto& m : t) {
    worst = std::max(worst, (m - m.transpose()).cwiseAbs().maxCoeff());
    scale = std::max(scale, m.cwiseAbs().maxCoeff());
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

Eigen::Matrix4d em_stress_tensor(const TwoForm& f) {
  require_antisymmetric(f);
  if (f.f.imag().cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, f.f.cwiseAbs().maxCoeff()))
    throw ValidationError("em_stress_tensor: two-form must be real");
  const Eigen::Matrix4d low = f.f.real();
  const Eigen::Matrix4d& eta = minkowski_metric();
  const Eigen::Matrix4d up = eta * low * eta;
  const double scalar = (low.cwiseProduct(up)).sum();
  // T^{mu nu} = f^{mu l} f_l^{ nu} - (1/4) eta^{mu nu} f_{ab} f^{ab},
  // with adjacent-index contraction (so that T^{00} = (e^2 + b^2)/2).
  return -up * eta * up.transpose() + 0.25 * scalar * eta;
}

StressField riesz_tensor(const PhotonField& psi) {
  StressField out = make_stress(psi.grid, StressKind::tau);
  const double scale = psi.max_abs();
  double imag_worst = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const Mat4 phi = project_diag(psi.values[i]);
    const Mat4 bar_phi = dirac_adjoint(phi);
    for (int mu = 0; mu < 4; ++mu) {
      const Mat4 left = bar_phi * gamma(mu) * phi;
      for (int nu = 0; nu < 4; ++nu) {
        const Complex v = 0.25 * (left * gamma(nu)).trace();
        out.t[i](mu, nu) = v.real();
        imag_worst = std::max(imag_worst, std::abs(v.imag()));
      }
    }
  }
  out.imag_residual = scale > 0.0 ? imag_worst / (scale * scale) : 0.0;
  return out;
}

StressField riesz_tensor_components(const PhotonField& psi) {
  StressField out = make_stress(psi.grid, StressKind::tau);
  const ComponentFields c = disassemble(psi, 1e-6);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const CVec3 fp = c.e_plus[i].cast<Complex>() + kI * c.b_plus[i].cast<Complex>();
    const CVec3 fm = c.e_minus[i].cast<Complex>() + kI * c.b_minus[i].cast<Complex>();
    const double half_ff = 0.5 * (fp.squaredNorm() + fm.squaredNorm());
    const Vec3 poynting = c.e_plus[i].cross(c.b_plus[i]) + c.e_minus[i].cross(c.b_minus[i]);
    Eigen::Matrix4d& t = out.t[i];
    t(0, 0) = half_ff;
    for (int j = 0; j < 3; ++j) {
      t(0, j + 1) = poynting(j);
      t(j + 1, 0) = poynting(j);
    }
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double re =
            (std::conj(fp(j)) * fp(k) + std::conj(fm(j)) * fm(k)).real();
        t(j + 1, k + 1) = -re + (j == k ? half_ff : 0.0);
      }
  }
  return out;
}

StressField riesz_tensor_chiral(const PhotonField& psi, Chirality chirality) {
  StressField out = make_stress(
      psi.grid, chirality == Chirality::plus ? StressKind::tau_plus : StressKind::tau_minus);
  const double scale = psi.max_abs();
  double imag_worst = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        Complex v;
        if (chirality == Chirality::plus) {
          const Mat2 blk = block_psi_plus(psi.values[i]);
          v = 0.25 * (blk.adjoint() * sigma_prime_upper(mu) * blk * sigma_upper(nu)).trace();
        } else {
          const Mat2 blk = block_psi_minus(psi.values[i]);
          v = 0.25 * (blk.adjoint() * sigma_upper(mu) * blk * sigma_prime_upper(nu)).trace();
        }
        out.t[i](mu, nu) = v.real();
        imag_worst = std::max(imag_worst, std::abs(v.imag()));
      }
  }
  out.imag_residual = scale > 0.0 ? imag_worst / (scale * scale) : 0.0;
  return out;
}

NoetherStresses noether_stresses(const PhotonField& psi) {
  const auto d = covariant_derivatives(psi);
  const PhysicsParams& ph = psi.physics;
  const double hc = ph.hbar * ph.c;
  const double mc2 = ph.m_flash * ph.c * ph.c;

  NoetherStresses out{make_stress(psi.grid, StressKind::T),
                      make_stress(psi.grid, StressKind::T_prime),
                      make_stress(psi.grid, StressKind::theta),
                      make_stress(psi.grid, StressKind::theta_prime)};

  parallel_for(psi.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Mat4& v = psi.values[i];
      const Mat4 bar_psi = dirac_adjoint(v);
      const Mat4 bar_phi = project_diag(bar_psi);  // bar and Pi commute
      const double mass_scalar = (bar_psi * project_diag(v)).trace().real();

      Eigen::Matrix4d tp, tfull;
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          const Mat4& dmu = d[static_cast<std::size_t>(mu)].values[i];
          tp(mu, nu) = hc / (8.0 * kPi) * (bar_psi * gamma_lower(nu) * dmu).trace().imag();
          tfull(mu, nu) =
              hc / (4.0 * kPi) * (bar_phi * gamma_lower(nu) * dmu).trace().imag();
        }
      const Eigen::Matrix4d mass_term =
          mc2 / (8.0 * kPi) * mass_scalar * minkowski_metric();
      tfull += mass_term;
      out.T.t[i] = tfull;
      out.T_prime.t[i] = tp;
      out.theta.t[i] = 0.5 * (tfull + tfull.transpose());
      out.theta_prime.t[i] = 0.5 * (tp + tp.transpose());
    }
  });
  return out;
}

LagrangianDensities lagrangian_densities(const PhotonField& psi) {
  const auto d = covariant_derivatives(psi);
  const PhysicsParams& ph = psi.physics;
  const double hc = ph.hbar * ph.c;
  const double mc2 = ph.m_flash * ph.c * ph.c;

  LagrangianDensities out;
  out.grid = psi.grid;
  out.l_prime.assign(psi.size(), 0.0);
  out.l_gaugeinv.assign(psi.size(), 0.0);

  parallel_for(psi.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Mat4& v = psi.values[i];
      const Mat4 bar_psi = dirac_adjoint(v);
      const Mat4 bar_phi = project_diag(bar_psi);
      Mat4 slash = Mat4::Zero();
      for (int mu = 0; mu < 4; ++mu)
        slash += gamma(mu) * d[static_cast<std::size_t>(mu)].values[i];
      const double mass_scalar = (bar_psi * project_diag(v)).trace().real();
      out.l_prime[i] = hc / (8.0 * kPi) * (bar_psi * slash).trace().imag() +
                       mc2 / (8.0 * kPi) * mass_scalar;
      out.l_gaugeinv[i] = hc / (4.0 * kPi) * (bar_phi * slash).trace().imag() +
                          mc2 / (8.0 * kPi) * mass_scalar;
    }
  });
  return out;
}

CurrentField helicity_current(const PhotonField& psi, double a, double b) {
  CurrentField out;
  out.grid = psi.grid;
  out.j.assign(psi.size(), Vec4::Zero());
  const Mat4 G = a * Mat4::Identity() + Complex(0.0, b) * gamma5();
  parallel_for(psi.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Mat4 bar_psi = dirac_adjoint(psi.values[i]);
      for (int mu = 0; mu < 4; ++mu)
        out.j[i](mu) =
            (bar_psi * gamma(mu) * psi.values[i] * G).trace().real() / (16.0 * kPi);
    }
  });
  return out;
}

ConservedSet conserved_set(const PhotonField& psi) {
  ConservedSet set;
  const double dv = psi.grid.cell_volume();

  // E and P from Theta'_{0 mu}: only d_0 psi and d_k psi enter.
  const auto d = covariant_derivatives(psi);
  const double hc = psi.physics.hbar * psi.physics.c;
  KahanSum energy, px, py, pz, norm, pi0, pi1, pi2, pi3;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const Mat4& v = psi.values[i];
    const Mat4 bar_psi = dirac_adjoint(v);
    const Mat4& d0 = d[0].values[i];
    const double theta00 = hc / (8.0 * kPi) * (bar_psi * gamma_lower(0) * d0).trace().imag();
    energy.add(theta00 * dv);
    for (int k = 1; k <= 3; ++k) {
      const Mat4& dk = d[static_cast<std::size_t>(k)].values[i];
      const double theta0k =
          hc / (16.0 * kPi) *
          ((bar_psi * gamma_lower(k) * d0).trace().imag() +
           (bar_psi * gamma_lower(0) * dk).trace().imag());
      (k == 1 ? px : k == 2 ? py : pz).add(theta0k * dv);
    }

    const Mat4 phi = project_diag(v);
    norm.add((phi.adjoint() * phi).trace().real() * dv);

    const Mat4 bar_phi = project_diag(bar_psi);
    for (int mu = 0; mu < 4; ++mu) {
      const double tau0mu = 0.25 * (bar_phi * gamma(0) * phi * gamma(mu)).trace().real();
      (mu == 0 ? pi0 : mu == 1 ? pi1 : mu == 2 ? pi2 : pi3).add(tau0mu * dv);
    }
  }
  set.energy = energy.value();
  set.momentum = Vec3(px.value(), py.value(), pz.value());
  set.pi = Vec4(pi0.value(), pi1.value(), pi2.value(), pi3.value());
  set.norm = norm.value();
  return set;
}

Vec4 killing_X(const ConservedSet& set, double eps) {
  const double pi0 = set.pi(0);
  const double pi_sq = minkowski_dot(set.pi, set.pi);
  if (!(pi_sq > eps * pi0 * pi0))
    throw NullTotalCurrentError(
        "killing_X: total current is null or nearly null; no timelike frame exists");
  return set.pi / pi_sq;
}

CurrentField contract_stress(const StressField& tau_upper, const Vec4& y) {
  CurrentField out;
  out.grid = tau_upper.grid;
  out.j.assign(tau_upper.t.size(), Vec4::Zero());
  const Vec4 y_low = minkowski_metric() * y;
  for (std::size_t i = 0; i < tau_upper.t.size(); ++i) out.j[i] = tau_upper.t[i] * y_low;
  return out;
}

ProbabilityCurrent probability_current(const PhotonField& psi) {
  ProbabilityCurrent out;
  const ConservedSet set = conserved_set(psi);
  out.X = killing_X(set);
  const StressField tau = riesz_tensor(psi);
  out.current = contract_stress(tau, out.X);
  out.rho.resize(psi.size());
  const double inv_c = 1.0 / psi.physics.c;
  for (std::size_t i = 0; i < psi.size(); ++i) out.rho[i] = out.current.j[i](0) * inv_c;
  return out;
}

namespace {

// Spectral divergence of the spatial part of a current field.
std::vector<double> spatial_divergence(const CurrentField& cur) {
  const std::size_t n = cur.grid.size();
  std::vector<Complex> data(3 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (int d = 0; d < 3; ++d)
      data[3 * i + static_cast<std::size_t>(d)] = cur.j[i](d + 1);
  fft_analyze(cur.grid, 3, data);
  std::vector<Complex> div(n);
  for (int mx = 0; mx < cur.grid.n[0]; ++mx)
    for (int my = 0; my < cur.grid.n[1]; ++my)
      for (int mz = 0; mz < cur.grid.n[2]; ++mz) {
        const Vec3 k = cur.grid.wavevector(mx, my, mz);
        const std::size_t i = cur.grid.index(mx, my, mz);
        div[i] = kI * (k(0) * data[3 * i] + k(1) * data[3 * i + 1] + k(2) * data[3 * i + 2]);
      }
  fft_synthesize(cur.grid, 1, div);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = div[i].real();
  return out;
}

}  // namespace

ContinuityReport continuity_residual(const std::vector<PhotonField>& series, double dt,
                                     const Vec4& contraction) {
  if (series.size() < 3)
    throw ValidationError("continuity_residual: need at least 3 snapshots");
  if (!(dt > 0)) throw ValidationError("continuity_residual: dt must be positive");

  std::vector<CurrentField> currents;
  currents.reserve(series.size());
  for (const auto& psi : series)
    currents.push_back(contract_stress(riesz_tensor(psi), contraction));

  const double c_light = series.front().physics.c;
  ContinuityReport rep;
  double scale = 0.0;
  KahanSum sq;
  std::size_t count = 0;
  for (std::size_t s = 1; s + 1 < series.size(); ++s) {
    const std::vector<double> div = spatial_divergence(currents[s]);
    for (std::size_t i = 0; i < div.size(); ++i) {
      const double ddt_j0 =
          (currents[s + 1].j[i](0) - currents[s - 1].j[i](0)) / (2.0 * dt);
      const double r = ddt_j0 / c_light + div[i];
      rep.linf = std::max(rep.linf, std::abs(r));
      sq.add(r * r);
      scale = std::max(scale, std::max(std::abs(ddt_j0) / c_light, std::abs(div[i])));
      ++count;
    }
  }
  if (scale > 0.0) {
    rep.linf /= scale;
    rep.l2 = std::sqrt(sq.value() / static_cast<double>(count)) / scale;
  }
  return rep;
}

ContinuityReport continuity_residual(const std::vector<PhotonField>& series, double dt) {
  if (series.empty()) throw ValidationError("continuity_residual: empty series");
  const Vec4 x = killing_X(conserved_set(series.front()));
  return continuity_residual(series, dt, x);
}

DominantEnergyReport dominant_energy_check(const StressField& tau_upper, int n_samples,
                                           std::uint64_t seed) {
  DominantEnergyReport rep;
  if (n_samples < 1) return rep;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  double tau00_max = 0.0;
  for (const auto& t : tau_upper.t) tau00_max = std::max(tau00_max, std::abs(t(0, 0)));
  const double scale = tau00_max > 0.0 ? tau00_max : 1.0;
  const Eigen::Matrix4d& eta = minkowski_metric();

  double min_quad = std::numeric_limits<double>::infinity();
  double min_causal = std::numeric_limits<double>::infinity();
  for (int s = 0; s < n_samples; ++s) {
    Vec3 dir(gauss(rng), gauss(rng), gauss(rng));
    if (dir.norm() == 0.0) dir = Vec3::UnitZ();
    dir.normalize();
    const double r = (s % 8 == 7) ? 1.0 : uni(rng);  // include exactly null rays
    Vec4 x;
    x << 1.0, r * dir(0), r * dir(1), r * dir(2);
    const Vec4 x_low = eta * x;
    for (const auto& t : tau_upper.t) {
      const Vec4 tx = t * x_low;  // (tau X)^mu
      const double quad = x_low.dot(tx);
      const double causal = tx(0) - tx.tail<3>().norm();
      min_quad = std::min(min_quad, quad);
      min_causal = std::min(min_causal, causal);
    }
  }
  rep.min_quadratic_margin = min_quad / scale;
  rep.min_causal_margin = min_causal / scale;
  rep.samples = static_cast<std::uint64_t>(n_samples);
  return rep;
}

Complex inner_product(const PhotonField& a, const PhotonField& b) {
  if (a.grid != b.grid) throw ValidationError("inner_product: grid mismatch");
  KahanSum re, im;
  const double dv = a.grid.cell_volume();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Mat4 pa = project_diag(a.values[i]);
    const Mat4 pb = project_diag(b.values[i]);
    const Complex v = (pa.adjoint() * pb).trace();
    re.add(v.real() * dv);
    im.add(v.imag() * dv);
  }
  return Complex(re.value(), im.value());
}

}  // namespace photonwave
