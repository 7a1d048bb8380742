#include "photonwave/dynamics.hpp"

#include <cmath>

#include "photonwave/parallel.hpp"

namespace photonwave {

namespace {

const Complex kI(0.0, 1.0);

using Mat16 = Eigen::Matrix<Complex, 16, 16>;

// Row-major flattening: vec(M X) = (M (x) I) vec(X), vec(X B) = (I (x) B^T) vec(X).
Mat16 kron_left(const Mat4& m) {
  Mat16 out = Mat16::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (m(i, j) != Complex(0.0))
        out.block<4, 4>(4 * i, 4 * j) = m(i, j) * Mat4::Identity();
  return out;
}

Mat16 kron_right(const Mat4& b) {
  Mat16 out = Mat16::Zero();
  const Mat4 bt = b.transpose();
  for (int i = 0; i < 4; ++i) out.block<4, 4>(4 * i, 4 * i) = bt;
  return out;
}

// H psi_hat evaluated blockwise: transport + mass coupling.
Mat4 apply_mode_hamiltonian(const Mat4& v, const Vec3& k, OperatorKind kind,
                            const PhysicsParams& ph) {
  const Mat2 sk = sigma_dot(k.cast<Complex>());
  const double hc = ph.hbar * ph.c;
  Mat4 out;
  out.topLeftCorner<2, 2>() = hc * sk * v.topLeftCorner<2, 2>();
  out.topRightCorner<2, 2>() = hc * sk * v.topRightCorner<2, 2>();
  out.bottomLeftCorner<2, 2>() = -hc * sk * v.bottomLeftCorner<2, 2>();
  out.bottomRightCorner<2, 2>() = -hc * sk * v.bottomRightCorner<2, 2>();
  if (kind == OperatorKind::full) {
    // m c^2 gamma^0 Pi(psi): puts psi_minus above, psi_plus below.
    const double mc2 = ph.m_flash * ph.c * ph.c;
    out.topRightCorner<2, 2>() += mc2 * v.bottomRightCorner<2, 2>();
    out.bottomLeftCorner<2, 2>() += mc2 * v.topLeftCorner<2, 2>();
  }
  return out;
}

}  // namespace

ModeOperator mode_hamiltonian(const Vec3& k, OperatorKind kind, const PhysicsParams& physics) {
  physics.validate();
  ModeOperator op;
  op.k = k;
  op.kind = kind;
  Mat4 transport = Mat4::Zero();
  for (int j = 0; j < 3; ++j) transport += k(j) * (gamma(0) * gamma(j + 1));
  op.matrix = physics.hbar * physics.c * kron_left(transport);
  if (kind == OperatorKind::full) {
    const Mat16 pi_super =
        kron_left(projection(+1)) * kron_right(projection(+1)) +
        kron_left(projection(-1)) * kron_right(projection(-1));
    op.matrix += physics.m_flash * physics.c * physics.c * kron_left(gamma(0)) * pi_super;
  }
  return op;
}

Eigen::Matrix<Complex, 16, 16> propagator(const ModeOperator& h, double dt,
                                          const PhysicsParams& physics) {
  if (!std::isfinite(dt)) throw ValidationError("propagator: dt must be finite");
  const double kn = h.k.norm();
  if (kn == 0.0) {
    // H(0)^2 = 0, the exponential series terminates.
    return Mat16::Identity() - (kI * dt / physics.hbar) * h.matrix;
  }
  const double theta = physics.c * kn * dt;
  const double energy = physics.hbar * physics.c * kn;
  return std::cos(theta) * Mat16::Identity() - (kI * std::sin(theta) / energy) * h.matrix;
}

void advance_modes(ModeField& modes, OperatorKind kind, double dt) {
  const GridSpec& g = modes.grid;
  const PhysicsParams ph = modes.physics;
  parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto m3 = g.unindex(i);
      const Vec3 k = g.wavevector(m3[0], m3[1], m3[2]);
      const double kn = k.norm();
      Mat4& v = modes.modes[i];
      const Mat4 hv = apply_mode_hamiltonian(v, k, kind, ph);
      if (kn == 0.0) {
        v -= (kI * dt / ph.hbar) * hv;
      } else {
        const double theta = ph.c * kn * dt;
        const double energy = ph.hbar * ph.c * kn;
        v = std::cos(theta) * v - (kI * std::sin(theta) / energy) * hv;
      }
    }
  });
  modes.time += dt;
}

void evolve(const PhotonField& psi, const EvolutionPlan& plan,
            const std::function<void(const PhotonField&)>& sink) {
  plan.validate();
  ModeField modes = to_modes(psi);
  sink(psi);
  for (int step = 1; step <= plan.steps; ++step) {
    advance_modes(modes, plan.which, plan.dt);
    if (step % plan.output_stride == 0 || step == plan.steps) sink(from_modes(modes));
  }
}

std::vector<PhotonField> evolve_collect(const PhotonField& psi, const EvolutionPlan& plan) {
  std::vector<PhotonField> out;
  evolve(psi, plan, [&](const PhotonField& f) { out.push_back(f); });
  return out;
}

PhotonField time_derivative(const PhotonField& psi, OperatorKind kind) {
  ModeField modes = to_modes(psi);
  const GridSpec& g = modes.grid;
  const PhysicsParams ph = modes.physics;
  parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto m3 = g.unindex(i);
      const Vec3 k = g.wavevector(m3[0], m3[1], m3[2]);
      modes.modes[i] =
          (-kI / ph.hbar) * apply_mode_hamiltonian(modes.modes[i], k, kind, ph);
    }
  });
  return from_modes(modes);
}

PhotonField spatial_derivative(const PhotonField& psi, int axis) {
  if (axis < 0 || axis > 2) throw ValidationError("spatial_derivative: bad axis");
  ModeField modes = to_modes(psi);
  const GridSpec& g = modes.grid;
  parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto m3 = g.unindex(i);
      const Vec3 k = g.wavevector(m3[0], m3[1], m3[2]);
      modes.modes[i] *= kI * k(axis);
    }
  });
  return from_modes(modes);
}

// ---- Residuals --------------------------------------------------------------

Mat4 mode_equation_residual(double omega, const Vec3& k, const Mat4& V,
                            const PhysicsParams& physics) {
  Mat4 r = (-physics.hbar * omega / physics.c) * (gamma(0) * V);
  for (int j = 0; j < 3; ++j) r += physics.hbar * k(j) * (gamma(j + 1) * V);
  r += physics.m_flash * physics.c * project_diag(V);
  return r;
}

namespace {

// Remove the sigma_0 and sigma.k_hat components (the pure-gauge directions
// of an off-diagonal block at this mode).
Mat2 gauge_complement(const Mat2& x, const Mat2& sk_hat) {
  return x - 0.5 * x.trace() * Mat2::Identity() - 0.5 * (sk_hat * x).trace() * sk_hat;
}

}  // namespace

ResidualReport equation_residual(const PhotonField& psi) {
  const ModeField modes = to_modes(psi);
  const GridSpec& g = modes.grid;
  const PhysicsParams& ph = psi.physics;
  const double mc = ph.m_flash * ph.c;

  double scale = 0.0;
  for (const auto& m : modes.modes) scale = std::max(scale, m.norm());
  ResidualReport rep;
  if (scale == 0.0) return rep;

  double sum_sq = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto m3 = g.unindex(i);
    const Vec3 k = g.wavevector(m3[0], m3[1], m3[2]);
    const double kn = k.norm();
    const Mat4& v = modes.modes[i];

    double res = 0.0;
    if (kn == 0.0) {
      // No stationary mode carries diagonal content at k = 0 (the mass term
      // cannot be balanced); constant off-diagonal content is pure gauge.
      res = mc * project_diag(v).norm();
    } else {
      const Mat2 sk_hat = sigma_dot((k / kn).cast<Complex>());
      const Mat2 psi_p = v.topLeftCorner<2, 2>();
      const Mat2 psi_m = v.bottomRightCorner<2, 2>();
      const Mat2 chi_p = v.bottomLeftCorner<2, 2>();
      const Mat2 chi_m = v.topRightCorner<2, 2>();
      const double hk = ph.hbar * kn;
      for (const double s : {+1.0, -1.0}) {
        // Branch-s sourcing balance:
        //   hbar (s|k| + sigma.k) chi+ = m c P_{+s} psi+
        //   hbar (sigma.k - s|k|) chi- = -m c P_{-s} psi-
        const Mat2 proj_p = 0.5 * (psi_p + s * (sk_hat * psi_p));
        const Mat2 proj_m = 0.5 * (psi_m - s * (sk_hat * psi_m));
        const Mat2 r_ul = hk * (s * chi_p + sk_hat * chi_p) - mc * proj_p;
        const Mat2 r_lr = hk * (sk_hat * chi_m - s * chi_m) + mc * proj_m;
        res += std::sqrt(gauge_complement(r_ul, sk_hat).squaredNorm() +
                         gauge_complement(r_lr, sk_hat).squaredNorm());
      }
    }
    const double norm = (ph.hbar * kn + mc) * scale;
    const double r = res / norm;
    rep.linf = std::max(rep.linf, r);
    sum_sq += r * r;
  }
  rep.l2 = std::sqrt(sum_sq / static_cast<double>(g.size()));
  return rep;
}

}  // namespace photonwave
