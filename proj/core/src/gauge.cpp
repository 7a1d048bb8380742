#include "photonwave/gauge.hpp"

#include <cmath>
#include <random>

namespace photonwave {

namespace {

const Complex kI(0.0, 1.0);

struct SpanCoeffs {
  Complex alpha;  // sigma_0 component
  Complex beta;   // sigma.k_hat component
  double off;     // norm outside the span
};

SpanCoeffs span_decompose(const Mat2& x, const Mat2& sk_hat) {
  SpanCoeffs c;
  c.alpha = 0.5 * x.trace();
  c.beta = 0.5 * (sk_hat * x).trace();
  const Mat2 rem = x - c.alpha * Mat2::Identity() - c.beta * sk_hat;
  c.off = rem.norm();
  return c;
}

}  // namespace

double gauge_check_residual(const PhotonField& upsilon) {
  const ModeField modes = to_modes(upsilon);
  const GridSpec& g = modes.grid;

  double scale = 0.0;
  for (const auto& m : modes.modes) scale = std::max(scale, project_offdiag(m).norm());
  if (scale == 0.0) return 0.0;

  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto m3 = g.unindex(i);
    const Vec3 k = g.wavevector(m3[0], m3[1], m3[2]);
    const double kn = k.norm();
    if (kn == 0.0) continue;  // constant off-diagonal content is pure gauge
    const Mat2 sk_hat = sigma_dot((k / kn).cast<Complex>());
    const Mat4& v = modes.modes[i];
    worst = std::max(worst, span_decompose(v.bottomLeftCorner<2, 2>(), sk_hat).off);
    worst = std::max(worst, span_decompose(v.topRightCorner<2, 2>(), sk_hat).off);
  }
  return worst / scale;
}

PhotonField gauge_transform(const PhotonField& psi, const PhotonField& upsilon, double tol) {
  if (psi.grid != upsilon.grid) throw ValidationError("gauge_transform: grid mismatch");
  const double residual = gauge_check_residual(upsilon);
  if (residual > tol)
    throw PreconditionError("gauge_transform: generator fails the massless mode check");
  PhotonField out = psi;
  for (std::size_t i = 0; i < out.size(); ++i)
    out.values[i] += project_offdiag(upsilon.values[i]);
  return out;
}

PhotonField gauge_evolve(const PhotonField& upsilon, double dt, double tol) {
  const double residual = gauge_check_residual(upsilon);
  if (residual > tol)
    throw PreconditionError("gauge_evolve: generator fails the massless mode check");

  ModeField modes = to_modes(upsilon);
  const GridSpec& g = modes.grid;
  const double c_light = modes.physics.c;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto m3 = g.unindex(i);
    const Vec3 k = g.wavevector(m3[0], m3[1], m3[2]);
    const double kn = k.norm();
    Mat4& v = modes.modes[i];
    v = project_offdiag(v);
    if (kn == 0.0) continue;
    const Mat2 sk_hat = sigma_dot((k / kn).cast<Complex>());
    const Complex ph_plus = std::exp(-kI * (c_light * kn * dt));   // w = +c|k| branch
    const Complex ph_minus = std::exp(kI * (c_light * kn * dt));   // w = -c|k| branch

    // chi+ sector: branch-s content is proportional to (sigma_0 - s sigma.k_hat).
    {
      const SpanCoeffs sc = span_decompose(v.bottomLeftCorner<2, 2>(), sk_hat);
      const Complex c_p = sc.alpha - sc.beta;
      const Complex c_m = sc.alpha + sc.beta;
      const Complex a = 0.5 * (c_p * ph_plus + c_m * ph_minus);
      const Complex b = 0.5 * (-c_p * ph_plus + c_m * ph_minus);
      v.bottomLeftCorner<2, 2>() = a * Mat2::Identity() + b * sk_hat;
    }
    // chi- sector: branch-s content is proportional to (sigma_0 + s sigma.k_hat).
    {
      const SpanCoeffs sc = span_decompose(v.topRightCorner<2, 2>(), sk_hat);
      const Complex c_p = sc.alpha + sc.beta;
      const Complex c_m = sc.alpha - sc.beta;
      const Complex a = 0.5 * (c_p * ph_plus + c_m * ph_minus);
      const Complex b = 0.5 * (c_p * ph_plus - c_m * ph_minus);
      v.topRightCorner<2, 2>() = a * Mat2::Identity() + b * sk_hat;
    }
  }
  modes.time += dt;
  return from_modes(modes);
}

PhotonField random_gauge_generator(std::uint64_t seed, const GridSpec& grid,
                                   const PhysicsParams& physics, double spectrum_cutoff) {
  grid.validate();
  physics.validate();
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw = [&]() { return Complex(gauss(rng), gauss(rng)); };

  ModeField mf;
  mf.grid = grid;
  mf.physics = physics;
  mf.time = 0.0;
  mf.modes.assign(grid.size(), Mat4::Zero());

  for (int mx = 0; mx < grid.n[0]; ++mx)
    for (int my = 0; my < grid.n[1]; ++my)
      for (int mz = 0; mz < grid.n[2]; ++mz) {
        const Vec3 k = grid.wavevector(mx, my, mz);
        const double kn = k.norm();
        if (kn == 0.0 || kn > spectrum_cutoff || grid.on_nyquist(mx, my, mz)) continue;
        const Mat2 sk_hat = sigma_dot((k / kn).cast<Complex>());
        Mat4& v = mf.modes[grid.index(mx, my, mz)];
        v.bottomLeftCorner<2, 2>() = draw() * Mat2::Identity() + draw() * sk_hat;
        v.topRightCorner<2, 2>() = draw() * Mat2::Identity() + draw() * sk_hat;
      }
  return from_modes(mf);
}

}  // namespace photonwave
