#include "photonwave/maxwell.hpp"

#include <cmath>
#include <complex>

#include "photonwave/spectral.hpp"

namespace photonwave {

namespace {

using Cplx = std::complex<double>;
using CV3 = Eigen::Vector3cd;

struct SpectralEB {
  GridSpec grid;
  std::vector<Cplx> e, b;  // 3 interleaved components each
};

SpectralEB analyze(const MaxwellState& s) {
  SpectralEB out;
  out.grid = s.grid;
  const std::size_t n = s.grid.size();
  out.e.resize(3 * n);
  out.b.resize(3 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (int d = 0; d < 3; ++d) {
      out.e[3 * i + static_cast<std::size_t>(d)] = s.e[i](d);
      out.b[3 * i + static_cast<std::size_t>(d)] = s.b[i](d);
    }
  fft_analyze(out.grid, 3, out.e);
  fft_analyze(out.grid, 3, out.b);
  return out;
}

MaxwellState synthesize(SpectralEB&& spec, double time) {
  fft_synthesize(spec.grid, 3, spec.e);
  fft_synthesize(spec.grid, 3, spec.b);
  MaxwellState out = MaxwellState::zero(spec.grid);
  out.time = time;
  const std::size_t n = spec.grid.size();
  for (std::size_t i = 0; i < n; ++i)
    for (int d = 0; d < 3; ++d) {
      out.e[i](d) = spec.e[3 * i + static_cast<std::size_t>(d)].real();
      out.b[i](d) = spec.b[3 * i + static_cast<std::size_t>(d)].real();
    }
  return out;
}

// Plain complex cross product (Eigen's .cross() conjugates its operands).
CV3 ccross(const CV3& a, const CV3& b) {
  return CV3(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2),
             a(0) * b(1) - a(1) * b(0));
}

CV3 get3(const std::vector<Cplx>& a, std::size_t i) {
  return CV3(a[3 * i], a[3 * i + 1], a[3 * i + 2]);
}

void put3(std::vector<Cplx>& a, std::size_t i, const CV3& v) {
  a[3 * i] = v(0);
  a[3 * i + 1] = v(1);
  a[3 * i + 2] = v(2);
}

}  // namespace

MaxwellState MaxwellState::zero(const GridSpec& grid) {
  grid.validate();
  MaxwellState s;
  s.grid = grid;
  s.e.assign(grid.size(), Eigen::Vector3d::Zero());
  s.b.assign(grid.size(), Eigen::Vector3d::Zero());
  return s;
}

double maxwell_divergence_linf(const MaxwellState& s) {
  const SpectralEB spec = analyze(s);
  double worst = 0.0, ref = 0.0;
  for (int mx = 0; mx < s.grid.n[0]; ++mx)
    for (int my = 0; my < s.grid.n[1]; ++my)
      for (int mz = 0; mz < s.grid.n[2]; ++mz) {
        const Eigen::Vector3d k = s.grid.wavevector(mx, my, mz);
        const double kn = k.norm();
        if (kn == 0.0) continue;
        const std::size_t i = s.grid.index(mx, my, mz);
        const bool nyquist = s.grid.on_nyquist(mx, my, mz);
        for (const auto* arr : {&spec.e, &spec.b}) {
          const CV3 v = get3(*arr, i);
          // Nyquist-line content has a sign-ambiguous wave vector on an even
          // grid; treat it as fully longitudinal so evolve() rejects it.
          const Cplx kv = nyquist ? Cplx(kn * v.norm())
                                  : Cplx(k(0) * v(0) + k(1) * v(1) + k(2) * v(2));
          worst = std::max(worst, std::abs(kv));
          ref = std::max(ref, kn * v.norm());
        }
      }
  return ref > 0.0 ? worst / ref : 0.0;
}

MaxwellState maxwell_project_divergence_free(const MaxwellState& s) {
  SpectralEB spec = analyze(s);
  for (int mx = 0; mx < s.grid.n[0]; ++mx)
    for (int my = 0; my < s.grid.n[1]; ++my)
      for (int mz = 0; mz < s.grid.n[2]; ++mz) {
        const Eigen::Vector3d k = s.grid.wavevector(mx, my, mz);
        const double kn = k.norm();
        if (kn == 0.0) continue;
        const std::size_t i = s.grid.index(mx, my, mz);
        if (s.grid.on_nyquist(mx, my, mz)) {
          // Drop sign-ambiguous Nyquist content entirely.
          put3(spec.e, i, CV3::Zero());
          put3(spec.b, i, CV3::Zero());
          continue;
        }
        const Eigen::Vector3d khat = k / kn;
        for (auto* arr : {&spec.e, &spec.b}) {
          CV3 v = get3(*arr, i);
          const Cplx kv = khat(0) * v(0) + khat(1) * v(1) + khat(2) * v(2);
          v -= kv * khat.cast<Cplx>();
          put3(*arr, i, v);
        }
      }
  return synthesize(std::move(spec), s.time);
}

void maxwell_evolve(const MaxwellState& initial, double c, double dt, int steps,
                    const std::function<void(const MaxwellState&)>& sink) {
  if (!(c > 0)) throw ValidationError("maxwell_evolve: c must be positive");
  if (steps < 0) throw ValidationError("maxwell_evolve: steps must be >= 0");
  const double div = maxwell_divergence_linf(initial);
  if (div > 1e-8)
    throw PreconditionError("maxwell_evolve: initial data is not divergence-free");

  SpectralEB spec = analyze(initial);
  sink(initial);
  const std::size_t n = initial.grid.size();
  SpectralEB cur = spec;
  for (int step = 1; step <= steps; ++step) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto m3 = initial.grid.unindex(i);
      const Eigen::Vector3d k = initial.grid.wavevector(m3[0], m3[1], m3[2]);
      const double kn = k.norm();
      if (kn == 0.0) continue;
      const CV3 khat = (k / kn).cast<Cplx>();
      const double theta = c * kn * dt;
      const CV3 eh = get3(cur.e, i);
      const CV3 bh = get3(cur.b, i);
      const Cplx ci(0.0, 1.0);
      put3(cur.e, i, std::cos(theta) * eh + ci * std::sin(theta) * ccross(khat, bh));
      put3(cur.b, i, std::cos(theta) * bh - ci * std::sin(theta) * ccross(khat, eh));
    }
    SpectralEB snap = cur;
    sink(synthesize(std::move(snap), initial.time + step * dt));
  }
}

std::vector<MaxwellState> maxwell_evolve_collect(const MaxwellState& initial, double c,
                                                 double dt, int steps) {
  std::vector<MaxwellState> out;
  maxwell_evolve(initial, c, dt, steps, [&](const MaxwellState& s) { out.push_back(s); });
  return out;
}

}  // namespace photonwave
