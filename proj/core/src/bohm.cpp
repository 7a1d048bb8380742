#include "photonwave/bohm.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace photonwave {

namespace {

double wrap_coord(double x, double length) {
  double y = std::fmod(x, length);
  if (y < 0) y += length;
  return y;
}

Vec3 wrap_point(const Vec3& x, const GridSpec& g) {
  return {wrap_coord(x(0), g.length[0]), wrap_coord(x(1), g.length[1]),
          wrap_coord(x(2), g.length[2])};
}

struct CellWeights {
  int i0[3], i1[3];
  double w[3];
};

CellWeights locate(const GridSpec& g, const Vec3& x) {
  CellWeights cw;
  for (int a = 0; a < 3; ++a) {
    const double h = g.spacing(a);
    const double u = wrap_coord(x(a), g.length[static_cast<std::size_t>(a)]) / h;
    const int na = g.n[static_cast<std::size_t>(a)];
    int i = static_cast<int>(std::floor(u));
    if (i >= na) i = na - 1;  // guard against u == na from rounding
    cw.i0[a] = i % na;
    cw.i1[a] = (i + 1) % na;
    cw.w[a] = u - static_cast<double>(i);
  }
  return cw;
}

Vec4 trilinear_current(const CurrentField& cur, const CellWeights& cw) {
  const GridSpec& g = cur.grid;
  Vec4 acc = Vec4::Zero();
  for (int dx = 0; dx < 2; ++dx)
    for (int dy = 0; dy < 2; ++dy)
      for (int dz = 0; dz < 2; ++dz) {
        const double w = (dx ? cw.w[0] : 1 - cw.w[0]) * (dy ? cw.w[1] : 1 - cw.w[1]) *
                         (dz ? cw.w[2] : 1 - cw.w[2]);
        const std::size_t i =
            g.index(dx ? cw.i1[0] : cw.i0[0], dy ? cw.i1[1] : cw.i0[1],
                    dz ? cw.i1[2] : cw.i0[2]);
        acc += w * cur.j[i];
      }
  return acc;
}

double trilinear_scalar(const GridSpec& g, const std::vector<double>& v,
                        const CellWeights& cw) {
  double acc = 0.0;
  for (int dx = 0; dx < 2; ++dx)
    for (int dy = 0; dy < 2; ++dy)
      for (int dz = 0; dz < 2; ++dz) {
        const double w = (dx ? cw.w[0] : 1 - cw.w[0]) * (dy ? cw.w[1] : 1 - cw.w[1]) *
                         (dz ? cw.w[2] : 1 - cw.w[2]);
        acc += w * v[g.index(dx ? cw.i1[0] : cw.i0[0], dy ? cw.i1[1] : cw.i0[1],
                             dz ? cw.i1[2] : cw.i0[2])];
      }
  return acc;
}

}  // namespace

GuidanceField build_guidance(const std::vector<PhotonField>& snapshots,
                             double rho_floor_rel) {
  if (snapshots.size() < 2)
    throw ValidationError("build_guidance: need at least two snapshots");
  GuidanceField gf;
  gf.grid = snapshots.front().grid;
  gf.physics = snapshots.front().physics;
  gf.t0 = snapshots.front().time;
  gf.dt_snap = snapshots[1].time - snapshots[0].time;
  if (!(gf.dt_snap > 0)) throw ValidationError("build_guidance: snapshots must advance in time");
  for (std::size_t s = 1; s < snapshots.size(); ++s) {
    const double gap = snapshots[s].time - snapshots[s - 1].time;
    if (std::abs(gap - gf.dt_snap) > 1e-9 * gf.dt_snap)
      throw ValidationError("build_guidance: snapshots are not equally spaced");
  }

  gf.X = killing_X(conserved_set(snapshots.front()));
  const StressField tau0 = riesz_tensor(snapshots.front());
  double rho_max = 0.0;
  for (const auto& psi : snapshots) {
    gf.currents.push_back(contract_stress(riesz_tensor(psi), gf.X));
    for (const auto& j : gf.currents.back().j)
      rho_max = std::max(rho_max, j(0) / gf.physics.c);
  }
  (void)tau0;
  gf.rho_floor = rho_floor_rel * rho_max;
  return gf;
}

Vec3 velocity_at(const GuidanceField& gf, double t, const Vec3& x) {
  const double span_eps = 1e-9 * gf.dt_snap;
  if (t < gf.t0 - span_eps || t > gf.t_last() + span_eps)
    throw ValidationError("velocity_at: time outside the snapshot span");
  double u = (t - gf.t0) / gf.dt_snap;
  const int last = static_cast<int>(gf.currents.size()) - 1;
  int s = static_cast<int>(std::floor(u));
  if (s >= last) s = last - 1;
  if (s < 0) s = 0;
  const double theta = std::clamp(u - static_cast<double>(s), 0.0, 1.0);

  const CellWeights cw = locate(gf.grid, x);
  const Vec4 j = (1.0 - theta) * trilinear_current(gf.currents[static_cast<std::size_t>(s)], cw) +
                 theta * trilinear_current(gf.currents[static_cast<std::size_t>(s) + 1], cw);
  const double rho = j(0) / gf.physics.c;
  if (!(rho > gf.rho_floor)) throw NodeRegionError("velocity_at: node region (rho ~ 0)");
  return gf.physics.c * Vec3(j(1), j(2), j(3)) / j(0);
}

namespace {

// One RK4 step; throws NodeRegionError if any stage hits a node.
Vec3 rk4_step(const GuidanceField& gf, double t, const Vec3& x, double dt) {
  const Vec3 k1 = velocity_at(gf, t, x);
  const Vec3 k2 = velocity_at(gf, t + 0.5 * dt, wrap_point(x + 0.5 * dt * k1, gf.grid));
  const Vec3 k3 = velocity_at(gf, t + 0.5 * dt, wrap_point(x + 0.5 * dt * k2, gf.grid));
  const Vec3 k4 = velocity_at(gf, t + dt, wrap_point(x + dt * k3, gf.grid));
  return wrap_point(x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), gf.grid);
}

bool advance(const GuidanceField& gf, double t, Vec3& x, double dt, int depth) {
  try {
    x = rk4_step(gf, t, x, dt);
    return true;
  } catch (const NodeRegionError&) {
    if (depth >= 8) return false;
    Vec3 y = x;
    if (!advance(gf, t, y, 0.5 * dt, depth + 1)) return false;
    if (!advance(gf, t + 0.5 * dt, y, 0.5 * dt, depth + 1)) return false;
    x = y;
    return true;
  }
}

}  // namespace

Ensemble integrate(const GuidanceField& gf, const std::vector<Vec3>& starts, double dt) {
  if (!(dt > 0)) throw ValidationError("integrate: dt must be positive");
  const double span = gf.t_last() - gf.t0;
  const int steps = static_cast<int>(std::floor(span / dt + 1e-9));
  if (steps < 1) throw ValidationError("integrate: dt exceeds the snapshot span");

  Ensemble ens;
  ens.trajectories.resize(starts.size());
  for (std::size_t p = 0; p < starts.size(); ++p) {
    Trajectory& traj = ens.trajectories[p];
    Vec3 x = wrap_point(starts[p], gf.grid);
    double t = gf.t0;
    try {
      traj.times.push_back(t);
      traj.positions.push_back(x);
      traj.velocities.push_back(velocity_at(gf, t, x));
    } catch (const NodeRegionError&) {
      traj.complete = false;
      continue;
    }
    for (int s = 0; s < steps; ++s) {
      if (!advance(gf, t, x, dt, 0)) {
        traj.complete = false;
        break;
      }
      t = gf.t0 + (s + 1) * dt;
      traj.times.push_back(t);
      traj.positions.push_back(x);
      try {
        traj.velocities.push_back(velocity_at(gf, t, x));
      } catch (const NodeRegionError&) {
        traj.velocities.push_back(Vec3::Zero());
        traj.complete = false;
        break;
      }
    }
  }
  return ens;
}

std::size_t subluminal_violations(const Ensemble& ens, double c, double tol) {
  std::size_t count = 0;
  for (const auto& traj : ens.trajectories)
    for (const auto& v : traj.velocities)
      if (v.norm() > c + tol) ++count;
  return count;
}

std::vector<Vec3> sample_rho(const PhotonField& psi, int n, std::uint64_t seed) {
  if (n < 0) throw ValidationError("sample_rho: n must be >= 0");
  const ProbabilityCurrent pc = probability_current(psi);
  const GridSpec& g = psi.grid;

  std::vector<double> rho = pc.rho;
  for (auto& r : rho) r = std::max(r, 0.0);

  // Per-cell envelope: the trilinear interpolant is bounded by the max of
  // the 8 cell corners.
  const std::size_t cells = g.size();
  std::vector<double> cdf(cells);
  double total = 0.0;
  for (int ix = 0; ix < g.n[0]; ++ix)
    for (int iy = 0; iy < g.n[1]; ++iy)
      for (int iz = 0; iz < g.n[2]; ++iz) {
        double m = 0.0;
        for (int dx = 0; dx < 2; ++dx)
          for (int dy = 0; dy < 2; ++dy)
            for (int dz = 0; dz < 2; ++dz)
              m = std::max(m, rho[g.index((ix + dx) % g.n[0], (iy + dy) % g.n[1],
                                          (iz + dz) % g.n[2])]);
        total += m;
        cdf[g.index(ix, iy, iz)] = total;
      }
  if (!(total > 0.0)) throw ValidationError("sample_rho: density is identically zero");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(n));
  while (out.size() < static_cast<std::size_t>(n)) {
    const double pick = uni(rng) * total;
    const std::size_t cell = static_cast<std::size_t>(
        std::lower_bound(cdf.begin(), cdf.end(), pick) - cdf.begin());
    const auto c3 = g.unindex(cell);
    const Vec3 x((c3[0] + uni(rng)) * g.spacing(0), (c3[1] + uni(rng)) * g.spacing(1),
                 (c3[2] + uni(rng)) * g.spacing(2));
    const double envelope = cdf[cell] - (cell > 0 ? cdf[cell - 1] : 0.0);
    const double value = trilinear_scalar(g, rho, locate(g, x));
    if (uni(rng) * envelope <= value) out.push_back(x);
  }
  return out;
}

namespace {

// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

EquivarianceReport equivariance_stat(const std::vector<Vec3>& points, const PhotonField& psi) {
  EquivarianceReport rep;
  const ProbabilityCurrent pc = probability_current(psi);
  const GridSpec& g = psi.grid;
  std::vector<double> rho = pc.rho;
  for (auto& r : rho) r = std::max(r, 0.0);

  for (int axis = 0; axis < 3; ++axis) {
    const int na = g.n[static_cast<std::size_t>(axis)];
    const double h = g.spacing(axis);
    const double length = g.length[static_cast<std::size_t>(axis)];

    // Nodal plane masses; the marginal of the trilinear interpolant is the
    // piecewise-linear density through them.
    std::vector<double> plane(static_cast<std::size_t>(na), 0.0);
    for (int ix = 0; ix < g.n[0]; ++ix)
      for (int iy = 0; iy < g.n[1]; ++iy)
        for (int iz = 0; iz < g.n[2]; ++iz) {
          const int m = (axis == 0 ? ix : axis == 1 ? iy : iz);
          plane[static_cast<std::size_t>(m)] += rho[g.index(ix, iy, iz)];
        }
    // Cumulative mass up to node i (cell integral = h (g_i + g_{i+1}) / 2).
    std::vector<double> cum(static_cast<std::size_t>(na) + 1, 0.0);
    for (int i = 0; i < na; ++i) {
      const double gi = plane[static_cast<std::size_t>(i)];
      const double gj = plane[static_cast<std::size_t>((i + 1) % na)];
      cum[static_cast<std::size_t>(i) + 1] =
          cum[static_cast<std::size_t>(i)] + 0.5 * h * (gi + gj);
    }
    const double total = cum.back();
    if (!(total > 0.0)) continue;

    auto model_cdf = [&](double x) {
      const double u = wrap_coord(x, length) / h;
      int i = static_cast<int>(std::floor(u));
      if (i >= na) i = na - 1;
      const double w = u - i;
      const double gi = plane[static_cast<std::size_t>(i)];
      const double gj = plane[static_cast<std::size_t>((i + 1) % na)];
      const double partial = h * (gi * w + 0.5 * (gj - gi) * w * w);
      return (cum[static_cast<std::size_t>(i)] + partial) / total;
    };

    std::vector<double> fvals;
    fvals.reserve(points.size());
    for (const auto& p : points) fvals.push_back(model_cdf(p(axis)));
    std::sort(fvals.begin(), fvals.end());
    const double n = static_cast<double>(fvals.size());
    double d = 0.0;
    for (std::size_t i = 0; i < fvals.size(); ++i) {
      const double lo = static_cast<double>(i) / n;
      const double hi = static_cast<double>(i + 1) / n;
      d = std::max(d, std::max(std::abs(fvals[i] - lo), std::abs(hi - fvals[i])));
    }
    rep.ks_stat[static_cast<std::size_t>(axis)] = d;
    const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    rep.p_value[static_cast<std::size_t>(axis)] = kolmogorov_q(lambda);
  }
  return rep;
}

}  // namespace photonwave
