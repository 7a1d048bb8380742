#include <doctest.h>

#include "oracles.hpp"
#include "photonwave/currents.hpp"
#include "photonwave/gauge.hpp"
#include "photonwave/lorentz.hpp"
#include "photonwave/spectral.hpp"

using namespace photonwave;

namespace {

const GridSpec kGrid{{8, 8, 8}, {2 * M_PI, 2 * M_PI, 2 * M_PI}};

double stress_diff(const StressField& a, const StressField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.t.size(); ++i)
    m = std::max(m, (a.t[i] - b.t[i]).cwiseAbs().maxCoeff());
  return m;
}

// Zero-net-momentum superposition: +k and -k waves of equal amplitude.
PhotonField comoving_field(const GridSpec& grid, const PhysicsParams& ph = {}) {
  const Vec3 k(0, 0, 2);
  PhotonField psi = plane_wave_state(grid, ph, k, Chirality::plus, CVec3(1, Complex(0, 1), 0));
  psi += plane_wave_state(grid, ph, -k, Chirality::plus, CVec3(1, Complex(0, -1), 0));
  return psi;
}

oracles::RealPotentialModes random_real_potential_modes(std::uint64_t seed) {
  auto g = oracles::rng(seed);
  oracles::RealPotentialModes modes;
  const std::vector<Vec3> ks = {Vec3(0, 0, 1), Vec3(1, 1, 0), Vec3(0, 2, 1)};
  for (const auto& k : ks) {
    CVec3 ap = oracles::random_cvec3(g);
    CVec3 am = oracles::random_cvec3(g);
    const Vec3 khat = k.normalized();
    ap -= (khat(0) * ap(0) + khat(1) * ap(1) + khat(2) * ap(2)) * khat.cast<Complex>();
    am -= (khat(0) * am(0) + khat(1) * am(1) + khat(2) * am(2)) * khat.cast<Complex>();
    modes.k.push_back(k);
    modes.amp_plus.push_back(ap);
    modes.amp_minus.push_back(am);
  }
  return modes;
}

}  // namespace

TEST_CASE("riesz tensor: single circularly polarized wave") {
  const PhotonField zero = PhotonField::zero(kGrid);
  const StressField tz = riesz_tensor(zero);
  for (const auto& t : tz.t) CHECK(t.cwiseAbs().maxCoeff() == 0.0);

  // f+ = (1, i, 0): tau^00 = 1, tau^03 = 1, tau^01 = tau^02 = 0 pointwise.
  const PhotonField wave =
      plane_wave_state(kGrid, {}, Vec3(0, 0, 2), Chirality::plus, CVec3(1, Complex(0, 1), 0));
  const StressField tau = riesz_tensor(wave);
  for (std::size_t i = 0; i < tau.t.size(); i += 53) {
    CHECK(tau.t[i](0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tau.t[i](0, 3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(tau.t[i](0, 1)) < 1e-12);
    CHECK(std::abs(tau.t[i](0, 2)) < 1e-12);
  }
  CHECK(tau.imag_residual < 1e-12);
  CHECK(tau.symmetry_defect() < 1e-10);
}

TEST_CASE("riesz tensor: trace route equals the component route") {
  const PhotonField psi = random_field(80, kGrid, {}, 2.5);
  const StressField a = riesz_tensor(psi);
  const StressField b = riesz_tensor_components(psi);
  double scale = 0.0;
  for (const auto& t : a.t) scale = std::max(scale, t.cwiseAbs().maxCoeff());
  CHECK(stress_diff(a, b) < 1e-12 * scale);
}

TEST_CASE("riesz tensor: chiral split and Maxwell-type stress") {
  const PhotonField psi = random_field(81, kGrid, {}, 2.5);
  const StressField tau = riesz_tensor(psi);
  const StressField tp = riesz_tensor_chiral(psi, Chirality::plus);
  const StressField tm = riesz_tensor_chiral(psi, Chirality::minus);
  double scale = 0.0;
  for (const auto& t : tau.t) scale = std::max(scale, t.cwiseAbs().maxCoeff());

  double worst_sum = 0.0, worst_em_p = 0.0, worst_em_m = 0.0;
  const ComponentFields c = disassemble(psi);
  for (std::size_t i = 0; i < tau.t.size(); ++i) {
    worst_sum =
        std::max(worst_sum, (tau.t[i] - tp.t[i] - tm.t[i]).cwiseAbs().maxCoeff());
    const auto em_p = em_stress_tensor(
        two_form_from_eb(c.e_plus[i].cast<Complex>(), c.b_plus[i].cast<Complex>()));
    const auto em_m = em_stress_tensor(
        two_form_from_eb(c.e_minus[i].cast<Complex>(), c.b_minus[i].cast<Complex>()));
    worst_em_p = std::max(worst_em_p, (tp.t[i] - em_p).cwiseAbs().maxCoeff());
    worst_em_m = std::max(worst_em_m, (tm.t[i] - em_m).cwiseAbs().maxCoeff());
  }
  CHECK(worst_sum < 1e-12 * scale);
  CHECK(worst_em_p < 1e-12 * scale);
  CHECK(worst_em_m < 1e-12 * scale);
}

TEST_CASE("noether stresses: structure and the 00 identities") {
  const PhotonField psi = random_field(82, kGrid, {}, 2.5);
  const NoetherStresses ns = noether_stresses(psi);

  CHECK(ns.theta.symmetry_defect() < 1e-12);
  CHECK(ns.theta_prime.symmetry_defect() < 1e-12);

  // T_00 = Theta_00 and T'_00 = Theta'_00 pointwise (the symmetrization
  // correction has no 00 component).
  double w1 = 0.0, w2 = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    w1 = std::max(w1, std::abs(ns.T.t[i](0, 0) - ns.theta.t[i](0, 0)));
    w2 = std::max(w2, std::abs(ns.T_prime.t[i](0, 0) - ns.theta_prime.t[i](0, 0)));
    scale = std::max(scale, std::abs(ns.theta_prime.t[i](0, 0)));
  }
  CHECK(w1 <= 1e-10 * std::max(scale, 1e-300));
  CHECK(w2 <= 1e-10 * std::max(scale, 1e-300));
}

TEST_CASE("energy integral: trace form equals the field form (real potentials)") {
  // Quadratic products need spectral headroom: 16^3 for modes up to |m| = 2.
  const GridSpec wide{{16, 16, 16}, {2 * M_PI, 2 * M_PI, 2 * M_PI}};
  const PhysicsParams ph{1.0, 1.0, 1.4};
  // A field built from real potentials carries homogeneous (gauge) content
  // beyond the minimal-norm particular solution, so solutionhood is checked
  // through the potential relations rather than the canonical-branch residual.
  const PhotonField psi =
      oracles::real_potential_solution(wide, ph, random_real_potential_modes(83));
  CHECK(oracles::split_potential_residual(psi) < 1e-10);

  const ConservedSet set = conserved_set(psi);
  // Field form of the energy on the torus (the divergence term integrates to
  // zero): with the trace normalization of the canonical stress this is
  // (m c^2 / 2 pi) times the integral of (e+.e- + b+.b-).
  const ComponentFields c = disassemble(psi);
  double acc = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    acc += c.e_plus[i].dot(c.e_minus[i]) + c.b_plus[i].dot(c.b_minus[i]);
  const double field_form =
      ph.m_flash * ph.c * ph.c / (2.0 * M_PI) * acc * wide.cell_volume();
  CHECK(std::abs(set.energy - field_form) <=
        1e-9 * std::max({std::abs(set.energy), std::abs(field_form), 1e-12}));
}

TEST_CASE("lagrangian densities") {
  const PhotonField zero = PhotonField::zero(kGrid);
  const LagrangianDensities lz = lagrangian_densities(zero);
  for (double v : lz.l_prime) CHECK(v == 0.0);

  const PhysicsParams ph{1.0, 1.0, 0.9};
  const PhotonField psi = random_field(84, kGrid, ph, 2.5);
  const LagrangianDensities l = lagrangian_densities(psi);
  const double scale = psi.max_abs() * psi.max_abs();
  double worst = 0.0;
  for (double v : l.l_prime) worst = std::max(worst, std::abs(v));
  CHECK(worst < 1e-10 * scale);

  // Gauge invariance of the second density, pointwise.
  const PhotonField ups = random_gauge_generator(85, kGrid, ph, 2.0);
  const LagrangianDensities l2 = lagrangian_densities(gauge_transform(psi, ups));
  double worst_diff = 0.0, lscale = 0.0;
  for (std::size_t i = 0; i < l.l_gaugeinv.size(); ++i) {
    worst_diff = std::max(worst_diff, std::abs(l.l_gaugeinv[i] - l2.l_gaugeinv[i]));
    lscale = std::max(lscale, std::abs(l.l_gaugeinv[i]));
  }
  CHECK(worst_diff < 1e-10 * std::max({lscale, scale, 1.0}));
}

TEST_CASE("helicity current") {
  const PhotonField psi = random_field(86, kGrid, {}, 2.5);

  // a = b = 0 gives the zero current.
  const CurrentField z = helicity_current(psi, 0.0, 0.0);
  for (const auto& j : z.j) CHECK(j.cwiseAbs().maxCoeff() == 0.0);

  // Diagonal-only field: all terms are chi x psi cross terms.
  PhotonField diag_only = psi;
  for (auto& v : diag_only.values) v = project_diag(v);
  const CurrentField jd = helicity_current(diag_only, 1.0, 0.0);
  double worst = 0.0;
  for (const auto& j : jd.j) worst = std::max(worst, std::abs(j(0)));
  CHECK(worst < 1e-12 * psi.max_abs() * psi.max_abs());

  // Block expansion of the time component on a random bi-spinor field: the
  // trace definition pairs opposite blocks through gamma^0, giving
  //   16 pi j_Z^0 = Re[(a + ib) tr(chi-^dag psi+ + psi-^dag chi+)
  //               + (a - ib) tr(psi+^dag chi- + chi+^dag psi-)],
  // a cross-helicity of the +- components.
  const double a = 0.8, b = -1.3;
  const CurrentField jz = helicity_current(psi, a, b);
  double worst_id = 0.0;
  for (std::size_t i = 0; i < psi.size(); i += 29) {
    const Mat4& v = psi.values[i];
    const Mat2 pp = block_psi_plus(v), pm = block_psi_minus(v);
    const Mat2 cp = block_chi_plus(v), cm = block_chi_minus(v);
    const Complex tr_c = (cm.adjoint() * pp + pm.adjoint() * cp).trace();
    const Complex tr_b = (pp.adjoint() * cm + cp.adjoint() * pm).trace();
    const double expected =
        ((Complex(a, b) * tr_c + Complex(a, -b) * tr_b) / (16.0 * M_PI)).real();
    worst_id = std::max(worst_id, std::abs(jz.j[i](0) - expected));
  }
  CHECK(worst_id < 1e-12 * psi.max_abs() * psi.max_abs());
}

TEST_CASE("helicity current: divergence identity on real potentials") {
  const GridSpec wide{{16, 16, 16}, {2 * M_PI, 2 * M_PI, 2 * M_PI}};
  const PhysicsParams ph{1.0, 1.0, 1.2};
  const PhotonField psi =
      oracles::real_potential_solution(wide, ph, random_real_potential_modes(88));
  const CurrentField jz = helicity_current(psi, 1.0, 0.0);

  const ComponentFields c = disassemble(psi);
  const std::size_t n = wide.size();
  std::vector<Complex> cross(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    // plain complex cross (Eigen's .cross conjugates complex operands)
    const CVec3 am = c.a_minus[i], ap = c.a_plus[i];
    const CVec3 v(am(1) * ap(2) - am(2) * ap(1), am(2) * ap(0) - am(0) * ap(2),
                  am(0) * ap(1) - am(1) * ap(0));
    for (int d = 0; d < 3; ++d) cross[3 * i + static_cast<std::size_t>(d)] = v(d);
  }
  fft_analyze(wide, 3, cross);
  std::vector<Complex> div(n, Complex(0));
  for (int mx = 0; mx < wide.n[0]; ++mx)
    for (int my = 0; my < wide.n[1]; ++my)
      for (int mz = 0; mz < wide.n[2]; ++mz) {
        const Vec3 k = wide.wavevector(mx, my, mz);
        const std::size_t i = wide.index(mx, my, mz);
        div[i] = Complex(0, 1) *
                 (k(0) * cross[3 * i] + k(1) * cross[3 * i + 1] + k(2) * cross[3 * i + 2]);
      }
  fft_synthesize(wide, 1, div);

  // The trace definition of j_Z yields (hbar / 4 pi m c) div(a- x a+) for
  // real potentials: tr(chi-^dag psi+ + psi-^dag chi+) expands to
  // 2 (b-.a+ - b+.a-) with the 2x2 trace normalization.
  double worst = 0.0, scale = 0.0;
  const double coeff = ph.hbar / (4.0 * M_PI * ph.m_flash * ph.c);
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(jz.j[i](0) - coeff * div[i].real()));
    scale = std::max(scale, std::abs(jz.j[i](0)));
  }
  CHECK(worst < 1e-9 * std::max(scale, 1e-12));
}

TEST_CASE("conserved set: plane waves and the null/timelike dichotomy") {
  const ConservedSet zero_set = conserved_set(PhotonField::zero(kGrid));
  CHECK(zero_set.energy == 0.0);
  CHECK(zero_set.pi.cwiseAbs().maxCoeff() == 0.0);
  CHECK(zero_set.norm == 0.0);

  // Unit-amplitude circular wave: pi^0 = V = |pi^3| (null).
  const double volume = kGrid.volume();
  const PhotonField wave =
      plane_wave_state(kGrid, {}, Vec3(0, 0, 2), Chirality::plus, CVec3(1, Complex(0, 1), 0));
  const ConservedSet ws = conserved_set(wave);
  CHECK(ws.pi(0) == doctest::Approx(volume).epsilon(1e-10));
  CHECK(std::abs(ws.pi(3)) == doctest::Approx(volume).epsilon(1e-10));
  CHECK_THROWS_AS(killing_X(ws), NullTotalCurrentError);

  // Counter-propagating pair: pi is timelike with zero net momentum.
  const ConservedSet cs = conserved_set(comoving_field(kGrid));
  CHECK(cs.pi.tail<3>().cwiseAbs().maxCoeff() < 1e-10 * cs.pi(0));
  CHECK(cs.pi(0) > 0.0);
  const Vec4 x = killing_X(cs);
  CHECK(x(0) == doctest::Approx(1.0 / cs.pi(0)).epsilon(1e-10));
}

TEST_CASE("killing_X arithmetic") {
  ConservedSet s;
  s.pi = Vec4(1, 0, 0, 0);
  CHECK((killing_X(s) - Vec4(1, 0, 0, 0)).cwiseAbs().maxCoeff() < 1e-15);
  s.pi = Vec4(2, 0, 0, 1);
  const Vec4 x = killing_X(s);
  CHECK(x(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(x(3) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("probability current: normalization, positivity, causal flux") {
  const PhotonField psi = random_field(89, kGrid, {}, 2.5);
  const ProbabilityCurrent pc = probability_current(psi);

  double integral = 0.0, rho_min = 0.0, worst_flux = 0.0, rho_max = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    integral += pc.rho[i] * kGrid.cell_volume();
    rho_min = std::min(rho_min, pc.rho[i]);
    rho_max = std::max(rho_max, pc.rho[i]);
    const double flux = pc.current.j[i].tail<3>().norm();
    worst_flux = std::max(worst_flux, flux - pc.rho[i]);  // c = 1
  }
  CHECK(std::abs(integral - 1.0) < 1e-10);
  CHECK(rho_min > -1e-12 * rho_max);
  CHECK(worst_flux <= 1e-12 * rho_max);
}

TEST_CASE("Born rule in the comoving configuration") {
  const PhotonField psi = comoving_field(kGrid);
  const ProbabilityCurrent pc = probability_current(psi);
  const double norm = inner_product(psi, psi).real();
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const Mat4 phi = project_diag(psi.values[i]);
    const double born = (phi.adjoint() * phi).trace().real() / norm;
    worst = std::max(worst, std::abs(pc.rho[i] - born));
    scale = std::max(scale, born);
  }
  CHECK(worst < 1e-10 * scale);
}

TEST_CASE("continuity residual: second order in dt") {
  // Quadratic currents double the bandwidth; use a grid with headroom so
  // the spectral divergence of j is alias-free.
  const GridSpec wide{{16, 16, 16}, {2 * M_PI, 2 * M_PI, 2 * M_PI}};
  const PhotonField psi = random_field(90, wide, {}, 2.0);

  auto residual_at = [&](double dt) {
    EvolutionPlan plan;
    plan.dt = dt;
    plan.steps = 2;
    plan.output_stride = 1;
    return continuity_residual(evolve_collect(psi, plan), dt).linf;
  };
  const double r1 = residual_at(0.04);
  const double r2 = residual_at(0.02);
  const double order = std::log2(r1 / r2);
  CHECK(order > 1.9);

  // Frame-vector contractions R_(mu) obey the same convergence.
  auto residual_frame = [&](double dt, int mu) {
    EvolutionPlan plan;
    plan.dt = dt;
    plan.steps = 2;
    plan.output_stride = 1;
    Vec4 u = Vec4::Zero();
    u(mu) = 1.0;
    return continuity_residual(evolve_collect(psi, plan), dt, u).linf;
  };
  for (int mu = 0; mu < 4; ++mu) {
    const double f1 = residual_frame(0.04, mu);
    const double f2 = residual_frame(0.02, mu);
    CHECK(std::log2(f1 / f2) > 1.9);
  }

  CHECK_THROWS_AS(continuity_residual({psi}, 0.1, Vec4(1, 0, 0, 0)), ValidationError);
}

TEST_CASE("dominant energy condition") {
  const PhotonField zero = PhotonField::zero(kGrid);
  const DominantEnergyReport zrep = dominant_energy_check(riesz_tensor(zero), 16, 1);
  CHECK(zrep.min_quadratic_margin == 0.0);
  CHECK(zrep.min_causal_margin == 0.0);

  const PhotonField psi = random_field(91, kGrid, {}, 2.5);
  const StressField tau = riesz_tensor(psi);
  for (const auto& t : tau.t) CHECK(t(0, 0) >= -1e-14);
  const DominantEnergyReport rep = dominant_energy_check(tau, 200, 7);
  CHECK(rep.min_quadratic_margin >= -1e-12);
  CHECK(rep.min_causal_margin >= -1e-12);

  // Null contraction along +z against a single +z wave: boundary case.
  const PhotonField wave =
      plane_wave_state(kGrid, {}, Vec3(0, 0, 2), Chirality::plus, CVec3(1, Complex(0, 1), 0));
  const StressField wtau = riesz_tensor(wave);
  const Vec4 null_x(1, 0, 0, 1);
  const Vec4 x_low = minkowski_metric() * null_x;
  double min_quad = 1e300;
  for (const auto& t : wtau.t) min_quad = std::min(min_quad, x_low.dot(Vec4(t * x_low)));
  CHECK(min_quad >= -1e-12);
}

TEST_CASE("inner product") {
  const double volume = kGrid.volume();
  const PhotonField wave =
      plane_wave_state(kGrid, {}, Vec3(0, 0, 1), Chirality::plus, CVec3(1, 0, 0), false);
  // tr(psi+^dag psi+) = 2 |f|^2 with |f| = |pol| = 1.
  CHECK(inner_product(wave, wave).real() == doctest::Approx(2.0 * volume).epsilon(1e-12));

  const PhotonField a = random_field(92, kGrid, {}, 2.5);
  const PhotonField b = random_field(93, kGrid, {}, 2.5);
  const Complex ab = inner_product(a, b);
  const Complex ba = inner_product(b, a);
  CHECK(std::abs(ab - std::conj(ba)) < 1e-12 * std::abs(ab));

  // Formal self-adjointness of the diagonal Hamiltonian: <H a|b> = <a|H b>.
  auto apply_h = [](const PhotonField& f) {
    PhotonField out = time_derivative(f, OperatorKind::diagonal);
    out *= Complex(0, 1) * f.physics.hbar;  // H = i hbar d/dt on solutions
    return out;
  };
  const Complex lhs = inner_product(apply_h(a), b);
  const Complex rhs = inner_product(a, apply_h(b));
  CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(lhs));

  GridSpec other{{4, 4, 4}, {1, 1, 1}};
  CHECK_THROWS_AS(inner_product(a, PhotonField::zero(other)), ValidationError);
}

TEST_CASE("gauge invariance of the conserved objects") {
  const PhysicsParams ph{1.0, 1.0, 1.6};
  const PhotonField psi = random_field(94, kGrid, ph, 2.0);
  const PhotonField ups = random_gauge_generator(95, kGrid, ph, 2.0);
  const PhotonField shifted = gauge_transform(psi, ups);

  // tau and pi depend only on the diagonal blocks: exactly invariant.
  CHECK(stress_diff(riesz_tensor(psi), riesz_tensor(shifted)) == 0.0);
  const ConservedSet s1 = conserved_set(psi);
  const ConservedSet s2 = conserved_set(shifted);
  CHECK((s1.pi - s2.pi).cwiseAbs().maxCoeff() == 0.0);
  CHECK(s1.norm == s2.norm);

  // Energy and momentum of the admissible gauge class.
  const double escale = std::max(std::abs(s1.energy), std::abs(s2.energy));
  CHECK(std::abs(s1.energy - s2.energy) < 1e-10 * std::max(escale, 1.0));
  CHECK((s1.momentum - s2.momentum).cwiseAbs().maxCoeff() <
        1e-10 * std::max(s1.momentum.cwiseAbs().maxCoeff(), 1.0));

  // rho and j.
  const ProbabilityCurrent p1 = probability_current(psi);
  const ProbabilityCurrent p2 = probability_current(shifted);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    worst = std::max(worst, (p1.current.j[i] - p2.current.j[i]).cwiseAbs().maxCoeff());
    scale = std::max(scale, std::abs(p1.rho[i]));
  }
  CHECK(worst <= 1e-12 * std::max(scale, 1e-300));

  // The helicity current with (a,b) != 0 is not expected to be invariant.
  const CurrentField h1 = helicity_current(psi, 1.0, 0.0);
  const CurrentField h2 = helicity_current(shifted, 1.0, 0.0);
  double change = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    change = std::max(change, (h1.j[i] - h2.j[i]).cwiseAbs().maxCoeff());
  CHECK(change > 1e-6);
}

TEST_CASE("pi transforms as a Lorentz vector (per-mode algebra)") {
  // For a single plane-wave mode amplitude the Riesz tensor is constant in
  // space; check tau[L V L^{-1}] = Lambda tau[V] Lambda^T directly.
  auto tau_point = [](const Mat4& value) {
    Eigen::Matrix4d t;
    const Mat4 phi = project_diag(value);
    const Mat4 bar_phi = dirac_adjoint(phi);
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        t(mu, nu) = 0.25 * (bar_phi * gamma(mu) * phi * gamma(nu)).trace().real();
    return t;
  };

  auto g = oracles::rng(96);
  const Mat2 sk = sigma_dot(Vec3(0, 0, 1).cast<Complex>());
  for (int trial = 0; trial < 30; ++trial) {
    Mat4 v = Mat4::Zero();
    // transversal diagonal blocks
    const CVec3 fp(oracles::random_complex(g), oracles::random_complex(g), 0);
    const CVec3 fm(oracles::random_complex(g), oracles::random_complex(g), 0);
    v.topLeftCorner<2, 2>() = Complex(0, 1) * sigma_dot(fp);
    v.bottomRightCorner<2, 2>() = -Complex(0, 1) * sigma_dot(fm.conjugate());
    (void)sk;

    const LorentzPair l =
        (trial % 5 == 4) ? parity_rep() : spin_rep(oracles::random_sl2(g));
    const Eigen::Matrix4d lhs = tau_point(apply_lorentz(v, l));
    const Eigen::Matrix4d rhs = l.vec * tau_point(v) * l.vec.transpose();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <
          1e-8 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("conservation drift over an exact evolution") {
  const PhotonField psi = random_field(97, kGrid, {}, 2.0);
  const ConservedSet s0 = conserved_set(psi);
  EvolutionPlan plan;
  plan.dt = 0.11;
  plan.steps = 100;
  plan.which = OperatorKind::full;
  plan.output_stride = 25;
  const auto series = evolve_collect(psi, plan);
  for (const auto& snap : series) {
    const ConservedSet s = conserved_set(snap);
    CHECK(std::abs(s.energy - s0.energy) < 1e-9 * std::max(std::abs(s0.energy), 1.0));
    CHECK((s.pi - s0.pi).cwiseAbs().maxCoeff() < 1e-9 * s0.pi(0));
    CHECK(std::abs(s.norm - s0.norm) < 1e-9 * s0.norm);
    CHECK((s.momentum - s0.momentum).cwiseAbs().maxCoeff() <
          1e-9 * std::max(s0.momentum.cwiseAbs().maxCoeff(), s0.pi(0)));
  }
}
