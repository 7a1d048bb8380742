#include "photonwave/field.hpp"

#include <cmath>
#include <random>

#include "photonwave/parallel.hpp"
#include "photonwave/spectral.hpp"

namespace photonwave {

namespace {
const Complex kI(0.0, 1.0);

std::complex<double>* raw(std::vector<Mat4>& v) {
  return reinterpret_cast<std::complex<double>*>(v.data()->data());
}
}  // namespace

PhotonField PhotonField::zero(const GridSpec& grid, const PhysicsParams& physics) {
  grid.validate();
  physics.validate();
  PhotonField f;
  f.grid = grid;
  f.physics = physics;
  f.values.assign(grid.size(), Mat4::Zero());
  return f;
}

double PhotonField::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

PhotonField& PhotonField::operator+=(const PhotonField& other) {
  if (grid != other.grid) throw ValidationError("field sum: grid mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += other.values[i];
  return *this;
}

PhotonField& PhotonField::operator*=(const Complex& s) {
  for (auto& v : values) v *= s;
  return *this;
}

PhotonField operator+(PhotonField a, const PhotonField& b) {
  a += b;
  return a;
}

PhotonField operator*(const Complex& s, PhotonField a) {
  a *= s;
  return a;
}

ModeField to_modes(const PhotonField& field) {
  ModeField out;
  out.grid = field.grid;
  out.physics = field.physics;
  out.time = field.time;
  out.modes = field.values;
  Fft3 fft(field.grid, 16);
  fft.analyze(raw(out.modes));
  return out;
}

PhotonField from_modes(const ModeField& modes) {
  PhotonField out;
  out.grid = modes.grid;
  out.physics = modes.physics;
  out.time = modes.time;
  out.values = modes.modes;
  Fft3 fft(modes.grid, 16);
  fft.synthesize(raw(out.values));
  return out;
}

// ---- Frame components ------------------------------------------------------

ComponentFields ComponentFields::zero(const GridSpec& grid) {
  grid.validate();
  ComponentFields c;
  c.grid = grid;
  const std::size_t n = grid.size();
  c.e_plus.assign(n, Vec3::Zero());
  c.b_plus.assign(n, Vec3::Zero());
  c.e_minus.assign(n, Vec3::Zero());
  c.b_minus.assign(n, Vec3::Zero());
  c.phi_plus.assign(n, Complex(0));
  c.phi_minus.assign(n, Complex(0));
  c.a_plus.assign(n, CVec3::Zero());
  c.a_minus.assign(n, CVec3::Zero());
  return c;
}

PhotonField assemble(const ComponentFields& c, const PhysicsParams& physics, double time) {
  const std::size_t n = c.grid.size();
  if (c.e_plus.size() != n || c.b_plus.size() != n || c.e_minus.size() != n ||
      c.b_minus.size() != n || c.phi_plus.size() != n || c.phi_minus.size() != n ||
      c.a_plus.size() != n || c.a_minus.size() != n)
    throw ValidationError("assemble: component array shape mismatch");

  PhotonField psi = PhotonField::zero(c.grid, physics);
  psi.time = time;
  parallel_for(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const CVec3 f_plus = c.e_plus[i].cast<Complex>() + kI * c.b_plus[i].cast<Complex>();
      const CVec3 f_minus_conj =
          c.e_minus[i].cast<Complex>() - kI * c.b_minus[i].cast<Complex>();
      const Mat2 psi_plus = kI * sigma_dot(f_plus);
      const Mat2 psi_minus = -kI * sigma_dot(f_minus_conj);
      const Mat2 chi_plus =
          c.phi_plus[i] * Mat2::Identity() - sigma_dot(c.a_plus[i]);
      const Mat2 chi_minus =
          c.phi_minus[i] * Mat2::Identity() + sigma_dot(c.a_minus[i]);
      psi.values[i] = from_blocks(psi_plus, chi_minus, chi_plus, psi_minus);
    }
  });
  return psi;
}

namespace {

// f with sigma.f = m (unique since {1, sigma_k} is a basis).
CVec3 sigma_vector_part(const Mat2& m) {
  CVec3 f;
  f(0) = 0.5 * (m(0, 1) + m(1, 0));
  f(1) = 0.5 * kI * (m(0, 1) - m(1, 0));
  f(2) = 0.5 * (m(0, 0) - m(1, 1));
  return f;
}

}  // namespace

ComponentFields disassemble(const PhotonField& psi, double tol_trace) {
  ComponentFields c = ComponentFields::zero(psi.grid);
  const double scale = psi.max_abs();
  double worst_trace = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const Mat4& v = psi.values[i];
    worst_trace = std::max(worst_trace, std::abs(block_psi_plus(v).trace()));
    worst_trace = std::max(worst_trace, std::abs(block_psi_minus(v).trace()));
  }
  if (scale > 0.0 && worst_trace > tol_trace * scale)
    throw ConstraintError("disassemble: diagonal block trace exceeds tolerance",
                          worst_trace / scale);

  parallel_for(psi.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Mat4& v = psi.values[i];
      const CVec3 f_plus = sigma_vector_part(-kI * block_psi_plus(v));
      const CVec3 f_minus = sigma_vector_part(kI * block_psi_minus(v)).conjugate();
      c.e_plus[i] = f_plus.real();
      c.b_plus[i] = f_plus.imag();
      c.e_minus[i] = f_minus.real();
      c.b_minus[i] = f_minus.imag();
      const Mat2 chi_plus = block_chi_plus(v);
      const Mat2 chi_minus = block_chi_minus(v);
      c.phi_plus[i] = 0.5 * chi_plus.trace();
      c.a_plus[i] = -sigma_vector_part(chi_plus);
      c.phi_minus[i] = 0.5 * chi_minus.trace();
      c.a_minus[i] = sigma_vector_part(chi_minus);
    }
  });
  return c;
}

ValidationReport validate(const PhotonField& psi) {
  ValidationReport rep;
  const double scale = psi.max_abs();
  if (scale == 0.0) return rep;

  double worst_trace = 0.0;
  for (const auto& v : psi.values) {
    worst_trace = std::max(worst_trace, std::abs(block_psi_plus(v).trace()));
    worst_trace = std::max(worst_trace, std::abs(block_psi_minus(v).trace()));
  }
  rep.trace_linf = worst_trace / scale;

  // Transversality of the diagonal-block field vectors f+-(x) in Fourier
  // space, normalized against the largest |k||f_hat| over the lattice so
  // that empty (roundoff-level) modes cannot dominate the report.
  const std::size_t n = psi.grid.size();
  std::vector<Complex> fp(3 * n), fm(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const CVec3 f_plus = sigma_vector_part(-kI * block_psi_plus(psi.values[i]));
    const CVec3 f_minus_c = sigma_vector_part(kI * block_psi_minus(psi.values[i]));
    for (int d = 0; d < 3; ++d) {
      fp[3 * i + static_cast<std::size_t>(d)] = f_plus(d);
      fm[3 * i + static_cast<std::size_t>(d)] = f_minus_c(d);
    }
  }
  fft_analyze(psi.grid, 3, fp);
  fft_analyze(psi.grid, 3, fm);

  double worst_long = 0.0;
  double ref = 0.0;
  for (int mx = 0; mx < psi.grid.n[0]; ++mx)
    for (int my = 0; my < psi.grid.n[1]; ++my)
      for (int mz = 0; mz < psi.grid.n[2]; ++mz) {
        const Vec3 k = psi.grid.wavevector(mx, my, mz);
        const double kn = k.norm();
        if (kn == 0.0) continue;
        const std::size_t i = psi.grid.index(mx, my, mz);
        for (const auto* arr : {&fp, &fm}) {
          CVec3 fhat((*arr)[3 * i], (*arr)[3 * i + 1], (*arr)[3 * i + 2]);
          const double fn = fhat.norm();
          const Complex kdotf = k(0) * fhat(0) + k(1) * fhat(1) + k(2) * fhat(2);
          worst_long = std::max(worst_long, std::abs(kdotf));
          ref = std::max(ref, kn * fn);
        }
      }
  rep.transversality_linf = ref > 0.0 ? worst_long / ref : 0.0;
  return rep;
}

// ---- Constructors ----------------------------------------------------------

Mat2 helicity_project(const Mat2& block, const Vec3& khat, int s) {
  const Mat2 p = 0.5 * (Mat2::Identity() +
                        static_cast<double>(s) * sigma_dot(khat.cast<Complex>()));
  return p * block;
}

namespace {

// Minimal-norm particular off-diagonal blocks for one Fourier mode: the
// branch-resolved solve collapses to
//   chi+_hat = (m c / (2 hbar |k|)) (sigma.k_hat) psi+_hat
//   chi-_hat = -(m c / (2 hbar |k|)) (sigma.k_hat) psi-_hat
void fill_offdiag_mode(const Vec3& k, const PhysicsParams& ph, Mat4& mode) {
  const double kn = k.norm();
  if (kn == 0.0) return;
  const Mat2 sk = sigma_dot((k / kn).cast<Complex>());
  const double amp = ph.m_flash * ph.c / (2.0 * ph.hbar * kn);
  mode.bottomLeftCorner<2, 2>() = amp * sk * mode.topLeftCorner<2, 2>();
  mode.topRightCorner<2, 2>() = -amp * sk * mode.bottomRightCorner<2, 2>();
}

// Raw FFT index of the lattice mode matching physical wave vector k, or
// throws. Rejects Nyquist lines (sign-ambiguous) and out-of-band modes.
std::array<int, 3> lattice_mode_of(const GridSpec& grid, const Vec3& k) {
  std::array<int, 3> idx;
  for (int a = 0; a < 3; ++a) {
    const double unit = 2.0 * M_PI / grid.length[static_cast<std::size_t>(a)];
    const double m_real = k(a) / unit;
    const double m_round = std::round(m_real);
    if (std::abs(m_real - m_round) > 1e-9)
      throw ValidationError("plane_wave_state: k is not on the Fourier lattice");
    const int m = static_cast<int>(m_round);
    const int na = grid.n[static_cast<std::size_t>(a)];
    if (na % 2 == 0 && std::abs(m) == na / 2)
      throw ValidationError("plane_wave_state: k sits on a Nyquist line");
    if (std::abs(m) > (na - 1) / 2 && !(m == 0))
      throw ValidationError("plane_wave_state: k exceeds the grid band");
    idx[static_cast<std::size_t>(a)] = ((m % na) + na) % na;
  }
  return idx;
}

}  // namespace

PhotonField plane_wave_state(const GridSpec& grid, const PhysicsParams& physics,
                             const Vec3& k, Chirality chirality, const CVec3& polarization,
                             bool with_potentials) {
  grid.validate();
  physics.validate();
  if (k.norm() == 0.0) throw ValidationError("plane_wave_state: k must be nonzero");
  const std::array<int, 3> mk = lattice_mode_of(grid, k);

  // Project the polarization orthogonal to k (unconjugated contraction:
  // transversality is k.f = 0 for the complex vector f).
  const Vec3 khat = k / k.norm();
  const Complex kdotp =
      khat(0) * polarization(0) + khat(1) * polarization(1) + khat(2) * polarization(2);
  const CVec3 pol = polarization - kdotp * khat.cast<Complex>();
  if (pol.norm() < 1e-14 * std::max(1.0, polarization.norm()))
    throw ValidationError("plane_wave_state: zero polarization after projection");

  ModeField mf;
  mf.grid = grid;
  mf.physics = physics;
  mf.time = 0.0;
  mf.modes.assign(grid.size(), Mat4::Zero());

  if (chirality == Chirality::plus) {
    // psi+(x) = i sigma.(pol e^{ikx}): single mode at +k.
    const std::size_t i = grid.index(mk[0], mk[1], mk[2]);
    mf.modes[i].topLeftCorner<2, 2>() = kI * sigma_dot(pol);
    if (with_potentials) fill_offdiag_mode(k, physics, mf.modes[i]);
  } else {
    // psi-(x) = -i sigma.(pol* e^{-ikx}): single mode at -k.
    std::array<int, 3> mneg;
    for (int a = 0; a < 3; ++a) {
      const int na = grid.n[static_cast<std::size_t>(a)];
      mneg[static_cast<std::size_t>(a)] = (na - mk[static_cast<std::size_t>(a)]) % na;
    }
    const std::size_t i = grid.index(mneg[0], mneg[1], mneg[2]);
    mf.modes[i].bottomRightCorner<2, 2>() = -kI * sigma_dot(pol.conjugate());
    if (with_potentials) fill_offdiag_mode(-k, physics, mf.modes[i]);
  }
  return from_modes(mf);
}

PhotonField random_field(std::uint64_t seed, const GridSpec& grid,
                         const PhysicsParams& physics, double spectrum_cutoff) {
  grid.validate();
  physics.validate();
  const std::size_t n = grid.size();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw = [&]() { return Complex(gauss(rng), gauss(rng)); };

  // Raw Gaussian spectra for e and b of both chiralities, then Hermitian
  // symmetrization so each becomes the spectrum of a real field.
  std::vector<CVec3> ep(n), bp(n), em(n), bm(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int d = 0; d < 3; ++d) {
      ep[i](d) = draw();
      bp[i](d) = draw();
      em[i](d) = draw();
      bm[i](d) = draw();
    }
  }
  auto hermitize = [&](std::vector<CVec3>& arr) {
    std::vector<CVec3> sym(n);
    for (int mx = 0; mx < grid.n[0]; ++mx)
      for (int my = 0; my < grid.n[1]; ++my)
        for (int mz = 0; mz < grid.n[2]; ++mz) {
          const std::size_t i = grid.index(mx, my, mz);
          const std::size_t j = grid.index((grid.n[0] - mx) % grid.n[0],
                                           (grid.n[1] - my) % grid.n[1],
                                           (grid.n[2] - mz) % grid.n[2]);
          sym[i] = 0.5 * (arr[i] + arr[j].conjugate());
        }
    arr = std::move(sym);
  };
  hermitize(ep);
  hermitize(bp);
  hermitize(em);
  hermitize(bm);

  ModeField mf;
  mf.grid = grid;
  mf.physics = physics;
  mf.time = 0.0;
  mf.modes.assign(n, Mat4::Zero());

  for (int mx = 0; mx < grid.n[0]; ++mx)
    for (int my = 0; my < grid.n[1]; ++my)
      for (int mz = 0; mz < grid.n[2]; ++mz) {
        const Vec3 k = grid.wavevector(mx, my, mz);
        const double kn = k.norm();
        if (kn == 0.0 || kn > spectrum_cutoff || grid.on_nyquist(mx, my, mz)) continue;
        const Vec3 khat = k / kn;
        const std::size_t i = grid.index(mx, my, mz);

        auto transversal = [&](const CVec3& v) -> CVec3 {
          const Complex kdotv = khat(0) * v(0) + khat(1) * v(1) + khat(2) * v(2);
          return v - kdotv * khat.cast<Complex>();
        };
        // psi+_hat(k) = i sigma.(e+ + i b+)_hat(k);
        // psi-_hat(k) = -i sigma.(e- - i b-)_hat(k).
        const CVec3 f_plus = transversal(ep[i] + kI * bp[i]);
        const CVec3 f_minus_conj = transversal(em[i] - kI * bm[i]);
        mf.modes[i].topLeftCorner<2, 2>() = kI * sigma_dot(f_plus);
        mf.modes[i].bottomRightCorner<2, 2>() = -kI * sigma_dot(f_minus_conj);
        fill_offdiag_mode(k, physics, mf.modes[i]);
      }
  return from_modes(mf);
}

}  // namespace photonwave
