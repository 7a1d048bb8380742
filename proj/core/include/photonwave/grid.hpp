#pragma once

// Periodic grid over a rectangular box. Wave vectors are the discrete
// Fourier lattice 2 pi m / L with m wrapped to (-n/2, n/2].

#include <array>
#include <cmath>
#include <cstddef>

#include <Eigen/Dense>

#include "photonwave/errors.hpp"

namespace photonwave {

struct GridSpec {
  std::array<int, 3> n = {1, 1, 1};        // points per axis, >= 1
  std::array<double, 3> length = {1, 1, 1};  // box edges, > 0

  void validate() const {
    for (int a = 0; a < 3; ++a) {
      if (n[static_cast<std::size_t>(a)] < 1)
        throw ValidationError("grid: axis point count must be >= 1");
      if (!(length[static_cast<std::size_t>(a)] > 0.0))
        throw ValidationError("grid: box edge must be positive");
    }
  }

  std::size_t size() const {
    return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]) *
           static_cast<std::size_t>(n[2]);
  }
  double volume() const { return length[0] * length[1] * length[2]; }
  double cell_volume() const { return volume() / static_cast<double>(size()); }
  double spacing(int axis) const {
    return length[static_cast<std::size_t>(axis)] / n[static_cast<std::size_t>(axis)];
  }

  std::size_t index(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(ix) * static_cast<std::size_t>(n[1]) +
            static_cast<std::size_t>(iy)) *
               static_cast<std::size_t>(n[2]) +
           static_cast<std::size_t>(iz);
  }

  std::array<int, 3> unindex(std::size_t idx) const {
    const int iz = static_cast<int>(idx % static_cast<std::size_t>(n[2]));
    const std::size_t rest = idx / static_cast<std::size_t>(n[2]);
    const int iy = static_cast<int>(rest % static_cast<std::size_t>(n[1]));
    const int ix = static_cast<int>(rest / static_cast<std::size_t>(n[1]));
    return {ix, iy, iz};
  }

  Eigen::Vector3d point(int ix, int iy, int iz) const {
    return {ix * spacing(0), iy * spacing(1), iz * spacing(2)};
  }

  /// Signed mode number for index m on an axis: m for m <= n/2, m - n above.
  int mode_number(int axis, int m) const {
    const int na = n[static_cast<std::size_t>(axis)];
    return (m <= na / 2) ? m : m - na;
  }

  /// Wave vector of mode (mx, my, mz) (raw FFT indices).
  Eigen::Vector3d wavevector(int mx, int my, int mz) const {
    const double two_pi = 2.0 * M_PI;
    return {two_pi * mode_number(0, mx) / length[0],
            two_pi * mode_number(1, my) / length[1],
            two_pi * mode_number(2, mz) / length[2]};
  }

  /// True if any raw index sits on an even-n Nyquist line.
  bool on_nyquist(int mx, int my, int mz) const {
    const std::array<int, 3> m = {mx, my, mz};
    for (int a = 0; a < 3; ++a) {
      const int na = n[static_cast<std::size_t>(a)];
      if (na % 2 == 0 && m[static_cast<std::size_t>(a)] == na / 2) return true;
    }
    return false;
  }

  bool operator==(const GridSpec& o) const { return n == o.n && length == o.length; }
  bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

}  // namespace photonwave
