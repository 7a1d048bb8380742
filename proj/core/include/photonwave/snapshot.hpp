#pragma once

// Snapshot file, bit-exact:
//   bytes 0..4   magic "PHWF1"
//   uint64 LE    header length in bytes
//   header       JSON: grid {n, length}, time, physics {hbar, c, m_flash},
//                endianness "little", layout "[ix][iy][iz][row][col]"
//   payload      prod(n) * 16 complex numbers, (re, im) float64 LE pairs,
//                row-major blocks in grid index order

#include <string>

#include "photonwave/field.hpp"

namespace photonwave {

void save(const PhotonField& psi, const std::string& path);
PhotonField load(const std::string& path);

}  // namespace photonwave
