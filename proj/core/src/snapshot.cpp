#include "photonwave/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include <json.hpp>

namespace photonwave {

namespace {

constexpr char kMagic[5] = {'P', 'H', 'W', 'F', '1'};

void require_little_endian() {
  if constexpr (std::endian::native != std::endian::little)
    throw IoError("snapshot: only little-endian hosts are supported");
}

}  // namespace

void save(const PhotonField& psi, const std::string& path) {
  require_little_endian();
  if (psi.values.size() != psi.grid.size())
    throw ValidationError("save: field size does not match grid");

  nlohmann::json header;
  header["grid"]["n"] = psi.grid.n;
  header["grid"]["length"] = psi.grid.length;
  header["time"] = psi.time;
  header["physics"]["hbar"] = psi.physics.hbar;
  header["physics"]["c"] = psi.physics.c;
  header["physics"]["m_flash"] = psi.physics.m_flash;
  header["endianness"] = "little";
  header["layout"] = "[ix][iy][iz][row][col]";
  const std::string htext = header.dump();

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("save: cannot open '" + path + "' for writing");
  out.write(kMagic, sizeof(kMagic));
  const std::uint64_t hlen = htext.size();
  out.write(reinterpret_cast<const char*>(&hlen), sizeof(hlen));
  out.write(htext.data(), static_cast<std::streamsize>(htext.size()));

  std::vector<double> row(32);
  for (const auto& v : psi.values) {
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        row[static_cast<std::size_t>(2 * (4 * r + c))] = v(r, c).real();
        row[static_cast<std::size_t>(2 * (4 * r + c) + 1)] = v(r, c).imag();
      }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
  if (!out) throw IoError("save: write failure on '" + path + "'");
}

PhotonField load(const std::string& path) {
  require_little_endian();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("load: cannot open '" + path + "'");

  char magic[5];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw IoError("load: bad magic (not a PHWF1 snapshot)");

  std::uint64_t hlen = 0;
  in.read(reinterpret_cast<char*>(&hlen), sizeof(hlen));
  if (!in) throw IoError("load: truncated header length");
  std::string htext(hlen, '\0');
  in.read(htext.data(), static_cast<std::streamsize>(hlen));
  if (!in) throw IoError("load: truncated header");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(htext);
  } catch (const nlohmann::json::exception&) {
    throw IoError("load: header is not valid JSON");
  }

  PhotonField psi;
  try {
    const auto n = header.at("grid").at("n").get<std::array<int, 3>>();
    const auto length = header.at("grid").at("length").get<std::array<double, 3>>();
    psi.grid.n = n;
    psi.grid.length = length;
    psi.time = header.at("time").get<double>();
    psi.physics.hbar = header.at("physics").at("hbar").get<double>();
    psi.physics.c = header.at("physics").at("c").get<double>();
    psi.physics.m_flash = header.at("physics").at("m_flash").get<double>();
    if (header.at("endianness").get<std::string>() != "little")
      throw IoError("load: unsupported endianness");
  } catch (const nlohmann::json::exception&) {
    throw IoError("load: header is missing required fields");
  }
  psi.grid.validate();
  psi.physics.validate();

  const std::size_t points = psi.grid.size();
  psi.values.assign(points, Mat4::Zero());
  std::vector<double> row(32);
  for (std::size_t i = 0; i < points; ++i) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(double)));
    if (!in) throw IoError("load: payload length mismatch");
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        psi.values[i](r, c) = Complex(row[static_cast<std::size_t>(2 * (4 * r + c))],
                                      row[static_cast<std::size_t>(2 * (4 * r + c) + 1)]);
  }
  // Exactly at EOF now?
  char probe;
  in.read(&probe, 1);
  if (!in.eof()) throw IoError("load: payload length mismatch (trailing bytes)");
  return psi;
}

}  // namespace photonwave
