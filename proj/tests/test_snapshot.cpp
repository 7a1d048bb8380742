#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "photonwave/field.hpp"
#include "photonwave/snapshot.hpp"

using namespace photonwave;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("snapshot round trip is bit exact") {
  const GridSpec grid{{4, 3, 5}, {1.0, 2.0, 0.5}};
  const PhysicsParams ph{1.25, 0.75, 2.5};
  PhotonField psi = PhotonField::zero(grid, ph);
  psi.time = 0.375;
  auto g = oracles::rng(100);
  for (auto& v : psi.values) v = oracles::random_mat4(g);

  const std::string path = temp_path("phwf_roundtrip.phwf");
  save(psi, path);
  const PhotonField back = load(path);

  CHECK(back.grid == grid);
  CHECK(back.time == psi.time);
  CHECK(back.physics == ph);
  bool exact = true;
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        exact = exact && (psi.values[i](r, c) == back.values[i](r, c));
  CHECK(exact);
  std::remove(path.c_str());
}

TEST_CASE("snapshot error paths") {
  const GridSpec grid{{4, 4, 4}, {1, 1, 1}};
  PhotonField psi = PhotonField::zero(grid);
  const std::string path = temp_path("phwf_errors.phwf");
  save(psi, path);

  SUBCASE("bad magic") {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(0);
    f.write("XXXXX", 5);
    f.close();
    CHECK_THROWS_AS(load(path), IoError);
    CHECK_THROWS_WITH_AS(load(path), doctest::Contains("magic"), IoError);
  }

  SUBCASE("truncated payload") {
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    std::filesystem::resize_file(path, size - 64, ec);
    CHECK_THROWS_AS(load(path), IoError);
  }

  SUBCASE("payload length mismatch against the declared grid") {
    // Rewrite the header to claim an 8^3 grid over the 4^3 payload.
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), {});
    in.close();
    const std::string needle = "\"n\":[4,4,4]";
    const auto pos = bytes.find(needle);
    REQUIRE(pos != std::string::npos);
    bytes.replace(pos, needle.size(), "\"n\":[8,8,8]");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    CHECK_THROWS_WITH_AS(load(path), doctest::Contains("payload length mismatch"), IoError);
  }

  SUBCASE("missing file") { CHECK_THROWS_AS(load(temp_path("does_not_exist.phwf")), IoError); }

  std::remove(path.c_str());
}
