#include "palmid/image.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <string>

#include "test_util.hpp"

namespace palmid {
namespace {

using testing::TempDir;

// Minimal independent P5 writer: header text plus raw bytes.
void write_raw_pgm(const std::filesystem::path& path, std::size_t w, std::size_t h,
                   const std::vector<unsigned char>& bytes, const std::string& header_extra = "") {
  std::ofstream out(path, std::ios::binary);
  out << "P5\n" << header_extra << w << " " << h << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

TEST(LoadImage, ZeroRaster) {
  TempDir dir;
  write_raw_pgm(dir.path() / "z.pgm", 128, 128, std::vector<unsigned char>(128 * 128, 0));
  const GrayImage img = load_image(dir.path() / "z.pgm");
  EXPECT_EQ(img.width(), 128u);
  EXPECT_EQ(img.height(), 128u);
  for (double v : img.pixels()) ASSERT_EQ(v, 0.0);
}

TEST(LoadImage, SaturatedRaster) {
  TempDir dir;
  write_raw_pgm(dir.path() / "s.pgm", 128, 128, std::vector<unsigned char>(128 * 128, 255));
  const GrayImage img = load_image(dir.path() / "s.pgm");
  for (double v : img.pixels()) ASSERT_EQ(v, 255.0);
}

TEST(LoadImage, KnownBytesRowMajor) {
  TempDir dir;
  std::vector<unsigned char> bytes(16 * 32);
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = static_cast<unsigned char>((i * 37) % 256);
  write_raw_pgm(dir.path() / "k.pgm", 16, 32, bytes, "# a comment line\n");
  const GrayImage img = load_image(dir.path() / "k.pgm");
  ASSERT_EQ(img.width(), 16u);
  ASSERT_EQ(img.height(), 32u);
  for (std::size_t r = 0; r < 32; ++r)
    for (std::size_t c = 0; c < 16; ++c) EXPECT_EQ(img.at(r, c), bytes[r * 16 + c]);
}

TEST(LoadImage, Errors) {
  TempDir dir;
  EXPECT_PALMID_ERROR(load_image(dir.path() / "missing.pgm"), ErrorCode::FileNotFound);

  write_raw_pgm(dir.path() / "odd.pgm", 17, 32, std::vector<unsigned char>(17 * 32, 1));
  EXPECT_PALMID_ERROR(load_image(dir.path() / "odd.pgm"), ErrorCode::DimensionNotMultipleOf16);

  {
    std::ofstream out(dir.path() / "ascii.pgm");
    out << "P2\n16 16\n255\n0 0 0\n";
  }
  EXPECT_PALMID_ERROR(load_image(dir.path() / "ascii.pgm"), ErrorCode::UnsupportedFormat);

  {
    std::ofstream out(dir.path() / "deep.pgm", std::ios::binary);
    out << "P5\n16 16\n65535\n";
  }
  EXPECT_PALMID_ERROR(load_image(dir.path() / "deep.pgm"), ErrorCode::UnsupportedFormat);

  write_raw_pgm(dir.path() / "short.pgm", 16, 16, std::vector<unsigned char>(100, 1));
  EXPECT_PALMID_ERROR(load_image(dir.path() / "short.pgm"), ErrorCode::UnsupportedFormat);
}

TEST(GrayImage, RejectsBadDimensions) {
  EXPECT_PALMID_ERROR(GrayImage(17, 16), ErrorCode::DimensionNotMultipleOf16);
  EXPECT_PALMID_ERROR(GrayImage(0, 16), ErrorCode::InvalidDimensions);
  EXPECT_PALMID_ERROR(GrayImage(16, 16, std::vector<double>(10)), ErrorCode::InvalidDimensions);
}

// Property: any integer-valued image survives save/load exactly.
TEST(SaveImage, RoundTripProperty) {
  TempDir dir;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pixel(0, 255);
  std::uniform_int_distribution<int> tiles(1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    GrayImage img(16 * tiles(rng), 16 * tiles(rng));
    for (double& v : img.pixels()) v = pixel(rng);
    const auto path = dir.path() / ("rt" + std::to_string(trial) + ".pgm");
    save_image(img, path);
    EXPECT_EQ(load_image(path), img);
  }
}

}  // namespace
}  // namespace palmid
