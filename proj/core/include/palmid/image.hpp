#ifndef PALMID_IMAGE_HPP
#define PALMID_IMAGE_HPP

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace palmid {

inline constexpr std::size_t kBlockSize = 16;

/// Single-channel intensity raster, row-major, values in [0, 255].
///
/// Width and height are positive multiples of 16 so the image tiles exactly
/// into 16x16 blocks.
class GrayImage {
 public:
  GrayImage() = default;
  /// Throws DimensionNotMultipleOf16 / InvalidDimensions on bad sizes.
  GrayImage(std::size_t width, std::size_t height, double fill = 0.0);
  GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }

  double at(std::size_t row, std::size_t col) const { return pixels_[row * width_ + col]; }
  double& at(std::size_t row, std::size_t col) { return pixels_[row * width_ + col]; }

  std::span<const double> pixels() const noexcept { return pixels_; }
  std::span<double> pixels() noexcept { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> pixels_;
};

/// Reads a binary 8-bit PGM (P5, maxval 255).
GrayImage load_image(const std::filesystem::path& path);

/// Writes a binary 8-bit PGM. Pixels are rounded and clamped to [0, 255].
void save_image(const GrayImage& image, const std::filesystem::path& path);

}  // namespace palmid

#endif  // PALMID_IMAGE_HPP
