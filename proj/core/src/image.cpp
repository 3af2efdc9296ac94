#include "palmid/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "palmid/error.hpp"

namespace palmid {
namespace {

void check_dimensions(std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::InvalidDimensions,
                "image dimensions must be positive, got " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
  if (width % kBlockSize != 0 || height % kBlockSize != 0) {
    throw Error(ErrorCode::DimensionNotMultipleOf16,
                std::to_string(width) + "x" + std::to_string(height));
  }
}

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string token;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  while (c != EOF && !std::isspace(c)) {
    token.push_back(static_cast<char>(c));
    c = in.get();
  }
  return token;
}

std::size_t parse_header_number(std::istream& in, const std::filesystem::path& path) {
  const std::string token = next_token(in);
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](unsigned char ch) {
        return std::isdigit(ch) != 0;
      })) {
    throw Error(ErrorCode::UnsupportedFormat, "malformed PGM header in " + path.string());
  }
  return std::stoul(token);
}

}  // namespace

GrayImage::GrayImage(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height) {
  check_dimensions(width, height);
  pixels_.assign(width * height, fill);
}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dimensions(width, height);
  if (pixels_.size() != width * height) {
    throw Error(ErrorCode::InvalidDimensions, "pixel count does not match width x height");
  }
}

GrayImage load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());

  if (next_token(in) != "P5") {
    throw Error(ErrorCode::UnsupportedFormat, path.string() + " is not a binary PGM (P5)");
  }
  const std::size_t width = parse_header_number(in, path);
  const std::size_t height = parse_header_number(in, path);
  const std::size_t maxval = parse_header_number(in, path);
  if (maxval != 255) {
    throw Error(ErrorCode::UnsupportedFormat,
                path.string() + ": only maxval 255 is supported, got " + std::to_string(maxval));
  }
  // next_token consumed exactly one whitespace byte after maxval.
  check_dimensions(width, height);

  std::vector<unsigned char> raw(width * height);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw Error(ErrorCode::UnsupportedFormat, path.string() + ": truncated pixel data");
  }
  std::vector<double> pixels(raw.begin(), raw.end());
  return GrayImage(width, height, std::move(pixels));
}

void save_image(const GrayImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  std::vector<unsigned char> raw(image.pixels().size());
  std::transform(image.pixels().begin(), image.pixels().end(), raw.begin(), [](double v) {
    return static_cast<unsigned char>(std::clamp(std::lround(v), 0L, 255L));
  });
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace palmid
