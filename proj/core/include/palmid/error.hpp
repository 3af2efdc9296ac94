#ifndef PALMID_ERROR_HPP
#define PALMID_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace palmid {

enum class ErrorCode {
  FileNotFound,
  UnsupportedFormat,
  DimensionNotMultipleOf16,
  MissingSpectrum,
  RaggedDataset,
  InvalidDimensions,
  InvalidParameter,
  InvalidSplit,
  WrongBlockSize,
  CountOutOfRange,
  UnsupportedDepth,
  TooFewSamples,
  LengthMismatch,
  KOutOfRange,
  DegenerateSpectrum,
  DimensionMismatch,
  EmptyGallery,
  BadWeights,
  ModeMismatch,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Broad category used by the CLI to pick an exit status.
enum class ErrorKind { Usage, Data, Numerical };

ErrorKind kind_of(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace palmid

#endif  // PALMID_ERROR_HPP
