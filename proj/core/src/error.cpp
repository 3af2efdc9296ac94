#include "palmid/error.hpp"

namespace palmid {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::DimensionNotMultipleOf16: return "DimensionNotMultipleOf16";
    case ErrorCode::MissingSpectrum: return "MissingSpectrum";
    case ErrorCode::RaggedDataset: return "RaggedDataset";
    case ErrorCode::InvalidDimensions: return "InvalidDimensions";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::InvalidSplit: return "InvalidSplit";
    case ErrorCode::WrongBlockSize: return "WrongBlockSize";
    case ErrorCode::CountOutOfRange: return "CountOutOfRange";
    case ErrorCode::UnsupportedDepth: return "UnsupportedDepth";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyGallery: return "EmptyGallery";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

ErrorKind kind_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateSpectrum:
      return ErrorKind::Numerical;
    case ErrorCode::InvalidParameter:
    case ErrorCode::InvalidSplit:
    case ErrorCode::CountOutOfRange:
    case ErrorCode::KOutOfRange:
    case ErrorCode::UnsupportedDepth:
    case ErrorCode::BadWeights:
    case ErrorCode::ModeMismatch:
      return ErrorKind::Usage;
    default:
      return ErrorKind::Data;
  }
}

}  // namespace palmid
