#pragma once

#include <stdexcept>
#include <string>

namespace siabf {

enum class Errc {
  MalformedFile,
  NonUniformSampling,
  TooShort,
  BoundaryGap,
  ZeroVariance,
  EmptySpec,
  DimensionMismatch,
  SingularSystem,
  InsufficientData,
  DegenerateSpectrum,
  LengthMismatch,
  InvalidArgument,
  Io,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::MalformedFile: return "MalformedFile";
    case Errc::NonUniformSampling: return "NonUniformSampling";
    case Errc::TooShort: return "TooShort";
    case Errc::BoundaryGap: return "BoundaryGap";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::EmptySpec: return "EmptySpec";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::SingularSystem: return "SingularSystem";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::DegenerateSpectrum: return "DegenerateSpectrum";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace siabf
