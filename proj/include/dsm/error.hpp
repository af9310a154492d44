#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dsm {

enum class Errc {
  InvalidFrame,
  FrameTooLarge,
  EmptyFocalSet,
  SetOutsideFrame,
  MassOutOfRange,
  NotNormalized,
  NotAFocalSet,
  NotAProductFrame,
  SizeMismatch,
  InvalidDistribution,
  BadResolution,
  SizeOutOfRange,
  BadDivisibility,
  BadCardinality,
  DuplicateFocalSet,
  TooManyFocalSets,
  ParseError,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidFrame: return "InvalidFrame";
    case Errc::FrameTooLarge: return "FrameTooLarge";
    case Errc::EmptyFocalSet: return "EmptyFocalSet";
    case Errc::SetOutsideFrame: return "SetOutsideFrame";
    case Errc::MassOutOfRange: return "MassOutOfRange";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::NotAFocalSet: return "NotAFocalSet";
    case Errc::NotAProductFrame: return "NotAProductFrame";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::InvalidDistribution: return "InvalidDistribution";
    case Errc::BadResolution: return "BadResolution";
    case Errc::SizeOutOfRange: return "SizeOutOfRange";
    case Errc::BadDivisibility: return "BadDivisibility";
    case Errc::BadCardinality: return "BadCardinality";
    case Errc::DuplicateFocalSet: return "DuplicateFocalSet";
    case Errc::TooManyFocalSets: return "TooManyFocalSets";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to a stable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dsm
