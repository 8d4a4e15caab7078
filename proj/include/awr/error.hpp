#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace awr {

enum class Errc {
  InvalidState,
  NegativeVelocity,
  VacuumIntermediate,
  ZeroRightVelocity,
  DegenerateSpeeds,
  NonphysicalCell,
  AssertionFailure,
  InvalidConfig,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidState: return "InvalidState";
    case Errc::NegativeVelocity: return "NegativeVelocity";
    case Errc::VacuumIntermediate: return "VacuumIntermediate";
    case Errc::ZeroRightVelocity: return "ZeroRightVelocity";
    case Errc::DegenerateSpeeds: return "DegenerateSpeeds";
    case Errc::NonphysicalCell: return "NonphysicalCell";
    case Errc::AssertionFailure: return "AssertionFailure";
    case Errc::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message is prefixed with the code name so CLI diagnostics are greppable.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace awr
