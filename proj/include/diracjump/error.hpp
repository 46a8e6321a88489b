#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace diracjump {

enum class ErrorKind {
  InvalidArgument,
  SingularBoundaryMatrix,
  DegenerateExtension,
  VelocityMismatch,
  StrengthSignError,
  BelowThreshold,
  SingularSystem,
  OutsideWindow,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Invalid inputs as opposed to numerical breakdown; the CLI maps these to distinct exit codes.
  bool is_config_error() const noexcept {
    return kind_ == ErrorKind::InvalidArgument || kind_ == ErrorKind::VelocityMismatch ||
           kind_ == ErrorKind::StrengthSignError || kind_ == ErrorKind::BelowThreshold ||
           kind_ == ErrorKind::OutsideWindow || kind_ == ErrorKind::DegenerateExtension;
  }

 private:
  ErrorKind kind_;
};

}  // namespace diracjump
