#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace radon {

enum class ErrorCode {
  syntax,
  unsupported_kind,
  invalid_geometry,
  numerical_degeneracy,
  invalid_mask,
  unsupported_relation,
  empty_dataset,
  invalid_config,
  io,
  run_failure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace radon
