#pragma once

#include <stdexcept>
#include <string>

namespace starkspec {

// Error categories; the C API maps these 1:1 onto its status codes.
enum class ErrorCode {
  invalid_argument,  // bad parameter / broken type invariant
  domain,            // input outside an operation's mathematical domain
  sign_infeasible,   // requested Stark shift has the wrong sign for the tone
  pole,              // drive placed inside the pole guard of the shift map
  fit_failure,       // nonlinear fit did not converge / data below noise
  parse,             // config or artifact file does not parse / validate
  io,                // filesystem failure
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace starkspec
