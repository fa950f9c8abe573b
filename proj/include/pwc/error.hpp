#ifndef PWC_ERROR_HPP
#define PWC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pwc {

enum class ErrorCode {
  config,         // bad parameters, unparseable input
  shape,          // mismatched grids / array lengths
  domain,         // state does not fit the grid, or a particle escaped it
  node,           // evaluation requested at a wavefunction node
  horizon,        // time outside the integrated trajectory range
  truncation,     // occupied top levels of a truncated basis
  consistency,    // internal cross-check failed
  eigenrelation,  // state failed the H psi = E psi validation
  io,             // file system failure
  internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace pwc

#endif
