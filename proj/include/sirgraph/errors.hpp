#pragma once

#include <stdexcept>
#include <string>

namespace sirgraph {

// Error taxonomy shared by the whole library. The CLI / C API map these
// onto exit codes: config errors -> 1, stability violations -> 2,
// numerical failures -> 3.
enum class ErrorKind {
  Config,
  Domain,
  Stability,
  Numerical,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error config_error(std::string msg) {
  return Error(ErrorKind::Config, std::move(msg));
}
inline Error domain_error(std::string msg) {
  return Error(ErrorKind::Domain, std::move(msg));
}
inline Error stability_error(std::string msg) {
  return Error(ErrorKind::Stability, std::move(msg));
}
inline Error numerical_error(std::string msg) {
  return Error(ErrorKind::Numerical, std::move(msg));
}

}  // namespace sirgraph
