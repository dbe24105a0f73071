#pragma once

#include <stdexcept>
#include <string>

namespace hurst {

/// Failure categories. The CLI maps these onto its exit codes.
enum class ErrorKind {
  config,        ///< a configuration value violates a stated invariant
  data_quality,  ///< the input data cannot support the requested analysis
  io,            ///< a source or sink could not be read or written
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error config_error(const std::string& what) {
  return Error(ErrorKind::config, what);
}
inline Error data_error(const std::string& what) {
  return Error(ErrorKind::data_quality, what);
}
inline Error io_error(const std::string& what) {
  return Error(ErrorKind::io, what);
}

const char* to_string(ErrorKind kind) noexcept;

}  // namespace hurst
