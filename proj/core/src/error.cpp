#include "hurst/error.hpp"

namespace hurst {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::config:
      return "config";
    case ErrorKind::data_quality:
      return "data_quality";
    case ErrorKind::io:
      return "io";
  }
  return "unknown";
}

}  // namespace hurst
