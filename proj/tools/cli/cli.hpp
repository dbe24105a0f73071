#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hurst/timeseries.hpp"

namespace hurst::cli {

/// Exit codes. Anything not covered by a hurst::Error category maps to
/// kExitInternal.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitIo = 4;

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

/// Runs one invocation; `args` excludes the program name. "-" as a path
/// means the corresponding stream in `io`.
int run(const std::vector<std::string>& args, Streams io);

/// "90s", "15m", "6h", "365d". A bare number is rejected.
Seconds parse_duration(const std::string& text);

/// Renders a duration with the largest whole unit ("1d", "6h", "90s").
std::string format_duration(Seconds d);

const char* tool_version() noexcept;

}  // namespace hurst::cli
